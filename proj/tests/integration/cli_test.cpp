#include <doctest.h>

#include <sstream>
#include <thread>

#include "oracle.hpp"
#include "random.hpp"
#include "tempdir.hpp"
#include "vlac/cli/app.hpp"
#include "vlac/proto/session.hpp"
#include "vlac/proto/transcript.hpp"

using namespace vlac;
using testing::TempDir;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome vlac_run(std::vector<std::string> args) {
  args.insert(args.begin(), "vlac");
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

// "key: value" line of the tool output
std::string field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
  return {};
}

const ff::PrimeField F10007(10007);

la::DenseMatrix det4() {
  return la::DenseMatrix::from_rows(F10007, {{3, 1, 4, 1}, {5, 9, 2, 6}, {5, 3, 5, 8}, {9, 7, 9, 3}});
}

std::string det4_file(const TempDir& dir, const std::string& name = "a.mtx") {
  return dir.write(name, cli::to_matrix_market(det4()));
}

}  // namespace

TEST_CASE("prove then verify round trips for every problem") {
  TempDir dir;
  testing::Rng rng(7);
  const ff::PrimeField F(10007);
  auto A = testing::random_dense(F, 5, 5, rng);
  while (oracle::brute_det_field(A).is_zero()) A = testing::random_dense(F, 5, 5, rng);
  const auto a = dir.write("a.mtx", cli::to_matrix_market(la::SparseMatrix::from_dense(A)));
  const auto b = dir.write("b.mtx", cli::to_matrix_market(testing::random_dense(F, 5, 5, rng)));
  const auto dense = dir.write("d.mtx", cli::to_matrix_market(A));
  const auto ints = dir.write("i.mtx", cli::to_matrix_market(lift::IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})));
  lift::PolyMatrix P(F, 2, 2);
  P(0, 0) = ff::Poly{1, 1};
  P(0, 1) = ff::Poly{2};
  P(1, 0) = ff::Poly{0, 3};
  P(1, 1) = ff::Poly{5, 0, 1};
  const auto poly = dir.write("p.mtx", cli::to_matrix_market(P));

  const std::vector<std::vector<std::string>> inputs = {
      {"matmul", dense, b}, {"inverse", dense}, {"nonsingular", a}, {"rank", a},
      {"minpoly", a},       {"det", a},         {"intdet", ints},   {"polydet", poly},
  };
  for (const auto& in : inputs) {
    CAPTURE(in[0]);
    const auto t = dir.file(in[0] + ".vlac");
    std::vector<std::string> args{"prove", "--problem", in[0], "--out", t};
    args.insert(args.end(), in.begin() + 1, in.end());
    const auto p = vlac_run(args);
    REQUIRE_MESSAGE(p.status == 0, p.err);
    args = {"verify", "--problem", in[0], "--transcript", t};
    args.insert(args.end(), in.begin() + 1, in.end());
    const auto v = vlac_run(args);
    CHECK_MESSAGE(v.status == 0, v.err);
    CHECK(field(v.out, "verdict") == "accept");
    CHECK(field(v.out, "result") == field(p.out, "result"));
    CHECK(field(v.out, "epsilon") == field(p.out, "epsilon"));
  }
}

TEST_CASE("printed determinant matches the oracle") {
  TempDir dir;
  const auto a = det4_file(dir);
  const auto p = vlac_run({"prove", "-p", "det", "-o", dir.file("t.vlac"), a});
  REQUIRE(p.status == 0);
  CHECK(field(p.out, "result") == std::to_string(oracle::brute_det_field(det4()).value));
  CHECK(field(p.out, "result") != "0");

  const auto i = dir.write("i.mtx", cli::to_matrix_market(lift::IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})));
  const auto q = vlac_run({"prove", "-p", "intdet", "-o", dir.file("i.vlac"), i});
  REQUIRE(q.status == 0);
  CHECK(field(q.out, "result") == "-3");
}

TEST_CASE("verify exit codes") {
  TempDir dir;
  const auto a = det4_file(dir);
  const auto t = dir.file("t.vlac");
  REQUIRE(vlac_run({"prove", "-p", "det", "-o", t, a}).status == 0);
  CHECK(vlac_run({"verify", "-p", "det", "-t", t, a}).status == 0);

  SUBCASE("a different matrix gives a digest mismatch") {
    auto B = det4();
    B(0, 0) = ff::Scalar(4);
    const auto b = dir.write("b.mtx", cli::to_matrix_market(B));
    const auto v = vlac_run({"verify", "-p", "det", "-t", t, b});
    CHECK(v.status == cli::kDigest);
    CHECK(field(v.out, "verdict") == "reject (DigestMismatch)");
  }
  SUBCASE("a flipped payload byte is rejected") {
    // the last message is the prover's final answer; flip the low bit of
    // each byte of its last scalar in turn
    const auto honest = testing::read_bytes(t);
    int rejected = 0, malformed = 0;
    for (std::size_t k = 1; k <= 8; ++k) {
      auto bytes = honest;
      bytes[bytes.size() - k] ^= 0x01;
      testing::write_bytes(dir.file("x.vlac"), bytes);
      const int s = vlac_run({"verify", "-p", "det", "-t", dir.file("x.vlac"), a}).status;
      CHECK((s == cli::kReject || s == cli::kParse));
      rejected += s == cli::kReject;
      malformed += s == cli::kParse;
    }
    CHECK(rejected > 0);
    // a value byte deep inside the certificate
    auto bytes = honest;
    bool found = false;
    for (std::size_t off = 48; off < bytes.size() && !found; ++off) {
      auto c = honest;
      c[off] ^= 0x01;
      proto::Transcript tr;
      try {
        tr = proto::deserialize(c);
      } catch (const Error&) {
        continue;
      }
      if (tr.instance_digest() != proto::deserialize(honest).instance_digest()) continue;
      testing::write_bytes(dir.file("y.vlac"), c);
      CHECK(vlac_run({"verify", "-p", "det", "-t", dir.file("y.vlac"), a}).status == cli::kReject);
      found = true;
    }
    CHECK(found);
  }
  SUBCASE("garbage and missing transcripts are parse errors") {
    testing::write_bytes(dir.file("g.vlac"), {'n', 'o', 'p', 'e'});
    CHECK(vlac_run({"verify", "-p", "det", "-t", dir.file("g.vlac"), a}).status == cli::kParse);
    CHECK(vlac_run({"verify", "-p", "det", "-t", dir.file("missing.vlac"), a}).status == cli::kParse);
  }
  SUBCASE("a transcript for another protocol is rejected") {
    const auto r = dir.file("r.vlac");
    REQUIRE(vlac_run({"prove", "-p", "rank", "-o", r, a}).status == 0);
    const auto v = vlac_run({"verify", "-p", "det", "-t", r, a});
    CHECK(v.status == cli::kReject);
    CHECK(field(v.out, "verdict") == "reject (ProtocolViolation)");
  }
}

TEST_CASE("prove exit codes") {
  TempDir dir;
  const auto a = det4_file(dir);
  const auto out = dir.file("t.vlac");

  const auto bad = dir.write("bad.mtx", "%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 0.5\n");
  const auto p = vlac_run({"prove", "-p", "det", "-o", out, bad});
  CHECK(p.status == cli::kParse);
  CHECK(p.err.find("bad.mtx:1:") != std::string::npos);

  const auto singular = dir.write("s.mtx", cli::to_matrix_market(la::DenseMatrix::from_rows(F10007, {{1, 2}, {2, 4}})));
  CHECK(vlac_run({"prove", "-p", "nonsingular", "-o", out, singular}).status == cli::kProver);

  const auto eps = vlac_run({"prove", "-p", "det", "--epsilon", "1e-9", "-o", out, a});
  CHECK(eps.status == cli::kParse);
  CHECK(eps.err.find("unachievable") != std::string::npos);
  CHECK(vlac_run({"prove", "-p", "det", "--epsilon", "1/100", "-o", out, a}).status == 0);

  CHECK(vlac_run({"prove", "-p", "det", "--mode", "interactive", "-o", out, a}).status == cli::kParse);
  CHECK(vlac_run({"prove", "-p", "nosuch", "-o", out, a}).status == cli::kParse);
  CHECK(vlac_run({"prove", "-p", "det", "--modulus", "101", "-o", out, a}).status == cli::kParse);
  CHECK(vlac_run({"prove", "-p", "det", "-o", out, dir.file("missing.mtx")}).status == cli::kParse);
  CHECK(vlac_run({"prove", "-p", "matmul", "-o", out, a}).status == cli::kParse);
  CHECK(vlac_run({"frobnicate"}).status == cli::kParse);
  CHECK(vlac_run({"--help"}).status == 0);
}

TEST_CASE("zero-one rounds follow the epsilon target") {
  TempDir dir;
  const auto a = dir.write("a.mtx", cli::to_matrix_market(det4()));
  const auto p = vlac_run({"prove", "-p", "matmul", "--variant", "zero-one", "--epsilon", "1/1000", "-o",
                           dir.file("t.vlac"), a, a});
  REQUIRE(p.status == 0);
  CHECK(field(p.out, "epsilon").rfind("1/1024 ", 0) == 0);
}

TEST_CASE("bench emits one csv row per size") {
  const auto b = vlac_run({"bench", "-p", "det", "--sizes", "16,32", "--modulus", "10007"});
  REQUIRE(b.status == 0);
  std::istringstream in(b.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "problem,n,prover_seconds,verifier_seconds,certificate_bytes,epsilon,verifier_ops");
  int rows = 0;
  while (std::getline(in, line)) {
    CHECK(line.rfind("det,", 0) == 0);
    ++rows;
  }
  CHECK(rows == 2);

  // the matmul certificate is the product itself
  const auto m = vlac_run({"bench", "-p", "matmul", "--sizes", "32", "--modulus", "10007"});
  REQUIRE(m.status == 0);
  std::istringstream min(m.out);
  std::getline(min, line);
  std::getline(min, line);
  std::vector<std::string> cols;
  std::stringstream ls(line);
  for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
  REQUIRE(cols.size() == 7);
  const auto bytes = std::stoull(cols[4]);
  CHECK(bytes >= 32 * 32 * 8);
  CHECK(bytes <= 32 * 32 * 8 + 256);

  CHECK(vlac_run({"bench", "-p", "det", "--sizes", "16,x"}).status == cli::kParse);
}
