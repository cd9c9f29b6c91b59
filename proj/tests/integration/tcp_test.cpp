#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <sstream>
#include <thread>

#include "oracle.hpp"
#include "random.hpp"
#include "tempdir.hpp"
#include "vlac/cli/app.hpp"
#include "vlac/error.hpp"
#include "vlac/proto/channel.hpp"
#include "vlac/proto/session.hpp"
#include "vlac/proto/transcript.hpp"

using namespace vlac;
using namespace std::chrono_literals;
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

std::string field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
  return {};
}

cli::ProblemSpec spec_for(cli::Problem p, std::uint64_t seed = 1) {
  cli::ProblemSpec s;
  s.problem = p;
  s.mode = proto::Mode::Interactive;
  s.seed = seed;
  s.timeout = 10s;
  return s;
}

// Server on an ephemeral port, serving `sessions` sessions in a thread.
class ServerThread {
 public:
  ServerThread(cli::ProblemSpec spec, std::vector<cli::MatrixFile> inputs, std::size_t sessions)
      : server_(std::move(spec), std::move(inputs), "127.0.0.1", 0),
        thread_([this, sessions] { server_.serve(sessions, log_); }) {}
  ~ServerThread() {
    server_.stop();
    thread_.join();
  }
  std::string endpoint() const { return "127.0.0.1:" + std::to_string(server_.port()); }
  std::uint16_t port() const { return server_.port(); }

 private:
  std::ostringstream log_;
  cli::Server server_;
  std::thread thread_;
};

const ff::PrimeField F(1000003);

}  // namespace

TEST_CASE("loopback det n=64: accept, verifier faster than prover") {
  TempDir dir;
  testing::Rng rng(64);
  const auto A = testing::random_sparse(F, 64, 10, rng);
  const auto path = dir.write("a.mtx", cli::to_matrix_market(A));
  ServerThread server(spec_for(cli::Problem::Det), {cli::read_matrix_market(path)}, 1);

  const auto d = vlac_run({"delegate", "-p", "det", "--seed", "5", server.endpoint(), path});
  INFO(d.out << d.err);
  REQUIRE(d.status == 0);
  CHECK(field(d.out, "verdict") == "accept");
  CHECK(field(d.out, "result") == std::to_string(oracle::brute_det_field(A.to_dense()).value));
  const double prover = std::stod(field(d.out, "prover_seconds"));
  const double verifier = std::stod(field(d.out, "verifier_seconds"));
  CHECK(verifier < prover);
}

TEST_CASE("tcp and in-process sessions agree for the same seed") {
  TempDir dir;
  testing::Rng rng(3);
  const ff::PrimeField Fp(10007);
  auto A = testing::random_dense(Fp, 6, 6, rng);
  while (oracle::brute_det_field(A).is_zero()) A = testing::random_dense(Fp, 6, 6, rng);
  const auto a = cli::parse_matrix_market(cli::to_matrix_market(la::SparseMatrix::from_dense(A)), "a.mtx");
  const auto dense = cli::parse_matrix_market(cli::to_matrix_market(A), "d.mtx");
  const auto b = cli::parse_matrix_market(cli::to_matrix_market(testing::random_dense(Fp, 6, 6, rng)), "b.mtx");
  const auto ints = cli::parse_matrix_market(
      cli::to_matrix_market(lift::IntMatrix::from_rows({{2, -1, 0}, {1, 3, 4}, {0, 5, -6}})), "i.mtx");
  lift::PolyMatrix P(Fp, 2, 2);
  P(0, 0) = ff::Poly{1, 1};
  P(1, 1) = ff::Poly{0, 2};
  P(0, 1) = ff::Poly{3};
  const auto poly = cli::parse_matrix_market(cli::to_matrix_market(P), "p.mtx");

  const std::vector<std::pair<cli::Problem, std::vector<cli::MatrixFile>>> cases = {
      {cli::Problem::MatMul, {dense, b}}, {cli::Problem::Inverse, {dense}}, {cli::Problem::Nonsingular, {a}},
      {cli::Problem::Rank, {a}},          {cli::Problem::MinPoly, {a}},     {cli::Problem::Det, {a}},
      {cli::Problem::IntDet, {ints}},     {cli::Problem::PolyDet, {poly}},
  };
  for (const auto& [problem, inputs] : cases) {
    for (const auto mode : {proto::Mode::Interactive, proto::Mode::FiatShamir}) {
      CAPTURE(cli::to_string(problem));
      CAPTURE(static_cast<int>(mode));
      auto spec = spec_for(problem, 99);
      spec.mode = mode;
      const auto local_job = cli::make_job(spec, inputs);
      auto config = local_job.run.config(spec.mode, spec.seed);
      const auto local = proto::run_session(local_job.run.prover, local_job.run.verifier, config);

      ServerThread server(spec, inputs, 1);
      const auto remote_job = cli::make_job(spec, inputs);
      auto conn = cli::tcp_connect("127.0.0.1", server.port(), 10s);
      CHECK(conn->receive() == cli::hello_message(remote_job.run));
      const auto remote = proto::run_verifier(*conn, remote_job.run.verifier, config);

      CHECK(local.verdict.accepted);
      CHECK(remote.verdict.accepted == local.verdict.accepted);
      CHECK(remote.verdict.error_bound == local.verdict.error_bound);
      CHECK(remote.transcript == local.transcript);
      CHECK(remote_job.result() == local_job.result());
    }
  }
}

TEST_CASE("protocol mismatch between client and server") {
  TempDir dir;
  testing::Rng rng(1);
  const auto path = dir.write("a.mtx", cli::to_matrix_market(testing::random_sparse(F, 8, 3, rng)));
  ServerThread server(spec_for(cli::Problem::Det), {cli::read_matrix_market(path)}, 1);
  const auto d = vlac_run({"delegate", "-p", "rank", server.endpoint(), path});
  CHECK(d.status == cli::kReject);
  CHECK(field(d.out, "verdict") == "reject (ProtocolViolation)");
}

TEST_CASE("server and client on different matrices") {
  TempDir dir;
  testing::Rng rng(2);
  const auto a = dir.write("a.mtx", cli::to_matrix_market(testing::random_sparse(F, 8, 3, rng)));
  const auto b = dir.write("b.mtx", cli::to_matrix_market(testing::random_sparse(F, 8, 3, rng)));
  ServerThread server(spec_for(cli::Problem::Det), {cli::read_matrix_market(a)}, 1);
  CHECK(vlac_run({"delegate", "-p", "det", server.endpoint(), b}).status == cli::kDigest);
}

TEST_CASE("transport failures exit 5") {
  TempDir dir;
  testing::Rng rng(4);
  const auto path = dir.write("a.mtx", cli::to_matrix_market(testing::random_sparse(F, 16, 4, rng)));

  SUBCASE("nobody listening") {
    std::uint16_t port;
    {
      cli::TcpListener l("127.0.0.1", 0);
      port = l.port();
    }
    CHECK(vlac_run({"delegate", "-p", "det", "127.0.0.1:" + std::to_string(port), path}).status == cli::kTransport);
  }
  SUBCASE("server dies before greeting") {
    cli::TcpListener l("127.0.0.1", 0);
    std::thread fake([&] { l.accept(5s)->close(); });
    const auto d = vlac_run({"delegate", "-p", "det", "127.0.0.1:" + std::to_string(l.port()), path});
    fake.join();
    CHECK(d.status == cli::kTransport);
  }
  SUBCASE("server dies mid-round") {
    // greet and claim like the real prover, then vanish before the certificate
    auto spec = spec_for(cli::Problem::Det);
    const auto job = cli::make_job(spec, {cli::read_matrix_market(path)});
    cli::TcpListener l("127.0.0.1", 0);
    std::thread fake([&] {
      auto conn = l.accept(5s);
      conn->send(cli::hello_message(job.run));
      conn->send(proto::Message{proto::Role::Prover, proto::Tag::Claim, std::string(proto::kProtocolLabel), {job.run.protocol_id}});
      conn->close();
    });
    const auto d = vlac_run({"delegate", "-p", "det", "127.0.0.1:" + std::to_string(l.port()), path});
    fake.join();
    CHECK(d.status == cli::kTransport);
    CHECK(d.err.find("TransportError") != std::string::npos);
  }
  SUBCASE("server closes in the middle of a frame") {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    REQUIRE(::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
    REQUIRE(::listen(fd, 1) == 0);
    socklen_t len = sizeof addr;
    ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
    std::thread fake([fd] {
      const int c = ::accept(fd, nullptr, nullptr);
      const unsigned char half[] = {0x00, 0x00, 0x01, 0x00, 0x02, 0x07};  // promises 256 bytes
      (void)::send(c, half, sizeof half, MSG_NOSIGNAL);
      ::close(c);
    });
    const auto d = vlac_run({"delegate", "-p", "det", "127.0.0.1:" + std::to_string(ntohs(addr.sin_port)), path});
    fake.join();
    ::close(fd);
    CHECK(d.status == cli::kTransport);
  }
  SUBCASE("silent server times out") {
    cli::TcpListener l("127.0.0.1", 0);
    std::thread fake([&] {
      auto conn = l.accept(5s);
      std::this_thread::sleep_for(1500ms);
    });
    const auto t0 = std::chrono::steady_clock::now();
    const auto d = vlac_run({"delegate", "-p", "det", "--timeout", "0.3", "127.0.0.1:" + std::to_string(l.port()), path});
    const auto elapsed = std::chrono::steady_clock::now() - t0;
    fake.join();
    CHECK(d.status == cli::kTransport);
    CHECK(d.err.find("Timeout") != std::string::npos);
    CHECK(elapsed < 1200ms);
  }
}

TEST_CASE("the server handles concurrent sessions") {
  TempDir dir;
  testing::Rng rng(8);
  const auto path = dir.write("a.mtx", cli::to_matrix_market(testing::random_sparse(F, 48, 5, rng)));
  ServerThread server(spec_for(cli::Problem::Det), {cli::read_matrix_market(path)}, 6);
  std::vector<std::thread> clients;
  std::vector<int> status(6, -1);
  for (int i = 0; i < 6; ++i)
    clients.emplace_back([&, i] {
      status[i] = vlac_run({"delegate", "-p", "det", "--seed", std::to_string(i + 1), server.endpoint(), path}).status;
    });
  for (auto& c : clients) c.join();
  for (int s : status) CHECK(s == 0);
}
