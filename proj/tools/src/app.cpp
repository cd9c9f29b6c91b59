#include "vlac/cli/app.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <mutex>
#include <random>
#include <thread>

#include "vlac/error.hpp"
#include "vlac/lift/polydet.hpp"
#include "vlac/proto/codec.hpp"
#include "vlac/proto/session.hpp"
#include "vlac/proto/sha256.hpp"
#include "vlac/proto/transcript.hpp"

namespace vlac::cli {

namespace {

using proto::Mode;
using proto::RejectReason;

struct Options {
  std::string problem = "det";
  std::optional<std::uint64_t> modulus;
  std::optional<std::uint64_t> sample_size;
  std::string mode;
  std::optional<std::string> epsilon;
  std::uint64_t seed = 1;
  double timeout = 60;
  std::string variant = "geometric";
  std::optional<unsigned> rounds;
  unsigned prime_bits = 62;
  std::vector<std::string> files;
};

void add_problem_options(CLI::App& cmd, Options& o, const std::string& default_mode) {
  cmd.add_option("--problem,-p", o.problem, "matmul|inverse|nonsingular|rank|minpoly|det|intdet|polydet")
      ->required();
  cmd.add_option("--modulus,-m", o.modulus, "prime field modulus; must agree with any %%modulus line");
  cmd.add_option("--sample-size", o.sample_size, "challenge set size |S| (default: the whole field)");
  cmd.add_option("--mode", o.mode, "interactive|fiat-shamir")->default_str(default_mode);
  cmd.add_option("--epsilon", o.epsilon, "refuse unless the declared error can stay below this (e.g. 1e-6, 1/1000)");
  cmd.add_option("--seed", o.seed, "interactive challenge seed")->default_val(1);
  cmd.add_option("--timeout", o.timeout, "seconds to wait for each message")->default_val(60);
  cmd.add_option("--variant", o.variant, "Freivalds variant: geometric|zero-one")->default_val("geometric");
  cmd.add_option("--rounds", o.rounds, "zero-one rounds (default: enough for --epsilon, else 1)");
  cmd.add_option("--prime-bits", o.prime_bits, "intdet challenge prime size")->default_val(62);
}

ProblemSpec to_spec(const Options& o) {
  ProblemSpec s;
  const auto p = parse_problem(o.problem);
  if (!p) throw ParseError("unknown problem '" + o.problem + "'");
  s.problem = *p;
  s.modulus = o.modulus;
  s.sample_size = o.sample_size;
  if (o.mode == "interactive") {
    s.mode = Mode::Interactive;
  } else if (o.mode == "fiat-shamir" || o.mode == "fs") {
    s.mode = Mode::FiatShamir;
  } else {
    throw ParseError("unknown mode '" + o.mode + "'");
  }
  if (o.epsilon) {
    s.epsilon = parse_rational(*o.epsilon);
    if (*s.epsilon <= 0) throw ParseError("--epsilon must be positive");
  }
  s.seed = o.seed;
  if (!(o.timeout > 0)) throw ParseError("--timeout must be positive");
  s.timeout = std::chrono::milliseconds(static_cast<long long>(o.timeout * 1000));
  if (o.variant == "geometric") {
    s.variant = certs::FreivaldsVariant::Geometric;
  } else if (o.variant == "zero-one" || o.variant == "zeroone") {
    s.variant = certs::FreivaldsVariant::ZeroOne;
  } else {
    throw ParseError("unknown variant '" + o.variant + "'");
  }
  s.rounds = o.rounds;
  s.prime_bits = o.prime_bits;
  return s;
}

std::vector<MatrixFile> read_inputs(const Options& o) {
  std::vector<MatrixFile> files;
  for (const auto& f : o.files) files.push_back(read_matrix_market(f));
  return files;
}

proto::SessionConfig session_config(const Job& job, const ProblemSpec& spec) {
  auto c = job.run.config(spec.mode, spec.seed);
  c.timeout = spec.timeout;
  return c;
}

void print_verdict(std::ostream& out, const proto::Verdict& v) {
  if (v.accepted) {
    out << "verdict: accept\n";
    out << "epsilon: " << format_rational(v.error_bound)
        << (v.fiat_shamir_heuristic ? " (heuristic under Fiat-Shamir)" : "") << "\n";
  } else {
    out << "verdict: reject (" << proto::to_string(v.reason) << ")\n";
    out << "detail: " << v.detail << "\n";
  }
}

int verdict_status(const proto::Verdict& v) {
  if (v.accepted) return kAccept;
  if (v.reason == RejectReason::DigestMismatch) return kDigest;
  if (v.reason == RejectReason::ProverFailed) return kProver;
  return kReject;
}

std::uint64_t prover_bytes(const proto::Transcript& t) {
  std::uint64_t n = 0;
  for (const auto& m : t.messages())
    if (m.role == proto::Role::Prover) n += proto::encode_message(m).size();
  return n;
}

int cmd_prove(const Options& o, const std::string& out_path, std::ostream& out, std::ostream& err) {
  const auto spec = to_spec(o);
  if (spec.mode != Mode::FiatShamir) throw ParseError("prove records a Fiat-Shamir transcript; drop --mode interactive");
  const auto job = make_job(spec, read_inputs(o));
  const auto config = session_config(job, spec);
  proto::Transcript t;
  try {
    t = proto::prove_noninteractive(job.run.prover, config);
  } catch (const proto::ProverFailure& e) {
    err << "prover failed: " << e.what() << "\n";
    return kProver;
  }
  const auto bytes = proto::serialize(t);
  std::ofstream f(out_path, std::ios::binary);
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw ParseError(out_path + ": cannot write transcript");
  // replaying our own transcript fills in the certified value
  const auto v = proto::verify_recorded(t, job.run.verifier, config);
  if (!v.accepted) {
    err << "internal error: own transcript rejected: " << v.detail << "\n";
    return kProver;
  }
  out << "problem: " << to_string(spec.problem) << "\n";
  out << "result: " << job.result() << "\n";
  out << "epsilon: " << format_rational(v.error_bound) << " (heuristic under Fiat-Shamir)\n";
  out << "transcript: " << out_path << " (" << bytes.size() << " bytes)\n";
  return kAccept;
}

int cmd_verify(const Options& o, const std::string& transcript_path, std::ostream& out) {
  const auto spec = to_spec(o);
  const auto job = make_job(spec, read_inputs(o));
  std::ifstream f(transcript_path, std::ios::binary);
  if (!f) throw ParseError(transcript_path + ": cannot open");
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  proto::Transcript t;
  try {
    t = proto::deserialize(bytes);
  } catch (const Error& e) {
    throw ParseError(transcript_path + ": " + e.what());
  }
  auto config = session_config(job, spec);
  config.mode = Mode::FiatShamir;
  const auto v = proto::verify_recorded(t, job.run.verifier, config);
  print_verdict(out, v);
  if (v.accepted) out << "result: " << job.result() << "\n";
  return verdict_status(v);
}

int cmd_delegate(const Options& o, const std::string& endpoint, std::ostream& out) {
  const auto spec = to_spec(o);
  const auto job = make_job(spec, read_inputs(o));
  const auto [host, port] = parse_endpoint(endpoint);
  const auto config = session_config(job, spec);
  const auto t0 = std::chrono::steady_clock::now();
  auto conn = tcp_connect(host, port, spec.timeout);
  const auto hello = conn->receive();
  if (hello.tag != proto::Tag::Claim || hello.label != kHelloLabel || hello.items.size() != 2) {
    print_verdict(out, proto::Verdict::reject(RejectReason::ProtocolViolation, "server did not greet"));
    return kReject;
  }
  const auto expected = hello_message(job.run);
  if (proto::item_text(hello, 0) != proto::item_text(expected, 0)) {
    print_verdict(out, proto::Verdict::reject(RejectReason::ProtocolViolation,
                                              "server runs protocol '" + proto::item_text(hello, 0) +
                                                  "', client expects '" + proto::item_text(expected, 0) + "'"));
    return kReject;
  }
  if (proto::item_text(hello, 1) != proto::item_text(expected, 1)) {
    print_verdict(out, proto::Verdict::reject(RejectReason::DigestMismatch, "server holds a different instance"));
    return kDigest;
  }
  const auto r = proto::run_verifier(*conn, job.run.verifier, config);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  print_verdict(out, r.verdict);
  if (r.verdict.accepted) out << "result: " << job.result() << "\n";
  std::optional<double> prover_seconds;
  if (r.verdict.accepted) {
    try {
      const auto stats = conn->receive();
      if (stats.label == kStatsLabel) prover_seconds = double(proto::item_u64(stats, 0)) * 1e-9;
    } catch (const std::exception&) {
      // an older or busy server may omit the trailer
    }
  }
  out << "prover_seconds: " << (prover_seconds ? std::to_string(*prover_seconds) : "n/a") << "\n";
  out << "verifier_seconds: " << r.verifier_seconds << "\n";
  out << "wall_seconds: " << wall << "\n";
  out << "certificate_bytes: " << prover_bytes(r.transcript) << "\n";
  return verdict_status(r.verdict);
}

int cmd_serve(const Options& o, const std::string& host, std::uint16_t port, std::size_t max_sessions,
              std::ostream& out) {
  auto spec = to_spec(o);
  auto inputs = read_inputs(o);
  make_job(spec, inputs);  // validate before listening
  Server server(std::move(spec), std::move(inputs), host, port);
  out << "listening on " << host << ":" << server.port() << std::endl;
  server.serve(max_sessions, out);
  return kAccept;
}

// ---- bench --------------------------------------------------------------------

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(item, &pos);
      if (pos != item.size() || v == 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("bad size '" + item + "' in --sizes");
    }
  }
  if (out.empty()) throw ParseError("--sizes is empty");
  return out;
}

std::vector<MatrixFile> bench_inputs(const ProblemSpec& spec, std::size_t n, std::size_t nnz_per_row,
                                     std::mt19937_64& rng) {
  const std::uint64_t p = spec.modulus.value_or(0);
  const auto scalar = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  std::vector<std::string> text;
  switch (spec.problem) {
    case Problem::MatMul:
    case Problem::Inverse: {
      const ff::PrimeField F(p);
      for (std::size_t k = 0; k < input_count(spec.problem); ++k) {
        la::DenseMatrix A(F, n, n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) A(i, j) = ff::Scalar(scalar(0, p - 1));
        text.push_back(to_matrix_market(A));
      }
      break;
    }
    case Problem::Nonsingular:
    case Problem::Rank:
    case Problem::MinPoly:
    case Problem::Det: {
      // nonzero diagonal plus random off-diagonal entries
      const ff::PrimeField F(p);
      std::vector<la::Triplet> t;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> cols{i};
        while (cols.size() < std::min(nnz_per_row, n)) {
          const std::size_t c = scalar(0, n - 1);
          if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
        }
        for (auto c : cols) t.push_back({i, c, ff::Scalar(scalar(1, p - 1))});
      }
      text.push_back(to_matrix_market(la::SparseMatrix::from_triplets(F, n, n, std::move(t))));
      break;
    }
    case Problem::IntDet: {
      lift::IntMatrix A(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = static_cast<long long>(scalar(0, 18)) - 9;
      text.push_back(to_matrix_market(A));
      break;
    }
    case Problem::PolyDet: {
      const ff::PrimeField F(p);
      lift::PolyMatrix A(F, n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = ff::Poly(ff::Vec{ff::Scalar(scalar(0, p - 1)), ff::Scalar(scalar(0, p - 1))});
      text.push_back(to_matrix_market(A));
      break;
    }
  }
  std::vector<MatrixFile> files;
  for (const auto& s : text) files.push_back(parse_matrix_market(s, "<bench>"));
  return files;
}

int cmd_bench(Options o, const std::string& sizes, std::size_t nnz_per_row, std::ostream& out, std::ostream& err) {
  if (!o.modulus && o.problem != "intdet") o.modulus = 1000003;
  const auto spec = to_spec(o);
  std::mt19937_64 rng(spec.seed);
  out << "problem,n,prover_seconds,verifier_seconds,certificate_bytes,epsilon,verifier_ops\n";
  int status = kAccept;
  for (std::size_t n : parse_sizes(sizes)) {
    const auto job = make_job(spec, bench_inputs(spec, n, nnz_per_row, rng));
    const auto r = proto::run_session(job.run.prover, job.run.verifier, session_config(job, spec));
    if (!r.verdict.accepted) {
      err << "n=" << n << ": " << proto::describe(r.verdict) << "\n";
      status = verdict_status(r.verdict);
      continue;
    }
    out << to_string(spec.problem) << ',' << n << ',' << r.prover_seconds << ',' << r.verifier_seconds << ','
        << prover_bytes(r.transcript) << ',' << r.verdict.error_bound.convert_to<double>() << ',' << r.verifier_ops
        << "\n";
  }
  return status;
}

}  // namespace

proto::Message hello_message(const certs::ProtocolRun& run) {
  return proto::Message{proto::Role::Prover, proto::Tag::Claim, std::string(kHelloLabel),
                        {run.protocol_id, proto::to_hex(run.instance_digest)}};
}

Server::Server(ProblemSpec spec, std::vector<MatrixFile> inputs, const std::string& host, std::uint16_t port)
    : spec_(std::move(spec)), inputs_(std::move(inputs)), listener_(host, port) {}

void Server::stop() {
  stopping_ = true;
  listener_.close();
}

void Server::serve(std::size_t max_sessions, std::ostream& log) {
  std::mutex log_mutex;
  std::vector<std::thread> workers;
  while (!stopping_ && (max_sessions == 0 || workers.size() < max_sessions)) {
    std::unique_ptr<TcpTransport> conn;
    try {
      conn = listener_.accept(spec_.timeout);
    } catch (const Error&) {
      if (stopping_) break;
      throw;
    }
    const std::uint64_t id = ++sessions_;
    workers.emplace_back([this, id, &log, &log_mutex, conn = std::move(conn)]() mutable {
      std::string outcome;
      try {
        const Job job = make_job(spec_, inputs_);
        conn->send(hello_message(job.run));
        const double secs = proto::run_prover(*conn, job.run.prover);
        conn->send(proto::Message{proto::Role::Prover, proto::Tag::Claim, std::string(kStatsLabel),
                                  {static_cast<std::uint64_t>(secs * 1e9)}});
        outcome = "done, prover " + std::to_string(secs) + " s";
      } catch (const std::exception& e) {
        outcome = std::string("ended: ") + e.what();
      }
      conn->close();
      std::lock_guard lock(log_mutex);
      log << "session " << id << " " << outcome << std::endl;
    });
  }
  for (auto& w : workers) w.join();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"vlac: certify linear algebra results with interactive and Fiat-Shamir proofs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "vlac 0.1.0");

  Options o;
  std::string out_path = "transcript.vlac", transcript_path, endpoint, host = "127.0.0.1", sizes = "64,128,256";
  std::uint16_t port = 7878;
  std::size_t max_sessions = 0, nnz_per_row = 10;

  auto* prove = app.add_subcommand("prove", "run the prover and record a Fiat-Shamir transcript");
  add_problem_options(*prove, o, "fiat-shamir");
  prove->add_option("--out,-o", out_path, "transcript file")->default_val("transcript.vlac");
  prove->add_option("matrices", o.files, "Matrix Market input(s)")->required()->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify", "replay a recorded transcript against the inputs");
  add_problem_options(*verify, o, "fiat-shamir");
  verify->add_option("--transcript,-t", transcript_path, "transcript file")->required();
  verify->add_option("matrices", o.files, "Matrix Market input(s)")->required()->check(CLI::ExistingFile);

  auto* serve = app.add_subcommand("serve", "prover server: answer verifiers over TCP");
  add_problem_options(*serve, o, "interactive");
  serve->add_option("--host", host, "listen address")->default_val("127.0.0.1");
  serve->add_option("--port", port, "listen port (0 = any)")->default_val(7878);
  serve->add_option("--max-sessions", max_sessions, "exit after this many sessions (0 = never)")->default_val(0);
  serve->add_option("matrices", o.files, "Matrix Market input(s)")->required()->check(CLI::ExistingFile);

  auto* delegate = app.add_subcommand("delegate", "verifier client: delegate to a prover server");
  add_problem_options(*delegate, o, "interactive");
  delegate->add_option("endpoint", endpoint, "host:port of the server")->required();
  delegate->add_option("matrices", o.files, "Matrix Market input(s)")->required()->check(CLI::ExistingFile);

  auto* bench = app.add_subcommand("bench", "time honest sessions on random instances, CSV on stdout");
  add_problem_options(*bench, o, "interactive");
  bench->add_option("--sizes", sizes, "comma-separated n")->default_val("64,128,256");
  bench->add_option("--nnz-per-row", nnz_per_row, "sparse instances")->default_val(10);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kAccept : kParse;
  }

  if (o.mode.empty()) o.mode = (*prove || *verify) ? "fiat-shamir" : "interactive";
  try {
    if (*prove) return cmd_prove(o, out_path, out, err);
    if (*verify) return cmd_verify(o, transcript_path, out);
    if (*serve) return cmd_serve(o, host, port, max_sessions, out);
    if (*delegate) return cmd_delegate(o, endpoint, out);
    if (*bench) return cmd_bench(o, sizes, nnz_per_row, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  } catch (const proto::ProverFailure& e) {
    err << "prover failed: " << e.what() << "\n";
    return kProver;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::TransportError || e.code() == ErrorCode::Timeout) return kTransport;
    if (e.code() == ErrorCode::ProverFailed || e.code() == ErrorCode::DegreeDeficient) return kProver;
    return kParse;
  }
  return kParse;
}

}  // namespace vlac::cli
