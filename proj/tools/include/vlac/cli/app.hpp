#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vlac/cli/problem.hpp"
#include "vlac/cli/tcp.hpp"

namespace vlac::cli {

// Exit statuses of the vlac tool.
enum Exit : int {
  kAccept = 0,
  kReject = 1,
  kParse = 2,
  kProver = 3,
  kDigest = 4,
  kTransport = 5,
};

/// Runs the tool; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Prover server: every connection gets a fresh copy of the job and its
/// own thread.
class Server {
 public:
  Server(ProblemSpec spec, std::vector<MatrixFile> inputs, const std::string& host, std::uint16_t port);

  std::uint16_t port() const noexcept { return listener_.port(); }
  /// Serves until max_sessions sessions have finished (0 = forever) or
  /// stop() is called.
  void serve(std::size_t max_sessions, std::ostream& log);
  void stop();

 private:
  ProblemSpec spec_;
  std::vector<MatrixFile> inputs_;
  TcpListener listener_;
  std::atomic<bool> stopping_{false};
  std::atomic<std::uint64_t> sessions_{0};
};

/// Label of the greeting the server sends before each session: protocol id
/// and hex instance digest, so a client holding another matrix fails fast.
inline constexpr std::string_view kHelloLabel = "instance";

proto::Message hello_message(const certs::ProtocolRun& run);

/// Label of the trailer the server sends after a session: prover compute
/// time in nanoseconds.
inline constexpr std::string_view kStatsLabel = "stats";

}  // namespace vlac::cli
