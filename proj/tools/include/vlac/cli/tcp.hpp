#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>

#include "vlac/proto/transport.hpp"

namespace vlac::cli {

/// Largest frame either side accepts.
inline constexpr std::uint32_t kMaxFrame = 1u << 30;

/// Message pipe over a connected TCP socket. Each frame is a 4-byte
/// big-endian length followed by one encoded message. A peer that closes,
/// even mid-frame, raises Error{TransportError}; silence longer than the
/// timeout raises Error{Timeout}.
class TcpTransport final : public proto::Transport {
 public:
  TcpTransport(int fd, std::chrono::milliseconds timeout);
  ~TcpTransport() override;
  TcpTransport(const TcpTransport&) = delete;
  TcpTransport& operator=(const TcpTransport&) = delete;

  void send(const proto::Message& m) override;
  proto::Message receive() override;
  void close() override;

  void set_timeout(std::chrono::milliseconds t) noexcept { timeout_ = t; }
  std::uint64_t bytes_sent() const noexcept { return sent_; }
  std::uint64_t bytes_received() const noexcept { return received_; }

 private:
  void read_exact(std::uint8_t* out, std::size_t n, std::chrono::steady_clock::time_point deadline);

  int fd_;
  std::chrono::milliseconds timeout_;
  std::uint64_t sent_ = 0;
  std::uint64_t received_ = 0;
};

std::unique_ptr<TcpTransport> tcp_connect(const std::string& host, std::uint16_t port,
                                          std::chrono::milliseconds timeout);

class TcpListener {
 public:
  /// Port 0 picks a free port.
  TcpListener(const std::string& host, std::uint16_t port);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const noexcept { return port_; }
  /// Blocks for the next connection.
  std::unique_ptr<TcpTransport> accept(std::chrono::milliseconds session_timeout);
  void close();

 private:
  int fd_;
  std::uint16_t port_;
};

/// "host:port" or ":port" / "port" (host 127.0.0.1).
std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& s);

}  // namespace vlac::cli
