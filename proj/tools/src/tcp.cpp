#include "vlac/cli/tcp.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>

#include "vlac/cli/matrix_market.hpp"
#include "vlac/error.hpp"
#include "vlac/proto/codec.hpp"

namespace vlac::cli {

namespace {

using Clock = std::chrono::steady_clock;

[[noreturn]] void sys_fail(const std::string& what) {
  throw Error(ErrorCode::TransportError, what + ": " + std::strerror(errno));
}

int remaining_ms(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
  return left <= 0 ? 0 : static_cast<int>(std::min<long long>(left, 1 << 30));
}

void no_delay(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

}  // namespace

TcpTransport::TcpTransport(int fd, std::chrono::milliseconds timeout) : fd_(fd), timeout_(timeout) { no_delay(fd_); }

TcpTransport::~TcpTransport() { close(); }

void TcpTransport::close() {
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
    fd_ = -1;
  }
}

void TcpTransport::send(const proto::Message& m) {
  if (fd_ < 0) throw Error(ErrorCode::TransportError, "send on a closed connection");
  const proto::Bytes body = proto::encode_message(m);
  if (body.size() > kMaxFrame) throw Error(ErrorCode::TransportError, "message too large for one frame");
  const auto len = static_cast<std::uint32_t>(body.size());
  std::vector<std::uint8_t> frame{std::uint8_t(len >> 24), std::uint8_t(len >> 16), std::uint8_t(len >> 8),
                                  std::uint8_t(len)};
  frame.insert(frame.end(), body.begin(), body.end());
  std::size_t off = 0;
  while (off < frame.size()) {
    const ssize_t k = ::send(fd_, frame.data() + off, frame.size() - off, MSG_NOSIGNAL);
    if (k < 0) {
      if (errno == EINTR) continue;
      sys_fail("send");
    }
    off += static_cast<std::size_t>(k);
  }
  sent_ += frame.size();
}

void TcpTransport::read_exact(std::uint8_t* out, std::size_t n, Clock::time_point deadline) {
  while (n > 0) {
    pollfd p{fd_, POLLIN, 0};
    const int ready = ::poll(&p, 1, remaining_ms(deadline));
    if (ready < 0) {
      if (errno == EINTR) continue;
      sys_fail("poll");
    }
    if (ready == 0) throw Error(ErrorCode::Timeout, "no message from peer within the timeout");
    const ssize_t k = ::recv(fd_, out, n, 0);
    if (k < 0) {
      if (errno == EINTR) continue;
      sys_fail("recv");
    }
    if (k == 0) throw Error(ErrorCode::TransportError, "connection closed by peer");
    out += k;
    n -= static_cast<std::size_t>(k);
    received_ += static_cast<std::uint64_t>(k);
  }
}

proto::Message TcpTransport::receive() {
  if (fd_ < 0) throw Error(ErrorCode::TransportError, "receive on a closed connection");
  const auto deadline = Clock::now() + timeout_;
  std::uint8_t head[4];
  read_exact(head, 4, deadline);
  const std::uint32_t len = std::uint32_t(head[0]) << 24 | std::uint32_t(head[1]) << 16 |
                            std::uint32_t(head[2]) << 8 | std::uint32_t(head[3]);
  if (len > kMaxFrame) throw Error(ErrorCode::TransportError, "frame length " + std::to_string(len) + " too large");
  proto::Bytes body(len);
  read_exact(body.data(), len, deadline);
  try {
    return proto::decode_message(body);
  } catch (const Error& e) {
    throw Error(ErrorCode::TransportError, std::string("undecodable frame: ") + e.what());
  }
}

std::unique_ptr<TcpTransport> tcp_connect(const std::string& host, std::uint16_t port,
                                          std::chrono::milliseconds timeout) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw Error(ErrorCode::TransportError, "resolve " + host + ": " + ::gai_strerror(rc));
  }
  std::string last = "no address";
  for (addrinfo* a = res; a; a = a->ai_next) {
    const int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) {
      ::freeaddrinfo(res);
      return std::make_unique<TcpTransport>(fd, timeout);
    }
    last = std::strerror(errno);
    ::close(fd);
  }
  ::freeaddrinfo(res);
  throw Error(ErrorCode::TransportError, "connect " + host + ":" + service + ": " + last);
}

TcpListener::TcpListener(const std::string& host, std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) sys_fail("socket");
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(fd_);
    throw Error(ErrorCode::TransportError, "bad listen address " + host);
  }
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(fd_, 64) < 0) {
    const int saved = errno;
    ::close(fd_);
    errno = saved;
    sys_fail("listen on " + host + ":" + std::to_string(port));
  }
  socklen_t len = sizeof addr;
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() { close(); }

void TcpListener::close() {
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
    fd_ = -1;
  }
}

std::unique_ptr<TcpTransport> TcpListener::accept(std::chrono::milliseconds session_timeout) {
  for (;;) {
    const int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) return std::make_unique<TcpTransport>(fd, session_timeout);
    if (errno == EINTR || errno == ECONNABORTED) continue;
    sys_fail("accept");
  }
}

std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& s) {
  const auto colon = s.rfind(':');
  std::string host = colon == std::string::npos ? "" : s.substr(0, colon);
  const std::string port = colon == std::string::npos ? s : s.substr(colon + 1);
  unsigned value = 0;
  const auto [p, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (port.empty() || ec != std::errc() || p != port.data() + port.size() || value > 65535) {
    throw ParseError("bad endpoint '" + s + "': expected host:port");
  }
  if (host.empty()) host = "127.0.0.1";
  return {host, static_cast<std::uint16_t>(value)};
}

}  // namespace vlac::cli
