#pragma once

#include <chrono>
#include <memory>
#include <utility>

#include "vlac/proto/message.hpp"

namespace vlac::proto {

/// Ordered, exactly-once message pipe between prover and verifier.
/// receive() throws Error{Timeout} when nothing arrives within the timeout
/// and Error{TransportError} once the peer has closed.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void send(const Message& m) = 0;
  virtual Message receive() = 0;
  virtual void close() = 0;
};

using TransportPair = std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>>;

/// Two connected in-process endpoints.
TransportPair make_memory_pipe(std::chrono::milliseconds timeout = std::chrono::seconds(60));

}  // namespace vlac::proto
