#include "vlac/proto/transport.hpp"

#include <condition_variable>
#include <deque>
#include <mutex>

#include "vlac/error.hpp"

namespace vlac::proto {

namespace {

struct Queue {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<Message> items;
  bool closed = false;
};

class MemoryEnd final : public Transport {
 public:
  MemoryEnd(std::shared_ptr<Queue> in, std::shared_ptr<Queue> out, std::chrono::milliseconds timeout)
      : in_(std::move(in)), out_(std::move(out)), timeout_(timeout) {}
  ~MemoryEnd() override { close(); }

  void send(const Message& m) override {
    std::lock_guard lock(out_->mu);
    if (out_->closed) throw Error(ErrorCode::TransportError, "send on closed pipe");
    out_->items.push_back(m);
    out_->cv.notify_one();
  }

  Message receive() override {
    std::unique_lock lock(in_->mu);
    if (!in_->cv.wait_for(lock, timeout_, [&] { return !in_->items.empty() || in_->closed; })) {
      throw Error(ErrorCode::Timeout, "no message within timeout");
    }
    if (in_->items.empty()) throw Error(ErrorCode::TransportError, "peer closed the pipe");
    Message m = std::move(in_->items.front());
    in_->items.pop_front();
    return m;
  }

  void close() override {
    for (auto* q : {in_.get(), out_.get()}) {
      std::lock_guard lock(q->mu);
      q->closed = true;
      q->cv.notify_all();
    }
  }

 private:
  std::shared_ptr<Queue> in_;
  std::shared_ptr<Queue> out_;
  std::chrono::milliseconds timeout_;
};

}  // namespace

TransportPair make_memory_pipe(std::chrono::milliseconds timeout) {
  auto a = std::make_shared<Queue>();
  auto b = std::make_shared<Queue>();
  return {std::make_unique<MemoryEnd>(a, b, timeout), std::make_unique<MemoryEnd>(b, a, timeout)};
}

}  // namespace vlac::proto
