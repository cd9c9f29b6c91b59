#include "vlac/proto/challenge.hpp"

#include "vlac/error.hpp"
#include "vlac/proto/codec.hpp"

namespace vlac::proto {

namespace {

class HashStream final : public ff::UniformSource {
 public:
  HashStream(const Digest& state, std::string_view label) : state_(state), label_(label) {}

  std::uint64_t next_u64() override {
    if (word_ == 4) refill();
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | block_[8 * word_ + i];
    ++word_;
    return v;
  }

 private:
  void refill() {
    Writer w;
    w.bytes(state_);
    w.bytes(std::span(reinterpret_cast<const std::uint8_t*>("challenge"), 9));
    w.text16(label_);
    w.u64(counter_++);
    block_ = sha256(w.data());
    word_ = 0;
  }

  Digest state_;
  std::string label_;
  std::uint64_t counter_ = 0;
  Digest block_{};
  int word_ = 4;
};

class SharedRng final : public ff::UniformSource {
 public:
  explicit SharedRng(std::shared_ptr<std::mt19937_64> rng) : rng_(std::move(rng)) {}
  std::uint64_t next_u64() override { return (*rng_)(); }

 private:
  std::shared_ptr<std::mt19937_64> rng_;
};

}  // namespace

ChallengeSource ChallengeSource::interactive(std::uint64_t seed) {
  ChallengeSource s(Mode::Interactive);
  s.rng_ = std::make_shared<std::mt19937_64>(seed);
  return s;
}

ChallengeSource ChallengeSource::fiat_shamir(std::string_view protocol_id, const Digest& instance_digest) {
  ChallengeSource s(Mode::FiatShamir);
  Writer w;
  w.bytes(std::span(reinterpret_cast<const std::uint8_t*>("VLAC/fs/v1"), 10));
  w.text16(protocol_id);
  w.bytes(instance_digest);
  s.state_ = sha256(w.data());
  return s;
}

void ChallengeSource::absorb(const Message& m) {
  if (mode_ != Mode::FiatShamir) return;
  Writer w;
  w.bytes(state_);
  encode_message(w, m);
  state_ = sha256(w.data());
}

std::unique_ptr<ff::UniformSource> ChallengeSource::stream(std::string_view label) {
  if (mode_ == Mode::FiatShamir) return std::make_unique<HashStream>(state_, label);
  return std::make_unique<SharedRng>(rng_);
}

ff::Vec ChallengeSource::draw(std::string_view label, const ff::SampleSet& set, std::size_t count,
                              bool nonzero) {
  auto src = stream(label);
  ff::Vec out(count);
  for (auto& x : out) x = nonzero ? ff::sample_nonzero(set, *src) : ff::sample(set, *src);
  return out;
}

std::uint64_t ChallengeSource::draw_prime(std::string_view label, unsigned bits) {
  if (bits < 16 || bits > 62) throw Error(ErrorCode::InvalidArgument, "prime size must be 16..62 bits");
  auto src = stream(label);
  const std::uint64_t base = std::uint64_t{1} << (bits - 1);
  for (;;) {
    const std::uint64_t c = (base + ff::uniform_below(*src, base)) | 1;
    if (ff::is_prime(c)) return c;
  }
}

ff::Scalar fs_challenge(const Digest& state, std::string_view label, const ff::SampleSet& set) {
  HashStream s(state, label);
  return ff::sample(set, s);
}

}  // namespace vlac::proto
