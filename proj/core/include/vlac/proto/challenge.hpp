#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string_view>

#include "vlac/ff/sample.hpp"
#include "vlac/proto/message.hpp"
#include "vlac/proto/sha256.hpp"
#include "vlac/proto/transcript.hpp"

namespace vlac::proto {

/// Verifier randomness: a seeded RNG (interactive) or a SHA-256 hash chain
/// over the instance and every message so far (Fiat-Shamir).
///
/// Fiat-Shamir chain:
///   state_0   = SHA256("VLAC/fs/v1" || u16 len || protocol_id || digest)
///   state_i+1 = SHA256(state_i || encode(message_i))
///   block_j   = SHA256(state || "challenge" || u16 len || label || u64 j)
/// Each block yields four little-endian u64 words, consumed in order and
/// rejection-sampled into the requested range.
class ChallengeSource {
 public:
  static ChallengeSource interactive(std::uint64_t seed);
  static ChallengeSource fiat_shamir(std::string_view protocol_id, const Digest& instance_digest);

  Mode mode() const noexcept { return mode_; }
  const Digest& state() const noexcept { return state_; }

  /// Fold a message into the hash chain (no-op when interactive).
  void absorb(const Message& m);

  /// count draws from set under a domain label; nonzero excludes 0.
  ff::Vec draw(std::string_view label, const ff::SampleSet& set, std::size_t count, bool nonzero = false);
  /// Uniform prime in [2^(bits-1), 2^bits), 16 <= bits <= 62.
  std::uint64_t draw_prime(std::string_view label, unsigned bits);

 private:
  explicit ChallengeSource(Mode mode) : mode_(mode) {}
  std::unique_ptr<ff::UniformSource> stream(std::string_view label);

  Mode mode_;
  Digest state_{};
  std::shared_ptr<std::mt19937_64> rng_;
};

/// The Fiat-Shamir challenge for one draw from set: pure function of the
/// chain state and label.
ff::Scalar fs_challenge(const Digest& state, std::string_view label, const ff::SampleSet& set);

/// Seeded std::mt19937_64 as a UniformSource.
class RngSource final : public ff::UniformSource {
 public:
  explicit RngSource(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t next_u64() override { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace vlac::proto
