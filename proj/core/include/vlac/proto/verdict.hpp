#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "vlac/numeric.hpp"

namespace vlac::proto {

enum class RejectReason {
  CheckFailed,
  ProtocolViolation,
  ChallengeMismatch,
  DigestMismatch,
  ZeroWitness,
  DegreeViolation,
  BezoutFail,
  SingularShift,
  ProverFailed,
  CommitmentOutOfBounds,
  DegreeOutOfBounds,
  RankOutOfRange,
  PreconditionFailed,
};

std::string_view to_string(RejectReason r) noexcept;

/// Outcome of one protocol run. error_bound is the declared probability that
/// a false statement is accepted; it is meaningful on Accept.
struct Verdict {
  bool accepted = false;
  RejectReason reason = RejectReason::CheckFailed;
  std::string detail;
  Rational error_bound{0};
  /// Set when challenges came from the Fiat-Shamir hash chain: the bound
  /// then holds only heuristically (random-oracle model).
  bool fiat_shamir_heuristic = false;

  static Verdict accept(Rational eps) {
    Verdict v;
    v.accepted = true;
    v.error_bound = std::move(eps);
    return v;
  }
  static Verdict reject(RejectReason reason, std::string detail) {
    Verdict v;
    v.reason = reason;
    v.detail = std::move(detail);
    return v;
  }
};

std::string describe(const Verdict& v);

/// Thrown inside verifier code to end the session with a Reject.
class Rejection : public std::runtime_error {
 public:
  Rejection(RejectReason reason, const std::string& detail)
      : std::runtime_error(detail), reason_(reason) {}
  RejectReason reason() const noexcept { return reason_; }

 private:
  RejectReason reason_;
};

/// Throws Rejection(reason, detail) unless ok.
inline void check(bool ok, RejectReason reason, std::string_view detail) {
  if (!ok) throw Rejection(reason, std::string(detail));
}

}  // namespace vlac::proto
