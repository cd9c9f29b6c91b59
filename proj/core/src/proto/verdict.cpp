#include "vlac/proto/verdict.hpp"

#include <sstream>

namespace vlac::proto {

std::string_view to_string(RejectReason r) noexcept {
  switch (r) {
    case RejectReason::CheckFailed: return "CheckFailed";
    case RejectReason::ProtocolViolation: return "ProtocolViolation";
    case RejectReason::ChallengeMismatch: return "ChallengeMismatch";
    case RejectReason::DigestMismatch: return "DigestMismatch";
    case RejectReason::ZeroWitness: return "ZeroWitness";
    case RejectReason::DegreeViolation: return "DegreeViolation";
    case RejectReason::BezoutFail: return "BezoutFail";
    case RejectReason::SingularShift: return "SingularShift";
    case RejectReason::ProverFailed: return "ProverFailed";
    case RejectReason::CommitmentOutOfBounds: return "CommitmentOutOfBounds";
    case RejectReason::DegreeOutOfBounds: return "DegreeOutOfBounds";
    case RejectReason::RankOutOfRange: return "RankOutOfRange";
    case RejectReason::PreconditionFailed: return "PreconditionFailed";
  }
  return "Unknown";
}

std::string describe(const Verdict& v) {
  std::ostringstream os;
  if (v.accepted) {
    os << "ACCEPT epsilon=" << v.error_bound;
    if (v.fiat_shamir_heuristic) os << " (heuristic under Fiat-Shamir)";
  } else {
    os << "REJECT " << to_string(v.reason);
    if (!v.detail.empty()) os << ": " << v.detail;
  }
  return os.str();
}

}  // namespace vlac::proto
