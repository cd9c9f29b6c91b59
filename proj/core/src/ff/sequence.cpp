#include "vlac/ff/sequence.hpp"

#include <utility>

#include "vlac/error.hpp"

namespace vlac::ff {

Poly berlekamp_massey(const PrimeField& F, const Vec& seq) {
  // Connection polynomial C(x) = 1 + c_1 x + ... + c_L x^L, low-first.
  std::vector<Scalar> C{F.one()}, B{F.one()};
  std::size_t L = 0;
  std::size_t shift = 1;
  Scalar b = F.one();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    Scalar d = seq[i];
    for (std::size_t j = 1; j <= L && j < C.size(); ++j) d = F.fma(C[j], seq[i - j], d);
    if (d.is_zero()) {
      ++shift;
      continue;
    }
    const Scalar coef = F.neg(F.div(d, b));
    std::vector<Scalar> T = C;
    if (C.size() < B.size() + shift) C.resize(B.size() + shift);
    for (std::size_t j = 0; j < B.size(); ++j) C[j + shift] = F.fma(coef, B[j], C[j + shift]);
    if (2 * L <= i) {
      L = i + 1 - L;
      B = std::move(T);
      b = d;
      shift = 1;
    } else {
      ++shift;
    }
  }
  // H(x) = x^L C(1/x)
  std::vector<Scalar> H(L + 1);
  for (std::size_t j = 0; j <= L; ++j) H[L - j] = j < C.size() ? C[j] : Scalar{};
  return Poly(std::move(H));
}

bool generates(const PrimeField& F, const Poly& H, const Vec& seq) {
  if (H.is_zero()) return false;
  const auto d = static_cast<std::size_t>(H.degree());
  const auto& h = H.coeffs();
  for (std::size_t i = 0; i + d < seq.size(); ++i) {
    Scalar acc{};
    for (std::size_t k = 0; k <= d; ++k) acc = F.fma(h[k], seq[i + k], acc);
    if (!acc.is_zero()) return false;
  }
  return true;
}

Poly numerator_from_sequence(const PrimeField& F, const Poly& H, const Vec& seq) {
  if (H.is_zero()) throw Error(ErrorCode::GeneratorMismatch, "zero generator");
  const auto d = static_cast<std::size_t>(H.degree());
  if (seq.size() < d) {
    throw Error(ErrorCode::InvalidArgument, "sequence shorter than generator degree");
  }
  if (!generates(F, H, seq)) throw Error(ErrorCode::GeneratorMismatch, "H does not generate the sequence");
  std::vector<Scalar> h(d);
  const auto& c = H.coeffs();
  for (std::size_t j = 0; j < d; ++j) {
    Scalar acc{};
    for (std::size_t k = 0; j + 1 + k <= d; ++k) acc = F.fma(c[j + 1 + k], seq[k], acc);
    h[j] = acc;
  }
  return Poly(std::move(h));
}

}  // namespace vlac::ff
