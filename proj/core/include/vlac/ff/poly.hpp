#pragma once

#include <initializer_list>
#include <vector>

#include "vlac/ff/field.hpp"

namespace vlac::ff {

/// Dense univariate polynomial, coefficients low-degree first.
/// The zero polynomial has no coefficients and degree kZeroDegree.
class Poly {
 public:
  static constexpr long kZeroDegree = -1;

  Poly() = default;
  explicit Poly(std::vector<Scalar> coeffs);
  Poly(std::initializer_list<std::uint64_t> coeffs);

  static Poly constant(Scalar c);
  static Poly monomial(Scalar c, std::size_t degree);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  /// Coefficient of x^i; zero beyond the degree.
  Scalar coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : Scalar{}; }
  Scalar leading() const noexcept { return coeffs_.empty() ? Scalar{} : coeffs_.back(); }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back().value == 1; }
  const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void normalize();
  std::vector<Scalar> coeffs_;
};

Poly add(const PrimeField& F, const Poly& f, const Poly& g);
Poly sub(const PrimeField& F, const Poly& f, const Poly& g);
Poly mul(const PrimeField& F, const Poly& f, const Poly& g);
Poly scale(const PrimeField& F, const Poly& f, Scalar c);
Poly make_monic(const PrimeField& F, const Poly& f);

struct DivMod {
  Poly quotient;
  Poly remainder;
};
/// Throws Error{DivisionByZero} when g is zero.
DivMod divmod(const PrimeField& F, const Poly& f, const Poly& g);

/// Horner evaluation.
Scalar eval(const PrimeField& F, const Poly& f, Scalar x);

struct Xgcd {
  Poly gcd;  // monic
  Poly s;    // s*f + t*g = gcd
  Poly t;
};
/// Extended Euclid. deg s < deg g - deg gcd and deg t < deg f - deg gcd
/// whenever those bounds are positive. Throws Error{BothZero}.
Xgcd xgcd(const PrimeField& F, const Poly& f, const Poly& g);

}  // namespace vlac::ff
