#include "vlac/ff/poly.hpp"

#include <algorithm>
#include <utility>

#include "vlac/error.hpp"

namespace vlac::ff {

Poly::Poly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Poly::Poly(std::initializer_list<std::uint64_t> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (auto c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

Poly Poly::constant(Scalar c) { return Poly(std::vector<Scalar>{c}); }

Poly Poly::monomial(Scalar c, std::size_t degree) {
  std::vector<Scalar> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly add(const PrimeField& F, const Poly& f, const Poly& g) {
  const auto n = std::max(f.coeffs().size(), g.coeffs().size());
  std::vector<Scalar> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = F.add(f.coeff(i), g.coeff(i));
  return Poly(std::move(r));
}

Poly sub(const PrimeField& F, const Poly& f, const Poly& g) {
  const auto n = std::max(f.coeffs().size(), g.coeffs().size());
  std::vector<Scalar> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = F.sub(f.coeff(i), g.coeff(i));
  return Poly(std::move(r));
}

Poly mul(const PrimeField& F, const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  const auto& a = f.coeffs();
  const auto& b = g.coeffs();
  std::vector<Scalar> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.fma(a[i], b[j], r[i + j]);
  }
  return Poly(std::move(r));
}

Poly scale(const PrimeField& F, const Poly& f, Scalar c) {
  std::vector<Scalar> r(f.coeffs());
  for (auto& x : r) x = F.mul(x, c);
  return Poly(std::move(r));
}

Poly make_monic(const PrimeField& F, const Poly& f) {
  if (f.is_zero()) return f;
  return scale(F, f, F.inv(f.leading()));
}

DivMod divmod(const PrimeField& F, const Poly& f, const Poly& g) {
  if (g.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (f.degree() < g.degree()) return {Poly{}, f};
  std::vector<Scalar> rem(f.coeffs());
  const auto& d = g.coeffs();
  const std::size_t dg = d.size() - 1;
  const Scalar lead_inv = F.inv(d.back());
  std::vector<Scalar> q(rem.size() - dg);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Scalar c = F.mul(rem[k + dg], lead_inv);
    q[k] = c;
    if (c.is_zero()) continue;
    const Scalar nc = F.neg(c);
    for (std::size_t j = 0; j <= dg; ++j) rem[k + j] = F.fma(nc, d[j], rem[k + j]);
  }
  rem.resize(dg);
  return {Poly(std::move(q)), Poly(std::move(rem))};
}

Scalar eval(const PrimeField& F, const Poly& f, Scalar x) {
  Scalar acc{};
  const auto& c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = F.fma(acc, x, c[i]);
  return acc;
}

Xgcd xgcd(const PrimeField& F, const Poly& f, const Poly& g) {
  if (f.is_zero() && g.is_zero()) throw Error(ErrorCode::BothZero, "xgcd(0, 0)");
  // Invariant: r0 = s0*f + t0*g, r1 = s1*f + t1*g.
  Poly r0 = f, r1 = g;
  Poly s0 = Poly::constant(F.one()), s1;
  Poly t0, t1 = Poly::constant(F.one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(F, r0, r1);
    Poly s2 = sub(F, s0, mul(F, q, s1));
    Poly t2 = sub(F, t0, mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const Scalar li = F.inv(r0.leading());
  return {scale(F, r0, li), scale(F, s0, li), scale(F, t0, li)};
}

}  // namespace vlac::ff
