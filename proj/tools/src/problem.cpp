#include "vlac/cli/problem.hpp"

#include <iomanip>
#include <regex>
#include <sstream>

#include "vlac/certs/det.hpp"
#include "vlac/certs/minpoly.hpp"
#include "vlac/certs/nonsingular.hpp"
#include "vlac/certs/rank.hpp"
#include "vlac/error.hpp"
#include "vlac/lift/intdet.hpp"
#include "vlac/lift/polydet.hpp"
#include "vlac/lift/primes.hpp"
#include "vlac/proto/instance.hpp"
#include "vlac/proto/sha256.hpp"

namespace vlac::cli {

namespace {

constexpr std::pair<Problem, std::string_view> kNames[] = {
    {Problem::MatMul, "matmul"}, {Problem::Inverse, "inverse"}, {Problem::Nonsingular, "nonsingular"},
    {Problem::Rank, "rank"},     {Problem::MinPoly, "minpoly"}, {Problem::Det, "det"},
    {Problem::IntDet, "intdet"}, {Problem::PolyDet, "polydet"},
};

template <class T>
std::shared_ptr<std::optional<T>> slot() {
  return std::make_shared<std::optional<T>>();
}

std::string format_matrix(const la::DenseMatrix& M) {
  std::ostringstream out;
  out << M.rows() << "x" << M.cols() << " matrix";
  if (M.rows() * M.cols() > 64) {
    std::vector<std::uint8_t> raw;
    for (auto x : M.data())
      for (int b = 0; b < 8; ++b) raw.push_back(std::uint8_t(x.value >> (8 * b)));
    out << ", sha256 " << proto::to_hex(proto::sha256(raw));
    return out.str();
  }
  for (std::size_t i = 0; i < M.rows(); ++i) {
    out << "\n ";
    for (std::size_t j = 0; j < M.cols(); ++j) out << ' ' << M(i, j).value;
  }
  return out.str();
}

ff::PrimeField field_for(const ProblemSpec& spec, const std::vector<MatrixFile>& inputs) {
  std::optional<std::uint64_t> p = spec.modulus;
  for (const auto& f : inputs) {
    if (!f.modulus) continue;
    if (p && *p != *f.modulus) {
      throw ParseError(f.path + ": modulus " + std::to_string(*f.modulus) + " disagrees with " + std::to_string(*p));
    }
    p = f.modulus;
  }
  if (!p) throw ParseError("no modulus: pass --modulus or add a %%modulus=p line to the matrix file");
  try {
    return ff::PrimeField(*p);
  } catch (const Error& e) {
    throw ParseError("modulus " + std::to_string(*p) + ": " + e.what());
  }
}

ff::SampleSet sample_set_for(const ProblemSpec& spec, const ff::PrimeField& F) {
  const std::uint64_t size = spec.sample_size.value_or(F.modulus());
  try {
    return ff::SampleSet(F, size);
  } catch (const Error& e) {
    throw ParseError("sample size " + std::to_string(size) + ": " + e.what());
  }
}

// Blackbox inputs are bound to the Fiat-Shamir chain through their file bytes.
proto::Digest file_digest(std::string_view id, const ff::SampleSet& S, const MatrixFile& f) {
  proto::InstanceHasher h(id);
  h.sample_set(S);
  h.bytes(f.bytes);
  return h.finish();
}

std::size_t square_size(const MatrixFile& f) {
  if (f.rows != f.cols || f.rows == 0) {
    throw ParseError(f.path + ": problem needs a square matrix of size >= 1, got " + std::to_string(f.rows) + "x" +
                     std::to_string(f.cols));
  }
  return f.rows;
}

std::uint64_t first_prime_at_least(std::uint64_t x) {
  x |= 1;
  while (!ff::is_prime(x)) x += 2;
  return x;
}

certs::FreivaldsOptions freivalds_options(const ProblemSpec& spec) {
  certs::FreivaldsOptions o;
  o.variant = spec.variant;
  if (spec.rounds) {
    o.rounds = *spec.rounds;
  } else if (spec.variant == certs::FreivaldsVariant::ZeroOne && spec.epsilon) {
    // fewest rounds with 2^-k <= epsilon
    o.rounds = 1;
    while (o.rounds < 256 && Rational(1, BigInt(1) << o.rounds) > *spec.epsilon) ++o.rounds;
  }
  if (o.rounds == 0) throw ParseError("--rounds must be at least 1");
  return o;
}

Job build(const ProblemSpec& spec, const std::vector<MatrixFile>& in) {
  Job job;
  switch (spec.problem) {
    case Problem::MatMul:
    case Problem::Inverse: {
      const auto F = field_for(spec, in);
      const auto S = sample_set_for(spec, F);
      const auto opts = freivalds_options(spec);
      auto out = slot<la::DenseMatrix>();
      const auto A = to_field_matrix(in[0], F);
      if (spec.problem == Problem::MatMul) {
        const auto B = to_field_matrix(in[1], F);
        if (la::cols_of(A) != la::rows_of(B)) throw ParseError("matmul: inner dimensions differ");
        job.run = certs::matmul_protocol(A, B, S, opts, out);
        job.predicted_error = certs::freivalds_error_bound(la::cols_of(B), S, opts);
      } else {
        const std::size_t n = square_size(in[0]);
        job.run = certs::inverse_protocol(A, S, opts, out);
        job.predicted_error = certs::freivalds_error_bound(n, S, opts);
      }
      job.result = [out] { return format_matrix(out->value()); };
      break;
    }
    case Problem::Nonsingular: {
      const auto F = field_for(spec, in);
      const auto S = sample_set_for(spec, F);
      square_size(in[0]);
      job.run = certs::nonsingular_protocol(la::as_blackbox(to_field_matrix(in[0], F)), S,
                                            file_digest(certs::kNonsingularId, S, in[0]));
      job.predicted_error = certs::ratio(1, S.size());
      job.result = [] { return std::string("nonsingular"); };
      break;
    }
    case Problem::Rank: {
      const auto F = field_for(spec, in);
      const auto S = sample_set_for(spec, F);
      auto out = slot<std::size_t>();
      const std::size_t m = in[0].rows, n = in[0].cols;
      job.run = certs::rank_protocol(la::as_blackbox(to_field_matrix(in[0], F)), S,
                                     file_digest(certs::kRankId, S, in[0]), certs::RunOptions{}.prover_seed, out);
      job.predicted_error = 0;
      for (std::size_t r = 0; r <= std::min(m, n); ++r)
        job.predicted_error = std::max(job.predicted_error, certs::rank_error_bound(m, n, r, S));
      job.result = [out] { return std::to_string(out->value()); };
      break;
    }
    case Problem::MinPoly:
    case Problem::Det: {
      const auto F = field_for(spec, in);
      const auto S = sample_set_for(spec, F);
      const std::size_t n = square_size(in[0]);
      const auto A = la::as_blackbox(to_field_matrix(in[0], F));
      const auto seed = certs::RunOptions{}.prover_seed;
      if (spec.problem == Problem::MinPoly) {
        auto out = slot<ff::Poly>();
        job.run = certs::minpoly_protocol(A, S, file_digest(certs::kMinPolyId, S, in[0]), seed, out);
        job.predicted_error = certs::minpoly_error_bound(n, long(n), long(n) - 1, S);
        job.result = [out] { return format_poly(out->value()); };
      } else {
        auto out = slot<ff::Scalar>();
        job.run = certs::det_protocol(A, S, file_digest(certs::kDetId, S, in[0]), seed, out);
        job.predicted_error = certs::det_error_bound(n, long(n) - 1, S);
        job.result = [out] { return std::to_string(out->value().value); };
      }
      break;
    }
    case Problem::IntDet: {
      if (spec.prime_bits < 16 || spec.prime_bits > 62) throw ParseError("--prime-bits must lie in [16, 62]");
      if (in[0].modulus) throw ParseError(in[0].path + ": intdet reads integer matrices, not field matrices");
      const std::size_t n = square_size(in[0]);
      const auto A = to_int_matrix(in[0]);
      auto out = slot<BigInt>();
      job.run = lift::intdet_protocol(A, spec.prime_bits, certs::RunOptions{}.prover_seed, out);
      const std::uint64_t q = first_prime_at_least(std::uint64_t{1} << (spec.prime_bits - 1));
      job.predicted_error = lift::prime_error_bound(lift::hadamard_bound(A), spec.prime_bits) +
                            certs::det_error_bound(n, long(n) - 1, ff::SampleSet::full(ff::PrimeField(q)));
      job.result = [out] { return out->value().str(); };
      break;
    }
    case Problem::PolyDet: {
      const auto F = field_for(spec, in);
      const auto S = sample_set_for(spec, F);
      const std::size_t n = square_size(in[0]);
      const auto A = to_poly_matrix(in[0], F);
      auto out = slot<ff::Poly>();
      job.run = lift::polydet_protocol(A, S, certs::RunOptions{}.prover_seed, out);
      job.predicted_error = lift::polydet_error_bound(A, S, long(n) - 1);
      job.result = [out] { return format_poly(out->value()); };
      break;
    }
  }
  return job;
}

}  // namespace

std::optional<Problem> parse_problem(std::string_view s) {
  for (auto [p, name] : kNames)
    if (name == s) return p;
  return std::nullopt;
}

std::string_view to_string(Problem p) noexcept {
  for (auto [q, name] : kNames)
    if (q == p) return name;
  return "?";
}

std::size_t input_count(Problem p) noexcept { return p == Problem::MatMul ? 2 : 1; }

Job make_job(const ProblemSpec& spec, const std::vector<MatrixFile>& inputs) {
  if (inputs.size() != input_count(spec.problem)) {
    throw ParseError(std::string(to_string(spec.problem)) + " takes " + std::to_string(input_count(spec.problem)) +
                     " matrix file(s), got " + std::to_string(inputs.size()));
  }
  Job job;
  try {
    job = build(spec, inputs);
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  if (spec.epsilon && job.predicted_error > *spec.epsilon) {
    throw ParseError("target epsilon " + format_rational(*spec.epsilon) + " is unachievable: " +
                     std::string(to_string(spec.problem)) + " declares up to " + format_rational(job.predicted_error) +
                     " here (raise --sample-size or --modulus)");
  }
  return job;
}

Rational parse_rational(const std::string& s) {
  static const std::regex frac(R"(^\s*(\d+)\s*/\s*(\d+)\s*$)");
  static const std::regex dec(R"(^\s*(\d*)(?:\.(\d*))?(?:[eE]([-+]?\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, frac)) {
    const BigInt den(m[2].str());
    if (den == 0) throw ParseError("'" + s + "': zero denominator");
    return Rational(BigInt(m[1].str()), den);
  }
  if (std::regex_match(s, m, dec) && (m[1].length() + m[2].length()) > 0) {
    const std::string digits = m[1].str() + m[2].str();
    long exp = -static_cast<long>(m[2].length());
    if (m[3].matched) exp += std::stol(m[3].str());
    if (exp > 1000 || exp < -1000) throw ParseError("'" + s + "': exponent out of range");
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exp < 0 ? -exp : exp));
    const BigInt num(digits);
    return exp < 0 ? Rational(num, scale) : Rational(num * scale);
  }
  throw ParseError("'" + s + "' is not a number");
}

std::string format_rational(const Rational& r) {
  std::ostringstream out;
  out << r;
  if (denominator(r) != 1) out << " (~" << std::scientific << std::setprecision(3) << r.convert_to<double>() << ")";
  return out.str();
}

std::string format_poly(const ff::Poly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (long i = f.degree(); i >= 0; --i) {
    const auto c = f.coeff(static_cast<std::size_t>(i)).value;
    if (c == 0) continue;
    if (!s.empty()) s += " + ";
    if (c != 1 || i == 0) s += std::to_string(c);
    if (i > 0) s += (c != 1 ? "*X" : "X") + (i > 1 ? "^" + std::to_string(i) : std::string());
  }
  return s;
}

}  // namespace vlac::cli
