#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vlac/certs/common.hpp"
#include "vlac/certs/freivalds.hpp"
#include "vlac/cli/matrix_market.hpp"

namespace vlac::cli {

enum class Problem { MatMul, Inverse, Nonsingular, Rank, MinPoly, Det, IntDet, PolyDet };

std::optional<Problem> parse_problem(std::string_view s);
std::string_view to_string(Problem p) noexcept;
/// Number of matrix files the problem reads.
std::size_t input_count(Problem p) noexcept;

struct ProblemSpec {
  Problem problem = Problem::Det;
  std::optional<std::uint64_t> modulus;
  std::optional<std::uint64_t> sample_size;
  proto::Mode mode = proto::Mode::FiatShamir;
  /// Largest acceptable declared error; the tool refuses when even the
  /// best case of the protocol exceeds it.
  std::optional<Rational> epsilon;
  std::uint64_t seed = 1;
  std::chrono::milliseconds timeout{std::chrono::seconds(60)};
  certs::FreivaldsVariant variant = certs::FreivaldsVariant::Geometric;
  std::optional<unsigned> rounds;
  unsigned prime_bits = 62;
};

/// One ready-to-run protocol instance built from files and flags.
struct Job {
  certs::ProtocolRun run;
  /// Worst case of the declared error over honest transcripts.
  Rational predicted_error;
  /// Human-readable result, valid after an accepted run.
  std::function<std::string()> result;
};

/// Throws ParseError for inconsistent flags or files and for an
/// unachievable epsilon target.
Job make_job(const ProblemSpec& spec, const std::vector<MatrixFile>& inputs);

/// "1/1000", "0.001" or "1e-3" as an exact rational.
Rational parse_rational(const std::string& s);
std::string format_rational(const Rational& r);

std::string format_poly(const ff::Poly& f);

}  // namespace vlac::cli
