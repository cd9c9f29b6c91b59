#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vlac/ff/field.hpp"
#include "vlac/la/blackbox.hpp"
#include "vlac/lift/bigint.hpp"
#include "vlac/lift/polydet.hpp"

namespace vlac::cli {

/// Bad input file or flag; the tool exits with status 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Matrix Market file as read from disk, before it is bound to a ring.
///
/// Supported headers:
///   %%MatrixMarket matrix coordinate|array integer|pattern|poly general|symmetric|skew-symmetric
/// A comment line "%%modulus=p" names the prime field of a field matrix.
/// Poly entries list coefficients low-first after the indices, e.g.
/// "2 1 0 1" is the entry X at row 2, column 1.
struct MatrixFile {
  enum class Field { Integer, Pattern, Poly };

  std::string path;
  std::vector<std::uint8_t> bytes;
  bool coordinate = true;
  Field field = Field::Integer;
  std::optional<std::uint64_t> modulus;
  std::size_t rows = 0;
  std::size_t cols = 0;

  struct Entry {
    std::size_t row;
    std::size_t col;
    std::vector<BigInt> values;  // one value, or the coefficients of a poly entry
  };
  /// Symmetric halves already expanded; zero-based indices.
  std::vector<Entry> entries;
};

MatrixFile parse_matrix_market(std::string_view text, std::string path = "<input>");
MatrixFile read_matrix_market(const std::string& path);

/// Coordinate files become sparse, array files dense.
la::AnyMatrix to_field_matrix(const MatrixFile& m, const ff::PrimeField& F);
lift::IntMatrix to_int_matrix(const MatrixFile& m);
lift::PolyMatrix to_poly_matrix(const MatrixFile& m, const ff::PrimeField& F);

std::string to_matrix_market(const la::DenseMatrix& A);
std::string to_matrix_market(const la::SparseMatrix& A);
std::string to_matrix_market(const lift::IntMatrix& A);
std::string to_matrix_market(const lift::PolyMatrix& A);

}  // namespace vlac::cli
