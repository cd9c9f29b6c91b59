#pragma once

#include <span>
#include <string_view>

#include "vlac/ff/sample.hpp"
#include "vlac/la/sparse.hpp"
#include "vlac/proto/codec.hpp"
#include "vlac/proto/sha256.hpp"

namespace vlac::proto {

/// Builds the 32-byte instance digest that anchors a Fiat-Shamir chain:
/// SHA-256 over "VLAC/instance/v1", the protocol id, then every added
/// component in canonical little-endian encoding.
class InstanceHasher {
 public:
  explicit InstanceHasher(std::string_view protocol_id);

  InstanceHasher& u64(std::uint64_t v);
  InstanceHasher& text(std::string_view s);
  InstanceHasher& bytes(std::span<const std::uint8_t> b);
  InstanceHasher& sample_set(const ff::SampleSet& s);
  InstanceHasher& vec(const ff::Vec& v);
  InstanceHasher& matrix(const la::DenseMatrix& M);
  InstanceHasher& matrix(const la::SparseMatrix& M);
  /// Any message item in its wire encoding (big integers, polynomials).
  InstanceHasher& item(const Item& it);

  Digest finish() const { return sha256(w_.data()); }

 private:
  Writer w_;
};

}  // namespace vlac::proto
