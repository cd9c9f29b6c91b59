#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "vlac/ff/poly.hpp"
#include "vlac/la/dense.hpp"
#include "vlac/numeric.hpp"

namespace vlac::proto {

enum class Role : std::uint8_t { Prover = 0, Verifier = 1 };
enum class Tag : std::uint8_t { Commit = 0, Challenge = 1, Response = 2, Claim = 3 };

std::string_view to_string(Role r) noexcept;
std::string_view to_string(Tag t) noexcept;

/// Matrix as carried on the wire: raw words, validated against a field only
/// when a protocol consumes it.
struct MatrixPayload {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::uint64_t> data;

  friend bool operator==(const MatrixPayload&, const MatrixPayload&) = default;
};

using Item = std::variant<std::uint64_t, ff::Vec, ff::Poly, MatrixPayload, BigInt, std::string>;

/// One protocol message. The label names the round; the item layout is
/// fixed by (protocol, label).
struct Message {
  Role role = Role::Prover;
  Tag tag = Tag::Claim;
  std::string label;
  std::vector<Item> items;

  friend bool operator==(const Message&, const Message&) = default;
};

MatrixPayload to_payload(const la::DenseMatrix& M);

// Typed item access for protocol code. Every mismatch in item count, type,
// shape or canonical range throws a Rejection with reason ProtocolViolation.
void expect_items(const Message& m, std::size_t count);
std::uint64_t item_u64(const Message& m, std::size_t i);
ff::Vec item_vec(const Message& m, std::size_t i, const ff::PrimeField& F, std::size_t length);
ff::Poly item_poly(const Message& m, std::size_t i, const ff::PrimeField& F);
la::DenseMatrix item_matrix(const Message& m, std::size_t i, const ff::PrimeField& F, std::size_t rows,
                            std::size_t cols);
BigInt item_bigint(const Message& m, std::size_t i);
std::string item_text(const Message& m, std::size_t i);

}  // namespace vlac::proto
