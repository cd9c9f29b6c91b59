#include "vlac/proto/message.hpp"

#include <string>

#include "vlac/proto/verdict.hpp"

namespace vlac::proto {

std::string_view to_string(Role r) noexcept { return r == Role::Prover ? "Prover" : "Verifier"; }

std::string_view to_string(Tag t) noexcept {
  switch (t) {
    case Tag::Commit: return "Commit";
    case Tag::Challenge: return "Challenge";
    case Tag::Response: return "Response";
    case Tag::Claim: return "Claim";
  }
  return "Unknown";
}

MatrixPayload to_payload(const la::DenseMatrix& M) {
  MatrixPayload p;
  p.rows = static_cast<std::uint32_t>(M.rows());
  p.cols = static_cast<std::uint32_t>(M.cols());
  p.data.reserve(M.data().size());
  for (auto s : M.data()) p.data.push_back(s.value);
  return p;
}

namespace {

[[noreturn]] void violation(const Message& m, const std::string& what) {
  throw Rejection(RejectReason::ProtocolViolation, "message '" + m.label + "': " + what);
}

template <class T>
const T& get(const Message& m, std::size_t i, const char* type) {
  if (i >= m.items.size()) violation(m, "missing item " + std::to_string(i));
  const T* p = std::get_if<T>(&m.items[i]);
  if (p == nullptr) violation(m, std::string("item ") + std::to_string(i) + " is not a " + type);
  return *p;
}

}  // namespace

void expect_items(const Message& m, std::size_t count) {
  if (m.items.size() != count) {
    violation(m, "expected " + std::to_string(count) + " items, got " + std::to_string(m.items.size()));
  }
}

std::uint64_t item_u64(const Message& m, std::size_t i) { return get<std::uint64_t>(m, i, "u64"); }

ff::Vec item_vec(const Message& m, std::size_t i, const ff::PrimeField& F, std::size_t length) {
  const auto& v = get<ff::Vec>(m, i, "vector");
  if (v.size() != length) violation(m, "vector length " + std::to_string(v.size()));
  for (auto s : v) {
    if (!F.contains(s)) violation(m, "non-canonical scalar");
  }
  return v;
}

ff::Poly item_poly(const Message& m, std::size_t i, const ff::PrimeField& F) {
  const auto& f = get<ff::Poly>(m, i, "polynomial");
  for (auto s : f.coeffs()) {
    if (!F.contains(s)) violation(m, "non-canonical coefficient");
  }
  return f;
}

la::DenseMatrix item_matrix(const Message& m, std::size_t i, const ff::PrimeField& F, std::size_t rows,
                            std::size_t cols) {
  const auto& p = get<MatrixPayload>(m, i, "matrix");
  if (p.rows != rows || p.cols != cols) violation(m, "matrix shape");
  std::vector<ff::Scalar> data;
  data.reserve(p.data.size());
  for (auto w : p.data) {
    if (w >= F.modulus()) violation(m, "non-canonical matrix entry");
    data.emplace_back(w);
  }
  return la::DenseMatrix(F, rows, cols, std::move(data));
}

BigInt item_bigint(const Message& m, std::size_t i) { return get<BigInt>(m, i, "big integer"); }

std::string item_text(const Message& m, std::size_t i) { return get<std::string>(m, i, "text"); }

}  // namespace vlac::proto
