#include "vlac/proto/instance.hpp"

namespace vlac::proto {

InstanceHasher::InstanceHasher(std::string_view protocol_id) {
  w_.text16("VLAC/instance/v1");
  w_.text16(protocol_id);
}

InstanceHasher& InstanceHasher::u64(std::uint64_t v) {
  w_.u8(1);
  w_.u64(v);
  return *this;
}

InstanceHasher& InstanceHasher::text(std::string_view s) {
  w_.u8(2);
  w_.u64(s.size());
  w_.bytes(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  return *this;
}

InstanceHasher& InstanceHasher::bytes(std::span<const std::uint8_t> b) {
  w_.u8(3);
  w_.u64(b.size());
  w_.bytes(b);
  return *this;
}

InstanceHasher& InstanceHasher::sample_set(const ff::SampleSet& s) {
  w_.u8(4);
  w_.u64(s.field().modulus());
  w_.u64(s.size());
  w_.u64(s.offset());
  return *this;
}

InstanceHasher& InstanceHasher::vec(const ff::Vec& v) {
  w_.u8(5);
  w_.u64(v.size());
  for (auto s : v) w_.u64(s.value);
  return *this;
}

InstanceHasher& InstanceHasher::matrix(const la::DenseMatrix& M) {
  w_.u8(6);
  w_.u64(M.field().modulus());
  w_.u64(M.rows());
  w_.u64(M.cols());
  for (auto s : M.data()) w_.u64(s.value);
  return *this;
}

InstanceHasher& InstanceHasher::matrix(const la::SparseMatrix& M) {
  w_.u8(7);
  w_.u64(M.field().modulus());
  w_.u64(M.rows());
  w_.u64(M.cols());
  w_.u64(M.nnz());
  for (const auto& t : M.triplets()) {
    w_.u64(t.row);
    w_.u64(t.col);
    w_.u64(t.value.value);
  }
  return *this;
}

InstanceHasher& InstanceHasher::item(const Item& it) {
  w_.u8(8);
  encode_item(w_, it);
  return *this;
}

}  // namespace vlac::proto
