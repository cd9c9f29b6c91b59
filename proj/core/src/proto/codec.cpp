#include "vlac/proto/codec.hpp"

#include <limits>
#include <string>

#include "vlac/error.hpp"

namespace vlac::proto {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::Malformed, what); }

std::uint32_t checked_u32(std::size_t n) {
  if (n > std::numeric_limits<std::uint32_t>::max()) malformed("length exceeds u32");
  return static_cast<std::uint32_t>(n);
}

}  // namespace

void Writer::u16(std::uint16_t v) {
  for (int i = 0; i < 2; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void Writer::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void Writer::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void Writer::text16(std::string_view s) {
  if (s.size() > std::numeric_limits<std::uint16_t>::max()) malformed("label too long");
  u16(static_cast<std::uint16_t>(s.size()));
  bytes(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

std::span<const std::uint8_t> Reader::bytes(std::size_t n) {
  if (n > remaining()) malformed("truncated input");
  auto s = in_.subspan(pos_, n);
  pos_ += n;
  return s;
}
std::uint8_t Reader::u8() { return bytes(1)[0]; }
std::uint16_t Reader::u16() {
  auto b = bytes(2);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}
std::uint32_t Reader::u32() {
  auto b = bytes(4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}
std::uint64_t Reader::u64() {
  auto b = bytes(8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}
std::string Reader::text16() {
  const auto n = u16();
  auto b = bytes(n);
  return std::string(b.begin(), b.end());
}

void encode_item(Writer& w, const Item& item) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::uint64_t>) {
          w.u8(static_cast<std::uint8_t>(ItemType::U64));
          w.u64(v);
        } else if constexpr (std::is_same_v<T, ff::Vec>) {
          w.u8(static_cast<std::uint8_t>(ItemType::Vector));
          w.u32(checked_u32(v.size()));
          for (auto s : v) w.u64(s.value);
        } else if constexpr (std::is_same_v<T, ff::Poly>) {
          w.u8(static_cast<std::uint8_t>(ItemType::Poly));
          w.u32(checked_u32(v.coeffs().size()));
          for (auto s : v.coeffs()) w.u64(s.value);
        } else if constexpr (std::is_same_v<T, MatrixPayload>) {
          w.u8(static_cast<std::uint8_t>(ItemType::Matrix));
          w.u32(v.rows);
          w.u32(v.cols);
          for (auto x : v.data) w.u64(x);
        } else if constexpr (std::is_same_v<T, BigInt>) {
          w.u8(static_cast<std::uint8_t>(ItemType::BigInt));
          w.u8(v < 0 ? 1 : 0);
          std::vector<std::uint8_t> mag;
          if (v != 0) {
            BigInt a = abs(v);
            export_bits(a, std::back_inserter(mag), 8, false);
          }
          w.u32(checked_u32(mag.size()));
          w.bytes(mag);
        } else {
          w.u8(static_cast<std::uint8_t>(ItemType::Text));
          w.u32(checked_u32(v.size()));
          w.bytes(std::span(reinterpret_cast<const std::uint8_t*>(v.data()), v.size()));
        }
      },
      item);
}

Item decode_item(Reader& r) {
  const auto type = r.u8();
  switch (static_cast<ItemType>(type)) {
    case ItemType::U64: return r.u64();
    case ItemType::Vector: {
      const auto n = r.u32();
      if (n > r.remaining() / 8) malformed("vector length exceeds input");
      ff::Vec v(n);
      for (auto& s : v) s = ff::Scalar{r.u64()};
      return v;
    }
    case ItemType::Poly: {
      const auto n = r.u32();
      if (n > r.remaining() / 8) malformed("polynomial length exceeds input");
      std::vector<ff::Scalar> c(n);
      for (auto& s : c) s = ff::Scalar{r.u64()};
      if (n > 0 && c.back().is_zero()) malformed("polynomial with zero leading coefficient");
      return ff::Poly(std::move(c));
    }
    case ItemType::Matrix: {
      MatrixPayload p;
      p.rows = r.u32();
      p.cols = r.u32();
      const auto n = static_cast<std::uint64_t>(p.rows) * p.cols;
      if (n > r.remaining() / 8) malformed("matrix size exceeds input");
      p.data.resize(n);
      for (auto& x : p.data) x = r.u64();
      return p;
    }
    case ItemType::BigInt: {
      const auto sign = r.u8();
      if (sign > 1) malformed("big integer sign byte");
      const auto n = r.u32();
      auto mag = r.bytes(n);
      if (n > 0 && mag.back() == 0) malformed("big integer with leading zero byte");
      if (n == 0 && sign == 1) malformed("negative zero");
      BigInt v = 0;
      if (n > 0) import_bits(v, mag.begin(), mag.end(), 8, false);
      return sign ? BigInt(-v) : v;
    }
    case ItemType::Text: {
      const auto n = r.u32();
      auto b = r.bytes(n);
      return std::string(b.begin(), b.end());
    }
  }
  malformed("unknown item type " + std::to_string(type));
}

void encode_message(Writer& w, const Message& m) {
  w.u8(static_cast<std::uint8_t>(m.role));
  w.u8(static_cast<std::uint8_t>(m.tag));
  w.text16(m.label);
  w.u32(checked_u32(m.items.size()));
  for (const auto& it : m.items) encode_item(w, it);
}

Bytes encode_message(const Message& m) {
  Writer w;
  encode_message(w, m);
  return w.take();
}

Message decode_message(Reader& r) {
  Message m;
  const auto role = r.u8();
  if (role > 1) malformed("role byte");
  m.role = static_cast<Role>(role);
  const auto tag = r.u8();
  if (tag > 3) malformed("tag byte");
  m.tag = static_cast<Tag>(tag);
  m.label = r.text16();
  const auto count = r.u32();
  // each item needs at least its type byte
  if (count > r.remaining()) malformed("item count exceeds input");
  m.items.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) m.items.push_back(decode_item(r));
  return m;
}

Message decode_message(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  Message m = decode_message(r);
  if (!r.done()) throw Error(ErrorCode::TrailingBytes, "bytes after message");
  return m;
}

}  // namespace vlac::proto
