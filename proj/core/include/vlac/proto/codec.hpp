#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vlac/proto/message.hpp"

namespace vlac::proto {

using Bytes = std::vector<std::uint8_t>;

/// Little-endian append-only writer.
class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void text16(std::string_view s);

  const Bytes& data() const noexcept { return out_; }
  Bytes take() noexcept { return std::move(out_); }

 private:
  Bytes out_;
};

/// Little-endian reader; every overrun throws Error{Malformed}.
class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  std::span<const std::uint8_t> bytes(std::size_t n);
  std::string text16();

  bool done() const noexcept { return pos_ == in_.size(); }
  std::size_t remaining() const noexcept { return in_.size() - pos_; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

// Item type codes on the wire.
enum class ItemType : std::uint8_t { U64 = 1, Vector = 2, Poly = 3, Matrix = 4, BigInt = 5, Text = 6 };

void encode_item(Writer& w, const Item& item);
Item decode_item(Reader& r);

/// role u8, tag u8, label (u16 length + bytes), item count u32, items.
void encode_message(Writer& w, const Message& m);
Bytes encode_message(const Message& m);
Message decode_message(Reader& r);
/// Whole buffer must be one message; leftovers throw Error{TrailingBytes}.
Message decode_message(std::span<const std::uint8_t> bytes);

}  // namespace vlac::proto
