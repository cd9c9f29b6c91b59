#include "vlac/proto/transcript.hpp"

#include <algorithm>
#include <string>

#include "vlac/error.hpp"

namespace vlac::proto {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'V', 'L', 'A', 'C'};

void record(Writer& w, RecordTag tag, const Bytes& payload) {
  w.u8(static_cast<std::uint8_t>(tag));
  w.u32(static_cast<std::uint32_t>(payload.size()));
  w.bytes(payload);
}

}  // namespace

std::string_view to_string(Mode m) noexcept {
  return m == Mode::FiatShamir ? "fiat-shamir" : "interactive";
}

Transcript::Transcript(std::string protocol_id, const Digest& instance_digest, Mode mode,
                       std::uint64_t field_modulus)
    : protocol_id_(std::move(protocol_id)),
      instance_digest_(instance_digest),
      mode_(mode),
      field_modulus_(field_modulus) {}

Bytes serialize(const Transcript& t) {
  Writer w;
  w.bytes(kMagic);
  w.u16(kTranscriptVersion);

  Writer header;
  header.u8(static_cast<std::uint8_t>(t.mode()));
  header.u64(t.field_modulus());
  header.bytes(t.instance_digest());
  header.text16(t.protocol_id());
  record(w, RecordTag::Header, header.data());

  for (const auto& m : t.messages()) record(w, RecordTag::Message, encode_message(m));
  record(w, RecordTag::End, {});
  return w.take();
}

Transcript deserialize(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  auto magic = r.bytes(4);
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
    throw Error(ErrorCode::Malformed, "bad magic");
  }
  const auto version = r.u16();
  if (version != kTranscriptVersion) {
    throw Error(ErrorCode::VersionUnsupported, "transcript version " + std::to_string(version));
  }

  auto next_record = [&](RecordTag& tag) {
    const auto t = r.u8();
    const auto len = r.u32();
    if (t != static_cast<std::uint8_t>(RecordTag::Header) && t != static_cast<std::uint8_t>(RecordTag::Message) &&
        t != static_cast<std::uint8_t>(RecordTag::End)) {
      throw Error(ErrorCode::Malformed, "unknown record tag " + std::to_string(t));
    }
    tag = static_cast<RecordTag>(t);
    return r.bytes(len);
  };

  RecordTag tag{};
  auto payload = next_record(tag);
  if (tag != RecordTag::Header) throw Error(ErrorCode::Malformed, "first record is not a header");
  Reader h(payload);
  const auto mode = h.u8();
  if (mode > 1) throw Error(ErrorCode::Malformed, "mode byte");
  const auto modulus = h.u64();
  Digest digest{};
  auto d = h.bytes(digest.size());
  std::copy(d.begin(), d.end(), digest.begin());
  std::string id = h.text16();
  if (!h.done()) throw Error(ErrorCode::TrailingBytes, "bytes after header fields");
  Transcript t(std::move(id), digest, static_cast<Mode>(mode), modulus);

  for (;;) {
    payload = next_record(tag);
    if (tag == RecordTag::End) {
      if (!payload.empty()) throw Error(ErrorCode::Malformed, "non-empty end record");
      break;
    }
    if (tag != RecordTag::Message) throw Error(ErrorCode::Malformed, "duplicate header");
    t.append(decode_message(payload));
  }
  if (!r.done()) throw Error(ErrorCode::TrailingBytes, "bytes after end record");
  return t;
}

}  // namespace vlac::proto
