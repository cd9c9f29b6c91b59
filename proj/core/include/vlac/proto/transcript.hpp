#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vlac/proto/codec.hpp"
#include "vlac/proto/message.hpp"
#include "vlac/proto/sha256.hpp"

namespace vlac::proto {

enum class Mode : std::uint8_t { Interactive = 0, FiatShamir = 1 };

std::string_view to_string(Mode m) noexcept;

/// Append-only record of one protocol session.
class Transcript {
 public:
  Transcript() = default;
  Transcript(std::string protocol_id, const Digest& instance_digest, Mode mode,
             std::uint64_t field_modulus = 0);

  const std::string& protocol_id() const noexcept { return protocol_id_; }
  const Digest& instance_digest() const noexcept { return instance_digest_; }
  Mode mode() const noexcept { return mode_; }
  /// Modulus of the field the instance lives in; 0 for integer instances.
  std::uint64_t field_modulus() const noexcept { return field_modulus_; }
  const std::vector<Message>& messages() const noexcept { return messages_; }

  void append(Message m) { messages_.push_back(std::move(m)); }

  friend bool operator==(const Transcript&, const Transcript&) = default;

 private:
  std::string protocol_id_;
  Digest instance_digest_{};
  Mode mode_ = Mode::Interactive;
  std::uint64_t field_modulus_ = 0;
  std::vector<Message> messages_;
};

inline constexpr std::uint16_t kTranscriptVersion = 1;

// Record tags of the VLAC container.
enum class RecordTag : std::uint8_t { Header = 1, Message = 2, End = 0xFF };

/// "VLAC", u16 version, then TLV records (u8 tag, u32 length, payload):
/// one Header, the messages in order, one empty End record.
Bytes serialize(const Transcript& t);
/// Throws Error{Malformed}, Error{VersionUnsupported} or Error{TrailingBytes}.
Transcript deserialize(std::span<const std::uint8_t> bytes);

}  // namespace vlac::proto
