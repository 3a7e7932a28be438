#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "augview/common/canonical_json.hpp"

namespace augview::protocol {

inline constexpr std::uint16_t kDefaultPort = 7707;
inline constexpr std::string_view kProtocolVersion = "1";
inline constexpr std::size_t kMaxFrameBytes = 16u * 1024u * 1024u;
inline constexpr std::size_t kHeaderBytes = 4;

enum class MessageKind { kHello, kWelcome, kSnapshot, kEvent, kDelta, kSceneUpdate, kPoseUpdate, kPing, kPong, kError };

std::string_view to_string(MessageKind kind);
MessageKind message_kind_from_string(std::string_view s);  // throws Error(kUnknownKind)

struct Envelope {
  std::uint64_t seq = 0;  // server-assigned; 0 from clients
  std::string sender;
  MessageKind kind = MessageKind::kPing;
  json payload = json::object();

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

// Body: {"kind", "payload", "sender", "seq"} as UTF-8 JSON.
std::string encode_body(const Envelope& env);
// Throws Error(kMalformedJson) or Error(kUnknownKind).
Envelope decode_body(std::string_view body);

// 4-byte big-endian body length followed by the body. Throws Error(kFrameTooLarge).
std::string encode(const Envelope& env);
// Exactly one frame. Throws Error(kIncompleteFrame) on short input,
// Error(kFrameTooLarge), Error(kMalformedJson), Error(kUnknownKind).
Envelope decode(std::string_view frame);

// Reassembles frames from an arbitrary split of the byte stream.
class FrameDecoder {
 public:
  void feed(std::string_view bytes);
  // Next complete frame, if any. A malformed body is consumed before the error
  // is thrown; an oversized length header poisons the stream.
  std::optional<Envelope> next();
  std::size_t buffered() const { return buffer_.size() - offset_; }

 private:
  std::string buffer_;
  std::size_t offset_ = 0;
};

}  // namespace augview::protocol
