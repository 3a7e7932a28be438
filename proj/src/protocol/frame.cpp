#include "augview/protocol/frame.hpp"

#include "augview/common/error.hpp"

namespace augview::protocol {

namespace {

constexpr MessageKind kAllKinds[] = {MessageKind::kHello,    MessageKind::kWelcome,     MessageKind::kSnapshot,
                                     MessageKind::kEvent,    MessageKind::kDelta,       MessageKind::kSceneUpdate,
                                     MessageKind::kPoseUpdate, MessageKind::kPing,      MessageKind::kPong,
                                     MessageKind::kError};

std::size_t read_length(std::string_view bytes) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < kHeaderBytes; ++i) n = (n << 8) | static_cast<unsigned char>(bytes[i]);
  return n;
}

}  // namespace

std::string_view to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::kHello: return "Hello";
    case MessageKind::kWelcome: return "Welcome";
    case MessageKind::kSnapshot: return "Snapshot";
    case MessageKind::kEvent: return "Event";
    case MessageKind::kDelta: return "Delta";
    case MessageKind::kSceneUpdate: return "SceneUpdate";
    case MessageKind::kPoseUpdate: return "PoseUpdate";
    case MessageKind::kPing: return "Ping";
    case MessageKind::kPong: return "Pong";
    case MessageKind::kError: return "Error";
  }
  return "Error";
}

MessageKind message_kind_from_string(std::string_view s) {
  for (auto k : kAllKinds)
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::kUnknownKind, "unknown message kind '" + std::string(s) + "'");
}

std::string encode_body(const Envelope& env) {
  return json{{"kind", to_string(env.kind)}, {"payload", env.payload}, {"sender", env.sender}, {"seq", env.seq}}
      .dump();
}

Envelope decode_body(std::string_view body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedJson, e.what());
  }
  const auto kind = j.find("kind");
  const auto seq = j.find("seq");
  const auto sender = j.find("sender");
  if (!j.is_object() || kind == j.end() || !kind->is_string() || seq == j.end() || !seq->is_number_unsigned() ||
      sender == j.end() || !sender->is_string() || !j.contains("payload"))
    throw Error(ErrorCode::kMalformedJson, "envelope needs kind, payload, sender and seq");
  Envelope env;
  env.kind = message_kind_from_string(kind->get<std::string>());
  env.seq = seq->get<std::uint64_t>();
  env.sender = sender->get<std::string>();
  env.payload = j["payload"];
  return env;
}

std::string encode(const Envelope& env) {
  const auto body = encode_body(env);
  if (body.size() > kMaxFrameBytes)
    throw Error(ErrorCode::kFrameTooLarge, "body of " + std::to_string(body.size()) + " bytes");
  std::string frame(kHeaderBytes, '\0');
  const auto n = body.size();
  for (std::size_t i = 0; i < kHeaderBytes; ++i)
    frame[i] = static_cast<char>((n >> (8 * (kHeaderBytes - 1 - i))) & 0xff);
  frame += body;
  return frame;
}

Envelope decode(std::string_view frame) {
  if (frame.size() < kHeaderBytes) throw Error(ErrorCode::kIncompleteFrame, "missing length header");
  const auto n = read_length(frame);
  if (n > kMaxFrameBytes) throw Error(ErrorCode::kFrameTooLarge, "declared length " + std::to_string(n));
  if (frame.size() < kHeaderBytes + n)
    throw Error(ErrorCode::kIncompleteFrame, "expected " + std::to_string(n) + " body bytes, got " +
                                                 std::to_string(frame.size() - kHeaderBytes));
  if (frame.size() > kHeaderBytes + n) throw Error(ErrorCode::kMalformedJson, "trailing bytes after frame");
  return decode_body(frame.substr(kHeaderBytes));
}

void FrameDecoder::feed(std::string_view bytes) {
  if (offset_ > 0 && offset_ == buffer_.size()) {
    buffer_.clear();
    offset_ = 0;
  }
  buffer_.append(bytes);
}

std::optional<Envelope> FrameDecoder::next() {
  const std::string_view pending = std::string_view(buffer_).substr(offset_);
  if (pending.size() < kHeaderBytes) return std::nullopt;
  const auto n = read_length(pending);
  if (n > kMaxFrameBytes) throw Error(ErrorCode::kFrameTooLarge, "declared length " + std::to_string(n));
  if (pending.size() < kHeaderBytes + n) return std::nullopt;
  const auto body = pending.substr(kHeaderBytes, n);
  offset_ += kHeaderBytes + n;
  auto env = decode_body(body);
  if (offset_ > (1u << 16) && offset_ * 2 > buffer_.size()) {
    buffer_.erase(0, offset_);
    offset_ = 0;
  }
  return env;
}

}  // namespace augview::protocol
