#include "augview/protocol/client_replica.hpp"

#include <algorithm>

#include "augview/common/error.hpp"

namespace augview::protocol {

ClientReplica::ClientReplica(std::optional<std::string> user) : user_(std::move(user)) {}

std::uint64_t ClientReplica::seq() const { return has_state() ? state_.at("seq").get<std::uint64_t>() : 0; }

Envelope ClientReplica::hello(std::int64_t now_ms) {
  waiting_since_ = now_ms;
  json payload{{"version", kProtocolVersion}};
  if (user_) payload["user"] = *user_;
  return Envelope{0, client_id_, MessageKind::kHello, std::move(payload)};
}

Envelope ClientReplica::resync(std::int64_t now_ms) {
  ++resyncs_;
  return hello(now_ms);
}

bool ClientReplica::own(const session::InputEvent& event) const {
  return user_ && session::user_of(event) == *user_;
}

Envelope ClientReplica::number(session::InputEvent event, std::int64_t now_ms) {
  event.event_no = ++event_no_;
  const auto kind = std::holds_alternative<session::PoseUpdateEvent>(event.body) ? MessageKind::kPoseUpdate
                                                                                 : MessageKind::kEvent;
  Envelope env{0, client_id_, kind, session::to_json(event)};
  if (outbox_.empty()) last_send_ = now_ms;
  outbox_.push_back({event.event_no, env});
  return env;
}

void ClientReplica::acknowledge(std::uint64_t event_no) {
  while (!outbox_.empty() && outbox_.front().event_no <= event_no) outbox_.pop_front();
}

std::vector<Envelope> ClientReplica::adopt_snapshot(const json& payload, std::int64_t now_ms) {
  state_ = payload.at("state");
  waiting_since_.reset();
  std::vector<Envelope> out;
  if (!user_) return out;
  const auto ack = payload.value("ack", std::uint64_t{0});
  acknowledge(ack);
  event_no_ = std::max(event_no_, ack);
  for (auto& e : std::exchange(held_, {})) out.push_back(number(std::move(e), now_ms));
  return out;
}

std::vector<Envelope> ClientReplica::receive(const Envelope& env, std::int64_t now_ms) {
  std::vector<Envelope> out;
  switch (env.kind) {
    case MessageKind::kWelcome:
      client_id_ = env.payload.value("client", std::string{});
      if (env.payload.contains("layout")) layout_ = env.payload["layout"];
      break;
    case MessageKind::kSnapshot: {
      const auto& s = env.payload.at("state");
      if (!has_state() || waiting() || s.at("seq").get<std::uint64_t>() >= seq())
        out = adopt_snapshot(env.payload, now_ms);
      break;
    }
    case MessageKind::kDelta: {
      const auto delta = session::delta_from_json(env.payload);
      if (user_ && delta.event.value("user", std::string{}) == *user_)
        acknowledge(delta.event.value("event_no", std::uint64_t{0}));
      if (!has_state() || waiting()) break;
      if (delta.seq <= seq()) {
        ++duplicates_;
        break;
      }
      if (!session::apply_delta(state_, delta)) {
        out.push_back(resync(now_ms));
        break;
      }
      delta_log_.push_back(encode_body(env));
      break;
    }
    case MessageKind::kSceneUpdate:
      scene_ = env.payload;
      break;
    case MessageKind::kPing:
      out.push_back(Envelope{0, client_id_, MessageKind::kPong, json::object()});
      if (has_state() && !waiting() && env.seq > seq()) out.push_back(resync(now_ms));
      break;
    case MessageKind::kError:
      errors_.push_back(env.payload);
      // A rejected event is consumed; a gap report leaves the outbox for resending.
      if (env.payload.value("code", std::string{}) != to_string(ErrorCode::kStaleEvent))
        acknowledge(env.payload.value("event_no", std::uint64_t{0}));
      break;
    default:
      break;
  }
  return out;
}

std::vector<Envelope> ClientReplica::tick(std::int64_t now_ms) {
  if (waiting_since_ && now_ms - *waiting_since_ >= kResyncRetryMs) return {resync(now_ms)};
  std::vector<Envelope> out;
  if (!outbox_.empty() && now_ms - last_send_ >= kResendMs) {
    last_send_ = now_ms;
    for (const auto& u : outbox_) out.push_back(u.envelope);
    resent_ += outbox_.size();
  }
  return out;
}

std::vector<Envelope> ClientReplica::submit(session::InputEvent event, std::int64_t now_ms) {
  if (!own(event)) {
    const auto kind = std::holds_alternative<session::PoseUpdateEvent>(event.body) ? MessageKind::kPoseUpdate
                                                                                   : MessageKind::kEvent;
    return {Envelope{0, client_id_, kind, session::to_json(event)}};
  }
  if (!has_state()) {
    held_.push_back(std::move(event));
    return {};
  }
  return {number(std::move(event), now_ms)};
}

}  // namespace augview::protocol
