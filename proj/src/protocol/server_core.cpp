#include "augview/protocol/server_core.hpp"

#include "augview/augmentation/compose.hpp"
#include "augview/common/error.hpp"

namespace augview::protocol {

ServerCore::ServerCore(std::shared_ptr<const session::Workspace> workspace, ServerOptions options)
    : state_(session::initial_state(std::move(workspace))), options_(std::move(options)) {
  if (options_.dataset_name.empty()) options_.dataset_name = state_.workspace->table().name();
}

void ServerCore::connect(ConnectionId conn, std::int64_t now_ms) {
  Connection c;
  c.client_id = "c" + std::to_string(next_client_++);
  c.last_heard = now_ms;
  c.last_ping = now_ms;
  conns_[conn] = std::move(c);
}

std::optional<std::string> ServerCore::bound_user(ConnectionId conn) const {
  const auto it = conns_.find(conn);
  return it == conns_.end() ? std::nullopt : it->second.user;
}

Envelope ServerCore::message(MessageKind kind, json payload) const {
  return Envelope{state_.seq, std::string(kServerSender), kind, std::move(payload)};
}

std::uint64_t ServerCore::acknowledged(const std::string& user) const {
  const auto it = consumed_.find(user);
  return it == consumed_.end() ? 0 : it->second;
}

// "ack" tells the client which of its numbered events the server has consumed.
Envelope ServerCore::snapshot(ConnectionId conn) const {
  json payload{{"state", session::to_json(state_)}};
  if (const auto user = bound_user(conn)) payload["ack"] = acknowledged(*user);
  return message(MessageKind::kSnapshot, std::move(payload));
}

Envelope ServerCore::error(const std::string& code, const std::string& text, std::uint64_t event_no) const {
  json payload{{"code", code}, {"message", text}};
  if (event_no != 0) payload["event_no"] = event_no;
  return message(MessageKind::kError, std::move(payload));
}

ServerCore::Numbering ServerCore::consume(const std::string& user, std::uint64_t event_no) {
  if (event_no == 0) return Numbering::kUnnumbered;
  auto& last = consumed_[user];
  if (event_no <= last) {
    ++duplicates_;
    return Numbering::kDuplicate;
  }
  if (event_no > last + 1) return Numbering::kGap;
  last = event_no;
  return Numbering::kNext;
}

std::vector<Outgoing> ServerCore::reject_gap(ConnectionId conn, const std::string& user,
                                             std::uint64_t event_no) const {
  const auto text = to_string(ErrorCode::kStaleEvent);
  return {{conn, error(std::string(text),
                       std::string(text) + ": event " + std::to_string(event_no) + " from '" + user + "' after " +
                           std::to_string(acknowledged(user)))},
          {conn, snapshot(conn)}};
}

std::vector<Outgoing> ServerCore::receive(ConnectionId conn, const Envelope& env, std::int64_t now_ms) {
  auto it = conns_.find(conn);
  if (it == conns_.end()) return {};
  auto& c = it->second;
  c.last_heard = now_ms;
  std::vector<Outgoing> out;
  switch (env.kind) {
    case MessageKind::kHello: {
      const auto version = env.payload.value("version", std::string(kProtocolVersion));
      if (version != kProtocolVersion) {
        out.push_back({conn, error("BadParams", "unsupported protocol version '" + version + "'")});
        return out;
      }
      if (env.payload.contains("user") && env.payload["user"].is_string())
        c.user = env.payload["user"].get<std::string>();
      if (!c.welcomed) {
        c.welcomed = true;
        out.push_back({conn, message(MessageKind::kWelcome,
                                     {{"client", c.client_id},
                                      {"version", kProtocolVersion},
                                      {"layout", session::to_json(workspace().layout())},
                                      {"dataset", {{"name", options_.dataset_name},
                                                   {"rows", workspace().table().row_count()}}}})});
      }
      out.push_back({conn, snapshot(conn)});
      return out;
    }
    case MessageKind::kEvent:
    case MessageKind::kPoseUpdate: {
      session::InputEvent event;
      try {
        event = session::event_from_json(env.payload);
      } catch (const Error& e) {
        // A malformed event still consumes its number so later ones are not held up.
        const auto user = env.payload.is_object() ? env.payload.value("user", std::string{}) : std::string{};
        std::uint64_t no = 0;
        if (env.payload.is_object() && env.payload.contains("event_no")) {
          const auto& n = env.payload["event_no"];
          if (n.is_number_integer() && n.get<std::int64_t>() >= 0) no = n.get<std::uint64_t>();
        }
        switch (user.empty() ? Numbering::kUnnumbered : consume(user, no)) {
          case Numbering::kDuplicate: return out;
          case Numbering::kGap: return reject_gap(conn, user, no);
          default: break;
        }
        out.push_back({conn, error(std::string(to_string(e.code())), e.what(), user.empty() ? 0 : no)});
        return out;
      }
      const auto& user = session::user_of(event);
      switch (consume(user, event.event_no)) {
        case Numbering::kDuplicate: return out;
        case Numbering::kGap: return reject_gap(conn, user, event.event_no);
        default: return apply(conn, event);
      }
    }
    case MessageKind::kPong:
      return out;
    default:
      out.push_back({conn, error("UnknownKind", "clients may not send " + std::string(to_string(env.kind)))});
      return out;
  }
}

std::vector<Outgoing> ServerCore::inject(const session::InputEvent& event) { return apply(std::nullopt, event); }

std::vector<Outgoing> ServerCore::apply(std::optional<ConnectionId> from, const session::InputEvent& event) {
  std::vector<Outgoing> out;
  session::ApplyResult result;
  try {
    result = session::apply_event(state_, event);
  } catch (const Error& e) {
    if (from) {
      out.push_back({*from, error(std::string(to_string(e.code())), e.what(), event.event_no)});
      if (e.code() == ErrorCode::kStaleEvent) out.push_back({*from, snapshot(*from)});
    }
    return out;
  }
  state_ = std::move(result.state);
  const auto& delta = result.delta;
  log_.push_back(delta.event);
  if (from) {
    auto& c = conns_.at(*from);
    if (std::holds_alternative<session::JoinEvent>(event.body)) c.user = session::user_of(event);
  }
  if (on_applied) on_applied(delta);

  const auto delta_env = message(MessageKind::kDelta, session::to_json(delta));
  for (const auto& [id, c] : conns_)
    if (c.welcomed) out.push_back({id, delta_env});

  if (options_.scene_updates) {
    const bool public_changed = delta.changes.contains("public_strokes");
    const auto& uid = session::user_of(event);
    std::map<std::string, json> scenes;
    for (const auto& [id, c] : conns_) {
      if (!c.welcomed || !c.user || !state_.users.contains(*c.user)) continue;
      if (!public_changed && *c.user != uid) continue;
      auto [pos, fresh] = scenes.try_emplace(*c.user);
      if (fresh) pos->second = augmentation::to_json(augmentation::compose_user_scene(state_, *c.user));
      out.push_back({id, message(MessageKind::kSceneUpdate, pos->second)});
    }
  }
  return out;
}

std::vector<Outgoing> ServerCore::disconnect(ConnectionId conn, std::int64_t) {
  const auto it = conns_.find(conn);
  if (it == conns_.end()) return {};
  const auto user = it->second.user;
  conns_.erase(it);
  if (!user || !state_.users.contains(*user)) return {};
  for (const auto& [id, c] : conns_)
    if (c.user == user) return {};  // another connection still speaks for the user
  return apply(std::nullopt, session::InputEvent{session::LeaveEvent{*user}});
}

std::vector<Outgoing> ServerCore::tick(std::int64_t now_ms) {
  std::vector<Outgoing> out;
  std::vector<ConnectionId> expired;
  for (auto& [id, c] : conns_) {
    if (now_ms - c.last_heard > kClientTimeoutMs) {
      expired.push_back(id);
      continue;
    }
    if (c.welcomed && now_ms - c.last_ping >= kPingIntervalMs) {
      c.last_ping = now_ms;
      out.push_back({id, message(MessageKind::kPing, json::object())});
    }
  }
  for (auto id : expired) {
    closed_.push_back(id);
    auto more = disconnect(id, now_ms);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

std::vector<ConnectionId> ServerCore::take_closed() { return std::exchange(closed_, {}); }

}  // namespace augview::protocol
