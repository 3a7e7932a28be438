#include "augview/protocol/hub.hpp"

#include "augview/common/error.hpp"

namespace augview::protocol {

ConnectionId Hub::open(std::int64_t now_ms) {
  std::lock_guard lock(mutex_);
  const auto id = next_++;
  core_.connect(id, now_ms);
  decoders_[id];
  outboxes_[id];
  return id;
}

void Hub::close(ConnectionId conn, std::int64_t now_ms) {
  std::lock_guard lock(mutex_);
  decoders_.erase(conn);
  outboxes_.erase(conn);
  route(core_.disconnect(conn, now_ms));
}

void Hub::send_to(ConnectionId conn, const Envelope& env) {
  const auto it = outboxes_.find(conn);
  if (it != outboxes_.end()) it->second += encode(env);
}

void Hub::route(std::vector<Outgoing> out) {
  for (const auto& o : out) send_to(o.to, o.envelope);
  for (auto id : core_.take_closed()) {
    decoders_.erase(id);
    closed_.push_back(id);
  }
}

void Hub::deliver(ConnectionId conn, std::string_view bytes, std::int64_t now_ms) {
  std::lock_guard lock(mutex_);
  const auto it = decoders_.find(conn);
  if (it == decoders_.end()) return;
  it->second.feed(bytes);
  while (true) {
    std::optional<Envelope> env;
    try {
      env = it->second.next();
    } catch (const Error& e) {
      const Envelope err{core_.state().seq, std::string(kServerSender), MessageKind::kError,
                         {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}};
      send_to(conn, err);
      if (e.code() == ErrorCode::kFrameTooLarge) {
        decoders_.erase(it);
        closed_.push_back(conn);
        route(core_.disconnect(conn, now_ms));
        return;
      }
      continue;
    }
    if (!env) break;
    route(core_.receive(conn, *env, now_ms));
  }
}

void Hub::tick(std::int64_t now_ms) {
  std::lock_guard lock(mutex_);
  route(core_.tick(now_ms));
}

bool Hub::is_open(ConnectionId conn) {
  std::lock_guard lock(mutex_);
  return outboxes_.count(conn) > 0;
}

std::string Hub::drain(ConnectionId conn) {
  std::lock_guard lock(mutex_);
  const auto it = outboxes_.find(conn);
  return it == outboxes_.end() ? std::string{} : std::exchange(it->second, {});
}

std::vector<ConnectionId> Hub::take_closed() {
  std::lock_guard lock(mutex_);
  return std::exchange(closed_, {});
}

}  // namespace augview::protocol
