#include "augview/sim/network.hpp"

#include <algorithm>
#include <cmath>

#include "augview/common/error.hpp"

namespace augview::sim {

SimNetwork::SimNetwork(std::shared_ptr<const session::Workspace> workspace, const std::vector<ClientSpec>& clients,
                       FaultSpec faults, std::uint64_t seed, bool scene_updates)
    : server_(std::move(workspace), protocol::ServerOptions{scene_updates, {}}), faults_(faults), rng_(seed) {
  loss_threshold_ = static_cast<std::uint64_t>(std::ldexp(faults_.loss, 64));
  endpoints_.reserve(clients.size());
  for (const auto& c : clients) {
    endpoints_.emplace_back(c.id, protocol::ClientReplica(c.user));
  }
  for (std::size_t i = 0; i < endpoints_.size(); ++i) dial(i);
}

void SimNetwork::dial(std::size_t client) {
  auto& ep = endpoints_[client];
  if (ep.conn != 0) endpoint_of_.erase(ep.conn);
  ep.conn = next_conn_++;
  endpoint_of_[ep.conn] = client;
  ep.at_client = {};
  ep.at_server = {};
  server_.connect(ep.conn, now_);
  send(client, true, ep.replica.hello(now_));
}

std::size_t SimNetwork::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < endpoints_.size(); ++i)
    if (endpoints_[i].id == id) return i;
  throw Error(ErrorCode::kScenarioParseError, "unknown client '" + id + "'");
}

const protocol::ClientReplica& SimNetwork::client(const std::string& id) const {
  return endpoints_[index_of(id)].replica;
}

std::vector<std::string> SimNetwork::client_ids() const {
  std::vector<std::string> ids;
  for (const auto& e : endpoints_) ids.push_back(e.id);
  return ids;
}

void SimNetwork::drop_next(const std::string& client, protocol::MessageKind kind) {
  endpoints_[index_of(client)].forced_drops.push_back(kind);
}

void SimNetwork::send(std::size_t client, bool to_server, const protocol::Envelope& env) {
  auto& ep = endpoints_[client];
  ++stats_.frames_sent;
  if (!to_server) {
    const auto forced = std::find(ep.forced_drops.begin(), ep.forced_drops.end(), env.kind);
    if (forced != ep.forced_drops.end()) {
      ep.forced_drops.erase(forced);
      ++stats_.frames_dropped;
      return;
    }
  }
  if (loss_threshold_ > 0 && rng_() < loss_threshold_) {
    ++stats_.frames_dropped;
    return;
  }
  std::int64_t at = now_ + faults_.latency_ms;
  if (faults_.jitter_ms > 0) at += static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(faults_.jitter_ms + 1));
  auto& last = to_server ? ep.last_up : ep.last_down;
  at = std::max(at, last);
  last = at;
  auto bytes = protocol::encode(env);
  stats_.bytes_sent += bytes.size();
  flights_.push({at, serial_++, client, ep.conn, to_server, std::move(bytes)});
}

void SimNetwork::route(const std::vector<protocol::Outgoing>& out) {
  for (const auto& o : out)
    if (const auto it = endpoint_of_.find(o.to); it != endpoint_of_.end()) send(it->second, false, o.envelope);
}

void SimNetwork::deliver(const Flight& f) {
  auto& ep = endpoints_[f.client];
  if (f.conn != ep.conn) return;
  if (f.to_server) {
    ep.at_server.feed(f.bytes);
    while (auto env = ep.at_server.next()) route(server_.receive(ep.conn, *env, now_));
  } else {
    ep.at_client.feed(f.bytes);
    while (auto env = ep.at_client.next())
      for (const auto& reply : ep.replica.receive(*env, now_)) send(f.client, true, reply);
  }
}

void SimNetwork::run_tick() {
  route(server_.tick(now_));
  for (auto conn : server_.take_closed()) {
    if (const auto it = endpoint_of_.find(conn); it != endpoint_of_.end()) {
      ++stats_.reconnects;
      dial(it->second);
    }
  }
  for (std::size_t i = 0; i < endpoints_.size(); ++i)
    for (const auto& env : endpoints_[i].replica.tick(now_)) send(i, true, env);
}

void SimNetwork::advance_to(std::int64_t t_ms) {
  while (true) {
    const std::int64_t next_flight = flights_.empty() ? t_ms + 1 : flights_.top().at;
    if (next_flight <= t_ms && next_flight < next_tick_) {
      const Flight f = flights_.top();
      flights_.pop();
      now_ = std::max(now_, f.at);
      deliver(f);
    } else if (next_tick_ <= t_ms) {
      now_ = std::max(now_, next_tick_);
      next_tick_ += kTickMs;
      run_tick();
    } else {
      break;
    }
  }
  now_ = std::max(now_, t_ms);
}

void SimNetwork::submit(const std::string& client, session::InputEvent event) {
  const auto i = index_of(client);
  for (const auto& env : endpoints_[i].replica.submit(std::move(event), now_))
    send(i, true, env);
}

bool SimNetwork::quiescent() const {
  if (!flights_.empty()) return false;
  const auto seq = server_.state().seq;
  return std::all_of(endpoints_.begin(), endpoints_.end(), [&](const Endpoint& e) {
    return e.replica.has_state() && !e.replica.waiting() && e.replica.pending() == 0 &&
           e.replica.seq() == seq;
  });
}

bool SimNetwork::settle(std::int64_t limit_ms) {
  const auto deadline = now_ + limit_ms;
  while (!quiescent()) {
    if (now_ >= deadline) return false;
    advance_to(std::min(deadline, now_ + kTickMs));
  }
  return true;
}

}  // namespace augview::sim
