#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "augview/protocol/frame.hpp"
#include "augview/session/session.hpp"

namespace augview::protocol {

using ConnectionId = std::uint64_t;

inline constexpr std::int64_t kPingIntervalMs = 2000;
inline constexpr std::int64_t kClientTimeoutMs = 10000;
inline constexpr std::string_view kServerSender = "server";

struct Outgoing {
  ConnectionId to = 0;
  Envelope envelope;
};

struct ServerOptions {
  bool scene_updates = true;
  std::string dataset_name;
};

// Transport-independent authority: owns the session state, applies events in
// arrival order and produces the messages each connection must receive.
class ServerCore {
 public:
  explicit ServerCore(std::shared_ptr<const session::Workspace> workspace, ServerOptions options = {});

  void connect(ConnectionId conn, std::int64_t now_ms);
  std::vector<Outgoing> receive(ConnectionId conn, const Envelope& env, std::int64_t now_ms);
  // Drops the connection; a bound user leaves the session.
  std::vector<Outgoing> disconnect(ConnectionId conn, std::int64_t now_ms);
  // Pings due connections and times out silent ones (see take_closed).
  std::vector<Outgoing> tick(std::int64_t now_ms);
  std::vector<ConnectionId> take_closed();

  // Applies an event that did not come from a connection (e.g. a replayed log).
  std::vector<Outgoing> inject(const session::InputEvent& event);

  const session::SessionState& state() const { return state_; }
  const session::Workspace& workspace() const { return *state_.workspace; }
  // Applied events, in order, as JSON.
  const std::vector<json>& event_log() const { return log_; }
  bool connected(ConnectionId conn) const { return conns_.contains(conn); }
  // Highest event number consumed (applied or rejected) for a user.
  std::uint64_t acknowledged(const std::string& user) const;
  // Retransmitted events dropped because their number was already consumed.
  std::size_t duplicates_dropped() const { return duplicates_; }
  std::optional<std::string> bound_user(ConnectionId conn) const;

  // Called after every applied event.
  std::function<void(const session::Delta&)> on_applied;

 private:
  struct Connection {
    std::string client_id;
    std::optional<std::string> user;
    bool welcomed = false;
    std::int64_t last_heard = 0;
    std::int64_t last_ping = 0;
  };

  Envelope message(MessageKind kind, json payload) const;
  enum class Numbering { kUnnumbered, kNext, kDuplicate, kGap };

  Envelope snapshot(ConnectionId conn) const;
  Envelope error(const std::string& code, const std::string& message, std::uint64_t event_no = 0) const;
  Numbering consume(const std::string& user, std::uint64_t event_no);
  std::vector<Outgoing> reject_gap(ConnectionId conn, const std::string& user, std::uint64_t event_no) const;
  std::vector<Outgoing> apply(std::optional<ConnectionId> from, const session::InputEvent& event);

  session::SessionState state_;
  ServerOptions options_;
  std::map<ConnectionId, Connection> conns_;
  std::vector<ConnectionId> closed_;
  std::vector<json> log_;
  std::map<std::string, std::uint64_t> consumed_;
  std::size_t duplicates_ = 0;
  std::uint64_t next_client_ = 1;
};

}  // namespace augview::protocol
