#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <queue>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "augview/protocol/client_replica.hpp"
#include "augview/protocol/frame.hpp"
#include "augview/protocol/server_core.hpp"
#include "augview/sim/scenario.hpp"

namespace augview::sim {

// Granularity of server and client timers on the virtual clock.
inline constexpr std::int64_t kTickMs = 100;

struct NetStats {
  std::uint64_t frames_sent = 0;
  std::uint64_t frames_dropped = 0;
  std::uint64_t bytes_sent = 0;
  // Connections the server timed out; the client then dials again.
  std::uint64_t reconnects = 0;
};

// In-process server plus simulated clients joined by lossy FIFO links on a
// virtual clock. Every message crosses the wire encoding. A connection the
// server times out is re-dialled; frames still in flight on it are lost.
class SimNetwork {
 public:
  SimNetwork(std::shared_ptr<const session::Workspace> workspace, const std::vector<ClientSpec>& clients,
             FaultSpec faults, std::uint64_t seed, bool scene_updates = true);

  std::int64_t now() const { return now_; }
  // Sends an event from a client; a missing "user" is filled with the client's user.
  void submit(const std::string& client, session::InputEvent event);
  void advance_to(std::int64_t t_ms);
  bool quiescent() const;
  // Runs the clock until quiescent or `limit_ms` of virtual time passed.
  bool settle(std::int64_t limit_ms = 120000);
  // Discards the next server frame of `kind` headed to `client`, regardless of the loss rate.
  void drop_next(const std::string& client, protocol::MessageKind kind);

  protocol::ServerCore& server() { return server_; }
  const protocol::ServerCore& server() const { return server_; }
  const protocol::ClientReplica& client(const std::string& id) const;
  std::vector<std::string> client_ids() const;
  const NetStats& stats() const { return stats_; }

 private:
  struct Flight {
    std::int64_t at = 0;
    std::uint64_t serial = 0;
    std::size_t client = 0;
    protocol::ConnectionId conn = 0;
    bool to_server = false;
    std::string bytes;

    bool operator>(const Flight& o) const { return at != o.at ? at > o.at : serial > o.serial; }
  };
  struct Endpoint {
    Endpoint(std::string id_, protocol::ClientReplica replica_) : id(std::move(id_)), replica(std::move(replica_)) {}

    std::string id;
    protocol::ClientReplica replica;
    protocol::ConnectionId conn = 0;
    protocol::FrameDecoder at_client;
    protocol::FrameDecoder at_server;
    std::int64_t last_up = 0;
    std::int64_t last_down = 0;
    std::vector<protocol::MessageKind> forced_drops;
  };

  void send(std::size_t client, bool to_server, const protocol::Envelope& env);
  void route(const std::vector<protocol::Outgoing>& out);
  void deliver(const Flight& f);
  void run_tick();
  void dial(std::size_t client);
  std::size_t index_of(const std::string& id) const;

  protocol::ServerCore server_;
  std::vector<Endpoint> endpoints_;
  FaultSpec faults_;
  std::mt19937_64 rng_;
  std::uint64_t loss_threshold_ = 0;
  std::priority_queue<Flight, std::vector<Flight>, std::greater<>> flights_;
  std::uint64_t serial_ = 0;
  protocol::ConnectionId next_conn_ = 1;
  std::map<protocol::ConnectionId, std::size_t> endpoint_of_;
  std::int64_t now_ = 0;
  std::int64_t next_tick_ = kTickMs;
  NetStats stats_;
};

}  // namespace augview::sim
