#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "augview/protocol/frame.hpp"
#include "augview/protocol/server_core.hpp"

namespace augview::protocol {

// Thread-safe byte-level front of a ServerCore shared by every transport:
// inbound bytes are reassembled into frames, outbound frames queue per connection.
class Hub {
 public:
  explicit Hub(ServerCore& core) : core_(core) {}

  ConnectionId open(std::int64_t now_ms);
  void close(ConnectionId conn, std::int64_t now_ms);
  void deliver(ConnectionId conn, std::string_view bytes, std::int64_t now_ms);
  void tick(std::int64_t now_ms);
  bool is_open(ConnectionId conn);

  // Pending outbound bytes of one connection (cleared).
  std::string drain(ConnectionId conn);
  // Connections the server dropped since the last call.
  std::vector<ConnectionId> take_closed();

  template <class F>
  auto with_core(F&& f) {
    std::lock_guard lock(mutex_);
    return f(core_);
  }

 private:
  void route(std::vector<Outgoing> out);
  void send_to(ConnectionId conn, const Envelope& env);

  ServerCore& core_;
  std::mutex mutex_;
  std::map<ConnectionId, FrameDecoder> decoders_;
  std::map<ConnectionId, std::string> outboxes_;
  std::vector<ConnectionId> closed_;
  ConnectionId next_ = 1;
};

}  // namespace augview::protocol
