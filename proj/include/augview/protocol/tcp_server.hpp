#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <string>

#include "augview/protocol/hub.hpp"

namespace augview::protocol {

// Milliseconds on a monotonic clock.
std::int64_t monotonic_ms();

// Single-threaded poll(2) loop serving the framed stream over TCP.
class TcpServer {
 public:
  // Binds and listens; port 0 picks an ephemeral port. Throws Error(kConfigError).
  TcpServer(Hub& hub, std::uint16_t port, const std::string& bind_address = "0.0.0.0");
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  std::uint16_t port() const { return port_; }
  // Runs until `stop` is set; wakes at least every `poll_ms`.
  void run(const std::atomic<bool>& stop, int poll_ms = 100);

 private:
  void accept_clients(std::int64_t now);
  bool read_client(int fd, ConnectionId conn, std::int64_t now);
  void flush(int fd, ConnectionId conn);
  void drop(int fd, std::int64_t now);

  Hub& hub_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::map<int, ConnectionId> clients_;
  std::map<int, std::string> backlog_;
};

}  // namespace augview::protocol
