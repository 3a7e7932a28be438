#include "augview/protocol/tcp_server.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <vector>

#include "augview/common/error.hpp"

namespace augview::protocol {

namespace {

void set_nonblocking(int fd) { ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL, 0) | O_NONBLOCK); }

}  // namespace

std::int64_t monotonic_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

TcpServer::TcpServer(Hub& hub, std::uint16_t port, const std::string& bind_address) : hub_(hub) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw Error(ErrorCode::kConfigError, std::string("socket: ") + std::strerror(errno));
  int yes = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, bind_address.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    throw Error(ErrorCode::kConfigError, "bind address '" + bind_address + "' is not an IPv4 address");
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(listen_fd_, 16) < 0) {
    const std::string why = std::strerror(errno);
    ::close(listen_fd_);
    throw Error(ErrorCode::kConfigError, "port " + std::to_string(port) + ": " + why);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  set_nonblocking(listen_fd_);
}

TcpServer::~TcpServer() {
  for (const auto& [fd, conn] : clients_) ::close(fd);
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void TcpServer::accept_clients(std::int64_t now) {
  while (true) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) return;
    set_nonblocking(fd);
    clients_[fd] = hub_.open(now);
  }
}

bool TcpServer::read_client(int fd, ConnectionId conn, std::int64_t now) {
  char buf[65536];
  while (true) {
    const auto n = ::recv(fd, buf, sizeof buf, 0);
    if (n > 0) {
      hub_.deliver(conn, std::string_view(buf, static_cast<std::size_t>(n)), now);
      continue;
    }
    if (n == 0) return false;
    return errno == EAGAIN || errno == EWOULDBLOCK || errno == EINTR;
  }
}

void TcpServer::flush(int fd, ConnectionId conn) {
  auto& pending = backlog_[fd];
  pending += hub_.drain(conn);
  while (!pending.empty()) {
    const auto n = ::send(fd, pending.data(), pending.size(), MSG_NOSIGNAL);
    if (n <= 0) break;
    pending.erase(0, static_cast<std::size_t>(n));
  }
}

void TcpServer::drop(int fd, std::int64_t now) {
  const auto it = clients_.find(fd);
  if (it == clients_.end()) return;
  hub_.close(it->second, now);
  clients_.erase(it);
  backlog_.erase(fd);
  ::close(fd);
}

void TcpServer::run(const std::atomic<bool>& stop, int poll_ms) {
  while (!stop.load()) {
    std::vector<pollfd> fds{{listen_fd_, POLLIN, 0}};
    for (const auto& [fd, conn] : clients_) {
      const bool pending = backlog_.contains(fd) && !backlog_[fd].empty();
      fds.push_back({fd, static_cast<short>(POLLIN | (pending ? POLLOUT : 0)), 0});
    }
    ::poll(fds.data(), fds.size(), poll_ms);
    const auto now = monotonic_ms();
    if (fds[0].revents & POLLIN) accept_clients(now);
    std::vector<int> gone;
    for (std::size_t i = 1; i < fds.size(); ++i) {
      const auto& p = fds[i];
      if (p.revents & (POLLIN | POLLHUP | POLLERR))
        if (!read_client(p.fd, clients_.at(p.fd), now)) gone.push_back(p.fd);
    }
    hub_.tick(now);
    for (const auto& [fd, conn] : clients_) flush(fd, conn);
    for (auto conn : hub_.take_closed())
      for (const auto& [fd, c] : clients_)
        if (c == conn) gone.push_back(fd);
    for (int fd : gone) drop(fd, now);
  }
}

}  // namespace augview::protocol
