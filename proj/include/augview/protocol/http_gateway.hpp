#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <thread>

#include "augview/protocol/hub.hpp"

namespace httplib {
class Server;
}

namespace augview::protocol {

// HTTP front for browser clients and debugging:
//   POST /gateway/open              -> {"conn": id}
//   POST /gateway/send?conn=id      body = raw frames, passed through unchanged
//   GET  /gateway/recv?conn=id      raw frames queued for the connection
//   POST /gateway/close?conn=id
//   GET  /debug/marks               mark set of every chart
//   GET  /debug/scene?viewer=user   composed scene of one analyst
//   GET  /debug/state               current session state
// plus static files from `ui_dir` when given.
class HttpGateway {
 public:
  HttpGateway(Hub& hub, std::filesystem::path ui_dir = {});
  ~HttpGateway();
  HttpGateway(const HttpGateway&) = delete;
  HttpGateway& operator=(const HttpGateway&) = delete;

  // Binds (port 0 picks one) and serves on a background thread. Throws Error(kConfigError).
  std::uint16_t start(const std::string& host, std::uint16_t port);
  void stop();

 private:
  Hub& hub_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace augview::protocol
