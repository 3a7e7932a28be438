#include "augview/protocol/http_gateway.hpp"

#include <httplib.h>

#include "augview/augmentation/compose.hpp"
#include "augview/common/error.hpp"
#include "augview/protocol/tcp_server.hpp"

namespace augview::protocol {

namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kBytes = "application/octet-stream";

std::optional<ConnectionId> conn_param(const httplib::Request& req) {
  if (!req.has_param("conn")) return std::nullopt;
  try {
    return std::stoull(req.get_param_value("conn"));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void fail(httplib::Response& res, int status, const std::string& code, const std::string& message) {
  res.status = status;
  res.set_content(json{{"code", code}, {"message", message}}.dump(), kJson);
}

}  // namespace

HttpGateway::HttpGateway(Hub& hub, std::filesystem::path ui_dir)
    : hub_(hub), server_(std::make_unique<httplib::Server>()) {
  auto& s = *server_;
  if (!ui_dir.empty() && !s.set_mount_point("/", ui_dir.string()))
    throw Error(ErrorCode::kConfigError, "ui: '" + ui_dir.string() + "' is not a directory");

  s.Post("/gateway/open", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(json{{"conn", hub_.open(monotonic_ms())}}.dump(), kJson);
  });
  s.Post("/gateway/send", [this](const httplib::Request& req, httplib::Response& res) {
    const auto conn = conn_param(req);
    if (!conn) return fail(res, 400, "BadParams", "missing conn");
    if (!hub_.is_open(*conn)) return fail(res, 404, "BadParams", "unknown conn");
    hub_.deliver(*conn, req.body, monotonic_ms());
    res.status = 204;
  });
  s.Get("/gateway/recv", [this](const httplib::Request& req, httplib::Response& res) {
    const auto conn = conn_param(req);
    if (!conn) return fail(res, 400, "BadParams", "missing conn");
    if (!hub_.is_open(*conn)) return fail(res, 404, "BadParams", "unknown conn");
    res.set_content(hub_.drain(*conn), kBytes);
  });
  s.Post("/gateway/close", [this](const httplib::Request& req, httplib::Response& res) {
    const auto conn = conn_param(req);
    if (!conn) return fail(res, 400, "BadParams", "missing conn");
    hub_.close(*conn, monotonic_ms());
    res.status = 204;
  });
  s.Get("/debug/marks", [this](const httplib::Request&, httplib::Response& res) {
    const auto body = hub_.with_core([](ServerCore& core) {
      json out = json::object();
      for (const auto& spec : core.workspace().layout().visualizations)
        out[spec.id] = vis::to_json(core.workspace().marks(spec.id));
      return out.dump();
    });
    res.set_content(body, kJson);
  });
  s.Get("/debug/scene", [this](const httplib::Request& req, httplib::Response& res) {
    const auto viewer = req.get_param_value("viewer");
    try {
      const auto body = hub_.with_core([&](ServerCore& core) {
        return augmentation::to_json(augmentation::compose_user_scene(core.state(), viewer)).dump();
      });
      res.set_content(body, kJson);
    } catch (const Error& e) {
      fail(res, 404, std::string(to_string(e.code())), e.what());
    }
  });
  s.Get("/debug/state", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(hub_.with_core([](ServerCore& core) { return session::to_json(core.state()).dump(); }), kJson);
  });
}

HttpGateway::~HttpGateway() { stop(); }

std::uint16_t HttpGateway::start(const std::string& host, std::uint16_t port) {
  int bound = port;
  if (port == 0) bound = server_->bind_to_any_port(host);
  else if (!server_->bind_to_port(host, port)) bound = -1;
  if (bound <= 0) throw Error(ErrorCode::kConfigError, "http-port " + std::to_string(port) + ": cannot bind");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  return static_cast<std::uint16_t>(bound);
}

void HttpGateway::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace augview::protocol
