#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "augview/augmentation/compose.hpp"
#include "augview/augmentation/params.hpp"
#include "augview/common/error.hpp"
#include "augview/protocol/hub.hpp"
#include "augview/protocol/tcp_server.hpp"
#include "augview/sim/event_log.hpp"
#include "augview/sim/runner.hpp"
#include "augview/sim/scenario.hpp"
#ifdef AUGVIEW_WITH_HTTP
#include "augview/protocol/http_gateway.hpp"
#endif

namespace augview::cli {

namespace {

namespace fs = std::filesystem;

struct ServeArgs {
  std::string dataset;
  std::string layout;
  int port = protocol::kDefaultPort;
  std::string record;
  std::string ui;
  int http_port = -1;
  std::string bind = "0.0.0.0";
};

struct ReplayArgs {
  std::string scenario;
  std::uint64_t seed = 1;
  std::string faults;
  std::string report;
};

struct SnapshotArgs {
  std::string scenario;
  std::size_t at_step = 0;
  std::string viewer;
  std::string out;
  std::uint64_t seed = 1;
};

int serve(const ServeArgs& a, std::ostream& out, std::ostream& err, const std::atomic<bool>& stop) {
  std::shared_ptr<const session::Workspace> ws;
  try {
    ws = session::load_workspace(a.dataset, a.layout);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (a.port < 0 || a.port > 65535) {
    err << "error: port: " << a.port << " is out of range\n";
    return kExitConfig;
  }
  std::ofstream record;
  if (!a.record.empty()) {
    record.open(a.record, std::ios::trunc);
    if (!record) {
      err << "error: record: cannot write '" << a.record << "'\n";
      return kExitConfig;
    }
    record << sim::event_log_header(a.dataset, a.layout).dump() << '\n' << std::flush;
  }
  protocol::ServerCore core(ws);
  core.on_applied = [&](const session::Delta& d) {
    out << sim::event_log_line(d.seq, d.event) << '\n' << std::flush;
    if (record.is_open()) record << d.event.dump() << '\n' << std::flush;
  };
  protocol::Hub hub(core);
  try {
    protocol::TcpServer tcp(hub, static_cast<std::uint16_t>(a.port), a.bind);
#ifdef AUGVIEW_WITH_HTTP
    std::optional<protocol::HttpGateway> gateway;
    if (!a.ui.empty() || a.http_port >= 0) {
      gateway.emplace(hub, a.ui);
      const auto http = gateway->start(a.bind, static_cast<std::uint16_t>(std::max(a.http_port, 0)));
      out << "http gateway on port " << http << '\n';
    }
#else
    if (!a.ui.empty() || a.http_port >= 0) {
      err << "error: ui: built without the HTTP gateway\n";
      return kExitConfig;
    }
#endif
    out << "listening on port " << tcp.port() << " (" << ws->layout().visualizations.size() << " charts, "
        << ws->table().row_count() << " rows)\n"
        << std::flush;
    tcp.run(stop);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

int replay(const ReplayArgs& a, std::ostream& out, std::ostream& err) {
  if (!fs::is_regular_file(a.scenario)) {
    err << "error: scenario: no such file '" << a.scenario << "'\n";
    return kExitConfig;
  }
  try {
    if (sim::is_event_log(a.scenario)) {
      const auto log = sim::replay_event_log(a.scenario);
      for (const auto& line : log.lines) out << line << '\n';
      out << "replayed " << log.lines.size() << " events (" << log.rejected << " rejected), state "
          << canonical_hash(session::to_json(log.state)) << '\n';
      return log.rejected == 0 ? kExitOk : kExitFailed;
    }
    sim::RunOptions options;
    options.seed = a.seed;
    if (!a.faults.empty()) options.faults = sim::parse_faults(a.faults);
    const auto scenario = sim::load_scenario(a.scenario);
    const auto run = sim::run_scenario(scenario, options);
    const auto& r = run.report;
    for (const auto& as : r.at("assertions"))
      out << (as.at("passed").get<bool>() ? "PASS" : "FAIL") << " step " << as.at("step").get<std::size_t>() << ' '
          << as.at("type").get<std::string>() << ": " << as.at("detail").get<std::string>() << '\n';
    out << "scenario " << scenario.name << ": " << r.at("passed").get<std::size_t>() << '/'
        << r.at("assertions").size() << " assertions passed, server " << r.at("server_hash").get<std::string>()
        << (r.at("consistent").get<bool>() ? ", replicas consistent" : ", replicas DIVERGED") << '\n';
    if (!a.report.empty()) {
      std::ofstream f(a.report, std::ios::trunc);
      if (!f) {
        err << "error: report: cannot write '" << a.report << "'\n";
        return kExitConfig;
      }
      f << canonical_dump(r) << '\n';
    }
    return run.all_passed && r.at("consistent").get<bool>() ? kExitOk : kExitFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int snapshot(const SnapshotArgs& a, std::ostream& out, std::ostream& err) {
  if (!fs::is_regular_file(a.scenario)) {
    err << "error: scenario: no such file '" << a.scenario << "'\n";
    return kExitConfig;
  }
  try {
    const auto scenario = sim::load_scenario(a.scenario);
    if (a.at_step > scenario.steps.size()) {
      err << "error: at-step: scenario has " << scenario.steps.size() << " steps\n";
      return kExitConfig;
    }
    bool declared = false;
    for (const auto& c : scenario.clients) declared = declared || c.user == a.viewer;
    sim::RunOptions options;
    options.seed = a.seed;
    options.stop_after = a.at_step;
    const auto run = sim::run_scenario(scenario, options);
    augmentation::ARScene scene;
    if (run.final_state.users.contains(a.viewer)) {
      scene = augmentation::compose_user_scene(run.final_state, a.viewer);
    } else if (declared) {
      scene.viewer = a.viewer;
      scene.seq = run.final_state.seq;
    } else {
      err << "error: viewer: '" << a.viewer << "' is not an analyst of this scenario\n";
      return kExitConfig;
    }
    const auto text = canonical_dump(augmentation::to_json(scene)) + "\n";
    if (a.out.empty() || a.out == "-") {
      out << text;
    } else {
      std::ofstream f(a.out, std::ios::trunc | std::ios::binary);
      if (!f) {
        err << "error: out: cannot write '" << a.out << "'\n";
        return kExitConfig;
      }
      f << text;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const std::atomic<bool>& stop) {
  CLI::App app{"Augmented shared-display analytics: session server and simulator", "augview"};
  app.footer("Augmentation defaults (override in the layout's \"augmentation\" object):\n" +
             augmentation::describe_defaults());
  app.require_subcommand(1);

  ServeArgs sa;
  auto* serve_cmd = app.add_subcommand("serve", "Run the authoritative session server");
  serve_cmd->add_option("--dataset", sa.dataset, "CSV dataset")->required();
  serve_cmd->add_option("--layout", sa.layout, "Layout JSON (display and charts)")->required();
  serve_cmd->add_option("--port", sa.port, "TCP port of the framed stream")->capture_default_str();
  serve_cmd->add_option("--record", sa.record, "Write applied events as newline-delimited JSON");
  serve_cmd->add_option("--ui", sa.ui, "Serve static web companion files from this directory");
  serve_cmd->add_option("--http-port", sa.http_port, "Port of the HTTP gateway (0 = any; enabled by --ui)");
  serve_cmd->add_option("--bind", sa.bind, "IPv4 address to bind")->capture_default_str();

  ReplayArgs ra;
  auto* replay_cmd = app.add_subcommand("replay", "Run a scenario (or a recorded event log) and check its assertions");
  replay_cmd->add_option("--scenario", ra.scenario, "Scenario JSON or recorded event log")->required();
  replay_cmd->add_option("--seed", ra.seed, "Seed of the network simulation")->capture_default_str();
  replay_cmd->add_option("--faults", ra.faults, "Network faults, e.g. loss=0.1,latency=20,jitter=10");
  replay_cmd->add_option("--report", ra.report, "Write the canonical JSON report here");

  SnapshotArgs na;
  auto* snapshot_cmd = app.add_subcommand("snapshot", "Write one analyst's AR scene after a scenario prefix");
  snapshot_cmd->add_option("--scenario", na.scenario, "Scenario JSON")->required();
  snapshot_cmd->add_option("--at-step", na.at_step, "Number of steps to run")->capture_default_str();
  snapshot_cmd->add_option("--viewer", na.viewer, "Analyst whose scene is written")->required();
  snapshot_cmd->add_option("--out", na.out, "Output file ('-' for stdout)");
  snapshot_cmd->add_option("--seed", na.seed, "Seed of the network simulation")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (*serve_cmd) return serve(sa, out, err, stop);
  if (*replay_cmd) return replay(ra, out, err);
  return snapshot(na, out, err);
}

}  // namespace augview::cli
