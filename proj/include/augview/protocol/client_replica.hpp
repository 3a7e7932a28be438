#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "augview/protocol/frame.hpp"
#include "augview/session/session.hpp"

namespace augview::protocol {

// Hello is re-sent when no Snapshot arrives within this time.
inline constexpr std::int64_t kResyncRetryMs = 1000;
// Unacknowledged events of the client's own user are re-sent after this time.
inline constexpr std::int64_t kResendMs = 1000;

// Client-side mirror of the session state, kept in step by Deltas and
// resynchronized by Snapshots whenever a gap is detected.
class ClientReplica {
 public:
  // `user`, when set, is the analyst this client speaks for.
  explicit ClientReplica(std::optional<std::string> user = std::nullopt);

  Envelope hello(std::int64_t now_ms);
  // Handles one server message and returns the replies to send.
  std::vector<Envelope> receive(const Envelope& env, std::int64_t now_ms);
  std::vector<Envelope> tick(std::int64_t now_ms);
  // Wraps an event for sending. Events of this client's own user are numbered
  // and kept until the server acknowledges them; before the first Snapshot
  // they are held back and released by it.
  std::vector<Envelope> submit(session::InputEvent event, std::int64_t now_ms = 0);

  const json& state() const { return state_; }
  std::uint64_t seq() const;
  bool has_state() const { return !state_.is_null(); }
  bool waiting() const { return waiting_since_.has_value(); }
  const std::string& client_id() const { return client_id_; }
  const std::optional<std::string>& user() const { return user_; }
  const std::optional<json>& layout() const { return layout_; }
  const std::optional<json>& scene() const { return scene_; }
  // Encoded bodies of the Deltas applied in order.
  const std::vector<std::string>& delta_log() const { return delta_log_; }
  std::size_t duplicates_rejected() const { return duplicates_; }
  std::size_t resyncs() const { return resyncs_; }
  std::vector<json> errors() const { return errors_; }
  // Own events held back or not yet acknowledged.
  std::size_t pending() const { return held_.size() + outbox_.size(); }
  std::size_t resent() const { return resent_; }

 private:
  struct Unacked {
    std::uint64_t event_no = 0;
    Envelope envelope;
  };

  std::vector<Envelope> adopt_snapshot(const json& payload, std::int64_t now_ms);
  Envelope resync(std::int64_t now_ms);
  Envelope number(session::InputEvent event, std::int64_t now_ms);
  void acknowledge(std::uint64_t event_no);
  bool own(const session::InputEvent& event) const;

  std::optional<std::string> user_;
  std::string client_id_;
  json state_;
  std::optional<json> layout_;
  std::optional<json> scene_;
  std::optional<std::int64_t> waiting_since_;
  std::uint64_t event_no_ = 0;
  std::vector<session::InputEvent> held_;
  std::deque<Unacked> outbox_;
  std::int64_t last_send_ = 0;
  std::size_t resent_ = 0;
  std::vector<std::string> delta_log_;
  std::vector<json> errors_;
  std::size_t duplicates_ = 0;
  std::size_t resyncs_ = 0;
};

}  // namespace augview::protocol
