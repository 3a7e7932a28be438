#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "augview/common/canonical_json.hpp"
#include "augview/session/events.hpp"
#include "augview/session/state.hpp"

namespace augview::session {

// Sparse description of one transition. `changes` holds the after-values of
// the top-level state fields that changed and, under "users", the changed
// fields of each user (a full object for a new user, null for a removed one).
struct Delta {
  std::uint64_t base_seq = 0;
  std::uint64_t seq = 0;
  json event;
  json changes = json::object();
};

struct ApplyResult {
  SessionState state;
  Delta delta;
};

// Pure transition. Errors: kUnknownUser, kUserExists, kUnknownVis, kUnknownStroke,
// kUnknownLens, kEmptyStack, kNonNumericAxis, kMalformedEvent, and kStaleEvent
// when event_no does not exceed the user's last applied event (a replay).
// Gaps are detected by the server, which also counts rejected events.
ApplyResult apply_event(const SessionState& state, const InputEvent& event);

Delta diff_states(const json& before, const json& after, const json& event);
// Returns false (and leaves `state` untouched) unless state.seq == delta.base_seq.
bool apply_delta(json& state, const Delta& delta);

json to_json(const Delta& d);
Delta delta_from_json(const json& j);

enum class ItemKind { kVisualization, kStroke, kSelection, kLens, kToggle };
std::string_view to_string(ItemKind k);

struct ItemRef {
  ItemKind kind = ItemKind::kVisualization;
  std::string id;
  std::string layer;  // "public" or the owning user

  friend auto operator<=>(const ItemRef&, const ItemRef&) = default;
};

std::vector<ItemRef> public_items(const SessionState& state);
std::vector<ItemRef> personal_items(const SessionState& state, const UserId& user);
// Public layer plus the viewer's personal layer, sorted. Throws Error(kUnknownUser).
std::vector<ItemRef> visible_items(const SessionState& state, const UserId& viewer);

}  // namespace augview::session
