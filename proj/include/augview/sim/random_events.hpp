#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "augview/session/events.hpp"

namespace augview::sim {

// Draws a plausible event for `user` given the state as a client sees it
// (the JSON form of SessionState). Mostly valid, occasionally rejected by the server.
session::InputEvent random_event(const json& state, const session::Workspace& ws, const std::string& user,
                                 std::mt19937_64& rng);

// Events of `users` applied directly to a fresh state; rejected draws are skipped,
// so every returned event applies cleanly in order.
std::vector<session::InputEvent> random_script(std::shared_ptr<const session::Workspace> ws,
                                               const std::vector<std::string>& users, std::size_t count,
                                               std::uint64_t seed);

}  // namespace augview::sim
