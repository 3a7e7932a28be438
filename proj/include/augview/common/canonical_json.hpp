#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace augview {

using json = nlohmann::json;

// Canonical form: object keys sorted, no whitespace, floating-point numbers
// printed with 9 significant digits, negative zero folded to zero. Two values
// that serialize identically are considered equal everywhere in the engine
// (state hashes, golden files, consistency checks).
std::string canonical_dump(const json& value);

std::uint64_t fnv1a64(std::string_view bytes);

// Hex digest of the canonical serialization.
std::string canonical_hash(const json& value);

// JSON pointer of the first location where `a` and `b` differ canonically,
// or an empty string when they are equal.
std::string first_difference(const json& a, const json& b);

}  // namespace augview
