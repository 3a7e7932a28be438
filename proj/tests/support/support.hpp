#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "augview/session/layout.hpp"

namespace augview::testing {

inline std::filesystem::path source_path(const std::string& relative) {
  return std::filesystem::path(AUGVIEW_SOURCE_DIR) / relative;
}

inline const std::shared_ptr<const session::Workspace>& movies() {
  static const auto ws =
      session::load_workspace(source_path("fixtures/movies_200.csv"), source_path("layouts/surface-hub-84.json"));
  return ws;
}

// Seeded draws for the property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(n) - 1)); }
  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace augview::testing
