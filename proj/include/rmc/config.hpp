#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rmc/types.hpp"

namespace rmc {

/// {0.1, 0.2, ..., 1.0}
template <typename Scalar = double>
std::vector<Scalar> default_alpha_ladder() {
  std::vector<Scalar> ladder;
  for (int k = 1; k <= 10; ++k) ladder.push_back(Scalar(k) / Scalar(10));
  return ladder;
}

/// {0.10, 0.25, ..., 1.00}, stride 0.15.
template <typename Scalar = double>
std::vector<Scalar> default_beta_ladder() {
  std::vector<Scalar> ladder;
  for (int k = 0; k <= 6; ++k) ladder.push_back(Scalar(10 + 15 * k) / Scalar(100));
  return ladder;
}

namespace detail {

inline std::size_t capped_power_of_two(Index n, std::size_t cap) {
  if (n >= 63) return cap;
  const auto full = std::uint64_t(1) << n;
  return full < cap ? static_cast<std::size_t>(full) : cap;
}

template <typename Scalar>
void check_ladder(const std::vector<Scalar>& ladder, const char* name) {
  if (ladder.empty()) throw ConfigError(std::string(name) + " must not be empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!std::isfinite(ladder[i]) || !(ladder[i] > Scalar(0))) {
      throw ConfigError(std::string(name) + " entries must be finite and > 0");
    }
    if (i > 0 && !(ladder[i - 1] < ladder[i])) {
      throw ConfigError(std::string(name) + " must be strictly ascending");
    }
  }
}

}  // namespace detail

template <typename Scalar = double>
struct RmcConfig {
  std::vector<Scalar> alpha_ladder = default_alpha_ladder<Scalar>();
  std::vector<Scalar> beta_ladder = default_beta_ladder<Scalar>();
  std::size_t direction_budget = 64;
  std::size_t vertex_budget = 4096;
  std::uint64_t max_generations = 100000;
  /// Absolute termination threshold on the working box diagonal. When unset,
  /// relative_min_box_diameter times the initial diagonal is used.
  std::optional<Scalar> min_box_diameter;
  Scalar relative_min_box_diameter = Scalar(1e-9);
  std::uint64_t seed = 0;
  /// Form redirect candidates as beta * e instead of S + beta * e. Off by default.
  bool redirect_from_origin = false;

  static RmcConfig defaults(Index n) {
    RmcConfig config;
    config.direction_budget = detail::capped_power_of_two(n, 64);
    config.vertex_budget = detail::capped_power_of_two(n, 4096);
    return config;
  }

  void validate() const {
    detail::check_ladder(alpha_ladder, "alpha_ladder");
    detail::check_ladder(beta_ladder, "beta_ladder");
    if (direction_budget < 1) throw ConfigError("direction_budget must be >= 1");
    if (vertex_budget < 1) throw ConfigError("vertex_budget must be >= 1");
    if (max_generations < 1) throw ConfigError("max_generations must be >= 1");
    if (min_box_diameter && !(*min_box_diameter >= Scalar(0))) {
      throw ConfigError("min_box_diameter must be >= 0");
    }
    if (!(relative_min_box_diameter >= Scalar(0))) {
      throw ConfigError("relative_min_box_diameter must be >= 0");
    }
  }
};

}  // namespace rmc
