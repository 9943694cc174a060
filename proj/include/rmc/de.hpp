#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "rmc/operators.hpp"
#include "rmc/optimizer.hpp"
#include "rmc/types.hpp"

namespace rmc {

/// DE/rand/1/bin settings.
template <typename Scalar = double>
struct DeConfig {
  /// Defaults to 10 n when unset.
  std::optional<std::size_t> population_size;
  /// Fixed differential weight; unset means redrawn uniformly in
  /// [weight_low, weight_high] every generation.
  std::optional<Scalar> weight_f;
  Scalar weight_low = Scalar(0.4);
  Scalar weight_high = Scalar(1.0);
  Scalar crossover_cr = Scalar(0.9);
  std::uint64_t max_generations = 10000;
  std::optional<Scalar> target_value;
  Scalar target_tolerance = Scalar(1e-3);
  /// When set, the target test is applied to this measure of the best point
  /// instead of its recorded fitness (used for noisy objectives).
  std::function<Scalar(const Vector<Scalar>&)> target_measure;
  /// Stop once max - min population fitness falls to this relative spread.
  Scalar convergence_tolerance = Scalar(1e-12);
  std::uint64_t seed = 0;

  std::size_t resolved_population(Index n) const {
    return population_size.value_or(static_cast<std::size_t>(10 * n));
  }

  void validate(Index n) const {
    if (resolved_population(n) < 4) throw ConfigError("population_size must be >= 4");
    if (weight_f && !(*weight_f > Scalar(0) && *weight_f <= Scalar(2))) {
      throw ConfigError("weight_f must lie in (0, 2]");
    }
    if (!weight_f && !(weight_low > Scalar(0) && weight_low <= weight_high && weight_high <= Scalar(2))) {
      throw ConfigError("random weight interval must satisfy 0 < low <= high <= 2");
    }
    if (!(crossover_cr >= Scalar(0) && crossover_cr <= Scalar(1))) {
      throw ConfigError("crossover_cr must lie in [0, 1]");
    }
    if (max_generations < 1) throw ConfigError("max_generations must be >= 1");
    if (!(target_tolerance >= Scalar(0))) throw ConfigError("target_tolerance must be >= 0");
    if (!(convergence_tolerance >= Scalar(0))) throw ConfigError("convergence_tolerance must be >= 0");
  }
};

/// Standard DE/rand/1/bin with bound clipping and greedy selection.
/// counters.tc holds the number of generations executed; trm stays 0. The
/// trajectory records the initial best and every improvement of the best.
template <typename Scalar, typename Objective>
RunResult<Scalar> de_optimize(Objective&& objective, const SearchBox<Scalar>& box, Goal goal,
                              const DeConfig<Scalar>& config) {
  const Index n = box.dimension();
  config.validate(n);
  const std::size_t np = config.resolved_population(n);

  std::mt19937_64 engine(detail::splitmix64(config.seed ^ 0x4445ULL));
  std::uniform_real_distribution<Scalar> unit(Scalar(0), Scalar(1));
  std::uniform_int_distribution<std::size_t> pick(0, np - 1);
  std::uniform_int_distribution<Index> pick_dim(0, n - 1);

  RunResult<Scalar> result;
  std::vector<Vector<Scalar>> pop(np, Vector<Scalar>(n));
  std::vector<Scalar> fit(np);
  auto accepts = [&](Scalar trial, Scalar current) {
    if (!std::isfinite(trial)) return !std::isfinite(current);
    if (!std::isfinite(current)) return true;
    return !is_better(current, trial, goal);
  };

  bool any_finite = false;
  for (std::size_t k = 0; k < np; ++k) {
    for (Index i = 0; i < n; ++i) {
      const Scalar t = unit(engine);
      pop[k][i] = box.lower()[i] * (Scalar(1) - t) + box.upper()[i] * t;
    }
    fit[k] = static_cast<Scalar>(objective(pop[k]));
    ++result.evaluations;
    any_finite = any_finite || std::isfinite(fit[k]);
  }
  if (!any_finite) throw InitializationError("de_optimize: objective non-finite on the initial population");

  auto best_index = [&] {
    std::size_t best = np;
    for (std::size_t k = 0; k < np; ++k) {
      if (!std::isfinite(fit[k])) continue;
      if (best == np || is_better(fit[k], fit[best], goal)) best = k;
    }
    return best;
  };
  auto reached = [&](std::size_t b) {
    if (!config.target_value) return false;
    const Scalar measure = config.target_measure ? config.target_measure(pop[b]) : fit[b];
    return std::abs(measure - *config.target_value) <= config.target_tolerance;
  };
  auto converged = [&](std::size_t b) {
    Scalar lo = fit[b], hi = fit[b];
    for (const Scalar v : fit) {
      if (!std::isfinite(v)) return false;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi - lo <= config.convergence_tolerance * std::max(Scalar(1), std::abs(fit[b]));
  };

  std::size_t best = best_index();
  Scalar best_value = fit[best];
  result.trajectory.push_back({0, TraceEvent::Elitism, pop[best], fit[best]});

  Vector<Scalar> trial(n);
  std::vector<Vector<Scalar>> next_pop = pop;
  std::vector<Scalar> next_fit = fit;
  std::uint64_t generation = 0;
  result.reason = TerminationReason::GenerationCap;
  if (reached(best)) {
    result.reason = TerminationReason::TargetReached;
  } else {
    while (generation < config.max_generations) {
      const Scalar weight = config.weight_f
                                ? *config.weight_f
                                : config.weight_low + (config.weight_high - config.weight_low) * unit(engine);
      for (std::size_t k = 0; k < np; ++k) {
        std::size_t r1, r2, r3;
        do r1 = pick(engine); while (r1 == k);
        do r2 = pick(engine); while (r2 == k || r2 == r1);
        do r3 = pick(engine); while (r3 == k || r3 == r1 || r3 == r2);
        const Index forced = pick_dim(engine);
        for (Index i = 0; i < n; ++i) {
          if (i == forced || unit(engine) < config.crossover_cr) {
            const Scalar v = pop[r1][i] + weight * (pop[r2][i] - pop[r3][i]);
            trial[i] = std::clamp(v, box.lower()[i], box.upper()[i]);
          } else {
            trial[i] = pop[k][i];
          }
        }
        const Scalar value = static_cast<Scalar>(objective(trial));
        ++result.evaluations;
        if (accepts(value, fit[k])) {
          next_pop[k] = trial;
          next_fit[k] = value;
        } else {
          next_pop[k] = pop[k];
          next_fit[k] = fit[k];
        }
      }
      pop.swap(next_pop);
      fit.swap(next_fit);
      ++generation;
      result.counters.tc = generation;

      const std::size_t b = best_index();
      if (is_better(fit[b], best_value, goal)) {
        result.trajectory.push_back({generation, TraceEvent::Crossover, pop[b], fit[b]});
      }
      best = b;
      best_value = fit[b];
      if (reached(best)) {
        result.reason = TerminationReason::TargetReached;
        break;
      }
      if (converged(best)) {
        result.reason = TerminationReason::PopulationConverged;
        break;
      }
    }
  }

  result.best_point = Point<Scalar>{pop[best], fit[best]};
  result.best_fitness = fit[best];
  return result;
}

}  // namespace rmc
