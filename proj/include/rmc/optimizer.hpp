#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rmc/config.hpp"
#include "rmc/operators.hpp"
#include "rmc/types.hpp"

namespace rmc {

/// TRM counts fresh objective evaluations made by mutation and redirect;
/// TC counts crossover applications.
struct GenerationCounters {
  std::uint64_t trm = 0;
  std::uint64_t tc = 0;

  std::uint64_t generations() const { return trm + tc; }
  friend bool operator==(const GenerationCounters&, const GenerationCounters&) = default;
};

enum class TerminationReason {
  LeftSearchSpace,
  BoxCollapsed,
  GenerationCap,
  TargetReached,
  PopulationConverged,
};

inline const char* to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::LeftSearchSpace: return "left_search_space";
    case TerminationReason::BoxCollapsed: return "box_collapsed";
    case TerminationReason::GenerationCap: return "generation_cap";
    case TerminationReason::TargetReached: return "target_reached";
    case TerminationReason::PopulationConverged: return "population_converged";
  }
  return "unknown";
}

enum class TraceEvent { Elitism, Mutation, Redirect, Crossover };

inline const char* to_string(TraceEvent event) {
  switch (event) {
    case TraceEvent::Elitism: return "elitism";
    case TraceEvent::Mutation: return "mutation";
    case TraceEvent::Redirect: return "redirect";
    case TraceEvent::Crossover: return "crossover";
  }
  return "unknown";
}

/// Incumbent after an operator changed it (every crossover is recorded).
template <typename Scalar = double>
struct TrajectoryRecord {
  std::uint64_t generation = 0;
  TraceEvent event = TraceEvent::Elitism;
  Vector<Scalar> point;
  Scalar fitness{};

  friend bool operator==(const TrajectoryRecord& a, const TrajectoryRecord& b) {
    return a.generation == b.generation && a.event == b.event && a.point.size() == b.point.size() &&
           a.point == b.point && a.fitness == b.fitness;
  }
};

template <typename Scalar = double>
struct RunResult {
  Point<Scalar> best_point;
  Scalar best_fitness{};
  GenerationCounters counters;
  TerminationReason reason = TerminationReason::GenerationCap;
  /// Fresh objective evaluations, including vertex elitism and crossover.
  std::uint64_t evaluations = 0;
  std::vector<TrajectoryRecord<Scalar>> trajectory;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Passed to the observer once per crossover.
template <typename Scalar>
struct CrossoverStep {
  const SearchBox<Scalar>& box_before;
  const SearchBox<Scalar>& box_after;
  const Point<Scalar>& incumbent_before;
  const Point<Scalar>& incumbent_after;
  const GenerationCounters& counters;
};

struct NullObserver {
  template <typename Step>
  void operator()(const Step&) const {}
};

namespace detail {

/// Per-run memo keyed by exact coordinates. Revisiting a point costs nothing.
template <typename Scalar, typename Objective>
class CachedObjective {
 public:
  explicit CachedObjective(Objective& objective) : objective_(objective) {}

  Scalar operator()(const Vector<Scalar>& x) {
    std::vector<Scalar> key(x.data(), x.data() + x.size());
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const Scalar value = static_cast<Scalar>(objective_(x));
    ++fresh_;
    cache_.emplace(std::move(key), value);
    return value;
  }

  std::uint64_t fresh() const { return fresh_; }

 private:
  Objective& objective_;
  std::map<std::vector<Scalar>, Scalar> cache_;
  std::uint64_t fresh_ = 0;
};

/// Largest sub-box of `outer` having x as a vertex: per coordinate the longer
/// of [lower, x] and [x, upper], ties to the upper side.
template <typename Scalar>
SearchBox<Scalar> largest_box_with_vertex(const Vector<Scalar>& x, const SearchBox<Scalar>& outer) {
  Vector<Scalar> lower(x.size()), upper(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    if (outer.upper()[i] - x[i] >= x[i] - outer.lower()[i]) {
      lower[i] = x[i];
      upper[i] = outer.upper()[i];
    } else {
      lower[i] = outer.lower()[i];
      upper[i] = x[i];
    }
  }
  return SearchBox<Scalar>(std::move(lower), std::move(upper));
}

/// First enumerated direction whose smallest step stays in the working box.
/// Failing that, the sign pattern pointing at the box center (keeping
/// `previous` on coordinates already centered), and failing that `previous`.
template <typename Scalar>
SignVector choose_direction(const Vector<Scalar>& s, const SearchBox<Scalar>& box,
                            std::span<const SignVector> directions, const SignVector& previous,
                            Scalar step) {
  for (const auto& e : directions) {
    if (box.contains(s + step * e.as<Scalar>())) return e;
  }
  const Vector<Scalar> c = box.center();
  Eigen::VectorXi toward(s.size());
  for (Index i = 0; i < s.size(); ++i) {
    toward[i] = s[i] < c[i] ? 1 : (s[i] > c[i] ? -1 : previous[i]);
  }
  SignVector fallback(std::move(toward));
  if (box.contains(s + step * fallback.as<Scalar>())) return fallback;
  return previous;
}

}  // namespace detail

/// Runs RMC on `objective` over `box`. The observer is invoked once per
/// crossover with a CrossoverStep.
template <typename Scalar, typename Objective, typename Observer = NullObserver>
RunResult<Scalar> rmc_optimize(Objective&& objective, const SearchBox<Scalar>& box, Goal goal,
                               const RmcConfig<Scalar>& config, Observer&& observer = {}) {
  config.validate();
  const Index n = box.dimension();

  detail::CachedObjective<Scalar, std::remove_reference_t<Objective>> f(objective);
  const auto directions = enumerate_sign_vectors(n, config.direction_budget, config.seed);
  const std::span<const SignVector> dirs(directions);
  const std::span<const Scalar> betas(config.beta_ladder);
  const Scalar first_alpha = config.alpha_ladder.front();
  const Scalar min_diag =
      config.min_box_diameter.value_or(config.relative_min_box_diameter * box.diagonal());

  RunResult<Scalar> result;
  GenerationCounters& counters = result.counters;
  auto record = [&](TraceEvent event, const Point<Scalar>& p) {
    result.trajectory.push_back({counters.generations(), event, p.coords, *p.fitness});
  };

  Point<Scalar> s = best_vertex(box, f, goal, config.vertex_budget, config.seed);
  record(TraceEvent::Elitism, s);

  SearchBox<Scalar> working = box;
  SignVector d = detail::choose_direction(s.coords, working, dirs, dirs.front(), first_alpha);
  std::optional<Vector<Scalar>> last_anchor;

  while (true) {
    bool moved = false;
    std::uint64_t before = f.fresh();
    for (const Scalar alpha : config.alpha_ladder) {
      Point<Scalar> p = rotational_mutate(s, d, alpha);
      if (!box.contains(p.coords)) break;
      p.fitness = f(p.coords);
      if (std::isfinite(*p.fitness) && is_better(*p.fitness, *s.fitness, goal)) {
        s = std::move(p);
        moved = true;
        break;
      }
    }
    counters.trm += f.fresh() - before;
    if (moved) record(TraceEvent::Mutation, s);

    if (!moved) {
      before = f.fresh();
      auto scan = redirect_scan<Scalar>(s, box, f, goal, betas, dirs, config.redirect_from_origin);
      counters.trm += f.fresh() - before;
      if (scan.improved) {
        s = *std::move(scan.improved);
        moved = true;
        record(TraceEvent::Redirect, s);
      } else if (!box.contains(scan.last_candidate)) {
        result.reason = TerminationReason::LeftSearchSpace;
        break;
      } else if (scan.best_first_rung && (!last_anchor || *last_anchor != s.coords) &&
                 (scan.best_first_rung->coords.array() != s.coords.array()).all()) {
        working = SearchBox<Scalar>::spanned(s.coords, scan.best_first_rung->coords);
        last_anchor = s.coords;
      }
    }
    if (moved || !working.contains(s.coords)) {
      working = detail::largest_box_with_vertex(s.coords, box);
    }

    if (counters.generations() >= config.max_generations) {
      result.reason = TerminationReason::GenerationCap;
      break;
    }

    const Vector<Scalar> mid = working.center();
    if ((mid.array() <= working.lower().array()).any() ||
        (mid.array() >= working.upper().array()).any()) {
      result.reason = TerminationReason::BoxCollapsed;
      break;
    }
    auto cross = crossover_halve(s, working, f, goal);
    ++counters.tc;
    Point<Scalar> previous = s;
    for (auto& q : cross.candidates) {
      if (std::isfinite(*q.fitness) && is_better(*q.fitness, *s.fitness, goal)) s = std::move(q);
    }
    observer(CrossoverStep<Scalar>{working, cross.new_box, previous, s, counters});
    working = std::move(cross.new_box);
    record(TraceEvent::Crossover, s);

    d = detail::choose_direction(s.coords, working, dirs, d, first_alpha);
    if (working.diagonal() < min_diag) {
      result.reason = TerminationReason::BoxCollapsed;
      break;
    }
    if (counters.generations() >= config.max_generations) {
      result.reason = TerminationReason::GenerationCap;
      break;
    }
  }

  result.best_fitness = *s.fitness;
  result.best_point = std::move(s);
  result.evaluations = f.fresh();
  return result;
}

}  // namespace rmc
