#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rmc/config.hpp"
#include "rmc/types.hpp"

namespace rmc {

/// Strict order: ties are never better.
template <typename Scalar>
bool is_better(Scalar a, Scalar b, Goal goal) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("is_better: non-finite fitness");
  return goal == Goal::Minimize ? a < b : a > b;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline bool enumerates_fully(Index n, std::size_t budget) {
  return n < 64 && (std::uint64_t(1) << n) <= budget;
}

inline std::string sign_key(const SignVector& s) {
  std::string key(static_cast<std::size_t>(s.size()), '+');
  for (Index i = 0; i < s.size(); ++i) {
    if (s[i] < 0) key[static_cast<std::size_t>(i)] = '-';
  }
  return key;
}

/// Appends `count` sign vectors drawn uniformly from those not yet in `taken`.
/// Each coordinate consumes one raw engine bit, so the sequence does not depend
/// on the standard library's distribution implementations.
inline void sample_distinct_signs(Index n, std::size_t count, std::mt19937_64& engine,
                                  std::unordered_set<std::string>& taken,
                                  std::vector<SignVector>& out) {
  std::uint64_t word = 0;
  int bits_left = 0;
  for (std::size_t drawn = 0; drawn < count;) {
    Eigen::VectorXi s(n);
    for (Index i = 0; i < n; ++i) {
      if (bits_left == 0) {
        word = engine();
        bits_left = 64;
      }
      s[i] = (word & 1u) ? -1 : 1;
      word >>= 1;
      --bits_left;
    }
    SignVector candidate(std::move(s));
    if (taken.insert(sign_key(candidate)).second) {
      out.push_back(std::move(candidate));
      ++drawn;
    }
  }
}

}  // namespace detail

/// Sign vectors in search order. With 2^n <= budget every vector is returned,
/// the k-th having coordinate i equal to -1 iff bit i of k is set. Otherwise
/// (+1, ..., +1) comes first, followed by budget - 1 distinct seeded samples.
inline std::vector<SignVector> enumerate_sign_vectors(Index n, std::size_t budget,
                                                      std::uint64_t seed) {
  if (n < 1) throw DomainError("enumerate_sign_vectors: n must be >= 1");
  if (budget < 1) throw DomainError("enumerate_sign_vectors: budget must be >= 1");

  std::vector<SignVector> out;
  if (detail::enumerates_fully(n, budget)) {
    const std::uint64_t total = std::uint64_t(1) << n;
    out.reserve(static_cast<std::size_t>(total));
    for (std::uint64_t k = 0; k < total; ++k) out.push_back(SignVector::from_index(n, k));
    return out;
  }
  out.reserve(budget);
  out.push_back(SignVector::ones(n));
  std::unordered_set<std::string> taken{detail::sign_key(out.front())};
  std::mt19937_64 engine(detail::splitmix64(seed));
  detail::sample_distinct_signs(n, budget - 1, engine, taken, out);
  return out;
}

/// Vertices visited by best_vertex, as sign vectors (+1 = upper bound).
inline std::vector<SignVector> vertex_sequence(Index n, std::size_t vertex_budget,
                                               std::uint64_t seed) {
  if (n < 1) throw DomainError("vertex_sequence: n must be >= 1");
  if (vertex_budget < 1) throw DomainError("vertex_sequence: vertex_budget must be >= 1");
  if (detail::enumerates_fully(n, vertex_budget)) return enumerate_sign_vectors(n, vertex_budget, seed);

  std::vector<SignVector> out;
  out.reserve(vertex_budget);
  out.push_back(SignVector::ones(n));
  std::unordered_set<std::string> taken{detail::sign_key(out.front())};
  if (vertex_budget >= 2) {
    out.push_back(SignVector(-Eigen::VectorXi::Ones(n)));
    taken.insert(detail::sign_key(out.back()));
  }
  if (vertex_budget > out.size()) {
    std::mt19937_64 engine(detail::splitmix64(seed ^ 0x5645525445584553ULL));
    detail::sample_distinct_signs(n, vertex_budget - out.size(), engine, taken, out);
  }
  return out;
}

/// Vertex elitism: the best-fitness corner of `box` among the visited vertices.
/// Vertices whose objective value is not finite are skipped; ties keep the
/// earliest vertex.
template <typename Scalar, typename Objective>
Point<Scalar> best_vertex(const SearchBox<Scalar>& box, Objective&& objective, Goal goal,
                          std::size_t vertex_budget, std::uint64_t seed) {
  std::optional<Point<Scalar>> best;
  for (const auto& signs : vertex_sequence(box.dimension(), vertex_budget, seed)) {
    Vector<Scalar> v = box.vertex(signs);
    const Scalar value = objective(v);
    if (!std::isfinite(value)) continue;
    if (!best || is_better(value, *best->fitness, goal)) best = Point<Scalar>{std::move(v), value};
  }
  if (!best) throw InitializationError("best_vertex: objective is non-finite at every visited vertex");
  return *std::move(best);
}

/// P = S + alpha * direction; every coordinate moves by exactly alpha.
template <typename Scalar>
Point<Scalar> rotational_mutate(const Point<Scalar>& s, const SignVector& direction, Scalar alpha) {
  if (!(alpha > Scalar(0))) throw DomainError("rotational_mutate: alpha must be > 0");
  if (direction.size() != s.dimension()) {
    throw DomainError("rotational_mutate: direction dimension mismatch");
  }
  return Point<Scalar>{s.coords + alpha * direction.as<Scalar>(), std::nullopt};
}

template <typename Scalar>
struct RedirectScan {
  std::optional<Point<Scalar>> improved;
  /// Best feasible candidate on the smallest step, whether or not it improved.
  std::optional<Point<Scalar>> best_first_rung;
  /// The last candidate formed, feasible or not.
  Vector<Scalar> last_candidate;
  std::size_t evaluated = 0;
};

/// Ladder-outer, direction-inner scan for the first improving candidate.
template <typename Scalar, typename Objective>
RedirectScan<Scalar> redirect_scan(const Point<Scalar>& s, const SearchBox<Scalar>& box,
                                   Objective&& objective, Goal goal,
                                   std::span<const Scalar> beta_ladder,
                                   std::span<const SignVector> directions,
                                   bool from_origin = false) {
  if (!s.fitness) throw DomainError("redirect_search: incumbent has no cached fitness");
  if (!box.contains(s.coords)) throw DomainError("redirect_search: incumbent outside box");

  RedirectScan<Scalar> scan;
  const Index n = s.dimension();
  for (std::size_t rung = 0; rung < beta_ladder.size(); ++rung) {
    const Scalar beta = beta_ladder[rung];
    for (const auto& e : directions) {
      if (e.size() != n) throw DomainError("redirect_search: direction dimension mismatch");
      Vector<Scalar> p = from_origin ? Vector<Scalar>(beta * e.as<Scalar>())
                                     : Vector<Scalar>(s.coords + beta * e.as<Scalar>());
      scan.last_candidate = p;
      if (!box.contains(p)) continue;
      const Scalar value = objective(p);
      ++scan.evaluated;
      if (!std::isfinite(value)) continue;
      if (rung == 0 && (!scan.best_first_rung || is_better(value, *scan.best_first_rung->fitness, goal))) {
        scan.best_first_rung = Point<Scalar>{p, value};
      }
      if (is_better(value, *s.fitness, goal)) {
        scan.improved = Point<Scalar>{std::move(p), value};
        return scan;
      }
    }
  }
  return scan;
}

/// First candidate S + beta * e (beta ascending, e in enumeration order) that
/// lies in `box` and improves on S; none if every candidate fails.
template <typename Scalar, typename Objective>
std::optional<Point<Scalar>> redirect_search(const Point<Scalar>& s, const SearchBox<Scalar>& box,
                                             Objective&& objective, Goal goal,
                                             const RmcConfig<Scalar>& config) {
  const auto directions =
      enumerate_sign_vectors(s.dimension(), config.direction_budget, config.seed);
  return redirect_scan<Scalar>(s, box, std::forward<Objective>(objective), goal,
                               std::span<const Scalar>(config.beta_ladder),
                               std::span<const SignVector>(directions), config.redirect_from_origin)
      .improved;
}

template <typename Scalar>
struct CrossoverResult {
  std::vector<Point<Scalar>> candidates;
  SearchBox<Scalar> new_box;
};

/// Corner of `box` nearest to x, per coordinate; exact midpoint ties go to the
/// lower bound.
template <typename Scalar>
Vector<Scalar> nearest_corner(const Vector<Scalar>& x, const SearchBox<Scalar>& box) {
  Vector<Scalar> c(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const Scalar to_lower = x[i] - box.lower()[i];
    const Scalar to_upper = box.upper()[i] - x[i];
    c[i] = to_lower <= to_upper ? box.lower()[i] : box.upper()[i];
  }
  return c;
}

/// Space-halving crossover. Produces the midpoints of the n edges incident to
/// the corner nearest S (all evaluated) and the sub-box obtained by halving
/// every side toward that corner.
template <typename Scalar, typename Objective>
CrossoverResult<Scalar> crossover_halve(const Point<Scalar>& s, const SearchBox<Scalar>& box,
                                        Objective&& objective, Goal /*goal*/) {
  if (!box.contains(s.coords)) throw DomainError("crossover_halve: incumbent outside box");

  const Index n = box.dimension();
  const Vector<Scalar> corner = nearest_corner(s.coords, box);
  const Vector<Scalar> mid = box.center();

  std::vector<Point<Scalar>> candidates;
  candidates.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    Vector<Scalar> q = corner;
    q[i] = mid[i];
    const Scalar value = objective(q);
    candidates.push_back(Point<Scalar>{std::move(q), value});
  }
  return CrossoverResult<Scalar>{std::move(candidates), box.halved_toward(corner)};
}

}  // namespace rmc
