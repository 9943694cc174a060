// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [--only <criterion>]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "rmc/harness.hpp"
#include "rmc/objectives.hpp"
#include "rmc/optimizer.hpp"

using namespace rmc;
using Vec = Vector<double>;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

struct Criterion {
  const char* name;
  std::function<Verdict()> check;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Independent reference formulas.
double ref_foxholes(double x1, double x2) {
  const double grid[5] = {-32, -16, 0, 16, 32};
  double sum = 0;
  for (int j = 1; j <= 25; ++j) {
    sum += 1.0 / (j + std::pow(x1 - grid[(j - 1) % 5], 6) + std::pow(x2 - grid[(j - 1) / 5], 6));
  }
  return 1.0 / (0.002 + sum);
}

double ref_quartic(const Vec& x) {
  double s = 0;
  for (Index i = 0; i < x.size(); ++i) s += double(i + 1) * std::pow(x[i], 4);
  return s;
}

std::vector<ReplicateResult> rmc_batch(ObjectiveId id, std::size_t seeds) {
  auto spec = ExperimentSpec::defaults(objective_spec(id), Algorithm::RMC);
  spec.replicates = seeds;
  spec.base_seed = 0;
  return run_experiment(spec);
}

std::size_t failures(const std::vector<ReplicateResult>& runs) {
  std::size_t n = 0;
  for (const auto& r : runs) n += r.ok() ? 0 : 1;
  return n;
}

Verdict recovery(ObjectiveId id, const Vec& target, double value_tol, double point_tol,
                 double min_fraction, double time_limit, std::size_t seeds = 50) {
  const auto t0 = Clock::now();
  const auto runs = rmc_batch(id, seeds);
  const double elapsed = seconds_since(t0);
  const auto spec = objective_spec(id);
  const double target_value = eval(spec, target);
  std::size_t good = 0;
  double worst_value = 0, worst_dist = 0;
  for (const auto& r : runs) {
    if (!r.ok()) continue;
    const double err = std::abs(r.result->best_fitness - target_value);
    const double dist = (r.result->best_point.coords - target).norm();
    worst_value = std::max(worst_value, err);
    worst_dist = std::max(worst_dist, dist);
    if (err <= value_tol && dist <= point_tol) ++good;
  }
  const double fraction = double(good) / double(seeds);
  const bool pass = failures(runs) == 0 && fraction >= min_fraction && elapsed < time_limit;
  return {pass, fmt("%.0f%% of runs within tolerance (need %.0f%%), worst |f-f*|=%.3g, worst dist=%.3g",
                    100 * fraction, 100 * min_fraction, worst_value, worst_dist) +
                    fmt(", %.2fs (limit %.0fs)", elapsed, time_limit)};
}

Verdict f1_optimum() {
  return recovery(ObjectiveId::F1, Vec::Zero(3), 1e-3, 0.05, 1.0, 5.0);
}

Verdict f2_optimum() {
  return recovery(ObjectiveId::F2, Vec::Ones(2), 1e-3, 0.05, 1.0, 5.0);
}

Verdict f3_optimum() {
  const auto t0 = Clock::now();
  const auto runs = rmc_batch(ObjectiveId::F3, 50);
  const double elapsed = seconds_since(t0);
  std::size_t exact = 0;
  for (const auto& r : runs) {
    if (!r.ok()) continue;
    double v = 30;
    for (Index i = 0; i < 5; ++i) v += std::floor(r.result->best_point.coords[i]);
    if (r.result->best_fitness == 0.0 && v == 0.0) ++exact;
  }
  return {exact == 50 && elapsed < 5.0, fmt("%.0f/50 runs exactly 0, %.2fs", double(exact), elapsed)};
}

Verdict goldstein_price() {
  const auto t0 = Clock::now();
  const auto runs = rmc_batch(ObjectiveId::GoldsteinPrice, 50);
  const double elapsed = seconds_since(t0);
  std::size_t good = 0;
  for (const auto& r : runs) {
    if (r.ok() && std::abs(r.result->best_fitness - 3.0) <= 0.03) ++good;
  }
  return {good >= 45 && elapsed < 10.0, fmt("%.0f/50 runs within 1%% of 3 (need 45), %.2fs", double(good), elapsed)};
}

Verdict f5_foxholes() {
  const double oracle = ref_foxholes(-32, -32);
  const auto t0 = Clock::now();
  const auto runs = rmc_batch(ObjectiveId::F5, 50);
  const double elapsed = seconds_since(t0);
  const Vec hole = Vec::Constant(2, -32);
  std::size_t good = 0;
  for (const auto& r : runs) {
    if (!r.ok()) continue;
    if ((r.result->best_point.coords - hole).norm() <= 0.5 && std::abs(r.result->best_fitness - oracle) <= 1e-3) ++good;
  }
  return {good >= 45, fmt("%.0f/50 runs near (-32,-32) with |f-%.6f|<=1e-3 (need 45), %.2fs", double(good), oracle, elapsed)};
}

Verdict f4_noisy_quartic() {
  const auto t0 = Clock::now();
  const auto runs = rmc_batch(ObjectiveId::F4, 20);
  const double elapsed = seconds_since(t0);
  std::size_t good = 0;
  double worst = 0, best = INFINITY;
  for (const auto& r : runs) {
    if (!r.ok()) continue;
    const double q = ref_quartic(r.result->best_point.coords);
    worst = std::max(worst, q);
    best = std::min(best, q);
    if (q <= 0.1) ++good;
  }
  return {good == 20 && elapsed < 30.0,
          fmt("%.0f/20 runs with noiseless quartic <= 0.1, range [%.3g, %.3g], %.2fs", double(good), best, worst, elapsed)};
}

Verdict generation_identity() {
  std::size_t checked = 0, bad = 0;
  for (const auto id : {ObjectiveId::F1, ObjectiveId::F2, ObjectiveId::F3, ObjectiveId::F4, ObjectiveId::F5,
                        ObjectiveId::GoldsteinPrice, ObjectiveId::ProblemE}) {
    for (const auto& r : rmc_batch(id, id == ObjectiveId::F4 ? 5 : 20)) {
      if (!r.ok()) {
        ++bad;
        continue;
      }
      ++checked;
      const auto& c = r.result->counters;
      if (c.generations() != c.trm + c.tc) ++bad;
      if (r.result->trajectory.back().generation > c.generations()) ++bad;
    }
  }
  // Independent count: crossovers seen by an observer must equal tc, and the
  // trajectory must end at the reported generation total.
  for (const auto id : {ObjectiveId::F1, ObjectiveId::F2, ObjectiveId::F5, ObjectiveId::GoldsteinPrice}) {
    const auto spec = objective_spec(id);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto config = RmcConfig<double>::defaults(spec.dimension);
      config.seed = seed;
      std::uint64_t seen = 0;
      const auto r = rmc_optimize(make_objective(spec, seed), spec.box, spec.goal, config,
                                  [&](const CrossoverStep<double>&) { ++seen; });
      ++checked;
      if (seen != r.counters.tc) ++bad;
    }
  }
  const unsigned long long trm[5] = {55, 15, 4, 15, 340}, tc[5] = {102, 20, 1, 21, 670};
  const unsigned long long total[5] = {157, 35, 5, 36, 1010};
  const auto t2 = literature_table2();
  const auto rmcga = literature_table3().back();
  for (int i = 0; i < 5; ++i) {
    if (trm[i] + tc[i] != total[i]) ++bad;
    if (t2[i].trm != trm[i] || t2[i].tc != tc[i]) ++bad;
    if (static_cast<double>(t2[i].trm + t2[i].tc) != rmcga.generations[i]) ++bad;
  }
  return {bad == 0, fmt("%.0f runs checked, %.0f violations", double(checked), double(bad))};
}

Verdict png_reproduction() {
  const long de[5] = {260, 670, 125, 2300, 1200};
  const long rmcga[5] = {157, 35, 5, 36, 1010};
  const double expected[5] = {1.656, 19.142, 25, 63.888, 1.188};
  const auto png = literature_png();
  std::string detail;
  bool pass = true;
  for (int i = 0; i < 5; ++i) {
    const double by_integers = double(de[i] * 1000 / rmcga[i]) / 1000.0;
    pass = pass && png[i] == expected[i] && by_integers == expected[i];
    detail += fmt("%.3f ", png[i]);
  }
  return {pass, "PNG row " + detail};
}

Verdict generation_bounds() {
  const double limits[3] = {1570, 350, 50};
  const ObjectiveId ids[3] = {ObjectiveId::F1, ObjectiveId::F2, ObjectiveId::F3};
  bool pass = true;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    const auto a = rmc_batch(ids[i], 50);
    const auto b = rmc_batch(ids[i], 50);
    const double mean = mean_generations(a);
    bool same = true;
    for (std::size_t k = 0; k < a.size(); ++k) {
      same = same && a[k].ok() && b[k].ok() && a[k].result->counters == b[k].result->counters;
    }
    pass = pass && std::isfinite(mean) && mean <= limits[i] && same;
    detail += std::string(to_string(ids[i])) + fmt(" mean %.1f (limit %.0f), ", mean, limits[i]) +
              (same ? "deterministic" : "NOT deterministic") + "; ";
  }
  return {pass, detail};
}

Verdict property_suites() {
  std::size_t violations = 0, crossovers = 0, runs_checked = 0;
  for (const auto id : {ObjectiveId::F1, ObjectiveId::F2, ObjectiveId::F3, ObjectiveId::F4, ObjectiveId::F5,
                        ObjectiveId::GoldsteinPrice, ObjectiveId::ProblemE}) {
    const auto spec = objective_spec(id);
    const double expected_ratio = std::ldexp(1.0, -static_cast<int>(spec.dimension));
    for (std::uint64_t seed = 0; seed < (id == ObjectiveId::F4 ? 3u : 10u); ++seed) {
      auto config = RmcConfig<double>::defaults(spec.dimension);
      config.seed = seed;
      auto observer = [&](const CrossoverStep<double>& step) {
        ++crossovers;
        if (!step.box_before.contains(step.box_after)) ++violations;
        const Vec w0 = step.box_before.widths(), w1 = step.box_after.widths();
        for (Index i = 0; i < w0.size(); ++i) {
          if (w1[i] != w0[i] / 2) ++violations;
        }
        if (step.box_after.volume() / step.box_before.volume() != expected_ratio) ++violations;
        if (is_better(*step.incumbent_before.fitness, *step.incumbent_after.fitness, spec.goal)) ++violations;
      };
      const auto r1 = rmc_optimize(make_objective(spec, seed), spec.box, spec.goal, config, observer);
      const auto r2 = rmc_optimize(make_objective(spec, seed), spec.box, spec.goal, config);
      ++runs_checked;
      if (!(r1 == r2)) ++violations;
      for (std::size_t k = 0; k < r1.trajectory.size(); ++k) {
        if (!spec.box.contains(r1.trajectory[k].point)) ++violations;
        if (k > 0 && is_better(r1.trajectory[k - 1].fitness, r1.trajectory[k].fitness, spec.goal)) ++violations;
      }
    }
  }

  // Grid oracle: known optimum <= grid minimum <= best corner of the grid cell holding the optimum.
  std::string grid_detail;
  for (const auto id : {ObjectiveId::F1, ObjectiveId::F2, ObjectiveId::GoldsteinPrice, ObjectiveId::ProblemE}) {
    const auto spec = objective_spec(id);
    const std::size_t res = 201;
    const auto g = grid_oracle(spec, res);
    const Vec star = spec.known_best_point->coords;
    const double known = *spec.known_best_value;
    const Index n = spec.dimension;
    double cell_best = INFINITY;
    for (std::uint64_t mask = 0; mask < (1u << n); ++mask) {
      Vec corner(n);
      for (Index i = 0; i < n; ++i) {
        const double lo = spec.box.lower()[i], hi = spec.box.upper()[i];
        const double h = (hi - lo) / double(res - 1);
        const double k = std::floor((star[i] - lo) / h);
        corner[i] = std::min(hi, lo + (k + double((mask >> i) & 1u)) * h);
      }
      cell_best = std::min(cell_best, eval(spec, corner));
    }
    const double slack = 1e-12 * (1 + std::abs(known));
    if (!(g.best_value >= known - slack && g.best_value <= cell_best + slack)) ++violations;
    grid_detail += std::string(to_string(id)) + fmt("=%.6g ", g.best_value);
  }
  return {violations == 0, fmt("%.0f runs, %.0f crossovers, %.0f violations; grid ", double(runs_checked),
                               double(crossovers), double(violations)) + grid_detail};
}

Verdict de_baseline() {
  auto spec = ExperimentSpec::defaults(objective_spec(ObjectiveId::F1), Algorithm::DE);
  spec.replicates = 100;
  auto& de = std::get<DeConfig<double>>(spec.config);
  de.max_generations = 2000;
  const auto t0 = Clock::now();
  const auto runs = run_experiment(spec);
  const double elapsed = seconds_since(t0);
  std::size_t solved = 0;
  double worst_gen = 0;
  for (const auto& r : runs) {
    if (!r.ok()) continue;
    const double f = r.result->best_point.coords.squaredNorm();
    if (f <= 1e-3 && r.result->counters.tc <= 2000) ++solved;
    worst_gen = std::max(worst_gen, double(r.result->counters.tc));
  }
  return {solved >= 95 && elapsed < 20.0,
          fmt("%.0f/100 solved within 2000 generations (need 95), max %.0f generations, %.2fs", double(solved),
              worst_gen, elapsed)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"f1_optimum", f1_optimum},
      {"f2_optimum", f2_optimum},
      {"f3_optimum", f3_optimum},
      {"goldstein_price", goldstein_price},
      {"f5_foxholes", f5_foxholes},
      {"f4_noisy_quartic", f4_noisy_quartic},
      {"generation_identity", generation_identity},
      {"png_reproduction", png_reproduction},
      {"generation_bounds", generation_bounds},
      {"property_suites", property_suites},
      {"de_baseline", de_baseline},
  };
  const char* only = nullptr;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--only <criterion>]\n", argv[0]);
      return 2;
    }
  }

  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (only != nullptr && std::strcmp(only, c.name) != 0) continue;
    ++ran;
    Verdict v{false, ""};
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str());
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  if (ran == 0) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only);
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
