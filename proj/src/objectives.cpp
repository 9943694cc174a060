#include "rmc/objectives.hpp"

#include <algorithm>
#include <cctype>
#include <memory>

#include "rmc/operators.hpp"

namespace rmc {

const char* to_string(ObjectiveId id) {
  switch (id) {
    case ObjectiveId::F1: return "f1";
    case ObjectiveId::F2: return "f2";
    case ObjectiveId::F3: return "f3";
    case ObjectiveId::F4: return "f4";
    case ObjectiveId::F5: return "f5";
    case ObjectiveId::GoldsteinPrice: return "gp";
    case ObjectiveId::ProblemE: return "e";
  }
  return "unknown";
}

ObjectiveId parse_objective_id(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (const auto id : {ObjectiveId::F1, ObjectiveId::F2, ObjectiveId::F3, ObjectiveId::F4,
                        ObjectiveId::F5, ObjectiveId::GoldsteinPrice, ObjectiveId::ProblemE}) {
    if (lower == to_string(id)) return id;
  }
  throw ConfigError("unknown function '" + std::string(name) + "' (expected f1..f5, gp, e)");
}

bool operator==(const ObjectiveSpec& a, const ObjectiveSpec& b) {
  return a.id == b.id && a.dimension == b.dimension && a.box == b.box && a.goal == b.goal &&
         a.known_best_point == b.known_best_point && a.known_best_value == b.known_best_value &&
         a.stochastic == b.stochastic && a.initial_population == b.initial_population;
}

namespace {

ObjectiveSpec make_spec(ObjectiveId id, Index n, double bound, Vector<double> best,
                        std::optional<int> population) {
  ObjectiveSpec spec;
  spec.id = id;
  spec.dimension = n;
  spec.box = SearchBox<double>::cube(n, -bound, bound);
  spec.known_best_point = Point<double>{std::move(best), std::nullopt};
  spec.initial_population = population;
  return spec;
}

}  // namespace

ObjectiveSpec objective_spec(ObjectiveId id) {
  ObjectiveSpec spec;
  switch (id) {
    case ObjectiveId::F1:
      spec = make_spec(id, 3, 5.12, Vector<double>::Zero(3), 8);
      break;
    case ObjectiveId::F2:
      spec = make_spec(id, 2, 2.048, Vector<double>::Ones(2), 4);
      break;
    case ObjectiveId::F3:
      spec = make_spec(id, 5, 5.12, Vector<double>::Constant(5, -5.12), 32);
      break;
    case ObjectiveId::F4:
      spec = make_spec(id, 30, 1.28, Vector<double>::Zero(30), std::nullopt);
      spec.stochastic = true;
      break;
    case ObjectiveId::F5:
      spec = make_spec(id, 2, 65.536, Vector<double>::Constant(2, -32.0), 4);
      break;
    case ObjectiveId::GoldsteinPrice:
      spec = make_spec(id, 2, 2.0, (Vector<double>(2) << 0.0, -1.0).finished(), std::nullopt);
      break;
    case ObjectiveId::ProblemE:
      spec = make_spec(id, 2, 1.0, Vector<double>::Zero(2), std::nullopt);
      break;
  }
  const double value = noiseless_value(spec, spec.known_best_point->coords);
  spec.known_best_point->fitness = value;
  spec.known_best_value = value;
  return spec;
}

std::vector<ObjectiveSpec> all_objective_specs() {
  std::vector<ObjectiveSpec> specs;
  for (const auto id : {ObjectiveId::F1, ObjectiveId::F2, ObjectiveId::F3, ObjectiveId::F4,
                        ObjectiveId::F5, ObjectiveId::GoldsteinPrice, ObjectiveId::ProblemE}) {
    specs.push_back(objective_spec(id));
  }
  return specs;
}

double eval(const ObjectiveSpec& spec, const Vector<double>& x, NoiseStream* noise) {
  if (x.size() != spec.dimension) {
    throw DomainError(std::string("eval: ") + to_string(spec.id) + " expects dimension " +
                      std::to_string(spec.dimension) + ", got " + std::to_string(x.size()));
  }
  switch (spec.id) {
    case ObjectiveId::F1: return formulas::sphere(x);
    case ObjectiveId::F2: return formulas::rosenbrock(x);
    case ObjectiveId::F3: return formulas::step(x);
    case ObjectiveId::F4:
      if (noise == nullptr) throw DomainError("eval: f4 requires a noise stream");
      return formulas::noisy_quartic(x, *noise);
    case ObjectiveId::F5: return formulas::foxholes(x);
    case ObjectiveId::GoldsteinPrice: return formulas::goldstein_price(x);
    case ObjectiveId::ProblemE: return formulas::problem_e(x);
  }
  throw DomainError("eval: unknown objective");
}

double noiseless_value(const ObjectiveSpec& spec, const Vector<double>& x) {
  if (spec.id != ObjectiveId::F4) return eval(spec, x);
  if (x.size() != spec.dimension) throw DomainError("noiseless_value: dimension mismatch");
  return formulas::noiseless_quartic(x);
}

std::function<double(const Vector<double>&)> make_objective(const ObjectiveSpec& spec,
                                                            std::uint64_t seed) {
  if (!spec.stochastic) {
    return [spec](const Vector<double>& x) { return eval(spec, x); };
  }
  auto noise = std::make_shared<NoiseStream>(detail::splitmix64(seed ^ 0x4E4F495345ULL));
  return [spec, noise](const Vector<double>& x) { return eval(spec, x, noise.get()); };
}

GridOptimum grid_oracle(const ObjectiveSpec& spec, std::size_t resolution) {
  if (spec.stochastic) throw UnsupportedError("grid_oracle: stochastic objective");
  const Index n = spec.dimension;
  if (n > 5) throw UnsupportedError("grid_oracle: dimension above 5");
  if (resolution < 2) throw DomainError("grid_oracle: resolution must be >= 2");
  double total = 1.0;
  for (Index i = 0; i < n; ++i) total *= static_cast<double>(resolution);
  if (total > 2147483648.0) throw UnsupportedError("grid_oracle: grid too large");

  std::vector<Vector<double>> axes(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    auto& axis = axes[static_cast<std::size_t>(i)];
    axis.resize(static_cast<Index>(resolution));
    const double lo = spec.box.lower()[i], hi = spec.box.upper()[i];
    for (std::size_t k = 0; k < resolution; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(resolution - 1);
      axis[static_cast<Index>(k)] = lo * (1.0 - t) + hi * t;
    }
  }

  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  Vector<double> x(n);
  GridOptimum best;
  bool have = false;
  while (true) {
    for (Index i = 0; i < n; ++i) x[i] = axes[static_cast<std::size_t>(i)][static_cast<Index>(idx[i])];
    const double value = eval(spec, x);
    if (std::isfinite(value) && (!have || is_better(value, best.best_value, spec.goal))) {
      best.best_point = x;
      best.best_value = value;
      have = true;
    }
    Index i = 0;
    while (i < n && ++idx[static_cast<std::size_t>(i)] == resolution) idx[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  if (!have) throw DomainError("grid_oracle: objective non-finite on the whole grid");
  return best;
}

}  // namespace rmc
