#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rmc/objectives.hpp"
#include "rmc/serialize.hpp"

using namespace rmc;
using Vec = Vector<double>;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

// Literal foxholes summation, written independently of the library's matrix.
double foxholes_oracle(double x1, double x2) {
  const double grid[5] = {-32, -16, 0, 16, 32};
  double sum = 0;
  for (int j = 1; j <= 25; ++j) {
    const double a1 = grid[(j - 1) % 5];
    const double a2 = grid[(j - 1) / 5];
    sum += 1.0 / (j + std::pow(x1 - a1, 6) + std::pow(x2 - a2, 6));
  }
  return 1.0 / (0.002 + sum);
}

Vec uniform_in(const SearchBox<double>& box, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  Vec x(box.dimension());
  for (Index i = 0; i < x.size(); ++i) x[i] = box.lower()[i] + (box.upper()[i] - box.lower()[i]) * u(rng);
  return x;
}

}  // namespace

TEST(ObjectiveSpec, BoundsAndDimensionsMatchTheSuite) {
  struct Row {
    ObjectiveId id;
    Index n;
    double bound;
  };
  for (const Row r : {Row{ObjectiveId::F1, 3, 5.12}, Row{ObjectiveId::F2, 2, 2.048},
                      Row{ObjectiveId::F3, 5, 5.12}, Row{ObjectiveId::F4, 30, 1.28},
                      Row{ObjectiveId::F5, 2, 65.536}, Row{ObjectiveId::GoldsteinPrice, 2, 2.0},
                      Row{ObjectiveId::ProblemE, 2, 1.0}}) {
    const auto spec = objective_spec(r.id);
    EXPECT_EQ(spec.dimension, r.n) << to_string(r.id);
    EXPECT_EQ(spec.box, SearchBox<double>::cube(r.n, -r.bound, r.bound)) << to_string(r.id);
    EXPECT_EQ(spec.goal, Goal::Minimize);
    EXPECT_EQ(spec.stochastic, r.id == ObjectiveId::F4);
  }
  EXPECT_EQ(objective_spec(ObjectiveId::F1).initial_population, 8);
  EXPECT_EQ(objective_spec(ObjectiveId::F2).initial_population, 4);
  EXPECT_EQ(objective_spec(ObjectiveId::F3).initial_population, 32);
  EXPECT_FALSE(objective_spec(ObjectiveId::F4).initial_population.has_value());
  EXPECT_EQ(objective_spec(ObjectiveId::F5).initial_population, 4);
}

TEST(ObjectiveSpec, ParseNames) {
  EXPECT_EQ(parse_objective_id("f1"), ObjectiveId::F1);
  EXPECT_EQ(parse_objective_id("GP"), ObjectiveId::GoldsteinPrice);
  EXPECT_EQ(parse_objective_id("e"), ObjectiveId::ProblemE);
  EXPECT_THROW(parse_objective_id("nosuch"), ConfigError);
}

TEST(FoxholesMatrix, StandardLayout) {
  const auto& a = foxholes_matrix();
  const double grid[5] = {-32, -16, 0, 16, 32};
  for (int j = 0; j < 25; ++j) {
    EXPECT_EQ(a(0, j), grid[j % 5]);
    EXPECT_EQ(a(1, j), grid[j / 5]);
  }
}

TEST(Eval, KnownValues) {
  EXPECT_EQ(eval(objective_spec(ObjectiveId::F2), v2(1, 1)), 0.0);
  EXPECT_EQ(eval(objective_spec(ObjectiveId::F3), Vec::Constant(5, -5.12)), 0.0);
  EXPECT_EQ(eval(objective_spec(ObjectiveId::GoldsteinPrice), v2(0, -1)), 3.0);
  EXPECT_EQ(eval(objective_spec(ObjectiveId::F1), Vec::Zero(3)), 0.0);
  EXPECT_EQ(eval(objective_spec(ObjectiveId::ProblemE), v2(0, 0)), 0.0 + 0.0 - 18.0 - 18.0);
}

TEST(Eval, FoxholesMatchesLiteralSummation) {
  const auto spec = objective_spec(ObjectiveId::F5);
  const double at_hole = foxholes_oracle(-32, -32);
  EXPECT_NEAR(at_hole, 0.998004, 1e-6);
  EXPECT_NEAR(eval(spec, v2(-32, -32)), at_hole, 1e-14);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 1000; ++k) {
    const Vec x = uniform_in(spec.box, rng);
    EXPECT_NEAR(eval(spec, x), foxholes_oracle(x[0], x[1]), 1e-12 * foxholes_oracle(x[0], x[1]));
  }
  EXPECT_NEAR(*spec.known_best_value, at_hole, 1e-14);
}

TEST(Eval, ProblemEKnownBestIsMinusThirtySix) {
  EXPECT_EQ(*objective_spec(ObjectiveId::ProblemE).known_best_value, -36.0);
  EXPECT_EQ(*objective_spec(ObjectiveId::GoldsteinPrice).known_best_value, 3.0);
}

TEST(Eval, Errors) {
  EXPECT_THROW(eval(objective_spec(ObjectiveId::F1), v2(0, 0)), DomainError);
  EXPECT_THROW(eval(objective_spec(ObjectiveId::F4), Vec::Zero(30)), DomainError);
}

TEST(Properties, Symmetries) {
  const auto f1 = objective_spec(ObjectiveId::F1);
  const auto e = objective_spec(ObjectiveId::ProblemE);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 1000; ++k) {
    const Vec x = uniform_in(f1.box, rng);
    EXPECT_EQ(eval(f1, x), eval(f1, Vec(-x)));
    const Vec y = uniform_in(e.box, rng);
    EXPECT_NEAR(eval(e, y), eval(e, v2(y[1], y[0])), 1e-12);
    EXPECT_EQ(eval(e, y), eval(e, v2(-y[0], y[1])));
  }
}

TEST(Properties, LowerBoundsOnRandomSamples) {
  std::mt19937_64 rng(3);
  const auto f1 = objective_spec(ObjectiveId::F1);
  const auto f2 = objective_spec(ObjectiveId::F2);
  const auto gp = objective_spec(ObjectiveId::GoldsteinPrice);
  const auto f5 = objective_spec(ObjectiveId::F5);
  for (int k = 0; k < 10000; ++k) {
    EXPECT_GE(eval(f1, uniform_in(f1.box, rng)), 0.0);
    EXPECT_GE(eval(f2, uniform_in(f2.box, rng)), 0.0);
    EXPECT_GE(eval(gp, uniform_in(gp.box, rng)), 3.0);
    EXPECT_GT(eval(f5, uniform_in(f5.box, rng)), 0.0);
  }
}

TEST(Properties, StepIsPiecewiseConstant) {
  const auto f3 = objective_spec(ObjectiveId::F3);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 1000; ++k) {
    Vec x = uniform_in(f3.box, rng);
    const double base = eval(f3, x);
    const Index i = static_cast<Index>(k % 5);
    const double cell = std::floor(x[i]);
    Vec y = x;
    y[i] = std::clamp(cell + 0.999 * u(rng), -5.12, 5.12);
    EXPECT_EQ(eval(f3, y), base);
  }
}

TEST(Properties, NoisyQuarticReproducibleAndCentred) {
  const auto f4 = objective_spec(ObjectiveId::F4);
  const Vec x = Vec::Constant(30, 0.5);
  NoiseStream a(7), b(7);
  EXPECT_EQ(eval(f4, x, &a), eval(f4, x, &b));

  const int streams = 10000;
  double sum = 0, sum_sq = 0;
  for (int k = 0; k < streams; ++k) {
    NoiseStream noise(static_cast<std::uint64_t>(k) * 7919 + 1);
    const double v = eval(f4, Vec::Zero(30), &noise);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / streams;
  const double sd = std::sqrt(sum_sq / streams - mean * mean);
  EXPECT_NEAR(sd, std::sqrt(30.0), 0.2);
  EXPECT_LE(std::abs(mean), 3 * sd / std::sqrt(double(streams)));
}

TEST(Properties, NoiselessValueStripsNoise) {
  const auto f4 = objective_spec(ObjectiveId::F4);
  Vec x(30);
  double expected = 0;
  for (int i = 0; i < 30; ++i) {
    x[i] = 0.01 * i;
    expected += (i + 1) * std::pow(x[i], 4);
  }
  EXPECT_NEAR(noiseless_value(f4, x), expected, 1e-15);
}

TEST(MakeObjective, StochasticStreamsFollowTheSeed) {
  const auto f4 = objective_spec(ObjectiveId::F4);
  auto a = make_objective(f4, 5);
  auto b = make_objective(f4, 5);
  auto c = make_objective(f4, 6);
  const Vec x = Vec::Zero(30);
  const double first = a(x);
  EXPECT_EQ(first, b(x));
  EXPECT_NE(first, c(x));
  EXPECT_NE(first, a(x));
}

TEST(GridOracle, SphereOriginOnOddGrid) {
  const auto r = grid_oracle(objective_spec(ObjectiveId::F1), 65);
  EXPECT_EQ(r.best_value, 0.0);
  EXPECT_EQ(r.best_point, Vec::Zero(3));
}

TEST(GridOracle, ProblemEAndGoldsteinPrice) {
  const auto e = grid_oracle(objective_spec(ObjectiveId::ProblemE), 201);
  EXPECT_EQ(e.best_point, v2(0, 0));
  EXPECT_EQ(e.best_value, -36.0);
  const auto gp = grid_oracle(objective_spec(ObjectiveId::GoldsteinPrice), 401);
  EXPECT_EQ(gp.best_point, v2(0, -1));
  EXPECT_EQ(gp.best_value, 3.0);
}

TEST(GridOracle, Unsupported) {
  EXPECT_THROW(grid_oracle(objective_spec(ObjectiveId::F4), 3), UnsupportedError);
  EXPECT_THROW(grid_oracle(objective_spec(ObjectiveId::F1), 1), DomainError);
}

TEST(Serialization, ObjectiveSpecRoundTrip) {
  for (const auto& spec : all_objective_specs()) {
    const auto back = objective_spec_from_json(nlohmann::json::parse(to_json(spec).dump()));
    EXPECT_TRUE(back == spec) << to_string(spec.id);
  }
}
