#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "rmc/types.hpp"

namespace rmc {

enum class ObjectiveId { F1, F2, F3, F4, F5, GoldsteinPrice, ProblemE };

const char* to_string(ObjectiveId id);

/// Accepts f1..f5, gp, e (case-insensitive). Throws ConfigError otherwise.
ObjectiveId parse_objective_id(std::string_view name);

/// Gaussian noise source for the stochastic quartic.
class NoiseStream {
 public:
  explicit NoiseStream(std::uint64_t seed) : engine_(seed) {}
  double gauss() { return normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Standard 2x25 foxholes matrix.
inline const Eigen::Matrix<double, 2, 25>& foxholes_matrix() {
  static const Eigen::Matrix<double, 2, 25> a = [] {
    const double row[5] = {-32.0, -16.0, 0.0, 16.0, 32.0};
    Eigen::Matrix<double, 2, 25> m;
    for (int j = 0; j < 25; ++j) {
      m(0, j) = row[j % 5];
      m(1, j) = row[j / 5];
    }
    return m;
  }();
  return a;
}

namespace formulas {

template <typename Derived>
typename Derived::Scalar sphere(const Eigen::MatrixBase<Derived>& x) {
  return x.squaredNorm();
}

template <typename Derived>
typename Derived::Scalar rosenbrock(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const S a = x[0] * x[0] - x[1];
  const S b = S(1) - x[0];
  return S(100) * a * a + b * b;
}

template <typename Derived>
typename Derived::Scalar step(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  S sum(30);
  for (Index i = 0; i < x.size(); ++i) sum += std::floor(x[i]);
  return sum;
}

/// Sum of i * x_i^4, i from 1.
template <typename Derived>
typename Derived::Scalar noiseless_quartic(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  S sum(0);
  for (Index i = 0; i < x.size(); ++i) {
    const S q = x[i] * x[i];
    sum += S(i + 1) * q * q;
  }
  return sum;
}

template <typename Derived>
typename Derived::Scalar noisy_quartic(const Eigen::MatrixBase<Derived>& x, NoiseStream& noise) {
  using S = typename Derived::Scalar;
  S sum(0);
  for (Index i = 0; i < x.size(); ++i) {
    const S q = x[i] * x[i];
    sum += S(i + 1) * q * q + S(noise.gauss());
  }
  return sum;
}

template <typename Derived>
typename Derived::Scalar foxholes(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const auto& a = foxholes_matrix();
  S inner(0);
  for (int j = 0; j < 25; ++j) {
    S dist(j + 1);
    for (int i = 0; i < 2; ++i) {
      const S t = x[i] - S(a(i, j));
      const S t2 = t * t;
      dist += t2 * t2 * t2;
    }
    inner += S(1) / dist;
  }
  return S(1) / (S(0.002) + inner);
}

template <typename Derived>
typename Derived::Scalar goldstein_price(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const S x1 = x[0], x2 = x[1];
  const S s = x1 + x2 + S(1);
  const S t = S(2) * x1 - S(3) * x2;
  const S first = S(1) + s * s *
                             (S(19) - S(14) * x1 + S(3) * x1 * x1 - S(14) * x2 + S(6) * x1 * x2 +
                              S(3) * x2 * x2);
  const S second = S(30) + t * t *
                               (S(18) - S(32) * x1 + S(12) * x1 * x1 + S(48) * x2 -
                                S(36) * x1 * x2 + S(27) * x2 * x2);
  return first * second;
}

template <typename Derived>
typename Derived::Scalar problem_e(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  return x[0] * x[0] + x[1] * x[1] - S(18) * std::cos(x[0]) - S(18) * std::cos(x[1]);
}

}  // namespace formulas

struct ObjectiveSpec {
  ObjectiveId id = ObjectiveId::F1;
  Index dimension = 3;
  SearchBox<double> box = SearchBox<double>::cube(3, -5.12, 5.12);
  Goal goal = Goal::Minimize;
  std::optional<Point<double>> known_best_point;
  std::optional<double> known_best_value;
  bool stochastic = false;
  /// Vertex-elitism population size listed for the function, when given.
  std::optional<int> initial_population;

  friend bool operator==(const ObjectiveSpec& a, const ObjectiveSpec& b);
};

/// Specification with bounds, dimension and known optimum. F4's known best
/// value refers to its noiseless part; F5's is the value at (-32, -32).
ObjectiveSpec objective_spec(ObjectiveId id);

/// Every benchmark, in declaration order.
std::vector<ObjectiveSpec> all_objective_specs();

/// Throws DomainError on a dimension mismatch or a missing noise stream for F4.
double eval(const ObjectiveSpec& spec, const Vector<double>& x, NoiseStream* noise = nullptr);

/// The deterministic part of the objective: for F4 the quartic without noise,
/// for every other function eval itself.
double noiseless_value(const ObjectiveSpec& spec, const Vector<double>& x);

/// Callable for the optimizers. For stochastic specs the returned function owns
/// a noise stream derived from `seed`.
std::function<double(const Vector<double>&)> make_objective(const ObjectiveSpec& spec,
                                                            std::uint64_t seed);

struct GridOptimum {
  Vector<double> best_point;
  double best_value = 0.0;
};

/// Exhaustive minimum over a uniform grid with `resolution` points per axis,
/// endpoints included. Throws UnsupportedError for stochastic specs, n > 5, or
/// more than 2^31 grid points; DomainError for resolution < 2.
GridOptimum grid_oracle(const ObjectiveSpec& spec, std::size_t resolution);

}  // namespace rmc
