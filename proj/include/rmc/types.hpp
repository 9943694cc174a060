#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace rmc {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InitializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Goal { Minimize, Maximize };

inline const char* to_string(Goal goal) {
  return goal == Goal::Minimize ? "minimize" : "maximize";
}

/// A direction in {+1, -1}^n.
class SignVector {
 public:
  SignVector() = default;

  explicit SignVector(Eigen::VectorXi signs) : signs_(std::move(signs)) {
    if (signs_.size() < 1) throw DomainError("SignVector: dimension must be >= 1");
    for (Index i = 0; i < signs_.size(); ++i) {
      if (signs_[i] != 1 && signs_[i] != -1) {
        throw DomainError("SignVector: entries must be +1 or -1");
      }
    }
  }

  static SignVector ones(Index n) { return SignVector(Eigen::VectorXi::Ones(n)); }

  /// Coordinate i is -1 iff bit i of k is set. Requires n <= 64.
  static SignVector from_index(Index n, std::uint64_t k) {
    Eigen::VectorXi s(n);
    for (Index i = 0; i < n; ++i) s[i] = (i < 64 && ((k >> i) & 1u)) ? -1 : 1;
    return SignVector(std::move(s));
  }

  Index size() const { return signs_.size(); }
  int operator[](Index i) const { return signs_[i]; }
  const Eigen::VectorXi& signs() const { return signs_; }

  template <typename Scalar>
  Vector<Scalar> as() const {
    return signs_.cast<Scalar>();
  }

  friend bool operator==(const SignVector& a, const SignVector& b) {
    return a.signs_.size() == b.signs_.size() && a.signs_ == b.signs_;
  }
  friend bool operator!=(const SignVector& a, const SignVector& b) { return !(a == b); }

 private:
  Eigen::VectorXi signs_;
};

/// Axis-aligned hyperbox [lower, upper]; every side has positive length.
template <typename Scalar = double>
class SearchBox {
 public:
  using VectorType = Vector<Scalar>;

  SearchBox(VectorType lower, VectorType upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() < 1 || lower_.size() != upper_.size()) {
      throw DomainError("SearchBox: bounds must have equal, non-zero length");
    }
    for (Index i = 0; i < lower_.size(); ++i) {
      if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i])) {
        throw DomainError("SearchBox: require finite lower[i] < upper[i] for every i");
      }
    }
    widths_ = upper_ - lower_;
  }

  /// Half of this box toward `corner` (one of its vertices). Side lengths are
  /// carried as exact halves; the bounds are the rounded midpoints.
  SearchBox halved_toward(const VectorType& corner) const {
    const VectorType mid = center();
    SearchBox out = *this;
    for (Index i = 0; i < dimension(); ++i) {
      if (corner[i] == lower_[i]) {
        out.upper_[i] = mid[i];
      } else {
        out.lower_[i] = mid[i];
      }
      if (!(out.lower_[i] < out.upper_[i])) throw DomainError("SearchBox: side too small to halve");
    }
    out.widths_ = widths_ / Scalar(2);
    return out;
  }

  static SearchBox cube(Index n, Scalar lo, Scalar hi) {
    return SearchBox(VectorType::Constant(n, lo), VectorType::Constant(n, hi));
  }

  /// Box with opposite corners a and b (in any order).
  static SearchBox spanned(const VectorType& a, const VectorType& b) {
    return SearchBox(a.cwiseMin(b), a.cwiseMax(b));
  }

  const VectorType& lower() const { return lower_; }
  const VectorType& upper() const { return upper_; }
  Index dimension() const { return lower_.size(); }

  const VectorType& widths() const { return widths_; }
  VectorType center() const { return (lower_ + upper_) / Scalar(2); }
  Scalar diagonal() const { return widths_.norm(); }
  Scalar volume() const { return widths_.prod(); }

  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& x) const {
    return x.size() == lower_.size() && (x.array() >= lower_.array()).all() &&
           (x.array() <= upper_.array()).all();
  }

  bool contains(const SearchBox& other) const {
    return other.dimension() == dimension() && (other.lower_.array() >= lower_.array()).all() &&
           (other.upper_.array() <= upper_.array()).all();
  }

  /// Upper bound where the sign is +1, lower bound where it is -1.
  VectorType vertex(const SignVector& s) const {
    VectorType v(dimension());
    for (Index i = 0; i < dimension(); ++i) v[i] = s[i] > 0 ? upper_[i] : lower_[i];
    return v;
  }

  friend bool operator==(const SearchBox& a, const SearchBox& b) {
    return a.dimension() == b.dimension() && a.lower_ == b.lower_ && a.upper_ == b.upper_ &&
           a.widths_ == b.widths_;
  }

 private:
  VectorType lower_;
  VectorType upper_;
  VectorType widths_;
};

template <typename Scalar = double>
struct Point {
  Vector<Scalar> coords;
  std::optional<Scalar> fitness;

  Index dimension() const { return coords.size(); }

  /// Cached fitness; throws if the point was never evaluated.
  Scalar value() const {
    if (!fitness) throw DomainError("Point: fitness has not been evaluated");
    return *fitness;
  }

  friend bool operator==(const Point& a, const Point& b) {
    return a.coords.size() == b.coords.size() && a.coords == b.coords && a.fitness == b.fitness;
  }
};

template <typename Scalar>
Point<Scalar> make_point(Vector<Scalar> coords, std::optional<Scalar> fitness = std::nullopt) {
  return Point<Scalar>{std::move(coords), fitness};
}

}  // namespace rmc
