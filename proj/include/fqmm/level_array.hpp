#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fqmm/error.hpp"

namespace fqmm {

/// Default cap on the dyadic level L. Overridden at runtime by the
/// FRACTAL_QMM_MAX_LEVEL environment variable.
inline constexpr int kDefaultMaxLevel = 24;

/// Current level cap (environment override or kDefaultMaxLevel).
int max_level();

/// Throws PreconditionError unless 0 <= level <= max_level().
void check_level(int level, const char* what);

inline std::size_t dim_of_level(int level) { return std::size_t{1} << level; }

/// A dense array of 2^L entries tagged by what the entries mean. The tag keeps
/// grid values and Haar coefficients from being mixed up by accident.
template <typename T, typename Tag>
class LevelArray {
 public:
  using value_type = T;

  LevelArray() = default;

  explicit LevelArray(int level) : level_(level) {
    check_level(level, "LevelArray");
    values_.assign(dim_of_level(level), T{});
  }

  LevelArray(int level, std::vector<T> values) : level_(level), values_(std::move(values)) {
    check_level(level, "LevelArray");
    if (values_.size() != dim_of_level(level)) {
      throw PreconditionError("LevelArray: expected 2^" + std::to_string(level) + " = " +
                              std::to_string(dim_of_level(level)) + " values, got " +
                              std::to_string(values_.size()));
    }
  }

  int level() const { return level_; }
  std::size_t size() const { return values_.size(); }

  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }
  const std::vector<T>& vector() const { return values_; }

  const T& operator[](std::size_t i) const { return values_[i]; }
  T& operator[](std::size_t i) { return values_[i]; }

  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const LevelArray&, const LevelArray&) = default;

 private:
  int level_ = 0;
  std::vector<T> values_{T{}};
};

struct GridTag;
struct HaarTag;

/// Values on the 2^L half-open dyadic cells (j/2^L, (j+1)/2^L].
using PiecewiseConstantFn = LevelArray<double, GridTag>;
using ComplexPiecewiseFn = LevelArray<std::complex<double>, GridTag>;

/// Haar coefficients: slot 0 is c_0 (the constant G), slot 2^n + k is c_{n,k}.
using HaarCoeffs = LevelArray<double, HaarTag>;
using ComplexHaarCoeffs = LevelArray<std::complex<double>, HaarTag>;

/// Midpoint of dyadic cell j at the given level.
inline double cell_midpoint(std::size_t j, int level) {
  return (static_cast<double>(j) + 0.5) / static_cast<double>(dim_of_level(level));
}

/// L2[0,1] norm of a grid function: sqrt(2^-L * sum |v|^2).
template <typename T>
double l2_norm(const LevelArray<T, GridTag>& f) {
  double acc = 0.0;
  for (const auto& v : f) acc += std::norm(v);
  return std::sqrt(acc / static_cast<double>(f.size()));
}

/// Euclidean norm of a coefficient vector.
template <typename T>
double l2_norm(const LevelArray<T, HaarTag>& c) {
  double acc = 0.0;
  for (const auto& v : c) acc += std::norm(v);
  return std::sqrt(acc);
}

/// L2[0,1] inner product <f, g> (conjugate-linear in f).
double inner_product(const PiecewiseConstantFn& f, const PiecewiseConstantFn& g);
std::complex<double> inner_product(const ComplexPiecewiseFn& f, const ComplexPiecewiseFn& g);

}  // namespace fqmm
