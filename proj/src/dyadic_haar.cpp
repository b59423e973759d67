#include "fqmm/dyadic_haar.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "parallel.hpp"

namespace fqmm {

std::vector<std::uint8_t> dyadic_digits(std::size_t cell, int level) {
  check_level(level, "dyadic_digits");
  if (cell >= dim_of_level(level)) {
    throw PreconditionError("dyadic_digits: cell " + std::to_string(cell) + " outside [0, 2^" +
                            std::to_string(level) + ")");
  }
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(level));
  for (int d = 1; d <= level; ++d) {
    digits[static_cast<std::size_t>(d - 1)] = (cell & digit_mask(d, level)) ? 1 : 0;
  }
  return digits;
}

HaarLabel haar_label(std::size_t index) {
  if (index == 0) return {true, 0, 0};
  const int n = std::bit_width(index) - 1;
  return {false, n, index - (std::size_t{1} << n)};
}

PiecewiseConstantFn haar_basis_function(int n, std::size_t k, int level) {
  if (n < 0 || level < n + 1) {
    throw PreconditionError("haar_basis_function: need level >= n + 1 (n = " + std::to_string(n) +
                            ", level = " + std::to_string(level) + ")");
  }
  if (k >= (std::size_t{1} << n)) {
    throw PreconditionError("haar_basis_function: k = " + std::to_string(k) + " outside [0, 2^" +
                            std::to_string(n) + ")");
  }
  PiecewiseConstantFn f(level);
  const std::size_t cells = dim_of_level(level - n);  // cells per support interval
  const double height = std::sqrt(std::ldexp(1.0, n));
  const std::size_t begin = k * cells;
  for (std::size_t j = 0; j < cells / 2; ++j) {
    f[begin + j] = height;
    f[begin + cells / 2 + j] = -height;
  }
  return f;
}

PiecewiseConstantFn constant_function(int level) {
  PiecewiseConstantFn f(level);
  for (auto& v : f) v = 1.0;
  return f;
}

namespace {

// The pyramid runs on cell means, so every combination step is an exact
// halving; the only irrational factor is 2^{-n/2} applied once per detail:
//   c_{n,k} = 2^{-n/2} (m_{2k} - m_{2k+1}) / 2,   c_0 = overall mean.
inline double detail_scale(int n) { return std::sqrt(std::ldexp(1.0, -n)); }

template <typename T>
LevelArray<T, HaarTag> forward_impl(const LevelArray<T, GridTag>& f) {
  const int level = f.level();
  LevelArray<T, HaarTag> out(level);
  std::vector<T> means(f.begin(), f.end());
  std::vector<T> next(means.size() / 2 + 1);
  for (int n = level - 1; n >= 0; --n) {
    const auto half = static_cast<std::ptrdiff_t>(std::size_t{1} << n);
    const double scale = detail_scale(n);
    T* details = out.values().data() + half;
#pragma omp parallel for schedule(static) if (half >= detail::kParallelThreshold)
    for (std::ptrdiff_t i = 0; i < half; ++i) {
      const T a = means[static_cast<std::size_t>(2 * i)];
      const T b = means[static_cast<std::size_t>(2 * i + 1)];
      next[static_cast<std::size_t>(i)] = 0.5 * (a + b);
      details[i] = scale * (0.5 * (a - b));
    }
    std::swap(means, next);
  }
  out[0] = means[0];
  return out;
}

template <typename T>
LevelArray<T, GridTag> inverse_impl(const LevelArray<T, HaarTag>& c) {
  const int level = c.level();
  std::vector<T> means(c.size());
  std::vector<T> next(c.size());
  means[0] = c[0];
  for (int n = 0; n < level; ++n) {
    const auto half = static_cast<std::ptrdiff_t>(std::size_t{1} << n);
    const double scale = detail_scale(n);
    const T* details = c.values().data() + half;
#pragma omp parallel for schedule(static) if (half >= detail::kParallelThreshold)
    for (std::ptrdiff_t i = 0; i < half; ++i) {
      const T m = means[static_cast<std::size_t>(i)];
      const T d = details[i] / scale;
      next[static_cast<std::size_t>(2 * i)] = m + d;
      next[static_cast<std::size_t>(2 * i + 1)] = m - d;
    }
    std::swap(means, next);
  }
  return LevelArray<T, GridTag>(level, std::move(means));
}

}  // namespace

HaarCoeffs haar_forward(const PiecewiseConstantFn& f) { return forward_impl(f); }
PiecewiseConstantFn haar_inverse(const HaarCoeffs& c) { return inverse_impl(c); }
ComplexHaarCoeffs haar_forward(const ComplexPiecewiseFn& f) { return forward_impl(f); }
ComplexPiecewiseFn haar_inverse(const ComplexHaarCoeffs& c) { return inverse_impl(c); }

}  // namespace fqmm
