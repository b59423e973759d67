#include "fqmm/reference.hpp"

#include <cmath>
#include <numbers>

#include "fqmm/dyadic_haar.hpp"

namespace fqmm::serial {

HaarCoeffs haar_forward(const PiecewiseConstantFn& f) {
  HaarCoeffs out(f.level());
  std::vector<double> means(f.begin(), f.end());
  for (int n = f.level() - 1; n >= 0; --n) {
    const std::size_t half = std::size_t{1} << n;
    const double scale = std::sqrt(std::ldexp(1.0, -n));
    for (std::size_t i = 0; i < half; ++i) {
      const double a = means[2 * i];
      const double b = means[2 * i + 1];
      out[half + i] = scale * (0.5 * (a - b));
      means[i] = 0.5 * (a + b);  // i <= 2i, already consumed
    }
  }
  out[0] = means[0];
  return out;
}

PiecewiseConstantFn haar_inverse(const HaarCoeffs& c) {
  std::vector<double> means(c.size());
  means[0] = c[0];
  for (int n = 0; n < c.level(); ++n) {
    const std::size_t half = std::size_t{1} << n;
    const double scale = std::sqrt(std::ldexp(1.0, -n));
    for (std::size_t i = half; i-- > 0;) {  // descending: writes 2i, 2i+1 >= i
      const double m = means[i];
      const double d = c[half + i] / scale;
      means[2 * i] = m + d;
      means[2 * i + 1] = m - d;
    }
  }
  return PiecewiseConstantFn(c.level(), std::move(means));
}

PiecewiseConstantFn apply_c_grid(const PiecewiseConstantFn& f) {
  const int level = f.level();
  PiecewiseConstantFn out(level);
  for (std::size_t j = 0; j < f.size(); ++j) {
    double acc = std::ldexp(1.0, -level) * f[j];
    for (int k = 1; k <= level; ++k) acc += std::ldexp(1.0, -k) * f[j ^ digit_mask(k, level)];
    out[j] = acc;
  }
  return out;
}

HaarCoeffs fast_apply_c(const HaarCoeffs& c) {
  HaarCoeffs out(c.level());
  out[0] = c[0];
  for (int n = 0; n < c.level(); ++n) {
    const std::size_t base = std::size_t{1} << n;
    for (std::size_t i = 0; i < base; ++i) {
      // Finest digit first.
      double acc = 0.0;
      for (int j = n; j >= 1; --j) acc += std::ldexp(1.0, -j) * c[base + (i ^ digit_mask(j, n))];
      out[base + i] = acc;
    }
  }
  return out;
}

HaarCoeffs b_transform(const HaarCoeffs& c) {
  constexpr double r = std::numbers::sqrt2 / 2.0;
  HaarCoeffs out = c;
  for (int n = 1; n < c.level(); ++n) {
    const std::size_t base = std::size_t{1} << n;
    for (std::size_t stride = 1; stride < base; stride <<= 1) {
      for (std::size_t i = 0; i < base; ++i) {
        if (i & stride) continue;
        const double a = out[base + i];
        const double b = out[base + i + stride];
        out[base + i] = r * (b - a);
        out[base + i + stride] = r * (a + b);
      }
    }
  }
  return out;
}

std::vector<double> apply_ck(const SparseOperator& op, std::span<const double> v) {
  std::vector<double> out(op.dim(), 0.0);
  for (const auto& e : op.entries()) out[e.row] += e.value * v[e.col];
  return out;
}

WignerGrid evolve_closed_form(const WignerGrid& f0, const EvolutionParams& params, Interpolation method) {
  const auto& g = f0.extents();
  WignerGrid out(g);
  for (std::size_t i = 0; i < g.nq; ++i) {
    for (std::size_t j = 0; j < g.np; ++j) {
      const auto z = characteristic_map(g.q(i), g.p(j), params.t, params.shift());
      out.at(i, j) = interpolate(f0, z.q, z.p, method);
    }
  }
  return out;
}

}  // namespace fqmm::serial
