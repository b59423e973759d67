#include "fqmm/potential.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fqmm/dyadic_haar.hpp"
#include "fqmm/error.hpp"

namespace fqmm {

int periodized_haar_sign(std::size_t cell, int level, int k) {
  if (k < 1 || k > level) {
    throw PreconditionError("periodized_haar_sign: digit " + std::to_string(k) + " outside [1, " +
                            std::to_string(level) + "]");
  }
  return (cell & digit_mask(k, level)) ? -1 : 1;
}

PiecewiseConstantFn rademacher_partial_sum(const PotentialSpec& spec, int level) {
  if (spec.terms < 1) throw PreconditionError("rademacher_partial_sum: K must be >= 1");
  if (level < spec.terms) {
    throw PreconditionError("rademacher_partial_sum: level " + std::to_string(level) + " < K = " +
                            std::to_string(spec.terms));
  }
  PiecewiseConstantFn v(level);
  for (std::size_t j = 0; j < v.size(); ++j) {
    double acc = 0.0;  // dyadic, exact
    for (int k = 1; k <= spec.terms; ++k) acc -= std::ldexp(periodized_haar_sign(j, level, k), -(k + 1));
    v[j] = spec.omega * acc;
  }
  return v;
}

double potential_haar_coefficient(int scale, double omega) {
  if (scale < 0) throw PreconditionError("potential_haar_coefficient: scale must be >= 0");
  // 2^{-3k/2 - 2}, split into an exact power of two and a 1/sqrt(2) for odd k.
  const double magnitude = (scale % 2 == 0) ? std::ldexp(1.0, -(3 * scale) / 2 - 2)
                                            : std::ldexp(std::numbers::sqrt2 / 2.0, -(3 * scale - 1) / 2 - 2);
  return -omega * magnitude;
}

PiecewiseConstantFn potential_multiplier(int level, double omega) {
  PiecewiseConstantFn m(level);
  for (std::size_t j = 0; j < m.size(); ++j) m[j] = omega * (cell_midpoint(j, level) - 0.5);
  return m;
}

PiecewiseConstantFn apply_potential(const PiecewiseConstantFn& f, double omega) {
  PiecewiseConstantFn out = potential_multiplier(f.level(), omega);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] *= f[j];
  return out;
}

}  // namespace fqmm
