#pragma once

#include "fqmm/level_array.hpp"

namespace fqmm {

struct PotentialSpec {
  double omega = 1.0;
  int terms = 1;  // truncation K
};

/// K-term periodised-Haar (Rademacher) partial sum
///   V_K(x) = -Omega sum_{k=1}^{K} 2^{-(k+1)} H#(2^{k-1} x)
/// sampled on the level-L grid (L >= K).
PiecewiseConstantFn rademacher_partial_sum(const PotentialSpec& spec, int level);

/// Common Haar coefficient -Omega 2^{-3k/2-2} of Omega(x - 1/2) at scale k.
double potential_haar_coefficient(int scale, double omega);

/// Multiplier Omega(x - 1/2) applied cell-wise at cell midpoints.
PiecewiseConstantFn apply_potential(const PiecewiseConstantFn& f, double omega);

/// Cell-midpoint samples of Omega(x - 1/2).
PiecewiseConstantFn potential_multiplier(int level, double omega);

/// Value of H#(2^{k-1} x) on cell `cell` of the given level (k <= level),
/// read off dyadic digit k: +1 if alpha_k = 0, -1 otherwise.
int periodized_haar_sign(std::size_t cell, int level, int k);

}  // namespace fqmm
