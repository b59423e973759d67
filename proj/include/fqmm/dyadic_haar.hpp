#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fqmm/level_array.hpp"

namespace fqmm {

/// First L dyadic digits (alpha_1, ..., alpha_L) shared by every x in cell j.
/// alpha_1 is the most significant bit of j. Under the infinite-expansion
/// convention every point of (j/2^L, (j+1)/2^L] has these leading digits.
std::vector<std::uint8_t> dyadic_digits(std::size_t cell, int level);

/// Bit mask that flips dyadic digit `digit` (1-based, 1 = most significant)
/// of a cell index at the given level.
inline std::size_t digit_mask(int digit, int level) {
  return std::size_t{1} << (level - digit);
}

/// Position of H_{n,k} in the canonical coefficient order.
inline std::size_t haar_index(int n, std::size_t k) { return (std::size_t{1} << n) + k; }

struct HaarLabel {
  bool is_constant = false;  // slot 0 (G_{0,0})
  int n = 0;
  std::size_t k = 0;
};

/// Inverse of haar_index; slot 0 maps to the constant G.
HaarLabel haar_label(std::size_t index);

/// Exact sampling of H_{n,k} at level L (requires L >= n+1, 0 <= k < 2^n).
PiecewiseConstantFn haar_basis_function(int n, std::size_t k, int level);

/// Exact sampling of G = G_{0,0} (identically 1) at level L.
PiecewiseConstantFn constant_function(int level);

/// Orthonormal Haar transform by the pairwise average/difference pyramid.
HaarCoeffs haar_forward(const PiecewiseConstantFn& f);
PiecewiseConstantFn haar_inverse(const HaarCoeffs& c);

ComplexHaarCoeffs haar_forward(const ComplexPiecewiseFn& f);
ComplexPiecewiseFn haar_inverse(const ComplexHaarCoeffs& c);

}  // namespace fqmm
