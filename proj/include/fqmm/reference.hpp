#pragma once

// Single-threaded reference kernels. They are the readable formulation of each
// operation and are what the OpenMP kernels are tested against; the parallel
// versions must reproduce them bit for bit.

#include <span>
#include <vector>

#include "fqmm/level_array.hpp"
#include "fqmm/qubit_array.hpp"
#include "fqmm/wigner.hpp"

namespace fqmm::serial {

HaarCoeffs haar_forward(const PiecewiseConstantFn& f);
PiecewiseConstantFn haar_inverse(const HaarCoeffs& c);

PiecewiseConstantFn apply_c_grid(const PiecewiseConstantFn& f);
HaarCoeffs fast_apply_c(const HaarCoeffs& c);
HaarCoeffs b_transform(const HaarCoeffs& c);

std::vector<double> apply_ck(const SparseOperator& op, std::span<const double> v);

WignerGrid evolve_closed_form(const WignerGrid& f0, const EvolutionParams& params,
                              Interpolation method = Interpolation::Bilinear);

}  // namespace fqmm::serial
