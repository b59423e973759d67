#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "fqmm/coupling_operator.hpp"
#include "fqmm/level_array.hpp"
#include "fqmm/qubit_array.hpp"
#include "fqmm/wigner.hpp"

namespace fqmm::io {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

// Grid functions: "# level=L" header, then one value per line.
void write_function_csv(std::ostream& out, const PiecewiseConstantFn& f);
PiecewiseConstantFn read_function_csv(std::istream& in);

// Haar coefficients: "index,n,k,value"; row 0 is G and carries n = k = -1.
void write_coeffs_csv(std::ostream& out, const HaarCoeffs& c);

// Eigenfunctions: "cell,x,value" with x the cell midpoint.
void write_eigenfunction_csv(std::ostream& out, const PiecewiseConstantFn& f);

// Spectra of D_1 .. D_{n_max}: "n,k,s,E" with s = +1 or -1. For n_max = 0 the
// single D_0 row "0,0,0,0" is written.
void write_spectrum_csv(std::ostream& out, int n_max);

// Matrix Market coordinate format, 1-based indices, general storage.
void write_matrix_market(std::ostream& out, const SparseOperator& op);
void write_matrix_market(std::ostream& out, const DenseMatrix& m);

void write_diagonal_csv(std::ostream& out, const DiagonalOperator& d);
void write_spy_csv(std::ostream& out, const SparseOperator& op);

// Potential partial sums: "cell,x,value"; coefficient table: "k,coefficient".
void write_potential_csv(std::ostream& out, const PiecewiseConstantFn& v);
void write_potential_coefficients_csv(std::ostream& out, int scales, double omega);

// Wigner frames.
void write_wigner_csv(std::ostream& out, const WignerGrid& f);

/// Writes <stem>.bin (float64, row-major, q slow) and <stem>.json
/// (extents, nq, np, t).
void write_wigner_binary(const std::filesystem::path& stem, const WignerGrid& f, double t);

struct WignerFrame {
  WignerGrid grid;
  double t = 0.0;
};
WignerFrame read_wigner_binary(const std::filesystem::path& stem);

}  // namespace fqmm::io
