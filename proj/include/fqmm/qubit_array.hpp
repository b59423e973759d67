#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fqmm/coupling_operator.hpp"

namespace fqmm {

inline constexpr int kMaxQubits = 20;
inline constexpr int kDenseQubitCap = 12;

struct SparseEntry {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  double value = 0.0;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Real square sparse matrix in coordinate form. Entries are kept sorted by
/// (row, col); duplicates are rejected at construction.
class SparseOperator {
 public:
  SparseOperator(std::size_t dim, std::vector<SparseEntry> entries);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return entries_.size(); }
  std::span<const SparseEntry> entries() const { return entries_; }
  bool symmetric() const { return symmetric_; }

  /// Entries of row r are entries()[row_begin(r) .. row_begin(r+1)).
  std::size_t row_begin(std::size_t r) const { return row_offsets_[r]; }

  DenseMatrix to_dense() const;

 private:
  std::size_t dim_;
  std::vector<SparseEntry> entries_;
  std::vector<std::size_t> row_offsets_;
  bool symmetric_ = false;
};

struct DiagonalOperator {
  std::vector<double> diag;
  std::size_t dim() const { return diag.size(); }
  DenseMatrix to_dense() const;
};

/// C_K = sum_k (lambda/2^k) sigma_x^k on K qubits; qubit 1 is the most
/// significant bit of the basis index.
SparseOperator build_ck(int qubits, double lambda);

/// V_K = sum_k -(Omega/2^{k+1}) sigma_z^k with sigma_z|0> = +|0>.
DiagonalOperator build_vk(int qubits, double omega);

/// Sparse mat-vec.
std::vector<double> apply_ck(const SparseOperator& op, std::span<const double> v);

struct UnitaryEquivalence {
  double constant = 0.0;           // fitted c in U C_K U = c V_K
  double residual = 0.0;           // max |U C_K U - c V_K|
  double spectral_mismatch = 0.0;  // max eigenvalue gap between C_K(1) and (2/Omega) V_K, up to sign
};

/// Dense check of U C_K(lambda) U = (2 lambda / Omega) V_K(Omega), U = u^{(x)K}
/// (K <= 10). Throws ConsistencyError beyond 1e-12 (entrywise) or 1e-10
/// (spectra).
UnitaryEquivalence unitary_equivalence_check(int qubits, double lambda = 1.0, double omega = 1.0);

/// max |restricted_matrix(K) - (C_K(1) + 2^{-K} I)| (K <= 12).
double continuum_correspondence_check(int qubits);

}  // namespace fqmm
