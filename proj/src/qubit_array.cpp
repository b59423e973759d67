#include "fqmm/qubit_array.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "fqmm/dyadic_haar.hpp"
#include "fqmm/error.hpp"
#include "parallel.hpp"

namespace fqmm {

namespace {

bool entry_less(const SparseEntry& a, const SparseEntry& b) {
  return a.row != b.row ? a.row < b.row : a.col < b.col;
}

void check_qubits(int qubits, int cap, const char* what) {
  if (qubits < 1 || qubits > cap) {
    throw PreconditionError(std::string(what) + ": K = " + std::to_string(qubits) + " outside [1, " +
                            std::to_string(cap) + "]");
  }
}

}  // namespace

SparseOperator::SparseOperator(std::size_t dim, std::vector<SparseEntry> entries)
    : dim_(dim), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.row >= dim_ || e.col >= dim_) {
      throw PreconditionError("SparseOperator: entry (" + std::to_string(e.row) + ", " +
                              std::to_string(e.col) + ") outside dimension " + std::to_string(dim_));
    }
  }
  if (!std::is_sorted(entries_.begin(), entries_.end(), entry_less)) {
    std::sort(entries_.begin(), entries_.end(), entry_less);
  }
  const auto dup = std::adjacent_find(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) {
    return a.row == b.row && a.col == b.col;
  });
  if (dup != entries_.end()) {
    throw PreconditionError("SparseOperator: duplicate entry (" + std::to_string(dup->row) + ", " +
                            std::to_string(dup->col) + ")");
  }

  row_offsets_.assign(dim_ + 1, 0);
  for (const auto& e : entries_) ++row_offsets_[e.row + 1];
  for (std::size_t r = 0; r < dim_; ++r) row_offsets_[r + 1] += row_offsets_[r];

  symmetric_ = std::all_of(entries_.begin(), entries_.end(), [this](const SparseEntry& e) {
    const auto first = entries_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[e.col]);
    const auto last = entries_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[e.col + 1]);
    const SparseEntry probe{e.col, e.row, 0.0};
    const auto it = std::lower_bound(first, last, probe, entry_less);
    return it != last && it->col == e.row && it->value == e.value;
  });
}

DenseMatrix SparseOperator::to_dense() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  DenseMatrix m = DenseMatrix::Zero(n, n);
  for (const auto& e : entries_) m(e.row, e.col) = e.value;
  return m;
}

DenseMatrix DiagonalOperator::to_dense() const {
  return Eigen::Map<const Eigen::VectorXd>(diag.data(), static_cast<Eigen::Index>(diag.size())).asDiagonal();
}

SparseOperator build_ck(int qubits, double lambda) {
  check_qubits(qubits, kMaxQubits, "build_ck");
  const std::size_t dim = dim_of_level(qubits);
  std::vector<SparseEntry> entries(dim * static_cast<std::size_t>(qubits));
  const auto rows = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(static) if (rows >= detail::kParallelThreshold)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const auto b = static_cast<std::size_t>(r);
    auto* row = entries.data() + b * static_cast<std::size_t>(qubits);
    for (int k = 1; k <= qubits; ++k) {
      row[k - 1] = {static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b ^ digit_mask(k, qubits)),
                    lambda * std::ldexp(1.0, -k)};
    }
    std::sort(row, row + qubits, entry_less);
  }
  return SparseOperator(dim, std::move(entries));
}

namespace {

// sum_k -2^{-(k+1)} (1 - 2 b_k): exact dyadic arithmetic, scaled by Omega once.
double vk_unit_diagonal(std::size_t b, int qubits) {
  double acc = 0.0;
  for (int k = 1; k <= qubits; ++k) {
    const double sz = (b & digit_mask(k, qubits)) ? -1.0 : 1.0;
    acc -= std::ldexp(sz, -(k + 1));
  }
  return acc;
}

}  // namespace

DiagonalOperator build_vk(int qubits, double omega) {
  check_qubits(qubits, kMaxQubits, "build_vk");
  DiagonalOperator v;
  v.diag.resize(dim_of_level(qubits));
  for (std::size_t b = 0; b < v.diag.size(); ++b) v.diag[b] = omega * vk_unit_diagonal(b, qubits);
  return v;
}

std::vector<double> apply_ck(const SparseOperator& op, std::span<const double> v) {
  if (v.size() != op.dim()) {
    throw PreconditionError("apply_ck: vector of length " + std::to_string(v.size()) +
                            " for operator of dimension " + std::to_string(op.dim()));
  }
  std::vector<double> out(op.dim(), 0.0);
  const auto entries = op.entries();
  const auto rows = static_cast<std::ptrdiff_t>(op.dim());
#pragma omp parallel for schedule(static) if (rows >= detail::kParallelThreshold)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const auto row = static_cast<std::size_t>(r);
    double acc = 0.0;
    for (std::size_t e = op.row_begin(row); e < op.row_begin(row + 1); ++e) acc += entries[e].value * v[entries[e].col];
    out[row] = acc;
  }
  return out;
}

namespace {

DenseMatrix kron_power_u(int qubits) {
  DenseMatrix u(2, 2);
  u << -1.0, 1.0, 1.0, 1.0;
  u *= std::numbers::sqrt2 / 2.0;
  DenseMatrix out = DenseMatrix::Identity(1, 1);
  for (int q = 0; q < qubits; ++q) {
    DenseMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block<2, 2>(2 * i, 2 * j) = out(i, j) * u;
    out = std::move(next);
  }
  return out;
}

double spectral_mismatch(Eigen::VectorXd a, Eigen::VectorXd b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double direct = (a - b).cwiseAbs().maxCoeff();
  Eigen::VectorXd nb = -b;
  std::sort(nb.begin(), nb.end());
  return std::min(direct, (a - nb).cwiseAbs().maxCoeff());
}

}  // namespace

UnitaryEquivalence unitary_equivalence_check(int qubits, double lambda, double omega) {
  check_qubits(qubits, 10, "unitary_equivalence_check");
  if (omega == 0.0) throw PreconditionError("unitary_equivalence_check: Omega must be nonzero");

  const DenseMatrix u = kron_power_u(qubits);
  const DenseMatrix rotated = u * build_ck(qubits, lambda).to_dense() * u;
  const auto vk = build_vk(qubits, omega);
  const Eigen::Map<const Eigen::VectorXd> vdiag(vk.diag.data(), static_cast<Eigen::Index>(vk.diag.size()));

  UnitaryEquivalence result;
  result.constant = rotated.diagonal().dot(vdiag) / vdiag.squaredNorm();
  DenseMatrix residual = rotated;
  residual.diagonal() -= result.constant * vdiag;
  result.residual = residual.cwiseAbs().maxCoeff();

  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(build_ck(qubits, 1.0).to_dense(), Eigen::EigenvaluesOnly);
  result.spectral_mismatch = spectral_mismatch(solver.eigenvalues(), (2.0 / omega) * vdiag);

  const double scale = std::max(1.0, std::abs(result.constant));
  if (result.residual > 1e-12 * scale) {
    throw ConsistencyError("unitary_equivalence_check: U C_K U deviates from c V_K by " +
                           std::to_string(result.residual));
  }
  if (result.spectral_mismatch > 1e-10) {
    throw ConsistencyError("unitary_equivalence_check: spectra differ by " +
                           std::to_string(result.spectral_mismatch));
  }
  return result;
}

double continuum_correspondence_check(int qubits) {
  check_qubits(qubits, kDenseQubitCap, "continuum_correspondence_check");
  DenseMatrix expected = build_ck(qubits, 1.0).to_dense();
  expected.diagonal().array() += std::ldexp(1.0, -qubits);
  return (restricted_matrix(qubits) - expected).cwiseAbs().maxCoeff();
}

}  // namespace fqmm
