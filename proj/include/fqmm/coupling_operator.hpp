#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fqmm/level_array.hpp"

namespace fqmm {

using DenseMatrix = Eigen::MatrixXd;

/// Largest size accepted by the dense oracles (restricted_matrix, block_dn).
inline constexpr int kDenseLevelCap = 12;

// ---------------------------------------------------------------------------
// Multiresolution view of a coefficient vector.

/// Partition of a length-2^L Haar vector into the G slot and the W_n slots
/// [2^n, 2^{n+1}), n = 0 .. L-1.
class HaarBlockView {
 public:
  explicit HaarBlockView(int level) : level_(level) {}

  int level() const { return level_; }
  int block_count() const { return level_; }
  std::size_t block_begin(int n) const { return std::size_t{1} << n; }
  std::size_t block_size(int n) const { return std::size_t{1} << n; }

  template <typename T>
  std::span<T> block(std::span<T> coeffs, int n) const {
    return coeffs.subspan(block_begin(n), block_size(n));
  }

 private:
  int level_;
};

// ---------------------------------------------------------------------------
// Eigenvalue labels.

enum class Sign : std::int8_t { Minus = -1, Plus = 1 };

/// Label (n, k, s) of the eigenvalue s(2k+1)/2^n of D_n, 0 <= k < 2^{n-1}.
struct EigenIndex {
  int n = 1;
  std::size_t k = 0;
  Sign s = Sign::Plus;

  double eigenvalue() const;
  friend bool operator==(const EigenIndex&, const EigenIndex&) = default;
};

/// s in {+1,-1}^n with s_1 first; eigenvalue sum_j s_j 2^{-j}.
struct SignString {
  std::vector<int> signs;

  int n() const { return static_cast<int>(signs.size()); }
  friend bool operator==(const SignString&, const SignString&) = default;
};

void validate(const EigenIndex& idx);
void validate(const SignString& s);

double sign_string_eigenvalue(const SignString& s);

struct EigenLabel {
  EigenIndex index;
  SignString signs;
};

/// Recovers (n,k,s) and the sign string of an eigenvalue E = +-(2k+1)/2^n.
/// Throws PreconditionError when E is not of that form.
EigenLabel eigen_index_from_value(int n, double eigenvalue);

SignString sign_string_of(const EigenIndex& idx);
EigenIndex eigen_index_of(const SignString& s);

/// Position, inside the W_n slot, of the diagonal entry of E_n that carries
/// this eigenvalue (E_n is sorted increasingly).
std::size_t diagonal_position(const SignString& s);

/// Eigenvalue carried by diagonal position `pos` of E_n.
double diagonal_eigenvalue(int n, std::size_t pos);

// ---------------------------------------------------------------------------
// Operator application.

/// C restricted to V_L, evaluated directly on cell values:
/// out[j] = sum_{k=1}^{L} 2^{-k} f[j ^ digit_k] + 2^{-L} f[j].
PiecewiseConstantFn apply_c_grid(const PiecewiseConstantFn& f);

/// C in the Haar basis: identity on slot 0, D_n on every W_n slot.
HaarCoeffs fast_apply_c(const HaarCoeffs& c);

/// haar_inverse(fast_apply_c(haar_forward(f))).
PiecewiseConstantFn apply_c_haar(const PiecewiseConstantFn& f);

enum class Direction { Forward, Inverse };

/// Applies u^{(x)n}, u = (sigma_x - sigma_z)/sqrt(2), to every W_n slot with
/// n >= 1. u is a self-adjoint involution, so both directions coincide.
HaarCoeffs b_transform(const HaarCoeffs& c, Direction direction = Direction::Forward);
ComplexHaarCoeffs b_transform(const ComplexHaarCoeffs& c,
                              Direction direction = Direction::Forward);

/// In-place u^{(x)n} on a vector of length 2^n.
void apply_u_tensor(std::span<double> v);

/// exp(i t C) f via the diagonalisation B T_H.
ComplexPiecewiseFn apply_exp_itc(double t, const PiecewiseConstantFn& f);
ComplexPiecewiseFn apply_exp_itc(double t, const ComplexPiecewiseFn& f);

// ---------------------------------------------------------------------------
// Dense oracles and closed forms.

/// Matrix of C|_{V_L} in the G_{L,k} basis (L <= 12).
DenseMatrix restricted_matrix(int level);

/// D_n, the matrix of Pi_n C Pi_n in the basis (H_{n,k}) (n <= 12).
DenseMatrix block_dn(int n);

/// The 2^{n+1} x 2^n matrix whose l-th column holds H_{n,l} in the G_{n+1,k}
/// basis.
DenseMatrix jn_matrix(int n);

/// Whether J_n^T C_{n+1} J_n == D_n entrywise within `tol` (n <= 10).
bool jn_projection_check(int n, double tol = 1e-12);

/// Closed-form spectrum of D_n in increasing order. n = 0 gives {0}.
std::vector<double> dn_eigenvalues(int n);

/// Dense u^{(x)n}.
DenseMatrix u_tensor_matrix(int n);

/// Walsh-type eigenfunction of C for the given label, sampled at level L >= n+1.
PiecewiseConstantFn eigenfunction(const EigenIndex& idx, int level);

/// Number of structurally nonzero entries of I_1 (+) D_0 (+) ... (+) D_{L-1}.
std::size_t haar_representation_nnz(int level);

}  // namespace fqmm
