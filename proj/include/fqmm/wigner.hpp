#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace fqmm {

/// Rectangular (q, p) grid; node (i, j) sits at the centre of its cell.
struct GridExtents {
  double q_min = -6.0;
  double q_max = 6.0;
  double p_min = -6.0;
  double p_max = 6.0;
  std::size_t nq = 256;
  std::size_t np = 256;

  double dq() const { return (q_max - q_min) / static_cast<double>(nq); }
  double dp() const { return (p_max - p_min) / static_cast<double>(np); }
  double q(std::size_t i) const { return q_min + (static_cast<double>(i) + 0.5) * dq(); }
  double p(std::size_t j) const { return p_min + (static_cast<double>(j) + 0.5) * dp(); }

  void validate() const;
  friend bool operator==(const GridExtents&, const GridExtents&) = default;
};

/// Phase-space function sampled on a GridExtents, row-major with q as the
/// slow index: values[i * np + j] = f(q_i, p_j).
class WignerGrid {
 public:
  WignerGrid() = default;
  explicit WignerGrid(const GridExtents& extents, double fill = 0.0);
  WignerGrid(const GridExtents& extents, std::vector<double> values);

  const GridExtents& extents() const { return extents_; }
  std::size_t nq() const { return extents_.nq; }
  std::size_t np() const { return extents_.np; }

  double& at(std::size_t i, std::size_t j) { return values_[i * extents_.np + j]; }
  double at(std::size_t i, std::size_t j) const { return values_[i * extents_.np + j]; }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  /// Midpoint-rule integral of f.
  double integral() const;
  /// Midpoint-rule integral of f^2.
  double integral_of_square() const;
  /// (int q f, int p f) / int f.
  std::pair<double, double> centroid() const;

 private:
  GridExtents extents_{};
  std::vector<double> values_;
};

/// sqrt(dq dp sum (a-b)^2). Grids must share extents.
double l2_distance(const WignerGrid& a, const WignerGrid& b);

enum class Interpolation { Bilinear, Bicubic };

/// f evaluated at an off-grid point. Points outside the node hull are 0.
double interpolate(const WignerGrid& f, double q, double p, Interpolation method);

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

struct EvolutionParams {
  double lambda = 1.0;
  double eigenvalue = 0.0;  // QMM eigenvalue E
  double t = 0.0;

  double shift() const { return lambda * eigenvalue; }
  PhasePoint center() const { return {-shift(), 0.0}; }
};

/// Rotation by angle t about (-lambda E, 0):
///   (q', p') = R(t) (q + lambda E, p) - (lambda E, 0).
PhasePoint characteristic_map(double q, double p, double t, double shift);

/// Exact solution of the transport equation below:
/// f(t, q, p) = f0(characteristic_map(q, p, t, lambda E)).
WignerGrid evolve_closed_form(const WignerGrid& f0, const EvolutionParams& params,
                              Interpolation method = Interpolation::Bilinear);

/// Semi-Lagrangian integration of d_t f = (q + lambda E) d_p f - p d_q f in
/// ceil(t / dt) equal steps.
WignerGrid evolve_numeric(const WignerGrid& f0, const EvolutionParams& params, double dt,
                          Interpolation method = Interpolation::Bilinear);

/// Normalised isotropic Gaussian (1/(2 pi sigma^2)) exp(-|z - z0|^2 / (2 sigma^2)),
/// rescaled so its midpoint-rule mass is 1. The grid must cover 5 sigma around
/// (q0, p0).
WignerGrid coherent_wigner(const GridExtents& extents, double q0, double p0, double sigma);

struct RotationCenter {
  double eigenvalue = 0.0;
  double center_q = 0.0;
};

/// All eigenvalues s(2k+1)/2^n of C for 1 <= n <= n_max, with the rotation
/// centre -lambda E each selects. Sorted by n, then by E.
std::vector<RotationCenter> center_set(double lambda, int n_max);

struct CircleFit {
  double center_q = 0.0;
  double center_p = 0.0;
  double radius = 0.0;
};

/// Algebraic least-squares circle through the points (needs >= 3).
CircleFit fit_circle(const std::vector<PhasePoint>& points);

struct DisplacedSpectrum {
  std::vector<double> eigenvalues;  // lowest levels of 1/2(P^2+Q^2) + eps Q
  double shift = 0.0;               // mean of eigenvalue_n - (n + 1/2)
  double max_deviation = 0.0;       // max |eigenvalue_n - (n + 1/2) + eps^2/2|
};

/// Finite-difference oracle for the displacement identity
/// H_F + eps Q = T^dagger H_F T - eps^2/2. grid_size >= 512.
DisplacedSpectrum displaced_spectrum_check(double eps, std::size_t grid_size = 1024,
                                           std::size_t levels = 20);

}  // namespace fqmm
