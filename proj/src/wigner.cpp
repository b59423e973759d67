#include "fqmm/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "fqmm/coupling_operator.hpp"
#include "fqmm/error.hpp"
#include "parallel.hpp"

namespace fqmm {

void GridExtents::validate() const {
  if (!(q_max > q_min) || !(p_max > p_min)) throw PreconditionError("GridExtents: empty extent");
  if (nq < 2 || np < 2) throw PreconditionError("GridExtents: need at least 2 nodes per axis");
}

WignerGrid::WignerGrid(const GridExtents& extents, double fill) : extents_(extents) {
  extents_.validate();
  values_.assign(extents_.nq * extents_.np, fill);
}

WignerGrid::WignerGrid(const GridExtents& extents, std::vector<double> values)
    : extents_(extents), values_(std::move(values)) {
  extents_.validate();
  if (values_.size() != extents_.nq * extents_.np) {
    throw PreconditionError("WignerGrid: expected " + std::to_string(extents_.nq * extents_.np) +
                            " values, got " + std::to_string(values_.size()));
  }
}

double WignerGrid::integral() const {
  double acc = 0.0;
  for (double v : values_) acc += v;
  return acc * extents_.dq() * extents_.dp();
}

double WignerGrid::integral_of_square() const {
  double acc = 0.0;
  for (double v : values_) acc += v * v;
  return acc * extents_.dq() * extents_.dp();
}

std::pair<double, double> WignerGrid::centroid() const {
  double mass = 0.0, mq = 0.0, mp = 0.0;
  for (std::size_t i = 0; i < nq(); ++i) {
    const double q = extents_.q(i);
    for (std::size_t j = 0; j < np(); ++j) {
      const double v = at(i, j);
      mass += v;
      mq += q * v;
      mp += extents_.p(j) * v;
    }
  }
  if (mass == 0.0) throw PreconditionError("WignerGrid::centroid: zero mass");
  return {mq / mass, mp / mass};
}

double l2_distance(const WignerGrid& a, const WignerGrid& b) {
  if (!(a.extents() == b.extents())) throw PreconditionError("l2_distance: grids differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    const double d = a.values()[i] - b.values()[i];
    acc += d * d;
  }
  return std::sqrt(acc * a.extents().dq() * a.extents().dp());
}

namespace {

// Fractional node coordinate inside the node hull [0, n-1], or -1 outside.
// A tolerance of 1e-9 nodes absorbs rounding of exact node preimages.
double node_coordinate(double x, double lo, double spacing, std::size_t n) {
  const double f = (x - lo) / spacing - 0.5;
  constexpr double kSlack = 1e-9;
  const double last = static_cast<double>(n - 1);
  if (!(f >= -kSlack && f <= last + kSlack)) return -1.0;
  return std::clamp(f, 0.0, last);
}

// Keys cubic convolution kernel weights (a = -1/2) for offsets -1, 0, 1, 2.
std::array<double, 4> cubic_weights(double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return {-0.5 * t3 + t2 - 0.5 * t, 1.5 * t3 - 2.5 * t2 + 1.0, -1.5 * t3 + 2.0 * t2 + 0.5 * t,
          0.5 * t3 - 0.5 * t2};
}

}  // namespace

double interpolate(const WignerGrid& f, double q, double p, Interpolation method) {
  const auto& g = f.extents();
  const double fi = node_coordinate(q, g.q_min, g.dq(), g.nq);
  const double fj = node_coordinate(p, g.p_min, g.dp(), g.np);
  if (fi < 0.0 || fj < 0.0) return 0.0;
  const auto i0 = std::min(static_cast<std::size_t>(fi), g.nq - 2);
  const auto j0 = std::min(static_cast<std::size_t>(fj), g.np - 2);
  const double tq = fi - static_cast<double>(i0);
  const double tp = fj - static_cast<double>(j0);

  if (method == Interpolation::Bilinear) {
    return (1 - tq) * ((1 - tp) * f.at(i0, j0) + tp * f.at(i0, j0 + 1)) +
           tq * ((1 - tp) * f.at(i0 + 1, j0) + tp * f.at(i0 + 1, j0 + 1));
  }

  const auto wq = cubic_weights(tq);
  const auto wp = cubic_weights(tp);
  double acc = 0.0;
  for (int a = 0; a < 4; ++a) {
    const auto i = static_cast<std::ptrdiff_t>(i0) + a - 1;
    if (i < 0 || i >= static_cast<std::ptrdiff_t>(g.nq)) continue;  // zero outside
    double row = 0.0;
    for (int b = 0; b < 4; ++b) {
      const auto j = static_cast<std::ptrdiff_t>(j0) + b - 1;
      if (j < 0 || j >= static_cast<std::ptrdiff_t>(g.np)) continue;
      row += wp[static_cast<std::size_t>(b)] * f.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    acc += wq[static_cast<std::size_t>(a)] * row;
  }
  return acc;
}

PhasePoint characteristic_map(double q, double p, double t, double shift) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  const double qs = q + shift;
  return {c * qs - s * p - shift, s * qs + c * p};
}

WignerGrid evolve_closed_form(const WignerGrid& f0, const EvolutionParams& params, Interpolation method) {
  // The transport equation moves phase-space points clockwise about the centre,
  // so the value at z is carried from the counter-clockwise rotation of z.
  const auto& g = f0.extents();
  WignerGrid out(g);
  const double c = std::cos(params.t);
  const double s = std::sin(params.t);
  const double shift = params.shift();
  const auto rows = static_cast<std::ptrdiff_t>(g.nq);
#pragma omp parallel for schedule(static) if (rows * static_cast<std::ptrdiff_t>(g.np) >= detail::kParallelThreshold)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const auto i = static_cast<std::size_t>(r);
    const double qs = g.q(i) + shift;
    for (std::size_t j = 0; j < g.np; ++j) {
      const double p = g.p(j);
      out.at(i, j) = interpolate(f0, c * qs - s * p - shift, s * qs + c * p, method);
    }
  }
  return out;
}

namespace {

// Backward RK4 step of dq/dt = p, dp/dt = -(q + shift) over time h.
PhasePoint backtrace_rk4(PhasePoint z, double h, double shift) {
  auto velocity = [shift](PhasePoint x) { return PhasePoint{x.p, -(x.q + shift)}; };
  const double dt = -h;
  const PhasePoint k1 = velocity(z);
  const PhasePoint k2 = velocity({z.q + 0.5 * dt * k1.q, z.p + 0.5 * dt * k1.p});
  const PhasePoint k3 = velocity({z.q + 0.5 * dt * k2.q, z.p + 0.5 * dt * k2.p});
  const PhasePoint k4 = velocity({z.q + dt * k3.q, z.p + dt * k3.p});
  return {z.q + dt / 6.0 * (k1.q + 2 * k2.q + 2 * k3.q + k4.q),
          z.p + dt / 6.0 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p)};
}

}  // namespace

WignerGrid evolve_numeric(const WignerGrid& f0, const EvolutionParams& params, double dt, Interpolation method) {
  if (!(dt > 0.0)) throw PreconditionError("evolve_numeric: dt must be positive");
  const auto& g = f0.extents();
  const auto steps = static_cast<std::size_t>(std::ceil(std::abs(params.t) / dt - 1e-12));
  if (steps == 0) return f0;
  const double h = params.t / static_cast<double>(steps);
  const double shift = params.shift();

  // Departure points are the same every step; trace them once.
  std::vector<PhasePoint> departure(g.nq * g.np);
  for (std::size_t i = 0; i < g.nq; ++i)
    for (std::size_t j = 0; j < g.np; ++j) departure[i * g.np + j] = backtrace_rk4({g.q(i), g.p(j)}, h, shift);

  WignerGrid current = f0;
  WignerGrid next(g);
  const auto nodes = static_cast<std::ptrdiff_t>(departure.size());
  for (std::size_t step = 0; step < steps; ++step) {
#pragma omp parallel for schedule(static) if (nodes >= detail::kParallelThreshold)
    for (std::ptrdiff_t n = 0; n < nodes; ++n) {
      const auto& z = departure[static_cast<std::size_t>(n)];
      next.values()[static_cast<std::size_t>(n)] = interpolate(current, z.q, z.p, method);
    }
    std::swap(current, next);
  }
  return current;
}

WignerGrid coherent_wigner(const GridExtents& extents, double q0, double p0, double sigma) {
  if (!(sigma > 0.0)) throw PreconditionError("coherent_wigner: sigma must be positive");
  extents.validate();
  const double reach = 5.0 * sigma;
  if (q0 - reach < extents.q_min || q0 + reach > extents.q_max || p0 - reach < extents.p_min ||
      p0 + reach > extents.p_max) {
    throw PreconditionError("coherent_wigner: grid must cover 5 sigma around (q0, p0)");
  }
  WignerGrid f(extents);
  const double norm = 1.0 / (2.0 * std::numbers::pi * sigma * sigma);
  for (std::size_t i = 0; i < extents.nq; ++i) {
    const double dq = extents.q(i) - q0;
    for (std::size_t j = 0; j < extents.np; ++j) {
      const double dp = extents.p(j) - p0;
      f.at(i, j) = norm * std::exp(-(dq * dq + dp * dp) / (2.0 * sigma * sigma));
    }
  }
  const double mass = f.integral();
  for (double& v : f.values()) v /= mass;
  return f;
}

std::vector<RotationCenter> center_set(double lambda, int n_max) {
  if (n_max < 0 || n_max > 20) throw PreconditionError("center_set: n_max must be in [0, 20]");
  std::vector<RotationCenter> centers;
  for (int n = 1; n <= n_max; ++n) {
    for (std::size_t pos = 0; pos < (std::size_t{1} << n); ++pos) {
      const double e = diagonal_eigenvalue(n, pos);
      centers.push_back({e, -lambda * e});
    }
  }
  return centers;
}

CircleFit fit_circle(const std::vector<PhasePoint>& points) {
  if (points.size() < 3) throw PreconditionError("fit_circle: need at least 3 points");
  // x^2 + y^2 + D x + E y + F = 0 in the least-squares sense.
  Eigen::MatrixXd a(static_cast<Eigen::Index>(points.size()), 3);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    a(r, 0) = points[i].q;
    a(r, 1) = points[i].p;
    a(r, 2) = 1.0;
    rhs(r) = -(points[i].q * points[i].q + points[i].p * points[i].p);
  }
  const Eigen::Vector3d sol = a.colPivHouseholderQr().solve(rhs);
  CircleFit fit;
  fit.center_q = -0.5 * sol(0);
  fit.center_p = -0.5 * sol(1);
  fit.radius = std::sqrt(std::max(0.0, fit.center_q * fit.center_q + fit.center_p * fit.center_p - sol(2)));
  return fit;
}

DisplacedSpectrum displaced_spectrum_check(double eps, std::size_t grid_size, std::size_t levels) {
  if (grid_size < 512) throw PreconditionError("displaced_spectrum_check: grid_size must be >= 512");
  if (grid_size > 4096) throw PreconditionError("displaced_spectrum_check: grid_size must be <= 4096");
  if (levels < 1 || levels > grid_size / 16) throw PreconditionError("displaced_spectrum_check: bad level count");

  // Dirichlet box wide enough for the highest requested level around -eps.
  const double turning = std::sqrt(2.0 * static_cast<double>(levels) + 1.0);
  const double half_width = turning + 8.0 + std::abs(eps);
  const auto n = static_cast<Eigen::Index>(grid_size);
  const double h = 2.0 * half_width / static_cast<double>(grid_size + 1);

  // -1/2 d^2/dq^2 with the fourth-order five-point stencil.
  const double kin = -0.5 / (12.0 * h * h);
  Eigen::MatrixXd ham = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double q = -half_width + static_cast<double>(i + 1) * h;
    ham(i, i) = kin * -30.0 + 0.5 * q * q + eps * q;
    if (i + 1 < n) ham(i, i + 1) = ham(i + 1, i) = kin * 16.0;
    if (i + 2 < n) ham(i, i + 2) = ham(i + 2, i) = kin * -1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(ham, Eigen::EigenvaluesOnly);

  DisplacedSpectrum out;
  double total = 0.0;
  for (std::size_t k = 0; k < levels; ++k) {
    const double e = solver.eigenvalues()(static_cast<Eigen::Index>(k));
    out.eigenvalues.push_back(e);
    const double offset = e - (static_cast<double>(k) + 0.5);
    total += offset;
    out.max_deviation = std::max(out.max_deviation, std::abs(offset + 0.5 * eps * eps));
  }
  out.shift = total / static_cast<double>(levels);
  return out;
}

}  // namespace fqmm
