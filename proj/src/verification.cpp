#include "fqmm/verification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fqmm/coupling_operator.hpp"
#include "fqmm/dyadic_haar.hpp"
#include "fqmm/error.hpp"
#include "fqmm/potential.hpp"
#include "fqmm/qubit_array.hpp"
#include "fqmm/wigner.hpp"

namespace fqmm {

namespace {

using BlockProvider = std::function<DenseMatrix(int)>;

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

PiecewiseConstantFn random_fn(std::mt19937_64& gen, int level) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  PiecewiseConstantFn f(level);
  for (auto& v : f) v = dist(gen);
  return f;
}

CheckResult bound_check(std::string name, double value, double bound) {
  return {std::move(name), value <= bound, "max deviation " + sci(value) + " (bound " + sci(bound) + ")"};
}

}  // namespace

std::vector<CheckResult> run_verification(const VerificationOptions& options) {
  const BlockProvider dn = options.flip_dn_sign ? BlockProvider([](int n) -> DenseMatrix { return -block_dn(n); })
                                                : BlockProvider([](int n) { return block_dn(n); });
  std::mt19937_64 gen(20240611);
  std::vector<CheckResult> results;

  auto run = [&results](const std::string& name, const std::function<CheckResult()>& body) {
    try {
      results.push_back(body());
    } catch (const std::exception& e) {
      results.push_back({name, false, std::string("exception: ") + e.what()});
    }
  };

  run("haar-unitarity", [&] {
    double dev = 0.0;
    for (int level = 0; level <= 14; ++level) {
      const auto f = random_fn(gen, level);
      const auto c = haar_forward(f);
      dev = std::max(dev, std::abs(l2_norm(c) - l2_norm(f)));
      const auto back = haar_inverse(c);
      for (std::size_t j = 0; j < f.size(); ++j) dev = std::max(dev, std::abs(back[j] - f[j]));
    }
    return bound_check("haar-unitarity", dev, 1e-12);
  });

  run("haar-orthonormality", [&] {
    double dev = 0.0;
    const int level = 6;
    for (std::size_t i = 1; i < dim_of_level(level); ++i) {
      const auto label = haar_label(i);
      const auto c = haar_forward(haar_basis_function(label.n, label.k, level));
      for (std::size_t m = 0; m < c.size(); ++m) dev = std::max(dev, std::abs(c[m] - (m == i ? 1.0 : 0.0)));
    }
    return bound_check("haar-orthonormality", dev, 1e-13);
  });

  run("recurrence-vs-definition", [&] {
    double dev = 0.0;
    for (int n = 0; n <= 8; ++n) {
      const DenseMatrix j = jn_matrix(n);
      dev = std::max(dev, (j.transpose() * restricted_matrix(n + 1) * j - dn(n)).cwiseAbs().maxCoeff());
    }
    return bound_check("recurrence-vs-definition", dev, 1e-12);
  });

  run("spectrum-closed-form", [&] {
    double dev = 0.0;
    for (int n = 1; n <= 8; ++n) {
      Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(dn(n), Eigen::EigenvaluesOnly);
      const auto expected = dn_eigenvalues(n);
      for (std::size_t i = 0; i < expected.size(); ++i)
        dev = std::max(dev, std::abs(solver.eigenvalues()(static_cast<Eigen::Index>(i)) - expected[i]));
    }
    return bound_check("spectrum-closed-form", dev, 1e-10);
  });

  run("dn-equals-ck", [&] {
    double dev = 0.0;
    for (int n = 1; n <= 8; ++n) dev = std::max(dev, (dn(n) - build_ck(n, 1.0).to_dense()).cwiseAbs().maxCoeff());
    return bound_check("dn-equals-ck", dev, 0.0);
  });

  run("u-diagonalisation", [&] {
    double dev = 0.0;
    for (int n = 1; n <= 8; ++n) {
      const DenseMatrix u = u_tensor_matrix(n);
      DenseMatrix e = u * dn(n) * u;
      const auto eig = dn_eigenvalues(n);
      for (Eigen::Index i = 0; i < e.rows(); ++i) e(i, i) -= eig[static_cast<std::size_t>(i)];
      dev = std::max(dev, e.cwiseAbs().maxCoeff());
    }
    return bound_check("u-diagonalisation", dev, 1e-12);
  });

  run("path-equivalence", [&] {
    double dev = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_fn(gen, 10);
      const auto a = apply_c_grid(f);
      const auto b = apply_c_haar(f);
      for (std::size_t j = 0; j < f.size(); ++j) dev = std::max(dev, std::abs(a[j] - b[j]));
    }
    return bound_check("path-equivalence", dev, 1e-12);
  });

  run("eigen-relation", [&] {
    double dev = 0.0;
    for (int n = 1; n <= 6; ++n) {
      for (std::size_t k = 0; k < (std::size_t{1} << (n - 1)); ++k) {
        for (Sign s : {Sign::Plus, Sign::Minus}) {
          const EigenIndex idx{n, k, s};
          const auto phi = eigenfunction(idx, n + 2);
          const auto c_phi = apply_c_grid(phi);
          for (std::size_t j = 0; j < phi.size(); ++j)
            dev = std::max(dev, std::abs(c_phi[j] - idx.eigenvalue() * phi[j]));
        }
      }
    }
    return bound_check("eigen-relation", dev, 1e-12);
  });

  run("self-adjointness", [&] {
    double dev = 0.0;
    for (int level = 1; level <= 12; ++level) {
      const auto f = random_fn(gen, level);
      const auto g = random_fn(gen, level);
      dev = std::max(dev, std::abs(inner_product(apply_c_grid(f), g) - inner_product(f, apply_c_grid(g))));
    }
    return bound_check("self-adjointness", dev, 1e-12);
  });

  run("exp-itc-unitarity", [&] {
    const auto f = random_fn(gen, 10);
    const auto out = apply_exp_itc(1.7, f);
    return bound_check("exp-itc-unitarity", std::abs(l2_norm(out) - l2_norm(f)), 1e-12);
  });

  run("sparsity-counts", [&] {
    const std::size_t ck = build_ck(10, 1.0).nnz();
    const std::size_t haar = haar_representation_nnz(10);
    return CheckResult{"sparsity-counts", ck == 10240 && haar == 8195,
                       "nnz(C_10) = " + std::to_string(ck) + ", Haar blocks = " + std::to_string(haar)};
  });

  run("ck-symmetric", [&] {
    bool ok = true;
    for (int k = 1; k <= 12; ++k) {
      const auto op = build_ck(k, 1.0);
      ok = ok && op.symmetric() && op.nnz() == (static_cast<std::size_t>(k) << k);
      for (const auto& e : op.entries()) ok = ok && e.row != e.col;
    }
    return CheckResult{"ck-symmetric", ok, ok ? "symmetric, zero diagonal, K 2^K entries" : "structure violated"};
  });

  run("unitary-equivalence", [&] {
    double dev = 0.0;
    for (int k = 1; k <= 6; ++k) {
      const auto r = unitary_equivalence_check(k, 1.0, 1.0);
      dev = std::max({dev, r.residual, r.spectral_mismatch, std::abs(r.constant - 2.0)});
    }
    return bound_check("unitary-equivalence", dev, 1e-10);
  });

  run("continuum-correspondence", [&] {
    double dev = 0.0;
    for (int k = 1; k <= 8; ++k) dev = std::max(dev, continuum_correspondence_check(k));
    return bound_check("continuum-correspondence", dev, 0.0);
  });

  run("potential-coefficients", [&] {
    double dev = 0.0;
    for (int big_k = 1; big_k <= 10; ++big_k) {
      const auto c = haar_forward(rademacher_partial_sum({1.0, big_k}, big_k));
      dev = std::max(dev, std::abs(c[0]));
      for (std::size_t i = 1; i < c.size(); ++i)
        dev = std::max(dev, std::abs(c[i] - potential_haar_coefficient(haar_label(i).n, 1.0)));
    }
    return bound_check("potential-coefficients", dev, 1e-14);
  });

  run("potential-vk", [&] {
    double dev = 0.0;
    for (int k = 1; k <= 10; ++k) {
      const auto v = rademacher_partial_sum({1.0, k}, k);
      const auto d = build_vk(k, 1.0);
      const auto mid = potential_multiplier(k, 1.0);
      for (std::size_t j = 0; j < v.size(); ++j)
        dev = std::max({dev, std::abs(v[j] - d.diag[j]), std::abs(v[j] - mid[j])});
    }
    return bound_check("potential-vk", dev, 0.0);
  });

  run("wigner-periodicity", [&] {
    GridExtents g{-6, 6, -6, 6, 128, 128};
    const auto f0 = coherent_wigner(g, 0.5, 0.0, 1.0 / std::sqrt(2.0));
    const auto f = evolve_closed_form(f0, {1.0, 0.5, 2.0 * std::numbers::pi});
    return bound_check("wigner-periodicity", l2_distance(f, f0), 1e-10);
  });

  run("wigner-centers", [&] {
    GridExtents g{-6, 6, -6, 6, 128, 128};
    const auto f0 = coherent_wigner(g, 0.0, 0.0, 1.0 / std::sqrt(2.0));
    double dev = 0.0;
    for (const auto& c : center_set(1.0, 3)) {
      std::vector<PhasePoint> trajectory;
      for (int s = 0; s < 8; ++s) {
        const auto [q, p] = evolve_closed_form(f0, {1.0, c.eigenvalue, 2.0 * std::numbers::pi * s / 8}).centroid();
        trajectory.push_back({q, p});
      }
      const auto fit = fit_circle(trajectory);
      dev = std::max(dev, std::hypot(fit.center_q - c.center_q, fit.center_p));
    }
    return bound_check("wigner-centers", dev, g.dq());
  });

  run("displaced-spectrum", [&] {
    const auto r = displaced_spectrum_check(0.5, 1024, 20);
    return bound_check("displaced-spectrum", std::abs(r.shift + 0.125), 1e-4);
  });

  return results;
}

std::vector<std::string> erratum_notes() {
  return {
      "note: D_1 is +sigma_x/2 by the block recurrence and by direct projection; the stated -sigma_x/2 "
      "differs only in sign and leaves E_1 = diag(-1/2, +1/2) unchanged.",
      "note: the spectrum of D_n reaches (2^n - 1)/2^n and C G = G, so sigma(C) = [-1, 1] and ||C|| = 1; "
      "the stated [-1/2, 1/2] and ||C|| = 1/2 are not asserted.",
      "note: the transport equation moves points clockwise about (-lambda E, 0); frames are evolved with "
      "f(t, z) = f0(R(t)(z + lambda E) - lambda E), which solves that equation.",
  };
}

}  // namespace fqmm
