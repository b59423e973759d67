#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fqmm/coupling_operator.hpp"
#include "fqmm/dyadic_haar.hpp"
#include "fqmm/error.hpp"
#include "fqmm/reference.hpp"
#include "test_util.hpp"

using namespace fqmm;
using fqmm::testing::max_abs_diff;
using fqmm::testing::random_function;

namespace {

// C_1 = 1/2 [[1,1],[1,1]], C_{n+1} = 1/2 [[C_n, I], [I, C_n]].
DenseMatrix recurrence_c(int level) {
  DenseMatrix c = DenseMatrix::Constant(2, 2, 0.5);
  for (int n = 1; n < level; ++n) {
    const Eigen::Index m = c.rows();
    DenseMatrix next = DenseMatrix::Zero(2 * m, 2 * m);
    next.topLeftCorner(m, m) = 0.5 * c;
    next.bottomRightCorner(m, m) = 0.5 * c;
    next.topRightCorner(m, m) = 0.5 * DenseMatrix::Identity(m, m);
    next.bottomLeftCorner(m, m) = 0.5 * DenseMatrix::Identity(m, m);
    c = next;
  }
  return c;
}

// D_0 = [0], D_{n+1} = 1/2 [[D_n, I], [I, D_n]].
DenseMatrix recurrence_d(int n) {
  DenseMatrix d = DenseMatrix::Zero(1, 1);
  for (int i = 0; i < n; ++i) {
    const Eigen::Index m = d.rows();
    DenseMatrix next = DenseMatrix::Zero(2 * m, 2 * m);
    next.topLeftCorner(m, m) = 0.5 * d;
    next.bottomRightCorner(m, m) = 0.5 * d;
    next.topRightCorner(m, m) = 0.5 * DenseMatrix::Identity(m, m);
    next.bottomLeftCorner(m, m) = 0.5 * DenseMatrix::Identity(m, m);
    d = next;
  }
  return d;
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DenseMatrix dense_u_power(int n) {
  DenseMatrix u(2, 2);
  u << -1, 1, 1, 1;
  u /= std::sqrt(2.0);
  DenseMatrix out = DenseMatrix::Identity(1, 1);
  for (int i = 0; i < n; ++i) out = kron(out, u);
  return out;
}

Eigen::VectorXd as_vector(const PiecewiseConstantFn& f) {
  return Eigen::Map<const Eigen::VectorXd>(f.values().data(), static_cast<Eigen::Index>(f.size()));
}

}  // namespace

TEST_CASE("apply_c_grid examples") {
  CHECK(max_abs_diff(apply_c_grid(PiecewiseConstantFn(1, {1, 1})), std::vector<double>{1, 1}) < 1e-15);
  CHECK(max_abs_diff(apply_c_grid(PiecewiseConstantFn(1, {1, -1})), std::vector<double>{0, 0}) < 1e-15);

  const double r2 = std::sqrt(2.0);
  const PiecewiseConstantFn h10(2, {r2, -r2, 0, 0});
  const Eigen::VectorXd oracle = recurrence_c(2) * as_vector(h10);
  CHECK(max_abs_diff(oracle, std::vector<double>{0, 0, r2 / 2, -r2 / 2}) < 1e-15);
  CHECK(max_abs_diff(apply_c_grid(h10), oracle) < 1e-15);
}

TEST_CASE("apply_c_grid equals the recurrence matrix on random functions") {
  for (int level = 1; level <= 9; ++level) {
    const auto f = random_function(level);
    const Eigen::VectorXd oracle = recurrence_c(level) * as_vector(f);
    CHECK(max_abs_diff(apply_c_grid(f), oracle) < 1e-13);
  }
}

TEST_CASE("apply_c_grid at level 0 is the identity") {
  const PiecewiseConstantFn f(0, {3.5});
  CHECK(apply_c_grid(f)[0] == doctest::Approx(3.5));
}

TEST_CASE("restricted matrix") {
  CHECK(max_abs_diff(restricted_matrix(1).reshaped(), recurrence_c(1).reshaped()) == 0.0);
  for (int level = 2; level <= 8; ++level)
    CHECK(max_abs_diff(restricted_matrix(level).reshaped(), recurrence_c(level).reshaped()) < 1e-15);
  for (int level = 1; level <= 8; ++level) {
    const Eigen::VectorXd sums = restricted_matrix(level).rowwise().sum();
    CHECK((sums.array() - 1.0).abs().maxCoeff() < 1e-15);
  }
  CHECK_THROWS_AS(restricted_matrix(13), PreconditionError);
}

TEST_CASE("block D_n") {
  CHECK(block_dn(0).rows() == 1);
  CHECK(block_dn(0)(0, 0) == 0.0);
  DenseMatrix half_sx(2, 2);
  half_sx << 0, 0.5, 0.5, 0;
  CHECK(max_abs_diff(block_dn(1).reshaped(), half_sx.reshaped()) == 0.0);
  const Eigen::VectorXd col0 = block_dn(2).col(0);
  CHECK(max_abs_diff(col0, std::vector<double>{0, 0.25, 0.5, 0}) == 0.0);
  for (int n = 0; n <= 9; ++n)
    CHECK(max_abs_diff(block_dn(n).reshaped(), recurrence_d(n).reshaped()) < 1e-15);
  CHECK_THROWS_AS(block_dn(13), PreconditionError);
  CHECK_THROWS_AS(block_dn(-1), PreconditionError);
}

TEST_CASE("J_n projection reproduces D_n") {
  const DenseMatrix j1 = jn_matrix(1);
  CHECK(j1.rows() == 4);
  CHECK(j1.cols() == 2);
  CHECK(j1(0, 0) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(j1(1, 0) == doctest::Approx(-1 / std::sqrt(2.0)));
  CHECK(j1(2, 1) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(jn_projection_check(0));
  CHECK(jn_projection_check(1));
  CHECK(jn_projection_check(6));
  for (int n = 0; n <= 8; ++n) {
    const DenseMatrix projected = jn_matrix(n).transpose() * recurrence_c(n + 1) * jn_matrix(n);
    CHECK((projected - block_dn(n)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("closed-form spectrum") {
  CHECK(dn_eigenvalues(0) == std::vector<double>{0.0});
  CHECK(dn_eigenvalues(1) == std::vector<double>{-0.5, 0.5});
  CHECK(dn_eigenvalues(2) == std::vector<double>{-0.75, -0.25, 0.25, 0.75});
  for (int n = 1; n <= 10; ++n) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(block_dn(n), Eigen::EigenvaluesOnly);
    const auto expected = dn_eigenvalues(n);
    CHECK(max_abs_diff(solver.eigenvalues(), expected) < 1e-10);
    CHECK(expected.back() == doctest::Approx((std::ldexp(1.0, n) - 1) / std::ldexp(1.0, n)));
    for (std::size_t i = 1; i < expected.size(); ++i) CHECK(expected[i] - expected[i - 1] > 1e-10);
  }
}

TEST_CASE("sign strings and eigen labels") {
  CHECK(sign_string_eigenvalue({{+1, +1}}) == 0.75);
  CHECK(sign_string_eigenvalue({{+1, -1}}) == 0.25);
  CHECK(sign_string_eigenvalue({{-1}}) == -0.5);
  CHECK_THROWS_AS(sign_string_eigenvalue({{+1, 0}}), PreconditionError);
  CHECK_THROWS_AS(sign_string_eigenvalue({{}}), PreconditionError);

  auto label = eigen_index_from_value(2, 0.75);
  CHECK(label.index == EigenIndex{2, 1, Sign::Plus});
  CHECK(label.signs == SignString{{+1, +1}});
  label = eigen_index_from_value(1, -0.5);
  CHECK(label.index == EigenIndex{1, 0, Sign::Minus});
  CHECK(label.signs == SignString{{-1}});
  label = eigen_index_from_value(3, 0.625);
  CHECK(label.index == EigenIndex{3, 2, Sign::Plus});
  CHECK(label.signs == SignString{{+1, +1, -1}});

  CHECK_THROWS_AS(eigen_index_from_value(2, 0.5), PreconditionError);
  CHECK_THROWS_AS(eigen_index_from_value(2, 1.25), PreconditionError);
  CHECK_THROWS_AS(validate(EigenIndex{2, 2, Sign::Plus}), PreconditionError);
  CHECK_THROWS_AS(validate(EigenIndex{0, 0, Sign::Plus}), PreconditionError);

  // Bijection: the multiset of sign-string eigenvalues is the closed-form spectrum.
  for (int n = 1; n <= 10; ++n) {
    std::vector<double> values;
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
      SignString s;
      for (int j = 1; j <= n; ++j) s.signs.push_back(((bits >> (n - j)) & 1U) ? +1 : -1);
      const double e = sign_string_eigenvalue(s);
      values.push_back(e);
      const auto back = eigen_index_from_value(n, e);
      CHECK(back.signs == s);
      CHECK(back.index.eigenvalue() == e);
      CHECK(sign_string_of(back.index) == s);
      CHECK(eigen_index_of(s) == back.index);
      CHECK(diagonal_eigenvalue(n, diagonal_position(s)) == e);
    }
    std::sort(values.begin(), values.end());
    CHECK(values == dn_eigenvalues(n));
  }
}

TEST_CASE("eigenfunction synthesis") {
  auto f = eigenfunction({1, 0, Sign::Plus}, 2);
  CHECK(max_abs_diff(f, std::vector<double>{1, -1, 1, -1}) < 1e-15);
  f = eigenfunction({1, 0, Sign::Minus}, 2);
  CHECK(max_abs_diff(f, std::vector<double>{1, -1, -1, 1}) < 1e-15);
  CHECK_THROWS_AS(eigenfunction({2, 0, Sign::Plus}, 2), PreconditionError);

  for (int level : {1, 4, 9}) {
    const auto g = constant_function(level);
    CHECK(max_abs_diff(apply_c_grid(g), g) < 1e-15);
  }

  for (int n = 1; n <= 8; ++n) {
    for (std::size_t k = 0; k < (std::size_t{1} << (n - 1)); ++k) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        const EigenIndex idx{n, k, s};
        const int level = n + 2;
        const auto phi = eigenfunction(idx, level);
        const auto c_phi = apply_c_grid(phi);
        double residual = 0.0;
        for (std::size_t j = 0; j < phi.size(); ++j)
          residual = std::max(residual, std::abs(c_phi[j] - idx.eigenvalue() * phi[j]));
        CHECK(residual < 1e-12);
        CHECK(l2_norm(phi) == doctest::Approx(1.0).epsilon(1e-14));
        std::set<double> distinct(phi.begin(), phi.end());
        CHECK(distinct == std::set<double>{-1.0, 1.0});
      }
    }
  }
}

TEST_CASE("fast Haar application") {
  const int level = 6;
  HaarCoeffs unit(level);
  unit[0] = 1.0;
  CHECK(fast_apply_c(unit) == unit);
  HaarCoeffs h00(level);
  h00[1] = 1.0;
  const auto out = fast_apply_c(h00);
  CHECK(std::all_of(out.begin(), out.end(), [](double v) { return v == 0.0; }));

  // Block-diagonal form: each W_n slot is acted on by D_n.
  const auto c = HaarCoeffs(level, fqmm::testing::random_vector(64));
  const auto fc = fast_apply_c(c);
  const HaarBlockView view(level);
  for (int n = 0; n < level; ++n) {
    const Eigen::Map<const Eigen::VectorXd> in(c.values().data() + view.block_begin(n),
                                               static_cast<Eigen::Index>(view.block_size(n)));
    const Eigen::VectorXd expected = block_dn(n) * in;
    const auto got = view.block(fc.values(), n);
    CHECK(max_abs_diff(got, expected) < 1e-15);
  }

  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_function(10);
    CHECK(max_abs_diff(apply_c_haar(f), apply_c_grid(f)) < 1e-12);
  }
}

TEST_CASE("Haar representation sparsity") {
  CHECK(haar_representation_nnz(10) == 8195);
  CHECK(haar_representation_nnz(1) == 1);
  for (int level = 1; level <= 7; ++level) {
    // Count nonzeros of T_H C T_H^T assembled column by column.
    std::size_t count = 0;
    const std::size_t dim = std::size_t{1} << level;
    for (std::size_t i = 0; i < dim; ++i) {
      HaarCoeffs e(level);
      e[i] = 1.0;
      const auto col = haar_forward(apply_c_grid(haar_inverse(e)));
      for (double v : col) count += std::abs(v) > 1e-12 ? 1 : 0;
    }
    CHECK(count == haar_representation_nnz(level));
  }
}

TEST_CASE("B transform diagonalises D_n") {
  DenseMatrix u_dense = u_tensor_matrix(1);
  DenseMatrix expected(2, 2);
  expected << -1, 1, 1, 1;
  expected /= std::sqrt(2.0);
  CHECK((u_dense - expected).cwiseAbs().maxCoeff() < 1e-15);

  for (int n = 0; n <= 8; ++n) {
    const DenseMatrix u = dense_u_power(n);
    CHECK((u_tensor_matrix(n) - u).cwiseAbs().maxCoeff() < 1e-14);
    const DenseMatrix e = u * block_dn(n) * u;
    const auto eig = dn_eigenvalues(n);
    DenseMatrix diag = DenseMatrix::Zero(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i) diag(i, i) = eig[static_cast<std::size_t>(i)];
    CHECK((e - diag).cwiseAbs().maxCoeff() < 1e-12);
  }

  // Fast butterfly agrees with the dense Kronecker product slot by slot.
  const int level = 7;
  const HaarCoeffs c(level, fqmm::testing::random_vector(128));
  const auto bc = b_transform(c);
  CHECK(bc[0] == c[0]);
  CHECK(bc[1] == c[1]);
  const HaarBlockView view(level);
  for (int n = 1; n < level; ++n) {
    const Eigen::Map<const Eigen::VectorXd> in(c.values().data() + view.block_begin(n),
                                               static_cast<Eigen::Index>(view.block_size(n)));
    const Eigen::VectorXd expected_block = dense_u_power(n) * in;
    CHECK(max_abs_diff(view.block(bc.values(), n), expected_block) < 1e-14);
  }
  CHECK(max_abs_diff(b_transform(bc, Direction::Inverse), c) < 1e-13);
  CHECK(b_transform(c) == serial::b_transform(c));
}

TEST_CASE("exp(itC) against a dense eigendecomposition") {
  const int level = 6;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(recurrence_c(level));
  const auto f = random_function(level);
  const double t = 0.83;
  const Eigen::VectorXcd phases =
      (std::complex<double>(0, t) * solver.eigenvalues().cast<std::complex<double>>()).array().exp();
  const Eigen::VectorXcd oracle = solver.eigenvectors().cast<std::complex<double>>() *
                                  phases.asDiagonal() *
                                  (solver.eigenvectors().transpose() * as_vector(f)).cast<std::complex<double>>();
  CHECK(max_abs_diff(apply_exp_itc(t, f), oracle) < 1e-12);
}

TEST_CASE("exp(itC) properties") {
  const int level = 10;
  const auto f = random_function(level);
  const auto at0 = apply_exp_itc(0.0, f);
  double dev = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) dev = std::max(dev, std::abs(at0[j] - f[j]));
  CHECK(dev < 1e-12);

  const auto evolved = apply_exp_itc(1.7, f);
  CHECK(std::abs(l2_norm(evolved) - l2_norm(f)) < 1e-12);

  const auto two_steps = apply_exp_itc(-0.4, apply_exp_itc(1.1, f));
  const auto one_step = apply_exp_itc(0.7, f);
  CHECK(max_abs_diff(two_steps, one_step) < 1e-12);

  for (const EigenIndex idx : {EigenIndex{1, 0, Sign::Plus}, EigenIndex{3, 2, Sign::Minus},
                               EigenIndex{8, 100, Sign::Plus}}) {
    const auto phi = eigenfunction(idx, level);
    const double t = 2.9;
    const auto out = apply_exp_itc(t, phi);
    const auto phase = std::exp(std::complex<double>(0, t * idx.eigenvalue()));
    double err = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j) err = std::max(err, std::abs(out[j] - phase * phi[j]));
    CHECK(err < 1e-12);
  }
}

TEST_CASE("self-adjointness (property)") {
  for (int level = 1; level <= 12; ++level) {
    const auto f = random_function(level);
    const auto g = random_function(level);
    CHECK(std::abs(inner_product(apply_c_grid(f), g) - inner_product(f, apply_c_grid(g))) < 1e-12);
  }
}

TEST_CASE("parallel C kernels reproduce the serial reference exactly") {
  for (int level : {1, 6, 14, 17}) {
    const auto f = random_function(level);
    CHECK(apply_c_grid(f) == serial::apply_c_grid(f));
    const auto c = haar_forward(f);
    CHECK(fast_apply_c(c) == serial::fast_apply_c(c));
  }
}
