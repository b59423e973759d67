#include "fqmm/coupling_operator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "fqmm/dyadic_haar.hpp"
#include "fqmm/error.hpp"
#include "parallel.hpp"

namespace fqmm {

namespace {

void check_dense_size(int n, int cap, const char* what) {
  if (n < 0 || n > cap) {
    throw PreconditionError(std::string(what) + ": size parameter " + std::to_string(n) +
                            " outside [0, " + std::to_string(cap) + "]");
  }
}

int sign_value(Sign s) { return s == Sign::Plus ? 1 : -1; }

struct Flip {
  std::size_t mask;
  double weight;
};

// (digit mask, 2^{-k}) for k = 1 .. level.
std::vector<Flip> flip_table(int level) {
  std::vector<Flip> flips;
  flips.reserve(static_cast<std::size_t>(level));
  for (int k = 1; k <= level; ++k) flips.push_back({digit_mask(k, level), std::ldexp(1.0, -k)});
  return flips;
}

}  // namespace

// ---------------------------------------------------------------------------
// Labels

double EigenIndex::eigenvalue() const {
  return sign_value(s) * std::ldexp(static_cast<double>(2 * k + 1), -n);
}

void validate(const EigenIndex& idx) {
  if (idx.n < 1 || idx.n > max_level()) {
    throw PreconditionError("EigenIndex: n = " + std::to_string(idx.n) + " outside [1, " +
                            std::to_string(max_level()) + "]");
  }
  if (idx.k >= (std::size_t{1} << (idx.n - 1))) {
    throw PreconditionError("EigenIndex: k = " + std::to_string(idx.k) + " outside [0, 2^" +
                            std::to_string(idx.n - 1) + ") for n = " + std::to_string(idx.n));
  }
}

void validate(const SignString& s) {
  if (s.signs.empty() || s.n() > max_level()) {
    throw PreconditionError("SignString: length must be in [1, " + std::to_string(max_level()) + "]");
  }
  for (int v : s.signs) {
    if (v != 1 && v != -1) throw PreconditionError("SignString: entries must be +1 or -1");
  }
}

double sign_string_eigenvalue(const SignString& s) {
  validate(s);
  double e = 0.0;
  for (int j = 1; j <= s.n(); ++j) e += s.signs[static_cast<std::size_t>(j - 1)] * std::ldexp(1.0, -j);
  return e;
}

std::size_t diagonal_position(const SignString& s) {
  validate(s);
  std::size_t pos = 0;
  for (int v : s.signs) pos = (pos << 1) | (v > 0 ? 1U : 0U);
  return pos;
}

double diagonal_eigenvalue(int n, std::size_t pos) {
  if (n == 0) return 0.0;
  // sum_j (2 b_j - 1) 2^{-j} = (2 pos + 1 - 2^n) / 2^n, exact in binary.
  const double numerator = 2.0 * static_cast<double>(pos) + 1.0 - std::ldexp(1.0, n);
  return std::ldexp(numerator, -n);
}

namespace {

SignString signs_of_position(int n, std::size_t pos) {
  SignString s;
  s.signs.resize(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) s.signs[static_cast<std::size_t>(j - 1)] = ((pos >> (n - j)) & 1U) ? 1 : -1;
  return s;
}

std::size_t position_of_index(const EigenIndex& idx) {
  const std::size_t half = std::size_t{1} << (idx.n - 1);
  return idx.s == Sign::Plus ? half + idx.k : half - 1 - idx.k;
}

}  // namespace

SignString sign_string_of(const EigenIndex& idx) {
  validate(idx);
  return signs_of_position(idx.n, position_of_index(idx));
}

EigenIndex eigen_index_of(const SignString& s) {
  const std::size_t pos = diagonal_position(s);
  const std::size_t half = std::size_t{1} << (s.n() - 1);
  if (pos >= half) return {s.n(), pos - half, Sign::Plus};
  return {s.n(), half - 1 - pos, Sign::Minus};
}

EigenLabel eigen_index_from_value(int n, double eigenvalue) {
  if (n < 1 || n > max_level()) {
    throw PreconditionError("eigen_index_from_value: n = " + std::to_string(n) + " outside [1, " +
                            std::to_string(max_level()) + "]");
  }
  // E 2^n must be an odd integer in (-2^n, 2^n).
  const double scaled = std::ldexp(eigenvalue, n);
  const double rounded = std::round(scaled);
  const double bound = std::ldexp(1.0, n);
  if (!std::isfinite(scaled) || std::abs(scaled - rounded) > 1e-9 || std::abs(rounded) >= bound ||
      std::fmod(std::abs(rounded), 2.0) != 1.0) {
    throw PreconditionError("eigen_index_from_value: " + std::to_string(eigenvalue) +
                            " is not of the form +-(2k+1)/2^" + std::to_string(n));
  }
  const auto pos = static_cast<std::size_t>((rounded + bound - 1.0) / 2.0);
  SignString s = signs_of_position(n, pos);
  return {eigen_index_of(s), std::move(s)};
}

// ---------------------------------------------------------------------------
// Operator application

PiecewiseConstantFn apply_c_grid(const PiecewiseConstantFn& f) {
  const int level = f.level();
  const auto dim = static_cast<std::ptrdiff_t>(f.size());
  PiecewiseConstantFn out(level);
  const double tail = std::ldexp(1.0, -level);
  const auto flips = flip_table(level);
  const double* in = f.values().data();
  double* res = out.values().data();
#pragma omp parallel for schedule(static) if (dim >= detail::kParallelThreshold)
  for (std::ptrdiff_t j = 0; j < dim; ++j) {
    const auto cell = static_cast<std::size_t>(j);
    double acc = tail * in[cell];
    for (const auto& [mask, weight] : flips) acc += weight * in[cell ^ mask];
    res[cell] = acc;
  }
  return out;
}

namespace {

// One step of the block recurrence D_r = 1/2 [[D_{r-1}, I], [I, D_{r-1}]] on
// `count` pairs (i, i + mask) starting at pair index `first`; mask = 2^{r-1}.
inline void recurrence_pass(const double* in, double* out, std::size_t mask, std::size_t first, std::size_t count) {
  const std::size_t low = first & (mask - 1);
  const std::size_t lo = ((first - low) << 1) | low;
  const std::size_t hi = lo + mask;
  for (std::size_t t = 0; t < count; ++t) {
    out[lo + t] = 0.5 * (out[lo + t] + in[hi + t]);
    out[hi + t] = 0.5 * (out[hi + t] + in[lo + t]);
  }
}

// Bottom-up recurrence over one W_n slot: after pass r, every aligned run of
// 2^r entries holds D_r applied to the matching run of `in`. The first
// kChunkLevel passes run chunk by chunk so they stay in cache.
constexpr int kChunkLevel = 12;

void apply_dn_block(const double* in, double* out, int n) {
  const std::size_t size = std::size_t{1} << n;
  std::fill(out, out + size, 0.0);
  if (n == 0) return;
  const int local = std::min(n, kChunkLevel);
  const std::size_t chunk = std::size_t{1} << local;
  const auto chunks = static_cast<std::ptrdiff_t>(size / chunk);
#pragma omp parallel for schedule(static) if (static_cast<std::ptrdiff_t>(size) >= detail::kParallelThreshold)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const std::size_t offset = static_cast<std::size_t>(c) * chunk;
    for (int r = 1; r <= local; ++r) {
      const std::size_t mask = std::size_t{1} << (r - 1);
      for (std::size_t g = 0; g < chunk / 2; g += mask) recurrence_pass(in + offset, out + offset, mask, g, mask);
    }
  }
  // Remaining passes: the pairs split into runs of chunk / 2 contiguous pairs.
  const std::size_t run = chunk / 2;
  const auto runs = static_cast<std::ptrdiff_t>(size / 2 / run);
  for (int r = local + 1; r <= n; ++r) {
    const std::size_t mask = std::size_t{1} << (r - 1);
#pragma omp parallel for schedule(static) if (static_cast<std::ptrdiff_t>(size) >= detail::kParallelThreshold)
    for (std::ptrdiff_t u = 0; u < runs; ++u) recurrence_pass(in, out, mask, static_cast<std::size_t>(u) * run, run);
  }
}

}  // namespace

HaarCoeffs fast_apply_c(const HaarCoeffs& c) {
  HaarCoeffs out(c.level());
  out[0] = c[0];
  const HaarBlockView view(c.level());
  for (int n = 0; n < view.block_count(); ++n) {
    apply_dn_block(c.values().data() + view.block_begin(n), out.values().data() + view.block_begin(n), n);
  }
  return out;
}

PiecewiseConstantFn apply_c_haar(const PiecewiseConstantFn& f) {
  return haar_inverse(fast_apply_c(haar_forward(f)));
}

namespace {

template <typename T>
void u_tensor_impl(std::span<T> v) {
  constexpr double r = std::numbers::sqrt2 / 2.0;
  const std::size_t size = v.size();
  const auto pairs = static_cast<std::ptrdiff_t>(size / 2);
  for (std::size_t stride = 1; stride < size; stride <<= 1) {
#pragma omp parallel for schedule(static) if (pairs >= detail::kParallelThreshold)
    for (std::ptrdiff_t p = 0; p < pairs; ++p) {
      // p-th pair (i, i + stride) with bit `stride` of i clear.
      const auto low = static_cast<std::size_t>(p) & (stride - 1);
      const auto i = ((static_cast<std::size_t>(p) - low) << 1) | low;
      const T a = v[i];
      const T b = v[i + stride];
      v[i] = r * (b - a);
      v[i + stride] = r * (a + b);
    }
  }
}

template <typename T>
LevelArray<T, HaarTag> b_transform_impl(const LevelArray<T, HaarTag>& c) {
  LevelArray<T, HaarTag> out = c;
  const HaarBlockView view(c.level());
  for (int n = 1; n < view.block_count(); ++n) u_tensor_impl(view.block(out.values(), n));
  return out;
}

}  // namespace

void apply_u_tensor(std::span<double> v) { u_tensor_impl(v); }

HaarCoeffs b_transform(const HaarCoeffs& c, Direction) { return b_transform_impl(c); }
ComplexHaarCoeffs b_transform(const ComplexHaarCoeffs& c, Direction) { return b_transform_impl(c); }

ComplexPiecewiseFn apply_exp_itc(double t, const ComplexPiecewiseFn& f) {
  ComplexHaarCoeffs d = b_transform(haar_forward(f), Direction::Forward);
  d[0] *= std::exp(std::complex<double>(0.0, t));  // C G = G
  // slot 1 (W_0) carries eigenvalue 0
  const HaarBlockView view(f.level());
  for (int n = 1; n < view.block_count(); ++n) {
    auto block = view.block(d.values(), n);
    const auto size = static_cast<std::ptrdiff_t>(block.size());
#pragma omp parallel for schedule(static) if (size >= detail::kParallelThreshold)
    for (std::ptrdiff_t p = 0; p < size; ++p) {
      const double e = diagonal_eigenvalue(n, static_cast<std::size_t>(p));
      block[static_cast<std::size_t>(p)] *= std::exp(std::complex<double>(0.0, t * e));
    }
  }
  return haar_inverse(b_transform(d, Direction::Inverse));
}

ComplexPiecewiseFn apply_exp_itc(double t, const PiecewiseConstantFn& f) {
  ComplexPiecewiseFn z(f.level());
  for (std::size_t j = 0; j < f.size(); ++j) z[j] = f[j];
  return apply_exp_itc(t, z);
}

// ---------------------------------------------------------------------------
// Dense oracles and closed forms

DenseMatrix restricted_matrix(int level) {
  check_dense_size(level, kDenseLevelCap, "restricted_matrix");
  const auto dim = static_cast<Eigen::Index>(dim_of_level(level));
  DenseMatrix m = std::ldexp(1.0, -level) * DenseMatrix::Identity(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (int k = 1; k <= level; ++k) {
      const auto col = static_cast<Eigen::Index>(static_cast<std::size_t>(j) ^ digit_mask(k, level));
      m(j, col) += std::ldexp(1.0, -k);
    }
  }
  return m;
}

DenseMatrix block_dn(int n) {
  check_dense_size(n, kDenseLevelCap, "block_dn");
  const auto dim = static_cast<Eigen::Index>(dim_of_level(n));
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (int j = 1; j <= n; ++j) {
      const auto col = static_cast<Eigen::Index>(static_cast<std::size_t>(i) ^ digit_mask(j, n));
      m(i, col) += std::ldexp(1.0, -j);
    }
  }
  return m;
}

DenseMatrix jn_matrix(int n) {
  check_dense_size(n, kDenseLevelCap - 1, "jn_matrix");
  const auto cols = static_cast<Eigen::Index>(dim_of_level(n));
  DenseMatrix j = DenseMatrix::Zero(2 * cols, cols);
  const double r = std::numbers::sqrt2 / 2.0;
  for (Eigen::Index l = 0; l < cols; ++l) {
    j(2 * l, l) = r;
    j(2 * l + 1, l) = -r;
  }
  return j;
}

bool jn_projection_check(int n, double tol) {
  check_dense_size(n, 10, "jn_projection_check");
  const DenseMatrix j = jn_matrix(n);
  const DenseMatrix projected = j.transpose() * restricted_matrix(n + 1) * j;
  return (projected - block_dn(n)).cwiseAbs().maxCoeff() <= tol;
}

std::vector<double> dn_eigenvalues(int n) {
  if (n < 0 || n > max_level()) {
    throw PreconditionError("dn_eigenvalues: n = " + std::to_string(n) + " outside [0, " +
                            std::to_string(max_level()) + "]");
  }
  if (n == 0) return {0.0};
  std::vector<double> values(dim_of_level(n));
  for (std::size_t p = 0; p < values.size(); ++p) values[p] = diagonal_eigenvalue(n, p);
  return values;
}

DenseMatrix u_tensor_matrix(int n) {
  check_dense_size(n, kDenseLevelCap, "u_tensor_matrix");
  const auto dim = static_cast<Eigen::Index>(dim_of_level(n));
  DenseMatrix m = DenseMatrix::Identity(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) apply_u_tensor(std::span<double>(m.col(c).data(), static_cast<std::size_t>(dim)));
  return m;
}

PiecewiseConstantFn eigenfunction(const EigenIndex& idx, int level) {
  validate(idx);
  if (level < idx.n + 1) {
    throw PreconditionError("eigenfunction: level " + std::to_string(level) + " < n + 1 = " +
                            std::to_string(idx.n + 1));
  }
  // Eigenvector of D_n: (x)_j (1, s_j)^T / sqrt 2, placed in the W_n slot.
  const SignString s = sign_string_of(idx);
  HaarCoeffs c(level);
  const double amplitude = std::sqrt(std::ldexp(1.0, -idx.n));
  const std::size_t size = dim_of_level(idx.n);
  for (std::size_t k = 0; k < size; ++k) {
    int sign = 1;
    for (int j = 1; j <= idx.n; ++j) {
      if (k & digit_mask(j, idx.n)) sign *= s.signs[static_cast<std::size_t>(j - 1)];
    }
    c[size + k] = sign * amplitude;
  }
  return haar_inverse(c);
}

std::size_t haar_representation_nnz(int level) {
  check_level(level, "haar_representation_nnz");
  std::size_t count = 1;
  for (int n = 0; n < level; ++n) count += static_cast<std::size_t>(n) << n;
  return count;
}

}  // namespace fqmm
