#include "fqmm/level_array.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace fqmm {

int max_level() {
  const char* env = std::getenv("FRACTAL_QMM_MAX_LEVEL");
  if (env == nullptr || *env == '\0') return kDefaultMaxLevel;
  int value = 0;
  const char* end = env + std::strlen(env);
  const auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc{} || ptr != end || value < 0 || value > 30) {
    throw PreconditionError(std::string("FRACTAL_QMM_MAX_LEVEL must be an integer in [0, 30], got '") +
                            env + "'");
  }
  return value;
}

void check_level(int level, const char* what) {
  const int cap = max_level();
  if (level < 0 || level > cap) {
    throw PreconditionError(std::string(what) + ": level " + std::to_string(level) +
                            " outside [0, " + std::to_string(cap) + "]");
  }
}

double inner_product(const PiecewiseConstantFn& f, const PiecewiseConstantFn& g) {
  if (f.level() != g.level()) throw PreconditionError("inner_product: level mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += f[j] * g[j];
  return acc / static_cast<double>(f.size());
}

std::complex<double> inner_product(const ComplexPiecewiseFn& f, const ComplexPiecewiseFn& g) {
  if (f.level() != g.level()) throw PreconditionError("inner_product: level mismatch");
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += std::conj(f[j]) * g[j];
  return acc / static_cast<double>(f.size());
}

}  // namespace fqmm
