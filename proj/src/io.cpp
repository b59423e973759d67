#include "fqmm/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fqmm/dyadic_haar.hpp"
#include "fqmm/error.hpp"
#include "fqmm/potential.hpp"

namespace fqmm::io {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw IoError("format_double: conversion failed");
  return std::string(buf, ptr);
}

namespace {

double parse_double(const std::string& token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{}) throw IoError("could not parse number '" + token + "'");
  return v;
}

void check_stream(const std::ostream& out) {
  if (!out) throw IoError("write failed");
}

}  // namespace

void write_function_csv(std::ostream& out, const PiecewiseConstantFn& f) {
  out << "# level=" << f.level() << '\n';
  for (double v : f) out << format_double(v) << '\n';
  check_stream(out);
}

PiecewiseConstantFn read_function_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# level=", 0) != 0) {
    throw IoError("read_function_csv: missing '# level=L' header");
  }
  const int level = static_cast<int>(parse_double(line.substr(8)));
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    values.push_back(parse_double(line));
  }
  try {
    return PiecewiseConstantFn(level, std::move(values));
  } catch (const PreconditionError& e) {
    throw IoError(std::string("read_function_csv: ") + e.what());
  }
}

void write_coeffs_csv(std::ostream& out, const HaarCoeffs& c) {
  out << "index,n,k,value\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto label = haar_label(i);
    if (label.is_constant) {
      out << i << ",-1,-1," << format_double(c[i]) << '\n';
    } else {
      out << i << ',' << label.n << ',' << label.k << ',' << format_double(c[i]) << '\n';
    }
  }
  check_stream(out);
}

void write_eigenfunction_csv(std::ostream& out, const PiecewiseConstantFn& f) {
  out << "cell,x,value\n";
  for (std::size_t j = 0; j < f.size(); ++j) {
    out << j << ',' << format_double(cell_midpoint(j, f.level())) << ',' << format_double(f[j]) << '\n';
  }
  check_stream(out);
}

void write_spectrum_csv(std::ostream& out, int n_max) {
  out << "n,k,s,E\n";
  if (n_max == 0) out << "0,0,0,0\n";
  for (int n = 1; n <= n_max; ++n) {
    for (std::size_t pos = 0; pos < (std::size_t{1} << n); ++pos) {
      const double e = diagonal_eigenvalue(n, pos);
      const auto label = eigen_index_from_value(n, e).index;
      out << n << ',' << label.k << ',' << (label.s == Sign::Plus ? "1" : "-1") << ',' << format_double(e) << '\n';
    }
  }
  check_stream(out);
}

void write_matrix_market(std::ostream& out, const SparseOperator& op) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << op.dim() << ' ' << op.dim() << ' ' << op.nnz() << '\n';
  for (const auto& e : op.entries()) out << e.row + 1 << ' ' << e.col + 1 << ' ' << format_double(e.value) << '\n';
  check_stream(out);
}

void write_matrix_market(std::ostream& out, const DenseMatrix& m) {
  std::size_t nnz = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) nnz += m(i, j) != 0.0 ? 1 : 0;
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) out << i + 1 << ' ' << j + 1 << ' ' << format_double(m(i, j)) << '\n';
  check_stream(out);
}

void write_diagonal_csv(std::ostream& out, const DiagonalOperator& d) {
  out << "index,value\n";
  for (std::size_t i = 0; i < d.diag.size(); ++i) out << i << ',' << format_double(d.diag[i]) << '\n';
  check_stream(out);
}

void write_spy_csv(std::ostream& out, const SparseOperator& op) {
  out << "row,col\n";
  for (const auto& e : op.entries()) out << e.row << ',' << e.col << '\n';
  check_stream(out);
}

void write_potential_csv(std::ostream& out, const PiecewiseConstantFn& v) { write_eigenfunction_csv(out, v); }

void write_potential_coefficients_csv(std::ostream& out, int scales, double omega) {
  out << "k,coefficient\n";
  out << "-1,0\n";  // c_0
  for (int k = 0; k < scales; ++k) out << k << ',' << format_double(potential_haar_coefficient(k, omega)) << '\n';
  check_stream(out);
}

void write_wigner_csv(std::ostream& out, const WignerGrid& f) {
  const auto& g = f.extents();
  out << "q,p,value\n";
  for (std::size_t i = 0; i < g.nq; ++i)
    for (std::size_t j = 0; j < g.np; ++j)
      out << format_double(g.q(i)) << ',' << format_double(g.p(j)) << ',' << format_double(f.at(i, j)) << '\n';
  check_stream(out);
}

void write_wigner_binary(const std::filesystem::path& stem, const WignerGrid& f, double t) {
  auto bin_path = stem;
  bin_path += ".bin";
  auto json_path = stem;
  json_path += ".json";
  {
    std::ofstream bin(bin_path, std::ios::binary);
    if (!bin) throw IoError("cannot open " + bin_path.string());
    bin.write(reinterpret_cast<const char*>(f.values().data()),
              static_cast<std::streamsize>(f.values().size() * sizeof(double)));
    if (!bin) throw IoError("write failed: " + bin_path.string());
  }
  const auto& g = f.extents();
  nlohmann::ordered_json meta;
  meta["format"] = "float64-row-major-q-slow";
  meta["q_min"] = g.q_min;
  meta["q_max"] = g.q_max;
  meta["p_min"] = g.p_min;
  meta["p_max"] = g.p_max;
  meta["nq"] = g.nq;
  meta["np"] = g.np;
  meta["t"] = t;
  std::ofstream json(json_path);
  if (!json) throw IoError("cannot open " + json_path.string());
  json << meta.dump(2) << '\n';
  if (!json) throw IoError("write failed: " + json_path.string());
}

WignerFrame read_wigner_binary(const std::filesystem::path& stem) {
  auto bin_path = stem;
  bin_path += ".bin";
  auto json_path = stem;
  json_path += ".json";
  std::ifstream json(json_path);
  if (!json) throw IoError("cannot open " + json_path.string());
  nlohmann::json meta;
  try {
    json >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed sidecar " + json_path.string() + ": " + e.what());
  }
  GridExtents g;
  double t = 0.0;
  try {
    g.q_min = meta.at("q_min").get<double>();
    g.q_max = meta.at("q_max").get<double>();
    g.p_min = meta.at("p_min").get<double>();
    g.p_max = meta.at("p_max").get<double>();
    g.nq = meta.at("nq").get<std::size_t>();
    g.np = meta.at("np").get<std::size_t>();
    t = meta.at("t").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed sidecar " + json_path.string() + ": " + e.what());
  }
  try {
    g.validate();
  } catch (const PreconditionError& e) {
    throw IoError("malformed sidecar " + json_path.string() + ": " + e.what());
  }
  std::vector<double> values(g.nq * g.np);
  std::ifstream bin(bin_path, std::ios::binary);
  if (!bin) throw IoError("cannot open " + bin_path.string());
  bin.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (bin.gcount() != static_cast<std::streamsize>(values.size() * sizeof(double))) {
    throw IoError("short read: " + bin_path.string());
  }
  if (bin.peek() != std::ifstream::traits_type::eof()) throw IoError("trailing data in " + bin_path.string());
  return {WignerGrid(g, std::move(values)), t};
}

}  // namespace fqmm::io
