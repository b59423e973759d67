#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fqmm/fqmm.hpp"
#include "fqmm/reference.hpp"

namespace fqmm::cli {

namespace {

// Parameter bag shared by all subcommands; each subcommand binds the subset it
// understands.
struct RunConfig {
  int K = 10;
  int L = 6;
  int n = 1;
  long long k = 0;
  std::string s = "+";
  std::optional<double> E;
  double lambda = 1.0;
  double omega = 1.0;
  double q_min = -6.0, q_max = 6.0, p_min = -6.0, p_max = 6.0;
  std::size_t nq = 256, np = 256;
  double q0 = 0.0, p0 = 0.0;
  double sigma = std::numbers::sqrt2 / 2.0;
  double t = 2.0 * std::numbers::pi;
  double dt = 1e-2;
  int frames = 16;
  std::string method = "closed";
  std::string interp = "bilinear";
  std::string out;
  std::string format;  // empty until parsed; each command has its own default
  std::string basis = "qubit";
  std::string what = "sum";
  std::string fault;
  int l_min = 10;
  int l_max = 20;
  int reps = 5;
};

// Output sink: the --out file when given, otherwise the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
      std::error_code ec;
      std::filesystem::create_directories(p.parent_path(), ec);
    }
    file_ = std::make_unique<std::ofstream>(p);
    if (!*file_) throw IoError("cannot open output file " + path);
    stream_ = file_.get();
  }
  std::ostream& stream() { return *stream_; }
  void close() {
    stream_->flush();
    if (!*stream_) throw IoError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw PreconditionError(message);
}

void require_format(const RunConfig& cfg, std::set<std::string> allowed) {
  require(allowed.contains(cfg.format), "--format " + cfg.format + " is not supported by this command");
}

Sign parse_sign(const std::string& s) {
  if (s == "+" || s == "plus" || s == "1" || s == "+1") return Sign::Plus;
  if (s == "-" || s == "minus" || s == "-1") return Sign::Minus;
  throw PreconditionError("--s must be + or -, got '" + s + "'");
}

EigenIndex index_from(const RunConfig& cfg) {
  if (cfg.E) return eigen_index_from_value(cfg.n, *cfg.E).index;
  require(cfg.k >= 0, "--k must be nonnegative");
  const EigenIndex idx{cfg.n, static_cast<std::size_t>(cfg.k), parse_sign(cfg.s)};
  validate(idx);
  return idx;
}

GridExtents extents_from(const RunConfig& cfg) {
  GridExtents g{cfg.q_min, cfg.q_max, cfg.p_min, cfg.p_max, cfg.nq, cfg.np};
  g.validate();
  return g;
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v;
  return os.str();
}

// ---------------------------------------------------------------------------

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  require(cfg.n >= 0 && cfg.n <= 20, "--n (n_max) must be in [0, 20]");
  require_format(cfg, {"csv", "json"});
  Sink sink(cfg.out, out);
  std::size_t rows = cfg.n == 0 ? 1 : 0;
  if (cfg.format == "csv") {
    io::write_spectrum_csv(sink.stream(), cfg.n);
    for (int n = 1; n <= cfg.n; ++n) rows += std::size_t{1} << n;
  } else {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    if (cfg.n == 0) doc.push_back({{"n", 0}, {"k", 0}, {"s", 0}, {"E", 0.0}});
    for (int n = 1; n <= cfg.n; ++n) {
      for (double e : dn_eigenvalues(n)) {
        const auto idx = eigen_index_from_value(n, e).index;
        doc.push_back({{"n", n}, {"k", idx.k}, {"s", idx.s == Sign::Plus ? 1 : -1}, {"E", e}});
      }
    }
    rows = doc.size();
    sink.stream() << doc.dump(1) << '\n';
  }
  sink.close();
  log << "rows=" << rows << '\n';
  return kOk;
}

int cmd_eigenfunction(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  require_format(cfg, {"csv"});
  const EigenIndex idx = index_from(cfg);
  const auto phi = eigenfunction(idx, cfg.L);
  const auto c_phi = apply_c_grid(phi);
  double residual = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) residual = std::max(residual, std::abs(c_phi[j] - idx.eigenvalue() * phi[j]));
  Sink sink(cfg.out, out);
  io::write_eigenfunction_csv(sink.stream(), phi);
  sink.close();
  log << "n=" << idx.n << " k=" << idx.k << " s=" << (idx.s == Sign::Plus ? '+' : '-')
      << " E=" << io::format_double(idx.eigenvalue()) << " L=" << cfg.L << " rows=" << phi.size()
      << " residual=" << sci(residual) << '\n';
  return residual < 1e-12 ? kOk : kVerificationFailure;
}

// Nonzero positions of I_1 (+) D_0 (+) ... (+) D_{K-1} in the Haar basis.
std::vector<SparseEntry> haar_block_pattern(int level) {
  std::vector<SparseEntry> pattern{{0, 0, 1.0}};
  for (int n = 1; n < level; ++n) {
    const std::size_t base = std::size_t{1} << n;
    for (std::size_t i = 0; i < base; ++i)
      for (int j = 1; j <= n; ++j)
        pattern.push_back({static_cast<std::uint32_t>(base + i), static_cast<std::uint32_t>(base + (i ^ digit_mask(j, n))),
                           std::ldexp(1.0, -j)});
  }
  return pattern;
}

int cmd_spy(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  require(cfg.K >= 1 && cfg.K <= kMaxQubits, "--K must be in [1, 20]");
  require(cfg.basis == "qubit" || cfg.basis == "haar", "--basis must be qubit or haar");
  require_format(cfg, {"csv"});
  const SparseOperator op = cfg.basis == "qubit" ? build_ck(cfg.K, cfg.lambda)
                                                 : SparseOperator(dim_of_level(cfg.K), haar_block_pattern(cfg.K));
  Sink sink(cfg.out, out);
  io::write_spy_csv(sink.stream(), op);
  sink.close();
  log << "basis=" << cfg.basis << " K=" << cfg.K << " dim=" << op.dim() << " nnz=" << op.nnz() << '\n';
  return kOk;
}

int cmd_build_ck(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  require(cfg.K >= 1 && cfg.K <= kMaxQubits, "--K must be in [1, 20]");
  require_format(cfg, {"mm", "csv"});
  const auto op = build_ck(cfg.K, cfg.lambda);
  Sink sink(cfg.out, out);
  if (cfg.format == "mm") {
    io::write_matrix_market(sink.stream(), op);
  } else {
    sink.stream() << "row,col,value\n";
    for (const auto& e : op.entries()) sink.stream() << e.row << ',' << e.col << ',' << io::format_double(e.value) << '\n';
  }
  sink.close();
  log << "K=" << cfg.K << " dim=" << op.dim() << " nnz=" << op.nnz() << " symmetric=" << (op.symmetric() ? 1 : 0) << '\n';
  return kOk;
}

int cmd_potential(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  require(cfg.K >= 1 && cfg.K <= kMaxQubits, "--K must be in [1, 20]");
  require_format(cfg, {"csv"});
  Sink sink(cfg.out, out);
  if (cfg.what == "sum") {
    const int level = std::max(cfg.L, cfg.K);
    const auto v = rademacher_partial_sum({cfg.omega, cfg.K}, level);
    io::write_potential_csv(sink.stream(), v);
    double dev = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j)
      dev = std::max(dev, std::abs(v[j] - cfg.omega * (cell_midpoint(j, level) - 0.5)));
    log << "K=" << cfg.K << " L=" << level << " max_midpoint_deviation=" << sci(dev)
        << " bound=" << sci(std::abs(cfg.omega) * std::ldexp(1.0, -cfg.K - 1)) << '\n';
  } else if (cfg.what == "coefficients") {
    io::write_potential_coefficients_csv(sink.stream(), cfg.K, cfg.omega);
    log << "scales=" << cfg.K << '\n';
  } else if (cfg.what == "vk") {
    io::write_diagonal_csv(sink.stream(), build_vk(cfg.K, cfg.omega));
    log << "K=" << cfg.K << " dim=" << dim_of_level(cfg.K) << '\n';
  } else {
    throw PreconditionError("--what must be sum, coefficients or vk");
  }
  sink.close();
  return kOk;
}

std::string frame_stem(const std::string& prefix, int frame) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "_%04d", frame);
  return prefix + buf;
}

int cmd_evolve(const RunConfig& cfg, std::ostream&, std::ostream& log) {
  require(cfg.frames >= 1 && cfg.frames <= 10000, "--frames must be in [1, 10000]");
  require(cfg.method == "closed" || cfg.method == "numeric", "--method must be closed or numeric");
  require(cfg.interp == "bilinear" || cfg.interp == "bicubic", "--interp must be bilinear or bicubic");
  require_format(cfg, {"csv", "bin"});
  require(!cfg.out.empty() && cfg.out != "-", "evolve writes frame files; --out must name a path prefix");
  if (cfg.method == "numeric") require(cfg.dt > 0.0, "--dt must be positive");

  double eigenvalue = 0.0;
  if (cfg.E) {
    require(std::abs(*cfg.E) < 1.0, "--E must lie in (-1, 1)");
    eigenvalue = *cfg.E;
  } else {
    eigenvalue = index_from(cfg).eigenvalue();
  }
  const auto method = cfg.interp == "bicubic" ? Interpolation::Bicubic : Interpolation::Bilinear;
  const GridExtents g = extents_from(cfg);
  const WignerGrid f0 = coherent_wigner(g, cfg.q0, cfg.p0, cfg.sigma);

  const std::filesystem::path prefix(cfg.out);
  if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());

  auto write_frame = [&](const WignerGrid& f, int index, double t) {
    const std::string stem = frame_stem(cfg.out, index);
    if (cfg.format == "bin") {
      io::write_wigner_binary(stem, f, t);
    } else {
      std::ofstream file(stem + ".csv");
      if (!file) throw IoError("cannot open " + stem + ".csv");
      io::write_wigner_csv(file, f);
    }
  };

  std::vector<PhasePoint> trajectory;
  nlohmann::ordered_json frames = nlohmann::ordered_json::array();
  WignerGrid current = f0;
  for (int i = 0; i <= cfg.frames; ++i) {
    const double t = cfg.t * static_cast<double>(i) / cfg.frames;
    if (i > 0) {
      if (cfg.method == "closed") {
        current = evolve_closed_form(f0, {cfg.lambda, eigenvalue, t}, method);
      } else {
        current = evolve_numeric(current, {cfg.lambda, eigenvalue, cfg.t / cfg.frames}, cfg.dt, method);
      }
    }
    write_frame(current, i, t);
    const auto [q, p] = current.centroid();
    trajectory.push_back({q, p});
    frames.push_back({{"frame", i}, {"t", t}, {"centroid_q", q}, {"centroid_p", p}, {"mass", current.integral()}});
  }

  nlohmann::ordered_json summary;
  summary["lambda"] = cfg.lambda;
  summary["E"] = eigenvalue;
  summary["expected_center"] = {-cfg.lambda * eigenvalue, 0.0};
  summary["method"] = cfg.method;
  summary["interpolation"] = cfg.interp;
  summary["frames"] = frames;
  summary["final_l2_distance_to_initial"] = l2_distance(current, f0);
  bool have_fit = false;
  CircleFit fit;
  try {
    fit = fit_circle(trajectory);
    have_fit = std::isfinite(fit.center_q) && std::isfinite(fit.center_p);
  } catch (const PreconditionError&) {
  }
  if (have_fit) {
    summary["fitted_center"] = {fit.center_q, fit.center_p};
    summary["fitted_radius"] = fit.radius;
  } else {
    summary["fitted_center"] = nullptr;
  }
  std::ofstream sfile(cfg.out + "_summary.json");
  if (!sfile) throw IoError("cannot open " + cfg.out + "_summary.json");
  sfile << summary.dump(2) << '\n';
  if (!sfile) throw IoError("write failed: " + cfg.out + "_summary.json");

  log << "frames=" << cfg.frames + 1 << " E=" << io::format_double(eigenvalue)
      << " expected_center=(" << io::format_double(-cfg.lambda * eigenvalue) << ", 0)";
  if (have_fit) log << " fitted_center=(" << sci(fit.center_q) << ", " << sci(fit.center_p) << ")";
  log << " final_l2_distance=" << sci(l2_distance(current, f0)) << '\n';
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require(cfg.fault.empty() || cfg.fault == "dn-sign", "--inject-fault accepts only dn-sign");
  VerificationOptions options;
  options.flip_dn_sign = cfg.fault == "dn-sign";
  const auto results = run_verification(options);
  Sink sink(cfg.out, out);
  int failures = 0;
  for (const auto& r : results) {
    sink.stream() << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    failures += r.passed ? 0 : 1;
  }
  for (const auto& note : erratum_notes()) sink.stream() << note << '\n';
  sink.stream() << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed") << '\n';
  sink.close();
  return failures == 0 ? kOk : kVerificationFailure;
}

template <typename F>
double best_time(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    best = std::min(best, elapsed.count());
  }
  return best;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  require(cfg.l_min >= 1 && cfg.l_min <= cfg.l_max && cfg.l_max <= max_level(), "--Lmin/--Lmax must satisfy 1 <= Lmin <= Lmax <= level cap");
  require(cfg.reps >= 1, "--reps must be >= 1");
  require_format(cfg, {"csv"});
  Sink sink(cfg.out, out);
  auto& os = sink.stream();
  os << "L,N,grid_serial_s,grid_parallel_s,fast_apply_c_s,haar_roundtrip_s,dense_s,fast_ratio,nnz_ck_per_dim,nnz_haar_per_dim\n";
  double previous = 0.0;
  double worst_ratio = 0.0;
  for (int level = cfg.l_min; level <= cfg.l_max; ++level) {
    PiecewiseConstantFn f(level);
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = std::sin(0.37 * static_cast<double>(j));
    double sink_value = 0.0;
    const double grid_serial = best_time(cfg.reps, [&] { sink_value += serial::apply_c_grid(f)[0]; });
    const double grid_parallel = best_time(cfg.reps, [&] { sink_value += apply_c_grid(f)[0]; });
    const HaarCoeffs coeffs = haar_forward(f);
    const double fast = best_time(cfg.reps, [&] { sink_value += fast_apply_c(coeffs)[1]; });
    const double roundtrip = best_time(cfg.reps, [&] { sink_value += apply_c_haar(f)[0]; });
    std::string dense;
    if (level <= kDenseLevelCap) {
      const DenseMatrix m = restricted_matrix(level);
      const Eigen::Map<const Eigen::VectorXd> v(f.values().data(), static_cast<Eigen::Index>(f.size()));
      dense = io::format_double(best_time(cfg.reps, [&] {
        const Eigen::VectorXd r = m * v;
        sink_value += r(0);
      }));
    }
    const double ratio = previous > 0.0 ? fast / previous : 0.0;
    if (previous > 0.0 && level >= 17) worst_ratio = std::max(worst_ratio, ratio);
    previous = fast;
    const double dim = static_cast<double>(dim_of_level(level));
    os << level << ',' << dim_of_level(level) << ',' << io::format_double(grid_serial) << ','
       << io::format_double(grid_parallel) << ',' << io::format_double(fast) << ','
       << io::format_double(roundtrip) << ',' << dense << ','
       << (ratio > 0.0 ? io::format_double(ratio) : std::string()) << ',' << level << ','
       << io::format_double(static_cast<double>(haar_representation_nnz(level)) / dim) << '\n';
    if (sink_value == 42.4242) log << ' ';  // keep the timed work observable
  }
  sink.close();
  log << "dense path refused above L=" << kDenseLevelCap << "; worst fast_apply_c ratio for L>=17: "
      << (worst_ratio > 0.0 ? io::format_double(worst_ratio) : std::string("n/a")) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out, "Output file (or path prefix for evolve); stdout when omitted");
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json", "mm", "bin"}));
}

void add_index(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--n", cfg.n, "Scale n of the eigenvalue label");
  sub->add_option("--k", cfg.k, "Index k of the eigenvalue label, 0 <= k < 2^(n-1)");
  sub->add_option("--s", cfg.s, "Sign of the eigenvalue label (+ or -)");
  sub->add_option_function<double>("--E", [&cfg](double e) { cfg.E = e; }, "Eigenvalue (alternative to --k/--s)");
}

void add_grid(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--qmin", cfg.q_min);
  sub->add_option("--qmax", cfg.q_max);
  sub->add_option("--pmin", cfg.p_min);
  sub->add_option("--pmax", cfg.p_max);
  sub->add_option("--nq", cfg.nq);
  sub->add_option("--np", cfg.np);
}

// Inserts config-file tokens right after the subcommand name so that flags on
// the command line, which come later, take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::vector<std::string> config_tokens;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw PreconditionError("--config requires a file name");
      config_tokens = read_config(args[++i]);
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_tokens = read_config(args[i].substr(9));
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config_tokens.empty()) return rest;
  auto sub = std::find_if(rest.begin(), rest.end(), [](const std::string& a) { return !a.starts_with("-"); });
  if (sub == rest.end()) throw PreconditionError("--config requires a subcommand");
  rest.insert(sub + 1, config_tokens.begin(), config_tokens.end());
  return rest;
}

}  // namespace

std::vector<std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::vector<std::string> tokens;
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw PreconditionError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw PreconditionError(path + ":" + std::to_string(line_no) + ": empty key");
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& log) {
  RunConfig cfg;
  CLI::App app{"Fractal quantum-metamaterial operators, spectra and phase-space dynamics", "fqmm"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1, 1);

  std::function<int()> action;
  auto bind = [&](CLI::App* sub, int (*fn)(const RunConfig&, std::ostream&, std::ostream&),
                  std::string default_format = "csv") {
    sub->callback([&action, &cfg, &out, &log, fn, default_format] {
      if (cfg.format.empty()) cfg.format = default_format;
      action = [&cfg, &out, &log, fn] { return fn(cfg, out, log); };
    });
  };

  auto* spectrum = app.add_subcommand("spectrum", "All eigenvalues (n, k, s, E) of D_0 .. D_nmax");
  spectrum->add_option("--n", cfg.n, "Largest scale n_max");
  add_common(spectrum, cfg);
  bind(spectrum, cmd_spectrum);

  auto* eigen = app.add_subcommand("eigenfunction", "Walsh-type eigenfunction of C as CSV");
  add_index(eigen, cfg);
  eigen->add_option("--L", cfg.L, "Grid level (>= n + 1)");
  add_common(eigen, cfg);
  bind(eigen, cmd_eigenfunction);

  auto* spy = app.add_subcommand("spy", "Nonzero pattern of C_K or of its Haar-basis form");
  spy->add_option("--K", cfg.K, "Number of qubits");
  spy->add_option("--lambda", cfg.lambda);
  spy->add_option("--basis", cfg.basis, "qubit or haar");
  add_common(spy, cfg);
  bind(spy, cmd_spy);

  auto* ck = app.add_subcommand("build-ck", "Export C_K (Matrix Market by default)");
  ck->add_option("--K", cfg.K, "Number of qubits");
  ck->add_option("--lambda", cfg.lambda);
  add_common(ck, cfg);
  bind(ck, cmd_build_ck, "mm");

  auto* potential = app.add_subcommand("potential", "Rademacher partial sums, Haar coefficients, or V_K");
  potential->add_option("--K", cfg.K, "Truncation / number of qubits");
  potential->add_option("--L", cfg.L, "Sampling level (raised to K if smaller)");
  potential->add_option("--omega", cfg.omega);
  potential->add_option("--what", cfg.what, "sum, coefficients or vk");
  add_common(potential, cfg);
  bind(potential, cmd_potential);

  auto* evolve = app.add_subcommand("evolve", "Wigner-plane evolution of a Gaussian conditioned on a QMM eigenstate");
  add_index(evolve, cfg);
  evolve->add_option("--lambda", cfg.lambda);
  add_grid(evolve, cfg);
  evolve->add_option("--q0", cfg.q0);
  evolve->add_option("--p0", cfg.p0);
  evolve->add_option("--sigma", cfg.sigma);
  evolve->add_option("--t", cfg.t, "Final time");
  evolve->add_option("--dt", cfg.dt, "Step of the numeric solver");
  evolve->add_option("--frames", cfg.frames, "Number of frame intervals");
  evolve->add_option("--method", cfg.method, "closed or numeric");
  evolve->add_option("--interp", cfg.interp, "bilinear or bicubic");
  add_common(evolve, cfg);
  bind(evolve, cmd_evolve);

  auto* verify = app.add_subcommand("verify", "Run every cross-module invariant");
  verify->add_option("--inject-fault", cfg.fault, "Fault injection (dn-sign)");
  add_common(verify, cfg);
  bind(verify, cmd_verify);

  auto* bench = app.add_subcommand("bench", "Time grid, Haar and dense application of C");
  bench->add_option("--Lmin", cfg.l_min);
  bench->add_option("--Lmax", cfg.l_max);
  bench->add_option("--reps", cfg.reps);
  add_common(bench, cfg);
  bind(bench, cmd_bench);

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.push_back("fqmm");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : storage) argv.push_back(a.data());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
      out << app.help();
      return kOk;
    } catch (const CLI::ParseError& e) {
      log << "error: " << e.what() << '\n';
      return kPreconditionViolation;
    }
    return action ? action() : kPreconditionViolation;
  } catch (const PreconditionError& e) {
    log << "error: " << e.what() << '\n';
    return kPreconditionViolation;
  } catch (const ConsistencyError& e) {
    log << "verification failure: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const IoError& e) {
    log << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    log << "i/o error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace fqmm::cli
