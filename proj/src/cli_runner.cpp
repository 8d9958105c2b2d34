#include "csreg/cli_runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "csreg/core.hpp"
#include "csreg/experiments.hpp"
#include "csreg/quantize.hpp"
#include "csreg/regularizers.hpp"
#include "csreg/solvers.hpp"

namespace csreg {

namespace {

using nlohmann::json;

json config_json(const RunConfig& cfg) {
  json j;
  j["subcommand"] = cfg.subcommand;
  j["kind"] = cfg.kind;
  j["reg"] = cfg.reg;
  j["demo"] = cfg.demo;
  j["graph_path"] = cfg.graph_path;
  j["input_path"] = cfg.input_path;
  j["mode"] = cfg.mode;
  j["out"] = cfg.out;
  j["m_list"] = cfg.m_list;
  j["k_list"] = cfg.k_list;
  j["n"] = cfg.n;
  j["k"] = cfg.k;
  j["bits"] = cfg.bits;
  j["trials"] = cfg.trials;
  j["restarts"] = cfg.restarts;
  j["max_iter"] = cfg.max_iter;
  j["jobs"] = cfg.jobs;
  j["resolution"] = cfg.resolution;
  j["points"] = cfg.points;
  j["seed"] = cfg.seed;
  j["lambda"] = cfg.lambda;
  j["beta"] = cfg.beta;
  j["tol"] = cfg.tol;
  j["lo"] = cfg.lo;
  j["hi"] = cfg.hi;
  j["paper_scale"] = cfg.paper_scale;
  j["baseline"] = cfg.baseline;
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

void write_manifest(const RunConfig& cfg) {
  write_json_file(cfg.out + ".manifest.json", config_json(cfg));
}

long parse_long_strict(const std::string& token) {
  size_t used = 0;
  long v = 0;
  try {
    v = std::stol(token, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + token + "'");
  }
  if (used != token.size()) throw std::invalid_argument("not an integer: '" + token + "'");
  return v;
}

TrialConfig trial_config(const RunConfig& cfg) {
  TrialConfig trial;
  trial.fista.max_iter = cfg.max_iter;
  trial.fista.stop_tol = cfg.tol;
  trial.fista.restarts = cfg.restarts;
  trial.dr.max_iter = cfg.max_iter;
  trial.bin_beta = cfg.beta;
  trial.lambda = cfg.lambda;
  return trial;
}

CurveConfig curve_config(const RunConfig& cfg) {
  CurveConfig curve;
  curve.n = cfg.n;
  curve.trials = cfg.trials;
  curve.base_seed = cfg.seed;
  curve.jobs = cfg.jobs;
  curve.trial = trial_config(cfg);
  return curve;
}

InstanceKind recover_kind(const std::string& name) {
  if (name == "sym-binary") return InstanceKind::sym_binary();
  if (name == "one-sided-binary") return InstanceKind::one_sided_binary();
  if (name == "sym-ternary") return InstanceKind::sym_ternary();
  throw std::invalid_argument("recover kind must be sym-binary, one-sided-binary, or sym-ternary");
}

// The --reg flag names either a matched penalty (which pins the instance
// family) or a baseline method.
Method recover_method(const std::string& reg, const std::string& kind) {
  if (reg == "bin" || reg == "osb" || reg == "ter") {
    const std::string expected =
        reg == "bin" ? "sym-binary" : reg == "osb" ? "one-sided-binary" : "sym-ternary";
    if (kind != expected)
      throw std::invalid_argument("--reg " + reg + " pairs with --kind " + expected);
    return Method::CsFista;
  }
  if (reg == "linf-dr") return Method::LinfDR;
  if (reg == "l1-dr") return Method::L1DR;
  if (reg == "bin-beta-fixed" || reg == "bin-beta-joint") {
    if (kind != "sym-binary")
      throw std::invalid_argument("--reg " + reg + " pairs with --kind sym-binary");
    return reg == "bin-beta-fixed" ? Method::BinBetaFixed : Method::BinBetaJoint;
  }
  throw std::invalid_argument("unknown --reg: " + reg);
}

int run_recover(const RunConfig& cfg) {
  InstanceKind kind = recover_kind(cfg.kind);
  Method method = recover_method(cfg.reg, cfg.kind);
  std::vector<SuccessCurveRow> rows = success_curve(kind, method, cfg.m_list, curve_config(cfg));
  write_curve_csv(cfg.out, rows);
  write_manifest(cfg);
  return 0;
}

int run_sparse(const RunConfig& cfg) {
  InstanceTag tag;
  if (cfg.kind == "sparse-osb") {
    tag = InstanceTag::SparseOsb;
  } else if (cfg.kind == "sparse-ter") {
    tag = InstanceTag::SparseTer;
  } else {
    throw std::invalid_argument("sparse kind must be sparse-osb or sparse-ter");
  }
  Method method;
  if (cfg.reg == "osb" || cfg.reg == "ter") {
    const std::string expected = cfg.reg == "osb" ? "sparse-osb" : "sparse-ter";
    if (cfg.kind != expected)
      throw std::invalid_argument("--reg " + cfg.reg + " pairs with --kind " + expected);
    method = Method::CsFista;
  } else if (cfg.reg == "l1-dr") {
    method = Method::L1DR;
  } else if (cfg.reg == "linf-dr") {
    method = Method::LinfDR;
  } else {
    throw std::invalid_argument("sparse --reg must be osb, ter, l1-dr, or linf-dr");
  }
  if (cfg.m_list.size() != 1)
    throw std::invalid_argument("sparse takes a single --m, not a sweep");
  std::vector<SuccessCurveRow> rows =
      sparse_success_curve(tag, cfg.m_list.front(), cfg.k_list, method, curve_config(cfg));
  write_curve_csv(cfg.out, rows);
  write_manifest(cfg);
  return 0;
}

int run_eigvec(const RunConfig& cfg) {
  Method method = cfg.baseline ? Method::EigMuJoint : Method::CsFista;
  std::vector<SuccessCurveRow> rows =
      success_curve(InstanceKind::eigenvector(), method, cfg.m_list, curve_config(cfg));
  write_curve_csv(cfg.out, rows);
  write_manifest(cfg);
  return 0;
}

int run_ortho(const RunConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  TrialConfig trial = trial_config(cfg);
  std::vector<SuccessCurveRow> rows;
  for (size_t r = 0; r < cfg.m_list.size(); ++r) {
    int m = cfg.m_list[r];
    double rate = run_orthogonal(cfg.n, cfg.k, m, cfg.trials, cfg.seed, trial,
                                 r * std::uint64_t(cfg.trials), cfg.jobs);
    SuccessCurveRow row;
    row.ratio = double(m) / double(cfg.n);
    row.success_prob = rate;
    row.stderr_value = std::sqrt(rate * (1.0 - rate) / double(cfg.trials));
    row.trials = cfg.trials;
    rows.push_back(row);
  }
  write_curve_csv(cfg.out, rows);
  write_manifest(cfg);
  return 0;
}

int run_twobit(const RunConfig& cfg) {
  if (cfg.bits != 2) throw std::invalid_argument("only two-level instances are generated");
  TrialConfig trial = trial_config(cfg);
  std::vector<SuccessCurveRow> rows;
  for (size_t r = 0; r < cfg.m_list.size(); ++r) {
    rows.push_back(run_two_bit(cfg.n, cfg.m_list[r], cfg.lambda, cfg.trials, cfg.seed, trial,
                               r * std::uint64_t(cfg.trials), cfg.jobs));
  }
  write_curve_csv(cfg.out, rows);
  write_manifest(cfg);
  return 0;
}

int run_maxcut_cmd(const RunConfig& cfg) {
  if (!cfg.demo.empty() && !cfg.graph_path.empty())
    throw std::invalid_argument("pass --demo or --graph, not both");
  Graph graph;
  if (!cfg.graph_path.empty()) {
    graph = read_gset(cfg.graph_path);
  } else if (cfg.demo == "weighted4" || cfg.demo.empty()) {
    graph = weighted4_demo();
  } else if (cfg.demo == "unit5") {
    graph = unit5_demo();
  } else {
    throw std::invalid_argument("unknown demo graph: " + cfg.demo);
  }
  FistaConfig fista;
  fista.max_iter = cfg.max_iter;
  fista.stop_tol = cfg.tol;
  int restarts = cfg.restarts > 0 ? cfg.restarts : 10;
  MaxCutReport report = run_maxcut(graph, cfg.lambda, restarts, cfg.seed, fista);
  json j;
  j["best_cut"] = report.best_cut;
  j["assignment"] = report.assignment;
  j["restarts"] = json::array();
  for (const MaxCutRestart& r : report.restarts) {
    j["restarts"].push_back(
        {{"initial_cut", r.initial_cut}, {"final_cut", r.final_cut}, {"iterations", r.iterations}});
  }
  write_json_file(cfg.out, j);
  write_manifest(cfg);
  return 0;
}

int run_quantize(const RunConfig& cfg) {
  std::vector<double> values = read_vector_file(cfg.input_path);
  if (values.empty()) throw std::invalid_argument("empty input vector: " + cfg.input_path);
  DenseVector w = Eigen::Map<const DenseVector>(values.data(), Eigen::Index(values.size()));
  QuantResult q;
  if (cfg.mode == "binary") {
    q = binarize(w);
  } else if (cfg.mode == "ternary") {
    q = ternarize(w);
  } else {
    throw std::invalid_argument("--mode must be binary or ternary");
  }
  json j;
  j["scale"] = q.scale;
  j["threshold"] = q.threshold;
  j["levels"] = std::vector<double>(q.levels.data(), q.levels.data() + q.levels.size());
  j["objective"] = q.objective;
  write_json_file(cfg.out, j);
  write_manifest(cfg);
  return 0;
}

double fd_rel_err_vector(const Regularizer& reg, const DenseVector& x) {
  DenseVector analytic = grad_analytic(reg, x);
  DenseVector fd(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double h = 1e-5 * (1.0 + std::abs(x(i)));
    DenseVector xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    fd(i) = (value(reg, xp) - value(reg, xm)) / (2.0 * h);
  }
  return (fd - analytic).norm() / std::max(analytic.norm(), 1e-12);
}

double fd_rel_err_matrix(const Regularizer& reg, const DenseMatrix& x) {
  DenseMatrix analytic = grad_analytic(reg, x);
  DenseMatrix fd(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      double h = 1e-5 * (1.0 + std::abs(x(r, c)));
      DenseMatrix xp = x, xm = x;
      xp(r, c) += h;
      xm(r, c) -= h;
      fd(r, c) = (value(reg, xp) - value(reg, xm)) / (2.0 * h);
    }
  }
  return (fd - analytic).norm() / std::max(analytic.norm(), 1e-12);
}

int run_gradcheck(const RunConfig& cfg) {
  if (cfg.points < 1) throw std::invalid_argument("points must be >= 1");
  if (cfg.n < 2) throw std::invalid_argument("n must be >= 2");
  const Eigen::Index n = cfg.n;
  const std::vector<std::string> kinds = {"bin",    "osb",         "ter",       "eig",
                                          "om",     "equ",         "bbin",      "binexp",
                                          "fixed-scale", "nullspace", "bin-beta"};
  const double tol = 1e-5;
  std::ofstream out(cfg.out);
  if (!out) throw std::invalid_argument("cannot open for writing: " + cfg.out);
  out << "kind,points,max_rel_err,pass\n";
  bool all_pass = true;
  char line[128];
  for (size_t idx = 0; idx < kinds.size(); ++idx) {
    const std::string& name = kinds[idx];
    RngStream rng(cfg.seed, idx);
    double worst = 0.0;
    for (int p = 0; p < cfg.points; ++p) {
      double err = 0.0;
      if (name == "om") {
        Regularizer reg = Regularizer::om(4);
        err = fd_rel_err_matrix(reg, standard_normal_matrix(6, 4, rng));
      } else if (name == "eig") {
        Regularizer reg = Regularizer::eig(standard_normal_matrix(n, n, rng));
        err = fd_rel_err_vector(reg, standard_normal_vector(n, rng));
      } else if (name == "nullspace") {
        Regularizer reg = Regularizer::nullspace(standard_normal_matrix(n, n, rng));
        err = fd_rel_err_vector(reg, standard_normal_vector(n, rng));
      } else if (name == "equ") {
        Regularizer reg = Regularizer::equ(2);
        err = fd_rel_err_vector(reg, standard_normal_vector(2 * n, rng));
      } else {
        Regularizer reg = name == "bin"      ? Regularizer::bin()
                          : name == "osb"    ? Regularizer::osb()
                          : name == "ter"    ? Regularizer::ter()
                          : name == "bbin"   ? Regularizer::bbin()
                          : name == "binexp" ? Regularizer::binexp()
                          : name == "fixed-scale" ? Regularizer::fixed_scale(1.0)
                                                  : Regularizer::bin_beta(cfg.beta);
        err = fd_rel_err_vector(reg, standard_normal_vector(n, rng));
      }
      worst = std::max(worst, err);
    }
    bool pass = worst < tol;
    all_pass = all_pass && pass;
    std::snprintf(line, sizeof(line), "%s,%d,%.6g,%d\n", name.c_str(), cfg.points, worst,
                  pass ? 1 : 0);
    out << line;
  }
  out.close();
  write_manifest(cfg);
  return all_pass ? 0 : 1;
}

int run_landscape(const RunConfig& cfg) {
  if (cfg.resolution < 2) throw std::invalid_argument("resolution must be >= 2");
  if (!(cfg.hi > cfg.lo)) throw std::invalid_argument("need hi > lo");
  Regularizer reg;
  if (cfg.kind == "bin") {
    reg = Regularizer::bin();
  } else if (cfg.kind == "osb") {
    reg = Regularizer::osb();
  } else if (cfg.kind == "ter") {
    reg = Regularizer::ter();
  } else if (cfg.kind == "bbin") {
    reg = Regularizer::bbin();
  } else if (cfg.kind == "binexp") {
    reg = Regularizer::binexp();
  } else if (cfg.kind == "nondiff-sq") {
    reg = Regularizer::nondiff_sq();
  } else if (cfg.kind == "nondiff-root") {
    reg = Regularizer::nondiff_root();
  } else if (cfg.kind == "fixed-scale") {
    reg = Regularizer::fixed_scale(1.0);
  } else if (cfg.kind == "equ") {
    reg = Regularizer::equ(2);  // 2-D input splits into two one-entry levels
  } else {
    throw std::invalid_argument("landscape kind must admit 2-D inputs (got " + cfg.kind + ")");
  }
  std::vector<LandscapeRow> rows = landscape_grid(reg, cfg.lo, cfg.hi, cfg.resolution);
  std::ofstream out(cfg.out);
  if (!out) throw std::invalid_argument("cannot open for writing: " + cfg.out);
  write_landscape_csv(out, rows);
  out.close();
  write_manifest(cfg);
  return 0;
}

std::uint64_t env_seed_or_default() {
  const char* env = std::getenv("CSREG_SEED");
  if (env == nullptr || *env == '\0') return 1729;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw std::invalid_argument("CSREG_SEED is not an unsigned integer");
  return std::uint64_t(v);
}

struct SweepFlags {
  std::string m;
  std::string k;
};

const char* kTopHelp =
    "usage: csreg <subcommand> [flags]\n"
    "\n"
    "subcommands:\n"
    "  recover    success-probability curve for structured vector recovery\n"
    "  sparse     recovery vs nonzero count at fixed measurement budget\n"
    "  eigvec     eigenvector recovery curve (--baseline for joint least squares)\n"
    "  ortho      orthogonal-column matrix recovery rates\n"
    "  twobit     two-level (four-point) signal recovery curve\n"
    "  maxcut     box relaxation of max-cut on a demo or Gset graph\n"
    "  quantize   closed-form binary/ternary quantization of a vector file\n"
    "  gradcheck  finite-difference audit of every analytic gradient\n"
    "  landscape  2-D penalty surface on a square grid\n"
    "\n"
    "run `csreg <subcommand> --help` for flags; every run writes its artifact\n"
    "plus <out>.manifest.json echoing the resolved configuration.\n";

}  // namespace

std::vector<int> parse_sweep(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty sweep");
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3)
      throw std::invalid_argument("sweep must be lo:step:hi (got '" + text + "')");
    long lo = parse_long_strict(parts[0]);
    long step = parse_long_strict(parts[1]);
    long hi = parse_long_strict(parts[2]);
    if (step < 1) throw std::invalid_argument("sweep step must be >= 1");
    if (lo > hi) throw std::invalid_argument("sweep needs lo <= hi");
    for (long v = lo; v <= hi; v += step) out.push_back(int(v));
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(int(parse_long_strict(tok)));
  if (out.empty()) throw std::invalid_argument("empty sweep");
  return out;
}

std::vector<double> read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream ss(text);
  std::vector<double> values;
  double v = 0.0;
  while (ss >> v) values.push_back(v);
  ss.clear();
  std::string leftover;
  if (ss >> leftover)
    throw std::invalid_argument("non-numeric token '" + leftover + "' in " + path);
  return values;
}

int dispatch(const RunConfig& cfg) {
  if (cfg.out.empty()) throw std::invalid_argument("output path must not be empty");
  if (cfg.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  if (cfg.subcommand == "recover") return run_recover(cfg);
  if (cfg.subcommand == "sparse") return run_sparse(cfg);
  if (cfg.subcommand == "eigvec") return run_eigvec(cfg);
  if (cfg.subcommand == "ortho") return run_ortho(cfg);
  if (cfg.subcommand == "twobit") return run_twobit(cfg);
  if (cfg.subcommand == "maxcut") return run_maxcut_cmd(cfg);
  if (cfg.subcommand == "quantize") return run_quantize(cfg);
  if (cfg.subcommand == "gradcheck") return run_gradcheck(cfg);
  if (cfg.subcommand == "landscape") return run_landscape(cfg);
  throw std::invalid_argument("unknown subcommand: " + cfg.subcommand);
}

int run_cli(const std::vector<std::string>& args) {
  if (args.empty() || args[0] == "-h" || args[0] == "--help") {
    std::cout << kTopHelp;
    return 0;
  }
  const std::string sub = args[0];
  static const std::vector<std::string> known = {"recover", "sparse",   "eigvec",
                                                 "ortho",   "twobit",   "maxcut",
                                                 "quantize", "gradcheck", "landscape"};
  if (std::find(known.begin(), known.end(), sub) == known.end()) {
    std::cerr << "unknown subcommand: " << sub << "\n" << kTopHelp;
    return 2;
  }

  RunConfig cfg;
  cfg.subcommand = sub;
  try {
    cfg.seed = env_seed_or_default();
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Cauchy-Schwarz structure penalties: " + sub, "csreg " + sub};
  SweepFlags sweep;
  int trials_flag = -1;
  int default_trials = 100;

  auto add_seed = [&] {
    app.add_option("--seed", cfg.seed, "RNG base seed (beats CSREG_SEED)");
  };
  auto add_jobs = [&] { app.add_option("--jobs", cfg.jobs, "parallel trial workers"); };
  auto add_trials = [&](int def) {
    default_trials = def;
    app.add_option("--trials", trials_flag, "trials per sweep point");
    app.add_flag("--paper-scale", cfg.paper_scale, "use 1000 trials unless --trials is given");
  };
  auto add_solver = [&] {
    app.add_option("--max-iter", cfg.max_iter, "iteration cap per solve");
    app.add_option("--restarts", cfg.restarts, "random starts (0 = per-method default)");
    app.add_option("--tol", cfg.tol, "smooth-solver stopping tolerance");
  };
  auto add_out = [&](const char* def) {
    cfg.out = def;
    app.add_option("--out", cfg.out, "artifact path");
  };

  if (sub == "recover") {
    app.add_option("--kind", cfg.kind, "instance family");
    app.add_option("--reg", cfg.reg, "penalty or baseline method");
    app.add_option("--n", cfg.n, "signal length");
    sweep.m = "30:10:90";
    app.add_option("--m", sweep.m, "measurement sweep lo:step:hi");
    app.add_option("--beta", cfg.beta, "level for bin-beta-fixed");
    add_trials(100);
    add_solver();
    add_seed();
    add_jobs();
    add_out("recover.csv");
  } else if (sub == "sparse") {
    cfg.kind = "sparse-osb";
    cfg.reg = "osb";
    app.add_option("--kind", cfg.kind, "instance family");
    app.add_option("--reg", cfg.reg, "penalty or baseline method");
    app.add_option("--n", cfg.n, "signal length");
    sweep.m = "75";
    app.add_option("--m", sweep.m, "measurement count");
    sweep.k = "20:10:80";
    app.add_option("--k", sweep.k, "nonzero-count sweep lo:step:hi");
    add_trials(100);
    add_solver();
    add_seed();
    add_jobs();
    add_out("sparse.csv");
  } else if (sub == "eigvec") {
    app.add_option("--n", cfg.n, "signal length");
    sweep.m = "30:10:90";
    app.add_option("--m", sweep.m, "measurement sweep lo:step:hi");
    app.add_flag("--baseline", cfg.baseline, "joint (x, mu) least squares instead");
    add_trials(100);
    add_solver();
    add_seed();
    add_jobs();
    add_out("eigvec.csv");
  } else if (sub == "ortho") {
    cfg.n = 10;
    cfg.max_iter = 1000;
    app.add_option("--n", cfg.n, "rows of the unknown matrix");
    app.add_option("--k", cfg.k, "columns of the unknown matrix");
    sweep.m = "1,5,10";
    app.add_option("--m", sweep.m, "measurement sweep");
    add_trials(20);
    add_solver();
    add_seed();
    add_jobs();
    add_out("ortho.csv");
  } else if (sub == "twobit") {
    cfg.n = 10;
    app.add_option("--n", cfg.n, "signal length");
    sweep.m = "3:1:9";
    app.add_option("--m", sweep.m, "measurement sweep lo:step:hi");
    app.add_option("--lambda", cfg.lambda, "constraint penalty weight");
    app.add_option("--bits", cfg.bits, "level count (2 supported)");
    add_trials(100);
    add_solver();
    add_seed();
    add_jobs();
    add_out("twobit.csv");
  } else if (sub == "maxcut") {
    cfg.lambda = 1.0;
    cfg.restarts = 10;
    app.add_option("--demo", cfg.demo, "built-in graph: weighted4 | unit5");
    app.add_option("--graph", cfg.graph_path, "Gset-format graph file");
    app.add_option("--lambda", cfg.lambda, "binary penalty weight");
    add_solver();
    add_seed();
    add_out("maxcut.json");
  } else if (sub == "quantize") {
    app.add_option("--input", cfg.input_path, "vector file (whitespace/comma separated)")
        ->required();
    app.add_option("--mode", cfg.mode, "binary | ternary");
    add_seed();
    add_out("quantize.json");
  } else if (sub == "gradcheck") {
    cfg.n = 8;
    app.add_option("--n", cfg.n, "vector length for the sampled points");
    app.add_option("--points", cfg.points, "sample points per kind");
    app.add_option("--beta", cfg.beta, "bin-beta level");
    add_seed();
    add_out("gradcheck.csv");
  } else {  // landscape
    cfg.kind = "bin";
    app.add_option("--kind", cfg.kind, "penalty to sample");
    app.add_option("--lo", cfg.lo, "grid lower corner");
    app.add_option("--hi", cfg.hi, "grid upper corner");
    app.add_option("--res", cfg.resolution, "grid points per side");
    add_seed();
    add_out("landscape.csv");
  }

  std::vector<const char*> argv;
  argv.push_back("csreg");
  for (size_t i = 1; i < args.size(); ++i) argv.push_back(args[i].c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  cfg.trials = trials_flag >= 0 ? trials_flag : (cfg.paper_scale ? 1000 : default_trials);

  try {
    if (!sweep.m.empty()) cfg.m_list = parse_sweep(sweep.m);
    if (!sweep.k.empty()) cfg.k_list = parse_sweep(sweep.k);
    return dispatch(cfg);
  } catch (const SolverAbort& e) {
    std::cerr << "solver abort: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

}  // namespace csreg
