#include "csreg/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>
#include <thread>

namespace csreg {

namespace {

double sign_draw(RngStream& rng) { return rng.uniform() < 0.5 ? -1.0 : 1.0; }

double relative_error_plain(const DenseVector& xhat, const DenseVector& x_star) {
  return (xhat - x_star).norm() / x_star.norm();
}

double relative_error_sign_flip(const DenseVector& xhat, const DenseVector& x_star) {
  return std::min((xhat - x_star).norm(), (xhat + x_star).norm()) / x_star.norm();
}

Regularizer regularizer_for(const RecoveryInstance& inst) {
  switch (inst.kind.tag) {
    case InstanceTag::SymBinary:
      return Regularizer::bin();
    case InstanceTag::OneSidedBinary:
    case InstanceTag::SparseOsb:
      return Regularizer::osb();
    case InstanceTag::SymTernary:
    case InstanceTag::SparseTer:
      return Regularizer::ter();
    case InstanceTag::Eigenvector:
      return Regularizer::eig(inst.structure);
    default:
      throw std::logic_error("no vector regularizer for this instance kind");
  }
}

// Runs fista from up to `restarts` starts; stops at the first one whose
// error measure clears the success threshold.
TrialOutcome restart_loop(int restarts, const SmoothObjective<DenseVector>& obj,
                          const std::function<DenseVector(const DenseVector&)>& project,
                          const std::function<DenseVector(int)>& make_start,
                          const FistaConfig& fista,
                          const std::function<double(const DenseVector&)>& error_of) {
  TrialOutcome out;
  for (int r = 0; r < restarts; ++r) {
    DenseVector start = make_start(r);
    try {
      auto report = fista_backtracking<DenseVector>(obj, project, start, fista);
      out.iterations_total += report.iterations;
      double err = error_of(report.iterate);
      out.relative_error = std::min(out.relative_error, err);
      if (err <= 1e-2) {
        out.success = true;
        out.restarts_used = r;
        return out;
      }
    } catch (const SolverAbort& abort) {
      out.diagnostic = abort.what();
    }
  }
  out.restarts_used = restarts;
  return out;
}

TrialOutcome run_two_bit_trial(const RecoveryInstance& inst, const TrialConfig& cfg,
                               RngStream& rng, const DenseVector* injected_start) {
  const Eigen::Index n = inst.a.cols();
  const DenseMatrix& a = inst.a;
  const DenseVector b = inst.b.col(0);
  const DenseVector x_star = inst.x_star.col(0);
  const double lambda = cfg.lambda;

  SmoothObjective<DenseVector> obj;
  obj.value = [&, lambda](const DenseVector& s) {
    DenseVector x = s.head(n) + s.tail(n);
    return eval_equ_stacked(s, 2) + lambda * (a * x - b).squaredNorm();
  };
  obj.gradient = [&, lambda](const DenseVector& s) {
    DenseVector x = s.head(n) + s.tail(n);
    DenseVector pen = 2.0 * lambda * (a.transpose() * (a * x - b));
    DenseVector g = grad_equ_stacked(s, 2);
    g.head(n) += pen;
    g.tail(n) += pen;
    return g;
  };

  // Iterates are kept on {A(y1 + y2) = b}: the constraint acts on the sum, so
  // the projector sees the stacked variable through [A A]. The penalty term
  // vanishes there; without the projection the scale-free regularizer
  // collapses iterates to small wrong-pattern points the penalty cannot fix.
  DenseMatrix a_stacked(a.rows(), 2 * n);
  a_stacked << a, a;
  AffineProjector proj(a_stacked, inst.b);

  FistaConfig fista = cfg.fista;
  int restarts = fista.restarts > 0 ? fista.restarts
                                    : default_restarts(InstanceTag::TwoBit, Method::CsFista);
  fista.restarts = 0;
  auto make_start = [&](int r) {
    if (r == 0 && injected_start != nullptr) return DenseVector(*injected_start);
    DenseVector s(2 * n);
    for (Eigen::Index i = 0; i < 2 * n; ++i) s(i) = rng.normal();
    return s;
  };
  auto error_of = [&](const DenseVector& s) {
    DenseVector xhat = s.head(n) + s.tail(n);
    return relative_error_sign_flip(xhat, x_star);
  };
  return restart_loop(
      restarts, obj, [&](const DenseVector& v) { return proj.project(v); }, make_start, fista,
      error_of);
}

std::vector<unsigned char> parallel_flags(int total, int jobs,
                                          const std::function<bool(int)>& item) {
  std::vector<unsigned char> out(size_t(total), 0);
  if (jobs <= 1 || total <= 1) {
    for (int i = 0; i < total; ++i) out[size_t(i)] = item(i) ? 1 : 0;
    return out;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= total) return;
      out[size_t(i)] = item(i) ? 1 : 0;
    }
  };
  std::vector<std::thread> pool;
  int threads = std::min(jobs, total);
  pool.reserve(size_t(threads));
  for (int j = 0; j < threads; ++j) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

SuccessCurveRow make_row(double ratio, const std::vector<unsigned char>& flags, int offset,
                         int trials) {
  int wins = 0;
  for (int t = 0; t < trials; ++t) wins += flags[size_t(offset + t)];
  SuccessCurveRow row;
  row.ratio = ratio;
  row.trials = trials;
  row.success_prob = double(wins) / double(trials);
  row.stderr_value = std::sqrt(row.success_prob * (1.0 - row.success_prob) / double(trials));
  return row;
}

}  // namespace

std::string tag_name(InstanceTag tag) {
  switch (tag) {
    case InstanceTag::SymBinary: return "sym-binary";
    case InstanceTag::OneSidedBinary: return "one-sided-binary";
    case InstanceTag::SymTernary: return "sym-ternary";
    case InstanceTag::TwoBit: return "two-bit";
    case InstanceTag::Eigenvector: return "eigenvector";
    case InstanceTag::OrthogonalMatrix: return "orthogonal";
    case InstanceTag::SparseOsb: return "sparse-osb";
    case InstanceTag::SparseTer: return "sparse-ter";
  }
  return "unknown";
}

std::string method_name(Method method) {
  switch (method) {
    case Method::CsFista: return "cs-fista";
    case Method::LinfDR: return "linf-dr";
    case Method::L1DR: return "l1-dr";
    case Method::BinBetaFixed: return "bin-beta-fixed";
    case Method::BinBetaJoint: return "bin-beta-joint";
    case Method::EigMuJoint: return "eig-mu-joint";
  }
  return "unknown";
}

int default_restarts(InstanceTag tag, Method method) {
  switch (method) {
    case Method::LinfDR:
    case Method::L1DR:
      return 1;
    case Method::BinBetaFixed:
    case Method::BinBetaJoint:
    case Method::EigMuJoint:
      return 10;
    case Method::CsFista:
      break;
  }
  switch (tag) {
    case InstanceTag::SymBinary:
    case InstanceTag::TwoBit:
    case InstanceTag::Eigenvector:
      return 10;
    default:
      return 1;
  }
}

RecoveryInstance gen_instance(InstanceKind kind, int n, int m, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("gen_instance: need n >= 1");
  if (m < 0 || m > n) throw std::invalid_argument("gen_instance: need 0 <= m <= n");
  bool needs_k = kind.tag == InstanceTag::OrthogonalMatrix ||
                 kind.tag == InstanceTag::SparseOsb || kind.tag == InstanceTag::SparseTer;
  if (needs_k && (kind.k < 1 || kind.k > n)) {
    throw std::invalid_argument("gen_instance: k out of [1, n]");
  }

  RecoveryInstance inst;
  inst.kind = kind;
  inst.seed = rng.seed();
  inst.stream_id = rng.stream_id();
  inst.a = standard_normal_matrix(m, n, rng);

  switch (kind.tag) {
    case InstanceTag::SymBinary: {
      DenseVector x(n);
      for (int i = 0; i < n; ++i) x(i) = sign_draw(rng);
      inst.x_star = x;
      break;
    }
    case InstanceTag::OneSidedBinary: {
      DenseVector x(n);
      for (int i = 0; i < n; ++i) x(i) = rng.uniform() < 0.5 ? 0.0 : 1.0;
      inst.x_star = x;
      break;
    }
    case InstanceTag::SymTernary: {
      DenseVector x(n);
      for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        x(i) = u < 0.25 ? -1.0 : (u < 0.75 ? 0.0 : 1.0);
      }
      inst.x_star = x;
      break;
    }
    case InstanceTag::TwoBit: {
      DenseVector parts(2 * n);
      for (int i = 0; i < n; ++i) parts(i) = sign_draw(rng);
      for (int i = 0; i < n; ++i) parts(n + i) = 2.0 * sign_draw(rng);
      inst.structure = parts;
      inst.x_star = DenseVector(parts.head(n) + parts.tail(n));
      break;
    }
    case InstanceTag::Eigenvector: {
      // a Gaussian matrix can lack real eigenpairs; redraw until one exists
      for (;;) {
        DenseMatrix c = standard_normal_matrix(n, n, rng);
        std::vector<EigenPair> pairs = eig_real(c);
        if (pairs.empty()) continue;
        const EigenPair& pick = pairs[size_t(rng.below(std::uint64_t(pairs.size())))];
        inst.structure = c;
        inst.eigenvalue = pick.value;
        inst.x_star = pick.vector;
        break;
      }
      break;
    }
    case InstanceTag::OrthogonalMatrix: {
      DenseMatrix g = standard_normal_matrix(n, kind.k, rng);
      Eigen::HouseholderQR<DenseMatrix> qr(g);
      DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(n, kind.k);
      inst.x_star = q;
      break;
    }
    case InstanceTag::SparseOsb:
    case InstanceTag::SparseTer: {
      DenseVector x = DenseVector::Zero(n);
      std::vector<char> taken(size_t(n), 0);
      for (int placed = 0; placed < kind.k;) {
        int idx = int(rng.below(std::uint64_t(n)));
        if (taken[size_t(idx)]) continue;
        taken[size_t(idx)] = 1;
        x(idx) = kind.tag == InstanceTag::SparseOsb ? 1.0 : sign_draw(rng);
        ++placed;
      }
      inst.x_star = x;
      break;
    }
  }
  inst.b = inst.a * inst.x_star;
  return inst;
}

TrialOutcome run_recovery_trial(const RecoveryInstance& inst, const TrialConfig& cfg,
                                RngStream& rng, const DenseVector* injected_start) {
  if (inst.kind.tag == InstanceTag::TwoBit) {
    return run_two_bit_trial(inst, cfg, rng, injected_start);
  }
  if (inst.kind.tag == InstanceTag::OrthogonalMatrix) {
    throw std::invalid_argument("matrix instances go through run_orthogonal");
  }
  const Eigen::Index n = inst.a.cols();
  AffineProjector proj(inst.a, inst.b);
  Regularizer reg = regularizer_for(inst);
  SmoothObjective<DenseVector> obj;
  obj.value = [reg](const DenseVector& x) { return value(reg, x); };
  obj.gradient = [reg](const DenseVector& x) { return grad_analytic(reg, x); };

  FistaConfig fista = cfg.fista;
  int restarts =
      fista.restarts > 0 ? fista.restarts : default_restarts(inst.kind.tag, Method::CsFista);
  fista.restarts = 0;
  const DenseVector x_star = inst.x_star.col(0);
  auto make_start = [&](int r) {
    if (r == 0 && injected_start != nullptr) return DenseVector(*injected_start);
    DenseVector s(n);
    for (Eigen::Index i = 0; i < n; ++i) s(i) = rng.normal();
    return s;
  };
  return restart_loop(
      restarts, obj, [&](const DenseVector& v) { return proj.project(v); }, make_start, fista,
      [&](const DenseVector& xhat) { return relative_error_plain(xhat, x_star); });
}

TrialOutcome run_baseline_trial(const RecoveryInstance& inst, Method method,
                                const TrialConfig& cfg, RngStream& rng) {
  const Eigen::Index n = inst.a.cols();
  const DenseVector x_star = inst.x_star.col(0);
  switch (method) {
    case Method::CsFista:
      return run_recovery_trial(inst, cfg, rng);
    case Method::LinfDR:
    case Method::L1DR: {
      if (inst.kind.tag == InstanceTag::TwoBit ||
          inst.kind.tag == InstanceTag::OrthogonalMatrix) {
        throw std::invalid_argument("norm baselines need a vector instance with Ax = b");
      }
      AffineProjector proj(inst.a, inst.b);
      auto prox_norm = [method](const DenseVector& v) {
        return method == Method::LinfDR ? prox_linf(v, 1.0) : prox_l1(v, 1.0);
      };
      TrialOutcome out;
      try {
        auto report =
            douglas_rachford(prox_norm, [&](const DenseVector& v) { return proj.project(v); },
                             DenseVector(DenseVector::Zero(n)), cfg.dr);
        out.iterations_total = report.iterations;
        out.relative_error = relative_error_plain(report.iterate, x_star);
        out.success = out.relative_error <= 1e-2;
        out.restarts_used = out.success ? 0 : 1;
      } catch (const SolverAbort& abort) {
        out.diagnostic = abort.what();
        out.restarts_used = 1;
      }
      return out;
    }
    case Method::BinBetaFixed: {
      if (inst.kind.tag != InstanceTag::SymBinary) {
        throw std::invalid_argument("bin-beta baselines apply to sym-binary instances");
      }
      AffineProjector proj(inst.a, inst.b);
      Regularizer reg = Regularizer::bin_beta(cfg.bin_beta);
      SmoothObjective<DenseVector> obj;
      obj.value = [reg](const DenseVector& x) { return value(reg, x); };
      obj.gradient = [reg](const DenseVector& x) { return grad_analytic(reg, x); };
      FistaConfig fista = cfg.fista;
      int restarts =
          fista.restarts > 0 ? fista.restarts : default_restarts(inst.kind.tag, method);
      fista.restarts = 0;
      auto make_start = [&](int) {
        DenseVector s(n);
        for (Eigen::Index i = 0; i < n; ++i) s(i) = rng.normal();
        return s;
      };
      return restart_loop(
          restarts, obj, [&](const DenseVector& v) { return proj.project(v); }, make_start,
          fista, [&](const DenseVector& xhat) { return relative_error_plain(xhat, x_star); });
    }
    case Method::BinBetaJoint: {
      if (inst.kind.tag != InstanceTag::SymBinary) {
        throw std::invalid_argument("bin-beta baselines apply to sym-binary instances");
      }
      AffineProjector proj(inst.a, inst.b);
      SmoothObjective<DenseVector> obj;
      obj.value = [n](const DenseVector& z) {
        Eigen::ArrayXd sq = z.head(n).array().square() - z(n);
        return sq.square().sum();
      };
      obj.gradient = [n](const DenseVector& z) {
        Eigen::ArrayXd x = z.head(n).array();
        Eigen::ArrayXd sq = x.square() - z(n);
        DenseVector g(n + 1);
        g.head(n) = (4.0 * x * sq).matrix();
        g(n) = -2.0 * sq.sum();
        return g;
      };
      // the appended scale coordinate is unconstrained
      auto project = [&](const DenseVector& z) {
        DenseVector out(n + 1);
        out.head(n) = proj.project(DenseVector(z.head(n)));
        out(n) = z(n);
        return out;
      };
      FistaConfig fista = cfg.fista;
      int restarts =
          fista.restarts > 0 ? fista.restarts : default_restarts(inst.kind.tag, method);
      fista.restarts = 0;
      auto make_start = [&](int) {
        DenseVector s(n + 1);
        for (Eigen::Index i = 0; i <= n; ++i) s(i) = rng.normal();
        return s;
      };
      return restart_loop(restarts, obj, project, make_start, fista,
                          [&](const DenseVector& z) {
                            return relative_error_plain(DenseVector(z.head(n)), x_star);
                          });
    }
    case Method::EigMuJoint: {
      if (inst.kind.tag != InstanceTag::Eigenvector) {
        throw std::invalid_argument("eig-mu-joint applies to eigenvector instances");
      }
      AffineProjector proj(inst.a, inst.b);
      const DenseMatrix& c = inst.structure;
      SmoothObjective<DenseVector> obj;
      obj.value = [&c, n](const DenseVector& z) {
        DenseVector r = c * z.head(n) - z(n) * z.head(n);
        return r.squaredNorm();
      };
      obj.gradient = [&c, n](const DenseVector& z) {
        DenseVector x = z.head(n);
        double mu = z(n);
        DenseVector r = c * x - mu * x;
        DenseVector g(n + 1);
        g.head(n) = 2.0 * (c.transpose() * r) - 2.0 * mu * r;
        g(n) = -2.0 * x.dot(r);
        return g;
      };
      auto project = [&](const DenseVector& z) {
        DenseVector out(n + 1);
        out.head(n) = proj.project(DenseVector(z.head(n)));
        out(n) = z(n);
        return out;
      };
      FistaConfig fista = cfg.fista;
      int restarts =
          fista.restarts > 0 ? fista.restarts : default_restarts(inst.kind.tag, method);
      fista.restarts = 0;
      auto make_start = [&](int) {
        DenseVector s(n + 1);
        for (Eigen::Index i = 0; i <= n; ++i) s(i) = rng.normal();
        return s;
      };
      return restart_loop(restarts, obj, project, make_start, fista,
                          [&](const DenseVector& z) {
                            return relative_error_plain(DenseVector(z.head(n)), x_star);
                          });
    }
  }
  throw std::logic_error("unhandled method");
}

std::vector<SuccessCurveRow> success_curve(InstanceKind kind, Method method,
                                           const std::vector<int>& m_list,
                                           const CurveConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("success_curve: trials >= 1");
  if (m_list.empty()) throw std::invalid_argument("success_curve: empty sweep");
  for (int m : m_list) {
    if (m < 1 || m > cfg.n) throw std::invalid_argument("success_curve: m out of [1, n]");
  }
  const int rows = int(m_list.size());
  const int total = rows * cfg.trials;
  auto item = [&](int i) {
    int r = i / cfg.trials;
    int t = i % cfg.trials;
    RngStream rng(cfg.base_seed, std::uint64_t(r) * std::uint64_t(cfg.trials) + std::uint64_t(t));
    RecoveryInstance inst = gen_instance(kind, cfg.n, m_list[size_t(r)], rng);
    TrialOutcome outcome = method == Method::CsFista
                               ? run_recovery_trial(inst, cfg.trial, rng)
                               : run_baseline_trial(inst, method, cfg.trial, rng);
    return outcome.success;
  };
  std::vector<unsigned char> flags = parallel_flags(total, cfg.jobs, item);
  std::vector<SuccessCurveRow> out;
  out.reserve(size_t(rows));
  for (int r = 0; r < rows; ++r) {
    out.push_back(
        make_row(double(m_list[size_t(r)]) / double(cfg.n), flags, r * cfg.trials, cfg.trials));
  }
  return out;
}

std::vector<SuccessCurveRow> sparse_success_curve(InstanceTag tag, int m,
                                                  const std::vector<int>& k_list, Method method,
                                                  const CurveConfig& cfg) {
  if (tag != InstanceTag::SparseOsb && tag != InstanceTag::SparseTer) {
    throw std::invalid_argument("sparse_success_curve: need a sparse instance kind");
  }
  if (cfg.trials < 1) throw std::invalid_argument("sparse_success_curve: trials >= 1");
  if (k_list.empty()) throw std::invalid_argument("sparse_success_curve: empty sweep");
  const int rows = int(k_list.size());
  const int total = rows * cfg.trials;
  auto item = [&](int i) {
    int r = i / cfg.trials;
    int t = i % cfg.trials;
    RngStream rng(cfg.base_seed, std::uint64_t(r) * std::uint64_t(cfg.trials) + std::uint64_t(t));
    InstanceKind kind{tag, k_list[size_t(r)]};
    RecoveryInstance inst = gen_instance(kind, cfg.n, m, rng);
    TrialOutcome outcome = method == Method::CsFista
                               ? run_recovery_trial(inst, cfg.trial, rng)
                               : run_baseline_trial(inst, method, cfg.trial, rng);
    return outcome.success;
  };
  std::vector<unsigned char> flags = parallel_flags(total, cfg.jobs, item);
  std::vector<SuccessCurveRow> out;
  out.reserve(size_t(rows));
  for (int r = 0; r < rows; ++r) {
    out.push_back(
        make_row(double(k_list[size_t(r)]) / double(cfg.n), flags, r * cfg.trials, cfg.trials));
  }
  return out;
}

void write_curve_csv(const std::string& path, const std::vector<SuccessCurveRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "ratio,success_prob,stderr,trials\n";
  char line[128];
  for (const auto& row : rows) {
    std::snprintf(line, sizeof(line), "%.6g,%.6g,%.6g,%d\n", row.ratio, row.success_prob,
                  row.stderr_value, row.trials);
    out << line;
  }
}

double run_orthogonal(int n, int k, int m, int trials, std::uint64_t base_seed,
                      const TrialConfig& cfg, std::uint64_t stream_offset, int jobs) {
  if (trials < 1) throw std::invalid_argument("run_orthogonal: trials >= 1");
  auto item = [&](int t) {
    RngStream rng(base_seed, stream_offset + std::uint64_t(t));
    RecoveryInstance inst = gen_instance(InstanceKind::orthogonal(k), n, m, rng);
    AffineProjector proj(inst.a, inst.b);
    Regularizer reg = Regularizer::om(k);
    SmoothObjective<DenseMatrix> obj;
    obj.value = [reg](const DenseMatrix& x) { return value(reg, x); };
    obj.gradient = [reg](const DenseMatrix& x) { return grad_analytic(reg, x); };
    FistaConfig fista = cfg.fista;
    int restarts = fista.restarts > 0
                       ? fista.restarts
                       : default_restarts(InstanceTag::OrthogonalMatrix, Method::CsFista);
    fista.restarts = 0;
    for (int r = 0; r < restarts; ++r) {
      DenseMatrix start = standard_normal_matrix(n, k, rng);
      try {
        auto report = fista_backtracking<DenseMatrix>(
            obj, [&](const DenseMatrix& x) { return proj.project_matrix(x); }, start, fista);
        const DenseMatrix& xh = report.iterate;
        DenseMatrix gram = xh.transpose() * xh;
        double alpha = gram.trace() / double(k);
        if (alpha <= 0.0) continue;
        double measure = (gram - alpha * DenseMatrix::Identity(k, k)).norm() / alpha;
        bool feasible = m == 0 || (inst.a * xh - inst.b).norm() <= 1e-8 * (1.0 + inst.b.norm());
        if (measure <= 1e-2 && feasible) return true;
      } catch (const SolverAbort&) {
      }
    }
    return false;
  };
  std::vector<unsigned char> flags = parallel_flags(trials, jobs, item);
  int wins = 0;
  for (unsigned char f : flags) wins += f;
  return double(wins) / double(trials);
}

SuccessCurveRow run_two_bit(int n, int m, double lambda, int trials, std::uint64_t base_seed,
                            const TrialConfig& cfg, std::uint64_t stream_offset, int jobs) {
  if (trials < 1) throw std::invalid_argument("run_two_bit: trials >= 1");
  auto item = [&](int t) {
    RngStream rng(base_seed, stream_offset + std::uint64_t(t));
    RecoveryInstance inst = gen_instance(InstanceKind::two_bit(), n, m, rng);
    TrialConfig local = cfg;
    local.lambda = lambda;
    return run_recovery_trial(inst, local, rng).success;
  };
  std::vector<unsigned char> flags = parallel_flags(trials, jobs, item);
  return make_row(double(m) / double(n), flags, 0, trials);
}

Graph read_gset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  long long n = 0, e = 0;
  if (!(in >> n >> e) || n < 1 || e < 0) throw std::runtime_error("malformed graph header");
  Graph g;
  g.n = int(n);
  g.edges.reserve(size_t(e));
  std::set<std::pair<int, int>> seen;
  for (long long idx = 0; idx < e; ++idx) {
    long long i = 0, j = 0;
    double w = 0.0;
    if (!(in >> i >> j >> w)) throw std::runtime_error("truncated edge list");
    if (i < 1 || j <= i || j > n) throw std::runtime_error("edge endpoints must obey 1 <= i < j <= N");
    if (!seen.insert({int(i), int(j)}).second) throw std::runtime_error("duplicate edge");
    g.edges.push_back({int(i) - 1, int(j) - 1, w});
  }
  return g;
}

Graph weighted4_demo() {
  Graph g;
  g.n = 4;
  g.edges = {{0, 1, 10.0}, {0, 2, 20.0}, {0, 3, 30.0}, {1, 3, 40.0}, {2, 3, 50.0}};
  return g;
}

Graph unit5_demo() {
  // K4 on {0,1,2,3} plus a pendant vertex: every stable corner of the box
  // relaxation is a balanced K4 split with the pendant opposite vertex 0,
  // all of which realize the maximum cut of 5
  Graph g;
  g.n = 5;
  g.edges = {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0},
             {1, 3, 1.0}, {2, 3, 1.0}, {0, 4, 1.0}};
  return g;
}

std::pair<double, DenseVector> maxcut_objective(const Graph& graph, const DenseVector& x) {
  if (x.size() != graph.n) throw std::invalid_argument("maxcut_objective: dimension mismatch");
  double val = 0.0;
  DenseVector grad = DenseVector::Zero(graph.n);
  for (const GraphEdge& edge : graph.edges) {
    val += 0.5 * edge.weight * (1.0 - x(edge.u) * x(edge.v));
    grad(edge.u) -= 0.5 * edge.weight * x(edge.v);
    grad(edge.v) -= 0.5 * edge.weight * x(edge.u);
  }
  return {val, grad};
}

double cut_value(const Graph& graph, const std::vector<int>& signs) {
  if (int(signs.size()) != graph.n) throw std::invalid_argument("cut_value: dimension mismatch");
  double total = 0.0;
  for (const GraphEdge& edge : graph.edges) {
    if (signs[size_t(edge.u)] != signs[size_t(edge.v)]) total += edge.weight;
  }
  return total;
}

MaxCutReport run_maxcut(const Graph& graph, double lambda, int restarts,
                        std::uint64_t base_seed, const FistaConfig& cfg) {
  if (lambda < 0.0) throw std::invalid_argument("run_maxcut: lambda >= 0");
  if (restarts < 1) throw std::invalid_argument("run_maxcut: restarts >= 1");
  Regularizer bin = Regularizer::bin();
  SmoothObjective<DenseVector> obj;
  obj.value = [&](const DenseVector& x) {
    return -maxcut_objective(graph, x).first + lambda * value(bin, x);
  };
  obj.gradient = [&](const DenseVector& x) {
    return DenseVector(-maxcut_objective(graph, x).second + lambda * grad_analytic(bin, x));
  };

  MaxCutReport report;
  report.best_cut = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    RngStream rng(base_seed, std::uint64_t(r));
    DenseVector x0(graph.n);
    for (int i = 0; i < graph.n; ++i) x0(i) = rng.uniform(-1.0, 1.0);
    MaxCutRestart record;
    record.initial_cut = maxcut_objective(graph, x0).first;
    auto solve = projected_gd_box(obj, -1.0, 1.0, x0, cfg);
    record.iterations = solve.iterations;
    std::vector<int> signs(size_t(graph.n));
    for (int i = 0; i < graph.n; ++i) signs[size_t(i)] = solve.iterate(i) >= 0.0 ? 1 : -1;
    record.final_cut = cut_value(graph, signs);
    if (record.final_cut > report.best_cut) {
      report.best_cut = record.final_cut;
      report.assignment = signs;
    }
    report.restarts.push_back(record);
  }
  return report;
}

MaxCutExact maxcut_bruteforce(const Graph& graph) {
  if (graph.n < 1) throw std::invalid_argument("maxcut_bruteforce: empty graph");
  if (graph.n > 24) throw std::invalid_argument("maxcut_bruteforce: graph too large");
  MaxCutExact best;
  best.max_cut = -1.0;
  std::vector<int> signs(size_t(graph.n), 1);
  const std::uint64_t patterns = graph.n == 1 ? 1 : (std::uint64_t(1) << (graph.n - 1));
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    signs[0] = 1;
    for (int v = 1; v < graph.n; ++v) signs[size_t(v)] = (mask >> (v - 1)) & 1 ? -1 : 1;
    double cut = cut_value(graph, signs);
    if (cut > best.max_cut) {
      best.max_cut = cut;
      best.assignment = signs;
    }
  }
  return best;
}

}  // namespace csreg
