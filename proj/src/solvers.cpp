#include "csreg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace csreg {

namespace {

void check_fista_config(const FistaConfig& cfg) {
  if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (!(cfg.initial_step > 0.0)) throw std::invalid_argument("initial_step must be > 0");
  if (!(cfg.backtrack_factor > 0.0 && cfg.backtrack_factor < 1.0)) {
    throw std::invalid_argument("backtrack_factor must lie in (0, 1)");
  }
  if (cfg.stop_tol < 0.0) throw std::invalid_argument("stop_tol must be >= 0");
}

template <class Point>
double inner(const Point& a, const Point& b) {
  return a.cwiseProduct(b).sum();
}

constexpr int kMaxBacktracks = 100;

}  // namespace

template <class Point>
SolveReport<Point> fista_backtracking(const SmoothObjective<Point>& objective,
                                      const std::function<Point(const Point&)>& project,
                                      const Point& start, const FistaConfig& cfg) {
  check_fista_config(cfg);
  SolveReport<Point> report;
  Point x = project(start);
  double fx = objective.value(x);
  if (!std::isfinite(fx)) throw SolverAbort("fista: non-finite objective at start");
  report.objectives.push_back(fx);

  Point y = x;
  double fy = fx;
  double theta = 1.0;
  double step = cfg.initial_step;

  // One descent step from the momentum point, shrinking until the local
  // quadratic model upper-bounds the objective. Exhaustion is treated as
  // stationarity (the returned move is a no-op).
  auto attempt = [&](const Point& from, double f_from, const Point& grad, Point& cand,
                     double& f_cand) {
    for (int bt = 0; bt <= kMaxBacktracks; ++bt) {
      cand = project(Point(from - step * grad));
      f_cand = objective.value(cand);
      if (std::isfinite(f_cand)) {
        Point diff = cand - from;
        double quad = f_from + inner(grad, diff) + diff.squaredNorm() / (2.0 * step);
        if (f_cand <= quad + 1e-12 * (1.0 + std::abs(f_from))) return;
      }
      step *= cfg.backtrack_factor;
    }
    cand = x;  // stationary up to step underflow
    f_cand = fx;
  };

  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    Point grad = objective.gradient(y);
    if (!grad.allFinite()) throw SolverAbort("fista: non-finite gradient");
    if (!std::isfinite(fy)) throw SolverAbort("fista: non-finite objective");

    Point cand;
    double f_cand;
    attempt(y, fy, grad, cand, f_cand);

    if (f_cand > fx + 1e-12 * (1.0 + std::abs(fx))) {
      // momentum overshot: reset and redo the step from the last accepted
      // iterate, which the model test then forces downhill
      theta = 1.0;
      y = x;
      fy = fx;
      grad = objective.gradient(y);
      if (!grad.allFinite()) throw SolverAbort("fista: non-finite gradient");
      attempt(y, fy, grad, cand, f_cand);
    }

    Point x_prev = std::move(x);
    x = std::move(cand);
    fx = f_cand;
    report.objectives.push_back(fx);
    report.iterations = iter;

    double delta = (x - x_prev).norm();
    if (delta <= cfg.stop_tol * (1.0 + x.norm())) {
      report.terminated = Termination::Tolerance;
      report.iterate = x;
      report.objective = fx;
      return report;
    }

    double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    y = x + ((theta - 1.0) / theta_next) * (x - x_prev);
    fy = objective.value(y);
    theta = theta_next;
  }
  report.terminated = Termination::MaxIter;
  report.iterate = x;
  report.objective = fx;
  return report;
}

template SolveReport<DenseVector> fista_backtracking<DenseVector>(
    const SmoothObjective<DenseVector>&, const std::function<DenseVector(const DenseVector&)>&,
    const DenseVector&, const FistaConfig&);
template SolveReport<DenseMatrix> fista_backtracking<DenseMatrix>(
    const SmoothObjective<DenseMatrix>&, const std::function<DenseMatrix(const DenseMatrix&)>&,
    const DenseMatrix&, const FistaConfig&);

SolveReport<DenseVector> projected_gd_box(const SmoothObjective<DenseVector>& objective,
                                          double lo, double hi, const DenseVector& start,
                                          const FistaConfig& cfg) {
  check_fista_config(cfg);
  if (!(lo < hi)) throw std::invalid_argument("projected_gd_box: need lo < hi");
  SolveReport<DenseVector> report;
  DenseVector x = project_box(start, lo, hi);
  double fx = objective.value(x);
  if (!std::isfinite(fx)) throw SolverAbort("projected_gd_box: non-finite objective at start");
  report.objectives.push_back(fx);
  double step = cfg.initial_step;

  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    DenseVector grad = objective.gradient(x);
    if (!grad.allFinite()) throw SolverAbort("projected_gd_box: non-finite gradient");

    DenseVector cand;
    double f_cand;
    if (cfg.use_backtracking) {
      bool moved = false;
      for (int bt = 0; bt <= kMaxBacktracks; ++bt) {
        cand = project_box(x - step * grad, lo, hi);
        f_cand = objective.value(cand);
        if (std::isfinite(f_cand)) {
          DenseVector diff = cand - x;
          double quad = fx + grad.dot(diff) + diff.squaredNorm() / (2.0 * step);
          if (f_cand <= quad + 1e-12 * (1.0 + std::abs(fx))) {
            moved = true;
            break;
          }
        }
        step *= cfg.backtrack_factor;
      }
      if (!moved) {
        cand = x;
        f_cand = fx;
      }
    } else {
      cand = project_box(x - step * grad, lo, hi);
      f_cand = objective.value(cand);
      if (!std::isfinite(f_cand)) throw SolverAbort("projected_gd_box: non-finite objective");
    }

    DenseVector x_prev = std::move(x);
    x = std::move(cand);
    fx = f_cand;
    report.objectives.push_back(fx);
    report.iterations = iter;
    if ((x - x_prev).norm() <= cfg.stop_tol * (1.0 + x.norm())) {
      report.terminated = Termination::Tolerance;
      break;
    }
  }
  report.iterate = x;
  report.objective = fx;
  return report;
}

DenseVector project_box(const DenseVector& x, double lo, double hi) {
  return x.cwiseMax(lo).cwiseMin(hi);
}

DenseVector prox_l1(const DenseVector& v, double t) {
  if (t < 0.0) throw std::invalid_argument("prox_l1: t must be >= 0");
  return (v.array().sign() * (v.array().abs() - t).max(0.0)).matrix();
}

DenseVector project_l1_ball(const DenseVector& v, double radius) {
  if (radius < 0.0) throw std::invalid_argument("project_l1_ball: radius must be >= 0");
  if (radius == 0.0) return DenseVector::Zero(v.size());
  if (v.lpNorm<1>() <= radius) return v;
  // Find the shrinkage threshold from the sorted magnitudes.
  std::vector<double> mags(v.data(), v.data() + v.size());
  for (auto& m : mags) m = std::abs(m);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double cumulative = 0.0, tau = 0.0;
  for (size_t j = 0; j < mags.size(); ++j) {
    cumulative += mags[j];
    double candidate = (cumulative - radius) / double(j + 1);
    if (mags[j] - candidate > 0.0) {
      tau = candidate;
    } else {
      break;
    }
  }
  return prox_l1(v, tau);
}

DenseVector prox_linf(const DenseVector& v, double t) {
  if (t < 0.0) throw std::invalid_argument("prox_linf: t must be >= 0");
  if (t == 0.0) return v;
  return v - project_l1_ball(v, t);
}

SolveReport<DenseVector> douglas_rachford(
    const std::function<DenseVector(const DenseVector&)>& prox_f,
    const std::function<DenseVector(const DenseVector&)>& prox_g, const DenseVector& z0,
    const DrConfig& cfg) {
  if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (cfg.stop_tol < 0.0) throw std::invalid_argument("stop_tol must be >= 0");
  if (!(cfg.relaxation > 0.0 && cfg.relaxation < 2.0)) {
    throw std::invalid_argument("relaxation must lie in (0, 2)");
  }
  SolveReport<DenseVector> report;
  DenseVector z = z0;
  DenseVector x = prox_g(z);
  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    DenseVector w = prox_f(DenseVector(2.0 * x - z));
    DenseVector z_next = z + cfg.relaxation * (w - x);
    if (!z_next.allFinite()) throw SolverAbort("douglas_rachford: non-finite iterate");
    residual = (z_next - z).norm();
    z = std::move(z_next);
    x = prox_g(z);
    report.iterations = iter;
    if (residual <= cfg.stop_tol * (1.0 + z.norm())) {
      report.terminated = Termination::Tolerance;
      break;
    }
  }
  report.iterate = x;
  report.objective = residual;  // fixed-point residual; DR never sees f or g
  return report;
}

}  // namespace csreg
