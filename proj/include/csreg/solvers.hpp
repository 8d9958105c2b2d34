#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "csreg/core.hpp"

namespace csreg {

// Raised when an iterate produces a non-finite objective or gradient.
struct SolverAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class Point>
struct SmoothObjective {
  std::function<double(const Point&)> value;
  std::function<Point(const Point&)> gradient;
};

struct FistaConfig {
  int max_iter = 10000;
  double initial_step = 1.0;
  double backtrack_factor = 0.5;
  double stop_tol = 1e-10;  // on relative iterate change
  int restarts = 0;         // 0 = per-experiment default; used by callers, not the solver
  bool use_backtracking = true;  // projected_gd_box honors this; fista always backtracks
};

struct DrConfig {
  int max_iter = 10000;
  double relaxation = 1.0;  // prox weight gamma
  double stop_tol = 1e-9;   // on relative fixed-point residual
};

enum class Termination { MaxIter, Tolerance };

template <class Point>
struct SolveReport {
  Point iterate;
  double objective = 0.0;
  int iterations = 0;
  Termination terminated = Termination::MaxIter;
  int restart_index = 0;            // which random start produced this report
  std::vector<double> objectives;   // accepted iterates, objectives[0] = f(P(x0))
};

// Accelerated projected descent with quadratic-upper-bound backtracking, warm
// step reuse and adaptive momentum reset when the objective increases. Every
// accepted iterate is feasible (an image of `project`); for affine constraint
// sets the momentum point stays feasible because it is an affine combination
// of feasible points. Point is DenseVector or DenseMatrix.
template <class Point>
SolveReport<Point> fista_backtracking(const SmoothObjective<Point>& objective,
                                      const std::function<Point(const Point&)>& project,
                                      const Point& start, const FistaConfig& cfg);

// Plain projected gradient descent over the box [lo, hi]^N.
SolveReport<DenseVector> projected_gd_box(const SmoothObjective<DenseVector>& objective,
                                          double lo, double hi, const DenseVector& start,
                                          const FistaConfig& cfg);

DenseVector project_box(const DenseVector& x, double lo, double hi);

// Soft threshold: prox of t * ||.||_1.
DenseVector prox_l1(const DenseVector& v, double t);

// Euclidean projection onto {x : ||x||_1 <= radius} (sort-based).
DenseVector project_l1_ball(const DenseVector& v, double radius);

// prox of t * ||.||_inf via the Moreau identity with the l1 ball.
DenseVector prox_linf(const DenseVector& v, double t);

// Douglas-Rachford splitting for min f + g:
//   z <- z + prox_f(2 prox_g(z) - z) - prox_g(z),
// returned iterate is prox_g of the final z. The prox operators already embed
// the weight gamma; `objective` in the report is the final fixed-point
// residual (the splitting never evaluates f or g).
SolveReport<DenseVector> douglas_rachford(
    const std::function<DenseVector(const DenseVector&)>& prox_f,
    const std::function<DenseVector(const DenseVector&)>& prox_g, const DenseVector& z0,
    const DrConfig& cfg);

}  // namespace csreg
