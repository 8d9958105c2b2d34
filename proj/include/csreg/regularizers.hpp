#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "csreg/core.hpp"

namespace csreg {

// Pair of smooth maps g, h whose pointwise linear dependence carves out a
// target set. The penalty ||g||^2 ||h||^2 - <g,h>^2 is nonnegative and
// vanishes exactly where g(x) and h(x) are parallel. The adjoint callbacks
// apply the transposed Jacobians J_g(x)^T v and J_h(x)^T v.
struct CsPairSpec {
  std::function<DenseVector(const DenseVector&)> g;
  std::function<DenseVector(const DenseVector&)> h;
  std::function<DenseVector(const DenseVector&, const DenseVector&)> g_adjoint;
  std::function<DenseVector(const DenseVector&, const DenseVector&)> h_adjoint;
};

double cs_value(const CsPairSpec& pair, const DenseVector& x);
DenseVector cs_grad(const CsPairSpec& pair, const DenseVector& x);

// argmin over beta of ||g - beta h||^2; requires h != 0.
double closed_form_beta(const DenseVector& g, const DenseVector& h);

// ||g||_p^r ||h||_q^r - |<g,h>|^r with 1/p + 1/q = 1 (p or q may be +inf),
// r > 0. p = q = 2, r = 2 recovers cs_value.
double holder_value(const CsPairSpec& pair, const DenseVector& x, double p, double q, double r);

// (||g||_p^r ||h||_q^r + eps) / (|<g,h>|^r + eps) - 1. Invariant under
// x-scalings that scale g and h by constants. eps = 0 with <g,h> = 0 throws.
double scale_invariant_value(const CsPairSpec& pair, const DenseVector& x, double p, double q,
                             double r, double eps);

CsPairSpec bin_pair();                                   // g = x^2, h = 1
CsPairSpec osb_pair();                                   // g = x^2, h = x
CsPairSpec ter_pair();                                   // g = x^3, h = x
CsPairSpec eig_pair(DenseMatrix c);                      // g = Cx,  h = x
CsPairSpec om_pair(Eigen::Index rows, Eigen::Index cols);  // on vec(X): g = vec(X^T X), h = vec(I)
CsPairSpec equ_pair(Eigen::Index n, int bits);           // on [y_1;..;y_B]: g = y^2, h = 4^{b-1} 1

// Closed forms of the pairs above plus the bounded / nondifferentiable /
// fixed-scale / nullspace variants. Zero sets, with free scale a:
double eval_bin(const DenseVector& x);   // {-a, +a}^N
double eval_osb(const DenseVector& x);   // {0, a}^N
double eval_ter(const DenseVector& x);   // {-a, 0, +a}^N
double eval_eig(const DenseMatrix& c, const DenseVector& x);  // eigenvectors of C and 0
double eval_om(const DenseMatrix& x);    // X^T X = a^2 I (orthogonal equal-norm columns)
double eval_bbin(const DenseVector& x);     // {-a, +a}^N, value bounded in x
double eval_binexp(const DenseVector& x);   // {-a, +a}^N, value bounded in x
double eval_nondiff_sq(const DenseVector& x);    // {-a, +a}^N
double eval_nondiff_root(const DenseVector& x);  // {-a, +a}^N
double eval_fixed_scale(const DenseVector& x, double alpha);  // {-alpha, +alpha}^N exactly
double eval_ns(const DenseMatrix& c, const DenseVector& x);   // {x : Cx = 0, ||x|| = 1}

// B vectors of equal length; zero set pins |y_b| = 2^{b-1} a entrywise with a
// shared across b (signs free), so sums y_1 + ... + y_B land on 2^B equispaced
// levels.
struct EquispacedState {
  std::vector<DenseVector> levels;

  DenseVector stacked() const;
  static EquispacedState from_stacked(const DenseVector& v, int bits);
};

double eval_equ(const EquispacedState& state);
double eval_equ_stacked(const DenseVector& v, int bits);
DenseVector grad_equ_stacked(const DenseVector& v, int bits);

enum class RegKind {
  Bin,
  Osb,
  Ter,
  Eig,
  Om,
  Equ,
  BBin,
  BinExp,
  NonDiffSq,
  NonDiffRoot,
  FixedScale,
  Nullspace,
  BinBeta,
};

// Tagged penalty selector. Vector inputs for Om are read as vec(X) with
// `columns` columns (column-major); Equ inputs are the stacked [y_1;..;y_B].
struct Regularizer {
  RegKind kind = RegKind::Bin;
  DenseMatrix matrix;        // Eig / Nullspace structure matrix
  Eigen::Index columns = 0;  // Om column count
  int bits = 0;              // Equ level count B
  double scale = 1.0;        // FixedScale alpha / BinBeta beta

  static Regularizer bin() { return {RegKind::Bin}; }
  static Regularizer osb() { return {RegKind::Osb}; }
  static Regularizer ter() { return {RegKind::Ter}; }
  static Regularizer eig(DenseMatrix c) { return {RegKind::Eig, std::move(c)}; }
  static Regularizer om(Eigen::Index columns) { return {RegKind::Om, {}, columns}; }
  static Regularizer equ(int bits) { return {RegKind::Equ, {}, 0, bits}; }
  static Regularizer bbin() { return {RegKind::BBin}; }
  static Regularizer binexp() { return {RegKind::BinExp}; }
  static Regularizer nondiff_sq() { return {RegKind::NonDiffSq}; }
  static Regularizer nondiff_root() { return {RegKind::NonDiffRoot}; }
  static Regularizer fixed_scale(double alpha) { return {RegKind::FixedScale, {}, 0, 0, alpha}; }
  static Regularizer nullspace(DenseMatrix c) { return {RegKind::Nullspace, std::move(c)}; }
  static Regularizer bin_beta(double beta) { return {RegKind::BinBeta, {}, 0, 0, beta}; }
};

double value(const Regularizer& reg, const DenseVector& x);
double value(const Regularizer& reg, const DenseMatrix& x);  // Om only

// Analytic gradient, same shape as the input. NonDiff kinds are rejected
// unless allow_subgradient is set (then sign(0) = 0 is used).
DenseVector grad_analytic(const Regularizer& reg, const DenseVector& x,
                          bool allow_subgradient = false);
DenseMatrix grad_analytic(const Regularizer& reg, const DenseMatrix& x);  // Om only

struct LandscapeRow {
  double x1, x2, value, log_value;  // log_value = log10(value + 1e-12)
};

// Samples value on an equispaced resolution^2 grid over [lo, hi]^2,
// x1 in the outer loop.
std::vector<LandscapeRow> landscape_grid(const Regularizer& reg, double lo, double hi,
                                         int resolution);

// "x1,x2,value,log_value" rows at 17 significant digits, with header.
void write_landscape_csv(std::ostream& out, const std::vector<LandscapeRow>& rows);

}  // namespace csreg
