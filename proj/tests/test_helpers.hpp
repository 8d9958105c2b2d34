#pragma once

// Shared oracles for the test binaries: central finite differences, relative
// gaps, and generators for known zero-set members.

#include <Eigen/QR>
#include <Eigen/LU>
#include <cmath>
#include <functional>

#include "csreg/core.hpp"

namespace testutil {

using csreg::DenseMatrix;
using csreg::DenseVector;

// Central finite differences with per-coordinate step 1e-5 * (1 + |x_i|).
inline DenseVector fd_gradient(const std::function<double(const DenseVector&)>& f,
                               DenseVector x) {
  DenseVector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double step = 1e-5 * (1.0 + std::abs(x[i]));
    double old = x[i];
    x[i] = old + step;
    double fp = f(x);
    x[i] = old - step;
    double fm = f(x);
    x[i] = old;
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

inline double rel_gap(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double grad_rel_err(const DenseVector& analytic, const DenseVector& reference) {
  return (analytic - reference).norm() / std::max(1.0, reference.norm());
}

// Cancellation allowance for zero-set membership, degree-8 scale.
inline double member_threshold(double norm) {
  return 1e-9 * (1.0 + std::pow(norm, 8));
}

inline double log_uniform(csreg::RngStream& rng, double lo, double hi) {
  return lo * std::exp(rng.uniform() * std::log(hi / lo));
}

inline double random_sign(csreg::RngStream& rng) { return rng.uniform() < 0.5 ? -1.0 : 1.0; }

inline DenseVector member_sym_binary(Eigen::Index n, double alpha, csreg::RngStream& rng) {
  DenseVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = alpha * random_sign(rng);
  return x;
}

inline DenseVector member_one_sided(Eigen::Index n, double alpha, csreg::RngStream& rng) {
  DenseVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.uniform() < 0.5 ? 0.0 : alpha;
  return x;
}

inline DenseVector member_ternary(Eigen::Index n, double alpha, csreg::RngStream& rng) {
  DenseVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double u = rng.uniform();
    x[i] = u < 1.0 / 3 ? -alpha : (u < 2.0 / 3 ? 0.0 : alpha);
  }
  return x;
}

// Each block b carries magnitude 2^{b-1} alpha with free signs.
inline DenseVector member_equ(Eigen::Index n, int bits, double alpha, csreg::RngStream& rng) {
  DenseVector x(n * bits);
  double mag = alpha;
  for (int b = 0; b < bits; ++b, mag *= 2.0) {
    for (Eigen::Index i = 0; i < n; ++i) x[b * n + i] = mag * random_sign(rng);
  }
  return x;
}

inline DenseMatrix member_orthogonal(Eigen::Index n, Eigen::Index k, double alpha,
                                     csreg::RngStream& rng) {
  DenseMatrix g = csreg::standard_normal_matrix(n, k, rng);
  Eigen::HouseholderQR<DenseMatrix> qr(g);
  DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(n, k);
  return alpha * q;
}

// Unit-norm element of ker(C); requires a nontrivial kernel.
inline DenseVector member_nullspace(const DenseMatrix& c, csreg::RngStream& rng) {
  Eigen::FullPivLU<DenseMatrix> lu(c);
  DenseMatrix ker = lu.kernel();
  DenseVector x = ker * csreg::standard_normal_vector(ker.cols(), rng);
  return x / x.norm();
}

}  // namespace testutil
