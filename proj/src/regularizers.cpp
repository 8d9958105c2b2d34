#include "csreg/regularizers.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace csreg {

namespace {

double sq(double v) { return v * v; }

// ||v||_p with p in [1, +inf].
double pnorm(const DenseVector& v, double p) {
  if (std::isinf(p)) return v.lpNorm<Eigen::Infinity>();
  if (p == 1.0) return v.lpNorm<1>();
  if (p == 2.0) return v.norm();
  return std::pow(v.array().abs().pow(p).sum(), 1.0 / p);
}

void check_conjugate(double p, double q, double r) {
  if (!(p >= 1.0) || !(q >= 1.0)) {
    throw std::invalid_argument("holder exponents must be >= 1");
  }
  double ip = std::isinf(p) ? 0.0 : 1.0 / p;
  double iq = std::isinf(q) ? 0.0 : 1.0 / q;
  if (std::abs(ip + iq - 1.0) > 1e-12) {
    throw std::invalid_argument("holder exponents must satisfy 1/p + 1/q = 1");
  }
  if (!(r > 0.0)) throw std::invalid_argument("holder power r must be positive");
}

Eigen::Map<const DenseMatrix> as_matrix(const DenseVector& v, Eigen::Index cols) {
  if (cols <= 0 || v.size() % cols != 0) {
    throw std::invalid_argument("vectorized matrix size does not divide column count");
  }
  return {v.data(), v.size() / cols, cols};
}

}  // namespace

double cs_value(const CsPairSpec& pair, const DenseVector& x) {
  DenseVector gv = pair.g(x);
  DenseVector hv = pair.h(x);
  return gv.squaredNorm() * hv.squaredNorm() - sq(gv.dot(hv));
}

DenseVector cs_grad(const CsPairSpec& pair, const DenseVector& x) {
  DenseVector gv = pair.g(x);
  DenseVector hv = pair.h(x);
  double ip = gv.dot(hv);
  return 2.0 * hv.squaredNorm() * pair.g_adjoint(x, gv) +
         2.0 * gv.squaredNorm() * pair.h_adjoint(x, hv) -
         2.0 * ip * (pair.g_adjoint(x, hv) + pair.h_adjoint(x, gv));
}

double closed_form_beta(const DenseVector& g, const DenseVector& h) {
  double hn = h.squaredNorm();
  if (hn == 0.0) throw std::invalid_argument("closed_form_beta: h must be nonzero");
  return g.dot(h) / hn;
}

double holder_value(const CsPairSpec& pair, const DenseVector& x, double p, double q, double r) {
  check_conjugate(p, q, r);
  DenseVector gv = pair.g(x);
  DenseVector hv = pair.h(x);
  return std::pow(pnorm(gv, p), r) * std::pow(pnorm(hv, q), r) -
         std::pow(std::abs(gv.dot(hv)), r);
}

double scale_invariant_value(const CsPairSpec& pair, const DenseVector& x, double p, double q,
                             double r, double eps) {
  check_conjugate(p, q, r);
  if (eps < 0.0) throw std::invalid_argument("scale_invariant_value: eps must be >= 0");
  DenseVector gv = pair.g(x);
  DenseVector hv = pair.h(x);
  double den = std::pow(std::abs(gv.dot(hv)), r) + eps;
  if (den == 0.0) {
    throw std::domain_error("scale_invariant_value: zero denominator with eps = 0");
  }
  double num = std::pow(pnorm(gv, p), r) * std::pow(pnorm(hv, q), r) + eps;
  return num / den - 1.0;
}

CsPairSpec bin_pair() {
  CsPairSpec pair;
  pair.g = [](const DenseVector& x) { return DenseVector(x.array().square().matrix()); };
  pair.h = [](const DenseVector& x) { return DenseVector(DenseVector::Ones(x.size())); };
  pair.g_adjoint = [](const DenseVector& x, const DenseVector& v) {
    return DenseVector(2.0 * x.cwiseProduct(v));
  };
  pair.h_adjoint = [](const DenseVector& x, const DenseVector&) {
    return DenseVector(DenseVector::Zero(x.size()));
  };
  return pair;
}

CsPairSpec osb_pair() {
  CsPairSpec pair = bin_pair();
  pair.h = [](const DenseVector& x) { return x; };
  pair.h_adjoint = [](const DenseVector&, const DenseVector& v) { return v; };
  return pair;
}

CsPairSpec ter_pair() {
  CsPairSpec pair;
  pair.g = [](const DenseVector& x) { return DenseVector(x.array().cube().matrix()); };
  pair.h = [](const DenseVector& x) { return x; };
  pair.g_adjoint = [](const DenseVector& x, const DenseVector& v) {
    return DenseVector((3.0 * x.array().square() * v.array()).matrix());
  };
  pair.h_adjoint = [](const DenseVector&, const DenseVector& v) { return v; };
  return pair;
}

CsPairSpec eig_pair(DenseMatrix c) {
  CsPairSpec pair;
  auto mat = std::make_shared<DenseMatrix>(std::move(c));
  pair.g = [mat](const DenseVector& x) { return DenseVector(*mat * x); };
  pair.h = [](const DenseVector& x) { return x; };
  pair.g_adjoint = [mat](const DenseVector&, const DenseVector& v) {
    return DenseVector(mat->transpose() * v);
  };
  pair.h_adjoint = [](const DenseVector&, const DenseVector& v) { return v; };
  return pair;
}

CsPairSpec om_pair(Eigen::Index rows, Eigen::Index cols) {
  CsPairSpec pair;
  pair.g = [rows, cols](const DenseVector& v) {
    Eigen::Map<const DenseMatrix> x(v.data(), rows, cols);
    DenseMatrix gram = x.transpose() * x;
    return DenseVector(Eigen::Map<const DenseVector>(gram.data(), gram.size()));
  };
  pair.h = [cols](const DenseVector&) {
    DenseMatrix eye = DenseMatrix::Identity(cols, cols);
    return DenseVector(Eigen::Map<const DenseVector>(eye.data(), eye.size()));
  };
  pair.g_adjoint = [rows, cols](const DenseVector& v, const DenseVector& w) {
    Eigen::Map<const DenseMatrix> x(v.data(), rows, cols);
    Eigen::Map<const DenseMatrix> wm(w.data(), cols, cols);
    DenseMatrix out = x * (wm + wm.transpose());
    return DenseVector(Eigen::Map<const DenseVector>(out.data(), out.size()));
  };
  pair.h_adjoint = [](const DenseVector& v, const DenseVector&) {
    return DenseVector(DenseVector::Zero(v.size()));
  };
  return pair;
}

CsPairSpec equ_pair(Eigen::Index n, int bits) {
  CsPairSpec pair;
  pair.g = [](const DenseVector& x) { return DenseVector(x.array().square().matrix()); };
  pair.h = [n, bits](const DenseVector&) {
    DenseVector h(n * bits);
    double w = 1.0;
    for (int b = 0; b < bits; ++b, w *= 4.0) h.segment(b * n, n).setConstant(w);
    return h;
  };
  pair.g_adjoint = [](const DenseVector& x, const DenseVector& v) {
    return DenseVector(2.0 * x.cwiseProduct(v));
  };
  pair.h_adjoint = [](const DenseVector& x, const DenseVector&) {
    return DenseVector(DenseVector::Zero(x.size()));
  };
  return pair;
}

double eval_bin(const DenseVector& x) {
  Eigen::ArrayXd a = x.array().square();
  return double(x.size()) * a.square().sum() - sq(a.sum());
}

double eval_osb(const DenseVector& x) {
  Eigen::ArrayXd a = x.array().square();
  double s2 = a.sum();
  double s3 = (a * x.array()).sum();  // signed
  double s4 = a.square().sum();
  return s2 * s4 - sq(s3);
}

double eval_ter(const DenseVector& x) {
  Eigen::ArrayXd a = x.array().square();
  double s2 = a.sum();
  double s4 = a.square().sum();
  double s6 = (a * a * a).sum();
  return s2 * s6 - sq(s4);
}

double eval_eig(const DenseMatrix& c, const DenseVector& x) {
  DenseVector cx = c * x;
  return cx.squaredNorm() * x.squaredNorm() - sq(x.dot(cx));
}

double eval_om(const DenseMatrix& x) {
  DenseMatrix gram = x.transpose() * x;
  return double(x.cols()) * gram.squaredNorm() - sq(x.squaredNorm());
}

double eval_bbin(const DenseVector& x) {
  Eigen::ArrayXd u = (1.0 + x.array().square()).inverse();
  return double(x.size()) * u.square().sum() - sq(u.sum());
}

double eval_binexp(const DenseVector& x) {
  Eigen::ArrayXd e = (-x.array().square()).exp();
  return double(x.size()) * e.square().sum() - sq(e.sum());
}

double eval_nondiff_sq(const DenseVector& x) {
  return double(x.size()) * x.squaredNorm() - sq(x.lpNorm<1>());
}

double eval_nondiff_root(const DenseVector& x) {
  return std::sqrt(double(x.size())) * x.norm() - x.lpNorm<1>();
}

double eval_fixed_scale(const DenseVector& x, double alpha) {
  double a2 = sq(alpha);
  Eigen::ArrayXd a = x.array().square();
  return double(x.size() + 1) * (a.square().sum() + sq(a2)) - sq(a.sum() + a2);
}

double eval_ns(const DenseMatrix& c, const DenseVector& x) {
  return (c * x).squaredNorm() + sq(x.squaredNorm() - 1.0);
}

DenseVector EquispacedState::stacked() const {
  Eigen::Index n = levels.empty() ? 0 : levels.front().size();
  DenseVector v(n * Eigen::Index(levels.size()));
  for (size_t b = 0; b < levels.size(); ++b) {
    if (levels[b].size() != n) {
      throw std::invalid_argument("EquispacedState: level vectors must have equal length");
    }
    v.segment(Eigen::Index(b) * n, n) = levels[b];
  }
  return v;
}

EquispacedState EquispacedState::from_stacked(const DenseVector& v, int bits) {
  if (bits < 1 || v.size() % bits != 0) {
    throw std::invalid_argument("from_stacked: size must divide bit count");
  }
  Eigen::Index n = v.size() / bits;
  EquispacedState state;
  state.levels.reserve(bits);
  for (int b = 0; b < bits; ++b) state.levels.push_back(v.segment(b * n, n));
  return state;
}

double eval_equ(const EquispacedState& state) {
  return eval_equ_stacked(state.stacked(), int(state.levels.size()));
}

double eval_equ_stacked(const DenseVector& v, int bits) {
  if (bits < 1 || v.size() % bits != 0) {
    throw std::invalid_argument("eval_equ: size must divide bit count");
  }
  Eigen::Index n = v.size() / bits;
  double s4 = 0.0, weighted = 0.0, knorm = 0.0, w = 1.0;
  for (int b = 0; b < bits; ++b, w *= 4.0) {
    Eigen::ArrayXd a = v.segment(b * n, n).array().square();
    s4 += a.square().sum();
    weighted += w * a.sum();
    knorm += w * w;
  }
  return knorm * double(n) * s4 - sq(weighted);
}

DenseVector grad_equ_stacked(const DenseVector& v, int bits) {
  if (bits < 1 || v.size() % bits != 0) {
    throw std::invalid_argument("grad_equ: size must divide bit count");
  }
  Eigen::Index n = v.size() / bits;
  double weighted = 0.0, knorm = 0.0, w = 1.0;
  for (int b = 0; b < bits; ++b, w *= 4.0) {
    weighted += w * v.segment(b * n, n).squaredNorm();
    knorm += w * w;
  }
  DenseVector grad(v.size());
  w = 1.0;
  for (int b = 0; b < bits; ++b, w *= 4.0) {
    Eigen::ArrayXd y = v.segment(b * n, n).array();
    grad.segment(b * n, n) = (4.0 * y * (knorm * double(n) * y.square() - w * weighted)).matrix();
  }
  return grad;
}

double value(const Regularizer& reg, const DenseVector& x) {
  switch (reg.kind) {
    case RegKind::Bin:
      return eval_bin(x);
    case RegKind::Osb:
      return eval_osb(x);
    case RegKind::Ter:
      return eval_ter(x);
    case RegKind::Eig:
      return eval_eig(reg.matrix, x);
    case RegKind::Om:
      return eval_om(DenseMatrix(as_matrix(x, reg.columns)));
    case RegKind::Equ:
      return eval_equ_stacked(x, reg.bits);
    case RegKind::BBin:
      return eval_bbin(x);
    case RegKind::BinExp:
      return eval_binexp(x);
    case RegKind::NonDiffSq:
      return eval_nondiff_sq(x);
    case RegKind::NonDiffRoot:
      return eval_nondiff_root(x);
    case RegKind::FixedScale:
      return eval_fixed_scale(x, reg.scale);
    case RegKind::Nullspace:
      return eval_ns(reg.matrix, x);
    case RegKind::BinBeta:
      return (x.array().square() - reg.scale).square().sum();
  }
  throw std::logic_error("value: unknown regularizer kind");
}

double value(const Regularizer& reg, const DenseMatrix& x) {
  if (reg.kind != RegKind::Om) {
    throw std::invalid_argument("matrix inputs are only defined for the Om kind");
  }
  return eval_om(x);
}

DenseVector grad_analytic(const Regularizer& reg, const DenseVector& x, bool allow_subgradient) {
  double n = double(x.size());
  switch (reg.kind) {
    case RegKind::Bin: {
      Eigen::ArrayXd a = x.array().square();
      return (4.0 * x.array() * (n * a - a.sum())).matrix();
    }
    case RegKind::Osb: {
      Eigen::ArrayXd a = x.array().square();
      double s2 = a.sum();
      double s3 = (a * x.array()).sum();
      double s4 = a.square().sum();
      return (2.0 * x.array() * (s4 + 2.0 * a * s2 - 3.0 * x.array() * s3)).matrix();
    }
    case RegKind::Ter: {
      Eigen::ArrayXd a = x.array().square();
      double s2 = a.sum();
      double s4 = a.square().sum();
      double s6 = (a * a * a).sum();
      return (2.0 * x.array() * (s6 + 3.0 * a.square() * s2 - 4.0 * a * s4)).matrix();
    }
    case RegKind::Eig: {
      DenseVector cx = reg.matrix * x;
      DenseVector ctx = reg.matrix.transpose() * x;
      double xcx = x.dot(cx);
      return 2.0 * cx.squaredNorm() * x + 2.0 * x.squaredNorm() * (reg.matrix.transpose() * cx) -
             2.0 * xcx * (cx + ctx);
    }
    case RegKind::Om: {
      DenseMatrix g = grad_analytic(reg, DenseMatrix(as_matrix(x, reg.columns)));
      return Eigen::Map<const DenseVector>(g.data(), g.size());
    }
    case RegKind::Equ:
      return grad_equ_stacked(x, reg.bits);
    case RegKind::BBin: {
      Eigen::ArrayXd u = (1.0 + x.array().square()).inverse();
      double s = u.sum();
      return (4.0 * x.array() * u.square() * (s - n * u)).matrix();
    }
    case RegKind::BinExp: {
      Eigen::ArrayXd e = (-x.array().square()).exp();
      double s = e.sum();
      return (4.0 * x.array() * (e * s - n * e.square())).matrix();
    }
    case RegKind::NonDiffSq: {
      if (!allow_subgradient) {
        throw std::invalid_argument("grad_analytic: NonDiffSq is not differentiable");
      }
      return (2.0 * n * x.array() - 2.0 * x.lpNorm<1>() * x.array().sign()).matrix();
    }
    case RegKind::NonDiffRoot: {
      if (!allow_subgradient) {
        throw std::invalid_argument("grad_analytic: NonDiffRoot is not differentiable");
      }
      double norm = x.norm();
      Eigen::ArrayXd lead = norm > 0.0 ? Eigen::ArrayXd(std::sqrt(n) / norm * x.array())
                                       : Eigen::ArrayXd(Eigen::ArrayXd::Zero(x.size()));
      return (lead - x.array().sign()).matrix();
    }
    case RegKind::FixedScale: {
      Eigen::ArrayXd a = x.array().square();
      double s2 = a.sum() + sq(reg.scale);
      return (4.0 * x.array() * ((n + 1.0) * a - s2)).matrix();
    }
    case RegKind::Nullspace: {
      DenseVector cx = reg.matrix * x;
      return 2.0 * (reg.matrix.transpose() * cx) + 4.0 * (x.squaredNorm() - 1.0) * x;
    }
    case RegKind::BinBeta: {
      Eigen::ArrayXd r = x.array().square() - reg.scale;
      return (4.0 * x.array() * r).matrix();
    }
  }
  throw std::logic_error("grad_analytic: unknown regularizer kind");
}

DenseMatrix grad_analytic(const Regularizer& reg, const DenseMatrix& x) {
  if (reg.kind != RegKind::Om) {
    throw std::invalid_argument("matrix inputs are only defined for the Om kind");
  }
  DenseMatrix gram = x.transpose() * x;
  return 4.0 * double(x.cols()) * (x * gram) - 4.0 * x.squaredNorm() * x;
}

std::vector<LandscapeRow> landscape_grid(const Regularizer& reg, double lo, double hi,
                                         int resolution) {
  if (resolution < 2) throw std::invalid_argument("landscape_grid: resolution must be >= 2");
  if (!(lo < hi)) throw std::invalid_argument("landscape_grid: need lo < hi");
  double step = (hi - lo) / (resolution - 1);
  std::vector<LandscapeRow> rows;
  rows.reserve(size_t(resolution) * resolution);
  DenseVector p(2);
  for (int i = 0; i < resolution; ++i) {
    p[0] = lo + i * step;
    for (int j = 0; j < resolution; ++j) {
      p[1] = lo + j * step;
      double v = value(reg, p);
      rows.push_back({p[0], p[1], v, std::log10(v + 1e-12)});
    }
  }
  return rows;
}

void write_landscape_csv(std::ostream& out, const std::vector<LandscapeRow>& rows) {
  out << "x1,x2,value,log_value\n";
  char line[160];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g\n", r.x1, r.x2, r.value,
                  r.log_value);
    out << line;
  }
}

}  // namespace csreg
