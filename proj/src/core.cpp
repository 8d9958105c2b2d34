#include "csreg/core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <stdexcept>

namespace csreg {

void require_finite(const char* name, const DenseMatrix& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(name) + ": non-finite entry");
  }
}

void require_finite(const char* name, const DenseVector& v) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(name) + ": non-finite entry");
  }
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::seed_seq seq{seed, stream_id};
  engine_.seed(seq);
}

double RngStream::normal() { return normal_(engine_); }

double RngStream::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double RngStream::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
}

DenseMatrix standard_normal_matrix(Eigen::Index rows, Eigen::Index cols, RngStream& rng) {
  DenseMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = rng.normal();
    }
  }
  return m;
}

DenseVector standard_normal_vector(Eigen::Index n, RngStream& rng) {
  DenseVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

AffineProjector::AffineProjector(DenseMatrix a, DenseMatrix b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows() > a_.cols()) {
    throw std::invalid_argument("AffineProjector: more constraints than unknowns");
  }
  if (b_.rows() != a_.rows()) {
    throw std::invalid_argument("AffineProjector: target row count mismatch");
  }
  require_finite("AffineProjector A", a_);
  require_finite("AffineProjector b", b_);
  DenseMatrix gram = a_ * a_.transpose();
  llt_.compute(gram);
  if (a_.rows() > 0) {
    if (llt_.info() != Eigen::Success) {
      throw std::invalid_argument("AffineProjector: A is rank deficient");
    }
    // LLT pivots are the squared diagonal of L.
    double min_pivot = llt_.matrixLLT().diagonal().array().square().minCoeff();
    if (min_pivot < 1e-12 * gram.trace()) {
      throw std::invalid_argument("AffineProjector: A is rank deficient");
    }
  }
}

DenseVector AffineProjector::project(const DenseVector& x) const {
  if (a_.rows() == 0) return x;
  return x - a_.transpose() * llt_.solve(a_ * x - b_.col(0));
}

DenseMatrix AffineProjector::project_matrix(const DenseMatrix& x) const {
  if (a_.rows() == 0) return x;
  return x - a_.transpose() * llt_.solve(a_ * x - b_);
}

DenseVector project_affine(const AffineProjector& proj, const DenseVector& x) {
  return proj.project(x);
}

std::vector<EigenPair> eig_real(const DenseMatrix& c) {
  if (c.rows() != c.cols()) {
    throw std::invalid_argument("eig_real: matrix must be square");
  }
  Eigen::EigenSolver<DenseMatrix> solver(c);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_real: eigendecomposition failed");
  }
  const auto& values = solver.eigenvalues();
  double radius = values.array().abs().maxCoeff();
  double norm_c = c.norm();
  std::vector<EigenPair> pairs;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values[i].imag()) > 1e-8 * radius) continue;
    DenseVector v = solver.eigenvectors().col(i).real();
    double len = v.norm();
    if (len == 0.0) continue;
    v /= len;
    double lambda = values[i].real();
    if ((c * v - lambda * v).norm() > 1e-6 * std::max(norm_c, 1e-300)) continue;
    pairs.push_back({lambda, std::move(v)});
  }
  return pairs;
}

DenseVector singular_values(const DenseMatrix& x) {
  return Eigen::JacobiSVD<DenseMatrix>(x).singularValues();
}

}  // namespace csreg
