#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace csreg {

using DenseVector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;

// Throws std::invalid_argument if any entry of m is NaN/Inf.
void require_finite(const char* name, const DenseMatrix& m);
void require_finite(const char* name, const DenseVector& v);

// Seeded generator with independent substreams: distinct (seed, stream_id)
// pairs give unrelated sequences, identical pairs replay bitwise.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  double normal();                       // N(0, 1)
  double uniform();                      // U[0, 1)
  double uniform(double lo, double hi);  // U[lo, hi)
  std::uint64_t below(std::uint64_t bound);  // uniform integer in [0, bound)

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Entries drawn i.i.d. N(0,1) in row-major order; fill order is part of the
// determinism contract, do not change it.
DenseMatrix standard_normal_matrix(Eigen::Index rows, Eigen::Index cols, RngStream& rng);
DenseVector standard_normal_vector(Eigen::Index n, RngStream& rng);

// Euclidean projection onto {x : Ax = b} for full-row-rank A (M <= N).
// Caches a Cholesky factorization of A*A^T; construction fails with
// std::invalid_argument when a pivot falls below 1e-12 * trace(A*A^T).
// M = 0 is accepted and projects as the identity.
// The target may be a matrix B (M x K); then project() acts columnwise on
// N x K inputs, which covers constraints of the form A*X = B.
class AffineProjector {
 public:
  AffineProjector(DenseMatrix a, DenseMatrix b);

  DenseVector project(const DenseVector& x) const;
  DenseMatrix project_matrix(const DenseMatrix& x) const;

  const DenseMatrix& matrix() const { return a_; }
  const DenseMatrix& target() const { return b_; }
  Eigen::Index rows() const { return a_.rows(); }
  Eigen::Index cols() const { return a_.cols(); }

 private:
  DenseMatrix a_;
  DenseMatrix b_;
  Eigen::LLT<DenseMatrix> llt_;
};

DenseVector project_affine(const AffineProjector& proj, const DenseVector& x);

struct EigenPair {
  double value;
  DenseVector vector;  // unit norm
};

// Real eigenpairs of a square real matrix: eigenvalues with
// |imag| <= 1e-8 * spectral_radius, eigenvectors normalized and satisfying
// ||C v - lambda v|| <= 1e-6 * ||C||_F. May be empty.
std::vector<EigenPair> eig_real(const DenseMatrix& c);

// Singular values, nonincreasing.
DenseVector singular_values(const DenseMatrix& x);

}  // namespace csreg
