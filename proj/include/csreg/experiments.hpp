#pragma once

// Instance generation, trial execution and aggregation for the recovery,
// eigenvector, orthogonal-matrix, two-bit, sparse and max-cut experiments.
// Every randomized routine takes an explicit seed or stream so that reruns
// with equal configuration reproduce results bit for bit, independent of
// thread count.

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "csreg/core.hpp"
#include "csreg/regularizers.hpp"
#include "csreg/solvers.hpp"

namespace csreg {

enum class InstanceTag {
  SymBinary,
  OneSidedBinary,
  SymTernary,
  TwoBit,
  Eigenvector,
  OrthogonalMatrix,
  SparseOsb,
  SparseTer,
};

std::string tag_name(InstanceTag tag);

// k carries the column count for OrthogonalMatrix and the nonzero count for
// the sparse kinds; it is ignored elsewhere.
struct InstanceKind {
  InstanceTag tag = InstanceTag::SymBinary;
  int k = 0;

  static InstanceKind sym_binary() { return {InstanceTag::SymBinary, 0}; }
  static InstanceKind one_sided_binary() { return {InstanceTag::OneSidedBinary, 0}; }
  static InstanceKind sym_ternary() { return {InstanceTag::SymTernary, 0}; }
  static InstanceKind two_bit() { return {InstanceTag::TwoBit, 0}; }
  static InstanceKind eigenvector() { return {InstanceTag::Eigenvector, 0}; }
  static InstanceKind orthogonal(int columns) { return {InstanceTag::OrthogonalMatrix, columns}; }
  static InstanceKind sparse_osb(int nonzeros) { return {InstanceTag::SparseOsb, nonzeros}; }
  static InstanceKind sparse_ter(int nonzeros) { return {InstanceTag::SparseTer, nonzeros}; }
};

struct RecoveryInstance {
  DenseMatrix a;       // M x N sensing matrix
  DenseMatrix x_star;  // ground truth; one column except for OrthogonalMatrix
  DenseMatrix b;       // a * x_star
  InstanceKind kind;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  // Eigenvector: the matrix whose eigenvector x_star is.
  // TwoBit: the stacked parts [y1; y2] with x_star = y1 + y2.
  DenseMatrix structure;
  double eigenvalue = 0.0;  // Eigenvector only
};

// Draw order is fixed: A first (row by row), then the ground truth, so equal
// streams yield equal instances across methods.
RecoveryInstance gen_instance(InstanceKind kind, int n, int m, RngStream& rng);

struct TrialOutcome {
  bool success = false;
  double relative_error = std::numeric_limits<double>::infinity();
  // Index of the start that succeeded (0-based); equals the number of starts
  // attempted when all of them failed.
  int restarts_used = 0;
  int iterations_total = 0;
  std::string diagnostic;  // nonempty when a solver abort was swallowed
};

enum class Method {
  CsFista,       // fista on the regularizer matched to the instance kind
  LinfDR,        // min ||x||_inf s.t. Ax=b via Douglas-Rachford
  L1DR,          // min ||x||_1  s.t. Ax=b via Douglas-Rachford
  BinBetaFixed,  // min sum (x_i^2 - beta)^2, beta pinned
  BinBetaJoint,  // same, beta appended as a free coordinate
  EigMuJoint,    // min ||Cx - mu x||^2 over (x, mu)
};

std::string method_name(Method method);

struct TrialConfig {
  FistaConfig fista;       // fista.restarts == 0 picks the per-kind default
  DrConfig dr;
  double bin_beta = 1.0;   // level used by BinBetaFixed
  double lambda = 1e-5;    // two-bit constraint penalty weight
};

// Number of random starts when the caller leaves fista.restarts at 0.
int default_restarts(InstanceTag tag, Method method);

// Random starts are drawn from rng after the instance; pass injected_start
// to replace the first one.
TrialOutcome run_recovery_trial(const RecoveryInstance& inst, const TrialConfig& cfg,
                                RngStream& rng, const DenseVector* injected_start = nullptr);
TrialOutcome run_baseline_trial(const RecoveryInstance& inst, Method method,
                                const TrialConfig& cfg, RngStream& rng);

struct SuccessCurveRow {
  double ratio = 0.0;  // M/N, or K/N for the sparse sweep
  double success_prob = 0.0;
  double stderr_value = 0.0;  // sqrt(p(1-p)/trials)
  int trials = 0;
};

struct CurveConfig {
  int n = 100;
  int trials = 100;
  std::uint64_t base_seed = 1729;
  int jobs = 1;
  TrialConfig trial;
};

// Trial t of sweep index r runs on stream r*trials + t.
std::vector<SuccessCurveRow> success_curve(InstanceKind kind, Method method,
                                           const std::vector<int>& m_list,
                                           const CurveConfig& cfg);
// Same machinery with M fixed and the nonzero count swept; ratio = K/N.
std::vector<SuccessCurveRow> sparse_success_curve(InstanceTag tag, int m,
                                                  const std::vector<int>& k_list,
                                                  Method method, const CurveConfig& cfg);

void write_curve_csv(const std::string& path, const std::vector<SuccessCurveRow>& rows);

// Success requires the affine constraint to hold and the Gram matrix to be
// within 1e-2 of a positive multiple of the identity. m == 0 runs
// unconstrained. Trial t uses stream stream_offset + t.
double run_orthogonal(int n, int k, int m, int trials, std::uint64_t base_seed,
                      const TrialConfig& cfg, std::uint64_t stream_offset = 0, int jobs = 1);

// Penalized two-level solve over the stacked parts; success on y1 + y2
// against x_star up to a global sign flip.
SuccessCurveRow run_two_bit(int n, int m, double lambda, int trials, std::uint64_t base_seed,
                            const TrialConfig& cfg, std::uint64_t stream_offset = 0,
                            int jobs = 1);

struct GraphEdge {
  int u = 0;  // 0-indexed, u < v
  int v = 0;
  double weight = 0.0;
};

struct Graph {
  int n = 0;
  std::vector<GraphEdge> edges;
};

// Header "N E" then one "i j w" line per edge, 1-indexed, i < j, no
// duplicates.
Graph read_gset(const std::string& path);
Graph weighted4_demo();
Graph unit5_demo();

// Smooth cut relaxation: value = 1/2 sum w_ij (1 - x_i x_j) over edges,
// gradient d/dx_i = -1/2 sum_j w_ij x_j.
std::pair<double, DenseVector> maxcut_objective(const Graph& graph, const DenseVector& x);

double cut_value(const Graph& graph, const std::vector<int>& signs);

struct MaxCutRestart {
  double initial_cut = 0.0;  // relaxation value at the random start
  double final_cut = 0.0;    // cut of the rounded assignment
  int iterations = 0;
};

struct MaxCutReport {
  double best_cut = 0.0;
  std::vector<int> assignment;  // +-1 per vertex
  std::vector<MaxCutRestart> restarts;
};

// Minimizes -cut relaxation + lambda * binary penalty over the unit box,
// then rounds by sign (zero rounds up). Restart r uses stream r.
MaxCutReport run_maxcut(const Graph& graph, double lambda, int restarts,
                        std::uint64_t base_seed, const FistaConfig& cfg);

struct MaxCutExact {
  double max_cut = 0.0;
  std::vector<int> assignment;
};

// Exhaustive over 2^(N-1) patterns, first vertex pinned to +1; N <= 24.
MaxCutExact maxcut_bruteforce(const Graph& graph);

}  // namespace csreg
