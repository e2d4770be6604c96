#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ccov/types.hpp"

namespace ccov {

enum class MetricMethod { NCA, MLKR, LMNN };

/// A learned d x d linear transform; the latent representation of a row x is
/// matrix * x, i.e. transform() maps X to X * matrix^T. Distances seen by the
/// solver are normalized by the median pairwise distance of the training
/// rows; that normalization is folded into `matrix`, so applying the map to
/// raw rows yields exactly the space the objective was optimized in. A fit
/// that never accepts a step returns the exact identity.
struct LinearMap {
  Matrix matrix;
  MetricMethod method = MetricMethod::NCA;
  std::uint64_t seed = 0;
  Real final_objective = 0.0;
  int iterations_run = 0;
  std::vector<Real> objective_trace;  // value at start plus one per accepted step
};

/// Solver knobs for the full-batch backtracking gradient methods. The solver
/// is deterministic from the identity start, so restarts beyond the first
/// change nothing and are skipped.
struct OptimizerConfig {
  int max_iterations = 100;
  Real initial_step = 1.0;
  Real objective_tolerance = 1e-6;  // stop when an accepted step improves less
  int restarts = 1;
};

struct LmnnOptions {
  int k_neighbors = 3;
  Real mu = 0.5;
  /// Shrink k per class when a class has too few members; with clamping off a
  /// singleton class raises ClassTooSmall.
  bool clamp_neighbors = true;
};

// -- objective evaluators (no rescaling; also used by the gradient checks) --
// Evaluations that degenerate (non-finite inputs) return NaN; the fitters'
// line search rejects such trial points.

/// NCA objective: sum over rows of the softmax probability mass its same-class
/// neighbors receive. Larger is better.
Real nca_objective(const Matrix& X, const std::vector<int>& y, const Matrix& A);
Matrix nca_gradient(const Matrix& X, const std::vector<int>& y, const Matrix& A);

/// MLKR leave-one-out kernel-regression squared error. Smaller is better.
Real mlkr_objective(const Matrix& X, const Vector& y, const Matrix& A);
Matrix mlkr_gradient(const Matrix& X, const Vector& y, const Matrix& A);

/// Same-class nearest neighbors of each row in the input space, k per row
/// (fewer for small classes when clamping).
std::vector<std::vector<int>> lmnn_target_neighbors(const Matrix& X, const std::vector<int>& y,
                                                    int k_neighbors, bool clamp);

/// LMNN objective split into its pull (target-neighbor distances) and push
/// (unit-margin hinge on impostors) terms; total = (1-mu)*pull + mu*push.
std::pair<Real, Real> lmnn_objective_parts(const Matrix& X, const std::vector<int>& y,
                                           const std::vector<std::vector<int>>& targets,
                                           const Matrix& A);
Real lmnn_objective(const Matrix& X, const std::vector<int>& y,
                    const std::vector<std::vector<int>>& targets, Real mu, const Matrix& A);
Matrix lmnn_gradient(const Matrix& X, const std::vector<int>& y,
                     const std::vector<std::vector<int>>& targets, Real mu, const Matrix& A);

/// Upper median of the N(N-1)/2 pairwise Euclidean distances.
Real median_pairwise_distance(const Matrix& X);

// -- fitters ---------------------------------------------------------------

/// Gradient ascent on the NCA objective from the identity with backtracking
/// line search. A single-class y has an identically zero gradient; the
/// identity map is returned with the (constant) objective.
LinearMap fit_nca(const Matrix& X, const std::vector<int>& y, const OptimizerConfig& cfg,
                  std::uint64_t seed);

/// Gradient descent on the MLKR loss. For classification datasets pass the
/// integer-encoded class labels (sorted-label order) as y.
LinearMap fit_mlkr(const Matrix& X, const Vector& y, const OptimizerConfig& cfg,
                   std::uint64_t seed);

/// Gradient descent on the LMNN objective; target neighbors are fixed once in
/// the input space.
LinearMap fit_lmnn(const Matrix& X, const std::vector<int>& y, const LmnnOptions& options,
                   const OptimizerConfig& cfg, std::uint64_t seed);

/// X * A^T; raises DimensionMismatch when the column counts differ.
Matrix transform(const LinearMap& map, const Matrix& X);

std::string to_json(const LinearMap& map);
LinearMap linear_map_from_json(const std::string& text);

}  // namespace ccov
