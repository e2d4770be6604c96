#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ccov/dataset.hpp"
#include "ccov/types.hpp"

namespace ccov {

/// Per-feature 1-D binning model. Continuous features carry sorted k-means
/// centers; discrete features pass through unchanged.
struct Discretizer {
  struct Feature {
    std::string name;
    bool pass_through = false;
    std::vector<Real> centers;  // strictly increasing, empty iff pass_through
  };
  std::vector<Feature> features;
  int k_requested = 0;
  std::uint64_t seed = 0;

  Index feature_count() const { return static_cast<Index>(features.size()); }
};

/// Finite-valued factors: the substrate coverage is computed over.
/// `alphabets[f]` is the sorted list of values actually observed in column f.
struct DiscretizedDataset {
  std::vector<std::string> factor_names;
  IntMatrix rows;  // N x d, small nonnegative integers
  std::vector<std::vector<int>> alphabets;
  std::vector<std::string> labels;

  Index row_count() const { return rows.rows(); }
  Index factor_count() const { return rows.cols(); }
};

/// Lloyd's algorithm in one dimension with k-means++ initialization, clamped
/// to k_eff = min(k, #distinct values) clusters. Runs `restarts` seeded
/// restarts (sub_seed(seed, r)) and keeps the lowest within-cluster sum of
/// squares. Converges when the largest center movement drops below 1e-6 or
/// after 300 iterations. Returns centers sorted ascending.
std::vector<Real> fit_kmeans_1d(std::span<const Real> values, int k, std::uint64_t seed,
                                int restarts = 10);

/// Within-cluster sum of squares of `values` under nearest-center assignment.
Real kmeans_wcss(std::span<const Real> values, std::span<const Real> centers);

/// Objective after each Lloyd iteration for a single run (restart 0).
/// Diagnostic: the sequence is non-increasing.
std::vector<Real> kmeans_1d_trace(std::span<const Real> values, int k, std::uint64_t seed);

/// Fits one binning per column of X on all rows; columns flagged in
/// `pass_through` are left unbinned. Column f uses sub_seed(seed, f).
Discretizer fit_columns(const Matrix& X, const std::vector<std::string>& names,
                        const std::vector<bool>& pass_through, int k, std::uint64_t seed);

/// Dataset overload: continuous features are fitted, discrete features pass
/// through. Fitting uses every row of `ds`.
Discretizer fit(const Dataset& ds, int k, std::uint64_t seed);

/// Index of the nearest center (ties go to the lower index).
int assign_bin(std::span<const Real> centers, Real x);

/// Bins every value of X with dz's centers; pass-through columns are cast to
/// integers unchanged. Alphabets are recomputed from the output.
DiscretizedDataset apply_columns(const Discretizer& dz, const Matrix& X,
                                 const std::vector<std::string>& labels);

/// Dataset overload; raises SchemaMismatch if ds does not match the schema dz
/// was fitted on (feature count, names, and kinds).
DiscretizedDataset apply(const Discretizer& dz, const Dataset& ds);

/// Row subset with alphabets recomputed from the surviving rows.
DiscretizedDataset subset_rows(const DiscretizedDataset& dd, const IndexList& indices);

std::string to_json(const Discretizer& dz);
Discretizer discretizer_from_json(const std::string& text);

}  // namespace ccov
