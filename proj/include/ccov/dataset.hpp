#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ccov/types.hpp"

namespace ccov {

enum class FeatureKind { continuous, discrete };

struct Schema {
  std::vector<std::string> feature_names;
  std::vector<FeatureKind> feature_kinds;
  std::string label_name;

  Index feature_count() const { return static_cast<Index>(feature_names.size()); }
};

/// A loaded tabular dataset. Categorical (discrete) features are already
/// ordinal-encoded: each distinct category string maps to 0..K-1 in sorted
/// string order, and `encodings[f]` holds that map (empty for continuous
/// features). Immutable after construction; safe to share across threads.
struct Dataset {
  Schema schema;
  Matrix rows;                       // N x d, encoded values
  std::vector<std::string> labels;   // size N
  std::vector<std::map<std::string, int>> encodings;  // size d

  Index row_count() const { return rows.rows(); }
  Index feature_count() const { return rows.cols(); }
};

/// One random train/test split. Index lists are sorted ascending and together
/// partition 0..N-1.
struct SplitPlan {
  int fold_index = 0;
  IndexList train_indices;
  IndexList test_indices;
  std::uint64_t seed = 0;
};

using KindOverrides = std::map<std::string, FeatureKind>;

/// Loads a UTF-8, comma-separated CSV with a header row. Columns whose values
/// all parse as finite reals are continuous; any other column is flagged
/// discrete and ordinal-encoded by sorted category order. `kind_overrides`
/// (feature name -> kind) take precedence over auto-detection. Empty fields
/// and non-finite numerics are rejected (missing values are unsupported).
Dataset load_csv(const std::string& path, const std::string& label_column,
                 const KindOverrides& kind_overrides = {});

/// Recovers the category string for an encoded discrete value.
const std::string& decode_category(const Dataset& ds, Index feature, int value);

/// Nearest-integer rounding with ties to the even integer.
long long round_half_to_even(double x);

/// `n_folds` independent random splits (not a partition-style cross
/// validation). Each fold samples round(test_fraction*N) test indices without
/// replacement, using sub_seed(seed, fold) as its generator seed.
std::vector<SplitPlan> make_folds(const Dataset& ds, int n_folds, double test_fraction,
                                  std::uint64_t seed);

/// Sorted distinct labels; index within this list is the canonical class id,
/// so class tie-breaks by id are lexicographic tie-breaks by name.
std::vector<std::string> class_names(const std::vector<std::string>& labels);

/// Maps each label to its index in `names` (which must contain it).
std::vector<int> encode_labels(const std::vector<std::string>& labels,
                               const std::vector<std::string>& names);

}  // namespace ccov
