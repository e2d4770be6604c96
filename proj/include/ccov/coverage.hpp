#pragma once

#include <cstdint>
#include <ostream>
#include <unordered_set>
#include <vector>

#include "ccov/discretize.hpp"

namespace ccov {

/// One t-way value combination: a strictly increasing tuple of factor indices
/// together with the value each of those factors takes.
struct Combination {
  std::vector<int> factors;
  std::vector<int> values;

  bool operator==(const Combination& other) const {
    return factors == other.factors && values == other.values;
  }
};

/// Platform-stable hash (no std::hash, so iteration-independent results are
/// reproducible across standard libraries).
struct CombinationHash {
  std::size_t operator()(const Combination& c) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    auto mix = [&h](std::uint64_t v) {
      h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
      h *= 0xBF58476D1CE4E5B9ULL;
      h ^= h >> 29;
    };
    for (const int f : c.factors) mix(static_cast<std::uint64_t>(f) + 1);
    for (const int v : c.values) mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(v)) + 0x100000001ULL);
    return static_cast<std::size_t>(h);
  }
};

/// The set of t-way combinations appearing in a dataset.
struct CombinationSet {
  int t = 0;
  int d = 0;
  std::unordered_set<Combination, CombinationHash> members;

  long long size() const { return static_cast<long long>(members.size()); }
};

struct CoverageResult {
  int t = 0;
  long long numerator = 0;
  long long denominator = 0;
  double ratio = 0.0;
};

/// Every t-subset of factors is visited in lexicographic order; each row
/// contributes one combination per subset.
CombinationSet enumerate_t_way(const DiscretizedDataset& dd, int t);

/// Definition-style total coverage: |D^t| over the number of t-way
/// combinations in the universe given by the per-factor alphabets (the
/// universe is the full Cartesian product per factor subset).
CoverageResult combinatorial_coverage(const DiscretizedDataset& dd,
                                      const std::vector<std::vector<int>>& universe_alphabets,
                                      int t);

/// Set-difference coverage |B \ A| / |B|: 0 means B is contained in A,
/// 1 means the two sets share nothing.
CoverageResult sdcc(const CombinationSet& B, const CombinationSet& A);

/// sdcc over enumerations of two datasets. An empty A (zero rows) yields 1.0
/// exactly: the set difference with the empty set is B itself.
CoverageResult sdcc_datasets(const DiscretizedDataset& B, const DiscretizedDataset& A, int t);

/// Sorted text form, one combination per line: factor indices, a colon, then
/// values ("0 2 : 1 0"). Stable across runs, meant for diffing.
void write_combination_set(std::ostream& out, const CombinationSet& cs);

}  // namespace ccov
