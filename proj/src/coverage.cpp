#include "ccov/coverage.hpp"

#include <algorithm>

#include "ccov/error.hpp"

namespace ccov {

namespace {

void check_t(const DiscretizedDataset& dd, int t) {
  if (dd.row_count() == 0) raise(Errc::invalid_argument, "dataset has no rows");
  if (t < 1) raise(Errc::invalid_argument, "t must be >= 1");
  if (t > dd.factor_count())
    raise(Errc::t_too_large, "t=" + std::to_string(t) + " exceeds the " +
                                 std::to_string(dd.factor_count()) + " available factors");
}

// Advances a strictly increasing t-subset of {0..d-1} to its lexicographic
// successor; returns false after the last subset.
bool next_subset(std::vector<int>& subset, int d) {
  const int t = static_cast<int>(subset.size());
  for (int i = t - 1; i >= 0; --i) {
    if (subset[static_cast<std::size_t>(i)] < d - t + i) {
      ++subset[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < t; ++j)
        subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

CombinationSet enumerate_t_way(const DiscretizedDataset& dd, int t) {
  check_t(dd, t);
  const int d = static_cast<int>(dd.factor_count());
  const Index n = dd.row_count();

  CombinationSet cs;
  cs.t = t;
  cs.d = d;

  std::vector<int> subset(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) subset[static_cast<std::size_t>(i)] = i;
  Combination combo;
  combo.factors.resize(static_cast<std::size_t>(t));
  combo.values.resize(static_cast<std::size_t>(t));
  do {
    combo.factors = subset;
    for (Index r = 0; r < n; ++r) {
      for (int i = 0; i < t; ++i)
        combo.values[static_cast<std::size_t>(i)] = dd.rows(r, subset[static_cast<std::size_t>(i)]);
      cs.members.insert(combo);
    }
  } while (next_subset(subset, d));
  return cs;
}

CoverageResult combinatorial_coverage(const DiscretizedDataset& dd,
                                      const std::vector<std::vector<int>>& universe_alphabets,
                                      int t) {
  check_t(dd, t);
  if (universe_alphabets.size() != static_cast<std::size_t>(dd.factor_count()))
    raise(Errc::factor_mismatch, "universe has " + std::to_string(universe_alphabets.size()) +
                                     " alphabets for " + std::to_string(dd.factor_count()) +
                                     " factors");
  for (Index f = 0; f < dd.factor_count(); ++f) {
    const auto& universe = universe_alphabets[static_cast<std::size_t>(f)];
    for (const int v : dd.alphabets[static_cast<std::size_t>(f)]) {
      if (!std::binary_search(universe.begin(), universe.end(), v))
        raise(Errc::value_outside_universe, "value " + std::to_string(v) +
                                                " of factor " + std::to_string(f) +
                                                " is not in its universe alphabet");
    }
  }

  const CombinationSet observed = enumerate_t_way(dd, t);

  long long denominator = 0;
  std::vector<int> subset(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) subset[static_cast<std::size_t>(i)] = i;
  do {
    long long product = 1;
    for (const int f : subset)
      product *= static_cast<long long>(universe_alphabets[static_cast<std::size_t>(f)].size());
    denominator += product;
  } while (next_subset(subset, static_cast<int>(dd.factor_count())));

  CoverageResult result;
  result.t = t;
  result.numerator = observed.size();
  result.denominator = denominator;
  result.ratio = denominator > 0 ? static_cast<double>(result.numerator) /
                                       static_cast<double>(denominator)
                                 : 0.0;
  return result;
}

CoverageResult sdcc(const CombinationSet& B, const CombinationSet& A) {
  if (B.t != A.t)
    raise(Errc::t_mismatch, "B has t=" + std::to_string(B.t) + ", A has t=" + std::to_string(A.t));
  if (B.members.empty())
    raise(Errc::empty_reference_set, "SDCC is undefined for an empty reference set B");

  long long missing = 0;
  for (const auto& combo : B.members)
    if (A.members.find(combo) == A.members.end()) ++missing;

  CoverageResult result;
  result.t = B.t;
  result.numerator = missing;
  result.denominator = B.size();
  result.ratio = static_cast<double>(missing) / static_cast<double>(result.denominator);
  return result;
}

CoverageResult sdcc_datasets(const DiscretizedDataset& B, const DiscretizedDataset& A, int t) {
  if (B.factor_count() != A.factor_count())
    raise(Errc::factor_mismatch, "B has " + std::to_string(B.factor_count()) +
                                     " factors, A has " + std::to_string(A.factor_count()));
  const CombinationSet bset = enumerate_t_way(B, t);
  if (A.row_count() == 0) {
    // B \ empty = B: nothing overlaps.
    return CoverageResult{t, bset.size(), bset.size(), 1.0};
  }
  return sdcc(bset, enumerate_t_way(A, t));
}

void write_combination_set(std::ostream& out, const CombinationSet& cs) {
  std::vector<const Combination*> sorted;
  sorted.reserve(cs.members.size());
  for (const auto& combo : cs.members) sorted.push_back(&combo);
  std::sort(sorted.begin(), sorted.end(), [](const Combination* a, const Combination* b) {
    if (a->factors != b->factors) return a->factors < b->factors;
    return a->values < b->values;
  });
  for (const Combination* combo : sorted) {
    for (std::size_t i = 0; i < combo->factors.size(); ++i) {
      if (i) out << ' ';
      out << combo->factors[i];
    }
    out << " :";
    for (const int v : combo->values) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace ccov
