#include "ccov/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "ccov/error.hpp"
#include "ccov/rng.hpp"

namespace ccov {

namespace {

constexpr Real kCenterMoveTol = 1e-6;
constexpr int kMaxLloydIterations = 300;

// One k-means++ + Lloyd run. `values` need not be sorted. Returns sorted
// centers and fills `wcss_out`; `trace` (optional) records the objective after
// each iteration.
std::vector<Real> lloyd_once(std::span<const Real> values, int k_eff, SplitMix64& rng,
                             Real& wcss_out, std::vector<Real>* trace = nullptr) {
  const std::size_t n = values.size();
  std::vector<Real> centers;
  centers.reserve(static_cast<std::size_t>(k_eff));

  // k-means++ seeding: first center uniform, then proportional to squared
  // distance from the nearest chosen center.
  centers.push_back(values[rng.next_below(n)]);
  std::vector<Real> d2(n);
  for (int c = 1; c < k_eff; ++c) {
    Real total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Real best = std::numeric_limits<Real>::infinity();
      for (const Real ctr : centers) best = std::min(best, (values[i] - ctr) * (values[i] - ctr));
      d2[i] = best;
      total += best;
    }
    if (total <= 0.0) break;  // all remaining points coincide with centers
    const Real target = rng.next_double() * total;
    Real cum = 0.0;
    std::size_t pick = n - 1;
    for (std::size_t i = 0; i < n; ++i) {
      cum += d2[i];
      if (cum > target) { pick = i; break; }
    }
    centers.push_back(values[pick]);
  }
  std::sort(centers.begin(), centers.end());

  const int k = static_cast<int>(centers.size());
  std::vector<int> assign(n);
  std::vector<Real> sums(static_cast<std::size_t>(k));
  std::vector<std::size_t> counts(static_cast<std::size_t>(k));
  for (int iter = 0; iter < kMaxLloydIterations; ++iter) {
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0u);
    for (std::size_t i = 0; i < n; ++i) {
      const int b = assign_bin(centers, values[i]);
      assign[i] = b;
      sums[static_cast<std::size_t>(b)] += values[i];
      counts[static_cast<std::size_t>(b)] += 1;
    }
    // Re-seed any emptied cluster at the point farthest from its center.
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      Real worst = -1.0;
      std::size_t worst_i = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const Real dist = std::abs(values[i] - centers[static_cast<std::size_t>(assign[i])]);
        if (dist > worst) { worst = dist; worst_i = i; }
      }
      const int old = assign[worst_i];
      sums[static_cast<std::size_t>(old)] -= values[worst_i];
      counts[static_cast<std::size_t>(old)] -= 1;
      assign[worst_i] = c;
      sums[static_cast<std::size_t>(c)] = values[worst_i];
      counts[static_cast<std::size_t>(c)] = 1;
    }
    Real max_move = 0.0;
    for (int c = 0; c < k; ++c) {
      const Real updated = sums[static_cast<std::size_t>(c)] /
                           static_cast<Real>(counts[static_cast<std::size_t>(c)]);
      max_move = std::max(max_move, std::abs(updated - centers[static_cast<std::size_t>(c)]));
      centers[static_cast<std::size_t>(c)] = updated;
    }
    std::sort(centers.begin(), centers.end());
    if (trace) trace->push_back(kmeans_wcss(values, centers));
    if (max_move < kCenterMoveTol) break;
  }

  // Equal centers can only arise from degenerate data; collapse them so the
  // strictly-increasing invariant holds.
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  wcss_out = kmeans_wcss(values, centers);
  return centers;
}

}  // namespace

Real kmeans_wcss(std::span<const Real> values, std::span<const Real> centers) {
  Real total = 0.0;
  for (const Real v : values) {
    const Real c = centers[static_cast<std::size_t>(assign_bin(centers, v))];
    total += (v - c) * (v - c);
  }
  return total;
}

int assign_bin(std::span<const Real> centers, Real x) {
  // Centers are sorted; pick the nearest, preferring the lower index on ties.
  const auto it = std::lower_bound(centers.begin(), centers.end(), x);
  if (it == centers.begin()) return 0;
  if (it == centers.end()) return static_cast<int>(centers.size()) - 1;
  const auto lo = it - 1;
  const Real d_lo = x - *lo;
  const Real d_hi = *it - x;
  return d_lo <= d_hi ? static_cast<int>(lo - centers.begin())
                      : static_cast<int>(it - centers.begin());
}

std::vector<Real> kmeans_1d_trace(std::span<const Real> values, int k, std::uint64_t seed) {
  if (values.empty()) raise(Errc::invalid_argument, "cannot cluster an empty value list");
  if (k < 1) raise(Errc::invalid_argument, "k must be >= 1");
  std::set<Real> distinct(values.begin(), values.end());
  const int k_eff = std::min<int>(k, static_cast<int>(distinct.size()));
  SplitMix64 rng(sub_seed(seed, 0));
  Real wcss;
  std::vector<Real> trace;
  lloyd_once(values, k_eff, rng, wcss, &trace);
  return trace;
}

std::vector<Real> fit_kmeans_1d(std::span<const Real> values, int k, std::uint64_t seed,
                                int restarts) {
  if (values.empty()) raise(Errc::invalid_argument, "cannot cluster an empty value list");
  if (k < 1) raise(Errc::invalid_argument, "k must be >= 1");
  if (restarts < 1) raise(Errc::invalid_argument, "restarts must be >= 1");

  std::set<Real> distinct(values.begin(), values.end());
  const int k_eff = std::min<int>(k, static_cast<int>(distinct.size()));
  if (k_eff == static_cast<int>(distinct.size())) {
    // Every distinct value gets its own center; no search needed.
    return {distinct.begin(), distinct.end()};
  }

  std::vector<Real> best;
  Real best_wcss = std::numeric_limits<Real>::infinity();
  for (int r = 0; r < restarts; ++r) {
    SplitMix64 rng(sub_seed(seed, static_cast<std::uint64_t>(r)));
    Real wcss;
    std::vector<Real> centers = lloyd_once(values, k_eff, rng, wcss);
    if (wcss < best_wcss) {
      best_wcss = wcss;
      best = std::move(centers);
    }
  }
  return best;
}

Discretizer fit_columns(const Matrix& X, const std::vector<std::string>& names,
                        const std::vector<bool>& pass_through, int k, std::uint64_t seed) {
  if (X.rows() == 0) raise(Errc::invalid_argument, "cannot fit a discretizer on an empty dataset");
  const auto d = static_cast<std::size_t>(X.cols());
  if (names.size() != d || pass_through.size() != d)
    raise(Errc::invalid_argument, "names/pass_through size mismatch");

  Discretizer dz;
  dz.k_requested = k;
  dz.seed = seed;
  dz.features.resize(d);
  std::vector<Real> column(static_cast<std::size_t>(X.rows()));
  for (std::size_t f = 0; f < d; ++f) {
    dz.features[f].name = names[f];
    dz.features[f].pass_through = pass_through[f];
    if (pass_through[f]) continue;
    for (Index r = 0; r < X.rows(); ++r) column[static_cast<std::size_t>(r)] = X(r, static_cast<Index>(f));
    dz.features[f].centers = fit_kmeans_1d(column, k, sub_seed(seed, f));
  }
  return dz;
}

Discretizer fit(const Dataset& ds, int k, std::uint64_t seed) {
  std::vector<bool> pass(static_cast<std::size_t>(ds.feature_count()));
  for (std::size_t f = 0; f < pass.size(); ++f)
    pass[f] = ds.schema.feature_kinds[f] == FeatureKind::discrete;
  return fit_columns(ds.rows, ds.schema.feature_names, pass, k, seed);
}

DiscretizedDataset apply_columns(const Discretizer& dz, const Matrix& X,
                                 const std::vector<std::string>& labels) {
  if (X.cols() != dz.feature_count())
    raise(Errc::schema_mismatch, "dataset has " + std::to_string(X.cols()) +
                                     " features, discretizer expects " +
                                     std::to_string(dz.feature_count()));
  if (static_cast<Index>(labels.size()) != X.rows())
    raise(Errc::length_mismatch, "labels/rows mismatch");

  DiscretizedDataset dd;
  dd.labels = labels;
  dd.rows.resize(X.rows(), X.cols());
  dd.factor_names.reserve(dz.features.size());
  for (const auto& feat : dz.features) dd.factor_names.push_back(feat.name);

  for (Index f = 0; f < X.cols(); ++f) {
    const auto& feat = dz.features[static_cast<std::size_t>(f)];
    for (Index r = 0; r < X.rows(); ++r) {
      dd.rows(r, f) = feat.pass_through
                          ? static_cast<int>(std::llround(X(r, f)))
                          : assign_bin(feat.centers, X(r, f));
    }
  }

  dd.alphabets.resize(static_cast<std::size_t>(X.cols()));
  for (Index f = 0; f < X.cols(); ++f) {
    std::set<int> seen;
    for (Index r = 0; r < X.rows(); ++r) seen.insert(dd.rows(r, f));
    dd.alphabets[static_cast<std::size_t>(f)].assign(seen.begin(), seen.end());
  }
  return dd;
}

DiscretizedDataset apply(const Discretizer& dz, const Dataset& ds) {
  if (ds.feature_count() != dz.feature_count())
    raise(Errc::schema_mismatch, "feature count differs from the fitted schema");
  for (std::size_t f = 0; f < dz.features.size(); ++f) {
    const bool want_pass = ds.schema.feature_kinds[f] == FeatureKind::discrete;
    if (dz.features[f].pass_through != want_pass || dz.features[f].name != ds.schema.feature_names[f])
      raise(Errc::schema_mismatch, "feature '" + ds.schema.feature_names[f] +
                                       "' does not match the fitted schema");
  }
  return apply_columns(dz, ds.rows, ds.labels);
}

DiscretizedDataset subset_rows(const DiscretizedDataset& dd, const IndexList& indices) {
  DiscretizedDataset out;
  out.factor_names = dd.factor_names;
  out.rows.resize(static_cast<Index>(indices.size()), dd.rows.cols());
  out.labels.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.rows.row(static_cast<Index>(i)) = dd.rows.row(indices[i]);
    out.labels.push_back(dd.labels[static_cast<std::size_t>(indices[i])]);
  }
  out.alphabets.resize(static_cast<std::size_t>(dd.rows.cols()));
  for (Index f = 0; f < out.rows.cols(); ++f) {
    std::set<int> seen;
    for (Index r = 0; r < out.rows.rows(); ++r) seen.insert(out.rows(r, f));
    out.alphabets[static_cast<std::size_t>(f)].assign(seen.begin(), seen.end());
  }
  return out;
}

std::string to_json(const Discretizer& dz) {
  nlohmann::ordered_json j;
  j["k_requested"] = dz.k_requested;
  j["seed"] = dz.seed;
  j["features"] = nlohmann::ordered_json::array();
  for (const auto& feat : dz.features) {
    nlohmann::ordered_json jf;
    jf["name"] = feat.name;
    jf["pass_through"] = feat.pass_through;
    jf["centers"] = feat.centers;
    j["features"].push_back(std::move(jf));
  }
  return j.dump(2);
}

Discretizer discretizer_from_json(const std::string& text) {
  Discretizer dz;
  try {
    const auto j = nlohmann::json::parse(text);
    dz.k_requested = j.at("k_requested").get<int>();
    dz.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& jf : j.at("features")) {
      Discretizer::Feature feat;
      feat.name = jf.at("name").get<std::string>();
      feat.pass_through = jf.at("pass_through").get<bool>();
      feat.centers = jf.at("centers").get<std::vector<Real>>();
      dz.features.push_back(std::move(feat));
    }
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::config_error, std::string("bad discretizer JSON: ") + e.what());
  }
  return dz;
}

}  // namespace ccov
