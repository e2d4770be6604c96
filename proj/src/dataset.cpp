#include "ccov/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ccov/error.hpp"
#include "ccov/rng.hpp"

namespace ccov {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool parse_real(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const KindOverrides& kind_overrides) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) raise(Errc::empty_dataset, "'" + path + "' is empty");
  const std::vector<std::string> header = split_commas(line);

  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end())
    raise(Errc::missing_label_column, "column '" + label_column + "' not in header of '" + path + "'");
  const std::size_t label_pos = static_cast<std::size_t>(label_it - header.begin());

  for (const auto& name : kind_overrides) {
    if (std::find(header.begin(), header.end(), name.first) == header.end())
      raise(Errc::config_error, "kind override for unknown column '" + name.first + "'");
  }

  std::vector<std::vector<std::string>> cells;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() && in.peek() == EOF) break;  // trailing newline
    std::vector<std::string> fields = split_commas(line);
    if (fields.size() != header.size())
      raise(Errc::ragged_row, "row " + std::to_string(line_no) + " has " +
                                  std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(header.size()));
    cells.push_back(std::move(fields));
  }
  if (cells.empty()) raise(Errc::empty_dataset, "'" + path + "' has a header but no data rows");

  const std::size_t n = cells.size();
  const std::size_t d = header.size() - 1;

  Dataset ds;
  ds.schema.label_name = label_column;
  ds.schema.feature_names.reserve(d);
  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != label_pos) ds.schema.feature_names.push_back(header[c]);

  // Column kinds: override wins, otherwise discrete iff any value fails to
  // parse as a finite real. Empty fields are rejected outright.
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != label_pos) feature_cols.push_back(c);

  ds.schema.feature_kinds.resize(d);
  for (std::size_t f = 0; f < d; ++f) {
    const std::size_t c = feature_cols[f];
    const auto ov = kind_overrides.find(header[c]);
    std::size_t first_bad_row = 0;  // 0 = none; otherwise 1-based file line
    for (std::size_t r = 0; r < n; ++r) {
      const std::string& v = cells[r][c];
      if (v.empty())
        raise(Errc::unparseable_value, "empty value at row " + std::to_string(r + 2) +
                                           ", column '" + header[c] + "'");
      double parsed;
      if (!parse_real(v, parsed) && first_bad_row == 0) first_bad_row = r + 2;
    }
    if (ov != kind_overrides.end())
      ds.schema.feature_kinds[f] = ov->second;
    else
      ds.schema.feature_kinds[f] =
          (first_bad_row == 0) ? FeatureKind::continuous : FeatureKind::discrete;
    if (ds.schema.feature_kinds[f] == FeatureKind::continuous && first_bad_row != 0)
      raise(Errc::unparseable_value, "cannot parse value at row " + std::to_string(first_bad_row) +
                                         ", column '" + header[c] + "' declared continuous");
  }

  ds.encodings.resize(d);
  for (std::size_t f = 0; f < d; ++f) {
    if (ds.schema.feature_kinds[f] != FeatureKind::discrete) continue;
    std::set<std::string> categories;
    for (std::size_t r = 0; r < n; ++r) categories.insert(cells[r][feature_cols[f]]);
    int code = 0;
    for (const auto& cat : categories) ds.encodings[f][cat] = code++;
  }

  ds.rows.resize(static_cast<Index>(n), static_cast<Index>(d));
  ds.labels.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t f = 0; f < d; ++f) {
      const std::string& v = cells[r][feature_cols[f]];
      if (ds.schema.feature_kinds[f] == FeatureKind::discrete) {
        ds.rows(static_cast<Index>(r), static_cast<Index>(f)) = ds.encodings[f].at(v);
      } else {
        double parsed;
        if (!parse_real(v, parsed))
          raise(Errc::unparseable_value, "cannot parse '" + v + "' at row " +
                                             std::to_string(r + 2) + ", column '" +
                                             header[feature_cols[f]] + "'");
        ds.rows(static_cast<Index>(r), static_cast<Index>(f)) = parsed;
      }
    }
    const std::string& lab = cells[r][label_pos];
    if (lab.empty())
      raise(Errc::unparseable_value, "empty label at row " + std::to_string(r + 2));
    ds.labels.push_back(lab);
  }
  return ds;
}

const std::string& decode_category(const Dataset& ds, Index feature, int value) {
  const auto& enc = ds.encodings.at(static_cast<std::size_t>(feature));
  for (const auto& [cat, code] : enc)
    if (code == value) return cat;
  raise(Errc::invalid_argument, "value " + std::to_string(value) + " not in encoding of feature " +
                                    std::to_string(feature));
}

long long round_half_to_even(double x) {
  const double floor_x = std::floor(x);
  const double frac = x - floor_x;
  auto lo = static_cast<long long>(floor_x);
  if (frac > 0.5) return lo + 1;
  if (frac < 0.5) return lo;
  return (lo % 2 == 0) ? lo : lo + 1;
}

std::vector<SplitPlan> make_folds(const Dataset& ds, int n_folds, double test_fraction,
                                  std::uint64_t seed) {
  if (n_folds < 1) raise(Errc::invalid_argument, "n_folds must be >= 1");
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    raise(Errc::invalid_argument, "test_fraction must be in (0, 1)");
  const Index n = ds.row_count();
  if (n < 2) raise(Errc::invalid_argument, "need at least 2 rows to split");

  const long long n_test = round_half_to_even(test_fraction * static_cast<double>(n));
  if (n_test <= 0 || n_test >= n)
    raise(Errc::degenerate_split, "test size " + std::to_string(n_test) + " of " +
                                      std::to_string(n) + " rows leaves an empty side");

  std::vector<SplitPlan> plans;
  plans.reserve(static_cast<std::size_t>(n_folds));
  for (int f = 0; f < n_folds; ++f) {
    SplitPlan plan;
    plan.fold_index = f;
    plan.seed = sub_seed(seed, static_cast<std::uint64_t>(f));
    SplitMix64 rng(plan.seed);

    // Partial Fisher-Yates: the first n_test slots become the test set.
    IndexList perm(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (long long i = 0; i < n_test; ++i) {
      const auto j = i + static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(n - i)));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    plan.test_indices.assign(perm.begin(), perm.begin() + n_test);
    plan.train_indices.assign(perm.begin() + n_test, perm.end());
    std::sort(plan.test_indices.begin(), plan.test_indices.end());
    std::sort(plan.train_indices.begin(), plan.train_indices.end());
    plans.push_back(std::move(plan));
  }
  return plans;
}

std::vector<std::string> class_names(const std::vector<std::string>& labels) {
  std::set<std::string> names(labels.begin(), labels.end());
  return {names.begin(), names.end()};
}

std::vector<int> encode_labels(const std::vector<std::string>& labels,
                               const std::vector<std::string>& names) {
  std::vector<int> out;
  out.reserve(labels.size());
  for (const auto& lab : labels) {
    const auto it = std::lower_bound(names.begin(), names.end(), lab);
    if (it == names.end() || *it != lab)
      raise(Errc::invalid_argument, "label '" + lab + "' not in class list");
    out.push_back(static_cast<int>(it - names.begin()));
  }
  return out;
}

}  // namespace ccov
