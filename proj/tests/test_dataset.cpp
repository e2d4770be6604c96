#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "ccov/dataset.hpp"
#include "ccov/error.hpp"
#include "ccov/rng.hpp"
#include "test_helpers.hpp"

using namespace ccov;

TEST_CASE("load_csv: wine fixture has the documented shape") {
  const Dataset ds = load_csv(testutil::data_path("wine.csv"), "class");
  CHECK(ds.row_count() == 178);
  CHECK(ds.feature_count() == 13);
  CHECK(class_names(ds.labels).size() == 3);
  for (const auto kind : ds.schema.feature_kinds) CHECK(kind == FeatureKind::continuous);
}

TEST_CASE("load_csv: header-only file is an empty dataset") {
  testutil::TempDir tmp("ccov_ds");
  testutil::write_text(tmp.file("empty.csv"), "a,b,class\n");
  CHECK_THROWS_WITH_AS(load_csv(tmp.file("empty.csv"), "class"), doctest::Contains("EmptyDataset"),
                       Error);
}

TEST_CASE("load_csv: car categories are ordinal-encoded in sorted order") {
  const Dataset ds = load_csv(testutil::data_path("car.csv"), "class");
  CHECK(ds.row_count() == 1728);
  CHECK(ds.feature_count() == 6);
  CHECK(class_names(ds.labels).size() == 4);
  // the buying column holds {vhigh, high, med, low}
  const auto& enc = ds.encodings[0];
  REQUIRE(enc.size() == 4);
  CHECK(enc.at("high") == 0);
  CHECK(enc.at("low") == 1);
  CHECK(enc.at("med") == 2);
  CHECK(enc.at("vhigh") == 3);
  for (const auto kind : ds.schema.feature_kinds) CHECK(kind == FeatureKind::discrete);
}

TEST_CASE("load_csv: error paths carry locations") {
  testutil::TempDir tmp("ccov_ds");
  SUBCASE("ragged row") {
    testutil::write_text(tmp.file("bad.csv"), "a,b,class\n1,2,x\n1,x\n");
    CHECK_THROWS_WITH_AS(load_csv(tmp.file("bad.csv"), "class"), doctest::Contains("RaggedRow"),
                         Error);
  }
  SUBCASE("missing label column") {
    testutil::write_text(tmp.file("bad.csv"), "a,b,c\n1,2,3\n");
    CHECK_THROWS_WITH_AS(load_csv(tmp.file("bad.csv"), "label"),
                         doctest::Contains("MissingLabelColumn"), Error);
  }
  SUBCASE("empty field is unparseable") {
    testutil::write_text(tmp.file("bad.csv"), "a,b,class\n1,,x\n");
    CHECK_THROWS_WITH_AS(load_csv(tmp.file("bad.csv"), "class"),
                         doctest::Contains("UnparseableValue"), Error);
  }
  SUBCASE("override to continuous on text column") {
    testutil::write_text(tmp.file("bad.csv"), "a,b,class\n1,low,x\n");
    KindOverrides kinds{{"b", FeatureKind::continuous}};
    CHECK_THROWS_WITH_AS(load_csv(tmp.file("bad.csv"), "class", kinds),
                         doctest::Contains("row 2"), Error);
  }
}

TEST_CASE("ordinal encoding decodes back to the category") {
  const Dataset ds = load_csv(testutil::data_path("car.csv"), "class");
  for (Index f = 0; f < ds.feature_count(); ++f) {
    const auto& enc = ds.encodings[static_cast<std::size_t>(f)];
    std::set<int> codes;
    for (const auto& [cat, code] : enc) {
      CHECK(codes.insert(code).second);  // bijection
      CHECK(decode_category(ds, f, code) == cat);
    }
  }
}

TEST_CASE("round_half_to_even") {
  CHECK(round_half_to_even(0.5) == 0);
  CHECK(round_half_to_even(1.5) == 2);
  CHECK(round_half_to_even(2.5) == 2);
  CHECK(round_half_to_even(3.5) == 4);
  CHECK(round_half_to_even(0.6) == 1);
  CHECK(round_half_to_even(35.6) == 36);
}

namespace {

Dataset tiny_dataset(Index n) {
  Dataset ds;
  ds.schema.feature_names = {"x"};
  ds.schema.feature_kinds = {FeatureKind::continuous};
  ds.schema.label_name = "class";
  ds.rows.resize(n, 1);
  for (Index i = 0; i < n; ++i) ds.rows(i, 0) = static_cast<Real>(i);
  ds.labels.assign(static_cast<std::size_t>(n), "a");
  ds.encodings.resize(1);
  return ds;
}

}  // namespace

TEST_CASE("make_folds: sizes, determinism, partition") {
  const Dataset ds = tiny_dataset(10);
  const auto plans = make_folds(ds, 10, 0.2, 42);
  REQUIRE(plans.size() == 10);
  for (const auto& plan : plans) {
    CHECK(plan.test_indices.size() == 2);
    CHECK(plan.train_indices.size() == 8);
    IndexList all = plan.train_indices;
    all.insert(all.end(), plan.test_indices.begin(), plan.test_indices.end());
    std::sort(all.begin(), all.end());
    IndexList expect(10);
    std::iota(expect.begin(), expect.end(), 0);
    CHECK(all == expect);
  }
  const auto again = make_folds(ds, 10, 0.2, 42);
  for (std::size_t f = 0; f < plans.size(); ++f) {
    CHECK(plans[f].test_indices == again[f].test_indices);
    CHECK(plans[f].train_indices == again[f].train_indices);
    CHECK(plans[f].seed == again[f].seed);
  }
  // folds are independent resamples, so at least two of ten must differ
  bool any_difference = false;
  for (std::size_t f = 1; f < plans.size(); ++f)
    if (plans[f].test_indices != plans[0].test_indices) any_difference = true;
  CHECK(any_difference);
}

TEST_CASE("make_folds: rounding and degenerate splits") {
  CHECK(make_folds(tiny_dataset(3), 1, 0.2, 7)[0].test_indices.size() == 1);  // round(0.6) = 1
  CHECK_THROWS_WITH_AS(make_folds(tiny_dataset(3), 1, 0.01, 7),
                       doctest::Contains("DegenerateSplit"), Error);
  CHECK_THROWS_WITH_AS(make_folds(tiny_dataset(3), 1, 0.99, 7),
                       doctest::Contains("DegenerateSplit"), Error);
  CHECK_THROWS_AS(make_folds(tiny_dataset(1), 1, 0.5, 7), Error);
}

TEST_CASE("make_folds: partition property on random shapes") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 25; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.next_below(200));
    const Dataset ds = tiny_dataset(n);
    const double fraction = 0.1 + 0.8 * rng.next_double();
    const long long want = round_half_to_even(fraction * static_cast<double>(n));
    if (want <= 0 || want >= n) continue;
    const auto plans = make_folds(ds, 3, fraction, rng.next());
    for (const auto& plan : plans) {
      CHECK(static_cast<long long>(plan.test_indices.size()) == want);
      std::set<Index> train(plan.train_indices.begin(), plan.train_indices.end());
      for (const Index i : plan.test_indices) CHECK(train.count(i) == 0);
      CHECK(train.size() + plan.test_indices.size() == static_cast<std::size_t>(n));
    }
  }
}

TEST_CASE("sub_seed separates counters") {
  CHECK(sub_seed(42, 0) != sub_seed(42, 1));
  CHECK(sub_seed(42, 0) != sub_seed(43, 0));
  CHECK(sub_seed(42, 5) == sub_seed(42, 5));
}
