#include <doctest.h>

#include <set>
#include <vector>

#include "ccov/classifiers.hpp"
#include "ccov/dataset.hpp"
#include "ccov/error.hpp"
#include "ccov/rng.hpp"
#include "test_helpers.hpp"

using namespace ccov;

namespace {

Matrix blob(SplitMix64& rng, Index n, Real cx, Real cy) {
  Matrix X(n, 2);
  for (Index i = 0; i < n; ++i) {
    X(i, 0) = cx + rng.next_gaussian();
    X(i, 1) = cy + rng.next_gaussian();
  }
  return X;
}

Real fold_mean_accuracy(const Dataset& ds, ClassifierKind kind) {
  const auto plans = make_folds(ds, 10, 0.2, 42);
  Real total = 0.0;
  for (const auto& plan : plans) {
    Matrix x_train(static_cast<Index>(plan.train_indices.size()), ds.feature_count());
    Matrix x_test(static_cast<Index>(plan.test_indices.size()), ds.feature_count());
    std::vector<std::string> y_train, y_test;
    for (std::size_t i = 0; i < plan.train_indices.size(); ++i) {
      x_train.row(static_cast<Index>(i)) = ds.rows.row(plan.train_indices[i]);
      y_train.push_back(ds.labels[static_cast<std::size_t>(plan.train_indices[i])]);
    }
    for (std::size_t i = 0; i < plan.test_indices.size(); ++i) {
      x_test.row(static_cast<Index>(i)) = ds.rows.row(plan.test_indices[i]);
      y_test.push_back(ds.labels[static_cast<std::size_t>(plan.test_indices[i])]);
    }
    const Model model = train(kind, x_train, y_train);
    const auto [correct, incorrect] = partition_by_correctness(model, x_test, y_test);
    total += static_cast<Real>(correct.size()) / static_cast<Real>(y_test.size());
  }
  return total / static_cast<Real>(plans.size());
}

}  // namespace

TEST_CASE("decision tree: depth-2 tree solves XOR exactly") {
  Matrix X(4, 2);
  X << 0, 0, 0, 1, 1, 0, 1, 1;
  const std::vector<std::string> y{"a", "b", "b", "a"};
  const Model model = train(ClassifierKind::DecisionTree, X, y);
  CHECK(predict(model, X) == y);
  const auto& dt = std::get<DtModel>(model.impl);
  int leaves = 0;
  for (const auto& node : dt.nodes)
    if (node.feature < 0) ++leaves;
  CHECK(leaves <= 4);  // 2^max_depth
}

TEST_CASE("decision tree: single class collapses to one leaf") {
  Matrix X(3, 2);
  X << 0, 1, 2, 3, 4, 5;
  const Model model = train(ClassifierKind::DecisionTree, X, {"only", "only", "only"});
  const auto& dt = std::get<DtModel>(model.impl);
  CHECK(dt.nodes.size() == 1);
  CHECK(predict(model, X) == std::vector<std::string>{"only", "only", "only"});
}

TEST_CASE("decision tree: leaf ties pick the lexicographically smallest label") {
  Matrix X(2, 1);
  X << 1, 1;  // unsplittable
  const Model model = train(ClassifierKind::DecisionTree, X, {"zeta", "alpha"});
  CHECK(predict(model, X)[0] == "alpha");
}

TEST_CASE("gini_impurity") {
  CHECK(gini_impurity({5, 0, 0}) == doctest::Approx(0.0));
  CHECK(gini_impurity({1, 1}) == doctest::Approx(0.5));
  CHECK(gini_impurity({}) == doctest::Approx(0.0));
}

TEST_CASE("knn: k=1 reproduces training labels on distinct points") {
  SplitMix64 rng(3);
  const Matrix X = blob(rng, 20, 0, 0);
  std::vector<std::string> y;
  for (Index i = 0; i < 20; ++i) y.push_back(i % 2 ? "odd" : "even");
  TrainOptions opt;
  opt.knn_k = 1;
  const Model model = train(ClassifierKind::Knn, X, y, opt);
  CHECK(predict(model, X) == y);
}

TEST_CASE("knn: majority vote with 3 vs 2 in range") {
  Matrix X(6, 1);
  X << 0.9, 1.0, 1.1, -0.9, -1.1, 50.0;
  const std::vector<std::string> y{"a", "a", "a", "b", "b", "b"};
  const Model model = train(ClassifierKind::Knn, X, y);  // k = 5
  Matrix q(1, 1);
  q << 0.0;
  CHECK(predict(model, q)[0] == "a");
}

TEST_CASE("svm: separates two points and two blobs") {
  Matrix two(2, 2);
  two << -1, 0, 1, 0;
  const Model tiny = train(ClassifierKind::Svm, two, {"a", "b"});
  CHECK(predict(tiny, two) == std::vector<std::string>{"a", "b"});

  SplitMix64 rng(17);
  Matrix X(40, 2);
  X.topRows(20) = blob(rng, 20, 0, 0);
  X.bottomRows(20) = blob(rng, 20, 8, 8);
  std::vector<std::string> y(20, "near");
  y.insert(y.end(), 20, "far");
  const Model model = train(ClassifierKind::Svm, X, y);
  const auto [correct, incorrect] = partition_by_correctness(model, X, y);
  CHECK(incorrect.empty());
}

TEST_CASE("svm: one-vs-rest handles three classes") {
  SplitMix64 rng(23);
  Matrix X(60, 2);
  X.topRows(20) = blob(rng, 20, 0, 0);
  X.middleRows(20, 20) = blob(rng, 20, 10, 0);
  X.bottomRows(20) = blob(rng, 20, 0, 10);
  std::vector<std::string> y(20, "a");
  y.insert(y.end(), 20, "b");
  y.insert(y.end(), 20, "c");
  const Model model = train(ClassifierKind::Svm, X, y);
  const auto [correct, incorrect] = partition_by_correctness(model, X, y);
  CHECK(static_cast<Real>(correct.size()) / 60.0 > 0.95);
}

TEST_CASE("svm: single class is refused") {
  Matrix X(2, 1);
  X << 0, 1;
  CHECK_THROWS_WITH_AS(train(ClassifierKind::Svm, X, {"a", "a"}),
                       doctest::Contains("SingleClassSVM"), Error);
}

TEST_CASE("train/predict: argument errors") {
  Matrix empty(0, 2);
  CHECK_THROWS_WITH_AS(train(ClassifierKind::DecisionTree, empty, {}),
                       doctest::Contains("EmptyTrainingSet"), Error);
  Matrix X(2, 2);
  X << 0, 0, 1, 1;
  const Model model = train(ClassifierKind::DecisionTree, X, {"a", "b"});
  Matrix wrong(1, 3);
  wrong << 0, 0, 0;
  CHECK_THROWS_WITH_AS(predict(model, wrong), doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("partition_by_correctness: exhaustive disjoint partition") {
  SplitMix64 rng(5);
  const Matrix X = blob(rng, 30, 0, 0);
  std::vector<std::string> y;
  for (Index i = 0; i < 30; ++i) y.push_back(i % 3 == 0 ? "a" : "b");
  const Model model = train(ClassifierKind::Knn, X, y);
  const auto [correct, incorrect] = partition_by_correctness(model, X, y);
  std::set<Index> seen;
  for (const Index i : correct) seen.insert(i);
  for (const Index i : incorrect) seen.insert(i);
  CHECK(seen.size() == 30);
  CHECK(correct.size() + incorrect.size() == 30);
  CHECK_THROWS_WITH_AS(partition_by_correctness(model, X, {"a"}),
                       doctest::Contains("LengthMismatch"), Error);
}

TEST_CASE("prediction is deterministic") {
  SplitMix64 rng(29);
  Matrix X(30, 3);
  for (Index i = 0; i < X.size(); ++i) X(i / 3, i % 3) = rng.next_gaussian();
  std::vector<std::string> y;
  for (Index i = 0; i < 30; ++i) y.push_back(i % 2 ? "p" : "q");
  for (const ClassifierKind kind :
       {ClassifierKind::DecisionTree, ClassifierKind::Knn, ClassifierKind::Svm}) {
    const Model m1 = train(kind, X, y);
    const Model m2 = train(kind, X, y);
    CHECK(predict(m1, X) == predict(m2, X));
  }
}

TEST_CASE("fold accuracy floors on the bundled datasets") {
  const Dataset wine = load_csv(testutil::data_path("wine.csv"), "class");
  CHECK(fold_mean_accuracy(wine, ClassifierKind::DecisionTree) >= 0.70);
  const Dataset cancer = load_csv(testutil::data_path("cancer.csv"), "class");
  CHECK(fold_mean_accuracy(cancer, ClassifierKind::DecisionTree) >= 0.80);
  const Dataset rice = load_csv(testutil::data_path("rice.csv"), "class");
  CHECK(fold_mean_accuracy(rice, ClassifierKind::DecisionTree) >= 0.80);
}
