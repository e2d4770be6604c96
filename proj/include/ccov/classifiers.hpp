#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ccov/types.hpp"

namespace ccov {

enum class ClassifierKind { DecisionTree, Knn, Svm };

struct TrainOptions {
  int dt_max_depth = 2;
  int knn_k = 5;
  Real svm_c = 1.0;
  Real svm_tol = 1e-3;
};

/// Binary tree stored as a node array; node 0 is the root. Leaves have
/// feature == -1 and carry the majority class index.
struct DtNode {
  int feature = -1;
  Real threshold = 0.0;
  int left = -1;
  int right = -1;
  int leaf_class = -1;
};

struct DtModel {
  std::vector<DtNode> nodes;
  int max_depth = 0;
};

struct KnnModel {
  Matrix train_rows;
  std::vector<int> train_classes;
  int k = 5;
};

/// One-vs-rest RBF machines sharing the stored training rows; machine c
/// scores class c with sum_i alpha_i y_i K(x_i, x) + bias.
struct SvmModel {
  Matrix train_rows;
  Matrix alpha_y;  // N x n_classes, alpha_i * y_i per machine
  Vector bias;     // per machine
  Real gamma = 1.0;
};

struct Model {
  ClassifierKind kind = ClassifierKind::DecisionTree;
  std::vector<std::string> classes;  // sorted; index = class id
  Index trained_features = 0;
  std::variant<DtModel, KnnModel, SvmModel> impl;
};

/// Trains the requested classifier. DT: greedy binary CART on Gini impurity,
/// depth-capped. KNN: stores the data, Euclidean majority vote. SVM: RBF
/// kernel with gamma = 1/(d * Var(X)), C and tolerance from options, solved
/// one-vs-rest by sequential minimal optimization. All tie-breaks (equal-gain
/// splits, vote ties, leaf ties, score ties) resolve to the lexicographically
/// smallest candidate.
Model train(ClassifierKind kind, const Matrix& X, const std::vector<std::string>& y,
            const TrainOptions& options = {});

std::vector<std::string> predict(const Model& model, const Matrix& X);

/// Splits 0..M-1 into (correct, incorrect) prediction indices.
std::pair<IndexList, IndexList> partition_by_correctness(const Model& model, const Matrix& X,
                                                         const std::vector<std::string>& y);

/// Gini impurity of a class-count histogram.
Real gini_impurity(const std::vector<long long>& counts);

}  // namespace ccov
