#include "ccov/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ccov/dataset.hpp"
#include "ccov/error.hpp"

namespace ccov {

namespace {

int majority_class(const std::vector<long long>& counts) {
  int best = 0;
  for (std::size_t c = 1; c < counts.size(); ++c)
    if (counts[c] > counts[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
  return best;  // first max wins: lexicographically smallest label
}

// ---- decision tree ----------------------------------------------------------

struct DtBuilder {
  const Matrix& X;
  const std::vector<int>& y;
  int n_classes;
  int max_depth;
  std::vector<DtNode> nodes;

  int build(std::vector<Index>& rows, int depth) {
    std::vector<long long> counts(static_cast<std::size_t>(n_classes), 0);
    for (const Index r : rows) ++counts[static_cast<std::size_t>(y[static_cast<std::size_t>(r)])];
    const bool pure = std::count_if(counts.begin(), counts.end(),
                                    [](long long c) { return c > 0; }) <= 1;

    DtNode node;
    if (pure || depth >= max_depth || rows.size() < 2) {
      node.leaf_class = majority_class(counts);
      nodes.push_back(node);
      return static_cast<int>(nodes.size()) - 1;
    }

    // Best (feature, threshold) by weighted Gini over midpoints of sorted
    // distinct values. Scanning features ascending and thresholds ascending
    // with a strict < makes ties resolve to the lowest feature, then the
    // lowest threshold.
    const long long n = static_cast<long long>(rows.size());
    Real best_score = std::numeric_limits<Real>::infinity();
    int best_feature = -1;
    Real best_threshold = 0.0;
    std::vector<std::pair<Real, int>> column(rows.size());
    std::vector<long long> left(static_cast<std::size_t>(n_classes));
    for (Index f = 0; f < X.cols(); ++f) {
      for (std::size_t i = 0; i < rows.size(); ++i)
        column[i] = {X(rows[i], f), y[static_cast<std::size_t>(rows[i])]};
      std::sort(column.begin(), column.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::fill(left.begin(), left.end(), 0);
      long long n_left = 0;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        ++left[static_cast<std::size_t>(column[i].second)];
        ++n_left;
        if (column[i].first == column[i + 1].first) continue;
        const long long n_right = n - n_left;
        // impurity sums scaled by side size: sum_side n_side * (1 - sum p^2)
        Real score = 0.0;
        for (std::size_t c = 0; c < left.size(); ++c) {
          const Real nl = static_cast<Real>(left[c]);
          const Real nr = static_cast<Real>(counts[c] - left[c]);
          score -= nl * nl / static_cast<Real>(n_left) + nr * nr / static_cast<Real>(n_right);
        }
        score += static_cast<Real>(n);
        if (score < best_score) {
          best_score = score;
          best_feature = static_cast<int>(f);
          best_threshold = column[i].first + (column[i + 1].first - column[i].first) / 2.0;
        }
      }
    }

    if (best_feature < 0) {  // every feature constant on this node
      node.leaf_class = majority_class(counts);
      nodes.push_back(node);
      return static_cast<int>(nodes.size()) - 1;
    }

    std::vector<Index> left_rows, right_rows;
    for (const Index r : rows) {
      if (X(r, best_feature) <= best_threshold)
        left_rows.push_back(r);
      else
        right_rows.push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    node.feature = best_feature;
    node.threshold = best_threshold;
    nodes.push_back(node);
    const int id = static_cast<int>(nodes.size()) - 1;
    const int left_id = build(left_rows, depth + 1);
    const int right_id = build(right_rows, depth + 1);
    nodes[static_cast<std::size_t>(id)].left = left_id;
    nodes[static_cast<std::size_t>(id)].right = right_id;
    return id;
  }
};

int dt_predict_row(const DtModel& dt, const Matrix& X, Index r) {
  int id = 0;
  while (dt.nodes[static_cast<std::size_t>(id)].feature >= 0) {
    const DtNode& node = dt.nodes[static_cast<std::size_t>(id)];
    id = X(r, node.feature) <= node.threshold ? node.left : node.right;
  }
  return dt.nodes[static_cast<std::size_t>(id)].leaf_class;
}

// ---- KNN ---------------------------------------------------------------------

int knn_predict_row(const KnnModel& knn, int n_classes, const Matrix& X, Index r) {
  const Index n = knn.train_rows.rows();
  std::vector<std::pair<Real, Index>> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    order[static_cast<std::size_t>(i)] = {(knn.train_rows.row(i) - X.row(r)).squaredNorm(), i};
  const auto k = static_cast<std::size_t>(std::min<Index>(knn.k, n));
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
  std::vector<long long> votes(static_cast<std::size_t>(n_classes), 0);
  for (std::size_t i = 0; i < k; ++i)
    ++votes[static_cast<std::size_t>(
        knn.train_classes[static_cast<std::size_t>(order[i].second)])];
  return majority_class(votes);
}

// ---- SVM (SMO) ----------------------------------------------------------------

struct SmoSolver {
  const Matrix& kernel;
  const std::vector<Real>& target;  // +1 / -1
  Real c_bound;
  Real tol;
  std::vector<Real> alpha;
  std::vector<Real> errors;  // f(x_i) - t_i
  Real bias = 0.0;

  SmoSolver(const Matrix& k, const std::vector<Real>& t, Real c, Real tolerance)
      : kernel(k), target(t), c_bound(c), tol(tolerance),
        alpha(t.size(), 0.0), errors(t.size()) {
    for (std::size_t i = 0; i < t.size(); ++i) errors[i] = -t[i];  // f == 0 initially
  }

  bool unbound(std::size_t i) const { return alpha[i] > 0.0 && alpha[i] < c_bound; }

  bool take_step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const Real a1 = alpha[i1], a2 = alpha[i2];
    const Real y1 = target[i1], y2 = target[i2];
    const Real e1 = errors[i1], e2 = errors[i2];
    const Real s = y1 * y2;
    Real lo, hi;
    if (y1 != y2) {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(c_bound, c_bound + a2 - a1);
    } else {
      lo = std::max(0.0, a1 + a2 - c_bound);
      hi = std::min(c_bound, a1 + a2);
    }
    if (lo >= hi) return false;

    const auto ii1 = static_cast<Index>(i1);
    const auto ii2 = static_cast<Index>(i2);
    const Real k11 = kernel(ii1, ii1), k22 = kernel(ii2, ii2), k12 = kernel(ii1, ii2);
    const Real eta = k11 + k22 - 2.0 * k12;
    if (eta <= 0.0) return false;  // coincident points; nothing to gain

    Real a2_new = a2 + y2 * (e1 - e2) / eta;
    a2_new = std::clamp(a2_new, lo, hi);
    if (std::abs(a2_new - a2) < 1e-12 * (a2_new + a2 + 1e-12)) return false;
    Real a1_new = a1 + s * (a2 - a2_new);
    if (a1_new < 0.0) a1_new = 0.0;
    if (a1_new > c_bound) a1_new = c_bound;

    const Real d1 = y1 * (a1_new - a1);
    const Real d2 = y2 * (a2_new - a2);
    const Real b1 = bias - e1 - d1 * k11 - d2 * k12;
    const Real b2 = bias - e2 - d1 * k12 - d2 * k22;
    Real b_new;
    if (a1_new > 0.0 && a1_new < c_bound) b_new = b1;
    else if (a2_new > 0.0 && a2_new < c_bound) b_new = b2;
    else b_new = (b1 + b2) / 2.0;
    const Real db = b_new - bias;

    const std::size_t n = alpha.size();
    for (std::size_t k = 0; k < n; ++k)
      errors[k] += d1 * kernel(ii1, static_cast<Index>(k)) +
                   d2 * kernel(ii2, static_cast<Index>(k)) + db;
    alpha[i1] = a1_new;
    alpha[i2] = a2_new;
    bias = b_new;
    return true;
  }

  bool examine(std::size_t i2) {
    const Real y2 = target[i2];
    const Real r2 = errors[i2] * y2;
    const bool violates = (r2 < -tol && alpha[i2] < c_bound) || (r2 > tol && alpha[i2] > 0.0);
    if (!violates) return false;
    const std::size_t n = alpha.size();

    // second-choice heuristic: the unbound point with the largest |E1 - E2|
    std::size_t best = n;
    Real best_gap = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!unbound(i)) continue;
      const Real gap = std::abs(errors[i] - errors[i2]);
      if (gap > best_gap) { best_gap = gap; best = i; }
    }
    if (best < n && take_step(best, i2)) return true;

    for (std::size_t off = 0; off < n; ++off) {
      const std::size_t i1 = (i2 + 1 + off) % n;
      if (unbound(i1) && take_step(i1, i2)) return true;
    }
    for (std::size_t off = 0; off < n; ++off) {
      const std::size_t i1 = (i2 + 1 + off) % n;
      if (!unbound(i1) && take_step(i1, i2)) return true;
    }
    return false;
  }

  void solve() {
    const std::size_t n = alpha.size();
    bool examine_all = true;
    std::size_t changed = 0;
    int epochs = 0;
    const int max_epochs = 1000;  // safety net; convergence comes far earlier
    while ((changed > 0 || examine_all) && epochs++ < max_epochs) {
      changed = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (examine_all || unbound(i))
          if (examine(i)) ++changed;
      }
      if (examine_all) examine_all = false;
      else if (changed == 0) examine_all = true;
    }
  }
};

Matrix rbf_kernel(const Matrix& X, Real gamma) {
  const Vector sq = X.rowwise().squaredNorm();
  Matrix k = -2.0 * (X * X.transpose());
  k.colwise() += sq;
  k.rowwise() += sq.transpose();
  return (-gamma * k.array().max(0.0)).exp();
}

}  // namespace

Real gini_impurity(const std::vector<long long>& counts) {
  long long n = 0;
  for (const long long c : counts) n += c;
  if (n == 0) return 0.0;
  Real sum_sq = 0.0;
  for (const long long c : counts) {
    const Real p = static_cast<Real>(c) / static_cast<Real>(n);
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

Model train(ClassifierKind kind, const Matrix& X, const std::vector<std::string>& y,
            const TrainOptions& options) {
  if (X.rows() == 0) raise(Errc::empty_training_set, "no training rows");
  if (static_cast<std::size_t>(X.rows()) != y.size())
    raise(Errc::length_mismatch, "rows/labels mismatch");

  Model model;
  model.kind = kind;
  model.classes = class_names(y);
  model.trained_features = X.cols();
  const std::vector<int> classes = encode_labels(y, model.classes);
  const int n_classes = static_cast<int>(model.classes.size());

  switch (kind) {
    case ClassifierKind::DecisionTree: {
      DtBuilder builder{X, classes, n_classes, options.dt_max_depth, {}};
      std::vector<Index> rows(static_cast<std::size_t>(X.rows()));
      std::iota(rows.begin(), rows.end(), 0);
      builder.build(rows, 0);
      model.impl = DtModel{std::move(builder.nodes), options.dt_max_depth};
      break;
    }
    case ClassifierKind::Knn: {
      model.impl = KnnModel{X, classes, options.knn_k};
      break;
    }
    case ClassifierKind::Svm: {
      if (n_classes < 2) raise(Errc::single_class_svm, "SVM needs at least 2 classes");
      const Real mean = X.mean();
      const Real var = (X.array() - mean).square().mean();
      const Real gamma = var > 0.0 ? 1.0 / (static_cast<Real>(X.cols()) * var)
                                   : 1.0 / static_cast<Real>(X.cols());
      const Matrix kernel = rbf_kernel(X, gamma);

      SvmModel svm;
      svm.train_rows = X;
      svm.gamma = gamma;
      svm.alpha_y.resize(X.rows(), n_classes);
      svm.bias.resize(n_classes);
      std::vector<Real> target(static_cast<std::size_t>(X.rows()));
      for (int c = 0; c < n_classes; ++c) {
        for (std::size_t i = 0; i < target.size(); ++i)
          target[i] = classes[i] == c ? 1.0 : -1.0;
        SmoSolver solver(kernel, target, options.svm_c, options.svm_tol);
        solver.solve();
        for (Index i = 0; i < X.rows(); ++i)
          svm.alpha_y(i, c) = solver.alpha[static_cast<std::size_t>(i)] *
                              target[static_cast<std::size_t>(i)];
        svm.bias(c) = solver.bias;
      }
      model.impl = std::move(svm);
      break;
    }
  }
  return model;
}

std::vector<std::string> predict(const Model& model, const Matrix& X) {
  if (X.cols() != model.trained_features)
    raise(Errc::dimension_mismatch, "input has " + std::to_string(X.cols()) +
                                        " features, model expects " +
                                        std::to_string(model.trained_features));
  const int n_classes = static_cast<int>(model.classes.size());
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(X.rows()));

  if (const auto* dt = std::get_if<DtModel>(&model.impl)) {
    for (Index r = 0; r < X.rows(); ++r)
      out.push_back(model.classes[static_cast<std::size_t>(dt_predict_row(*dt, X, r))]);
  } else if (const auto* knn = std::get_if<KnnModel>(&model.impl)) {
    for (Index r = 0; r < X.rows(); ++r)
      out.push_back(model.classes[static_cast<std::size_t>(knn_predict_row(*knn, n_classes, X, r))]);
  } else {
    const auto& svm = std::get<SvmModel>(model.impl);
    const Vector train_sq = svm.train_rows.rowwise().squaredNorm();
    Vector k_row(svm.train_rows.rows());
    for (Index r = 0; r < X.rows(); ++r) {
      const Real q_sq = X.row(r).squaredNorm();
      k_row.noalias() = svm.train_rows * X.row(r).transpose();
      k_row = (-svm.gamma * (train_sq.array() + q_sq - 2.0 * k_row.array()).max(0.0)).exp();
      int best = 0;
      Real best_score = -std::numeric_limits<Real>::infinity();
      for (int c = 0; c < n_classes; ++c) {
        const Real score = svm.alpha_y.col(c).dot(k_row) + svm.bias(c);
        if (score > best_score) { best_score = score; best = c; }
      }
      out.push_back(model.classes[static_cast<std::size_t>(best)]);
    }
  }
  return out;
}

std::pair<IndexList, IndexList> partition_by_correctness(const Model& model, const Matrix& X,
                                                         const std::vector<std::string>& y) {
  if (static_cast<std::size_t>(X.rows()) != y.size())
    raise(Errc::length_mismatch, "rows/labels mismatch");
  const std::vector<std::string> predicted = predict(model, X);
  std::pair<IndexList, IndexList> split;
  for (Index r = 0; r < X.rows(); ++r) {
    if (predicted[static_cast<std::size_t>(r)] == y[static_cast<std::size_t>(r)])
      split.first.push_back(r);
    else
      split.second.push_back(r);
  }
  return split;
}

}  // namespace ccov
