#include "ccov/metric_learning.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "ccov/error.hpp"

namespace ccov {

namespace {

constexpr Real kArmijo = 1e-4;
constexpr Real kMinStep = 1e-15;

// Squared latent distances from row i to every row: ||z_i||^2 + ||z_k||^2 - 2 z_i.z_k.
void latent_distance_row(const Matrix& Z, const Vector& sq_norms, Index i, Vector& out) {
  out.noalias() = Z * Z.row(i).transpose();
  out = (sq_norms.array() + sq_norms(i) - 2.0 * out.array()).max(0.0);
}

// Accumulates S(W) = sum_{i,k} W(i,k) (x_i - x_k)(x_i - x_k)^T without ever
// materializing W:  S = X^T diag(r + c) X - X^T Sw - Sw^T X, where r and c are
// W's row and column sums and Sw's i-th row is W(i,:) X. `fill_row` must write
// row i of W into its vector argument (diagonal ignored, must be zero).
Matrix weighted_pair_scatter(const Matrix& X,
                             const std::function<void(Index, Vector&)>& fill_row) {
  const Index n = X.rows();
  const Index d = X.cols();
  Vector row_sums = Vector::Zero(n);
  Vector col_sums = Vector::Zero(n);
  Matrix sw = Matrix::Zero(n, d);
  Vector w(n);
  for (Index i = 0; i < n; ++i) {
    fill_row(i, w);
    row_sums(i) = w.sum();
    col_sums += w;
    sw.row(i).noalias() = w.transpose() * X;
  }
  Matrix scatter = X.transpose() * ((row_sums + col_sums).asDiagonal() * X - sw);
  scatter.noalias() -= sw.transpose() * X;
  return scatter;
}

void check_rows_labels(const Matrix& X, std::size_t n_labels) {
  if (X.rows() < 2) raise(Errc::invalid_argument, "need at least 2 rows");
  if (static_cast<std::size_t>(X.rows()) != n_labels)
    raise(Errc::length_mismatch, "rows/labels mismatch");
}

// Per-row softmax over negated squared distances, excluding self. The row
// maximum is subtracted first, so the normalizer cannot underflow for finite
// inputs. Returns false when the row has no finite mass (non-finite inputs);
// callers then report a NaN evaluation, which the line search rejects.
bool softmax_row(const Vector& d2, Index i, Vector& probs) {
  const Index n = d2.size();
  Real max_logit = -std::numeric_limits<Real>::infinity();
  for (Index k = 0; k < n; ++k)
    if (k != i) max_logit = std::max(max_logit, -d2(k));
  Real denom = 0.0;
  for (Index k = 0; k < n; ++k) {
    const Real p = (k == i) ? 0.0 : std::exp(-d2(k) - max_logit);
    probs(k) = p;
    denom += p;
  }
  if (!(denom > 0.0) || !std::isfinite(denom)) return false;
  probs /= denom;
  return true;
}

constexpr Real kNaN = std::numeric_limits<Real>::quiet_NaN();

struct DescentResult {
  Matrix A;
  Real objective = 0.0;  // minimized value at A
  int iterations = 0;
  std::vector<Real> trace;  // accepted objective values, starting point first
};

// Full-batch gradient descent from the identity with backtracking (Armijo)
// line search. Accepted objective values decrease monotonically.
DescentResult minimize(Index d, const std::function<Real(const Matrix&)>& objective,
                       const std::function<Matrix(const Matrix&)>& gradient,
                       const OptimizerConfig& cfg) {
  if (cfg.max_iterations < 1 || !(cfg.initial_step > 0.0) || cfg.objective_tolerance < 0.0)
    raise(Errc::invalid_argument, "bad optimizer configuration");

  DescentResult res;
  res.A = Matrix::Identity(d, d);
  res.objective = objective(res.A);
  if (!std::isfinite(res.objective))
    raise(Errc::non_finite_objective, "objective is not finite at the identity");
  res.trace.push_back(res.objective);

  Real step = cfg.initial_step;
  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    const Matrix grad = gradient(res.A);
    if (!grad.allFinite()) raise(Errc::non_finite_objective, "gradient is not finite");
    const Real grad_sq = grad.squaredNorm();
    if (grad_sq == 0.0) break;  // stationary point

    // Steps must clear both the Armijo bound and the floating-point noise
    // floor; an objective already at rounding scale (e.g. an exactly-zero
    // loss) is treated as converged instead of chasing 1e-30 improvements.
    const Real noise_floor = 1e-15 * (1.0 + std::abs(res.objective));
    bool accepted = false;
    Matrix trial;
    Real trial_value = 0.0;
    while (step >= kMinStep) {
      trial = res.A - step * grad;
      trial_value = objective(trial);
      if (std::isfinite(trial_value) &&
          trial_value <= res.objective - kArmijo * step * grad_sq &&
          res.objective - trial_value > noise_floor) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    const Real improvement = res.objective - trial_value;
    res.A = std::move(trial);
    res.objective = trial_value;
    res.iterations = iter;
    res.trace.push_back(trial_value);
    step *= 2.0;
    if (improvement < cfg.objective_tolerance) break;
  }
  return res;
}

// Shared fit scaffolding: normalize by the median pairwise distance, run the
// descent, fold the scale back into the matrix. The recorded objective is the
// solver's own (normalized-space) value.
LinearMap finish_fit(MetricMethod method, std::uint64_t seed, Real scale, Real objective_sign,
                     const DescentResult& res) {
  LinearMap map;
  map.method = method;
  map.seed = seed;
  map.final_objective = objective_sign * res.objective;
  map.iterations_run = res.iterations;
  map.objective_trace.reserve(res.trace.size());
  for (const Real v : res.trace) map.objective_trace.push_back(objective_sign * v);
  map.matrix = res.iterations == 0 ? Matrix::Identity(res.A.rows(), res.A.cols())
                                   : Matrix(res.A / scale);
  return map;
}

}  // namespace

Real median_pairwise_distance(const Matrix& X) {
  const Index n = X.rows();
  if (n < 2) return 1.0;
  std::vector<Real> dists;
  dists.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) dists.push_back((X.row(i) - X.row(j)).norm());
  const auto mid = dists.begin() + static_cast<std::ptrdiff_t>(dists.size() / 2);
  std::nth_element(dists.begin(), mid, dists.end());
  return *mid;
}

// ---- NCA -------------------------------------------------------------------

Real nca_objective(const Matrix& X, const std::vector<int>& y, const Matrix& A) {
  check_rows_labels(X, y.size());
  const Index n = X.rows();
  const Matrix Z = X * A.transpose();
  const Vector sq_norms = Z.rowwise().squaredNorm();
  Vector d2(n), probs(n);
  Real objective = 0.0;
  for (Index i = 0; i < n; ++i) {
    latent_distance_row(Z, sq_norms, i, d2);
    if (!softmax_row(d2, i, probs)) return kNaN;
    Real same = 0.0;
    for (Index k = 0; k < n; ++k)
      if (k != i && y[static_cast<std::size_t>(k)] == y[static_cast<std::size_t>(i)])
        same += probs(k);
    objective += same;
  }
  return objective;
}

Matrix nca_gradient(const Matrix& X, const std::vector<int>& y, const Matrix& A) {
  check_rows_labels(X, y.size());
  const Index n = X.rows();
  const Matrix Z = X * A.transpose();
  const Vector sq_norms = Z.rowwise().squaredNorm();
  Vector d2(n), probs(n);
  const Matrix scatter = weighted_pair_scatter(X, [&](Index i, Vector& w) {
    latent_distance_row(Z, sq_norms, i, d2);
    if (!softmax_row(d2, i, probs)) { w.setConstant(kNaN); return; }
    Real p_same = 0.0;
    for (Index k = 0; k < n; ++k)
      if (k != i && y[static_cast<std::size_t>(k)] == y[static_cast<std::size_t>(i)])
        p_same += probs(k);
    for (Index k = 0; k < n; ++k) {
      const bool same = k != i && y[static_cast<std::size_t>(k)] == y[static_cast<std::size_t>(i)];
      w(k) = p_same * probs(k) - (same ? probs(k) : 0.0);
    }
    w(i) = 0.0;
  });
  return 2.0 * A * scatter;
}

// ---- MLKR ------------------------------------------------------------------

Real mlkr_objective(const Matrix& X, const Vector& y, const Matrix& A) {
  check_rows_labels(X, static_cast<std::size_t>(y.size()));
  const Index n = X.rows();
  const Matrix Z = X * A.transpose();
  const Vector sq_norms = Z.rowwise().squaredNorm();
  Vector d2(n), probs(n);
  Real loss = 0.0;
  for (Index i = 0; i < n; ++i) {
    latent_distance_row(Z, sq_norms, i, d2);
    if (!softmax_row(d2, i, probs)) return kNaN;
    const Real predicted = probs.dot(y);
    const Real err = predicted - y(i);
    loss += err * err;
  }
  return loss;
}

Matrix mlkr_gradient(const Matrix& X, const Vector& y, const Matrix& A) {
  check_rows_labels(X, static_cast<std::size_t>(y.size()));
  const Index n = X.rows();
  const Matrix Z = X * A.transpose();
  const Vector sq_norms = Z.rowwise().squaredNorm();
  Vector d2(n), probs(n);
  const Matrix scatter = weighted_pair_scatter(X, [&](Index i, Vector& w) {
    latent_distance_row(Z, sq_norms, i, d2);
    if (!softmax_row(d2, i, probs)) { w.setConstant(kNaN); return; }
    const Real predicted = probs.dot(y);
    const Real err = predicted - y(i);
    w = err * (y.array() - predicted).matrix().cwiseProduct(probs);
    w(i) = 0.0;
  });
  return -4.0 * A * scatter;
}

// ---- LMNN ------------------------------------------------------------------

std::vector<std::vector<int>> lmnn_target_neighbors(const Matrix& X, const std::vector<int>& y,
                                                    int k_neighbors, bool clamp) {
  check_rows_labels(X, y.size());
  if (k_neighbors < 1) raise(Errc::invalid_argument, "k_neighbors must be >= 1");
  const Index n = X.rows();

  std::vector<std::vector<int>> by_class_members;
  {
    const int n_classes = *std::max_element(y.begin(), y.end()) + 1;
    by_class_members.resize(static_cast<std::size_t>(n_classes));
    for (Index i = 0; i < n; ++i)
      by_class_members[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])].push_back(
          static_cast<int>(i));
  }

  std::vector<std::vector<int>> targets(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const auto& members = by_class_members[static_cast<std::size_t>(y[static_cast<std::size_t>(i)])];
    const int avail = static_cast<int>(members.size()) - 1;
    int k = k_neighbors;
    if (avail < k) {
      if (!clamp)
        raise(Errc::class_too_small, "class " + std::to_string(y[static_cast<std::size_t>(i)]) +
                                         " has only " + std::to_string(avail + 1) + " members");
      k = avail;
    }
    if (k <= 0) continue;

    std::vector<std::pair<Real, int>> candidates;
    candidates.reserve(members.size());
    for (const int j : members) {
      if (j == static_cast<int>(i)) continue;
      candidates.emplace_back((X.row(i) - X.row(j)).squaredNorm(), j);
    }
    // ties broken by index for determinism
    std::sort(candidates.begin(), candidates.end());
    targets[static_cast<std::size_t>(i)].reserve(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c)
      targets[static_cast<std::size_t>(i)].push_back(candidates[static_cast<std::size_t>(c)].second);
  }
  return targets;
}

std::pair<Real, Real> lmnn_objective_parts(const Matrix& X, const std::vector<int>& y,
                                           const std::vector<std::vector<int>>& targets,
                                           const Matrix& A) {
  check_rows_labels(X, y.size());
  const Index n = X.rows();
  const Matrix Z = X * A.transpose();
  const Vector sq_norms = Z.rowwise().squaredNorm();
  Vector d2(n);
  Real pull = 0.0;
  Real push = 0.0;
  for (Index i = 0; i < n; ++i) {
    if (targets[static_cast<std::size_t>(i)].empty()) continue;
    latent_distance_row(Z, sq_norms, i, d2);
    for (const int j : targets[static_cast<std::size_t>(i)]) {
      pull += d2(j);
      const Real margin = 1.0 + d2(j);
      for (Index l = 0; l < n; ++l) {
        if (y[static_cast<std::size_t>(l)] == y[static_cast<std::size_t>(i)]) continue;
        if (d2(l) < margin) push += margin - d2(l);
      }
    }
  }
  return {pull, push};
}

Real lmnn_objective(const Matrix& X, const std::vector<int>& y,
                    const std::vector<std::vector<int>>& targets, Real mu, const Matrix& A) {
  const auto [pull, push] = lmnn_objective_parts(X, y, targets, A);
  return (1.0 - mu) * pull + mu * push;
}

Matrix lmnn_gradient(const Matrix& X, const std::vector<int>& y,
                     const std::vector<std::vector<int>>& targets, Real mu, const Matrix& A) {
  check_rows_labels(X, y.size());
  const Index n = X.rows();
  const Matrix Z = X * A.transpose();
  const Vector sq_norms = Z.rowwise().squaredNorm();
  Vector d2(n);
  const Matrix scatter = weighted_pair_scatter(X, [&](Index i, Vector& w) {
    w.setZero();
    if (targets[static_cast<std::size_t>(i)].empty()) return;
    latent_distance_row(Z, sq_norms, i, d2);
    for (const int j : targets[static_cast<std::size_t>(i)]) {
      w(j) += 1.0 - mu;
      const Real margin = 1.0 + d2(j);
      for (Index l = 0; l < n; ++l) {
        if (y[static_cast<std::size_t>(l)] == y[static_cast<std::size_t>(i)]) continue;
        if (d2(l) < margin) {
          w(j) += mu;
          w(l) -= mu;
        }
      }
    }
  });
  return 2.0 * A * scatter;
}

// ---- fitters ----------------------------------------------------------------

LinearMap fit_nca(const Matrix& X, const std::vector<int>& y, const OptimizerConfig& cfg,
                  std::uint64_t seed) {
  check_rows_labels(X, y.size());
  const Index d = X.cols();
  const bool single_class = std::all_of(y.begin(), y.end(), [&](int c) { return c == y[0]; });
  if (single_class) {
    // Softmax rows always sum to 1, so the objective is N everywhere and the
    // gradient vanishes identically.
    LinearMap map;
    map.method = MetricMethod::NCA;
    map.seed = seed;
    map.matrix = Matrix::Identity(d, d);
    map.final_objective = static_cast<Real>(X.rows());
    map.iterations_run = 0;
    map.objective_trace = {map.final_objective};
    return map;
  }

  Real scale = median_pairwise_distance(X);
  if (!(scale > 0.0)) scale = 1.0;
  const Matrix Xs = X / scale;
  const auto res = minimize(
      d, [&](const Matrix& A) { return -nca_objective(Xs, y, A); },
      [&](const Matrix& A) { return Matrix(-nca_gradient(Xs, y, A)); }, cfg);
  return finish_fit(MetricMethod::NCA, seed, scale, -1.0, res);
}

LinearMap fit_mlkr(const Matrix& X, const Vector& y, const OptimizerConfig& cfg,
                   std::uint64_t seed) {
  check_rows_labels(X, static_cast<std::size_t>(y.size()));
  Real scale = median_pairwise_distance(X);
  if (!(scale > 0.0)) scale = 1.0;
  const Matrix Xs = X / scale;
  const auto res = minimize(
      X.cols(), [&](const Matrix& A) { return mlkr_objective(Xs, y, A); },
      [&](const Matrix& A) { return mlkr_gradient(Xs, y, A); }, cfg);
  return finish_fit(MetricMethod::MLKR, seed, scale, 1.0, res);
}

LinearMap fit_lmnn(const Matrix& X, const std::vector<int>& y, const LmnnOptions& options,
                   const OptimizerConfig& cfg, std::uint64_t seed) {
  check_rows_labels(X, y.size());
  if (!(options.mu >= 0.0 && options.mu <= 1.0))
    raise(Errc::invalid_argument, "mu must lie in [0, 1]");
  Real scale = median_pairwise_distance(X);
  if (!(scale > 0.0)) scale = 1.0;
  const Matrix Xs = X / scale;
  // Neighbor ranking is scale-invariant, so picking them on Xs equals picking
  // them in the input space.
  const auto targets = lmnn_target_neighbors(Xs, y, options.k_neighbors, options.clamp_neighbors);
  const auto res = minimize(
      X.cols(), [&](const Matrix& A) { return lmnn_objective(Xs, y, targets, options.mu, A); },
      [&](const Matrix& A) { return lmnn_gradient(Xs, y, targets, options.mu, A); }, cfg);
  return finish_fit(MetricMethod::LMNN, seed, scale, 1.0, res);
}

Matrix transform(const LinearMap& map, const Matrix& X) {
  if (X.cols() != map.matrix.cols())
    raise(Errc::dimension_mismatch, "input has " + std::to_string(X.cols()) +
                                        " columns, map expects " +
                                        std::to_string(map.matrix.cols()));
  return X * map.matrix.transpose();
}

// ---- serialization -----------------------------------------------------------

namespace {
const char* method_name(MetricMethod m) {
  switch (m) {
    case MetricMethod::NCA: return "NCA";
    case MetricMethod::MLKR: return "MLKR";
    case MetricMethod::LMNN: return "LMNN";
  }
  return "NCA";
}
}  // namespace

std::string to_json(const LinearMap& map) {
  nlohmann::ordered_json j;
  j["method"] = method_name(map.method);
  j["seed"] = map.seed;
  j["d"] = map.matrix.rows();
  std::vector<Real> flat;
  flat.reserve(static_cast<std::size_t>(map.matrix.size()));
  for (Index r = 0; r < map.matrix.rows(); ++r)
    for (Index c = 0; c < map.matrix.cols(); ++c) flat.push_back(map.matrix(r, c));
  j["matrix"] = flat;
  j["final_objective"] = map.final_objective;
  j["iterations_run"] = map.iterations_run;
  j["objective_trace_length"] = map.objective_trace.size();
  return j.dump(2);
}

LinearMap linear_map_from_json(const std::string& text) {
  LinearMap map;
  try {
    const auto j = nlohmann::json::parse(text);
    const std::string name = j.at("method").get<std::string>();
    if (name == "NCA") map.method = MetricMethod::NCA;
    else if (name == "MLKR") map.method = MetricMethod::MLKR;
    else if (name == "LMNN") map.method = MetricMethod::LMNN;
    else raise(Errc::config_error, "unknown metric method '" + name + "'");
    map.seed = j.at("seed").get<std::uint64_t>();
    const auto d = j.at("d").get<Index>();
    const auto flat = j.at("matrix").get<std::vector<Real>>();
    if (static_cast<Index>(flat.size()) != d * d)
      raise(Errc::config_error, "matrix size does not match d");
    map.matrix.resize(d, d);
    for (Index r = 0; r < d; ++r)
      for (Index c = 0; c < d; ++c) map.matrix(r, c) = flat[static_cast<std::size_t>(r * d + c)];
    map.final_objective = j.at("final_objective").get<Real>();
    map.iterations_run = j.at("iterations_run").get<int>();
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::config_error, std::string("bad linear map JSON: ") + e.what());
  }
  return map;
}

}  // namespace ccov
