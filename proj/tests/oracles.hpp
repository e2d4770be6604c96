#pragma once

// Test-only reference implementations, deliberately independent of the
// library's code paths: string-keyed nested-loop coverage enumeration,
// split-enumeration 1-D clustering, and quadrature-based distributions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "ccov/types.hpp"

namespace oracle {

using ccov::Index;
using ccov::IntMatrix;
using ccov::Matrix;
using ccov::Real;

// ---- coverage ----------------------------------------------------------------

inline void subsets_rec(int d, int t, int start, std::vector<int>& cur,
                        const std::function<void(const std::vector<int>&)>& visit) {
  if (static_cast<int>(cur.size()) == t) {
    visit(cur);
    return;
  }
  for (int f = start; f <= d - (t - static_cast<int>(cur.size())); ++f) {
    cur.push_back(f);
    subsets_rec(d, t, f + 1, cur, visit);
    cur.pop_back();
  }
}

inline std::string combo_key(const std::vector<int>& factors, const std::vector<int>& values) {
  std::string key;
  for (const int f : factors) key += std::to_string(f) + ",";
  key += ":";
  for (const int v : values) key += std::to_string(v) + ",";
  return key;
}

// All t-way combinations of a row matrix as a sorted set of string keys.
inline std::set<std::string> tway_combos(const IntMatrix& rows, int t) {
  std::set<std::string> combos;
  std::vector<int> cur;
  subsets_rec(static_cast<int>(rows.cols()), t, 0, cur, [&](const std::vector<int>& factors) {
    std::vector<int> values(factors.size());
    for (Index r = 0; r < rows.rows(); ++r) {
      for (std::size_t i = 0; i < factors.size(); ++i) values[i] = rows(r, factors[i]);
      combos.insert(combo_key(factors, values));
    }
  });
  return combos;
}

inline long long sdcc_numerator(const IntMatrix& b, const IntMatrix& a, int t) {
  const auto bc = tway_combos(b, t);
  const auto ac = tway_combos(a, t);
  long long missing = 0;
  for (const auto& key : bc)
    if (!ac.count(key)) ++missing;
  return missing;
}

// Universe size: every value assignment over every factor subset.
inline long long universe_size(const std::vector<std::vector<int>>& alphabets, int t) {
  long long total = 0;
  std::vector<int> cur;
  subsets_rec(static_cast<int>(alphabets.size()), t, 0, cur, [&](const std::vector<int>& factors) {
    long long assignments = 1;
    for (const int f : factors)
      assignments *= static_cast<long long>(alphabets[static_cast<std::size_t>(f)].size());
    total += assignments;
  });
  return total;
}

// ---- 1-D clustering ------------------------------------------------------------

// Optimal within-cluster sum of squares over every split of the sorted
// distinct values into at most k contiguous groups (optimal 1-D clusters are
// contiguous), enumerated outright.
inline Real optimal_wcss_1d(std::vector<Real> values, int k) {
  std::sort(values.begin(), values.end());
  std::vector<Real> distinct;
  std::vector<int> counts;
  for (const Real v : values) {
    if (!distinct.empty() && v == distinct.back()) ++counts.back();
    else { distinct.push_back(v); counts.push_back(1); }
  }
  const int m = static_cast<int>(distinct.size());
  const int groups = std::min(k, m);

  auto group_cost = [&](int lo, int hi) {  // [lo, hi] inclusive over distinct ids
    Real weight = 0.0, mean = 0.0;
    for (int i = lo; i <= hi; ++i) {
      weight += counts[static_cast<std::size_t>(i)];
      mean += counts[static_cast<std::size_t>(i)] * distinct[static_cast<std::size_t>(i)];
    }
    mean /= weight;
    Real cost = 0.0;
    for (int i = lo; i <= hi; ++i)
      cost += counts[static_cast<std::size_t>(i)] *
              (distinct[static_cast<std::size_t>(i)] - mean) *
              (distinct[static_cast<std::size_t>(i)] - mean);
    return cost;
  };

  Real best = std::numeric_limits<Real>::infinity();
  // choose groups-1 split points among the m-1 gaps
  std::vector<int> splits;
  const std::function<void(int, int)> rec = [&](int start, int remaining) {
    if (remaining == 0) {
      Real cost = 0.0;
      int lo = 0;
      for (const int s : splits) { cost += group_cost(lo, s); lo = s + 1; }
      cost += group_cost(lo, m - 1);
      best = std::min(best, cost);
      return;
    }
    for (int s = start; s <= m - 1 - remaining; ++s) {
      splits.push_back(s);
      rec(s + 1, remaining - 1);
      splits.pop_back();
    }
  };
  rec(0, groups - 1);
  return best;
}

// ---- quadrature ------------------------------------------------------------------

// Adaptive Simpson on a smooth integrand.
inline Real adaptive_simpson(const std::function<Real(Real)>& f, Real a, Real b, Real fa, Real fb,
                             Real fm, Real whole, Real tol, int depth) {
  const Real m = (a + b) / 2.0;
  const Real lm = (a + m) / 2.0, rm = (m + b) / 2.0;
  const Real flm = f(lm), frm = f(rm);
  const Real left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const Real right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, fm, flm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, fb, frm, right, tol / 2.0, depth - 1);
}

inline Real integrate(const std::function<Real(Real)>& f, Real a, Real b, Real tol = 1e-12) {
  const Real fa = f(a), fb = f(b), fm = f((a + b) / 2.0);
  const Real whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fb, fm, whole, tol, 60);
}

// Two-sided Student-t p-value by integrating the density over [0, |t|].
inline Real t_test_p_value(Real t_statistic, int df) {
  const Real v = static_cast<Real>(df);
  const Real log_norm = std::lgamma((v + 1.0) / 2.0) - std::lgamma(v / 2.0) -
                        0.5 * std::log(v * 3.14159265358979323846);
  const auto density = [&](Real u) {
    return std::exp(log_norm - (v + 1.0) / 2.0 * std::log1p(u * u / v));
  };
  const Real inner = integrate(density, 0.0, std::abs(t_statistic));
  return std::max(0.0, 1.0 - 2.0 * inner);
}

// Tanh-sinh (double exponential) quadrature over (0, x); handles the endpoint
// singularities of the beta density for a, b < 1.
inline Real incomplete_beta_quadrature(Real x, Real a, Real b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const Real log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  // map (0, x) onto (-1, 1), then u = tanh(pi/2 sinh(s))
  const Real half = x / 2.0;
  const auto g = [&](Real u) {  // u in (-1, 1)
    const Real z = half * (u + 1.0);
    return std::exp(log_norm + (a - 1.0) * std::log(z) + (b - 1.0) * std::log1p(-z)) * half;
  };
  const Real h = 1.0 / 64.0;
  const int steps = 6 * 64;  // |s| <= 6
  Real total = 0.0;
  for (int i = -steps; i <= steps; ++i) {
    const Real s = h * static_cast<Real>(i);
    const Real pi_half_sinh = 1.5707963267948966 * std::sinh(s);
    const Real u = std::tanh(pi_half_sinh);
    const Real w = 1.5707963267948966 * std::cosh(s) /
                   (std::cosh(pi_half_sinh) * std::cosh(pi_half_sinh));
    if (std::abs(u) >= 1.0 || !std::isfinite(w)) continue;
    total += w * g(u);
  }
  return total * h;
}

// ---- regression -------------------------------------------------------------------

// Solves the 2x2 normal equations with Eigen's pivoted LU (independent of the
// library's centered-sum formulas).
inline void normal_equation_fit(const std::vector<Real>& xs, const std::vector<Real>& ys,
                                Real& slope, Real& intercept) {
  Eigen::Matrix2d xtx = Eigen::Matrix2d::Zero();
  Eigen::Vector2d xty = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Eigen::Vector2d row(1.0, xs[i]);
    xtx += row * row.transpose();
    xty += row * ys[i];
  }
  const Eigen::Vector2d beta = xtx.fullPivLu().solve(xty);
  intercept = beta(0);
  slope = beta(1);
}

// ---- misc helpers ------------------------------------------------------------------

// Leave-one-out 1-nearest-neighbor accuracy.
inline Real loo_1nn_accuracy(const Matrix& X, const std::vector<int>& y) {
  Index correct = 0;
  for (Index i = 0; i < X.rows(); ++i) {
    Real best = std::numeric_limits<Real>::infinity();
    Index best_j = -1;
    for (Index j = 0; j < X.rows(); ++j) {
      if (j == i) continue;
      const Real d = (X.row(i) - X.row(j)).squaredNorm();
      if (d < best) { best = d; best_j = j; }
    }
    if (y[static_cast<std::size_t>(best_j)] == y[static_cast<std::size_t>(i)]) ++correct;
  }
  return static_cast<Real>(correct) / static_cast<Real>(X.rows());
}

// Largest relative error between an analytic gradient and central finite
// differences of `objective` at A.
inline Real gradient_max_rel_error(const std::function<Real(const Matrix&)>& objective,
                                   const Matrix& analytic, const Matrix& A, Real step = 1e-5) {
  Real worst = 0.0;
  Matrix probe = A;
  for (Index r = 0; r < A.rows(); ++r) {
    for (Index c = 0; c < A.cols(); ++c) {
      probe(r, c) = A(r, c) + step;
      const Real hi = objective(probe);
      probe(r, c) = A(r, c) - step;
      const Real lo = objective(probe);
      probe(r, c) = A(r, c);
      const Real numeric = (hi - lo) / (2.0 * step);
      const Real denom = std::max({std::abs(numeric), std::abs(analytic(r, c)), 1e-8});
      worst = std::max(worst, std::abs(numeric - analytic(r, c)) / denom);
    }
  }
  return worst;
}

}  // namespace oracle
