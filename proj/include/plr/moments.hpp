#pragma once

// Analytic and empirical moment vectors, the moment matrix H_n, and
// positive-definiteness checks.

#include <cmath>
#include <set>
#include <stdexcept>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "plr/basis.hpp"

namespace plr {

// Moments of the weight indexed by the multi-indices of `basis`.
struct MomentVector {
  BasisPtr basis;
  Vector values;

  double at(const MultiIndex& m) const { return values[basis->index_of(m)]; }
  double at_power(int k) const {
    if (basis->dim() != 1)
      throw std::invalid_argument("at_power: univariate moments only");
    return values[basis->index_of(MultiIndex{{k}})];
  }
  int order() const { return basis->degree(); }
};

struct MomentMatrix {
  BasisPtr basis;
  Matrix entries;

  int size() const { return static_cast<int>(entries.rows()); }
};

struct PdReport {
  bool positive_definite = false;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

// Standard Gaussian moments on R: E[t^k] = 0 (k odd), (k-1)!! (k even).
inline MomentVector gaussian_moments(int order) {
  BasisPtr b = build_basis(1, order);
  Vector v = Vector::Zero(b->size());
  v[0] = 1.0;
  for (int k = 2; k <= order; k += 2)
    v[b->index_of(MultiIndex{{k}})] =
        (k - 1) * v[b->index_of(MultiIndex{{k - 2}})];
  return {b, v};
}

// Gamma(1+q, 1) moments on R_+: E[t^k] = prod_{j=1..k} (q + j).
inline MomentVector gamma_moments(double q, int order) {
  if (!(q > -1.0))
    throw std::invalid_argument("gamma_moments: shape q must exceed -1");
  BasisPtr b = build_basis(1, order);
  Vector v(b->size());
  v[0] = 1.0;
  for (int k = 1; k <= order; ++k)
    v[b->index_of(MultiIndex{{k}})] =
        v[b->index_of(MultiIndex{{k - 1}})] * (q + k);
  return {b, v};
}

// Sample moments (1/k) sum_i X_i^alpha for every |alpha| <= order.
inline MomentVector empirical_moments(const Matrix& samples, int order) {
  if (samples.rows() < 1)
    throw std::invalid_argument("empirical_moments: need at least one sample");
  const int d = static_cast<int>(samples.cols());
  BasisPtr b = build_basis(d, order);
  Vector v = Vector::Zero(b->size());
  for (Eigen::Index r = 0; r < samples.rows(); ++r) {
    for (int i = 0; i < b->size(); ++i) {
      double mono = 1.0;
      const auto& e = b->at(i).exponents;
      for (int j = 0; j < d; ++j) mono *= pow_int(samples(r, j), e[j]);
      v[i] += mono;
    }
  }
  v /= static_cast<double>(samples.rows());
  return {b, v};
}

// Number of distinct rows under exact bitwise equality (Lemma-2 count k*).
inline int distinct_rows(const Matrix& samples) {
  std::set<std::vector<double>> seen;
  for (Eigen::Index r = 0; r < samples.rows(); ++r) {
    std::vector<double> row(samples.cols());
    for (Eigen::Index c = 0; c < samples.cols(); ++c) row[c] = samples(r, c);
    seen.insert(row);
  }
  return static_cast<int>(seen.size());
}

// H[i][j] = mu[alpha_i + alpha_j]; requires moments up to degree 2n.
inline MomentMatrix moment_matrix(const MomentVector& mu, BasisPtr basis) {
  if (mu.basis->dim() != basis->dim())
    throw std::invalid_argument("moment_matrix: dimension mismatch");
  if (mu.order() < 2 * basis->degree())
    throw std::invalid_argument(
        "moment_matrix: moments of order " + std::to_string(mu.order()) +
        " insufficient for basis degree " + std::to_string(basis->degree()));
  const int n = basis->size();
  Matrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      h(i, j) = h(j, i) = mu.at(basis->at(i) + basis->at(j));
  return {basis, h};
}

// Positive definite iff the smallest eigenvalue exceeds tol relative to the
// largest one.
inline PdReport check_pd(const MomentMatrix& h, double tol = 1e-10) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.entries,
                                           Eigen::EigenvaluesOnly);
  PdReport rep;
  rep.min_eigenvalue = es.eigenvalues().minCoeff();
  rep.max_eigenvalue = es.eigenvalues().maxCoeff();
  rep.positive_definite =
      rep.min_eigenvalue > tol * std::max(rep.max_eigenvalue, 0.0);
  return rep;
}

// Weight specification: the reference distribution z.
struct StdGaussianWeight {};
struct GammaWeight {
  double q;
};
struct EmpiricalWeight {
  Matrix samples;  // k x d
};
struct ExplicitWeight {
  MomentVector moments;
};

struct WeightSpec {
  std::variant<StdGaussianWeight, GammaWeight, EmpiricalWeight, ExplicitWeight>
      variant;

  static WeightSpec std_gaussian() { return {StdGaussianWeight{}}; }
  static WeightSpec gamma(double q) {
    if (!(q > -1.0)) throw std::invalid_argument("WeightSpec: gamma q <= -1");
    return {GammaWeight{q}};
  }
  static WeightSpec empirical(Matrix samples) {
    if (samples.rows() < 1)
      throw std::invalid_argument("WeightSpec: empty sample set");
    return {EmpiricalWeight{std::move(samples)}};
  }
  static WeightSpec explicit_moments(MomentVector mv) {
    if (std::abs(mv.values[0] - 1.0) > 1e-12)
      throw std::invalid_argument(
          "WeightSpec: explicit moments must have mass mu_0 = 1");
    return {ExplicitWeight{std::move(mv)}};
  }

  int dim() const {
    if (auto* e = std::get_if<EmpiricalWeight>(&variant))
      return static_cast<int>(e->samples.cols());
    if (auto* x = std::get_if<ExplicitWeight>(&variant))
      return x->moments.basis->dim();
    return 1;
  }

  // Moments up to `order`; throws if an explicit vector is too short.
  MomentVector moments(int order) const {
    if (std::holds_alternative<StdGaussianWeight>(variant))
      return gaussian_moments(order);
    if (auto* g = std::get_if<GammaWeight>(&variant))
      return gamma_moments(g->q, order);
    if (auto* e = std::get_if<EmpiricalWeight>(&variant))
      return empirical_moments(e->samples, order);
    const auto& mv = std::get<ExplicitWeight>(variant).moments;
    if (mv.order() < order)
      throw std::invalid_argument("WeightSpec: explicit moments cover order " +
                                  std::to_string(mv.order()) + " < " +
                                  std::to_string(order));
    if (mv.order() == order) return mv;
    BasisPtr b = build_basis(mv.basis->dim(), order);
    Vector v(b->size());
    for (int i = 0; i < b->size(); ++i) v[i] = mv.at(b->at(i));
    return {b, v};
  }
};

}  // namespace plr
