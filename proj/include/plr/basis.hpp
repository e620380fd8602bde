#pragma once

// Multivariate monomial bases in graded order, with dense-coefficient
// polynomial arithmetic and evaluation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace plr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Exponent tuple beta = (beta_1, ..., beta_d).
struct MultiIndex {
  std::vector<int> exponents;

  int degree() const {
    return std::accumulate(exponents.begin(), exponents.end(), 0);
  }
  int dim() const { return static_cast<int>(exponents.size()); }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.exponents == b.exponents;
  }
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    return a.exponents < b.exponents;
  }

  MultiIndex operator+(const MultiIndex& o) const {
    if (exponents.size() != o.exponents.size())
      throw std::invalid_argument("MultiIndex dimension mismatch");
    MultiIndex r = *this;
    for (std::size_t i = 0; i < exponents.size(); ++i)
      r.exponents[i] += o.exponents[i];
    return r;
  }
};

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Monomial basis of all t^beta with |beta| <= n, ordered by total degree and,
// within a degree, by descending exponent tuple so that t1 has priority:
// 1, t1, ..., td, t1^2, t1 t2, ..., td^2, ...
class Basis {
 public:
  Basis(int d, int n) : d_(d), n_(n) {
    if (d < 1) throw std::invalid_argument("Basis: dimension must be >= 1");
    if (n < 0) throw std::invalid_argument("Basis: degree must be >= 0");
    std::vector<int> exps(d, 0);
    for (int deg = 0; deg <= n; ++deg) emit(exps, 0, deg);
    for (std::size_t i = 0; i < order_.size(); ++i) lookup_[order_[i]] = i;
  }

  int dim() const { return d_; }
  int degree() const { return n_; }
  int size() const { return static_cast<int>(order_.size()); }
  const std::vector<MultiIndex>& order() const { return order_; }
  const MultiIndex& at(int i) const { return order_.at(i); }

  // Ordinal of a multi-index; throws if |m| exceeds the basis degree.
  int index_of(const MultiIndex& m) const {
    auto it = lookup_.find(m);
    if (it == lookup_.end())
      throw std::out_of_range("index_of: multi-index of degree " +
                              std::to_string(m.degree()) +
                              " not in basis of degree " + std::to_string(n_));
    return it->second;
  }

  bool contains(const MultiIndex& m) const {
    return lookup_.count(m) != 0;
  }

 private:
  void emit(std::vector<int>& exps, int pos, int remaining) {
    if (pos == d_ - 1) {
      exps[pos] = remaining;
      order_.push_back(MultiIndex{exps});
      exps[pos] = 0;
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      exps[pos] = e;
      emit(exps, pos + 1, remaining - e);
    }
    exps[pos] = 0;
  }

  int d_;
  int n_;
  std::vector<MultiIndex> order_;
  std::map<MultiIndex, int> lookup_;
};

using BasisPtr = std::shared_ptr<const Basis>;

inline BasisPtr build_basis(int d, int n) {
  return std::make_shared<const Basis>(d, n);
}

inline double pow_int(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Dense polynomial over a shared basis.
class Polynomial {
 public:
  Polynomial(BasisPtr basis, Vector coeffs)
      : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != basis_->size())
      throw std::invalid_argument("Polynomial: coefficient length " +
                                  std::to_string(coeffs_.size()) +
                                  " != basis size " +
                                  std::to_string(basis_->size()));
  }

  static Polynomial zero(BasisPtr basis) {
    Vector c = Vector::Zero(basis->size());
    return Polynomial(std::move(basis), std::move(c));
  }

  static Polynomial constant(BasisPtr basis, double value) {
    Polynomial p = zero(std::move(basis));
    p.coeffs_[0] = value;
    return p;
  }

  // The monomial t^m.
  static Polynomial monomial(BasisPtr basis, const MultiIndex& m,
                             double coeff = 1.0) {
    Polynomial p = zero(basis);
    p.coeffs_[basis->index_of(m)] = coeff;
    return p;
  }

  const Basis& basis() const { return *basis_; }
  BasisPtr basis_ptr() const { return basis_; }
  const Vector& coeffs() const { return coeffs_; }
  Vector& coeffs() { return coeffs_; }

  // Largest |alpha_i| with a nonzero coefficient; -1 for the zero polynomial.
  int degree() const {
    int deg = -1;
    for (int i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0.0) deg = std::max(deg, basis_->at(i).degree());
    return deg;
  }

  double evaluate(const Vector& point) const {
    if (point.size() != basis_->dim())
      throw std::invalid_argument("evaluate: point dimension mismatch");
    double acc = 0.0;
    for (int i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0.0) continue;
      double mono = 1.0;
      const auto& e = basis_->at(i).exponents;
      for (int j = 0; j < basis_->dim(); ++j) mono *= pow_int(point[j], e[j]);
      acc += coeffs_[i] * mono;
    }
    return acc;
  }

  double evaluate(double t) const {
    Vector p(1);
    p[0] = t;
    return evaluate(p);
  }

 private:
  BasisPtr basis_;
  Vector coeffs_;
};

// Product of p and q expressed on target_basis; throws on degree overflow.
inline Polynomial multiply(const Polynomial& p, const Polynomial& q,
                           BasisPtr target_basis) {
  if (p.basis().dim() != q.basis().dim() ||
      p.basis().dim() != target_basis->dim())
    throw std::invalid_argument("multiply: dimension mismatch");
  int dp = p.degree(), dq = q.degree();
  if (dp >= 0 && dq >= 0 && dp + dq > target_basis->degree())
    throw std::out_of_range("multiply: product degree " +
                            std::to_string(dp + dq) +
                            " exceeds target basis degree " +
                            std::to_string(target_basis->degree()));
  Polynomial r = Polynomial::zero(target_basis);
  for (int i = 0; i < p.coeffs().size(); ++i) {
    if (p.coeffs()[i] == 0.0) continue;
    for (int j = 0; j < q.coeffs().size(); ++j) {
      if (q.coeffs()[j] == 0.0) continue;
      MultiIndex m = p.basis().at(i) + q.basis().at(j);
      r.coeffs()[target_basis->index_of(m)] += p.coeffs()[i] * q.coeffs()[j];
    }
  }
  return r;
}

// Re-express p on a (typically larger) basis of the same dimension.
inline Polynomial embed(const Polynomial& p, BasisPtr target_basis) {
  if (p.basis().dim() != target_basis->dim())
    throw std::invalid_argument("embed: dimension mismatch");
  Polynomial r = Polynomial::zero(target_basis);
  for (int i = 0; i < p.coeffs().size(); ++i) {
    if (p.coeffs()[i] == 0.0) continue;
    r.coeffs()[target_basis->index_of(p.basis().at(i))] = p.coeffs()[i];
  }
  return r;
}

}  // namespace plr
