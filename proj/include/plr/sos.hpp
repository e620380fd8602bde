#pragma once

// Sum-of-squares cone structures per domain and the linear trace map T that
// links Gram matrices to polynomial coefficients.

#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "plr/basis.hpp"

namespace plr {

struct RealLine {};
struct HalfLine {
  double a = 0.0;  // domain [a, inf)
};
struct Interval {
  double a, b;
};
struct RealSpace {
  int d;
};

struct Domain {
  std::variant<RealLine, HalfLine, Interval, RealSpace> variant;

  static Domain real_line() { return {RealLine{}}; }
  static Domain half_line(double a = 0.0) { return {HalfLine{a}}; }
  static Domain interval(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("Domain: interval needs a < b");
    return {Interval{a, b}};
  }
  static Domain real_space(int d) {
    if (d < 1) throw std::invalid_argument("Domain: dimension must be >= 1");
    return {RealSpace{d}};
  }

  int dim() const {
    if (auto* r = std::get_if<RealSpace>(&variant)) return r->d;
    return 1;
  }

  bool contains(const Vector& t) const {
    if (std::holds_alternative<RealLine>(variant)) return true;
    if (auto* h = std::get_if<HalfLine>(&variant)) return t[0] >= h->a;
    if (auto* iv = std::get_if<Interval>(&variant))
      return t[0] >= iv->a && t[0] <= iv->b;
    return true;
  }

  std::string name() const {
    if (std::holds_alternative<RealLine>(variant)) return "R";
    if (std::holds_alternative<HalfLine>(variant)) return "Rplus";
    if (std::holds_alternative<Interval>(variant)) return "interval";
    return "Rd";
  }
};

// One Gram block: xi contains weight(t) * tau^T G tau with G of gram_size.
struct SosBlock {
  Polynomial weight;
  int gram_size;
  BasisPtr gram_basis;  // monomials multiplying G rows/columns
};

struct SosStructure {
  Domain domain;
  int degree;
  std::vector<SosBlock> blocks;
};

// Cone parameterization of M_n(D) for each supported domain.
inline SosStructure structure_for(const Domain& domain, int n) {
  SosStructure s{domain, n, {}};
  const int d = domain.dim();
  BasisPtr full = build_basis(d, n);

  auto block = [&](const Polynomial& w, int half_degree) {
    if (half_degree < 0) return;
    BasisPtr gb = build_basis(d, half_degree);
    s.blocks.push_back(SosBlock{w, gb->size(), gb});
  };
  auto lin = [&](double c0, double c1) {
    // c0 + c1 * t on the full univariate basis
    Polynomial p = Polynomial::zero(full);
    p.coeffs()[0] = c0;
    p.coeffs()[full->index_of(MultiIndex{{1}})] = c1;
    return p;
  };

  if (std::holds_alternative<RealLine>(domain.variant)) {
    if (n % 2 != 0)
      throw std::invalid_argument(
          "structure_for: odd degree unsupported on the real line");
    block(Polynomial::constant(full, 1.0), n / 2);
  } else if (auto* h = std::get_if<HalfLine>(&domain.variant)) {
    if (n < 1)
      throw std::invalid_argument("structure_for: half-line needs n >= 1");
    const int m = n / 2;
    block(Polynomial::constant(full, 1.0), m);
    if (n % 2 == 0)
      block(lin(-h->a, 1.0), m - 1);
    else
      block(lin(-h->a, 1.0), m);
  } else if (auto* iv = std::get_if<Interval>(&domain.variant)) {
    if (n < 1)
      throw std::invalid_argument("structure_for: interval needs n >= 1");
    const int m = n / 2;
    if (n % 2 == 0) {
      block(Polynomial::constant(full, 1.0), m);
      // (b - t)(t - a)
      Polynomial w = multiply(lin(iv->b, -1.0), lin(-iv->a, 1.0), full);
      block(w, m - 1);
    } else {
      block(lin(iv->b, -1.0), m);
      block(lin(-iv->a, 1.0), m);
    }
  } else {
    if (n % 2 != 0)
      throw std::invalid_argument(
          "structure_for: odd degree unsupported on R^d");
    block(Polynomial::constant(full, 1.0), n / 2);
  }
  return s;
}

// Sparse symmetric selection matrices L_i^(k): for coefficient ordinal i and
// block k, T(G)_i = sum_k tr(L_i^(k) G_k). Entries are stored for row >= col
// and mirrored implicitly.
struct SelectionEntry {
  int row, col;
  double value;
};

struct SelectionMaps {
  BasisPtr basis;  // coefficient basis of degree n
  // maps[i][k] lists lower-triangle entries of L_i^(k)
  std::vector<std::vector<std::vector<SelectionEntry>>> maps;

  int num_blocks() const { return maps.empty() ? 0 : (int)maps[0].size(); }
};

// Build the selection maps from the block weights: the entry of L_i^(k) at
// (r, c) is the coefficient of monomial alpha_i in weight_k * tau_r * tau_c.
inline SelectionMaps selection_maps(const SosStructure& s, BasisPtr basis) {
  if (basis->degree() != s.degree)
    throw std::invalid_argument("selection_maps: basis degree mismatch");
  SelectionMaps out;
  out.basis = basis;
  out.maps.assign(basis->size(),
                  std::vector<std::vector<SelectionEntry>>(s.blocks.size()));
  for (std::size_t k = 0; k < s.blocks.size(); ++k) {
    const SosBlock& blk = s.blocks[k];
    for (int r = 0; r < blk.gram_size; ++r) {
      for (int c = 0; c <= r; ++c) {
        Polynomial mono_r = Polynomial::monomial(blk.gram_basis,
                                                 blk.gram_basis->at(r));
        Polynomial mono_c = Polynomial::monomial(blk.gram_basis,
                                                 blk.gram_basis->at(c));
        Polynomial prod =
            multiply(multiply(mono_r, mono_c, basis), blk.weight, basis);
        for (int i = 0; i < basis->size(); ++i) {
          double v = prod.coeffs()[i];
          if (v != 0.0) out.maps[i][k].push_back({r, c, v});
        }
      }
    }
  }
  return out;
}

// x_i = sum_k tr(L_i^(k) G_k) for symmetric G_k.
inline Vector assemble_coeffs(const SelectionMaps& maps,
                              const std::vector<Matrix>& grams) {
  if ((int)grams.size() != maps.num_blocks())
    throw std::invalid_argument("assemble_coeffs: wrong number of blocks");
  Vector x = Vector::Zero(maps.basis->size());
  for (int i = 0; i < x.size(); ++i) {
    for (std::size_t k = 0; k < grams.size(); ++k) {
      for (const auto& e : maps.maps[i][k]) {
        if (e.row >= grams[k].rows() || e.col >= grams[k].cols())
          throw std::invalid_argument("assemble_coeffs: gram shape mismatch");
        double g = grams[k](e.row, e.col);
        x[i] += (e.row == e.col) ? e.value * g : 2.0 * e.value * g;
      }
    }
  }
  return x;
}

struct CertificateReport {
  bool psd_ok = false;
  bool match_ok = false;
  double min_eigenvalue = 0.0;  // over all blocks
  double match_error = 0.0;     // inf-norm of x - T(G)
  bool pass() const { return psd_ok && match_ok; }
};

// Verify that the Gram set certifies x: T(G) = x and every block PSD.
inline CertificateReport certificate_check(const Vector& x,
                                           const std::vector<Matrix>& grams,
                                           const SelectionMaps& maps,
                                           double psd_tol = 1e-9,
                                           double match_tol = 1e-8) {
  CertificateReport rep;
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& g : grams) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = std::min(rep.min_eigenvalue,
                                  es.eigenvalues().minCoeff());
  }
  if (grams.empty()) rep.min_eigenvalue = 0.0;
  rep.match_error = (x - assemble_coeffs(maps, grams)).lpNorm<Eigen::Infinity>();
  rep.psd_ok = rep.min_eigenvalue >= -psd_tol;
  rep.match_ok = rep.match_error <= match_tol;
  return rep;
}

}  // namespace plr
