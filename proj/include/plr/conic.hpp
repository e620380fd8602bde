#pragma once

// The mixed conic-semidefinite program
//
//   min 1/2 x' H x
//   s.t. S H x = c,  U H x <= d,  x = T(G),  G >= 0,  x' H x <= C,
//
// its block-matrix dual, and the KKT map between the two solution paths.
// Internally the program is posed as a linear conic problem over
// orthant x SOC x PSD by writing the objective through a rotated
// second-order-cone epigraph on the Cholesky image R x, then handed to the
// homogeneous self-dual solver. Badly scaled moment data (high-order Gamma
// or empirical moments) is tamed by an exact change of variables t -> beta u
// before the solve; all reported quantities are mapped back to the original
// coordinates.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "plr/basis.hpp"
#include "plr/ipm.hpp"
#include "plr/moments.hpp"
#include "plr/sos.hpp"

namespace plr {

struct ConicProblem {
  MomentMatrix H;
  Matrix S;      // (m+1) x (N+1) equality polynomial coefficients
  Vector c;      // length m+1
  Matrix U;      // (l+1) x (N+1) inequality polynomial coefficients (may be 0 x N+1)
  Vector d;      // length l+1
  Domain domain{Domain::real_line()};
  int degree = 0;
  double norm_bound = 1e6;  // C of the nuisance constraint

  int num_coeffs() const { return static_cast<int>(H.entries.rows()); }
  int num_eq() const { return static_cast<int>(S.rows()); }
  int num_ineq() const { return static_cast<int>(U.rows()); }

  void validate() const {
    const int n1 = num_coeffs();
    if (S.cols() != n1 || (U.rows() > 0 && U.cols() != n1))
      throw std::invalid_argument("ConicProblem: constraint width mismatch");
    if (c.size() != S.rows() || d.size() != U.rows())
      throw std::invalid_argument("ConicProblem: constraint target mismatch");
    if (num_eq() + num_ineq() + 1 > n1)
      throw std::invalid_argument(
          "ConicProblem: too many constraints for the basis (m+l+2 > N+1)");
    Matrix su(num_eq() + num_ineq(), n1);
    su << S, U;
    Eigen::ColPivHouseholderQR<Matrix> qr(su);
    qr.setThreshold(1e-10);
    if (qr.rank() < su.rows())
      throw std::invalid_argument(
          "ConicProblem: constraint polynomials are linearly dependent");
    if (!check_pd(H).positive_definite)
      throw std::invalid_argument("ConicProblem: moment matrix H is not PD");
  }
};

enum class SolveStatus { Optimal, Infeasible, MaxIterations, NumericalFailure };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::MaxIterations: return "MaxIterations";
    case SolveStatus::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

struct KktResiduals {
  double equality = 0.0;      // ||S H x - c||_inf
  double inequality = 0.0;    // max(0, max(U H x - d))
  double cone_match = 0.0;    // x vs the epigraph copy of R x
  double gram_min_eig = 0.0;  // min eigenvalue over Gram blocks
  double dual_min_eig = 0.0;  // min eigenvalue of sum_i nu_i L_i per block
  double eps_min = 0.0;       // most negative inequality multiplier
  double stationarity = 0.0;  // ||x - (S'eta + H^-1 nu - U'eps)||_inf
};

struct Solution {
  SolveStatus status = SolveStatus::NumericalFailure;
  Vector x;
  std::vector<Matrix> grams;
  Vector eta, nu, eps;
  double objective = 0.0;  // 1/2 x' H x
  double gap = 0.0;        // primal minus dual objective (paper dual)
  double rel_gap = 0.0;
  KktResiduals kkt;
  int iterations = 0;
  bool nuisance_active = false;
  double nuisance_multiplier = 0.0;
};

struct ConicSolverOptions {
  double feas_tol = 1e-8;
  double gap_tol = 1e-7;
  double psd_tol = 1e-9;
  int max_iterations = 200;
  double initial_scale = 1.0;
  bool autoscale = true;
};

struct DualProblem {
  Matrix gamma;     // (m+1 + N+1 + l+1) block matrix of Eq-style dual
  Vector lin_eta;   // c
  Vector lin_eps;   // -d
  int m1, n1, l1;   // block sizes
};

// Dual data: maximize -1/2 theta' Gamma theta + eta'c - eps'd over
// eps >= 0, sum_i nu_i L_i >= 0, theta = (eta, nu, eps).
inline DualProblem assemble_dual(const ConicProblem& p) {
  const int m1 = p.num_eq(), n1 = p.num_coeffs(), l1 = p.num_ineq();
  DualProblem dual;
  dual.m1 = m1;
  dual.n1 = n1;
  dual.l1 = l1;
  Matrix hinv = p.H.entries.llt().solve(Matrix::Identity(n1, n1));
  dual.gamma.resize(m1 + n1 + l1, m1 + n1 + l1);
  Matrix sh = p.S * p.H.entries;
  Matrix uh = p.U * p.H.entries;
  dual.gamma.block(0, 0, m1, m1) = sh * p.S.transpose();
  dual.gamma.block(0, m1, m1, n1) = p.S;
  dual.gamma.block(m1, 0, n1, m1) = p.S.transpose();
  dual.gamma.block(m1, m1, n1, n1) = hinv;
  if (l1 > 0) {
    dual.gamma.block(0, m1 + n1, m1, l1) = -sh * p.U.transpose();
    dual.gamma.block(m1 + n1, 0, l1, m1) = -uh * p.S.transpose();
    dual.gamma.block(m1, m1 + n1, n1, l1) = -p.U.transpose();
    dual.gamma.block(m1 + n1, m1, l1, n1) = -p.U;
    dual.gamma.block(m1 + n1, m1 + n1, l1, l1) = uh * p.U.transpose();
  }
  dual.lin_eta = p.c;
  dual.lin_eps = -p.d;
  return dual;
}

// KKT primal recovery x = S'eta + H^-1 nu - U'eps.
inline Vector recover_primal_from_dual(const ConicProblem& p,
                                       const Vector& eta, const Vector& nu,
                                       const Vector& eps) {
  if (eta.size() != p.num_eq() || nu.size() != p.num_coeffs() ||
      eps.size() != p.num_ineq())
    throw std::invalid_argument("recover_primal_from_dual: shape mismatch");
  Vector x = p.S.transpose() * eta + p.H.entries.llt().solve(nu);
  if (p.num_ineq() > 0) x -= p.U.transpose() * eps;
  return x;
}

// Primal objective minus dual objective evaluated through Gamma.
inline double duality_gap(const ConicProblem& p, const Vector& x,
                          const Vector& eta, const Vector& nu,
                          const Vector& eps) {
  DualProblem dual = assemble_dual(p);
  Vector theta(dual.m1 + dual.n1 + dual.l1);
  theta << eta, nu, eps;
  const double dual_obj = -0.5 * theta.dot(dual.gamma * theta) +
                          eta.dot(p.c) - eps.dot(p.d);
  const double primal_obj = 0.5 * x.dot(p.H.entries * x);
  return primal_obj - dual_obj;
}

namespace detail {

// svec-coordinate matrix of the trace map: x = T_mat * [svec G_1; ...].
inline Matrix trace_map_matrix(const SelectionMaps& maps,
                               const SosStructure& s) {
  int total = 0;
  std::vector<int> offsets;
  for (const auto& blk : s.blocks) {
    offsets.push_back(total);
    total += ipm::svec_dim(blk.gram_size);
  }
  Matrix t = Matrix::Zero(maps.basis->size(), total);
  for (int i = 0; i < maps.basis->size(); ++i) {
    for (std::size_t k = 0; k < s.blocks.size(); ++k) {
      const int gs = s.blocks[k].gram_size;
      for (const auto& e : maps.maps[i][k]) {
        // svec index of (row, col), row >= col, column-major lower triangle
        const int col = e.col, row = e.row;
        int idx = offsets[k];
        for (int j = 0; j < col; ++j) idx += gs - j;
        idx += row - col;
        t(i, idx) += (row == col) ? e.value : ipm::kSqrt2 * e.value;
      }
    }
  }
  return t;
}

struct ScaledData {
  ConicProblem problem;
  double beta = 1.0;
};

// Exact change of variables t = beta u: moments, constraints, and domain are
// rewritten so that the solver sees O(1) data.
inline ScaledData scale_problem(const ConicProblem& p, bool autoscale) {
  ScaledData out{p, 1.0};
  if (!autoscale) return out;
  const int n1 = p.num_coeffs();
  double top = 0.0;
  for (int i = 0; i < n1; ++i)
    if (p.H.basis->at(i).degree() == p.degree)
      top = std::max(top, p.H.entries(i, i));
  if (top <= 0.0) return out;
  double beta = std::pow(top, 1.0 / (2.0 * p.degree));
  if (beta > 0.5 && beta < 2.0) return out;
  beta = std::min(std::max(beta, 1e-6), 1e6);
  out.beta = beta;

  auto deg = [&](int i) { return p.H.basis->at(i).degree(); };
  Matrix h = p.H.entries;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      h(i, j) /= std::pow(beta, deg(i) + deg(j));
  out.problem.H.entries = h;
  for (int i = 0; i < p.S.rows(); ++i)
    for (int j = 0; j < n1; ++j)
      out.problem.S(i, j) = p.S(i, j) * std::pow(beta, deg(j));
  for (int i = 0; i < p.U.rows(); ++i)
    for (int j = 0; j < n1; ++j)
      out.problem.U(i, j) = p.U(i, j) * std::pow(beta, deg(j));
  if (auto* hl = std::get_if<HalfLine>(&p.domain.variant))
    out.problem.domain = Domain::half_line(hl->a / beta);
  else if (auto* iv = std::get_if<Interval>(&p.domain.variant))
    out.problem.domain = Domain::interval(iv->a / beta, iv->b / beta);
  return out;
}

}  // namespace detail

// Solve the primal program through the homogeneous embedding and recover the
// paper's dual variables from the conic multipliers.
inline Solution solve_primal(const ConicProblem& p0,
                             const ConicSolverOptions& opt = {}) {
  p0.validate();
  detail::ScaledData scaled = detail::scale_problem(p0, opt.autoscale);
  const ConicProblem& p = scaled.problem;
  const double beta = scaled.beta;

  const int n1 = p.num_coeffs();
  const int m1 = p.num_eq();
  const int l1 = p.num_ineq();

  SosStructure structure = structure_for(p.domain, p.degree);
  SelectionMaps maps = selection_maps(structure, p.H.basis);
  Matrix tmat = detail::trace_map_matrix(maps, structure);
  const int gdim = static_cast<int>(tmat.cols());

  Eigen::LLT<Matrix> hllt(p.H.entries);
  if (hllt.info() != Eigen::Success)
    throw std::invalid_argument("solve_primal: Cholesky of H failed");
  Matrix r = Matrix(hllt.matrixU());  // H = R'R

  // Conic variables: [w_ineq (l1) | w_C (1) | soc p (n1+2) | svec grams].
  ipm::ConeSpec cone;
  cone.orthant = l1 + 1;
  cone.soc = {n1 + 2};
  for (const auto& blk : structure.blocks) cone.psd.push_back(blk.gram_size);
  const int nvar = cone.dim();
  const int soc_off = l1 + 1;
  const int g_off = soc_off + n1 + 2;

  // Rows: [S H T = c (m1) | U H T + w = d (l1) | v = 1 | pbar = R T (n1) |
  //        sqrt2 (p0 + p1) + w_C = C].
  const int nrow = m1 + l1 + 1 + n1 + 1;
  Matrix a = Matrix::Zero(nrow, nvar);
  Vector b = Vector::Zero(nrow);
  Matrix sht = p.S * p.H.entries * tmat;
  a.block(0, g_off, m1, gdim) = sht;
  b.head(m1) = p.c;
  if (l1 > 0) {
    a.block(m1, g_off, l1, gdim) = p.U * p.H.entries * tmat;
    a.block(m1, 0, l1, l1) = Matrix::Identity(l1, l1);
    b.segment(m1, l1) = p.d;
  }
  const int vrow = m1 + l1;
  a(vrow, soc_off) = 1.0 / ipm::kSqrt2;
  a(vrow, soc_off + 1) = -1.0 / ipm::kSqrt2;
  b[vrow] = 1.0;
  a.block(vrow + 1, soc_off + 2, n1, n1) = Matrix::Identity(n1, n1);
  a.block(vrow + 1, g_off, n1, gdim) = -r * tmat;
  const int crow = vrow + 1 + n1;
  a(crow, soc_off) = ipm::kSqrt2;
  a(crow, soc_off + 1) = ipm::kSqrt2;
  a(crow, l1) = 1.0;
  b[crow] = p.norm_bound;

  Vector cvec = Vector::Zero(nvar);
  cvec[soc_off] = 1.0 / ipm::kSqrt2;
  cvec[soc_off + 1] = 1.0 / ipm::kSqrt2;

  // Row equilibration (rescales the multipliers only).
  Vector row_scale(nrow);
  for (int i = 0; i < nrow; ++i) {
    double sc = std::max(a.row(i).lpNorm<Eigen::Infinity>(), std::abs(b[i]));
    row_scale[i] = (sc > 0.0) ? sc : 1.0;
    a.row(i) /= row_scale[i];
    b[i] /= row_scale[i];
  }

  ipm::Options iopt;
  iopt.max_iterations = opt.max_iterations;
  iopt.initial_scale = opt.initial_scale;
  ipm::Result r0 = ipm::solve(a, b, cvec, cone, iopt);

  Solution sol;
  sol.iterations = r0.iterations;
  if (r0.status == ipm::Status::PrimalInfeasible) {
    sol.status = SolveStatus::Infeasible;
    return sol;
  }
  if (r0.status == ipm::Status::MaxIterations) sol.status = SolveStatus::MaxIterations;
  else if (r0.status == ipm::Status::Optimal) sol.status = SolveStatus::Optimal;
  else sol.status = SolveStatus::NumericalFailure;
  if (r0.x.size() == 0) return sol;

  // Unpack grams and primal coefficients (scaled coordinates).
  int off = g_off;
  std::vector<Matrix> grams;
  for (const auto& blk : structure.blocks) {
    const int sd = ipm::svec_dim(blk.gram_size);
    grams.push_back(ipm::smat(r0.x.segment(off, sd), blk.gram_size));
    off += sd;
  }
  Vector xs = tmat * r0.x.tail(gdim);
  Vector pbar = r0.x.segment(soc_off + 2, n1);
  Vector x_from_soc = r.triangularView<Eigen::Upper>().solve(pbar);

  // Dual variables. Multipliers were found for the equilibrated rows.
  Vector y = r0.y.array() / row_scale.array();
  Vector eta = y.head(m1);
  Vector eps = l1 > 0 ? Vector(-y.segment(m1, l1)) : Vector(0);
  Vector y_tie = y.segment(vrow + 1, n1);
  Vector nus = r.transpose() * y_tie - p.H.entries * p.S.transpose() * eta;
  if (l1 > 0) nus += p.H.entries * p.U.transpose() * eps;
  const double y_c = y[crow];

  // Map back to original coordinates: x_i /= beta^deg, nu_i *= beta^deg,
  // gram (r,c) /= beta^(deg_r + deg_c); eta and eps are invariant.
  Vector x = xs, nu = nus;
  if (beta != 1.0) {
    for (int i = 0; i < n1; ++i) {
      const double f = std::pow(beta, p.H.basis->at(i).degree());
      x[i] /= f;
      nu[i] *= f;
      x_from_soc[i] /= f;
    }
    for (std::size_t k = 0; k < grams.size(); ++k) {
      const auto& gb = structure.blocks[k].gram_basis;
      for (int i = 0; i < grams[k].rows(); ++i)
        for (int j = 0; j < grams[k].cols(); ++j)
          grams[k](i, j) /=
              std::pow(beta, gb->at(i).degree() + gb->at(j).degree());
    }
  }

  sol.x = x;
  sol.grams = std::move(grams);
  sol.eta = eta;
  sol.nu = nu;
  sol.eps = eps;
  sol.objective = 0.5 * x.dot(p0.H.entries * x);
  sol.nuisance_multiplier = -2.0 * y_c;
  sol.nuisance_active = sol.nuisance_multiplier > 1e-6;

  // Residual report in original coordinates.
  sol.kkt.equality =
      (p0.S * p0.H.entries * x - p0.c).lpNorm<Eigen::Infinity>();
  sol.kkt.inequality =
      l1 > 0 ? std::max(0.0, (p0.U * p0.H.entries * x - p0.d).maxCoeff())
             : 0.0;
  sol.kkt.cone_match = (x - x_from_soc).lpNorm<Eigen::Infinity>();
  sol.kkt.gram_min_eig = std::numeric_limits<double>::infinity();
  for (const auto& g : sol.grams) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
    sol.kkt.gram_min_eig =
        std::min(sol.kkt.gram_min_eig, es.eigenvalues().minCoeff());
  }
  // dual cone: sum_i nu_i L_i per block, in original coordinates
  SosStructure structure0 = structure_for(p0.domain, p0.degree);
  SelectionMaps maps0 = selection_maps(structure0, p0.H.basis);
  sol.kkt.dual_min_eig = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < structure0.blocks.size(); ++k) {
    const int gs = structure0.blocks[k].gram_size;
    Matrix lam = Matrix::Zero(gs, gs);
    for (int i = 0; i < n1; ++i)
      for (const auto& e : maps0.maps[i][k]) {
        lam(e.row, e.col) += sol.nu[i] * e.value;
        if (e.row != e.col) lam(e.col, e.row) += sol.nu[i] * e.value;
      }
    Eigen::SelfAdjointEigenSolver<Matrix> es(lam, Eigen::EigenvaluesOnly);
    sol.kkt.dual_min_eig =
        std::min(sol.kkt.dual_min_eig, es.eigenvalues().minCoeff());
  }
  sol.kkt.eps_min = l1 > 0 ? sol.eps.minCoeff() : 0.0;
  sol.kkt.stationarity =
      (x - recover_primal_from_dual(p0, sol.eta, sol.nu, sol.eps))
          .lpNorm<Eigen::Infinity>();
  sol.gap = duality_gap(p0, sol.x, sol.eta, sol.nu, sol.eps);
  sol.rel_gap = std::abs(sol.gap) / std::max(1.0, std::abs(sol.objective));

  if (sol.status == SolveStatus::Optimal) {
    const bool ok = sol.kkt.equality <= opt.feas_tol * 10 &&
                    sol.kkt.inequality <= opt.feas_tol * 10 &&
                    sol.rel_gap <= opt.gap_tol * 10 &&
                    sol.kkt.eps_min >= -opt.feas_tol * 10;
    if (!ok) sol.status = SolveStatus::NumericalFailure;
  }
  return sol;
}

struct SosFeasibility {
  bool feasible = false;
  std::vector<Matrix> grams;
};

// Certificate search: is x representable as T(G) with G >= 0 on the domain?
inline SosFeasibility sos_certificate_search(const Vector& x,
                                             const Domain& domain, int n) {
  BasisPtr basis = build_basis(domain.dim(), n);
  if (x.size() != basis->size())
    throw std::invalid_argument("sos_certificate_search: bad coefficient size");
  SosStructure structure = structure_for(domain, n);
  SelectionMaps maps = selection_maps(structure, basis);
  Matrix tmat = detail::trace_map_matrix(maps, structure);
  ipm::ConeSpec cone;
  for (const auto& blk : structure.blocks) cone.psd.push_back(blk.gram_size);
  Vector cvec = Vector::Zero(cone.dim());
  ipm::Options iopt;
  iopt.tol_feas = 1e-9;
  ipm::Result r = ipm::solve(tmat, x, cvec, cone, iopt);
  SosFeasibility out;
  out.feasible = r.status == ipm::Status::Optimal;
  if (out.feasible) {
    int off = 0;
    for (const auto& blk : structure.blocks) {
      const int sd = ipm::svec_dim(blk.gram_size);
      out.grams.push_back(ipm::smat(r.x.segment(off, sd), blk.gram_size));
      off += sd;
    }
  }
  return out;
}

}  // namespace plr
