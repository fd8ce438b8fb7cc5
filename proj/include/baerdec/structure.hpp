// Isometries and power partial isometries: Wold and Halmos–Wallen
// decompositions, defect projections [x^m (1 − [x])], and the
// Wold–Słociński split of a doubly commuting pair of isometries.
//
// In finite dimension every isometry is unitary, so the shift parts are
// always zero; they are still computed rather than assumed, and the
// bookkeeping is checked.

#ifndef BAERDEC_STRUCTURE_HPP
#define BAERDEC_STRUCTURE_HPP

#include "engine.hpp"

#include <map>
#include <optional>
#include <string>

namespace baerdec {

struct ShiftProfile {
  Projection unitary_projection;               ///< p_u
  std::map<int, int> multiplicities;           ///< block length k -> number of truncated shifts m_k
  Eigen::Index pure_isometry_rank = 0;         ///< rank p_pi
  Eigen::Index pure_coisometry_rank = 0;       ///< rank p_pci
  Projection remainder;                        ///< p_r = 1 − p_u − p_pi − p_pci

  /// rank(p_u) + Σ k m_k.
  Eigen::Index accounted_dimension() const {
    Eigen::Index d = unitary_projection.rank();
    for (const auto& [k, m] : multiplicities) d += static_cast<Eigen::Index>(k) * m;
    return d;
  }

  int multiplicity(int k) const {
    auto it = multiplicities.find(k);
    return it == multiplicities.end() ? 0 : it->second;
  }
};

// ---------------------------------------------------------------------
// Wold
// ---------------------------------------------------------------------

/// ‖x* x − 1‖_F and the threshold it is compared against.
inline double isometry_defect(const ComplexMatrix& x) {
  return (x.adjoint() * x - identity(x.rows())).norm();
}

inline double isometry_threshold(const ComplexMatrix& x, const ToleranceProfile& tol) {
  const double s = 1.0 + x.norm();
  return tol.res_rel * s * s;
}

struct WoldResult {
  Projection unitary_projection;
  Eigen::Index shift_rank = 0;
  DecompositionReport report;
};

/// Wold decomposition of an isometry: p_u is the maximal unitary part; the
/// remainder would be a unilateral shift, which cannot occur in M_n.
inline WoldResult wold(const ComplexMatrix& x, const ToleranceProfile& tol) {
  require_square(x);
  const double defect = isometry_defect(x);
  if (defect > isometry_threshold(x, tol))
    throw PreconditionError("wold: input is not an isometry, ||x*x - 1||_F = " + std::to_string(defect), defect);
  const TupleInstance t({x}, {"x"});
  WoldResult out;
  out.report = max_property_projection(t, builtin_property("unitary", t.dim()), tol);
  out.unitary_projection = out.report.projection;
  out.shift_rank = out.unitary_projection.complement().rank();
  if (out.shift_rank != 0)
    throw ConsistencyError("wold: nonzero shift part (rank " + std::to_string(out.shift_rank) +
                           ") for a finite-dimensional isometry");
  return out;
}

// ---------------------------------------------------------------------
// Defect projections
// ---------------------------------------------------------------------

/// [x^m (1 − [x])]; m = 0 gives 1 − [x].
inline Projection defect_projection(const ComplexMatrix& x, int m, const ToleranceProfile& tol) {
  require_square(x);
  if (m < 0) throw InputError("defect_projection: exponent must be nonnegative");
  const Projection range = left_projection(x, tol);
  auto chain = power_range_chain(x, complement(range.frame()), m, tol);
  return Projection(std::move(chain.back()));
}

/// ‖[x^m (1 − [x])] − ([x^m] − [x^{m+1}])‖_F. The identity holds for
/// partial isometries whose powers are partial isometries; outside the
/// isometric setting it is an empirical check.
inline double defect_identity_residual(const ComplexMatrix& x, int m, const ToleranceProfile& tol) {
  const Projection d = defect_projection(x, m, tol);
  const ComplexMatrix xm = m == 0 ? identity(x.rows()) : power_range_projection(x, m, tol).matrix();
  const ComplexMatrix xm1 = power_range_projection(x, m + 1, tol).matrix();
  return (d.matrix() - (xm - xm1)).norm();
}

// ---------------------------------------------------------------------
// Halmos–Wallen
// ---------------------------------------------------------------------

struct HalmosWallenResult {
  bool power_partial_isometry = false;
  int failing_power = 0;           ///< first k with x^k not a partial isometry
  double failing_residual = 0.0;   ///< ‖x^k (x^k)* x^k − x^k‖_F at that k
  ShiftProfile profile;            ///< filled when power_partial_isometry
  std::vector<Eigen::Index> corner_rank_sequence;  ///< r_0, r_1, … on the non-unitary corner
};

/// Splits a power partial isometry into its unitary part and a direct sum
/// of truncated shifts, reporting the number of shifts of each length.
inline HalmosWallenResult halmos_wallen(const ComplexMatrix& x, const ToleranceProfile& tol) {
  require_square(x);
  const Eigen::Index n = x.rows();
  HalmosWallenResult out;

  ComplexMatrix xk = identity(n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    xk = xk * x;
    const double r = (xk * xk.adjoint() * xk - xk).norm();
    const double s = 1.0 + xk.norm();
    if (r > tol.res_rel * s * s * s) {
      out.failing_power = static_cast<int>(k);
      out.failing_residual = r;
      return out;
    }
  }
  out.power_partial_isometry = true;

  const TupleInstance t({x}, {"x"});
  const ComplexMatrix xs = x.adjoint();
  const TupleInstance ts({xs}, {"x*"});
  auto& prof = out.profile;
  prof.unitary_projection = max_property_projection(t, builtin_property("unitary", n), tol).projection;
  const Projection p_i = max_property_projection(t, builtin_property("isometry", n), tol).projection;
  const Projection p_ci = max_property_projection(ts, builtin_property("isometry", n), tol).projection;
  const ComplexMatrix& pu = prof.unitary_projection.matrix();
  if ((p_i.matrix() * p_ci.matrix() - pu).norm() > kProductLawTol)
    throw ConsistencyError("halmos_wallen: isometric and co-isometric parts do not meet in the unitary part");
  const Projection p_pi = Projection::from_matrix(p_i.matrix() - pu);
  const Projection p_pci = Projection::from_matrix(p_ci.matrix() - pu);
  prof.pure_isometry_rank = p_pi.rank();
  prof.pure_coisometry_rank = p_pci.rank();
  prof.remainder = Projection::from_matrix(identity(n) - pu - p_pi.matrix() - p_pci.matrix());

  // On the remaining corner x is nilpotent; block counts come from second
  // differences of the ranks of its powers.
  const Projection rest = prof.unitary_projection.complement();
  const ComplexMatrix c = corner_compress(x, rest);
  const Eigen::Index cd = c.rows();
  const auto chain = power_range_chain(c, Frame::full(cd), static_cast<int>(cd) + 1, tol, spectral_norm(x));
  for (const auto& f : chain) out.corner_rank_sequence.push_back(f.size());
  if (cd > 0 && out.corner_rank_sequence[static_cast<std::size_t>(cd)] != 0)
    throw ConsistencyError("halmos_wallen: non-unitary part is not nilpotent");
  const auto& r = out.corner_rank_sequence;
  for (Eigen::Index k = 1; k <= cd; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const Eigen::Index m = r[i - 1] - 2 * r[i] + r[i + 1];
    if (m < 0) throw ConsistencyError("halmos_wallen: negative block count");
    if (m > 0) prof.multiplicities[static_cast<int>(k)] = static_cast<int>(m);
  }
  if (prof.accounted_dimension() != n)
    throw ConsistencyError("halmos_wallen: block bookkeeping does not add up to the dimension");
  return out;
}

// ---------------------------------------------------------------------
// Wold–Słociński
// ---------------------------------------------------------------------

struct WoldSlocinskiResult {
  CellDecomposition cells;      ///< "11" = uu, "10" = us, "01" = su, "00" = ss
  double us_identity = 0.0;     ///< ‖p_us x − Σ_i p_us x [y^i(1 − [y])]‖_F
  double su_identity = 0.0;     ///< ‖p_su y − Σ_i p_su y [x^i(1 − [x])]‖_F
  double ss_identity = 0.0;     ///< ‖p_ss − Σ_{m,n} [p_ss x^m y^n (1 − [x])(1 − [y])]‖_F
  /// max_m ‖[x^m(1−[x])] − ([x^m] − [x^{m+1}])‖ over x and y; beyond the
  /// isometric hypotheses for non-isometries.
  double extended_defect_identity = 0.0;

  const Projection& uu() const { return cells.cell("11"); }
  const Projection& us() const { return cells.cell("10"); }
  const Projection& su() const { return cells.cell("01"); }
  const Projection& ss() const { return cells.cell("00"); }
};

inline double extended_defect_check(const ComplexMatrix& x, const ToleranceProfile& tol) {
  double worst = 0.0;
  for (int m = 0; m <= static_cast<int>(x.rows()); ++m) worst = std::max(worst, defect_identity_residual(x, m, tol));
  return worst;
}

inline WoldSlocinskiResult wold_slocinski(const ComplexMatrix& x, const ComplexMatrix& y, const ToleranceProfile& tol) {
  const TupleInstance t({x, y}, {"x", "y"});
  const Eigen::Index n = t.dim();
  for (const auto* m : {&x, &y}) {
    const double d = isometry_defect(*m);
    if (d > isometry_threshold(*m, tol))
      throw PreconditionError("wold_slocinski: input is not an isometry, ||x*x - 1||_F = " + std::to_string(d), d);
  }
  const ComplexMatrix ys = y.adjoint();
  for (const auto* b : {&y, &ys}) {
    const double r = commutation_residual(x, *b);
    if (r > commutation_threshold(x, *b, tol))
      throw PreconditionError("wold_slocinski: pair is not doubly commuting", r);
  }

  const PropertySpec unitary = builtin_property("unitary", n);
  WoldSlocinskiResult out;
  out.cells = combine_properties(t, {lift(unitary, {0}, 2, "[x]"), lift(unitary, {1}, 2, "[y]")}, tol);

  std::vector<ComplexMatrix> dx, dy;
  for (int i = 0; i <= static_cast<int>(n); ++i) {
    dx.push_back(defect_projection(x, i, tol).matrix());
    dy.push_back(defect_projection(y, i, tol).matrix());
  }

  const ComplexMatrix& pus = out.us().matrix();
  const ComplexMatrix& psu = out.su().matrix();
  const ComplexMatrix& pss = out.ss().matrix();
  ComplexMatrix sum_us = ComplexMatrix::Zero(n, n), sum_su = ComplexMatrix::Zero(n, n);
  for (int i = 0; i <= static_cast<int>(n); ++i) {
    sum_us += pus * x * dy[static_cast<std::size_t>(i)];
    sum_su += psu * y * dx[static_cast<std::size_t>(i)];
  }
  out.us_identity = (pus * x - sum_us).norm();
  out.su_identity = (psu * y - sum_su).norm();

  const ComplexMatrix kx = identity(n) - left_projection(x, tol).matrix();
  const ComplexMatrix ky = identity(n) - left_projection(y, tol).matrix();
  ComplexMatrix sum_ss = ComplexMatrix::Zero(n, n);
  ComplexMatrix xm = identity(n);
  for (int m = 0; m <= static_cast<int>(n); ++m) {
    ComplexMatrix yk = identity(n);
    for (int k = 0; k <= static_cast<int>(n); ++k) {
      sum_ss += left_projection(ComplexMatrix(pss * xm * yk * kx * ky), tol, 1.0).matrix();
      yk = yk * y;
    }
    xm = xm * x;
  }
  out.ss_identity = (pss - sum_ss).norm();
  out.extended_defect_identity = std::max(extended_defect_check(x, tol), extended_defect_check(y, tol));
  return out;
}

}  // namespace baerdec

#endif  // BAERDEC_STRUCTURE_HPP
