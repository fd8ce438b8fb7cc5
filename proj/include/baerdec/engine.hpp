// Maximal property projections and the decompositions built from them.
//
// For a tuple x and a family {F_i} with F_i(q x) = q F_i(x), the projection
//
//     p = sup { q projection, q commutes with x, q ≤ 1 − [F_i(x)] for all i }
//
// splits x into p x, which has the property, and (1 − p) x, which
// completely lacks it. In M_n(C) a projection commutes with every x_j iff
// its range reduces every x_j (is invariant under x_j and x_j*), and
// q ≤ 1 − [F] iff ran q ⊂ ker F*. So p projects onto the largest subspace
// of S = ∩_i ker F_i(x)* invariant under all x_j and x_j*, reached by
//
//     V_0 = S,   V_{k+1} = V_k ∩ ∩_j x_j^{-1}(V_k) ∩ ∩_j (x_j*)^{-1}(V_k)
//
// which strictly decreases in dimension until it stops, so at most dim
// steps.

#ifndef BAERDEC_ENGINE_HPP
#define BAERDEC_ENGINE_HPP

#include "properties.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace baerdec {

struct AuditResult {
  Eigen::Index rank = 0;   ///< rank of the engine projection in the complement corner
  double residual = 0.0;   ///< largest functional residual of that projection
};

struct DecompositionReport {
  std::string property;
  Projection projection;
  std::vector<std::string> functional_labels;
  std::vector<double> residuals;              ///< ‖F_i(p x)‖_F in the corner
  std::vector<double> commutation_residuals;  ///< ‖p x_j − x_j p‖_F
  double functional_scale = 1.0;
  int iterations = 0;
  Eigen::Index constraint_rank = 0;           ///< dim S
  std::vector<std::size_t> dimension_trace;   ///< dim V_0, dim V_1, …
  std::optional<AuditResult> complement_audit;
  ToleranceProfile tolerance;                 ///< profile that produced the result
  bool retried = false;

  double max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
  }
};

struct EngineOptions {
  bool audit = true;  ///< rerun the engine on the complement corner
};

namespace detail {

/// ∩_i ker(F_i*), each F_i normalized by its own scale so a single
/// cutoff rank_rel applies.
inline Frame constraint_subspace(const PropertySpec& spec, const TupleInstance& t,
                                 const std::vector<ComplexMatrix>& values, const ToleranceProfile& tol) {
  const Eigen::Index n = t.dim();
  const double base = 1.0 + t.max_frobenius();
  ComplexMatrix stacked(n * static_cast<Eigen::Index>(values.size()), n);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double scale = std::pow(base, spec.functionals[i].polynomial.degree());
    stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) = values[i].adjoint() / scale;
  }
  return kernel_frame_with_cutoff(stacked, tol.rank_rel);
}

/// Largest subspace of span(v) invariant under every x_j and x_j*.
inline Frame largest_reducing_subspace(const TupleInstance& t, Frame v, const ToleranceProfile& tol,
                                       std::vector<std::size_t>& trace, int& iterations) {
  const Eigen::Index n = t.dim();
  const double scale = t.max_spectral();
  const int max_iter = static_cast<int>(n) + tol.max_iter_slack;
  trace.push_back(static_cast<std::size_t>(v.size()));
  if (scale == 0.0) return v;  // every subspace reduces the zero tuple

  std::vector<ComplexMatrix> ops;
  for (const auto& x : t.elements()) {
    if (x.norm() == 0.0) continue;
    ops.push_back(x);
    ops.push_back(x.adjoint());
  }

  for (;;) {
    if (v.empty()) return v;
    if (iterations >= max_iter)
      throw NumericalInstabilityError("subspace iteration did not stabilize within " + std::to_string(max_iter) +
                                          " steps",
                                      trace);
    const ComplexMatrix& b = v.basis();
    const Eigen::Index k = b.cols();
    ComplexMatrix stacked(n * static_cast<Eigen::Index>(ops.size()), k);
    for (std::size_t j = 0; j < ops.size(); ++j) {
      const ComplexMatrix ab = ops[j] * b;
      stacked.middleRows(static_cast<Eigen::Index>(j) * n, n) = ab - b * (b.adjoint() * ab);
    }
    const Frame kernel = kernel_frame_with_cutoff(stacked, tol.rank_rel * scale);
    ++iterations;
    trace.push_back(static_cast<std::size_t>(kernel.size()));
    if (kernel.size() == k) return v;
    v = Frame(b * kernel.basis());
  }
}

inline DecompositionReport run_engine(const TupleInstance& t, const PropertySpec& spec, const ToleranceProfile& tol) {
  DecompositionReport rep;
  rep.property = spec.name;
  rep.tolerance = tol;
  rep.functional_scale = functional_scale(spec, t);
  for (const auto& f : spec.functionals) rep.functional_labels.push_back(f.label);

  const Eigen::Index n = t.dim();
  const auto values = evaluate(spec, t, tol);

  if (n == 1) {
    // Only 0 and 1 are projections: p = 1 iff every functional vanishes.
    const Frame s = constraint_subspace(spec, t, values, tol);
    rep.constraint_rank = s.size();
    rep.dimension_trace = {static_cast<std::size_t>(s.size())};
    rep.projection = Projection(s.size() == 1 ? Frame::full(1) : Frame::zero(1));
    return rep;
  }

  Frame s = n == 0 ? Frame::zero(0) : constraint_subspace(spec, t, values, tol);
  rep.constraint_rank = s.size();
  Frame v = largest_reducing_subspace(t, std::move(s), tol, rep.dimension_trace, rep.iterations);
  rep.projection = Projection(std::move(v));
  return rep;
}

}  // namespace detail

inline DecompositionReport max_property_projection(const TupleInstance& t, const PropertySpec& spec,
                                                   const ToleranceProfile& tol, EngineOptions opts = {});

/// Compresses t to the (1 − p) corner and reruns the engine there. A
/// nonzero rank means p was not maximal.
inline AuditResult audit_complete_absence(const TupleInstance& t, const PropertySpec& spec, const Projection& p,
                                          const ToleranceProfile& tol) {
  const Projection rest = p.complement();
  if (rest.rank() == 0) return {};
  const TupleInstance corner = corner_compress(t, rest);
  const DecompositionReport inner = max_property_projection(corner, spec, tol, {.audit = false});
  return {inner.projection.rank(), inner.max_residual()};
}

namespace detail {

/// Fills residuals and audit; returns an empty string if every
/// postcondition holds, else a description of the first failure.
inline std::string check_postconditions(DecompositionReport& rep, const TupleInstance& t, const PropertySpec& spec,
                                        const ToleranceProfile& tol, bool audit) {
  const Projection& p = rep.projection;
  const Eigen::Index n = t.dim();
  std::string failure;

  if (p.projection_defect() > 1e-10 * static_cast<double>(std::max<Eigen::Index>(n, 1)))
    failure = "projection is not self-adjoint idempotent";

  rep.commutation_residuals.clear();
  for (std::size_t j = 0; j < t.size(); ++j) {
    const double r = commutation_residual(p.matrix(), t[j]);
    rep.commutation_residuals.push_back(r);
    if (failure.empty() && r > commutation_threshold(p.matrix(), t[j], tol))
      failure = "projection does not commute with " + t.label(j);
  }

  rep.residuals.clear();
  for (const auto& v : evaluate_in_corner(spec, t, p, tol)) rep.residuals.push_back(v.norm());
  for (std::size_t i = 0; i < rep.residuals.size(); ++i)
    if (failure.empty() && rep.residuals[i] > tol.res_rel * rep.functional_scale)
      failure = "functional " + rep.functional_labels[i] + " does not vanish on the compression";

  if (audit) {
    rep.complement_audit = audit_complete_absence(t, spec, p, tol);
    if (failure.empty() && rep.complement_audit->rank != 0)
      failure = "complement corner still contains a part with the property (rank " +
                std::to_string(rep.complement_audit->rank) + ")";
  }
  return failure;
}

}  // namespace detail

/// The unique projection p commuting with t such that p t has the property
/// and (1 − p) t completely lacks it. On a postcondition failure the
/// computation is repeated once with rank_rel / 100.
inline DecompositionReport max_property_projection(const TupleInstance& t, const PropertySpec& spec,
                                                   const ToleranceProfile& tol, EngineOptions opts) {
  tol.validate();
  spec.validate();
  detail::check_arity(spec, t);

  DecompositionReport rep = detail::run_engine(t, spec, tol);
  std::string failure = detail::check_postconditions(rep, t, spec, tol, opts.audit);
  if (failure.empty()) return rep;

  const ToleranceProfile tight = tol.tightened(100.0);
  DecompositionReport again = detail::run_engine(t, spec, tight);
  again.retried = true;
  // Residual acceptance stays at the caller's level.
  std::string failure2 = detail::check_postconditions(again, t, spec, tol, opts.audit);
  again.tolerance = tight;
  if (failure2.empty()) return again;
  throw ConsistencyError("max_property_projection(" + spec.name + "): " + failure2 +
                         " (also after tightening the rank tolerance)");
}

// ---------------------------------------------------------------------
// Several properties
// ---------------------------------------------------------------------

struct Cell {
  std::string pattern;  ///< '1' = part with property k, '0' = part completely without
  Projection projection;
};

struct CellDecomposition {
  std::vector<std::string> properties;
  std::vector<DecompositionReport> reports;   ///< one per property
  std::vector<Cell> cells;                    ///< 2^k cells, "11…1" first
  double max_pairwise_commutator = 0.0;       ///< max ‖p_a p_b − p_b p_a‖_F
  double max_product_law_defect = 0.0;        ///< max ‖p_a p_b − p_{a∪b}‖_F
  double partition_defect = 0.0;              ///< ‖Σ cells − 1‖_F
  double max_cell_overlap = 0.0;              ///< max ‖c_a c_b‖_F over distinct cells

  const Projection& cell(std::string_view pattern) const {
    for (const auto& c : cells)
      if (c.pattern == pattern) return c.projection;
    throw LookupError("no cell '" + std::string(pattern) + "'");
  }
};

inline constexpr double kProductLawTol = 1e-6;
inline constexpr double kCommuteTol = 1e-8;

namespace detail {

inline void fill_partition_metrics(CellDecomposition& out, Eigen::Index n) {
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& c : out.cells) sum += c.projection.matrix();
  out.partition_defect = (sum - identity(n)).norm();
  out.max_cell_overlap = 0.0;
  for (std::size_t a = 0; a < out.cells.size(); ++a)
    for (std::size_t b = a + 1; b < out.cells.size(); ++b)
      out.max_cell_overlap =
          std::max(out.max_cell_overlap, (out.cells[a].projection.matrix() * out.cells[b].projection.matrix()).norm());
}

inline CellDecomposition combine_once(const TupleInstance& t, const std::vector<PropertySpec>& specs,
                                      const ToleranceProfile& tol) {
  const Eigen::Index n = t.dim();
  CellDecomposition out;
  for (const auto& s : specs) {
    out.properties.push_back(s.name);
    out.reports.push_back(max_property_projection(t, s, tol));
  }

  // Pairwise: the projections commute and their product is the projection
  // of the combined property.
  for (std::size_t a = 0; a < specs.size(); ++a)
    for (std::size_t b = a + 1; b < specs.size(); ++b) {
      const auto& pa = out.reports[a].projection.matrix();
      const auto& pb = out.reports[b].projection.matrix();
      const double comm = commutation_residual(pa, pb);
      out.max_pairwise_commutator = std::max(out.max_pairwise_commutator, comm);
      if (comm > kCommuteTol)
        throw ConsistencyError("projections for " + specs[a].name + " and " + specs[b].name +
                               " do not commute (" + std::to_string(comm) + ")");
      const auto joint = max_property_projection(t, conjunction(specs[a], specs[b]), tol, {.audit = false});
      const double law = (pa * pb - joint.projection.matrix()).norm();
      out.max_product_law_defect = std::max(out.max_product_law_defect, law);
      if (law > kProductLawTol)
        throw ConsistencyError("product of the projections for " + specs[a].name + " and " + specs[b].name +
                               " differs from the combined property projection (" + std::to_string(law) + ")");
    }

  const std::size_t k = specs.size();
  const std::size_t count = std::size_t{1} << k;
  for (std::size_t idx = 0; idx < count; ++idx) {
    // idx 0 is "11…1"
    std::string pattern(k, '1');
    ComplexMatrix prod = identity(n);
    for (std::size_t s = 0; s < k; ++s) {
      const bool without = (idx >> (k - 1 - s)) & 1u;
      pattern[s] = without ? '0' : '1';
      const auto& p = out.reports[s].projection.matrix();
      prod = prod * (without ? ComplexMatrix(identity(n) - p) : p);
    }
    out.cells.push_back({pattern, Projection::from_matrix(prod)});
  }
  fill_partition_metrics(out, n);
  return out;
}

}  // namespace detail

/// Decomposes t by every combination of the given properties: the 2^k
/// cells Π_k p_k^{(ε_k)} with p^{(1)} = p, p^{(0)} = 1 − p.
inline CellDecomposition combine_properties(const TupleInstance& t, const std::vector<PropertySpec>& specs,
                                            const ToleranceProfile& tol) {
  if (specs.empty()) throw InputError("combine_properties needs at least one property");
  for (const auto& s : specs) detail::check_arity(s, t);
  try {
    return detail::combine_once(t, specs, tol);
  } catch (const ConsistencyError&) {
    return detail::combine_once(t, specs, tol.tightened(100.0));
  }
}

/// Quaternary decomposition of a pair by commutativity and compatibility.
inline CellDecomposition quad_decompose(const ComplexMatrix& x, const ComplexMatrix& y, const ToleranceProfile& tol) {
  const TupleInstance t({x, y}, {"x", "y"});
  return combine_properties(t, {builtin_property("commuting", t.dim()), builtin_property("compatible", t.dim())},
                            tol);
}

// ---------------------------------------------------------------------
// Doubly commuting ≤ compatible
// ---------------------------------------------------------------------

struct TripleDecomposition {
  DecompositionReport doubly_commuting;  ///< p
  DecompositionReport compatible;        ///< q
  Projection dc_part;                    ///< p
  Projection compatible_only;            ///< q − p
  Projection rest;                       ///< 1 − q
  double order_defect = 0.0;             ///< ‖q p − p‖_F
};

/// x = p x + (q − p) x + (1 − q) x: doubly commuting, compatible but
/// completely not doubly commuting, completely not compatible.
inline TripleDecomposition triple_decompose(const ComplexMatrix& x, const ComplexMatrix& y, const ToleranceProfile& tol) {
  const TupleInstance t({x, y}, {"x", "y"});
  TripleDecomposition out;
  out.doubly_commuting = max_property_projection(t, builtin_property("doubly_commuting", t.dim()), tol);
  out.compatible = max_property_projection(t, builtin_property("compatible", t.dim()), tol);
  const Projection& p = out.doubly_commuting.projection;
  const Projection& q = out.compatible.projection;
  out.order_defect = order_defect(p, q);
  if (out.order_defect > kProductLawTol)
    throw ConsistencyError("doubly commuting part is not below the compatible part (" +
                           std::to_string(out.order_defect) + ")");
  out.dc_part = p;
  out.compatible_only = Projection::from_matrix(q.matrix() - p.matrix());
  out.rest = q.complement();
  return out;
}

// ---------------------------------------------------------------------
// Canonical decomposition of a pair
// ---------------------------------------------------------------------

struct CanonicalVerdict {
  bool exists = false;
  DecompositionReport p_x, p_y;  ///< property of x alone, of y alone
  DecompositionReport q_x, q_y;  ///< same, but commuting with both x and y
  /// ‖[p_x, x]‖, ‖[p_x, y]‖, ‖[p_y, x]‖, ‖[p_y, y]‖
  std::array<double, 4> commutation{};
  bool commutation_ok = false;
  bool equality_ok = false;
  double q_x_order_defect = 0.0;  ///< ‖p_x q_x − q_x‖
  double q_y_order_defect = 0.0;
  std::vector<Cell> cells;        ///< "11", "10", "01", "00" when exists
};

/// Decides whether (x, y) admits a canonical decomposition for a
/// single-element property, via the equivalence
/// p_x, p_y commute with x and y  ⇔  p_x = q_x and p_y = q_y.
inline CanonicalVerdict canonical_decompose(const ComplexMatrix& x, const ComplexMatrix& y, const PropertySpec& spec,
                                            const ToleranceProfile& tol) {
  if (spec.arity != 1) throw InputError("canonical decomposition needs a single-element property");
  const TupleInstance tx({x}, {"x"});
  const TupleInstance ty({y}, {"y"});
  const TupleInstance txy({x, y}, {"x", "y"});
  const Eigen::Index n = txy.dim();

  CanonicalVerdict v;
  v.p_x = max_property_projection(tx, spec, tol);
  v.p_y = max_property_projection(ty, spec, tol);
  v.q_x = max_property_projection(txy, lift(spec, {0}, 2, "[x]"), tol);
  v.q_y = max_property_projection(txy, lift(spec, {1}, 2, "[y]"), tol);

  const Projection& px = v.p_x.projection;
  const Projection& py = v.p_y.projection;
  v.q_x_order_defect = order_defect(v.q_x.projection, px);
  v.q_y_order_defect = order_defect(v.q_y.projection, py);
  if (v.q_x_order_defect > kProductLawTol || v.q_y_order_defect > kProductLawTol)
    throw ConsistencyError("joint property projection is not below the individual one");

  v.commutation = {commutation_residual(px.matrix(), x), commutation_residual(px.matrix(), y),
                   commutation_residual(py.matrix(), x), commutation_residual(py.matrix(), y)};
  v.commutation_ok = commutes(px.matrix(), x, tol) && commutes(px.matrix(), y, tol) &&
                     commutes(py.matrix(), x, tol) && commutes(py.matrix(), y, tol);
  v.equality_ok = same_projection(px, v.q_x.projection, kProductLawTol) &&
                  same_projection(py, v.q_y.projection, kProductLawTol);
  if (v.commutation_ok != v.equality_ok)
    throw ConsistencyError("canonical decomposition criteria disagree (commutation " +
                           std::string(v.commutation_ok ? "holds" : "fails") + ", equality " +
                           (v.equality_ok ? "holds" : "fails") + ")");
  v.exists = v.commutation_ok;
  if (v.exists) {
    const ComplexMatrix one = identity(n);
    const ComplexMatrix& a = px.matrix();
    const ComplexMatrix& b = py.matrix();
    v.cells = {{"11", Projection::from_matrix(a * b)},
               {"10", Projection::from_matrix(a * (one - b))},
               {"01", Projection::from_matrix((one - a) * b)},
               {"00", Projection::from_matrix((one - a) * (one - b))}};
  }
  return v;
}

}  // namespace baerdec

#endif  // BAERDEC_ENGINE_HPP
