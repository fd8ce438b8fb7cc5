// JSON encodings of results. Complex numbers are [re, im] pairs; a
// projection is given by an orthonormal frame, one basis vector per row,
// so that p = Σ_rows v* v with v a row.

#ifndef BAERDEC_REPORT_HPP
#define BAERDEC_REPORT_HPP

#include "structure.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace baerdec::report {

using json = nlohmann::ordered_json;

inline json complex_value(cplx z) { return json::array({z.real(), z.imag()}); }

inline json matrix_rows(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_value(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Frame basis vectors as rows.
inline json projection_frame(const Projection& p) { return matrix_rows(p.frame().basis().transpose()); }

inline json tolerance(const ToleranceProfile& t) {
  return {{"rank_rel", t.rank_rel}, {"res_rel", t.res_rel}, {"max_iter_slack", t.max_iter_slack}};
}

inline json seed_value(std::optional<std::uint64_t> seed) { return seed ? json(*seed) : json(nullptr); }

inline json projection(const Projection& p) {
  return {{"rank", p.rank()}, {"dim", p.dim()}, {"projection", projection_frame(p)}};
}

inline json decomposition(const DecompositionReport& r, const TupleInstance& t) {
  json functional = json::object();
  for (std::size_t i = 0; i < r.residuals.size(); ++i) functional[r.functional_labels[i]] = r.residuals[i];
  json commutation = json::object();
  for (std::size_t j = 0; j < r.commutation_residuals.size(); ++j) commutation[t.label(j)] = r.commutation_residuals[j];
  json audit = nullptr;
  if (r.complement_audit) audit = {{"rank", r.complement_audit->rank}, {"residual", r.complement_audit->residual}};
  return {{"property", r.property},
          {"rank", r.projection.rank()},
          {"dim", r.projection.dim()},
          {"projection", projection_frame(r.projection)},
          {"residuals",
           {{"projection", r.projection.projection_defect()},
            {"functional", std::move(functional)},
            {"functional_scale", r.functional_scale},
            {"commutation", std::move(commutation)}}},
          {"iterations", r.iterations},
          {"constraint_rank", r.constraint_rank},
          {"dimension_trace", r.dimension_trace},
          {"audit", std::move(audit)},
          {"tolerance", tolerance(r.tolerance)},
          {"retried", r.retried}};
}

inline json cells(const CellDecomposition& d, const TupleInstance& t) {
  json reports = json::array();
  for (const auto& r : d.reports) reports.push_back(decomposition(r, t));
  json cs = json::array();
  for (const auto& c : d.cells) {
    json j = projection(c.projection);
    j["pattern"] = c.pattern;
    cs.push_back(std::move(j));
  }
  return {{"properties", d.properties},
          {"reports", std::move(reports)},
          {"cells", std::move(cs)},
          {"residuals",
           {{"max_pairwise_commutator", d.max_pairwise_commutator},
            {"max_product_law_defect", d.max_product_law_defect},
            {"partition_defect", d.partition_defect},
            {"max_cell_overlap", d.max_cell_overlap}}}};
}

inline json shift_profile(const ShiftProfile& p) {
  json mult = json::object();
  for (const auto& [k, m] : p.multiplicities) mult[std::to_string(k)] = m;
  return {{"unitary_rank", p.unitary_projection.rank()},
          {"unitary_projection", projection_frame(p.unitary_projection)},
          {"multiplicities", std::move(mult)},
          {"pure_isometry_rank", p.pure_isometry_rank},
          {"pure_coisometry_rank", p.pure_coisometry_rank},
          {"remainder_rank", p.remainder.rank()}};
}

}  // namespace baerdec::report

#endif  // BAERDEC_REPORT_HPP
