// The `baerdec` command line. run_command is the whole program minus
// process plumbing, so it can be driven from tests.
//
// Exit codes: 0 success, 1 negative verdict, 2 input error,
// 3 internal consistency or numerical failure.

#ifndef BAERDEC_CLI_HPP
#define BAERDEC_CLI_HPP

#include "functional_parser.hpp"
#include "matrix_io.hpp"
#include "report.hpp"
#include "selfcheck.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace baerdec::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kConsistencyError = 3 };

struct Options {
  double tol_rank = ToleranceProfile{}.rank_rel;
  double tol_res = ToleranceProfile{}.res_rel;
  std::optional<std::uint64_t> seed;
  bool json = false;
  std::vector<std::string> names;
  std::vector<std::string> properties;
  std::vector<std::string> functionals;
  std::string in, out;
  std::string variant = "y";
  int power = 1;
  bool right = false;
  bool conjugate = false;
  Eigen::Index dim = 6;
  std::string multiplicities;
  Eigen::Index unitary_dim = 0;
  std::string lattice_op;

  ToleranceProfile tolerance() const {
    ToleranceProfile t;
    t.rank_rel = tol_rank;
    t.res_rel = tol_res;
    t.validate();
    return t;
  }
};

namespace detail {

inline std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string piece;
    while (std::getline(ss, piece, ','))
      if (!piece.empty()) out.push_back(piece);
  }
  return out;
}

inline std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("BAERDEC_SEED")) {
    std::uint64_t v = 0;
    const std::string s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw InputError("BAERDEC_SEED must be a nonnegative integer");
    return v;
  }
  return 0;
}

inline TupleInstance load_tuple(const Options& o, std::size_t min_arity, std::size_t max_arity) {
  if (o.in.empty()) throw InputError("--in <file> is required");
  const MatrixFile file = read_matrix_file(o.in);
  std::vector<std::string> names = split_list(o.names);
  if (names.empty())
    for (const auto& b : file.blocks()) names.push_back(b.name);
  if (names.size() < min_arity || names.size() > max_arity) {
    const std::string want = min_arity == max_arity ? std::to_string(min_arity)
                                                    : std::to_string(min_arity) + " or more";
    throw InputError("expected " + want + " matrices, got " + std::to_string(names.size()));
  }
  std::vector<ComplexMatrix> elems;
  for (const auto& n : names) elems.push_back(file.at(n));
  return TupleInstance(std::move(elems), std::move(names));
}

inline std::vector<std::string> symbols_of(const TupleInstance& t) {
  std::vector<std::string> s;
  for (std::size_t j = 0; j < t.size(); ++j) s.push_back(t.label(j));
  return s;
}

/// A built-in name resolves against the tuple arity: single-element
/// properties on a longer tuple apply to every entry.
inline PropertySpec resolve_builtin(const std::string& name, const TupleInstance& t) {
  PropertySpec spec = builtin_property(name, t.dim());
  if (spec.arity == 1 && t.size() > 1) return family(spec, static_cast<int>(t.size()));
  return spec;
}

/// Every --property (comma lists allowed) and every --functional, in order.
inline std::vector<PropertySpec> resolve_properties(const Options& o, const TupleInstance& t) {
  std::vector<PropertySpec> specs;
  for (const auto& name : split_list(o.properties)) specs.push_back(resolve_builtin(name, t));
  for (std::size_t i = 0; i < o.functionals.size(); ++i)
    specs.push_back(parse_property(o.functionals[i], symbols_of(t),
                                   o.functionals.size() == 1 ? "user" : "user" + std::to_string(i + 1)));
  return specs;
}

inline PropertySpec single_property(const Options& o, const TupleInstance& t) {
  auto specs = resolve_properties(o, t);
  if (specs.empty()) throw InputError("give --property <name> or --functional <expr>");
  if (specs.size() == 1) return specs.front();
  PropertySpec joint = specs.front();
  for (std::size_t i = 1; i < specs.size(); ++i) joint = conjunction(joint, specs[i]);
  return joint;
}

inline std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

inline std::string short_entry(cplx z) {
  std::ostringstream os;
  os << std::setprecision(6) << z.real() + 0.0 << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "j";
  return os.str();
}

inline void print_frame(std::ostream& os, const Projection& p, const std::string& indent = "  ") {
  const ComplexMatrix rows = p.frame().basis().transpose();
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    os << indent;
    for (Eigen::Index c = 0; c < rows.cols(); ++c) os << (c ? " " : "") << short_entry(rows(r, c));
    os << "\n";
  }
}

inline void print_report(std::ostream& os, const DecompositionReport& r, const TupleInstance& t) {
  os << "property " << r.property << ": rank " << r.projection.rank() << " of " << r.projection.dim() << "\n";
  os << "  iterations " << r.iterations << ", constraint rank " << r.constraint_rank << ", dimension trace";
  for (auto d : r.dimension_trace) os << " " << d;
  os << "\n  projection defect " << sci(r.projection.projection_defect()) << "\n";
  for (std::size_t i = 0; i < r.residuals.size(); ++i)
    os << "  residual " << r.functional_labels[i] << " = " << sci(r.residuals[i]) << "\n";
  for (std::size_t j = 0; j < r.commutation_residuals.size(); ++j)
    os << "  commutation with " << t.label(j) << " = " << sci(r.commutation_residuals[j]) << "\n";
  if (r.complement_audit)
    os << "  audit: rank " << r.complement_audit->rank << ", residual " << sci(r.complement_audit->residual) << "\n";
  os << "  tolerance: rank " << r.tolerance.rank_rel << ", residual " << r.tolerance.res_rel
     << (r.retried ? " (retried)" : "") << "\n";
  if (r.projection.rank() > 0) {
    os << "  frame:\n";
    print_frame(os, r.projection, "    ");
  }
}

inline void print_cells(std::ostream& os, const CellDecomposition& d, const TupleInstance& t) {
  for (const auto& r : d.reports) print_report(os, r, t);
  os << "cells:\n";
  for (const auto& c : d.cells) os << "  " << c.pattern << ": rank " << c.projection.rank() << "\n";
  os << "  max commutator " << sci(d.max_pairwise_commutator) << ", max product-law defect "
     << sci(d.max_product_law_defect) << ", partition defect " << sci(d.partition_defect) << ", max overlap "
     << sci(d.max_cell_overlap) << "\n";
}

inline void write_projections(const Options& o, const std::vector<std::pair<std::string, const Projection*>>& ps) {
  if (o.out.empty()) return;
  MatrixFile f;
  for (const auto& [name, p] : ps) f.add(name, p->matrix());
  write_matrix_file(o.out, f);
}

/// Writes to --out, or to `os` when no file is given.
inline void emit_matrix_file(const Options& o, const MatrixFile& f, std::ostream& os) {
  if (o.out.empty())
    os << serialize_matrix_file(f);
  else
    write_matrix_file(o.out, f);
}

inline std::string cell_name(const std::string& pattern) { return "p" + pattern; }

inline std::map<int, int> parse_multiplicities(const std::string& text) {
  std::map<int, int> out;
  for (const auto& item : split_list({text})) {
    const auto colon = item.find(':');
    int k = 0, m = 0;
    try {
      if (colon == std::string::npos) throw std::invalid_argument(item);
      std::size_t used = 0;
      k = std::stoi(item.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument(item);
      const std::string rest = item.substr(colon + 1);
      m = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InputError("multiplicities are 'length:count' pairs, got '" + item + "'");
    }
    out[k] += m;
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------

inline int cmd_decompose(const Options& o, std::ostream& out) {
  const auto tol = o.tolerance();
  const TupleInstance t = detail::load_tuple(o, 1, 64);
  const PropertySpec spec = detail::single_property(o, t);
  const auto rep = max_property_projection(t, spec, tol);
  detail::write_projections(o, {{"p", &rep.projection}});
  if (o.json) {
    auto j = report::decomposition(rep, t);
    j["command"] = "decompose";
    j["verdict"] = "ok";
    j["seed"] = detail::resolve_seed(o);
    out << j.dump(2) << "\n";
  } else {
    detail::print_report(out, rep, t);
  }
  return kOk;
}

inline int cmd_combine(const Options& o, std::ostream& out) {
  const auto tol = o.tolerance();
  const TupleInstance t = detail::load_tuple(o, 1, 64);
  const auto specs = detail::resolve_properties(o, t);
  if (specs.empty()) throw InputError("give at least one --property or --functional");
  const auto d = combine_properties(t, specs, tol);
  std::vector<std::pair<std::string, const Projection*>> ps;
  for (const auto& c : d.cells) ps.push_back({detail::cell_name(c.pattern), &c.projection});
  detail::write_projections(o, ps);
  if (o.json) {
    auto j = report::cells(d, t);
    j["command"] = "combine";
    j["verdict"] = "ok";
    j["seed"] = detail::resolve_seed(o);
    out << j.dump(2) << "\n";
  } else {
    detail::print_cells(out, d, t);
  }
  return kOk;
}

inline int cmd_quad(const Options& o, std::ostream& out) {
  const auto tol = o.tolerance();
  const TupleInstance t = detail::load_tuple(o, 2, 2);
  const auto d = quad_decompose(t[0], t[1], tol);
  std::vector<std::pair<std::string, const Projection*>> ps;
  for (const auto& c : d.cells) ps.push_back({detail::cell_name(c.pattern), &c.projection});
  detail::write_projections(o, ps);
  if (o.json) {
    auto j = report::cells(d, t);
    j["command"] = "quad";
    j["verdict"] = "ok";
    j["seed"] = detail::resolve_seed(o);
    out << j.dump(2) << "\n";
  } else {
    detail::print_cells(out, d, t);
  }
  return kOk;
}

inline int cmd_triple(const Options& o, std::ostream& out) {
  const auto tol = o.tolerance();
  const TupleInstance t = detail::load_tuple(o, 2, 2);
  const auto d = triple_decompose(t[0], t[1], tol);
  detail::write_projections(o, {{"p_dc", &d.dc_part}, {"p_compatible_only", &d.compatible_only}, {"p_rest", &d.rest}});
  if (o.json) {
    report::json j = {{"command", "triple"},
                      {"verdict", "ok"},
                      {"seed", detail::resolve_seed(o)},
                      {"doubly_commuting", report::decomposition(d.doubly_commuting, t)},
                      {"compatible", report::decomposition(d.compatible, t)},
                      {"parts",
                       {{"doubly_commuting", report::projection(d.dc_part)},
                        {"compatible_only", report::projection(d.compatible_only)},
                        {"rest", report::projection(d.rest)}}},
                      {"residuals", {{"order_defect", d.order_defect}}}};
    out << j.dump(2) << "\n";
  } else {
    detail::print_report(out, d.doubly_commuting, t);
    detail::print_report(out, d.compatible, t);
    out << "parts: doubly commuting rank " << d.dc_part.rank() << ", compatible only rank "
        << d.compatible_only.rank() << ", rest rank " << d.rest.rank() << "\n";
    out << "  order defect " << detail::sci(d.order_defect) << "\n";
  }
  return kOk;
}

inline int cmd_canonical(const Options& o, std::ostream& out) {
  const auto tol = o.tolerance();
  const TupleInstance t = detail::load_tuple(o, 2, 2);
  std::vector<std::string> props = detail::split_list(o.properties);
  PropertySpec spec;
  if (!o.functionals.empty()) {
    if (!props.empty()) throw InputError("give either --property or --functional, not both");
    spec = detail::single_property(o, TupleInstance({t[0]}, {"x"}));
  } else {
    if (props.size() > 1) throw InputError("canonical takes a single property");
    spec = builtin_property(props.empty() ? "normal" : props.front(), t.dim());
  }
  const auto v = canonical_decompose(t[0], t[1], spec, tol);
  std::vector<std::pair<std::string, const Projection*>> ps = {{"p_x", &v.p_x.projection},
                                                               {"p_y", &v.p_y.projection}};
  for (const auto& c : v.cells) ps.push_back({detail::cell_name(c.pattern), &c.projection});
  detail::write_projections(o, ps);
  const TupleInstance tx({t[0]}, {t.label(0)});
  const TupleInstance ty({t[1]}, {t.label(1)});
  if (o.json) {
    report::json cells = report::json::array();
    for (const auto& c : v.cells) {
      auto j = report::projection(c.projection);
      j["pattern"] = c.pattern;
      cells.push_back(std::move(j));
    }
    report::json j = {{"command", "canonical"},
                      {"verdict", v.exists ? "EXISTS" : "NO"},
                      {"seed", detail::resolve_seed(o)},
                      {"property", spec.name},
                      {"p_x", report::decomposition(v.p_x, tx)},
                      {"p_y", report::decomposition(v.p_y, ty)},
                      {"q_x", report::decomposition(v.q_x, t)},
                      {"q_y", report::decomposition(v.q_y, t)},
                      {"residuals",
                       {{"commutation", v.commutation},
                        {"q_x_order_defect", v.q_x_order_defect},
                        {"q_y_order_defect", v.q_y_order_defect}}},
                      {"criteria", {{"commutation", v.commutation_ok}, {"equality", v.equality_ok}}},
                      {"cells", std::move(cells)}};
    out << j.dump(2) << "\n";
  } else {
    out << "canonical decomposition for " << spec.name << ": " << (v.exists ? "EXISTS" : "NO") << "\n";
    out << "  rank p_x " << v.p_x.projection.rank() << ", p_y " << v.p_y.projection.rank() << ", q_x "
        << v.q_x.projection.rank() << ", q_y " << v.q_y.projection.rank() << "\n";
    out << "  commutators [p_x,x] [p_x,y] [p_y,x] [p_y,y]:";
    for (double c : v.commutation) out << " " << detail::sci(c);
    out << "\n  order defects q_x<=p_x " << detail::sci(v.q_x_order_defect) << ", q_y<=p_y "
        << detail::sci(v.q_y_order_defect) << "\n";
    for (const auto& c : v.cells) {
      out << "  cell " << c.pattern << ": rank " << c.projection.rank() << "\n";
      if (c.projection.rank() > 0) detail::print_frame(out, c.projection, "    ");
    }
  }
  return v.exists ? kOk : kNegative;
}

inline int cmd_wold(const Options& o, std::ostream& out) {
  const auto tol = o.tolerance();
  const TupleInstance t = detail::load_tuple(o, 1, 1);
  const auto w = wold(t[0], tol);
  detail::write_projections(o, {{"p_u", &w.unitary_projection}});
  if (o.json) {
    report::json j = {{"command", "wold"},
                      {"verdict", "ok"},
                      {"seed", detail::resolve_seed(o)},
                      {"shift_rank", w.shift_rank},
                      {"unitary", report::decomposition(w.report, t)}};
    out << j.dump(2) << "\n";
  } else {
    out << "wold: unitary part rank " << w.unitary_projection.rank() << ", shift part rank " << w.shift_rank << "\n";
    detail::print_report(out, w.report, t);
  }
  return kOk;
}

inline int cmd_halmos_wallen(const Options& o, std::ostream& out) {
  const auto tol = o.tolerance();
  const TupleInstance t = detail::load_tuple(o, 1, 1);
  const auto hw = halmos_wallen(t[0], tol);
  if (hw.power_partial_isometry) detail::write_projections(o, {{"p_u", &hw.profile.unitary_projection}});
  if (o.json) {
    report::json j = {{"command", "halmos-wallen"},
                      {"verdict", hw.power_partial_isometry ? "ok" : "NO"},
                      {"seed", detail::resolve_seed(o)},
                      {"tolerance", report::tolerance(tol)}};
    if (hw.power_partial_isometry) {
      j["profile"] = report::shift_profile(hw.profile);
      j["corner_rank_sequence"] = hw.corner_rank_sequence;
    } else {
      j["residuals"] = {{"failing_power", hw.failing_power}, {"partial_isometry_residual", hw.failing_residual}};
    }
    out << j.dump(2) << "\n";
  } else if (!hw.power_partial_isometry) {
    out << "not a power partial isometry: x^" << hw.failing_power << " has ||x x* x - x||_F = "
        << detail::sci(hw.failing_residual) << "\n";
  } else {
    const auto& p = hw.profile;
    out << "power partial isometry: unitary part rank " << p.unitary_projection.rank() << "\n";
    for (const auto& [k, m] : p.multiplicities) out << "  truncated shift of length " << k << ": " << m << "\n";
    out << "  pure isometry rank " << p.pure_isometry_rank << ", pure coisometry rank " << p.pure_coisometry_rank
        << ", remainder rank " << p.remainder.rank() << "\n";
  }
  return hw.power_partial_isometry ? kOk : kNegative;
}

inline int cmd_defect(const Options& o, std::ostream& out) {
  const auto tol = o.tolerance();
  const TupleInstance t = detail::load_tuple(o, 1, 1);
  const Projection d = defect_projection(t[0], o.power, tol);
  const double identity_residual = defect_identity_residual(t[0], o.power, tol);
  detail::write_projections(o, {{"d", &d}});
  if (o.json) {
    auto j = report::projection(d);
    j["command"] = "defect";
    j["verdict"] = "ok";
    j["seed"] = detail::resolve_seed(o);
    j["power"] = o.power;
    j["residuals"] = {{"projection", d.projection_defect()}, {"power_difference_identity", identity_residual}};
    j["tolerance"] = report::tolerance(tol);
    out << j.dump(2) << "\n";
  } else {
    out << "[x^" << o.power << "(1 - [x])]: rank " << d.rank() << "\n";
    out << "  ||d - ([x^m] - [x^(m+1)])||_F = " << detail::sci(identity_residual) << "\n";
    if (d.rank() > 0) detail::print_frame(out, d);
  }
  return kOk;
}

inline int cmd_wold_slocinski(const Options& o, std::ostream& out) {
  const auto tol = o.tolerance();
  const TupleInstance t = detail::load_tuple(o, 2, 2);
  const auto w = wold_slocinski(t[0], t[1], tol);
  std::vector<std::pair<std::string, const Projection*>> ps;
  for (const auto& c : w.cells.cells) ps.push_back({detail::cell_name(c.pattern), &c.projection});
  detail::write_projections(o, ps);
  if (o.json) {
    auto j = report::cells(w.cells, t);
    j["command"] = "wold-slocinski";
    j["verdict"] = "ok";
    j["seed"] = detail::resolve_seed(o);
    j["residuals"]["us_identity"] = w.us_identity;
    j["residuals"]["su_identity"] = w.su_identity;
    j["residuals"]["ss_identity"] = w.ss_identity;
    j["residuals"]["extended_defect_identity"] = w.extended_defect_identity;
    out << j.dump(2) << "\n";
  } else {
    out << "unitary/unitary " << w.uu().rank() << ", unitary/shift " << w.us().rank() << ", shift/unitary "
        << w.su().rank() << ", shift/shift " << w.ss().rank() << "\n";
    out << "  identities: us " << detail::sci(w.us_identity) << ", su " << detail::sci(w.su_identity) << ", ss "
        << detail::sci(w.ss_identity) << ", defect " << detail::sci(w.extended_defect_identity) << "\n";
  }
  return kOk;
}

inline int cmd_leftproj(const Options& o, std::ostream& out) {
  const auto tol = o.tolerance();
  const TupleInstance t = detail::load_tuple(o, 1, 1);
  const Projection p = o.right ? right_projection(t[0], tol) : left_projection(t[0], tol);
  detail::write_projections(o, {{o.right ? "rp" : "lp", &p}});
  const double annihilation = o.right ? (t[0] * p.matrix() - t[0]).norm() : (p.matrix() * t[0] - t[0]).norm();
  if (o.json) {
    auto j = report::projection(p);
    j["command"] = "leftproj";
    j["verdict"] = "ok";
    j["seed"] = detail::resolve_seed(o);
    j["side"] = o.right ? "right" : "left";
    j["residuals"] = {{"projection", p.projection_defect()}, {"absorption", annihilation}};
    j["tolerance"] = report::tolerance(tol);
    out << j.dump(2) << "\n";
  } else {
    out << (o.right ? "right" : "left") << " projection: rank " << p.rank() << " of " << p.dim() << "\n";
    out << "  absorption residual " << detail::sci(annihilation) << "\n";
    if (p.rank() > 0) detail::print_frame(out, p);
  }
  return kOk;
}

inline int cmd_lattice(const Options& o, std::ostream& out) {
  const auto tol = o.tolerance();
  const TupleInstance t = detail::load_tuple(o, 1, 64);
  std::vector<Projection> ps;
  for (std::size_t j = 0; j < t.size(); ++j) ps.push_back(left_projection(t[j], tol));
  const bool sup = o.lattice_op == "sup";
  const Projection r = sup ? proj_sup(ps, tol, t.dim()) : proj_inf(ps, tol, t.dim());
  detail::write_projections(o, {{o.lattice_op, &r}});
  if (o.json) {
    auto j = report::projection(r);
    j["command"] = "lattice " + o.lattice_op;
    j["verdict"] = "ok";
    j["seed"] = detail::resolve_seed(o);
    j["residuals"] = {{"projection", r.projection_defect()}};
    j["tolerance"] = report::tolerance(tol);
    out << j.dump(2) << "\n";
  } else {
    out << o.lattice_op << " of " << ps.size() << " range projections: rank " << r.rank() << " of " << r.dim()
        << "\n";
    if (r.rank() > 0) detail::print_frame(out, r);
  }
  return kOk;
}

inline int cmd_gen_example(const Options& o, std::ostream& out) {
  fixtures::ExampleVariant v;
  if (o.variant == "y")
    v = fixtures::ExampleVariant::Y;
  else if (o.variant == "y_prime" || o.variant == "y'")
    v = fixtures::ExampleVariant::YPrime;
  else
    throw InputError("--variant must be y or y_prime");
  std::optional<std::uint64_t> seed;
  if (o.conjugate) seed = detail::resolve_seed(o);
  const auto t = fixtures::gen_paper_example(v, cplx(0.0, 1.0), seed);
  MatrixFile f;
  for (std::size_t j = 0; j < t.size(); ++j) f.add(t.label(j), t[j]);
  detail::emit_matrix_file(o, f, out);
  return kOk;
}

inline int cmd_gen_planted(const Options& o, std::ostream& out) {
  const auto props = detail::split_list(o.properties);
  if (props.size() != 1) throw InputError("gen planted needs exactly one --property");
  const auto inst = fixtures::random_planted(props.front(), o.dim, detail::resolve_seed(o), o.tolerance());
  MatrixFile f;
  for (std::size_t j = 0; j < inst.tuple.size(); ++j) f.add(inst.tuple.label(j), inst.tuple[j]);
  f.add("expected", inst.expected_projection.matrix());
  detail::emit_matrix_file(o, f, out);
  return kOk;
}

inline int cmd_gen_ppi(const Options& o, std::ostream& out) {
  const auto inst = fixtures::gen_power_partial_isometry(detail::parse_multiplicities(o.multiplicities),
                                                         o.unitary_dim, detail::resolve_seed(o));
  MatrixFile f;
  f.add("x", inst.matrix);
  f.add("p_u", inst.profile.unitary_projection.matrix());
  detail::emit_matrix_file(o, f, out);
  return kOk;
}

inline int cmd_selfcheck(const Options& o, std::ostream& out) {
  const auto tol = o.tolerance();
  const auto t0 = std::chrono::steady_clock::now();
  bool all = true;
  report::json suites = report::json::array();
  for (const auto& suite : selfcheck::all_suites()) {
    const auto r = suite(tol);
    all = all && r.passed;
    if (o.json)
      suites.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                        {"seconds", r.seconds}});
    else
      out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << " (" << std::fixed
          << std::setprecision(2) << r.seconds << " s): " << std::defaultfloat << r.detail << std::endl;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.json) {
    report::json j = {{"command", "selfcheck"},
                      {"verdict", all ? "ok" : "FAIL"},
                      {"seed", nullptr},
                      {"tolerance", report::tolerance(tol)},
                      {"seconds", secs},
                      {"suites", std::move(suites)}};
    out << j.dump(2) << "\n";
  } else {
    out << (all ? "all suites passed" : "some suites failed") << " in " << std::fixed << std::setprecision(2) << secs
        << " s\n";
  }
  return all ? kOk : kConsistencyError;
}

// ---------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------

/// `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decompose complex matrices and tuples by star-algebraic properties", "baerdec"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* s) {
    s->add_option("--tol-rank", o.tol_rank, "relative singular value cutoff");
    s->add_option("--tol-res", o.tol_res, "relative residual tolerance");
    s->add_option("--seed", o.seed, "random seed (default: $BAERDEC_SEED or 0)");
    s->add_flag("--json", o.json, "machine-readable output");
  };
  auto inputs = [&o, &common](CLI::App* s) {
    common(s);
    s->add_option("--in", o.in, "matrix file")->required();
    s->add_option("--names", o.names, "comma-separated matrix names forming the tuple")->delimiter(',');
    s->add_option("--out", o.out, "write the resulting projections to this matrix file");
  };
  auto properties = [&o](CLI::App* s) {
    s->add_option("--property", o.properties, "built-in property name(s)");
    s->add_option("--functional", o.functionals, "user property as ';'-separated functionals");
  };

  std::function<int(const Options&, std::ostream&)> action;
  auto bind = [&action](CLI::App* s, int (*f)(const Options&, std::ostream&)) {
    s->callback([&action, f] { action = f; });
  };

  auto* dec = app.add_subcommand("decompose", "largest projection on which the tuple has a property");
  inputs(dec), properties(dec), bind(dec, cmd_decompose);
  auto* comb = app.add_subcommand("combine", "cells for every combination of several properties");
  inputs(comb), properties(comb), bind(comb, cmd_combine);
  auto* tri = app.add_subcommand("triple", "doubly commuting / compatible only / rest");
  inputs(tri), bind(tri, cmd_triple);
  auto* quad = app.add_subcommand("quad", "cells by commutativity and compatibility");
  inputs(quad), bind(quad, cmd_quad);
  auto* can = app.add_subcommand("canonical", "canonical decomposition of a pair");
  inputs(can), properties(can), bind(can, cmd_canonical);
  auto* wo = app.add_subcommand("wold", "unitary and shift parts of an isometry");
  inputs(wo), bind(wo, cmd_wold);
  auto* hw = app.add_subcommand("halmos-wallen", "unitary part and truncated shifts of a power partial isometry");
  inputs(hw), bind(hw, cmd_halmos_wallen);
  auto* def = app.add_subcommand("defect", "defect projection [x^m (1 - [x])]");
  inputs(def), bind(def, cmd_defect);
  def->add_option("--power", o.power, "exponent m")->check(CLI::NonNegativeNumber);
  auto* ws = app.add_subcommand("wold-slocinski", "four-part split of a doubly commuting pair of isometries");
  inputs(ws), bind(ws, cmd_wold_slocinski);
  auto* lp = app.add_subcommand("leftproj", "left (or right) projection of a matrix");
  inputs(lp), bind(lp, cmd_leftproj);
  lp->add_flag("--right", o.right, "right projection instead");
  auto* lat = app.add_subcommand("lattice", "supremum or infimum of range projections");
  lat->add_option("op", o.lattice_op, "sup or inf")->required()->check(CLI::IsMember({"sup", "inf"}));
  inputs(lat), bind(lat, cmd_lattice);

  auto* gen = app.add_subcommand("gen", "write generated instances as matrix files");
  gen->require_subcommand(1);
  auto* gex = gen->add_subcommand("paper-example", "compatible, non-commuting nilpotent pair in M_9");
  common(gex), bind(gex, cmd_gen_example);
  gex->add_option("--variant", o.variant, "y or y_prime");
  gex->add_flag("--conjugate", o.conjugate, "conjugate by a seeded Haar unitary");
  gex->add_option("--out", o.out, "output file (default stdout)");
  auto* gpl = gen->add_subcommand("planted", "tuple with a known largest property projection");
  common(gpl), bind(gpl, cmd_gen_planted);
  gpl->add_option("--property", o.properties, "built-in property")->required();
  gpl->add_option("--dim", o.dim, "dimension")->check(CLI::Range(2, 4096));
  gpl->add_option("--out", o.out, "output file (default stdout)");
  auto* gppi = gen->add_subcommand("ppi", "power partial isometry with given truncated shift multiplicities");
  common(gppi), bind(gppi, cmd_gen_ppi);
  gppi->add_option("--multiplicities", o.multiplicities, "length:count pairs, e.g. 1:2,3:1");
  gppi->add_option("--unitary-dim", o.unitary_dim, "dimension of the unitary part")->check(CLI::NonNegativeNumber);
  gppi->add_option("--out", o.out, "output file (default stdout)");

  auto* sc = app.add_subcommand("selfcheck", "run the verification suites");
  common(sc), bind(sc, cmd_selfcheck);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "baerdec: " << e.what() << "\n";
    return kInputError;
  }

  try {
    return action(o, out);
  } catch (const PreconditionError& e) {
    err << "baerdec: precondition failed: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "baerdec: " << e.what() << "\n";
    return kInputError;
  } catch (const NumericalInstabilityError& e) {
    err << "baerdec: numerical instability: " << e.what() << "\n";
    return kConsistencyError;
  } catch (const ConsistencyError& e) {
    err << "baerdec: consistency check failed: " << e.what() << "\n";
    return kConsistencyError;
  } catch (const std::exception& e) {
    err << "baerdec: internal error: " << e.what() << "\n";
    return kConsistencyError;
  }
}

}  // namespace baerdec::cli

#endif  // BAERDEC_CLI_HPP
