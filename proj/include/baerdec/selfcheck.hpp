// End-to-end verification suites shared by the `selfcheck` command and the
// acceptance test binary. Every suite is seeded and deterministic; every
// threshold is fixed here.

#ifndef BAERDEC_SELFCHECK_HPP
#define BAERDEC_SELFCHECK_HPP

#include "fixtures.hpp"

#include <chrono>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace baerdec::selfcheck {

struct SuiteResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

class Tally {
public:
  void check(bool ok, const std::string& what) {
    ++total_;
    if (!ok) {
      ++failed_;
      if (first_failure_.empty()) first_failure_ = what;
    }
  }
  void worst(double& slot, double v) { slot = std::max(slot, v); }
  bool ok() const { return failed_ == 0; }
  int total() const { return total_; }
  int failed() const { return failed_; }
  const std::string& first_failure() const { return first_failure_; }

private:
  int total_ = 0, failed_ = 0;
  std::string first_failure_;
};

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

inline std::string summarize(const Tally& t, const std::string& extra) {
  std::string s = std::to_string(t.total() - t.failed()) + "/" + std::to_string(t.total()) + " checks";
  if (!extra.empty()) s += "; " + extra;
  if (!t.ok()) s += "; first failure: " + t.first_failure();
  return s;
}

template <class F>
SuiteResult timed(int id, std::string name, F&& body) {
  SuiteResult r{id, std::move(name), false, {}, 0.0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

inline const std::vector<std::string>& planted_properties() {
  static const std::vector<std::string> props = {"normal",    "partial_isometry", "unitary",
                                                 "doubly_commuting", "commuting", "compatible"};
  return props;
}

/// 200 planted instances per property, dims 2–12: exact rank and
/// ‖p − p_expected‖_F ≤ 1e-6; under 30 s.
inline SuiteResult planted_recovery(const ToleranceProfile& tol = {}) {
  return detail::timed(1, "planted recovery", [&](SuiteResult& r) {
    detail::Tally t;
    double worst = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& prop : planted_properties())
      for (int i = 0; i < 200; ++i) {
        const Eigen::Index dim = 2 + i % 11;
        const std::uint64_t seed = 0x1000 + static_cast<std::uint64_t>(i);
        const auto inst = fixtures::random_planted(prop, dim, seed, tol);
        const auto rep = max_property_projection(inst.tuple, builtin_property(prop, dim), tol);
        const double d = distance(rep.projection, inst.expected_projection);
        t.worst(worst, d);
        t.check(rep.projection.rank() == inst.expected_projection.rank() && d <= 1e-6,
                prop + " seed " + std::to_string(seed) + " dim " + std::to_string(dim));
      }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    t.check(secs < 30.0, "runtime " + std::to_string(secs) + " s exceeds 30 s");
    r.passed = t.ok();
    r.detail = detail::summarize(t, "max distance " + detail::fmt(worst) + ", " + std::to_string(secs) + " s");
  });
}

/// Engine postconditions on unstructured random tuples.
inline SuiteResult postconditions(const ToleranceProfile& tol = {}) {
  return detail::timed(2, "postcondition suite", [&](SuiteResult& r) {
    detail::Tally t;
    double worst_proj = 0.0, worst_comm = 0.0, worst_fun = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Eigen::Index dim = 2 + i % 9;
      const auto pair = fixtures::random_tuple(2, dim, 0x2000 + static_cast<std::uint64_t>(i));
      const TupleInstance single({pair[0]}, {"x"});
      for (const auto& name : builtin_property_names()) {
        const auto spec = builtin_property(name, dim);
        const TupleInstance& tup = spec.arity == 1 ? single : pair;
        const auto rep = max_property_projection(tup, spec, tol);
        const std::string where = name + " tuple " + std::to_string(i);
        const double pd = rep.projection.projection_defect();
        t.worst(worst_proj, pd / static_cast<double>(dim));
        t.check(pd <= 1e-10 * static_cast<double>(dim), where + ": projection defect");
        for (std::size_t j = 0; j < tup.size(); ++j) {
          const double scale = (1.0 + rep.projection.matrix().norm()) * (1.0 + tup[j].norm());
          t.worst(worst_comm, rep.commutation_residuals[j] / scale);
          t.check(rep.commutation_residuals[j] <= 1e-8 * scale, where + ": commutation");
        }
        for (double res : rep.residuals) {
          t.worst(worst_fun, res / rep.functional_scale);
          t.check(res <= 1e-8 * rep.functional_scale, where + ": functional residual");
        }
        t.check(rep.complement_audit && rep.complement_audit->rank == 0, where + ": audit rank");
      }
    }
    r.passed = t.ok();
    r.detail = detail::summarize(t, "max relative projection/commutation/functional residual " +
                                        detail::fmt(worst_proj) + "/" + detail::fmt(worst_comm) + "/" +
                                        detail::fmt(worst_fun));
  });
}

/// Projections of two properties commute and multiply to the projection
/// of the combined property.
inline SuiteResult product_law(const ToleranceProfile& tol = {}) {
  return detail::timed(3, "product law", [&](SuiteResult& r) {
    detail::Tally t;
    double worst_comm = 0.0, worst_law = 0.0;
    auto run = [&](const TupleInstance& tup, const PropertySpec& a, const PropertySpec& b, const std::string& where) {
      const auto pa = max_property_projection(tup, a, tol).projection.matrix();
      const auto pb = max_property_projection(tup, b, tol).projection.matrix();
      const auto pab = max_property_projection(tup, conjunction(a, b), tol).projection.matrix();
      const double comm = (pa * pb - pb * pa).norm();
      const double law = (pa * pb - pab).norm();
      t.worst(worst_comm, comm);
      t.worst(worst_law, law);
      t.check(comm <= 1e-8, where + ": commutator " + detail::fmt(comm));
      t.check(law <= 1e-6, where + ": product law " + detail::fmt(law));
    };
    for (int i = 0; i < 100; ++i) {
      const Eigen::Index dim = 2 + i % 11;
      const std::uint64_t seed = 0x3000 + static_cast<std::uint64_t>(i);
      const auto mix = fixtures::random_normal_unitary_mix(dim, seed);
      run(TupleInstance({mix.x}, {"x"}), builtin_property("normal", dim), builtin_property("unitary", dim),
          "{normal, unitary} seed " + std::to_string(seed));
      const auto quad = fixtures::random_quad_pair(dim, seed);
      run(quad.tuple, builtin_property("commuting", dim), builtin_property("compatible", dim),
          "{commuting, compatible} seed " + std::to_string(seed));
    }
    r.passed = t.ok();
    r.detail = detail::summarize(t, "max commutator " + detail::fmt(worst_comm) + ", max product-law defect " +
                                        detail::fmt(worst_law));
  });
}

/// Quaternary cells by commutativity and compatibility partition the
/// identity into orthogonal pieces.
inline SuiteResult quaternary_partition(const ToleranceProfile& tol = {}) {
  return detail::timed(4, "quaternary partition", [&](SuiteResult& r) {
    detail::Tally t;
    double worst_overlap = 0.0, worst_sum = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Eigen::Index dim = 2 + i % 11;
      const std::uint64_t seed = 0x4000 + static_cast<std::uint64_t>(i);
      const auto quad = fixtures::random_quad_pair(dim, seed);
      const auto cells = quad_decompose(quad.tuple[0], quad.tuple[1], tol);
      t.worst(worst_overlap, cells.max_cell_overlap);
      t.worst(worst_sum, cells.partition_defect / static_cast<double>(dim));
      t.check(cells.max_cell_overlap <= 1e-8, "seed " + std::to_string(seed) + ": cells overlap");
      t.check(cells.partition_defect <= 1e-8 * static_cast<double>(dim), "seed " + std::to_string(seed) + ": sum");
    }
    r.passed = t.ok();
    r.detail = detail::summarize(t, "max overlap " + detail::fmt(worst_overlap) + ", max partition defect/dim " +
                                        detail::fmt(worst_sum));
  });
}

/// For doubly commuting (x, y): [x] commutes with y, y*, [y]; for a
/// projection p commuting with x, [p x] = p [x].
inline SuiteResult range_projection_commutation(const ToleranceProfile& tol = {}) {
  return detail::timed(5, "range projections of commuting elements", [&](SuiteResult& r) {
    detail::Tally t;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const std::uint64_t seed = 0x5000 + static_cast<std::uint64_t>(i);
      const auto dc = fixtures::random_doubly_commuting_pair(12, seed);
      const ComplexMatrix& x = dc.tuple[0];
      const ComplexMatrix& y = dc.tuple[1];
      const ComplexMatrix lx = left_projection(x, tol).matrix();
      const ComplexMatrix ly = left_projection(y, tol).matrix();
      const double scale = (1.0 + x.norm()) * (1.0 + y.norm());
      const std::string where = "seed " + std::to_string(seed);
      for (const auto& [label, v] :
           {std::pair<const char*, double>{"[x]y-y[x]", commutation_residual(lx, y)},
            {"[x]y*-y*[x]", commutation_residual(lx, y.adjoint())},
            {"[x][y]-[y][x]", commutation_residual(lx, ly)}}) {
        t.worst(worst, v / scale);
        t.check(v <= 1e-8 * scale, where + ": " + label);
      }
      const Projection& p = dc.block;
      for (const ComplexMatrix* e : {&x, &y}) {
        const double v = (left_projection(ComplexMatrix(p.matrix() * *e), tol).matrix() -
                          p.matrix() * left_projection(*e, tol).matrix())
                             .norm();
        const double s = 1.0 + e->norm();
        t.worst(worst, v / s);
        t.check(v <= 1e-8 * s, where + ": [px]-p[x]");
      }
    }
    r.passed = t.ok();
    r.detail = detail::summarize(t, "max scaled residual " + detail::fmt(worst));
  });
}

/// The compatible, non-commuting pair in M_9.
inline SuiteResult grid_example(const ToleranceProfile& tol = {}) {
  return detail::timed(6, "compatible non-commuting example", [&](SuiteResult& r) {
    using fixtures::example_cell;
    detail::Tally t;
    const auto ex = fixtures::gen_paper_example(fixtures::ExampleVariant::Y);
    const ComplexMatrix& x = ex[0];
    const ComplexMatrix& y = ex[1];

    const auto comp = max_property_projection(ex, builtin_property("compatible", 9), tol);
    t.check(comp.projection.is_identity() && distance(comp.projection, Projection::identity(9)) <= 1e-10,
            "compatibility projection is not the identity");

    const double x2 = (power_range_projection(x, 2, tol).matrix() - (example_cell(3, 1) + example_cell(3, 2))).norm();
    const double y2 = (power_range_projection(y, 2, tol).matrix() - (example_cell(1, 3) + example_cell(2, 3))).norm();
    t.check(x2 <= 1e-10, "[x^2] != p31 + p32 (" + detail::fmt(x2) + ")");
    t.check(y2 <= 1e-10, "[y^2] != p13 + p23 (" + detail::fmt(y2) + ")");
    t.check(matrix_power(x, 3).isZero(0.0), "x^3 != 0");
    t.check(matrix_power(y, 3).isZero(0.0), "y^3 != 0");

    const auto exp = fixtures::gen_paper_example(fixtures::ExampleVariant::YPrime, cplx(0.0, 1.0));
    const ComplexMatrix& yp = exp[1];
    double worst = 0.0;
    for (int n = 1; n <= 9; ++n)
      worst = std::max(worst, (power_range_projection(yp, n, tol).matrix() - power_range_projection(y, n, tol).matrix()).norm());
    t.check(worst <= 1e-10, "[y'^n] != [y^n] (" + detail::fmt(worst) + ")");
    const auto comp2 = max_property_projection(exp, builtin_property("compatible", 9), tol);
    t.check(comp2.projection.is_identity(), "(x, y') is not compatible");

    const double c = (x * y - y * x).norm();
    t.check(std::abs(c - std::sqrt(2.0)) <= 1e-10, "commutator norm " + std::to_string(c) + " != sqrt 2");
    r.passed = t.ok();
    r.detail = detail::summarize(t, "||xy-yx||_F = " + std::to_string(c));
  });
}

/// Truncated-shift multiplicities of random power partial isometries.
inline SuiteResult halmos_wallen_recovery(const ToleranceProfile& tol = {}) {
  return detail::timed(7, "power partial isometries", [&](SuiteResult& r) {
    detail::Tally t;
    double worst_orth = 0.0;
    for (int i = 0; i < 100; ++i) {
      const std::uint64_t seed = 0x7000 + static_cast<std::uint64_t>(i);
      fixtures::Rng rng(seed);
      const auto [mult, udim] = fixtures::random_shift_spec(16, rng);
      const auto inst = fixtures::gen_power_partial_isometry(mult, udim, seed);
      const auto hw = halmos_wallen(inst.matrix, tol);
      const std::string where = "seed " + std::to_string(seed);
      t.check(hw.power_partial_isometry, where + ": rejected as not a power partial isometry");
      if (!hw.power_partial_isometry) continue;
      t.check(hw.profile.multiplicities == inst.profile.multiplicities, where + ": multiplicities");
      t.check(hw.profile.unitary_projection.rank() == inst.profile.unitary_projection.rank(), where + ": rank p_u");

      const int n = static_cast<int>(inst.matrix.rows());
      std::vector<ComplexMatrix> d;
      for (int m = 0; m <= n; ++m) d.push_back(defect_projection(inst.matrix, m, tol).matrix());
      for (std::size_t a = 0; a < d.size(); ++a)
        for (std::size_t b = a + 1; b < d.size(); ++b) {
          const double v = (d[a] * d[b]).norm();
          t.worst(worst_orth, v);
          t.check(v <= 1e-8, where + ": defect projections " + std::to_string(a) + "," + std::to_string(b));
        }
    }
    r.passed = t.ok();
    r.detail = detail::summarize(t, "max defect overlap " + detail::fmt(worst_orth));
  });
}

/// Finite-dimensional isometries are unitary: the Wold shift part is 0.
inline SuiteResult wold_collapse(const ToleranceProfile& tol = {}) {
  return detail::timed(8, "Wold decomposition", [&](SuiteResult& r) {
    detail::Tally t;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const std::uint64_t seed = 0x8000 + static_cast<std::uint64_t>(i);
      fixtures::Rng rng(seed);
      const Eigen::Index n = 1 + i % 16;
      const ComplexMatrix u = fixtures::haar_unitary(n, rng);
      const auto w = wold(u, tol);
      const double d = (w.unitary_projection.matrix() - identity(n)).norm();
      t.worst(worst, d);
      t.check(d <= 1e-8 && w.shift_rank == 0, "seed " + std::to_string(seed));
    }
    ComplexMatrix bad(2, 2);
    bad << 1.0, 0.0, 0.0, 0.5;
    bool rejected = false;
    try {
      (void)wold(bad, tol);
    } catch (const PreconditionError& e) {
      rejected = std::abs(e.measured() - 0.75) <= 1e-12;
    }
    t.check(rejected, "diag(1, 1/2) not rejected with ||x*x-1||_F = 3/4");
    r.passed = t.ok();
    r.detail = detail::summarize(t, "max ||p_u - 1||_F " + detail::fmt(worst));
  });
}

namespace detail {
inline ComplexMatrix jordan2() {
  ComplexMatrix j = ComplexMatrix::Zero(2, 2);
  j(0, 1) = 1.0;
  return j;
}
}  // namespace detail

/// diag(1,2) ⊕ J and J ⊕ diag(3,4): canonical decomposition exists.
inline std::pair<ComplexMatrix, ComplexMatrix> canonical_exists_pair() {
  ComplexMatrix x = ComplexMatrix::Zero(4, 4), y = ComplexMatrix::Zero(4, 4);
  x(0, 0) = 1.0;
  x(1, 1) = 2.0;
  x.bottomRightCorner(2, 2) = detail::jordan2();
  y.topLeftCorner(2, 2) = detail::jordan2();
  y(2, 2) = 3.0;
  y(3, 3) = 4.0;
  return {x, y};
}

/// diag(5) ⊕ J and the e1 <-> e2 swap: no canonical decomposition.
inline std::pair<ComplexMatrix, ComplexMatrix> canonical_swap_pair() {
  ComplexMatrix x = ComplexMatrix::Zero(3, 3), y = ComplexMatrix::Zero(3, 3);
  x(0, 0) = 5.0;
  x.bottomRightCorner(2, 2) = detail::jordan2();
  y(0, 1) = y(1, 0) = 1.0;
  y(2, 2) = 1.0;
  return {x, y};
}

inline SuiteResult canonical_examples(const ToleranceProfile& tol = {}) {
  return detail::timed(9, "canonical decomposition", [&](SuiteResult& r) {
    detail::Tally t;
    const auto normal = builtin_property("normal", 1);
    {
      const auto [x, y] = canonical_exists_pair();
      const auto v = canonical_decompose(x, y, normal, tol);
      t.check(v.exists, "block example: verdict NO");
      if (v.exists) {
        auto diag = [](double a, double b, double c, double d) {
          ComplexMatrix m = ComplexMatrix::Zero(4, 4);
          m(0, 0) = a, m(1, 1) = b, m(2, 2) = c, m(3, 3) = d;
          return m;
        };
        const ComplexMatrix expect[4] = {diag(0, 0, 0, 0), diag(1, 1, 0, 0), diag(0, 0, 1, 1), diag(0, 0, 0, 0)};
        for (int k = 0; k < 4; ++k)
          t.check((v.cells[static_cast<std::size_t>(k)].projection.matrix() - expect[k]).norm() <= 1e-6,
                  "block example: cell " + v.cells[static_cast<std::size_t>(k)].pattern);
      }
    }
    {
      const auto [x, y] = canonical_swap_pair();
      const auto v = canonical_decompose(x, y, normal, tol);
      t.check(!v.exists, "swap example: verdict EXISTS");
      t.check(v.q_x_order_defect <= 1e-6, "swap example: q_x not below p_x");
      ComplexMatrix e1 = ComplexMatrix::Zero(3, 3);
      e1(0, 0) = 1.0;
      t.check((v.p_x.projection.matrix() - e1).norm() <= 1e-6, "swap example: p_x != diag(1,0,0)");
    }
    r.passed = t.ok();
    r.detail = detail::summarize(t, "");
  });
}

inline std::vector<std::function<SuiteResult(const ToleranceProfile&)>> all_suites() {
  return {planted_recovery, postconditions, product_law, quaternary_partition, range_projection_commutation,
          grid_example,     halmos_wallen_recovery, wold_collapse, canonical_examples};
}

inline std::vector<SuiteResult> run_all(const ToleranceProfile& tol = {}) {
  std::vector<SuiteResult> out;
  for (const auto& s : all_suites()) out.push_back(s(tol));
  return out;
}

}  // namespace baerdec::selfcheck

#endif  // BAERDEC_SELFCHECK_HPP
