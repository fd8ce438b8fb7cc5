// Property functionals F_i and their evaluation.
//
// A property of a tuple x = (x_1, …, x_k) is the simultaneous vanishing of
// a finite family of functionals. Every functional here is a complex
// linear combination of words whose letters are
//
//   * a tuple entry x_j or its adjoint x_j*,
//   * the unit symbol 1, bound at evaluation time to the unit of the
//     corner the tuple lives in,
//   * a range-projection token [x_j^m] (or [(x_j*)^m]).
//
// Functionals of this shape satisfy F(p x) = p F(x) for every projection p
// commuting with the tuple, which is what the decomposition engine needs.

#ifndef BAERDEC_PROPERTIES_HPP
#define BAERDEC_PROPERTIES_HPP

#include "star_ring.hpp"

#include <map>
#include <tuple>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace baerdec {

struct Factor {
  enum class Kind { Element, Unit, RangePower };

  Kind kind = Kind::Unit;
  int slot = 0;          ///< tuple index for Element / RangePower
  bool adjoint = false;  ///< x_j* instead of x_j
  int power = 1;         ///< exponent m of [x_j^m]

  static Factor element(int slot, bool adjoint = false) { return {Kind::Element, slot, adjoint, 1}; }
  static Factor unit() { return {Kind::Unit, 0, false, 1}; }
  static Factor range_power(int slot, int m, bool adjoint = false) { return {Kind::RangePower, slot, adjoint, m}; }

  friend bool operator==(const Factor&, const Factor&) = default;
  friend auto operator<=>(const Factor& a, const Factor& b) {
    return std::tie(a.kind, a.slot, a.adjoint, a.power) <=> std::tie(b.kind, b.slot, b.adjoint, b.power);
  }
};

using Word = std::vector<Factor>;

struct Term {
  cplx coefficient{1.0, 0.0};
  Word word;
};

/// Element of the free *-algebra over the tuple symbols, the unit, and the
/// range-projection tokens. Kept in a normal form: like words merged, unit
/// letters absorbed into longer words, zero terms dropped.
class StarPolynomial {
public:
  StarPolynomial() = default;

  static StarPolynomial monomial(Word w, cplx c = 1.0) {
    StarPolynomial p;
    p.terms_.push_back({c, std::move(w)});
    p.normalize();
    return p;
  }
  static StarPolynomial scalar(cplx c) { return monomial({Factor::unit()}, c); }
  static StarPolynomial element(int slot, bool adjoint = false) { return monomial({Factor::element(slot, adjoint)}); }
  static StarPolynomial range_power(int slot, int m, bool adjoint = false) {
    return monomial({Factor::range_power(slot, m, adjoint)});
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  StarPolynomial& operator+=(const StarPolynomial& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
  }
  StarPolynomial& operator-=(const StarPolynomial& o) { return *this += o * cplx(-1.0); }

  friend StarPolynomial operator+(StarPolynomial a, const StarPolynomial& b) { return a += b; }
  friend StarPolynomial operator-(StarPolynomial a, const StarPolynomial& b) { return a -= b; }

  friend StarPolynomial operator*(const StarPolynomial& a, cplx c) {
    StarPolynomial r = a;
    for (auto& t : r.terms_) t.coefficient *= c;
    r.normalize();
    return r;
  }

  friend StarPolynomial operator*(const StarPolynomial& a, const StarPolynomial& b) {
    StarPolynomial r;
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        Word w = s.word;
        w.insert(w.end(), t.word.begin(), t.word.end());
        r.terms_.push_back({s.coefficient * t.coefficient, std::move(w)});
      }
    r.normalize();
    return r;
  }

  /// Formal adjoint: words reversed, letters starred, coefficients conjugated.
  StarPolynomial adjoint() const {
    StarPolynomial r;
    for (const auto& t : terms_) {
      Word w(t.word.rbegin(), t.word.rend());
      for (auto& f : w)
        if (f.kind == Factor::Kind::Element) f.adjoint = !f.adjoint;
      r.terms_.push_back({std::conj(t.coefficient), std::move(w)});
    }
    r.normalize();
    return r;
  }

  /// Renames tuple slots: slot j becomes map[j].
  StarPolynomial remap(const std::vector<int>& map) const {
    StarPolynomial r = *this;
    for (auto& t : r.terms_)
      for (auto& f : t.word)
        if (f.kind != Factor::Kind::Unit) f.slot = map.at(static_cast<std::size_t>(f.slot));
    r.normalize();
    return r;
  }

  /// Largest number of tuple letters in any word; range tokens and the
  /// unit have unit norm and do not count.
  int degree() const {
    int d = 0;
    for (const auto& t : terms_) {
      int k = 0;
      for (const auto& f : t.word) k += f.kind == Factor::Kind::Element;
      d = std::max(d, k);
    }
    return d;
  }

  int max_slot() const {
    int s = -1;
    for (const auto& t : terms_)
      for (const auto& f : t.word)
        if (f.kind != Factor::Kind::Unit) s = std::max(s, f.slot);
    return s;
  }

  bool uses_unit() const {
    for (const auto& t : terms_)
      if (t.word.size() == 1 && t.word.front().kind == Factor::Kind::Unit) return true;
    return false;
  }

  bool uses_range_tokens() const {
    for (const auto& t : terms_)
      for (const auto& f : t.word)
        if (f.kind == Factor::Kind::RangePower) return true;
    return false;
  }

  std::string to_string(const std::vector<std::string>& names) const;

private:
  void normalize() {
    std::map<Word, cplx> merged;
    std::vector<Word> order;
    for (auto& t : terms_) {
      Word w;
      for (const auto& f : t.word)
        if (f.kind != Factor::Kind::Unit) w.push_back(f);
      if (w.empty()) w.push_back(Factor::unit());
      auto [it, inserted] = merged.try_emplace(w, cplx{0.0, 0.0});
      if (inserted) order.push_back(w);
      it->second += t.coefficient;
    }
    terms_.clear();
    for (auto& w : order) {
      const cplx c = merged[w];
      if (c != cplx{0.0, 0.0}) terms_.push_back({c, std::move(w)});
    }
  }

  std::vector<Term> terms_;
};

namespace detail {
inline std::string format_coefficient(cplx c) {
  std::ostringstream os;
  os.precision(12);
  if (c.imag() == 0.0) {
    os << c.real();
  } else if (c.real() == 0.0) {
    os << c.imag() << "j";
  } else {
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "j)";
  }
  return os.str();
}

inline std::string slot_name(const std::vector<std::string>& names, int slot) {
  if (slot >= 0 && static_cast<std::size_t>(slot) < names.size()) return names[static_cast<std::size_t>(slot)];
  return "x" + std::to_string(slot + 1);
}
}  // namespace detail

inline std::string StarPolynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    cplx c = t.coefficient;
    const bool unit_only = t.word.size() == 1 && t.word.front().kind == Factor::Kind::Unit;
    if (!first) {
      if (c.imag() == 0.0 && c.real() < 0) {
        out += " - ";
        c = -c;
      } else {
        out += " + ";
      }
    } else if (c.imag() == 0.0 && c.real() < 0) {
      out += "-";
      c = -c;
    }
    first = false;
    const bool unit_coef = c == cplx{1.0, 0.0};
    if (unit_only) {
      out += detail::format_coefficient(c);
      continue;
    }
    if (!unit_coef) out += detail::format_coefficient(c) + "*";
    for (std::size_t i = 0; i < t.word.size(); ++i) {
      const auto& f = t.word[i];
      if (i) out += "*";
      const std::string name = detail::slot_name(names, f.slot);
      if (f.kind == Factor::Kind::Element) {
        out += name + (f.adjoint ? "'" : "");
      } else {
        out += "[" + name + (f.adjoint ? "'" : "");
        if (f.power != 1) out += "^" + std::to_string(f.power);
        out += "]";
      }
    }
  }
  return out;
}

struct Functional {
  std::string label;
  StarPolynomial polynomial;
};

/// A named finite family of functionals on tuples of a fixed arity.
struct PropertySpec {
  std::string name;
  int arity = 1;
  std::vector<Functional> functionals;

  bool uses_unit() const {
    for (const auto& f : functionals)
      if (f.polynomial.uses_unit()) return true;
    return false;
  }

  int degree() const {
    int d = 0;
    for (const auto& f : functionals) d = std::max(d, f.polynomial.degree());
    return d;
  }

  void validate() const {
    if (functionals.empty()) throw InputError("property '" + name + "' has no functionals");
    if (arity < 1) throw InputError("property '" + name + "' has nonpositive arity");
    for (const auto& f : functionals)
      if (f.polynomial.max_slot() >= arity)
        throw InputError("functional '" + f.label + "' refers to a slot beyond the arity of '" + name + "'");
  }
};

/// Same functionals, acting on the tuple slots given by `slot_map`
/// inside a tuple of `new_arity` entries.
inline PropertySpec lift(const PropertySpec& spec, const std::vector<int>& slot_map, int new_arity,
                         const std::string& suffix) {
  PropertySpec out;
  out.name = spec.name + suffix;
  out.arity = new_arity;
  for (const auto& f : spec.functionals)
    out.functionals.push_back({f.label + suffix, f.polynomial.remap(slot_map)});
  out.validate();
  return out;
}

/// Concatenated functional list: the property "both hold".
inline PropertySpec conjunction(const PropertySpec& a, const PropertySpec& b) {
  if (a.arity != b.arity) throw InputError("cannot combine properties of different arity");
  PropertySpec out{a.name + "&" + b.name, a.arity, a.functionals};
  out.functionals.insert(out.functionals.end(), b.functionals.begin(), b.functionals.end());
  return out;
}

/// A single-element property imposed on every entry of a tuple of
/// `arity` elements (e.g. "every entry is normal").
inline PropertySpec family(const PropertySpec& spec, int arity) {
  if (spec.arity != 1) throw InputError("only single-element properties extend to families");
  PropertySpec out{spec.name, arity, {}};
  for (int j = 0; j < arity; ++j) {
    const std::string suffix = arity == 1 ? "" : "@" + std::to_string(j + 1);
    for (const auto& f : spec.functionals)
      out.functionals.push_back({f.label + suffix, f.polynomial.remap({j})});
  }
  return out;
}

// ---------------------------------------------------------------------
// Built-ins
// ---------------------------------------------------------------------

inline const std::vector<std::string>& builtin_property_names() {
  static const std::vector<std::string> names = {
      "normal", "partial_isometry", "isometry",          "coisometry",
      "unitary", "commuting",       "doubly_commuting",  "compatible"};
  return names;
}

/// Built-in property instantiated for ambient dimension `dim`; only the
/// compatibility family depends on it (F_{m,n} for m, n ≤ dim).
inline PropertySpec builtin_property(std::string_view name, Eigen::Index dim) {
  using P = StarPolynomial;
  const P x = P::element(0), xs = P::element(0, true);
  const P y = P::element(1), ys = P::element(1, true);
  const P one = P::scalar(1.0);

  if (name == "normal") return {"normal", 1, {{"xx*-x*x", x * xs - xs * x}}};
  if (name == "partial_isometry") return {"partial_isometry", 1, {{"x-xx*x", x - x * xs * x}}};
  if (name == "isometry") return {"isometry", 1, {{"1-x*x", one - xs * x}}};
  if (name == "coisometry") return {"coisometry", 1, {{"1-xx*", one - x * xs}}};
  if (name == "unitary") return {"unitary", 1, {{"1-x*x", one - xs * x}, {"1-xx*", one - x * xs}}};
  if (name == "commuting") return {"commuting", 2, {{"xy-yx", x * y - y * x}}};
  if (name == "doubly_commuting")
    return {"doubly_commuting", 2, {{"xy-yx", x * y - y * x}, {"xy*-y*x", x * ys - ys * x}}};
  if (name == "compatible") {
    if (dim < 1) throw InputError("compatible: dimension must be positive");
    PropertySpec spec{"compatible", 2, {}};
    const int n = static_cast<int>(dim);
    for (int m = 1; m <= n; ++m)
      for (int k = 1; k <= n; ++k) {
        const P xm = P::range_power(0, m), yk = P::range_power(1, k);
        spec.functionals.push_back({"F_{" + std::to_string(m) + "," + std::to_string(k) + "}", xm * yk - yk * xm});
      }
    return spec;
  }
  throw LookupError("unknown property '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------

/// (1 + max_j ‖x_j‖_F)^degree, the scale functional residuals are
/// measured against.
inline double functional_scale(const PropertySpec& spec, const TupleInstance& t) {
  return std::pow(1.0 + t.max_frobenius(), spec.degree());
}

namespace detail {

class Evaluator {
public:
  Evaluator(const TupleInstance& t, const Projection& unit, const ToleranceProfile& tol)
      : t_(t), unit_(unit), tol_(tol) {}

  ComplexMatrix operator()(const StarPolynomial& poly) {
    const Eigen::Index n = t_.dim();
    ComplexMatrix acc = ComplexMatrix::Zero(n, n);
    for (const auto& term : poly.terms()) {
      ComplexMatrix w = identity(n);
      for (const auto& f : term.word) w = w * letter(f);
      acc += term.coefficient * w;
    }
    return acc;
  }

private:
  ComplexMatrix letter(const Factor& f) {
    switch (f.kind) {
      case Factor::Kind::Unit: return unit_.matrix();
      case Factor::Kind::Element: {
        const auto& x = t_[static_cast<std::size_t>(f.slot)];
        return f.adjoint ? ComplexMatrix(x.adjoint()) : x;
      }
      case Factor::Kind::RangePower: return range_power(f);
    }
    return {};
  }

  // Range projections are computed in the corner of the unit so that the
  // unit acts as the identity there.
  const ComplexMatrix& range_power(const Factor& f) {
    const auto key = std::make_pair(f.slot, f.adjoint);
    auto it = chains_.find(key);
    if (it == chains_.end()) {
      const auto& x = t_[static_cast<std::size_t>(f.slot)];
      const ComplexMatrix c = corner_compress(f.adjoint ? ComplexMatrix(x.adjoint()) : x, unit_);
      const Eigen::Index r = c.rows();
      std::vector<ComplexMatrix> mats;
      for (const auto& fr : power_range_chain(c, Frame::full(r), static_cast<int>(std::max<Eigen::Index>(r, 1)), tol_,
                                                    spectral_norm(x)))
        mats.push_back(corner_embed(fr.projector(), unit_));
      it = chains_.emplace(key, std::move(mats)).first;
    }
    const auto& mats = it->second;
    const std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(f.power), mats.size() - 1);
    return mats[idx];
  }

  const TupleInstance& t_;
  const Projection& unit_;
  const ToleranceProfile& tol_;
  std::map<std::pair<int, bool>, std::vector<ComplexMatrix>> chains_;
};

inline void check_arity(const PropertySpec& spec, const TupleInstance& t) {
  if (static_cast<int>(t.size()) != spec.arity)
    throw InputError("property '" + spec.name + "' expects " + std::to_string(spec.arity) +
                     " tuple element(s), got " + std::to_string(t.size()));
}

}  // namespace detail

/// F_i(t) with the unit symbol bound to `unit`. The unit is expected to
/// commute with the tuple; the identity is always admissible.
inline std::vector<ComplexMatrix> evaluate(const PropertySpec& spec, const TupleInstance& t, const Projection& unit,
                                           const ToleranceProfile& tol) {
  detail::check_arity(spec, t);
  if (unit.dim() != t.dim()) throw InputError("evaluate: unit dimension does not match the tuple");
  detail::Evaluator ev(t, unit, tol);
  std::vector<ComplexMatrix> out;
  out.reserve(spec.functionals.size());
  for (const auto& f : spec.functionals) out.push_back(ev(f.polynomial));
  return out;
}

inline std::vector<ComplexMatrix> evaluate(const PropertySpec& spec, const TupleInstance& t,
                                           const ToleranceProfile& tol) {
  return evaluate(spec, t, Projection::identity(t.dim()), tol);
}

/// F_i(p t) evaluated in the corner pRp (unit = identity there), one
/// rank(p) x rank(p) matrix per functional.
inline std::vector<ComplexMatrix> evaluate_in_corner(const PropertySpec& spec, const TupleInstance& t,
                                                     const Projection& p, const ToleranceProfile& tol) {
  detail::check_arity(spec, t);
  const TupleInstance c = corner_compress(t, p);
  return evaluate(spec, c, Projection::identity(c.dim()), tol);
}

/// max_i ‖F_i(p t, unit := p) − p F_i(t, unit := 1)‖_F, with the left side
/// computed in the corner and embedded back.
inline double equivariance_check(const PropertySpec& spec, const TupleInstance& t, const Projection& p,
                                 const ToleranceProfile& tol) {
  detail::check_arity(spec, t);
  if (p.dim() != t.dim()) throw InputError("equivariance_check: projection dimension mismatch");
  for (const auto& x : t.elements()) {
    const double r = commutation_residual(p.matrix(), x);
    if (r > commutation_threshold(p.matrix(), x, tol))
      throw PreconditionError("equivariance_check: projection does not commute with the tuple", r);
  }
  const auto compressed = evaluate_in_corner(spec, t, p, tol);
  const auto global = evaluate(spec, t, tol);
  double worst = 0.0;
  for (std::size_t i = 0; i < global.size(); ++i) {
    const ComplexMatrix lhs = corner_embed(compressed[i], p);
    worst = std::max(worst, (lhs - p.matrix() * global[i]).norm());
  }
  return worst;
}

}  // namespace baerdec

#endif  // BAERDEC_PROPERTIES_HPP
