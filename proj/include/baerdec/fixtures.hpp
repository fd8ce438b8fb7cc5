// Deterministic instance generators: the compatible-but-not-commuting
// example pair in M_9, planted decompositions with known answers, and
// random power partial isometries.

#ifndef BAERDEC_FIXTURES_HPP
#define BAERDEC_FIXTURES_HPP

#include "structure.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace baerdec::fixtures {

using Rng = std::mt19937_64;

/// i.i.d. standard complex Gaussian entries (real and imaginary parts of
/// variance 1/2).
inline ComplexMatrix gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = nd(rng);
      const double im = nd(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of diag(R) moved into Q.
inline ComplexMatrix haar_unitary(Eigen::Index n, Rng& rng) {
  if (n == 0) return ComplexMatrix(0, 0);
  const ComplexMatrix g = gaussian(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * identity(n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= a == 0.0 ? cplx(1.0) : d / a;
  }
  return q;
}

inline cplx unit_phase(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  return std::polar(1.0, u(rng));
}

inline ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

/// k x k matrix with ones on the subdiagonal; k = 1 is the 1x1 zero.
inline ComplexMatrix truncated_shift(Eigen::Index k) {
  ComplexMatrix s = ComplexMatrix::Zero(k, k);
  for (Eigen::Index i = 1; i < k; ++i) s(i, i - 1) = 1.0;
  return s;
}

// ---------------------------------------------------------------------
// The 9-dimensional example
// ---------------------------------------------------------------------

enum class ExampleVariant { Y, YPrime };

/// Basis index of e_{(i,j)}, i, j ∈ {1, 2, 3}.
constexpr Eigen::Index example_index(int i, int j) { return 3 * (i - 1) + (j - 1); }

/// Rank-one projection p_{i,j} onto e_{(i,j)}.
inline ComplexMatrix example_cell(int i, int j) {
  ComplexMatrix p = ComplexMatrix::Zero(9, 9);
  p(example_index(i, j), example_index(i, j)) = 1.0;
  return p;
}

/// x = Σ_{i,j ≤ 2} E_{(i+1,j),(i,j)}, y = Σ_{i,j ≤ 2} E_{(i,j+1),(i,j)}.
/// YPrime multiplies the (2,1) summand of y by `phase` (|phase| = 1,
/// phase ≠ 1). A seed conjugates both entries by the same Haar unitary.
inline TupleInstance gen_paper_example(ExampleVariant variant, cplx phase = cplx(0.0, 1.0),
                                       std::optional<std::uint64_t> seed = std::nullopt) {
  if (variant == ExampleVariant::YPrime) {
    if (std::abs(std::abs(phase) - 1.0) > 1e-12) throw InputError("gen_paper_example: phase must have modulus 1");
    if (std::abs(phase - cplx(1.0)) < 1e-12) throw InputError("gen_paper_example: phase 1 gives u = p_{2,2}");
  }
  ComplexMatrix x = ComplexMatrix::Zero(9, 9), y = ComplexMatrix::Zero(9, 9);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      x(example_index(i + 1, j), example_index(i, j)) = 1.0;
      const bool twisted = variant == ExampleVariant::YPrime && i == 2 && j == 1;
      y(example_index(i, j + 1), example_index(i, j)) = twisted ? phase : cplx(1.0);
    }
  if (seed) {
    Rng rng(*seed);
    const ComplexMatrix u = haar_unitary(9, rng);
    x = u * x * u.adjoint();
    y = u * y * u.adjoint();
  }
  return TupleInstance({x, y}, {"x", variant == ExampleVariant::Y ? "y" : "y_prime"});
}

// ---------------------------------------------------------------------
// Planted decompositions
// ---------------------------------------------------------------------

struct PlantedInstance {
  TupleInstance tuple;
  Projection expected_projection;
  ComplexMatrix conjugator;
  std::uint64_t seed = 0;
  std::string description;
};

/// One diagonal block of a planted instance: a tuple that either has the
/// property or completely lacks it.
struct Block {
  std::vector<ComplexMatrix> entries;
  bool has_property = true;
};

/// Block-diagonal tuple ⊕ blocks, conjugated by a seeded Haar unitary.
/// The construction is audited first: the blocks with the property must
/// annihilate every functional, and the engine must find nothing in the
/// direct sum of the other blocks.
inline PlantedInstance gen_planted(const std::vector<Block>& blocks, const PropertySpec& spec, std::uint64_t seed,
                                   const ToleranceProfile& tol = {}, std::string description = {}) {
  if (blocks.empty()) throw InputError("gen_planted: no blocks");
  const std::size_t arity = blocks.front().entries.size();
  for (const auto& b : blocks)
    if (b.entries.size() != arity || b.entries.empty()) throw InputError("gen_planted: blocks of different arity");

  std::vector<ComplexMatrix> with(arity), without(arity), all(arity);
  for (std::size_t s = 0; s < arity; ++s) with[s] = without[s] = all[s] = ComplexMatrix(0, 0);
  std::vector<bool> mask;
  for (const auto& b : blocks) {
    const Eigen::Index k = b.entries.front().rows();
    for (std::size_t s = 0; s < arity; ++s) {
      if (b.entries[s].rows() != k || b.entries[s].cols() != k)
        throw InputError("gen_planted: entries of a block differ in size");
      all[s] = direct_sum(all[s], b.entries[s]);
      auto& side = b.has_property ? with[s] : without[s];
      side = direct_sum(side, b.entries[s]);
    }
    for (Eigen::Index i = 0; i < k; ++i) mask.push_back(b.has_property);
  }

  if (with.front().rows() > 0) {
    const TupleInstance a(with);
    const double scale = functional_scale(spec, a);
    for (const auto& v : evaluate(spec, a, tol))
      if (v.norm() > tol.res_rel * scale) throw InputError("gen_planted: a block marked as having the property lacks it");
  }
  if (without.front().rows() > 0) {
    const TupleInstance b(without);
    if (max_property_projection(b, spec, tol).projection.rank() != 0)
      throw InputError("gen_planted: blocks marked as lacking the property are not completely without it");
  }

  const Eigen::Index n = all.front().rows();
  Rng rng(seed);
  const ComplexMatrix u = haar_unitary(n, rng);
  std::vector<ComplexMatrix> conj;
  for (const auto& e : all) conj.push_back(u * e * u.adjoint());

  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = mask[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
  std::vector<std::string> labels;
  for (std::size_t s = 0; s < arity; ++s) labels.push_back(arity <= 2 ? std::string(s == 0 ? "x" : "y") : "x" + std::to_string(s + 1));

  PlantedInstance out;
  out.tuple = TupleInstance(std::move(conj), std::move(labels));
  out.expected_projection = Projection::from_matrix(u * d * u.adjoint());
  out.conjugator = u;
  out.seed = seed;
  out.description = std::move(description);
  return out;
}

namespace detail {

inline ComplexMatrix random_normal(Eigen::Index k, Rng& rng, double min_modulus = 0.5, double max_modulus = 1.5) {
  std::uniform_real_distribution<double> mod(min_modulus, max_modulus);
  ComplexMatrix d = ComplexMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) d(i, i) = mod(rng) * unit_phase(rng);
  const ComplexMatrix u = haar_unitary(k, rng);
  return u * d * u.adjoint();
}

/// Projection onto a uniformly random r-dimensional subspace of C^k.
inline ComplexMatrix random_projection(Eigen::Index k, Eigen::Index r, Rng& rng) {
  const ComplexMatrix u = haar_unitary(k, rng);
  return u.leftCols(r) * u.leftCols(r).adjoint();
}

/// Pair of simultaneously diagonal normals in a random basis.
inline std::pair<ComplexMatrix, ComplexMatrix> commuting_normals(Eigen::Index k, Rng& rng) {
  std::uniform_real_distribution<double> mod(0.5, 1.5);
  ComplexMatrix d1 = ComplexMatrix::Zero(k, k), d2 = ComplexMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    d1(i, i) = mod(rng) * unit_phase(rng);
    d2(i, i) = mod(rng) * unit_phase(rng);
  }
  const ComplexMatrix u = haar_unitary(k, rng);
  return {u * d1 * u.adjoint(), u * d2 * u.adjoint()};
}

}  // namespace detail

/// Random planted instance of total dimension `dim` for a built-in
/// property. The part with the property has a random dimension (possibly
/// 0); the rest is a generic block known to lack the property completely.
inline PlantedInstance random_planted(const std::string& property, Eigen::Index dim, std::uint64_t seed,
                                      const ToleranceProfile& tol = {}) {
  if (dim < 2) throw InputError("random_planted: dimension must be at least 2");
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const PropertySpec spec = builtin_property(property, dim);

  // Sizes: `good` with the property, `bad` without; bad ≥ 2 except for
  // properties a 1x1 block can fail.
  const bool bad_can_be_one = property == "unitary" || property == "isometry" || property == "coisometry" ||
                              property == "partial_isometry";
  const Eigen::Index min_bad = bad_can_be_one ? 1 : 2;
  std::uniform_int_distribution<Eigen::Index> pick(0, dim - min_bad);
  Eigen::Index good = pick(rng);
  Eigen::Index bad = dim - good;
  if (property == "compatible" && bad % 2 == 1) {
    // generic-position projection pairs need even size
    if (good > 0) {
      --good;
      ++bad;
    } else {
      ++good;
      --bad;
    }
  }

  std::vector<Block> blocks;
  if (property == "normal") {
    if (good) blocks.push_back({{detail::random_normal(good, rng, 0.1, 2.0)}, true});
    blocks.push_back({{fixtures::gaussian(bad, bad, rng)}, false});
  } else if (property == "partial_isometry") {
    if (good) {
      std::uniform_int_distribution<Eigen::Index> rk(0, good);
      const Eigen::Index r = rk(rng);
      const ComplexMatrix u = haar_unitary(good, rng), v = haar_unitary(good, rng);
      blocks.push_back({{ComplexMatrix(u.leftCols(r) * v.leftCols(r).adjoint())}, true});
    }
    blocks.push_back({{fixtures::gaussian(bad, bad, rng)}, false});
  } else if (property == "unitary" || property == "isometry" || property == "coisometry") {
    if (good) blocks.push_back({{haar_unitary(good, rng)}, true});
    blocks.push_back({{ComplexMatrix(fixtures::gaussian(bad, bad, rng) * 0.5)}, false});
  } else if (property == "commuting") {
    if (good) {
      const ComplexMatrix a = fixtures::gaussian(good, good, rng);
      const ComplexMatrix b = 0.5 * a * a + 0.3 * a + cplx(0.2, -0.1) * identity(good);
      blocks.push_back({{a, b}, true});
    }
    blocks.push_back({{fixtures::gaussian(bad, bad, rng), fixtures::gaussian(bad, bad, rng)}, false});
  } else if (property == "doubly_commuting") {
    if (good) {
      auto [a, b] = detail::commuting_normals(good, rng);
      blocks.push_back({{a, b}, true});
    }
    blocks.push_back({{fixtures::gaussian(bad, bad, rng), fixtures::gaussian(bad, bad, rng)}, false});
  } else if (property == "compatible") {
    if (good) {
      auto [a, b] = detail::commuting_normals(good, rng);
      blocks.push_back({{a, b}, true});
    }
    blocks.push_back({{detail::random_projection(bad, bad / 2, rng), detail::random_projection(bad, bad / 2, rng)}, false});
  } else {
    throw LookupError("random_planted: no generator for property '" + property + "'");
  }
  return gen_planted(blocks, spec, seed, tol,
                     property + ": " + std::to_string(good) + "-dim part with the property, " + std::to_string(bad) +
                         "-dim part without");
}

// ---------------------------------------------------------------------
// Power partial isometries
// ---------------------------------------------------------------------

struct PowerPartialIsometry {
  ComplexMatrix matrix;
  ShiftProfile profile;  ///< ground truth
  ComplexMatrix conjugator;
};

/// Haar unitary of size `unitary_dim` ⊕ truncated shifts (m_k blocks of
/// length k), conjugated by a Haar unitary.
inline PowerPartialIsometry gen_power_partial_isometry(const std::map<int, int>& multiplicities,
                                                       Eigen::Index unitary_dim, std::uint64_t seed) {
  Eigen::Index shift_dim = 0;
  for (const auto& [k, m] : multiplicities) {
    if (k < 1 || m < 0) throw InputError("gen_power_partial_isometry: block lengths must be positive, counts nonnegative");
    shift_dim += static_cast<Eigen::Index>(k) * m;
  }
  if (unitary_dim < 0) throw InputError("gen_power_partial_isometry: negative unitary dimension");
  if (shift_dim + unitary_dim == 0) throw InputError("gen_power_partial_isometry: empty specification");

  Rng rng(seed);
  ComplexMatrix x = haar_unitary(unitary_dim, rng);
  ComplexMatrix d = ComplexMatrix::Zero(unitary_dim, unitary_dim);
  d.setIdentity();
  for (const auto& [k, m] : multiplicities)
    for (int i = 0; i < m; ++i) {
      x = direct_sum(x, truncated_shift(k));
      d = direct_sum(d, ComplexMatrix::Zero(k, k));
    }
  const Eigen::Index n = x.rows();
  const ComplexMatrix u = haar_unitary(n, rng);

  PowerPartialIsometry out;
  out.matrix = u * x * u.adjoint();
  out.conjugator = u;
  out.profile.unitary_projection = Projection::from_matrix(u * d * u.adjoint());
  for (const auto& [k, m] : multiplicities)
    if (m > 0) out.profile.multiplicities[k] = m;
  out.profile.remainder = out.profile.unitary_projection.complement();
  return out;
}

/// Random multiplicity profile with total dimension at most `max_dim`.
inline std::pair<std::map<int, int>, Eigen::Index> random_shift_spec(Eigen::Index max_dim, Rng& rng) {
  std::uniform_int_distribution<Eigen::Index> total(1, max_dim);
  const Eigen::Index n = total(rng);
  std::uniform_int_distribution<Eigen::Index> ud(0, n);
  const Eigen::Index unitary_dim = ud(rng);
  Eigen::Index left = n - unitary_dim;
  std::map<int, int> mult;
  while (left > 0) {
    std::uniform_int_distribution<Eigen::Index> len(1, left);
    const int k = static_cast<int>(len(rng));
    ++mult[k];
    left -= k;
  }
  return {mult, unitary_dim};
}

// ---------------------------------------------------------------------
// Mixed instances for multi-property decompositions
// ---------------------------------------------------------------------

/// Single matrix U(W ⊕ N ⊕ G)U* with W unitary, N normal and not unitary
/// anywhere, G generic. Known answer: p_unitary = U(1⊕0⊕0)U*,
/// p_normal = U(1⊕1⊕0)U*. Any block may be empty except that the total
/// dimension is `dim`.
struct MixedSingle {
  ComplexMatrix x;
  Projection unitary_part, normal_part;
};

inline MixedSingle random_normal_unitary_mix(Eigen::Index dim, std::uint64_t seed) {
  if (dim < 1) throw InputError("random_normal_unitary_mix: dimension must be positive");
  Rng rng(seed ^ 0x2545f4914f6cdd1dULL);
  std::uniform_int_distribution<Eigen::Index> pick(0, dim);
  Eigen::Index w = pick(rng), g = pick(rng);
  if (w + g > dim) std::swap(w, g), g = dim - w;
  if (g == 1) g = 0;  // a 1x1 block is normal
  const Eigen::Index nn = dim - w - g;

  ComplexMatrix nrm = ComplexMatrix::Zero(nn, nn);
  std::uniform_real_distribution<double> mod(0.2, 0.8);
  for (Eigen::Index i = 0; i < nn; ++i) nrm(i, i) = mod(rng) * unit_phase(rng);
  const ComplexMatrix vn = haar_unitary(nn, rng);
  const ComplexMatrix x0 = direct_sum(direct_sum(haar_unitary(w, rng), vn * nrm * vn.adjoint()), gaussian(g, g, rng));

  ComplexMatrix du = ComplexMatrix::Zero(dim, dim), dn = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < w; ++i) du(i, i) = dn(i, i) = 1.0;
  for (Eigen::Index i = w; i < w + nn; ++i) dn(i, i) = 1.0;
  const ComplexMatrix u = haar_unitary(dim, rng);
  return {u * x0 * u.adjoint(), Projection::from_matrix(u * du * u.adjoint()),
          Projection::from_matrix(u * dn * u.adjoint())};
}

/// Pair U(A ⊕ B ⊕ C ⊕ D)U* with one block per quaternary cell of
/// (commuting, compatible):
///   A  commuting normals                      -> "11"
///   B  (E, 1 − E), E a skew idempotent (2x2)  -> "10"
///   C  (J, J*), J the 2x2 Jordan cell         -> "01"
///   D  two projections in generic position    -> "00"
/// Blocks B, C, D come in copies of size 2; expected cell projections are
/// returned alongside.
struct QuadPair {
  TupleInstance tuple;
  std::map<std::string, Projection> expected;  ///< keys "11", "10", "01", "00"
};

inline QuadPair random_quad_pair(Eigen::Index dim, std::uint64_t seed) {
  if (dim < 1) throw InputError("random_quad_pair: dimension must be positive");
  Rng rng(seed ^ 0xd1b54a32d192ed03ULL);
  std::uniform_int_distribution<int> cell_pick(0, 3);
  std::vector<int> cells;  // 0 = "11" (size 1), others size 2
  Eigen::Index used = 0;
  while (used < dim) {
    int c = cell_pick(rng);
    if (used + 2 > dim) c = 0;
    cells.push_back(c);
    used += c == 0 ? 1 : 2;
  }

  ComplexMatrix x(0, 0), y(0, 0);
  std::vector<int> tag;
  std::uniform_real_distribution<double> mod(0.5, 1.5), ang(0.2, 1.3), skew(0.3, 2.0);
  for (int c : cells) {
    ComplexMatrix a, b;
    switch (c) {
      case 0:
        a = ComplexMatrix::Constant(1, 1, mod(rng) * unit_phase(rng));
        b = ComplexMatrix::Constant(1, 1, mod(rng) * unit_phase(rng));
        break;
      case 1: {
        a = ComplexMatrix::Zero(2, 2);
        a(0, 0) = 1.0;
        a(0, 1) = skew(rng) * unit_phase(rng);
        b = identity(2) - a;
        break;
      }
      case 2: {
        a = ComplexMatrix::Zero(2, 2);
        a(0, 1) = mod(rng);
        b = a.adjoint();
        break;
      }
      default: {
        const double t = ang(rng);
        ComplexVector v(2);
        v << std::cos(t), std::sin(t) * unit_phase(rng);
        a = ComplexMatrix::Zero(2, 2);
        a(0, 0) = 1.0;
        b = v * v.adjoint();
        break;
      }
    }
    x = direct_sum(x, a);
    y = direct_sum(y, b);
    for (Eigen::Index i = 0; i < a.rows(); ++i) tag.push_back(c);
  }

  const ComplexMatrix u = haar_unitary(dim, rng);
  QuadPair out{TupleInstance({u * x * u.adjoint(), u * y * u.adjoint()}, {"x", "y"}), {}};
  const char* names[4] = {"11", "10", "01", "00"};
  for (int c = 0; c < 4; ++c) {
    ComplexMatrix d = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      if (tag[static_cast<std::size_t>(i)] == c) d(i, i) = 1.0;
    out.expected[names[c]] = Projection::from_matrix(u * d * u.adjoint());
  }
  return out;
}

/// Doubly commuting pair U((A ⊗ 1) ⊕ D₁, (1 ⊗ B) ⊕ D₂)U* with A, B
/// rank-deficient and non-normal, D₁, D₂ diagonal. Also returns the
/// projection onto the Kronecker block, which commutes with both.
struct DoublyCommutingPair {
  TupleInstance tuple;
  Projection block;
};

inline DoublyCommutingPair random_doubly_commuting_pair(Eigen::Index max_dim, std::uint64_t seed) {
  Rng rng(seed ^ 0x94d049bb133111ebULL);
  std::uniform_int_distribution<Eigen::Index> fa(2, 3), fb(2, 3);
  const Eigen::Index a = fa(rng), b = fb(rng);
  const Eigen::Index kron = a * b;
  std::uniform_int_distribution<Eigen::Index> extra(0, std::max<Eigen::Index>(0, max_dim - kron));
  const Eigen::Index e = extra(rng);
  const Eigen::Index n = kron + e;

  const ComplexMatrix ma = gaussian(a, a - 1, rng) * gaussian(a - 1, a, rng);
  const ComplexMatrix mb = gaussian(b, b - 1, rng) * gaussian(b - 1, b, rng);
  ComplexMatrix xk = Eigen::kroneckerProduct(ma, identity(b));
  ComplexMatrix yk = Eigen::kroneckerProduct(identity(a), mb);
  ComplexMatrix d1 = ComplexMatrix::Zero(e, e), d2 = ComplexMatrix::Zero(e, e);
  std::uniform_real_distribution<double> mod(0.0, 1.5);
  for (Eigen::Index i = 0; i < e; ++i) {
    d1(i, i) = mod(rng) * unit_phase(rng);
    d2(i, i) = mod(rng) * unit_phase(rng);
  }
  const ComplexMatrix u = haar_unitary(n, rng);
  ComplexMatrix blk = ComplexMatrix::Zero(n, n);
  blk.topLeftCorner(kron, kron).setIdentity();
  return {TupleInstance({u * direct_sum(xk, d1) * u.adjoint(), u * direct_sum(yk, d2) * u.adjoint()}, {"x", "y"}),
          Projection::from_matrix(u * blk * u.adjoint())};
}

// ---------------------------------------------------------------------
// Unstructured tuples
// ---------------------------------------------------------------------

/// Random tuple with no planted structure. `kind` cycles through dense
/// Gaussian, rank-deficient, nilpotent-like and normal entries so that the
/// engine sees both trivial and nontrivial answers.
inline TupleInstance random_tuple(int arity, Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed ^ 0x5851f42d4c957f2dULL);
  std::uniform_int_distribution<int> kind_pick(0, 3);
  std::vector<ComplexMatrix> elems;
  for (int s = 0; s < arity; ++s) {
    const int kind = kind_pick(rng);
    ComplexMatrix m;
    switch (kind) {
      case 0: m = gaussian(dim, dim, rng); break;
      case 1: {
        std::uniform_int_distribution<Eigen::Index> rk(0, dim);
        const Eigen::Index r = rk(rng);
        m = gaussian(dim, r, rng) * gaussian(r, dim, rng);
        break;
      }
      case 2: {
        const ComplexMatrix u = haar_unitary(dim, rng);
        ComplexMatrix tri = gaussian(dim, dim, rng).triangularView<Eigen::StrictlyUpper>();
        m = u * tri * u.adjoint();
        break;
      }
      default: m = detail::random_normal(dim, rng, 0.2, 2.0); break;
    }
    elems.push_back(std::move(m));
  }
  std::vector<std::string> labels;
  for (int s = 0; s < arity; ++s) labels.push_back(arity <= 2 ? std::string(s == 0 ? "x" : "y") : "x" + std::to_string(s + 1));
  return TupleInstance(std::move(elems), std::move(labels));
}

}  // namespace baerdec::fixtures

#endif  // BAERDEC_FIXTURES_HPP
