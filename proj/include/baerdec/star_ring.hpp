// The Baer *-ring M_n(C): projections, left/right projections, the
// projection lattice and corners.

#ifndef BAERDEC_STAR_RING_HPP
#define BAERDEC_STAR_RING_HPP

#include "numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace baerdec {

/// Self-adjoint idempotent, carried by an orthonormal frame of its range.
/// The matrix P = F F* is derived from the frame on construction.
class Projection {
public:
  Projection() = default;

  explicit Projection(Frame frame) : frame_(std::move(frame)), matrix_(frame_.projector()) {}

  static Projection zero(Eigen::Index dim) { return Projection(Frame::zero(dim)); }
  static Projection identity(Eigen::Index dim) { return Projection(Frame::full(dim)); }

  /// Canonicalizes an approximately-projection matrix: the range is the
  /// span of eigenvectors of (M + M*)/2 with eigenvalue above 1/2.
  static Projection from_matrix(const ComplexMatrix& m) {
    require_square(m, "projection matrix");
    const Eigen::Index n = m.rows();
    if (n == 0) return Projection(Frame::zero(0));
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
    // Eigenvalues come out ascending.
    Eigen::Index first = 0;
    while (first < n && eig.eigenvalues()(first) <= 0.5) ++first;
    return Projection(Frame(eig.eigenvectors().rightCols(n - first)));
  }

  Eigen::Index dim() const noexcept { return frame_.dim(); }
  Eigen::Index rank() const noexcept { return frame_.size(); }
  bool is_zero() const noexcept { return frame_.empty(); }
  bool is_identity() const noexcept { return frame_.size() == frame_.dim(); }

  const Frame& frame() const noexcept { return frame_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  Projection complement() const { return Projection(baerdec::complement(frame_)); }

  /// max(‖P² − P‖_F, ‖P* − P‖_F).
  double projection_defect() const {
    return std::max((matrix_ * matrix_ - matrix_).norm(), (matrix_.adjoint() - matrix_).norm());
  }

private:
  Frame frame_;
  ComplexMatrix matrix_;
};

inline double distance(const Projection& p, const Projection& q) {
  if (p.dim() != q.dim()) throw InputError("projections of different dimension");
  return (p.matrix() - q.matrix()).norm();
}

inline bool same_projection(const Projection& p, const Projection& q, double tol = kSubspaceEqualityTol) {
  return p.rank() == q.rank() &&
         distance(p, q) <= tol * static_cast<double>(std::max<Eigen::Index>(1, p.dim()));
}

/// ‖p q − q‖_F: zero iff q ≤ p.
inline double order_defect(const Projection& q, const Projection& p) {
  return (p.matrix() * q.matrix() - q.matrix()).norm();
}

/// Ordered list of equally sized matrices, the tuple x = (x_1, …, x_k).
class TupleInstance {
public:
  TupleInstance() = default;

  explicit TupleInstance(std::vector<ComplexMatrix> elements, std::vector<std::string> labels = {})
      : elements_(std::move(elements)), labels_(std::move(labels)) {
    if (elements_.empty()) throw InputError("tuple must have at least one element");
    const Eigen::Index n = elements_.front().rows();
    for (const auto& e : elements_) {
      require_square(e, "tuple element");
      if (e.rows() != n) throw InputError("tuple elements have different dimensions");
    }
    if (!labels_.empty() && labels_.size() != elements_.size())
      throw InputError("tuple labels do not match the number of elements");
  }

  std::size_t size() const noexcept { return elements_.size(); }
  Eigen::Index dim() const noexcept { return elements_.front().rows(); }
  const ComplexMatrix& operator[](std::size_t i) const { return elements_.at(i); }
  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::string label(std::size_t i) const {
    return labels_.empty() ? "x" + std::to_string(i + 1) : labels_.at(i);
  }

  double max_frobenius() const {
    double m = 0.0;
    for (const auto& e : elements_) m = std::max(m, e.norm());
    return m;
  }

  double max_spectral() const {
    double m = 0.0;
    for (const auto& e : elements_) m = std::max(m, spectral_norm(e));
    return m;
  }

private:
  std::vector<ComplexMatrix> elements_;
  std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------
// Left and right projections
// ---------------------------------------------------------------------

/// [x]: the smallest projection with [x] x = x, i.e. the projection onto
/// the column space of x.
inline Projection left_projection(const ComplexMatrix& x, const ToleranceProfile& tol) {
  require_square(x);
  return Projection(rank_revealing_frame(x, tol));
}

/// Left projection with a caller-provided reference scale for the cutoff.
inline Projection left_projection(const ComplexMatrix& x, const ToleranceProfile& tol, double reference) {
  require_square(x);
  return Projection(rank_revealing_frame(x, tol, reference));
}

/// [x*]: the smallest projection with x [x*] = x.
inline Projection right_projection(const ComplexMatrix& x, const ToleranceProfile& tol) {
  return left_projection(x.adjoint(), tol);
}

// ---------------------------------------------------------------------
// Lattice
// ---------------------------------------------------------------------

namespace detail {
inline Eigen::Index common_dim(std::span<const Projection> ps, Eigen::Index fallback) {
  if (ps.empty()) return fallback;
  const Eigen::Index n = ps.front().dim();
  for (const auto& p : ps)
    if (p.dim() != n) throw InputError("projections of different dimension");
  return n;
}
}  // namespace detail

/// Projection onto the span of all ranges; sup of the empty family is 0.
inline Projection proj_sup(std::span<const Projection> ps, const ToleranceProfile& tol, Eigen::Index dim_if_empty = 0) {
  const Eigen::Index n = detail::common_dim(ps, dim_if_empty);
  Eigen::Index cols = 0;
  for (const auto& p : ps) cols += p.rank();
  if (cols == 0) return Projection::zero(n);
  ComplexMatrix stacked(n, cols);
  Eigen::Index c = 0;
  for (const auto& p : ps) {
    stacked.middleCols(c, p.rank()) = p.frame().basis();
    c += p.rank();
  }
  return Projection(rank_revealing_frame(stacked, tol));
}

inline Projection proj_sup(std::initializer_list<Projection> ps, const ToleranceProfile& tol) {
  return proj_sup(std::span<const Projection>(ps.begin(), ps.size()), tol);
}

/// Projection onto the intersection of all ranges; inf of the empty
/// family is 1. Computed as 1 − sup(1 − p_i) and checked against the
/// direct subspace intersection.
inline Projection proj_inf(std::span<const Projection> ps, const ToleranceProfile& tol, Eigen::Index dim_if_empty = 0) {
  const Eigen::Index n = detail::common_dim(ps, dim_if_empty);
  if (ps.empty()) return Projection::identity(n);

  std::vector<Projection> complements;
  std::vector<Frame> frames;
  complements.reserve(ps.size());
  for (const auto& p : ps) {
    complements.push_back(p.complement());
    frames.push_back(p.frame());
  }
  Projection via_sup = proj_sup(complements, tol, n).complement();
  Projection direct(subspace_intersection(frames, tol, n));
  if (!same_projection(via_sup, direct, 1e-8))
    throw ConsistencyError("proj_inf: complement-of-sup and direct intersection disagree (ranks " +
                           std::to_string(via_sup.rank()) + " vs " + std::to_string(direct.rank()) + ")");
  return via_sup;
}

inline Projection proj_inf(std::initializer_list<Projection> ps, const ToleranceProfile& tol) {
  return proj_inf(std::span<const Projection>(ps.begin(), ps.size()), tol);
}

/// Product of commuting projections, re-canonicalized.
inline Projection proj_product(const Projection& p, const Projection& q) {
  return Projection::from_matrix(p.matrix() * q.matrix());
}

// ---------------------------------------------------------------------
// Commutation and corners
// ---------------------------------------------------------------------

/// ‖ab − ba‖_F.
inline double commutation_residual(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InputError("commutation_residual: dimension mismatch");
  return (a * b - b * a).norm();
}

/// The tolerance a commutation residual of (a, b) is compared against.
inline double commutation_threshold(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceProfile& tol) {
  return tol.res_rel * (1.0 + a.norm()) * (1.0 + b.norm());
}

inline bool commutes(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceProfile& tol) {
  return commutation_residual(a, b) <= commutation_threshold(a, b, tol);
}

/// p x p in the frame coordinates of p: a rank(p) x rank(p) matrix. The
/// rank-0 corner is the 0x0 matrix.
inline ComplexMatrix corner_compress(const ComplexMatrix& x, const Projection& p) {
  if (x.rows() != p.dim()) throw InputError("corner_compress: dimension mismatch");
  const auto& f = p.frame().basis();
  return f.adjoint() * x * f;
}

/// Inverse of corner_compress: F c F*.
inline ComplexMatrix corner_embed(const ComplexMatrix& c, const Projection& p) {
  const auto& f = p.frame().basis();
  return f * c * f.adjoint();
}

inline TupleInstance corner_compress(const TupleInstance& t, const Projection& p) {
  std::vector<ComplexMatrix> out;
  out.reserve(t.size());
  for (const auto& x : t.elements()) out.push_back(corner_compress(x, p));
  return TupleInstance(std::move(out), t.labels());
}

/// Projection expressed in corner coordinates back into the ambient space.
inline Projection corner_embed(const Projection& q, const Projection& p) {
  return Projection(Frame(p.frame().basis() * q.frame().basis()));
}

/// A projection of the ambient space that lies under p, in p's corner.
inline Projection corner_restrict(const Projection& q, const Projection& p) {
  return Projection::from_matrix(p.frame().basis().adjoint() * q.matrix() * p.frame().basis());
}

// ---------------------------------------------------------------------
// Powers
// ---------------------------------------------------------------------

/// Frames of ran x^0, ran x^1, …, ran x^count starting from `start`
/// (ran x^0 = span start). Each step takes the range of x applied to the
/// previous frame with cutoff rank_rel * ‖x‖₂, which keeps the decision
/// well scaled even when x^m is tiny or badly conditioned. A compressed x
/// should pass the norm of the uncompressed one as `reference`.
inline std::vector<Frame> power_range_chain(const ComplexMatrix& x, const Frame& start, int count,
                                            const ToleranceProfile& tol, double reference = -1.0) {
  std::vector<Frame> chain;
  chain.reserve(static_cast<std::size_t>(count) + 1);
  chain.push_back(start);
  const double scale = reference >= 0.0 ? reference : spectral_norm(x);
  for (int k = 1; k <= count; ++k) {
    const Frame& prev = chain.back();
    if (prev.empty() || scale == 0.0) {
      chain.push_back(Frame::zero(x.rows()));
      continue;
    }
    chain.push_back(range_frame_with_cutoff(x * prev.basis(), tol.rank_rel * scale));
  }
  return chain;
}

/// [x^m]. Ranges of powers form a decreasing chain that is constant from
/// index dim on, so m ≥ dim returns [x^dim].
inline Projection power_range_projection(const ComplexMatrix& x, int m, const ToleranceProfile& tol) {
  require_square(x);
  if (m < 1) throw InputError("power_range_projection: exponent must be positive");
  const Eigen::Index n = x.rows();
  const int steps = static_cast<int>(std::min<Eigen::Index>(m, std::max<Eigen::Index>(n, 1)));
  auto chain = power_range_chain(x, Frame::full(n), steps, tol);
  return Projection(std::move(chain.back()));
}

/// Integer power, x^0 = 1.
inline ComplexMatrix matrix_power(const ComplexMatrix& x, int m) {
  ComplexMatrix r = identity(x.rows());
  for (int k = 0; k < m; ++k) r = r * x;
  return r;
}

}  // namespace baerdec

#endif  // BAERDEC_STAR_RING_HPP
