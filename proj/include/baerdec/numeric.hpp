// Floating-point substrate: complex matrices, orthonormal frames, rank
// decisions and the handful of subspace operations everything else is
// built from.

#ifndef BAERDEC_NUMERIC_HPP
#define BAERDEC_NUMERIC_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace baerdec {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// ---------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (dimension mismatch, NaN, bad syntax).
class InputError : public Error {
public:
  using Error::Error;
};

/// Unknown property or symbol name.
class LookupError : public InputError {
public:
  using InputError::InputError;
};

/// An operation was called outside its mathematical precondition.
class PreconditionError : public Error {
public:
  PreconditionError(const std::string& what, double measured)
      : Error(what), measured_(measured) {}
  double measured() const noexcept { return measured_; }

private:
  double measured_;
};

/// The subspace iteration did not reach a fixed point in the allowed steps.
class NumericalInstabilityError : public Error {
public:
  NumericalInstabilityError(const std::string& what, std::vector<std::size_t> trace)
      : Error(what), trace_(std::move(trace)) {}
  const std::vector<std::size_t>& dimension_trace() const noexcept { return trace_; }

private:
  std::vector<std::size_t> trace_;
};

/// Two computations that must agree in exact arithmetic disagreed beyond
/// tolerance; usually a marginal rank decision.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

// ---------------------------------------------------------------------
// Tolerances
// ---------------------------------------------------------------------

/// Thresholds governing every floating-point decision.
struct ToleranceProfile {
  double rank_rel = 1e-10;   ///< singular values below rank_rel * reference are zero
  double res_rel = 1e-8;     ///< relative residual acceptance
  int max_iter_slack = 1;    ///< iterations allowed beyond the dimension

  void validate() const {
    if (!(rank_rel > 0.0 && rank_rel < 1.0))
      throw InputError("rank tolerance must lie in (0, 1)");
    if (!(res_rel > 0.0 && res_rel < 1.0))
      throw InputError("residual tolerance must lie in (0, 1)");
    if (max_iter_slack < 0)
      throw InputError("iteration slack must be nonnegative");
  }

  ToleranceProfile tightened(double factor) const {
    ToleranceProfile t = *this;
    t.rank_rel /= factor;
    return t;
  }
};

/// Threshold used by every subspace-equality comparison.
inline constexpr double kSubspaceEqualityTol = 1e-10;

// ---------------------------------------------------------------------
// Matrix helpers
// ---------------------------------------------------------------------

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

inline void require_finite(const ComplexMatrix& m, const char* what = "matrix") {
  if (!all_finite(m))
    throw InputError(std::string(what) + " has non-finite entries");
}

inline void require_square(const ComplexMatrix& m, const char* what = "matrix") {
  if (m.rows() != m.cols())
    throw InputError(std::string(what) + " is not square");
  require_finite(m, what);
}

inline double frobenius(const ComplexMatrix& m) { return m.norm(); }

inline double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

inline ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

// ---------------------------------------------------------------------
// Frame
// ---------------------------------------------------------------------

/// Orthonormal basis of a subspace of C^dim, stored column-wise.
///
/// A frame with zero columns is the zero subspace and is a legal value.
class Frame {
public:
  Frame() = default;

  /// Trusts the caller that `basis` has orthonormal columns.
  explicit Frame(ComplexMatrix basis) : basis_(std::move(basis)) {}

  static Frame zero(Eigen::Index dim) { return Frame(ComplexMatrix(dim, 0)); }
  static Frame full(Eigen::Index dim) { return Frame(identity(dim)); }

  Eigen::Index dim() const noexcept { return basis_.rows(); }
  Eigen::Index size() const noexcept { return basis_.cols(); }
  bool empty() const noexcept { return basis_.cols() == 0; }

  const ComplexMatrix& basis() const noexcept { return basis_; }

  /// Orthogonal projection F F*.
  ComplexMatrix projector() const { return basis_ * basis_.adjoint(); }

  /// ‖F* F − 1‖_F, zero for an exactly orthonormal frame.
  double orthonormality_defect() const {
    return (basis_.adjoint() * basis_ - identity(size())).norm();
  }

private:
  ComplexMatrix basis_;
};

/// ‖P − Q‖_F for the projectors of two frames.
inline double subspace_distance(const Frame& a, const Frame& b) {
  if (a.dim() != b.dim()) throw InputError("frames live in different dimensions");
  return (a.projector() - b.projector()).norm();
}

inline bool same_subspace(const Frame& a, const Frame& b) {
  return a.size() == b.size() &&
         subspace_distance(a, b) <= kSubspaceEqualityTol * static_cast<double>(std::max<Eigen::Index>(1, a.dim()));
}

// ---------------------------------------------------------------------
// Rank decisions
// ---------------------------------------------------------------------

namespace detail {

/// Number of singular values strictly above `cutoff`.
inline Eigen::Index count_above(const Eigen::VectorXd& sv, double cutoff) {
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return r;
}

}  // namespace detail

/// Column space of `m` with an explicit singular-value cutoff.
inline Frame range_frame_with_cutoff(const ComplexMatrix& m, double cutoff) {
  const Eigen::Index n = m.rows();
  if (m.cols() == 0 || n == 0) return Frame::zero(n);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return Frame::zero(n);
  const Eigen::Index r = detail::count_above(sv, cutoff);
  return Frame(svd.matrixU().leftCols(r));
}

/// Orthonormal basis of the column space of `m`. A singular value counts
/// toward the rank iff it exceeds rank_rel * σ_max.
inline Frame rank_revealing_frame(const ComplexMatrix& m, const ToleranceProfile& tol) {
  require_finite(m);
  if (m.size() == 0) return Frame::zero(m.rows());
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return Frame::zero(m.rows());
  const Eigen::Index r = detail::count_above(sv, tol.rank_rel * sv(0));
  return Frame(svd.matrixU().leftCols(r));
}

/// Same as above but with the cutoff measured against `reference` instead
/// of σ_max(m). Used when `m` may be pure round-off (a functional that
/// vanishes, a power of a nilpotent) and σ_max carries no scale.
inline Frame rank_revealing_frame(const ComplexMatrix& m, const ToleranceProfile& tol,
                                  double reference) {
  require_finite(m);
  return range_frame_with_cutoff(m, tol.rank_rel * reference);
}

/// Null space of `m` (as a subspace of C^{m.cols()}), cutoff absolute.
inline Frame kernel_frame_with_cutoff(const ComplexMatrix& m, double cutoff) {
  const Eigen::Index n = m.cols();
  if (n == 0) return Frame::zero(0);
  if (m.rows() == 0) return Frame::full(n);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const Eigen::Index r = detail::count_above(svd.singularValues(), cutoff);
  return Frame(svd.matrixV().rightCols(n - r));
}

/// Orthonormal complement of span(f) in C^dim.
inline Frame complement(const Frame& f) {
  const Eigen::Index n = f.dim();
  if (f.empty()) return Frame::full(n);
  if (f.size() == n) return Frame::zero(n);
  // Kernel of F*: exact for orthonormal F, singular values are 0 or 1.
  return kernel_frame_with_cutoff(f.basis().adjoint(), 0.5);
}

// ---------------------------------------------------------------------
// Subspace operations
// ---------------------------------------------------------------------

/// Intersection of the spans of `frames`. A vector lies in the
/// intersection iff every complement projector annihilates it, so this is
/// the kernel of the stacked complement projectors. The empty list gives
/// the whole space of dimension `dim_if_empty`.
inline Frame subspace_intersection(std::span<const Frame> frames, const ToleranceProfile& tol,
                                   Eigen::Index dim_if_empty = 0) {
  if (frames.empty()) return Frame::full(dim_if_empty);
  const Eigen::Index n = frames.front().dim();
  for (const auto& f : frames)
    if (f.dim() != n) throw InputError("subspace_intersection: frames of different dimension");

  std::vector<const Frame*> proper;
  for (const auto& f : frames) {
    if (f.empty()) return Frame::zero(n);
    if (f.size() < n) proper.push_back(&f);
  }
  if (proper.empty()) return Frame::full(n);
  if (proper.size() == 1) return *proper.front();

  ComplexMatrix stacked(n * static_cast<Eigen::Index>(proper.size()), n);
  Eigen::Index row = 0;
  for (const Frame* f : proper) {
    stacked.middleRows(row, n) = identity(n) - f->projector();
    row += n;
  }
  // Complement projectors have unit scale.
  return kernel_frame_with_cutoff(stacked, tol.rank_rel);
}

inline Frame subspace_intersection(std::initializer_list<Frame> frames, const ToleranceProfile& tol) {
  return subspace_intersection(std::span<const Frame>(frames.begin(), frames.size()), tol);
}

/// {v : a v ∈ span f}, the kernel of (1 − P_f) a. Cutoff relative to ‖a‖₂,
/// so a = 0 yields the full space.
inline Frame preimage_subspace(const ComplexMatrix& a, const Frame& f, const ToleranceProfile& tol) {
  require_square(a, "preimage operator");
  if (a.rows() != f.dim()) throw InputError("preimage_subspace: dimension mismatch");
  const Eigen::Index n = a.rows();
  const double scale = spectral_norm(a);
  if (scale == 0.0) return Frame::full(n);
  const ComplexMatrix residual = a - f.basis() * (f.basis().adjoint() * a);
  return kernel_frame_with_cutoff(residual, tol.rank_rel * scale);
}

}  // namespace baerdec

#endif  // BAERDEC_NUMERIC_HPP
