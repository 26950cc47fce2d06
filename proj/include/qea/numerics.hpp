#pragma once

// Dense complex Hermitian linear algebra with an explicit tolerance policy.
// Everything else in the toolkit is built on the handful of primitives here:
// validated eigendecompositions, numerical rank, orthonormal range bases,
// subspace intersections via principal angles, and clamped PSD square roots.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace qea {

using complexd = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;

// Relative symmetry tolerance for accepting a matrix as Hermitian.
inline constexpr double kSymTol = 1e-12;

// Thrown when an input violates a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a feasibility oracle cannot decide within its budget.
class OracleInconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by factorisation routines when M*M ⪯ K*K fails; carries the most
// negative eigenvalue of K*K − M*M as the violation certificate.
class OrderingError : public std::invalid_argument {
 public:
  OrderingError(const std::string& what, double most_negative)
      : std::invalid_argument(what), most_negative_eigenvalue(most_negative) {}
  double most_negative_eigenvalue;
};

// Central numeric thresholds. eig_zero separates "zero" eigenvalues when
// building supports and restricted inverses; psd_slack is the tolerated
// round-off violation of positivity; rank_rel is the relative rank / principal
// angle threshold.
struct TolerancePolicy {
  double eig_zero = 1e-9;
  double psd_slack = 1e-9;
  double rank_rel = 1e-9;

  void validate() const {
    for (double v : {eig_zero, psd_slack, rank_rel}) {
      if (!(v > 0.0) || !(v < 1e-3))
        throw PreconditionError("TolerancePolicy entries must lie in (0, 1e-3)");
    }
  }
};

struct SpectralDecomposition {
  rvec eigenvalues;  // ascending
  cmat eigenvectors; // unitary, columns matched to eigenvalues
};

// Symmetry check relative to max(1, max entry): the operators this toolkit
// handles are norm-bounded by O(1), so the unit floor keeps near-zero
// matrices with machine-dust asymmetry acceptable.
inline bool is_hermitian(const cmat& M, double tol = kSymTol) {
  if (M.rows() != M.cols()) return false;
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  return (M - M.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

// Eigendecomposition of a Hermitian matrix; rejects inputs whose symmetry
// violation exceeds kSymTol relative to the largest entry.
inline SpectralDecomposition eig_hermitian(const cmat& M) {
  if (M.rows() != M.cols())
    throw PreconditionError("eig_hermitian: matrix must be square");
  if (!is_hermitian(M))
    throw PreconditionError("eig_hermitian: matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<cmat> solver((M + M.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline double min_eigenvalue(const cmat& M) {
  return eig_hermitian(M).eigenvalues(0);
}

// Spectral norm of a Hermitian matrix (max |λ|).
inline double spectral_norm(const cmat& M) {
  if (M.size() == 0) return 0.0;
  const rvec ev = eig_hermitian(M).eigenvalues;
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

// Operator norm (largest singular value) of a general matrix.
inline double operator_norm(const cmat& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<cmat> svd(M);
  return svd.singularValues()(0);
}

// Count of eigenvalues with |λ| above rank_rel·max(1, ‖M‖₂). The absolute
// floor 1 keeps the threshold stable for the norm-bounded operators (effects,
// projections) this toolkit works with.
inline int numerical_rank(const cmat& M, const TolerancePolicy& pol = {}) {
  const SpectralDecomposition sd = eig_hermitian(M);
  const double norm = std::max(std::abs(sd.eigenvalues(0)),
                               std::abs(sd.eigenvalues(sd.eigenvalues.size() - 1)));
  const double thresh = pol.rank_rel * std::max(1.0, norm);
  int rank = 0;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i)
    if (std::abs(sd.eigenvalues(i)) > thresh) ++rank;
  return rank;
}

// Orthonormal basis of the numerical range of a general (possibly
// rectangular) matrix. Column count equals numerical_rank(MM*): singular
// values are kept when σ² exceeds rank_rel·max(1, σ₀²).
inline cmat orthonormal_range_basis(const cmat& M, const TolerancePolicy& pol = {}) {
  if (M.size() == 0) return cmat(M.rows(), 0);
  Eigen::JacobiSVD<cmat> svd(M, Eigen::ComputeThinU);
  const rvec sv = svd.singularValues();
  const double s0sq = sv.size() > 0 ? sv(0) * sv(0) : 0.0;
  const double thresh_sq = pol.rank_rel * std::max(1.0, s0sq);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) * sv(i) > thresh_sq) ++rank;
  return svd.matrixU().leftCols(rank);
}

namespace detail {

inline void check_orthonormal_columns(const cmat& U, const char* who) {
  if (U.cols() == 0) return;
  const cmat gram = U.adjoint() * U;
  const cmat eye = cmat::Identity(U.cols(), U.cols());
  if ((gram - eye).cwiseAbs().maxCoeff() > 1e-8)
    throw PreconditionError(std::string(who) + ": columns are not orthonormal");
}

} // namespace detail

// Largest cosine of a principal angle between the column spans of U and V
// (orthonormal-column inputs). Returns 0 for empty spans.
inline double max_principal_cosine(const cmat& U, const cmat& V) {
  if (U.cols() == 0 || V.cols() == 0) return 0.0;
  Eigen::JacobiSVD<cmat> svd(U.adjoint() * V);
  return std::min(1.0, svd.singularValues()(0));
}

// Orthonormal basis of ran U ∩ ran V, computed from the principal angles of
// the pair: singular values of U*V within rank_rel of 1 count as angle zero.
inline cmat subspace_intersection(const cmat& U, const cmat& V,
                                  const TolerancePolicy& pol = {}) {
  if (U.rows() != V.rows())
    throw PreconditionError("subspace_intersection: ambient dimensions differ");
  detail::check_orthonormal_columns(U, "subspace_intersection");
  detail::check_orthonormal_columns(V, "subspace_intersection");
  if (U.cols() == 0 || V.cols() == 0) return cmat(U.rows(), 0);
  Eigen::JacobiSVD<cmat> svd(U.adjoint() * V, Eigen::ComputeFullU);
  const rvec sv = svd.singularValues();
  int count = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) >= 1.0 - pol.rank_rel) ++count;
  if (count == 0) return cmat(U.rows(), 0);
  // U is an isometry, so pushing the left principal vectors through it keeps
  // orthonormality.
  return U * svd.matrixU().leftCols(count);
}

// Square root of a PSD matrix; eigenvalues in [−psd_slack, 0) are clamped to
// zero first, anything below −psd_slack is rejected.
inline cmat matrix_sqrt_psd(const cmat& M, const TolerancePolicy& pol = {}) {
  const SpectralDecomposition sd = eig_hermitian(M);
  if (sd.eigenvalues.size() > 0 && sd.eigenvalues(0) < -pol.psd_slack)
    throw PreconditionError("matrix_sqrt_psd: eigenvalue " +
                            std::to_string(sd.eigenvalues(0)) +
                            " below -psd_slack");
  rvec roots = sd.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return sd.eigenvectors * roots.asDiagonal() * sd.eigenvectors.adjoint();
}

// Spectral clamp of a Hermitian matrix into [lo, hi].
inline cmat clamp_spectrum(const cmat& M, double lo, double hi) {
  const SpectralDecomposition sd = eig_hermitian(M);
  rvec clamped = sd.eigenvalues.cwiseMax(lo).cwiseMin(hi);
  return sd.eigenvectors * clamped.asDiagonal() * sd.eigenvectors.adjoint();
}

} // namespace qea
