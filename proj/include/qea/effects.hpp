#pragma once

// The effect order and its factorisation structure: supports and restricted
// inverses, the contraction-splitting characterisation of A ⪯ E, weak-atom
// bounds, the projection lattice (meets, joins, commutativity projections),
// disjointness of effects, and pure-operation factorisation.

#include "qea/numerics.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace qea {

// Operator E with 0 ⪯ E ⪯ I. Construction validates the spectrum up to
// psd_slack and then clamps it into [0, 1], so downstream code can rely on
// exact effect bounds.
class Effect {
 public:
  explicit Effect(cmat m, const TolerancePolicy& pol = {}) {
    const SpectralDecomposition sd = eig_hermitian(m);
    const Eigen::Index n = sd.eigenvalues.size();
    if (n == 0) throw PreconditionError("Effect: empty matrix");
    if (sd.eigenvalues(0) < -pol.psd_slack)
      throw PreconditionError("Effect: eigenvalue " +
                              std::to_string(sd.eigenvalues(0)) + " below 0");
    if (sd.eigenvalues(n - 1) > 1.0 + pol.psd_slack)
      throw PreconditionError("Effect: eigenvalue " +
                              std::to_string(sd.eigenvalues(n - 1)) + " above 1");
    rvec ev = sd.eigenvalues.cwiseMax(0.0).cwiseMin(1.0);
    mat_ = sd.eigenvectors * ev.asDiagonal() * sd.eigenvectors.adjoint();
  }

  static Effect identity(int dim) { return Effect(cmat::Identity(dim, dim)); }
  static Effect zero(int dim) { return Effect(cmat::Zero(dim, dim)); }

  const cmat& matrix() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  Effect complement() const { return Effect(cmat::Identity(dim(), dim()) - mat_); }

 private:
  cmat mat_;
};

// Orthogonal projection; spectrum must be {0,1} within 1e-8. The stored
// matrix is rebuilt from the eigenvectors with λ > 1/2, which makes it
// idempotent to working precision.
class Projection {
 public:
  static constexpr double kTol = 1e-8;

  explicit Projection(const cmat& m) {
    const SpectralDecomposition sd = eig_hermitian(m);
    if ((m * m - m).norm() > kTol * std::max(1.0, m.norm()))
      throw PreconditionError("Projection: matrix is not idempotent");
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
      const double ev = sd.eigenvalues(i);
      if (std::abs(ev) > kTol && std::abs(ev - 1.0) > kTol)
        throw PreconditionError("Projection: eigenvalue " + std::to_string(ev) +
                                " not in {0,1}");
      if (ev > 0.5) kept.push_back(i);
    }
    basis_ = cmat(m.rows(), kept.size());
    for (std::size_t j = 0; j < kept.size(); ++j)
      basis_.col(j) = sd.eigenvectors.col(kept[j]);
    mat_ = basis_ * basis_.adjoint();
  }

  // Projection onto the span of orthonormal columns.
  static Projection onto_span(const cmat& basis) {
    Projection p;
    detail::check_orthonormal_columns(basis, "Projection::onto_span");
    p.basis_ = basis;
    p.mat_ = basis * basis.adjoint();
    return p;
  }

  static Projection identity(int dim) { return onto_span(cmat::Identity(dim, dim)); }
  static Projection zero(int dim) { return onto_span(cmat(dim, 0)); }

  const cmat& matrix() const { return mat_; }
  const cmat& basis() const { return basis_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  int rank() const { return static_cast<int>(basis_.cols()); }

  Projection complement() const {
    return Projection(cmat::Identity(dim(), dim()) - mat_);
  }

  Effect as_effect() const { return Effect(mat_); }

 private:
  Projection() = default;
  cmat mat_;
  cmat basis_;
};

// Bounded operator with ‖·‖ ≤ 1, possibly rectangular.
class Contraction {
 public:
  explicit Contraction(cmat m, double slack = 1e-9) : mat_(std::move(m)) {
    if (operator_norm(mat_) > 1.0 + slack)
      throw PreconditionError("Contraction: operator norm exceeds 1");
  }

  const cmat& matrix() const { return mat_; }
  Eigen::Index rows() const { return mat_.rows(); }
  Eigen::Index cols() const { return mat_.cols(); }

 private:
  cmat mat_;
};

// Single-Kraus operation ρ ↦ KρK*. Its effect is K*K.
struct PureOperation {
  Contraction kraus;

  explicit PureOperation(Contraction k) : kraus(std::move(k)) {
    (void)effect(); // validates K*K as an effect
  }

  Effect effect() const {
    return Effect(kraus.matrix().adjoint() * kraus.matrix());
  }
};

// ---------------------------------------------------------------------------
// Order and support machinery
// ---------------------------------------------------------------------------

// P_E: projection onto the span of eigenvectors of E with eigenvalue above
// eig_zero. In finite dimension this equals the closure of ran E and of
// ran E^{1/2}.
inline Projection support_projection(const Effect& E, const TolerancePolicy& pol = {}) {
  const SpectralDecomposition sd = eig_hermitian(E.matrix());
  int count = 0;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i)
    if (sd.eigenvalues(i) > pol.eig_zero) ++count;
  cmat basis(E.dim(), count);
  int j = 0;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i)
    if (sd.eigenvalues(i) > pol.eig_zero) basis.col(j++) = sd.eigenvectors.col(i);
  return Projection::onto_span(basis);
}

// E₀^{-1/2} extended by zero on the orthocomplement of the support. Satisfies
// E₀^{-1/2} E E₀^{-1/2} = P_E.
inline cmat restricted_inverse_sqrt(const Effect& E, const TolerancePolicy& pol = {}) {
  const SpectralDecomposition sd = eig_hermitian(E.matrix());
  cmat out = cmat::Zero(E.dim(), E.dim());
  int support_rank = 0;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    if (sd.eigenvalues(i) > pol.eig_zero) {
      ++support_rank;
      out += (1.0 / std::sqrt(sd.eigenvalues(i))) * sd.eigenvectors.col(i) *
             sd.eigenvectors.col(i).adjoint();
    }
  }
  if (support_rank == 0)
    throw PreconditionError("restricted_inverse_sqrt: zero effect has no support");
  return out;
}

// Effect order A ⪯ E, tested as E − A ⪰ −psd_slack·I.
inline bool below(const Effect& A, const Effect& E, const TolerancePolicy& pol = {}) {
  if (A.dim() != E.dim())
    throw PreconditionError("below: dimension mismatch");
  return min_eigenvalue(E.matrix() - A.matrix()) >= -pol.psd_slack;
}

namespace detail {

// Most negative eigenvalue of K*K − M*M; negative beyond slack means the
// ordering precondition M*M ⪯ K*K fails.
inline double ordering_margin(const cmat& M, const cmat& K) {
  return min_eigenvalue(K.adjoint() * K - M.adjoint() * M);
}

inline void require_gram_order(const Contraction& M, const Contraction& K,
                               const TolerancePolicy& pol, const char* who) {
  if (M.cols() != K.cols())
    throw PreconditionError(std::string(who) + ": domain dimensions differ");
  const double margin = ordering_margin(M.matrix(), K.matrix());
  if (margin < -pol.psd_slack)
    throw OrderingError(std::string(who) + ": M*M ⪯ K*K fails by " +
                            std::to_string(-margin),
                        margin);
}

} // namespace detail

// The unique contraction C with M = CK and C vanishing on (ran K)^⊥, given
// M*M ⪯ K*K. Built by mapping an orthonormal basis of ran K (column-pivoted
// Gram–Schmidt of K) through K-preimages, mirroring the map Kφ ↦ Mφ.
inline Contraction factor_contraction(const Contraction& M, const Contraction& K,
                                      const TolerancePolicy& pol = {}) {
  detail::require_gram_order(M, K, pol, "factor_contraction");
  Eigen::ColPivHouseholderQR<cmat> qr(K.matrix());
  qr.setThreshold(pol.rank_rel);
  const Eigen::Index r = qr.rank();
  cmat C = cmat::Zero(M.rows(), K.rows());
  if (r > 0) {
    const cmat Q1 = qr.householderQ() * cmat::Identity(K.rows(), r);
    // Preimages W with K·W = Q1: invert the leading triangular factor and
    // undo the column permutation.
    const cmat R1 = qr.matrixR().topLeftCorner(r, r).template triangularView<Eigen::Upper>();
    cmat W = cmat::Zero(K.cols(), r);
    W.topRows(r) = R1.triangularView<Eigen::Upper>().solve(cmat::Identity(r, r));
    W = qr.colsPermutation() * W;
    C = (M.matrix() * W) * Q1.adjoint();
  }
  // Round-off in near-rank-deficient inputs can push ‖C‖ slightly past 1.
  const double norm = operator_norm(C);
  if (norm > 1.0 + 1e-6)
    throw std::runtime_error("factor_contraction: factor norm " +
                             std::to_string(norm) + " exceeds 1");
  if (norm > 1.0) C /= norm;
  return Contraction(C);
}

// ‖C‖² for the factor above; equals inf{λ ∈ [0,1] : M*M ⪯ λ K*K}.
inline double min_dominating_scale(const Contraction& M, const Contraction& K,
                                   const TolerancePolicy& pol = {}) {
  const Contraction C = factor_contraction(M, K, pol);
  const double n = operator_norm(C.matrix());
  return std::min(1.0, n * n);
}

// ran M* ⊆ ran K*, decided by projecting a range basis of M* onto ran K*.
// Equivalent to ∃λ ≥ 0 with M*M ⪯ λK*K, which is verified as a cross-check
// whenever the inclusion test says yes.
inline bool range_inclusion(const Contraction& M, const Contraction& K,
                            const TolerancePolicy& pol = {}) {
  if (M.cols() != K.cols())
    throw PreconditionError("range_inclusion: domain dimensions differ");
  const cmat BM = orthonormal_range_basis(M.matrix().adjoint(), pol);
  if (BM.cols() == 0) return true;
  const cmat BK = orthonormal_range_basis(K.matrix().adjoint(), pol);
  const cmat P = BK * BK.adjoint();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < BM.cols(); ++j)
    worst = std::max(worst, (BM.col(j) - P * BM.col(j)).norm());
  const bool included = worst <= std::sqrt(pol.rank_rel);
  if (included && BK.cols() > 0) {
    // Scaled-domination cross-check: M*M ⪯ λK*K for λ = ‖M (K restricted)⁺‖².
    const double lo = min_eigenvalue(BK.adjoint() * K.matrix().adjoint() *
                                     K.matrix() * BK);
    if (lo > pol.eig_zero) {
      const double mhi = spectral_norm(M.matrix().adjoint() * M.matrix());
      const double lambda = mhi / lo;
      const double margin =
          min_eigenvalue(lambda * K.matrix().adjoint() * K.matrix() -
                         M.matrix().adjoint() * M.matrix());
      if (margin < -1e-6 * std::max(1.0, lambda))
        throw std::runtime_error("range_inclusion: domination cross-check failed");
    }
  }
  return included;
}

// sup{λ ≥ 0 : λ|φ⟩⟨φ| ⪯ E} for a unit vector φ. Zero when φ has a component
// outside the support of E; otherwise ‖E₀^{-1/2}φ‖^{-2}.
inline double weak_atom_bound(const Effect& E, const cvec& phi,
                              const TolerancePolicy& pol = {}) {
  if (phi.size() != E.dim())
    throw PreconditionError("weak_atom_bound: dimension mismatch");
  if (std::abs(phi.norm() - 1.0) > 1e-10)
    throw PreconditionError("weak_atom_bound: vector is not normalised");
  const SpectralDecomposition sd = eig_hermitian(E.matrix());
  double outside_sq = 0.0;
  double inv_norm_sq = 0.0;
  for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
    const double overlap_sq = std::norm(sd.eigenvectors.col(i).dot(phi));
    if (sd.eigenvalues(i) > pol.eig_zero)
      inv_norm_sq += overlap_sq / sd.eigenvalues(i);
    else
      outside_sq += overlap_sq;
  }
  if (std::sqrt(outside_sq) > 1e-8) return 0.0;
  return 1.0 / inv_norm_sq;
}

// ---------------------------------------------------------------------------
// Projection lattice
// ---------------------------------------------------------------------------

inline Projection projection_meet(const Projection& P, const Projection& R,
                                  const TolerancePolicy& pol = {}) {
  if (P.dim() != R.dim())
    throw PreconditionError("projection_meet: dimension mismatch");
  return Projection::onto_span(subspace_intersection(P.basis(), R.basis(), pol));
}

// Projection onto ran P + ran R.
inline Projection projection_join(const Projection& P, const Projection& R,
                                  const TolerancePolicy& pol = {}) {
  if (P.dim() != R.dim())
    throw PreconditionError("projection_join: dimension mismatch");
  cmat stacked(P.dim(), P.basis().cols() + R.basis().cols());
  stacked << P.basis(), R.basis();
  return Projection::onto_span(orthonormal_range_basis(stacked, pol));
}

// com(P,R) = (P∧R) ∨ (P∧R⊥) ∨ (P⊥∧R) ∨ (P⊥∧R⊥): the largest projection whose
// range consists of vectors on which P and R commute.
inline Projection commutativity_projection(const Projection& P, const Projection& R,
                                           const TolerancePolicy& pol = {}) {
  if (P.dim() != R.dim())
    throw PreconditionError("commutativity_projection: dimension mismatch");
  const Projection Pc = P.complement();
  const Projection Rc = R.complement();
  Projection out = projection_meet(P, R, pol);
  out = projection_join(out, projection_meet(P, Rc, pol), pol);
  out = projection_join(out, projection_meet(Pc, R, pol), pol);
  out = projection_join(out, projection_meet(Pc, Rc, pol), pol);
  return out;
}

// Disjointness E ∧ F = 0 of two effects, decided on support intersections
// (in finite dimension ran E^{1/2} = ran P_E). The certificate carries the
// largest principal-angle cosine between the supports and, when they meet, a
// unit witness vector in the intersection.
struct DisjointnessCertificate {
  bool disjoint = true;
  double overlap_cosine = 0.0;
  std::optional<cvec> witness;
};

inline DisjointnessCertificate effects_disjoint_certified(
    const Effect& E, const Effect& F, const TolerancePolicy& pol = {}) {
  if (E.dim() != F.dim())
    throw PreconditionError("effects_disjoint: dimension mismatch");
  const Projection PE = support_projection(E, pol);
  const Projection PF = support_projection(F, pol);
  DisjointnessCertificate cert;
  cert.overlap_cosine = max_principal_cosine(PE.basis(), PF.basis());
  cert.disjoint = cert.overlap_cosine < 1.0 - pol.rank_rel;
  if (!cert.disjoint) {
    const cmat meet = subspace_intersection(PE.basis(), PF.basis(), pol);
    if (meet.cols() > 0) cert.witness = meet.col(0);
  }
  return cert;
}

inline bool effects_disjoint(const Effect& E, const Effect& F,
                             const TolerancePolicy& pol = {}) {
  return effects_disjoint_certified(E, F, pol).disjoint;
}

// For E = f(A) given by a value table on the spectrum of A, verifies
// P_E ⪯ A({λ : f(λ) > 0}). Always true; returns the verification result.
inline bool support_bound_check(const rvec& f_values, const SpectralDecomposition& A,
                                const TolerancePolicy& pol = {}) {
  if (f_values.size() != A.eigenvalues.size())
    throw PreconditionError("support_bound_check: table size mismatch");
  if (f_values.minCoeff() < 0.0 || f_values.maxCoeff() > 1.0)
    throw PreconditionError("support_bound_check: f must take values in [0,1]");
  const cmat E = A.eigenvectors * f_values.asDiagonal() * A.eigenvectors.adjoint();
  const Projection PE = support_projection(Effect(E), pol);
  cmat S = cmat::Zero(E.rows(), E.cols());
  for (Eigen::Index i = 0; i < f_values.size(); ++i)
    if (f_values(i) > 0.0)
      S += A.eigenvectors.col(i) * A.eigenvectors.col(i).adjoint();
  return min_eigenvalue(S - PE.matrix()) >= -pol.psd_slack;
}

// Pure-operation factorisation: if Λ's effect ⪯ Φ's effect, there is a pure Ψ
// with Λ = Ψ∘Φ; its Kraus operator is the contraction factor of the pair.
inline PureOperation factor_pure_operation(const PureOperation& lambda,
                                           const PureOperation& phi,
                                           const TolerancePolicy& pol = {}) {
  return PureOperation(factor_contraction(lambda.kraus, phi.kraus, pol));
}

// Witness η ∈ ran PJ with ψ = J*η and ‖η‖ ≤ 1 for a dilation E = J*PJ,
// whenever |ψ⟩⟨ψ| ⪯ E; nullopt otherwise.
inline std::optional<cvec> dilation_lower_bound_witness(
    const Effect& E, const cmat& J, const Projection& P, const cvec& psi,
    const TolerancePolicy& pol = {}) {
  if (J.cols() != E.dim() || J.rows() != P.dim() || psi.size() != E.dim())
    throw PreconditionError("dilation_lower_bound_witness: shape mismatch");
  if ((J.adjoint() * P.matrix() * J - E.matrix()).norm() > 1e-8 * std::max(1.0, E.matrix().norm()))
    throw PreconditionError("dilation_lower_bound_witness: E != J*PJ");
  if (psi.norm() > 1.0 + 1e-10)
    throw PreconditionError("dilation_lower_bound_witness: ‖ψ‖ > 1");
  if (psi.norm() < 1e-14) return cvec::Zero(P.dim());
  if (min_eigenvalue(E.matrix() - psi * psi.adjoint()) < -pol.psd_slack)
    return std::nullopt;
  // Lemma setup: M = ⟨ψ| and K = PJ, so η spans ran C*.
  const Contraction M(psi.adjoint());
  const Contraction K(P.matrix() * J);
  const Contraction C = factor_contraction(M, K, pol);
  cvec eta = C.matrix().adjoint().col(0);
  return eta;
}

} // namespace qea
