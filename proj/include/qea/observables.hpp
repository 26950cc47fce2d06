#pragma once

// Discrete observables (POVMs), binary coarse-grainings and the test
// relation, outcome families, minimal diagonal Naimark dilations, and the
// complementarity verdicts defined through support intersections or through
// dilations. The two criteria are algebraically equivalent and are kept as
// independent numerical routes so they can cross-validate each other.

#include "qea/effects.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace qea {

// Finite labeled family of effects summing to identity.
class DiscreteObservable {
 public:
  DiscreteObservable(std::vector<std::string> labels, std::vector<Effect> effects,
                     const TolerancePolicy& pol = {})
      : labels_(std::move(labels)), effects_(std::move(effects)) {
    if (labels_.empty() || labels_.size() != effects_.size())
      throw PreconditionError("DiscreteObservable: labels/effects mismatch");
    const int d = effects_.front().dim();
    cmat sum = cmat::Zero(d, d);
    for (const Effect& e : effects_) {
      if (e.dim() != d)
        throw PreconditionError("DiscreteObservable: inhomogeneous dimensions");
      sum += e.matrix();
    }
    if ((sum - cmat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-8)
      throw PreconditionError("DiscreteObservable: effects do not sum to identity");
    for (std::size_t i = 0; i < labels_.size(); ++i)
      for (std::size_t j = i + 1; j < labels_.size(); ++j)
        if (labels_[i] == labels_[j])
          throw PreconditionError("DiscreteObservable: duplicate label " + labels_[i]);
    (void)pol;
  }

  int dim() const { return effects_.front().dim(); }
  int outcomes() const { return static_cast<int>(effects_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_.at(i); }
  const Effect& effect(int i) const { return effects_.at(i); }

  int index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return static_cast<int>(i);
    throw PreconditionError("DiscreteObservable: unknown label " + label);
  }

  // E(X) = Σ_{x∈X} E(x) for an index subset X.
  Effect effect_of(const std::vector<int>& subset) const {
    cmat sum = cmat::Zero(dim(), dim());
    for (int idx : subset) {
      if (idx < 0 || idx >= outcomes())
        throw PreconditionError("DiscreteObservable: outcome index out of range");
      sum += effects_[idx].matrix();
    }
    return Effect(sum);
  }

  bool is_projective(const TolerancePolicy& pol = {}) const {
    for (const Effect& e : effects_) {
      const cmat& m = e.matrix();
      if ((m * m - m).norm() > 1e-8 * std::max(1.0, m.norm())) return false;
    }
    (void)pol;
    return true;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Effect> effects_;
};

// Family 𝒜₀ of outcome subsets against which complementarity is tested.
// Subsets are index sets; none may be empty or the full outcome set.
struct OutcomeFamily {
  std::vector<std::vector<int>> sets;

  void validate(int n_outcomes) const {
    for (const auto& s : sets) {
      if (s.empty())
        throw PreconditionError("OutcomeFamily: empty subset");
      if (static_cast<int>(s.size()) >= n_outcomes)
        throw PreconditionError("OutcomeFamily: subset must be proper");
      for (int idx : s)
        if (idx < 0 || idx >= n_outcomes)
          throw PreconditionError("OutcomeFamily: index out of range");
    }
  }

  static OutcomeFamily singletons(int n_outcomes) {
    OutcomeFamily f;
    for (int i = 0; i < n_outcomes; ++i) f.sets.push_back({i});
    return f;
  }

  // All proper subsets of size ≤ k_max (singletons first).
  static OutcomeFamily proper_subsets_up_to(int n_outcomes, int k_max = 2) {
    OutcomeFamily f;
    const int cap = std::min(k_max, n_outcomes - 1);
    std::vector<int> current;
    auto rec = [&](auto&& self, int start, int remaining) -> void {
      if (!current.empty()) f.sets.push_back(current);
      if (remaining == 0) return;
      for (int i = start; i < n_outcomes; ++i) {
        current.push_back(i);
        self(self, i + 1, remaining - 1);
        current.pop_back();
      }
    };
    rec(rec, 0, cap);
    std::stable_sort(f.sets.begin(), f.sets.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return f;
  }
};

// Yes/no observable: a single effect and its complement.
class BinaryObservable {
 public:
  explicit BinaryObservable(Effect yes) : yes_(std::move(yes)), no_(yes_.complement()) {}

  const Effect& yes() const { return yes_; }
  const Effect& no() const { return no_; }
  int dim() const { return yes_.dim(); }

 private:
  Effect yes_;
  Effect no_;
};

inline BinaryObservable coarse_grain(const DiscreteObservable& E,
                                     const std::vector<int>& subset) {
  if (subset.empty()) return BinaryObservable(Effect::zero(E.dim()));
  return BinaryObservable(E.effect_of(subset));
}

inline BinaryObservable coarse_grain(const DiscreteObservable& E,
                                     const std::vector<std::string>& labels) {
  std::vector<int> subset;
  subset.reserve(labels.size());
  for (const auto& l : labels) subset.push_back(E.index_of(l));
  return coarse_grain(E, subset);
}

// A is a test for Q iff A(1) ≠ 0 and A(1) ⪯ Q(1): the yes-outcome of A
// certifies the yes-outcome of Q and fires on some state.
inline bool is_test(const BinaryObservable& A, const BinaryObservable& Q,
                    const TolerancePolicy& pol = {}) {
  if (A.dim() != Q.dim())
    throw PreconditionError("is_test: dimension mismatch");
  if (numerical_rank(A.yes().matrix(), pol) == 0) return false;
  return below(A.yes(), Q.yes(), pol);
}

// Existence of a common test for two binary observables; equivalent to the
// yes-effects not being disjoint. The witness is λ|w⟩⟨w| with w a unit vector
// in the support intersection and λ the smaller of the two weak-atom bounds.
struct CommonTestResult {
  bool exists = false;
  std::optional<Effect> witness;
};

inline CommonTestResult common_test_exists(const BinaryObservable& Q1,
                                           const BinaryObservable& Q2,
                                           const TolerancePolicy& pol = {}) {
  if (Q1.dim() != Q2.dim())
    throw PreconditionError("common_test_exists: dimension mismatch");
  const DisjointnessCertificate cert =
      effects_disjoint_certified(Q1.yes(), Q2.yes(), pol);
  CommonTestResult out;
  out.exists = !cert.disjoint;
  if (out.exists && cert.witness) {
    const cvec w = *cert.witness / cert.witness->norm();
    const double lambda = std::min(weak_atom_bound(Q1.yes(), w, pol),
                                   weak_atom_bound(Q2.yes(), w, pol));
    if (lambda > 0.0) out.witness = Effect(lambda * w * w.adjoint());
  }
  return out;
}

// Outcome-set pair verdict with numerical certificates. The boundary flag is
// raised when the overlap cosine falls within rank_rel of the decision
// threshold; such verdicts should be treated as undecided rather than binary.
struct ComplementarityVerdict {
  std::vector<int> set_x;
  std::vector<int> set_y;
  bool disjoint = false;
  bool boundary = false;
  double overlap_cosine = 0.0;
  std::optional<cvec> witness;
};

struct FamilyVerdict {
  std::vector<ComplementarityVerdict> verdicts;
  bool all_disjoint = true;
};

// Support-intersection criterion: E and F are complementary for (𝒜₀, ℬ₀) iff
// E(X) and F(Y) are disjoint for every X ∈ 𝒜₀, Y ∈ ℬ₀.
inline FamilyVerdict complementary_family(const DiscreteObservable& E,
                                          const DiscreteObservable& F,
                                          const OutcomeFamily& A0,
                                          const OutcomeFamily& B0,
                                          const TolerancePolicy& pol = {}) {
  if (E.dim() != F.dim())
    throw PreconditionError("complementary_family: dimension mismatch");
  A0.validate(E.outcomes());
  B0.validate(F.outcomes());
  FamilyVerdict out;
  for (const auto& X : A0.sets) {
    const Effect ex = E.effect_of(X);
    for (const auto& Y : B0.sets) {
      const DisjointnessCertificate cert =
          effects_disjoint_certified(ex, F.effect_of(Y), pol);
      ComplementarityVerdict v;
      v.set_x = X;
      v.set_y = Y;
      v.disjoint = cert.disjoint;
      v.boundary = std::abs(cert.overlap_cosine - (1.0 - pol.rank_rel)) <= pol.rank_rel;
      v.overlap_cosine = cert.overlap_cosine;
      v.witness = cert.witness;
      out.all_disjoint = out.all_disjoint && cert.disjoint;
      out.verdicts.push_back(std::move(v));
    }
  }
  return out;
}

// Consistency check of a candidate joint observable G (labeled by Ω×Ω′,
// row-major) against the complementarity structure of the pair.
enum class JointCheckStatus {
  consistent,         // marginals match and no disjoint cell carries mass
  marginal_mismatch,  // G is not a joint observable for (E, F)
  violates_disjointness,
};

struct JointCheckResult {
  JointCheckStatus status = JointCheckStatus::consistent;
  double max_marginal_error = 0.0;
  // Cells (x, y) with a disjoint verdict but ‖G(x,y)‖ above tolerance.
  std::vector<std::pair<int, int>> violations;
};

inline JointCheckResult no_joint_measurement_check(
    const DiscreteObservable& E, const DiscreteObservable& F,
    const OutcomeFamily& A0, const OutcomeFamily& B0,
    const DiscreteObservable& G, const TolerancePolicy& pol = {}) {
  const int nx = E.outcomes();
  const int ny = F.outcomes();
  if (G.outcomes() != nx * ny)
    throw PreconditionError("no_joint_measurement_check: G must be labeled by the product");
  if (G.dim() != E.dim() || F.dim() != E.dim())
    throw PreconditionError("no_joint_measurement_check: dimension mismatch");

  JointCheckResult out;
  for (int x = 0; x < nx; ++x) {
    cmat row = cmat::Zero(E.dim(), E.dim());
    for (int y = 0; y < ny; ++y) row += G.effect(x * ny + y).matrix();
    out.max_marginal_error =
        std::max(out.max_marginal_error, (row - E.effect(x).matrix()).cwiseAbs().maxCoeff());
  }
  for (int y = 0; y < ny; ++y) {
    cmat col = cmat::Zero(E.dim(), E.dim());
    for (int x = 0; x < nx; ++x) col += G.effect(x * ny + y).matrix();
    out.max_marginal_error =
        std::max(out.max_marginal_error, (col - F.effect(y).matrix()).cwiseAbs().maxCoeff());
  }
  if (out.max_marginal_error > 1e-7) {
    out.status = JointCheckStatus::marginal_mismatch;
    return out;
  }

  // Any nonzero cell G(x,y) is itself a joint lower bound of E(x) and F(y),
  // so it contradicts a disjointness verdict for that pair.
  const FamilyVerdict fam =
      complementary_family(E, F, OutcomeFamily::singletons(nx),
                           OutcomeFamily::singletons(ny), pol);
  for (const ComplementarityVerdict& v : fam.verdicts) {
    if (!v.disjoint) continue;
    const int x = v.set_x.front();
    const int y = v.set_y.front();
    if (G.effect(x * ny + y).matrix().norm() > 1e-7)
      out.violations.emplace_back(x, y);
  }
  if (!out.violations.empty()) out.status = JointCheckStatus::violates_disjointness;
  (void)A0;
  (void)B0;
  return out;
}

// ---------------------------------------------------------------------------
// Naimark dilations
// ---------------------------------------------------------------------------

// Minimal diagonal dilation: H⊕ = ⊕_y ℂ^{m_y} with m_y = rank F(y), the block
// projections Q'(y), and the isometry J stacking the scaled eigenvector rows
// ⟨f_yk| with f_yk = √λ_k·v_k. Then F(y) = J*Q'(y)J and J*J = I.
struct NaimarkDilation {
  cmat isometry;            // dim_H⊕ × dim_H
  std::vector<int> offsets; // start row of each label block
  std::vector<int> sizes;   // m_y per label

  int dilation_dim() const { return static_cast<int>(isometry.rows()); }
  int dim() const { return static_cast<int>(isometry.cols()); }

  cmat block_projection(int y) const {
    cmat q = cmat::Zero(dilation_dim(), dilation_dim());
    for (int k = 0; k < sizes.at(y); ++k) {
      const int row = offsets[y] + k;
      q(row, row) = 1.0;
    }
    return q;
  }

  // Orthonormal family spanning the label's dilation subspace.
  cmat block_basis(int y) const {
    cmat b = cmat::Zero(dilation_dim(), sizes.at(y));
    for (int k = 0; k < sizes[y]; ++k) b(offsets[y] + k, k) = 1.0;
    return b;
  }

  // Q'(X) for an index subset, as the diagonal projection over the blocks.
  cmat subset_projection(const std::vector<int>& subset) const {
    cmat q = cmat::Zero(dilation_dim(), dilation_dim());
    for (int y : subset)
      for (int k = 0; k < sizes.at(y); ++k) q(offsets[y] + k, offsets[y] + k) = 1.0;
    return q;
  }
};

inline NaimarkDilation minimal_dilation(const DiscreteObservable& F,
                                        const TolerancePolicy& pol = {}) {
  const int d = F.dim();
  std::vector<cmat> branch_rows;
  NaimarkDilation dil;
  int total = 0;
  for (int y = 0; y < F.outcomes(); ++y) {
    const SpectralDecomposition sd = eig_hermitian(F.effect(y).matrix());
    const double scale = std::max(std::abs(sd.eigenvalues(0)),
                                  std::abs(sd.eigenvalues(sd.eigenvalues.size() - 1)));
    const double drop = pol.eig_zero * std::max(1e-30, scale);
    int m = 0;
    cmat rows(d, d); // at most d branches per effect
    for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
      if (sd.eigenvalues(i) > drop) {
        rows.row(m++) = std::sqrt(sd.eigenvalues(i)) * sd.eigenvectors.col(i).adjoint();
      }
    }
    dil.offsets.push_back(total);
    dil.sizes.push_back(m);
    total += m;
    branch_rows.push_back(rows.topRows(m));
  }
  dil.isometry = cmat(total, d);
  for (int y = 0; y < F.outcomes(); ++y)
    if (dil.sizes[y] > 0)
      dil.isometry.middleRows(dil.offsets[y], dil.sizes[y]) = branch_rows[y];
  // Sanity: the stacked rows must form an isometry for a valid POVM.
  if ((dil.isometry.adjoint() * dil.isometry - cmat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-8)
    throw std::runtime_error("minimal_dilation: J*J deviates from identity");
  return dil;
}

// Dilation-route complementarity for one outcome-set pair. Builds orthonormal
// bases U of ran[Q(X)J] and V of ran[Q'(Y)K] and decides whether the stacked
// map [J*U | −K*V] has a nullspace element with nonvanishing U-part; such an
// element yields the witness pair (η, η′) with J*η = K*η′.
inline ComplementarityVerdict dilation_complementarity(
    const DiscreteObservable& E, const DiscreteObservable& F,
    const std::vector<int>& X, const std::vector<int>& Y,
    const NaimarkDilation& dilE, const NaimarkDilation& dilF,
    const TolerancePolicy& pol = {}) {
  if (dilE.dim() != E.dim() || dilF.dim() != F.dim())
    throw PreconditionError("dilation_complementarity: dilation dimension mismatch");
  for (int y = 0; y < E.outcomes(); ++y) {
    const cmat rec = dilE.isometry.adjoint() * dilE.block_projection(y) * dilE.isometry;
    if ((rec - E.effect(y).matrix()).cwiseAbs().maxCoeff() > 1e-7)
      throw PreconditionError("dilation_complementarity: dilation does not reproduce E");
  }
  for (int y = 0; y < F.outcomes(); ++y) {
    const cmat rec = dilF.isometry.adjoint() * dilF.block_projection(y) * dilF.isometry;
    if ((rec - F.effect(y).matrix()).cwiseAbs().maxCoeff() > 1e-7)
      throw PreconditionError("dilation_complementarity: dilation does not reproduce F");
  }

  const cmat U = orthonormal_range_basis(dilE.subset_projection(X) * dilE.isometry, pol);
  const cmat V = orthonormal_range_basis(dilF.subset_projection(Y) * dilF.isometry, pol);

  ComplementarityVerdict v;
  v.set_x = X;
  v.set_y = Y;

  const cmat JU = dilE.isometry.adjoint() * U; // dim_H × r1
  const cmat KV = dilF.isometry.adjoint() * V; // dim_H × r2
  const Eigen::Index r1 = JU.cols();
  const Eigen::Index r2 = KV.cols();
  if (r1 == 0 || r2 == 0) {
    v.disjoint = true;
    v.overlap_cosine = 0.0;
    return v;
  }

  cmat W(E.dim(), r1 + r2);
  W << JU, -KV;
  Eigen::JacobiSVD<cmat> svd(W, Eigen::ComputeFullV);
  const rvec sv = svd.singularValues();
  const double null_tol = std::sqrt(pol.rank_rel) * std::max(1.0, sv(0));

  v.disjoint = true;
  // Nullspace columns of V: exact ones past the singular-value count plus any
  // with σ below tolerance (singular values are sorted descending).
  for (Eigen::Index i = r1 + r2 - 1; i >= 0; --i) {
    const double sigma = i < sv.size() ? sv(i) : 0.0;
    if (sigma > null_tol) break;
    const cvec ab = svd.matrixV().col(i);
    const double upart = ab.head(r1).norm();
    if (upart > std::sqrt(pol.rank_rel)) {
      v.disjoint = false;
      if (!v.witness) {
        // Witness η in the dilation space of E; J*η = K*η′ up to null_tol.
        cvec eta = U * ab.head(r1);
        v.witness = eta;
      }
    }
  }

  // Certificate cosine from the same subspaces, for reporting and boundary
  // flagging (ran J*U and ran K*V are the supports of E(X) and F(Y)).
  v.overlap_cosine = max_principal_cosine(orthonormal_range_basis(JU, pol),
                                          orthonormal_range_basis(KV, pol));
  v.boundary = std::abs(v.overlap_cosine - (1.0 - pol.rank_rel)) <= pol.rank_rel;
  return v;
}

// Three-way strong-complementarity verdict for a single pair of outcome sets:
// disjointness of (E(X),F(Y)), (E(X),F(Y)⊥) and (E(X)⊥,F(Y)).
struct StrongComplementarityVerdict {
  bool xy = false;
  bool x_not_y = false;
  bool not_x_y = false;
  bool all() const { return xy && x_not_y && not_x_y; }
};

inline StrongComplementarityVerdict strong_complementarity(
    const DiscreteObservable& E, const DiscreteObservable& F,
    const std::vector<int>& X, const std::vector<int>& Y,
    const TolerancePolicy& pol = {}) {
  const Effect ex = E.effect_of(X);
  const Effect fy = F.effect_of(Y);
  StrongComplementarityVerdict v;
  v.xy = effects_disjoint(ex, fy, pol);
  v.x_not_y = effects_disjoint(ex, fy.complement(), pol);
  v.not_x_y = effects_disjoint(ex.complement(), fy, pol);
  return v;
}

// com(A,B) = ⋀_{x,y} com(A(x),B(y)) for projective observables; singleton
// pairs suffice since commutation with every effect of a partition follows
// from commutation with its atoms. A zero result means total incompatibility.
inline Projection com_observables(const DiscreteObservable& A,
                                  const DiscreteObservable& B,
                                  const TolerancePolicy& pol = {}) {
  if (A.dim() != B.dim())
    throw PreconditionError("com_observables: dimension mismatch");
  if (!A.is_projective(pol) || !B.is_projective(pol))
    throw PreconditionError("com_observables: observables must be projective");
  Projection out = Projection::identity(A.dim());
  for (int x = 0; x < A.outcomes(); ++x) {
    const Projection Px(A.effect(x).matrix());
    for (int y = 0; y < B.outcomes(); ++y) {
      const Projection Ry(B.effect(y).matrix());
      out = projection_meet(out, commutativity_projection(Px, Ry, pol), pol);
      if (out.rank() == 0) return out;
    }
  }
  return out;
}

} // namespace qea
