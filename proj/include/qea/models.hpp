#pragma once

// Generators for the canonical observable pairs at desk scale: the cyclic
// position/momentum (DFT) lattice with its support-size uncertainty rule and
// periodic commutation, truncated-line haversine pairs, multislit which-way /
// interference-class observables, number–phase interval effects, the
// oscillator position/number pair via Gauss–Hermite quadrature, and cyclic
// convolution smearing. Trend studies echo the continuum statements that
// cannot hold exactly at finite size.

#include "qea/effects.hpp"
#include "qea/incompat.hpp"
#include "qea/observables.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace qea {

inline constexpr double kPi = std::numbers::pi;

// Unitary DFT with kernel F_{jk} = d^{-1/2}·e^{−2πi·jk/d}.
inline cmat dft_matrix(int d) {
  if (d < 1) throw PreconditionError("dft_matrix: d must be positive");
  cmat F(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      const double angle = -2.0 * kPi * static_cast<double>(j) * k / d;
      F(j, k) = scale * complexd(std::cos(angle), std::sin(angle));
    }
  return F;
}

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

namespace detail {

inline std::vector<std::string> index_labels(int n, const std::string& prefix = "") {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return labels;
}

inline cmat kron_identity_right(const cmat& A, int m) {
  cmat out = cmat::Zero(A.rows() * m, A.cols() * m);
  for (Eigen::Index r = 0; r < A.rows(); ++r)
    for (Eigen::Index c = 0; c < A.cols(); ++c)
      for (int i = 0; i < m; ++i) out(r * m + i, c * m + i) = A(r, c);
  return out;
}

} // namespace detail

// Finite position/momentum pair: position in the standard basis, momentum in
// the Fourier basis. The two bases are mutually unbiased.
struct CyclicLattice {
  int d = 0;
  DiscreteObservable position;
  DiscreteObservable momentum;

  Projection position_projection(const std::vector<int>& X) const {
    cmat basis(d, X.size());
    for (std::size_t i = 0; i < X.size(); ++i)
      basis.col(i) = cmat::Identity(d, d).col(X[i]);
    return Projection::onto_span(basis);
  }

  Projection momentum_projection(const std::vector<int>& Y) const {
    const cmat F = dft_matrix(d);
    cmat basis(d, Y.size());
    for (std::size_t i = 0; i < Y.size(); ++i) basis.col(i) = F.col(Y[i]);
    return Projection::onto_span(basis);
  }
};

inline CyclicLattice cyclic_lattice(int d) {
  if (d < 2) throw PreconditionError("cyclic_lattice: d must be at least 2");
  const cmat F = dft_matrix(d);
  std::vector<Effect> pos, mom;
  for (int j = 0; j < d; ++j) {
    cmat e = cmat::Zero(d, d);
    e(j, j) = 1.0;
    pos.emplace_back(e);
    mom.emplace_back(F.col(j) * F.col(j).adjoint());
  }
  return CyclicLattice{d,
                       DiscreteObservable(detail::index_labels(d, "q"), std::move(pos)),
                       DiscreteObservable(detail::index_labels(d, "p"), std::move(mom))};
}

// Brute-force meet of Q(X) and P(Y) with, for prime d, the support-size rule
// |X| + |Y| ≥ d+1 ⟺ nontrivial meet as the predicted verdict.
struct SupportMeetCheck {
  bool nontrivial = false;
  int meet_rank = 0;
  std::optional<bool> rule_prediction; // present only for prime d
  bool rule_agrees = true;
};

inline SupportMeetCheck support_uncertainty_rule(const CyclicLattice& lat,
                                                 const std::vector<int>& X,
                                                 const std::vector<int>& Y,
                                                 const TolerancePolicy& pol = {}) {
  SupportMeetCheck out;
  const Projection meet =
      projection_meet(lat.position_projection(X), lat.momentum_projection(Y), pol);
  out.meet_rank = meet.rank();
  out.nontrivial = out.meet_rank > 0;
  if (is_prime(lat.d)) {
    out.rule_prediction =
        static_cast<int>(X.size() + Y.size()) >= lat.d + 1;
    out.rule_agrees = *out.rule_prediction == out.nontrivial;
  }
  return out;
}

// Commutation of Q(X) and P(Y) for periodic index sets: X invariant under
// shift by a and Y under shift by b with d = a·b.
struct CommutationCheck {
  bool commute = false;
  double commutator_norm = 0.0;
};

inline CommutationCheck periodic_commutation(const CyclicLattice& lat, int a, int b,
                                             const std::vector<int>& X,
                                             const std::vector<int>& Y) {
  const int d = lat.d;
  if (a < 1 || b < 1 || a * b != d)
    throw PreconditionError("periodic_commutation: d must factor as a·b");
  auto shifted_invariant = [d](const std::vector<int>& S, int shift) {
    std::vector<bool> in(d, false);
    for (int s : S) in.at(s) = true;
    for (int s = 0; s < d; ++s)
      if (in[s] != in[(s + shift) % d]) return false;
    return true;
  };
  if (!shifted_invariant(X, a))
    throw PreconditionError("periodic_commutation: X is not a-periodic");
  if (!shifted_invariant(Y, b))
    throw PreconditionError("periodic_commutation: Y is not b-periodic");
  const cmat QX = lat.position.effect_of(X).matrix();
  const cmat PY = lat.momentum.effect_of(Y).matrix();
  CommutationCheck out;
  out.commutator_norm = (QX * PY - PY * QX).norm();
  out.commute = out.commutator_norm <= 1e-9;
  return out;
}

// Real function table on a finite grid, cyclic or truncated-line.
struct FunctionOnGrid {
  enum class Grid { cyclic, line };
  Grid grid = Grid::cyclic;
  double spacing = 1.0; // δ for line grids
  rvec values;

  void validate() const {
    if (values.size() == 0)
      throw PreconditionError("FunctionOnGrid: empty table");
    if (values.minCoeff() < 0.0 || values.maxCoeff() > 1.0)
      throw PreconditionError("FunctionOnGrid: values must lie in [0,1]");
  }
};

// ---------------------------------------------------------------------------
// Haversine pairs on the truncated line
// ---------------------------------------------------------------------------

enum class HaversineMode { commuting, compressed };

struct HaversinePair {
  int d = 0;
  double spacing = 0.0;
  Effect position_effect;  // f₀(Q) with f₀(x) = ½(1−cos x)
  Effect momentum_effect;  // g₀(P), optionally compressed into |p| ≤ ½
};

// Symmetric discretisation: grid x_j = (j−d/2)·δ with δ = √(2π/d), so the
// position and momentum grids have equal resolution. The momentum side uses
// the centered DFT; compressed mode keeps only the modes with |p| ≤ ½ as in
// conditioning on the momentum window.
inline HaversinePair haversine_pair(int d, HaversineMode mode) {
  if (d < 16 || d % 2 != 0)
    throw PreconditionError("haversine_pair: d must be even and at least 16");
  const double delta = std::sqrt(2.0 * kPi / d);
  rvec x(d), p(d);
  for (int j = 0; j < d; ++j) x(j) = (j - d / 2) * delta;
  for (int k = 0; k < d; ++k) p(k) = (k - d / 2) * delta;

  rvec f0(d);
  for (int j = 0; j < d; ++j) f0(j) = 0.5 * (1.0 - std::cos(x(j)));

  cmat Fc(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) {
      const double angle = -p(k) * x(j);
      Fc(k, j) = scale * complexd(std::cos(angle), std::sin(angle));
    }

  rvec g0(d);
  for (int k = 0; k < d; ++k) {
    double val = 0.5 * (1.0 + std::cos(p(k) / (2.0 * kPi)));
    if (mode == HaversineMode::compressed && std::abs(p(k)) > 0.5) val = 0.0;
    g0(k) = val;
  }

  HaversinePair out{d, delta, Effect(f0.cast<complexd>().asDiagonal().toDenseMatrix()),
                    Effect(Fc.adjoint() * g0.cast<complexd>().asDiagonal() * Fc)};
  return out;
}

// Monotonicity report over a strictly increasing parameter list (≥ 4 points).
// The verdict allows each step to rise by at most the noise band.
struct TrendReport {
  std::vector<double> parameters;
  std::vector<double> values;
  double noise_band = 0.10;
  bool non_increasing = false;
  std::map<std::string, std::vector<double>> series;

  void finalize() {
    if (parameters.size() < 4)
      throw PreconditionError("TrendReport: need at least 4 parameter values");
    for (std::size_t i = 1; i < parameters.size(); ++i)
      if (!(parameters[i] > parameters[i - 1]))
        throw PreconditionError("TrendReport: parameters must increase strictly");
    if (values.size() != parameters.size())
      throw PreconditionError("TrendReport: value/parameter size mismatch");
    non_increasing = true;
    for (std::size_t i = 1; i < values.size(); ++i)
      if (values[i] > values[i - 1] * (1.0 + noise_band) + 1e-9)
        non_increasing = false;
  }
};

// Desk-scale echo of the compressed-haversine complementarity: the supports
// keep a nontrivial intersection at every d while the maximal joint lower
// bound c_d shrinks under refinement. The commuting-mode pair serves as a
// control whose c_d stays away from zero.
inline TrendReport haversine_trend(const std::vector<int>& d_list,
                                   double mjlb_tol = 5e-3,
                                   DykstraOptions opt = {},
                                   const TolerancePolicy& pol = {}) {
  if (d_list.size() < 4)
    throw PreconditionError("haversine_trend: need at least 4 dimensions");
  TrendReport report;
  report.series["overlap_dim"] = {};
  report.series["control_value"] = {};
  for (int d : d_list) {
    const HaversinePair compressed = haversine_pair(d, HaversineMode::compressed);
    const HaversinePair commuting = haversine_pair(d, HaversineMode::commuting);
    const cmat overlap = subspace_intersection(
        support_projection(compressed.position_effect, pol).basis(),
        support_projection(compressed.momentum_effect, pol).basis(), pol);
    const double c_d = max_joint_lower_bound(compressed.position_effect,
                                             compressed.momentum_effect, mjlb_tol, opt);
    const double control = max_joint_lower_bound(commuting.position_effect,
                                                 commuting.momentum_effect, mjlb_tol, opt);
    report.parameters.push_back(static_cast<double>(d));
    report.values.push_back(c_d);
    report.series["overlap_dim"].push_back(static_cast<double>(overlap.cols()));
    report.series["control_value"].push_back(control);
  }
  report.finalize();
  return report;
}

// ---------------------------------------------------------------------------
// Multislit which-way / interference-class pair
// ---------------------------------------------------------------------------

// On ℂ^s ⊗ ℂ^m: the slit index Q_d(n) = |e_n⟩⟨e_n| ⊗ I_m and the periodic
// momentum class P_mod(k) = (F_s|e_k⟩⟨e_k|F_s*) ⊗ I_m, both projective of
// rank m.
inline std::pair<DiscreteObservable, DiscreteObservable> multislit(int s, int m) {
  if (s < 2 || m < 1)
    throw PreconditionError("multislit: need s ≥ 2 slits and m ≥ 1");
  const cmat Fs = dft_matrix(s);
  std::vector<Effect> slit, momentum_class;
  for (int n = 0; n < s; ++n) {
    cmat en = cmat::Zero(s, s);
    en(n, n) = 1.0;
    slit.emplace_back(detail::kron_identity_right(en, m));
    momentum_class.emplace_back(
        detail::kron_identity_right(Fs.col(n) * Fs.col(n).adjoint(), m));
  }
  return {DiscreteObservable(detail::index_labels(s, "slit"), std::move(slit)),
          DiscreteObservable(detail::index_labels(s, "pclass"), std::move(momentum_class))};
}

// ---------------------------------------------------------------------------
// Number and phase
// ---------------------------------------------------------------------------

// Truncated phase-interval effect: E(X)_{nm} = (1/2π)∫_X e^{i(n−m)θ}dθ for
// X = [a, b) ⊂ [0, 2π]; Toeplitz and positive definite for 0 < b−a < 2π.
inline Effect phase_interval_effect(int n_trunc, double a, double b) {
  if (n_trunc < 1) throw PreconditionError("phase_interval_effect: empty truncation");
  if (!(b > a) || b - a > 2.0 * kPi + 1e-12)
    throw PreconditionError("phase_interval_effect: need 0 < b−a ≤ 2π");
  cmat E(n_trunc, n_trunc);
  for (int n = 0; n < n_trunc; ++n)
    for (int m = 0; m < n_trunc; ++m) {
      const int k = n - m;
      if (k == 0) {
        E(n, m) = (b - a) / (2.0 * kPi);
      } else {
        const complexd i_unit(0.0, 1.0);
        E(n, m) = (std::exp(i_unit * static_cast<double>(k) * b) -
                   std::exp(i_unit * static_cast<double>(k) * a)) /
                  (2.0 * kPi * i_unit * static_cast<double>(k));
      }
    }
  return Effect(E);
}

struct NumberPhase {
  std::vector<Effect> interval_effects;
  DiscreteObservable number;
};

inline DiscreteObservable number_observable(int n_trunc) {
  std::vector<Effect> effs;
  for (int n = 0; n < n_trunc; ++n) {
    cmat e = cmat::Zero(n_trunc, n_trunc);
    e(n, n) = 1.0;
    effs.emplace_back(e);
  }
  return DiscreteObservable(detail::index_labels(n_trunc, "n"), std::move(effs));
}

inline NumberPhase number_phase(int n_trunc,
                                const std::vector<std::pair<double, double>>& intervals) {
  if (n_trunc < 4)
    throw PreconditionError("number_phase: truncation must be at least 4");
  NumberPhase out{{}, number_observable(n_trunc)};
  for (const auto& [a, b] : intervals)
    out.interval_effects.push_back(phase_interval_effect(n_trunc, a, b));
  return out;
}

// Weak-atom bound of the number state |n⟩ in the truncated interval effect,
// tracked over truncation sizes. The bound is exactly non-increasing in N and
// capped by the diagonal entry |X|/2π.
inline TrendReport number_phase_trend(const std::vector<int>& n_list, double a, double b,
                                      int number_state, const TolerancePolicy& pol = {}) {
  TrendReport report;
  for (int N : n_list) {
    if (number_state >= N)
      throw PreconditionError("number_phase_trend: number state exceeds truncation");
    const Effect E = phase_interval_effect(N, a, b);
    cvec phi = cvec::Zero(N);
    phi(number_state) = 1.0;
    report.parameters.push_back(static_cast<double>(N));
    report.values.push_back(weak_atom_bound(E, phi, pol));
  }
  report.finalize();
  return report;
}

// ---------------------------------------------------------------------------
// Oscillator position and number
// ---------------------------------------------------------------------------

// Position-interval effects in the Hermite-function basis, via Gauss–Hermite
// quadrature with at least 2·n_basis nodes. Row j of the sampled matrix is
// √W_j·(h_0(x_j), …, h_{N−1}(x_j)), so E(X) = B_X^† B_X is PSD by
// construction and E(ℝ) = I up to quadrature round-off.
struct OscillatorBasis {
  int n_basis = 0;
  rvec nodes;
  rvec weights; // total weights W_j (Christoffel numbers for dx)
  Eigen::MatrixXd sampled; // n_nodes × n_basis

  Effect interval_effect(double lo, double hi) const {
    cmat acc = cmat::Zero(n_basis, n_basis);
    for (Eigen::Index j = 0; j < nodes.size(); ++j) {
      if (nodes(j) < lo || nodes(j) > hi) continue;
      const Eigen::VectorXd row = sampled.row(j).transpose();
      acc += (row * row.transpose()).cast<complexd>();
    }
    return Effect(acc);
  }

  DiscreteObservable number() const { return number_observable(n_basis); }
};

inline OscillatorBasis oscillator_position_number(int n_basis, int n_quad = 0) {
  if (n_basis < 4)
    throw PreconditionError("oscillator_position_number: truncation must be at least 4");
  constexpr int kQuadCap = 512; // h_0(x) underflows beyond this scale
  if (n_quad <= 0) n_quad = 2 * n_basis;
  if (n_quad < 2 * n_basis)
    throw PreconditionError("oscillator_position_number: need n_quad ≥ 2·n_basis");
  if (n_quad > kQuadCap)
    throw PreconditionError("oscillator_position_number: truncation above quadrature cap");

  // Golub–Welsch nodes: eigenvalues of the Hermite Jacobi matrix.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n_quad, n_quad);
  for (int k = 1; k < n_quad; ++k) {
    const double beta = std::sqrt(k / 2.0);
    jacobi(k - 1, k) = beta;
    jacobi(k, k - 1) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  OscillatorBasis out;
  out.n_basis = n_basis;
  out.nodes = es.eigenvalues();

  // Orthonormal Hermite functions by the stable three-term recurrence
  // h_{k+1} = x√(2/(k+1))·h_k − √(k/(k+1))·h_{k−1}.
  Eigen::MatrixXd h(n_quad, n_quad);
  const double h0_scale = std::pow(kPi, -0.25);
  for (int j = 0; j < n_quad; ++j) {
    const double x = out.nodes(j);
    h(j, 0) = h0_scale * std::exp(-x * x / 2.0);
    if (n_quad > 1) h(j, 1) = std::sqrt(2.0) * x * h(j, 0);
    for (int k = 1; k + 1 < n_quad; ++k)
      h(j, k + 1) = x * std::sqrt(2.0 / (k + 1)) * h(j, k) -
                    std::sqrt(static_cast<double>(k) / (k + 1)) * h(j, k - 1);
  }

  // Total weights from the Christoffel function: W_j = 1/Σ_k h_k(x_j)².
  // Equivalent to the Golub–Welsch weights times e^{x²} but free of the
  // under/overflow pair that plagues that product at large node count.
  out.weights = rvec(n_quad);
  for (int j = 0; j < n_quad; ++j)
    out.weights(j) = 1.0 / h.row(j).squaredNorm();
  if (!out.weights.allFinite())
    throw PreconditionError("oscillator_position_number: quadrature underflow");

  out.sampled = Eigen::MatrixXd(n_quad, n_basis);
  for (int j = 0; j < n_quad; ++j)
    out.sampled.row(j) = std::sqrt(out.weights(j)) * h.row(j).head(n_basis);
  return out;
}

// ---------------------------------------------------------------------------
// Convolution smearing on the cyclic lattice
// ---------------------------------------------------------------------------

// (μ∗O)(x) = Σ_y μ(x−y)·O(y) for a pmf μ on ℤ_d; the output is again a POVM.
inline DiscreteObservable lattice_convolution(const FunctionOnGrid& mu,
                                              const DiscreteObservable& O) {
  mu.validate();
  const int d = O.outcomes();
  if (mu.grid != FunctionOnGrid::Grid::cyclic)
    throw PreconditionError("lattice_convolution: pmf must live on the cyclic grid");
  if (static_cast<int>(mu.values.size()) != d)
    throw PreconditionError("lattice_convolution: pmf size must match outcome count");
  if (mu.values.minCoeff() < 0.0 ||
      std::abs(mu.values.sum() - 1.0) > 1e-10)
    throw PreconditionError("lattice_convolution: μ must be a probability vector");
  std::vector<Effect> effects;
  for (int x = 0; x < d; ++x) {
    cmat acc = cmat::Zero(O.dim(), O.dim());
    for (int y = 0; y < d; ++y)
      acc += mu.values(((x - y) % d + d) % d) * O.effect(y).matrix();
    effects.emplace_back(acc);
  }
  return DiscreteObservable(detail::index_labels(d, "c"), std::move(effects));
}

// Pointwise table of the smeared indicator (χ_X∗μ̌)(y) = Σ_{x∈X} μ(x−y); its
// support bounds the support of (μ∗O)(X) for the sharp cyclic observable.
inline rvec smeared_indicator(const FunctionOnGrid& mu, const std::vector<int>& X) {
  const int d = static_cast<int>(mu.values.size());
  rvec h = rvec::Zero(d);
  for (int y = 0; y < d; ++y)
    for (int x : X) h(y) += mu.values(((x - y) % d + d) % d);
  return h;
}

} // namespace qea
