#pragma once

// Quantitative incompatibility. The workhorse is a cyclic Dykstra projection
// solver for spectrahedral feasibility problems (matrix intervals plus trace
// floors, all with closed-form projections). On top of it: the maximal joint
// lower bound of two effects, binary joint measurability, the qubit
// compatibility closed form, classical noise maps, the symmetric noise
// threshold j(E₁,E₂), and joint-measurability region maps.

#include "qea/observables.hpp"

#include <cmath>
#include <deque>
#include <functional>
#include <optional>
#include <vector>

namespace qea {

// One spectrahedral constraint on an unknown Hermitian A.
struct SpectrahedralConstraint {
  enum class Kind { lower_bound, upper_bound, trace_floor };

  Kind kind;
  cmat datum;         // L or U for the matrix kinds
  double trace_value = 0.0;

  static SpectrahedralConstraint lower(cmat L) {
    if (!is_hermitian(L))
      throw PreconditionError("SpectrahedralConstraint: datum must be Hermitian");
    return {Kind::lower_bound, std::move(L), 0.0};
  }
  static SpectrahedralConstraint upper(cmat U) {
    if (!is_hermitian(U))
      throw PreconditionError("SpectrahedralConstraint: datum must be Hermitian");
    return {Kind::upper_bound, std::move(U), 0.0};
  }
  static SpectrahedralConstraint trace_at_least(double t) {
    return {Kind::trace_floor, cmat(), t};
  }
};

enum class FeasibilityStatus { feasible, infeasible, inconclusive };

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::inconclusive;
  cmat iterate;
  double residual = 0.0;
  int iterations = 0;

  bool feasible() const { return status == FeasibilityStatus::feasible; }
};

struct DykstraOptions {
  double tol = 1e-9;
  int max_iter = 100000;
  // Infeasibility is declared when the residual stays above
  // infeasibility_factor·tol for plateau_window consecutive cycles while
  // improving by less than plateau_improvement relatively. A plateau alone is
  // not enough: slow feasible runs plateau too, so the verdict additionally
  // requires the Dykstra corrections to keep growing at the rate an actual
  // set gap forces (≈ residual per cycle); bounded corrections leave the run
  // inconclusive instead.
  int plateau_window = 200;
  double plateau_improvement = 1e-3;
  double infeasibility_factor = 10.0;
  double correction_growth_factor = 0.25;
  std::optional<cmat> start;
};

namespace detail {

inline cmat project_constraint(const SpectrahedralConstraint& c, const cmat& A,
                               double* violation) {
  switch (c.kind) {
    case SpectrahedralConstraint::Kind::lower_bound: {
      const SpectralDecomposition sd = eig_hermitian(A - c.datum);
      *violation = std::max(0.0, -sd.eigenvalues(0));
      rvec clamped = sd.eigenvalues.cwiseMax(0.0);
      return c.datum + sd.eigenvectors * clamped.asDiagonal() * sd.eigenvectors.adjoint();
    }
    case SpectrahedralConstraint::Kind::upper_bound: {
      const SpectralDecomposition sd = eig_hermitian(c.datum - A);
      *violation = std::max(0.0, -sd.eigenvalues(0));
      rvec clamped = sd.eigenvalues.cwiseMax(0.0);
      return c.datum - sd.eigenvectors * clamped.asDiagonal() * sd.eigenvectors.adjoint();
    }
    case SpectrahedralConstraint::Kind::trace_floor: {
      const double tr = A.trace().real();
      *violation = std::max(0.0, c.trace_value - tr);
      if (tr >= c.trace_value) return A;
      // Frobenius projection onto {tr ≥ t}: uniform diagonal shift.
      return A + ((c.trace_value - tr) / static_cast<double>(A.rows())) *
                     cmat::Identity(A.rows(), A.cols());
    }
  }
  throw std::logic_error("project_constraint: unreachable");
}

inline double constraint_violation(const SpectrahedralConstraint& c, const cmat& A) {
  switch (c.kind) {
    case SpectrahedralConstraint::Kind::lower_bound:
      return std::max(0.0, -min_eigenvalue(A - c.datum));
    case SpectrahedralConstraint::Kind::upper_bound:
      return std::max(0.0, -min_eigenvalue(c.datum - A));
    case SpectrahedralConstraint::Kind::trace_floor:
      return std::max(0.0, c.trace_value - A.trace().real());
  }
  throw std::logic_error("constraint_violation: unreachable");
}

} // namespace detail

// Cyclic Dykstra projections onto the constraint sets. Feasible when the
// cycle residual (max constraint violation) drops to tol; infeasible when the
// residual plateaus above 10·tol; inconclusive when the budget runs out.
inline FeasibilityResult dykstra_feasible(
    const std::vector<SpectrahedralConstraint>& constraints, int dim,
    const DykstraOptions& opt = {}) {
  if (!(opt.tol > 0.0))
    throw PreconditionError("dykstra_feasible: tol must be positive");
  for (const auto& c : constraints)
    if (c.kind != SpectrahedralConstraint::Kind::trace_floor &&
        (c.datum.rows() != dim || c.datum.cols() != dim))
      throw PreconditionError("dykstra_feasible: constraint dimension mismatch");

  cmat A = opt.start ? *opt.start : cmat::Zero(dim, dim);
  A = ((A + A.adjoint()) / 2.0).eval();
  const std::size_t n = constraints.size();
  std::vector<cmat> corrections(n, cmat::Zero(dim, dim));

  // The residual must be measured at the end-of-cycle iterate (the Dykstra
  // corrections never vanish, so pre-projection violations do not converge).
  // For larger problems the extra eigendecompositions are sampled.
  const int sample_every = dim > 64 ? 4 : 1;
  const int window_samples =
      std::max(2, (opt.plateau_window + sample_every - 1) / sample_every);

  FeasibilityResult out;
  std::deque<std::pair<double, double>> window; // (residual, Σ‖corrections‖)
  for (int iter = 1; iter <= opt.max_iter; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      cmat z = A + corrections[i];
      z = ((z + z.adjoint()) / 2.0).eval();
      double violation = 0.0;
      A = detail::project_constraint(constraints[i], z, &violation);
      corrections[i] = z - A;
    }
    out.iterations = iter;
    if (iter % sample_every != 0 && iter != opt.max_iter) continue;

    double residual = 0.0;
    for (const auto& c : constraints)
      residual = std::max(residual, detail::constraint_violation(c, A));
    out.residual = residual;
    if (residual <= opt.tol) {
      out.status = FeasibilityStatus::feasible;
      out.iterate = A;
      return out;
    }
    double correction_mass = 0.0;
    for (const cmat& r : corrections) correction_mass += r.norm();
    window.emplace_back(residual, correction_mass);
    if (static_cast<int>(window.size()) > window_samples) window.pop_front();
    if (static_cast<int>(window.size()) == window_samples) {
      const auto [oldest, mass_old] = window.front();
      const auto [newest, mass_new] = window.back();
      double lowest = oldest;
      for (const auto& [r, m] : window) lowest = std::min(lowest, r);
      const int cycles_covered = (window_samples - 1) * sample_every;
      const bool plateaued = lowest > opt.infeasibility_factor * opt.tol &&
                             oldest - newest <= opt.plateau_improvement * oldest;
      // a set gap of size ≈ residual forces the corrections to grow by about
      // residual per cycle; bounded corrections mean "slow", not "infeasible"
      const bool diverging =
          mass_new - mass_old >=
          opt.correction_growth_factor * cycles_covered * newest;
      if (plateaued && diverging) {
        out.status = FeasibilityStatus::infeasible;
        out.iterate = A;
        return out;
      }
    }
  }
  out.status = FeasibilityStatus::inconclusive;
  out.iterate = A;
  return out;
}

struct BisectionStats {
  int feasible = 0;
  int infeasible = 0;
  int inconclusive = 0;
};

// Bisection result with certified bracket: value = bracket_lo is the largest
// trace floor certified feasible; bracket_hi the smallest certified
// infeasible (or the trivial cap). Inconclusive probes stop the bisection and
// leave the bracket wide instead of guessing.
struct BoundResult {
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  BisectionStats stats;

  bool resolved(double tol) const { return bracket_hi - bracket_lo <= tol; }
};

// max{tr A : 0 ⪯ A ⪯ E, A ⪯ F} via bisection over a trace floor. A value of
// zero (below tol) is equivalent to disjointness of E and F.
inline BoundResult max_joint_lower_bound_bracketed(const Effect& E, const Effect& F,
                                                   double tol = 1e-3,
                                                   const DykstraOptions& base_opt = {}) {
  if (E.dim() != F.dim())
    throw PreconditionError("max_joint_lower_bound: dimension mismatch");
  const int d = E.dim();
  auto probe = [&](double t, const std::optional<cmat>& start) {
    std::vector<SpectrahedralConstraint> cons = {
        SpectrahedralConstraint::lower(cmat::Zero(d, d)),
        SpectrahedralConstraint::upper(E.matrix()),
        SpectrahedralConstraint::upper(F.matrix()),
        SpectrahedralConstraint::trace_at_least(t)};
    DykstraOptions opt = base_opt;
    opt.start = start;
    return dykstra_feasible(cons, d, opt);
  };

  BoundResult out;
  out.bracket_lo = 0.0; // A = 0 is always admissible
  out.bracket_hi = std::min(E.matrix().trace().real(), F.matrix().trace().real());
  if (out.bracket_hi <= tol) {
    out.bracket_hi = std::max(out.bracket_hi, 0.0);
    return out;
  }
  std::optional<cmat> warm;

  const FeasibilityResult top = probe(out.bracket_hi, warm);
  if (top.status == FeasibilityStatus::feasible) {
    ++out.stats.feasible;
    out.bracket_lo = out.bracket_hi;
    out.value = out.bracket_hi;
    return out;
  }
  top.status == FeasibilityStatus::infeasible ? ++out.stats.infeasible
                                              : ++out.stats.inconclusive;
  while (out.bracket_hi - out.bracket_lo > tol) {
    const double mid = (out.bracket_lo + out.bracket_hi) / 2.0;
    const FeasibilityResult r = probe(mid, warm);
    if (r.status == FeasibilityStatus::feasible) {
      ++out.stats.feasible;
      out.bracket_lo = mid;
      warm = r.iterate;
    } else if (r.status == FeasibilityStatus::infeasible) {
      ++out.stats.infeasible;
      out.bracket_hi = mid;
    } else {
      // no certificate either way: stop with the bracket as wide as it is
      ++out.stats.inconclusive;
      break;
    }
  }
  out.value = out.bracket_lo;
  return out;
}

inline double max_joint_lower_bound(const Effect& E, const Effect& F,
                                    double tol = 1e-3,
                                    const DykstraOptions& base_opt = {}) {
  const BoundResult r = max_joint_lower_bound_bracketed(E, F, tol, base_opt);
  if (!r.resolved(tol) && r.stats.inconclusive > 0)
    throw OracleInconclusive("max_joint_lower_bound: oracle inconclusive inside bracket [" +
                             std::to_string(r.bracket_lo) + ", " +
                             std::to_string(r.bracket_hi) + "]");
  return r.value;
}

// Existence of a joint observable for two binary observables, through the
// four-effect parametrisation G11 = G, G10 = Q1(1)−G, G01 = Q2(1)−G,
// G00 = I−Q1(1)−Q2(1)+G: feasibility of the box
// max(0, Q1(1)+Q2(1)−I) ⪯ G ⪯ min(Q1(1), Q2(1)) in the PSD order.
struct JointMeasurabilityResult {
  bool measurable = false;
  std::optional<cmat> g11;
};

inline JointMeasurabilityResult binary_jointly_measurable_certified(
    const BinaryObservable& Q1, const BinaryObservable& Q2,
    const DykstraOptions& base_opt = {}, const TolerancePolicy& pol = {}) {
  if (Q1.dim() != Q2.dim())
    throw PreconditionError("binary_jointly_measurable: dimension mismatch");
  const int d = Q1.dim();
  const cmat& B = Q1.yes().matrix();
  const cmat& C = Q2.yes().matrix();
  std::vector<SpectrahedralConstraint> cons = {
      SpectrahedralConstraint::lower(cmat::Zero(d, d)),
      SpectrahedralConstraint::upper(B),
      SpectrahedralConstraint::upper(C),
      SpectrahedralConstraint::lower(B + C - cmat::Identity(d, d))};
  DykstraOptions opt = base_opt;
  if (!opt.start) {
    // Symmetrised product: exact for commuting pairs, a good start otherwise.
    cmat s = (B * C + C * B) / 2.0;
    opt.start = (s + s.adjoint()) / 2.0;
  }
  const FeasibilityResult r = dykstra_feasible(cons, d, opt);
  if (r.status == FeasibilityStatus::inconclusive)
    throw OracleInconclusive("binary_jointly_measurable: oracle inconclusive");
  JointMeasurabilityResult out;
  out.measurable = r.status == FeasibilityStatus::feasible;
  if (out.measurable) {
    // The reconstructed four effects must form a valid joint POVM.
    TolerancePolicy loose = pol;
    loose.psd_slack = std::max(pol.psd_slack, 100.0 * opt.tol);
    const cmat G = clamp_spectrum(r.iterate, 0.0, 1.0);
    (void)Effect(G, loose);
    (void)Effect(B - G + loose.psd_slack * cmat::Identity(d, d), loose);
    (void)Effect(C - G + loose.psd_slack * cmat::Identity(d, d), loose);
    (void)Effect(cmat::Identity(d, d) - B - C + G +
                     loose.psd_slack * cmat::Identity(d, d),
                 loose);
    out.g11 = G;
  }
  return out;
}

inline bool binary_jointly_measurable(const BinaryObservable& Q1,
                                      const BinaryObservable& Q2,
                                      const DykstraOptions& opt = {},
                                      const TolerancePolicy& pol = {}) {
  return binary_jointly_measurable_certified(Q1, Q2, opt, pol).measurable;
}

// ---------------------------------------------------------------------------
// Qubit closed form
// ---------------------------------------------------------------------------

// Pauli coordinates of a qubit effect: E = ½(e₀I + e⃗·σ⃗).
struct QubitEffectParams {
  double e0 = 0.0;
  Eigen::Vector3d evec = Eigen::Vector3d::Zero();
};

inline QubitEffectParams qubit_params(const Effect& E) {
  if (E.dim() != 2)
    throw PreconditionError("qubit_params: effect must be 2-dimensional");
  const cmat& m = E.matrix();
  QubitEffectParams p;
  p.e0 = m.trace().real();
  p.evec(0) = (m(0, 1) + m(1, 0)).real();           // tr(E σx)
  p.evec(1) = (complexd(0, 1) * (m(0, 1) - m(1, 0))).real(); // tr(E σy)
  p.evec(2) = (m(0, 0) - m(1, 1)).real();           // tr(E σz)
  return p;
}

inline cmat qubit_effect_matrix(const QubitEffectParams& p) {
  cmat m(2, 2);
  m(0, 0) = complexd(p.e0 + p.evec(2), 0) / 2.0;
  m(1, 1) = complexd(p.e0 - p.evec(2), 0) / 2.0;
  m(0, 1) = complexd(p.evec(0), -p.evec(1)) / 2.0;
  m(1, 0) = complexd(p.evec(0), p.evec(1)) / 2.0;
  return m;
}

// Signed compatibility margin of the qubit inequality (nonnegative iff the
// pair of dichotomic qubit observables is compatible), evaluated from the
// Minkowski-type form ⟨E|F⟩ = ¼(e₀f₀ − e⃗·f⃗).
inline double qubit_compat_slack(const Effect& E, const Effect& F) {
  const QubitEffectParams e = qubit_params(E);
  const QubitEffectParams f = qubit_params(F);
  const QubitEffectParams ec{2.0 - e.e0, -e.evec};
  const QubitEffectParams fc{2.0 - f.e0, -f.evec};
  auto ip = [](const QubitEffectParams& a, const QubitEffectParams& b) {
    return 0.25 * (a.e0 * b.e0 - a.evec.dot(b.evec));
  };
  const double lhs = ip(e, ec) * ip(f, fc) -
                     std::sqrt(std::max(0.0, ip(e, e) * ip(f, f) * ip(ec, ec) * ip(fc, fc)));
  const double rhs = ip(e, fc) * ip(ec, f) + ip(e, f) * ip(ec, fc);
  return rhs - lhs;
}

inline bool qubit_compat(const Effect& E, const Effect& F) {
  return qubit_compat_slack(E, F) >= 0.0;
}

// ---------------------------------------------------------------------------
// Noise models
// ---------------------------------------------------------------------------

// E_{λ,p} = (1−λ)E + λpI: admixture of a trivial observable. The spectrum is
// pulled into [λp, 1−λ(1−p)], so the support becomes the whole space.
inline Effect noise_add(const Effect& E, double lambda, double p) {
  if (!(lambda > 0.0 && lambda < 1.0) || !(p > 0.0 && p < 1.0))
    throw PreconditionError("noise_add: λ and p must lie in (0,1)");
  return Effect((1.0 - lambda) * E.matrix() +
                lambda * p * cmat::Identity(E.dim(), E.dim()));
}

// E_p = p(I−E) + (1−p)E: classical flip (convolution) noise.
inline Effect noise_flip(const Effect& E, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw PreconditionError("noise_flip: p must lie in (0,1)");
  return Effect(p * (cmat::Identity(E.dim(), E.dim()) - E.matrix()) +
                (1.0 - p) * E.matrix());
}

// ---------------------------------------------------------------------------
// Noise thresholds and region maps
// ---------------------------------------------------------------------------

namespace detail {

// Is (λ, μ) in the joint-measurability region, optimising the pair of trivial
// observables (t₁I, (1−t₁)I), (t₂I, (1−t₂)I) over a grid with local
// refinement? For binary observables this grid covers the whole trivial
// class.
inline bool noisy_pair_compatible(const BinaryObservable& E1, const BinaryObservable& E2,
                                  double lambda, double mu, int grid,
                                  const DykstraOptions& opt) {
  const int d = E1.dim();
  const cmat eye = cmat::Identity(d, d);
  auto compatible_at = [&](double t1, double t2, double* residual) {
    const Effect y1((lambda)*E1.yes().matrix() + (1.0 - lambda) * t1 * eye);
    const Effect y2((mu)*E2.yes().matrix() + (1.0 - mu) * t2 * eye);
    const cmat& B = y1.matrix();
    const cmat& C = y2.matrix();
    std::vector<SpectrahedralConstraint> cons = {
        SpectrahedralConstraint::lower(cmat::Zero(d, d)),
        SpectrahedralConstraint::upper(B),
        SpectrahedralConstraint::upper(C),
        SpectrahedralConstraint::lower(B + C - eye)};
    DykstraOptions o = opt;
    cmat s = (B * C + C * B) / 2.0;
    o.start = (s + s.adjoint()) / 2.0;
    const FeasibilityResult r = dykstra_feasible(cons, d, o);
    if (r.status == FeasibilityStatus::inconclusive)
      throw OracleInconclusive("noisy_pair_compatible: oracle inconclusive");
    *residual = r.residual;
    return r.status == FeasibilityStatus::feasible;
  };

  if (grid < 2) grid = 2;
  // Coarse pass, center-out so the unbiased point is tried first.
  std::vector<double> ts(grid);
  for (int i = 0; i < grid; ++i) ts[i] = static_cast<double>(i) / (grid - 1);
  std::sort(ts.begin(), ts.end(),
            [](double a, double b) { return std::abs(a - 0.5) < std::abs(b - 0.5); });
  double best_t1 = 0.5, best_t2 = 0.5, best_res = std::numeric_limits<double>::infinity();
  for (double t1 : ts)
    for (double t2 : ts) {
      double res = 0.0;
      if (compatible_at(t1, t2, &res)) return true;
      if (res < best_res) {
        best_res = res;
        best_t1 = t1;
        best_t2 = t2;
      }
    }
  // Local refinement around the least-infeasible coarse point.
  double span = 1.0 / (grid - 1);
  for (int round = 0; round < 3; ++round) {
    const double step = span / 2.0;
    bool improved = false;
    for (double t1 : {best_t1 - step, best_t1, best_t1 + step}) {
      if (t1 < 0.0 || t1 > 1.0) continue;
      for (double t2 : {best_t2 - step, best_t2, best_t2 + step}) {
        if (t2 < 0.0 || t2 > 1.0) continue;
        double res = 0.0;
        if (compatible_at(t1, t2, &res)) return true;
        if (res < best_res) {
          best_res = res;
          best_t1 = t1;
          best_t2 = t2;
          improved = true;
        }
      }
    }
    span = step;
    if (!improved && round > 0) break;
  }
  return false;
}

} // namespace detail

// j(E₁,E₂): supremum of λ such that (λ,λ) lies in the joint-measurability
// region with optimally chosen trivial noise. Equals 1 for compatible pairs
// and ½ exactly for maximally incompatible ones; resolved to 1e-3. An
// inconclusive oracle at the active bisection point stops the search and
// leaves the bracket widened.
struct ThresholdResult {
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  BisectionStats stats;
};

inline ThresholdResult jm_threshold_bracketed(const BinaryObservable& E1,
                                              const BinaryObservable& E2,
                                              int trivial_grid = 11,
                                              const DykstraOptions& opt = {},
                                              double tol = 1e-3) {
  if (E1.dim() != E2.dim())
    throw PreconditionError("jm_threshold: dimension mismatch");
  ThresholdResult out;
  if (binary_jointly_measurable(E1, E2, opt)) {
    out.value = out.bracket_lo = out.bracket_hi = 1.0;
    ++out.stats.feasible;
    return out;
  }
  out.bracket_lo = 0.5; // Δ-inclusion: (½,½) is always admissible
  out.bracket_hi = 1.0;
  while (out.bracket_hi - out.bracket_lo > tol) {
    const double mid = (out.bracket_lo + out.bracket_hi) / 2.0;
    try {
      if (detail::noisy_pair_compatible(E1, E2, mid, mid, trivial_grid, opt)) {
        ++out.stats.feasible;
        out.bracket_lo = mid;
      } else {
        ++out.stats.infeasible;
        out.bracket_hi = mid;
      }
    } catch (const OracleInconclusive&) {
      ++out.stats.inconclusive;
      break;
    }
  }
  out.value = out.bracket_lo;
  return out;
}

inline double jm_threshold(const BinaryObservable& E1, const BinaryObservable& E2,
                           int trivial_grid = 11, const DykstraOptions& opt = {}) {
  const ThresholdResult r = jm_threshold_bracketed(E1, E2, trivial_grid, opt);
  if (r.stats.inconclusive > 0 && r.bracket_hi - r.bracket_lo > 1e-3)
    throw OracleInconclusive("jm_threshold: oracle inconclusive inside bracket [" +
                             std::to_string(r.bracket_lo) + ", " +
                             std::to_string(r.bracket_hi) + "]");
  return r.value;
}

// Feasibility map over the (λ, μ) square. Cells record feasible, infeasible,
// or inconclusive; the subdiagonal λ+μ ≤ 1 must always come out feasible.
enum class CellStatus : int { infeasible = 0, feasible = 1, inconclusive = -1 };

struct RegionMap {
  int grid_n = 0;
  std::vector<CellStatus> cells; // row-major over (i: λ, j: μ)

  double lambda_at(int i) const { return static_cast<double>(i) / (grid_n - 1); }
  double mu_at(int j) const { return static_cast<double>(j) / (grid_n - 1); }
  CellStatus at(int i, int j) const { return cells.at(static_cast<std::size_t>(i) * grid_n + j); }
};

inline RegionMap region_sample(const BinaryObservable& E1, const BinaryObservable& E2,
                               int grid_n, int trivial_grid = 11,
                               const DykstraOptions& opt = {}) {
  if (grid_n < 2)
    throw PreconditionError("region_sample: grid_n must be at least 2");
  RegionMap map;
  map.grid_n = grid_n;
  map.cells.resize(static_cast<std::size_t>(grid_n) * grid_n, CellStatus::inconclusive);
  for (int i = 0; i < grid_n; ++i) {
    const double lambda = static_cast<double>(i) / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      const double mu = static_cast<double>(j) / (grid_n - 1);
      CellStatus status;
      try {
        status = detail::noisy_pair_compatible(E1, E2, lambda, mu, trivial_grid, opt)
                     ? CellStatus::feasible
                     : CellStatus::infeasible;
      } catch (const OracleInconclusive&) {
        status = CellStatus::inconclusive;
      }
      map.cells[static_cast<std::size_t>(i) * grid_n + j] = status;
    }
  }
  return map;
}

} // namespace qea
