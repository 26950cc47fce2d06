#include <catch2/catch_amalgamated.hpp>

#include "qea/generators.hpp"
#include "qea/incompat.hpp"
#include "qea/models.hpp"

#include <random>

using namespace qea;

namespace {

cmat diag2(double a, double b) {
  cmat m = cmat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

BinaryObservable sharp_axis(const Eigen::Vector3d& axis) {
  QubitEffectParams p;
  p.e0 = 1.0;
  p.evec = axis.normalized();
  return BinaryObservable(Effect(qubit_effect_matrix(p)));
}

Effect random_qubit_effect(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  // uniform Bloch parametrisation of a valid effect: |e| ≤ min(e0, 2−e0)
  const double e0 = 2.0 * uni(rng);
  const double cap = std::min(e0, 2.0 - e0);
  const double r = cap * std::pow(uni(rng), 1.0 / 3.0);
  const double z = 2.0 * uni(rng) - 1.0;
  const double phi = 2.0 * kPi * uni(rng);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  QubitEffectParams p;
  p.e0 = e0;
  p.evec = r * Eigen::Vector3d(s * std::cos(phi), s * std::sin(phi), z);
  return Effect(qubit_effect_matrix(p));
}

} // namespace

TEST_CASE("dykstra_feasible basics") {
  const int d = 3;
  SECTION("unit box is feasible from anywhere") {
    std::vector<SpectrahedralConstraint> cons = {
        SpectrahedralConstraint::lower(cmat::Zero(d, d)),
        SpectrahedralConstraint::upper(cmat::Identity(d, d))};
    const auto r = dykstra_feasible(cons, d);
    CHECK(r.feasible());
    CHECK(r.residual <= 1e-9);
  }
  SECTION("contradictory bounds are infeasible") {
    std::vector<SpectrahedralConstraint> cons = {
        SpectrahedralConstraint::upper(cmat::Zero(d, d)),
        SpectrahedralConstraint::lower(cmat::Identity(d, d))};
    const auto r = dykstra_feasible(cons, d);
    CHECK(r.status == FeasibilityStatus::infeasible);
  }
  SECTION("trace floor pushes the iterate up") {
    std::vector<SpectrahedralConstraint> cons = {
        SpectrahedralConstraint::lower(cmat::Zero(d, d)),
        SpectrahedralConstraint::upper(cmat::Identity(d, d)),
        SpectrahedralConstraint::trace_at_least(2.0)};
    const auto r = dykstra_feasible(cons, d);
    REQUIRE(r.feasible());
    CHECK(r.iterate.trace().real() >= 2.0 - 1e-8);
    CHECK(min_eigenvalue(r.iterate) >= -1e-8);
  }
  SECTION("qubit sharp z/x joint-effect constraints are infeasible") {
    const cmat B = diag2(1.0, 0.0);
    cvec plus(2);
    plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    const cmat C = plus * plus.adjoint();
    std::vector<SpectrahedralConstraint> cons = {
        SpectrahedralConstraint::lower(cmat::Zero(2, 2)),
        SpectrahedralConstraint::upper(B), SpectrahedralConstraint::upper(C),
        SpectrahedralConstraint::lower(B + C - cmat::Identity(2, 2))};
    const auto r = dykstra_feasible(cons, 2);
    CHECK(r.status == FeasibilityStatus::infeasible);
  }
  SECTION("invalid tolerance is rejected") {
    DykstraOptions opt;
    opt.tol = 0.0;
    CHECK_THROWS_AS(dykstra_feasible({}, 2, opt), PreconditionError);
  }
}

TEST_CASE("max_joint_lower_bound") {
  SECTION("identical identities reach the dimension") {
    const double v = max_joint_lower_bound(Effect::identity(3), Effect::identity(3), 1e-3);
    CHECK(v == Catch::Approx(3.0).margin(2e-3));
  }
  SECTION("orthogonal rank-1 supports reach zero") {
    const Effect e(diag2(0.9, 0.0));
    const Effect f(diag2(0.0, 0.8));
    CHECK(max_joint_lower_bound(e, f, 1e-4) <= 1e-4);
  }
  SECTION("half identities reach trace one") {
    const Effect h(0.5 * cmat::Identity(2, 2));
    CHECK(max_joint_lower_bound(h, h, 1e-3) == Catch::Approx(1.0).margin(2e-3));
  }
  SECTION("monotone under effect order") {
    // compare certified brackets: boundary probes may stay undecided, but the
    // certified bounds themselves must respect monotonicity
    std::mt19937_64 rng(3);
    for (int t = 0; t < 6; ++t) {
      const Effect f = random_effect(3, rng);
      const Effect e = random_effect(3, rng);
      const Effect e_smaller(0.6 * e.matrix());
      const auto lo = max_joint_lower_bound_bracketed(e_smaller, f, 1e-3);
      const auto hi = max_joint_lower_bound_bracketed(e, f, 1e-3);
      CHECK(lo.bracket_lo <= hi.bracket_hi + 1e-9);
      CHECK(lo.bracket_hi - lo.bracket_lo <= 5e-3);
      CHECK(hi.bracket_hi - hi.bracket_lo <= 5e-3);
    }
  }
  SECTION("disjointness matches a vanishing bound") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 8; ++t) {
      const int dim = 3 + static_cast<int>(rng() % 3);
      const cmat basis = random_unitary(dim, rng);
      const Effect e(0.8 * basis.leftCols(1) * basis.leftCols(1).adjoint());
      const Effect f(0.7 * basis.rightCols(dim - 1) * basis.rightCols(dim - 1).adjoint());
      REQUIRE(effects_disjoint(e, f));
      CHECK(max_joint_lower_bound(e, f, 1e-4) <= 1e-4);
      // and conversely the optimiser finds real mass on overlapping pairs
      const Effect g(0.5 * basis.leftCols(2) * basis.leftCols(2).adjoint());
      CHECK(max_joint_lower_bound(e, g, 1e-3) > 0.1);
    }
  }
}

TEST_CASE("binary_jointly_measurable") {
  SECTION("commuting pair") {
    const BinaryObservable q1(Effect(diag2(0.8, 0.3)));
    const BinaryObservable q2(Effect(diag2(0.5, 0.9)));
    const auto res = binary_jointly_measurable_certified(q1, q2);
    REQUIRE(res.measurable);
    REQUIRE(res.g11.has_value());
    // certified G11 lies under both yes-effects
    CHECK(min_eigenvalue(q1.yes().matrix() - *res.g11) >= -1e-7);
    CHECK(min_eigenvalue(q2.yes().matrix() - *res.g11) >= -1e-7);
  }
  SECTION("sharp z vs x is not jointly measurable") {
    CHECK_FALSE(binary_jointly_measurable(sharp_axis({0, 0, 1}), sharp_axis({1, 0, 0})));
  }
  SECTION("smeared pair at lambda = 0.5 is jointly measurable") {
    QubitEffectParams pz{1.0, {0, 0, 0.5}};
    QubitEffectParams px{1.0, {0.5, 0, 0}};
    CHECK(binary_jointly_measurable(BinaryObservable(Effect(qubit_effect_matrix(pz))),
                                    BinaryObservable(Effect(qubit_effect_matrix(px)))));
  }
}

TEST_CASE("qubit_params") {
  CHECK(qubit_params(Effect::identity(2)).e0 == Catch::Approx(2.0));
  CHECK(qubit_params(Effect::identity(2)).evec.norm() == Catch::Approx(0.0).margin(1e-14));
  const auto p = qubit_params(Effect(diag2(1.0, 0.0)));
  CHECK(p.e0 == Catch::Approx(1.0));
  CHECK(p.evec(2) == Catch::Approx(1.0));
  QubitEffectParams q{1.0, {0.5, 0, 0}};
  const auto round = qubit_params(Effect(qubit_effect_matrix(q)));
  CHECK(round.e0 == Catch::Approx(1.0).margin(1e-12));
  CHECK(round.evec(0) == Catch::Approx(0.5).margin(1e-12));
  CHECK_THROWS_AS(qubit_params(Effect::identity(3)), PreconditionError);
}

TEST_CASE("qubit_compat closed form") {
  SECTION("sharp z vs x: inequality sides are 1/4 and 1/8") {
    const Effect ez = sharp_axis({0, 0, 1}).yes();
    const Effect ex = sharp_axis({1, 0, 0}).yes();
    CHECK(qubit_compat_slack(ez, ex) == Catch::Approx(0.125 - 0.25));
    CHECK_FALSE(qubit_compat(ez, ex));
  }
  SECTION("identical effects are compatible") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
      const Effect e = random_qubit_effect(rng);
      CHECK(qubit_compat(e, e));
    }
  }
  SECTION("smeared threshold at 1/sqrt(2)") {
    auto smeared = [](double lambda, const Eigen::Vector3d& axis) {
      QubitEffectParams p{1.0, lambda * axis};
      return Effect(qubit_effect_matrix(p));
    };
    const double star = 1.0 / std::sqrt(2.0);
    CHECK(qubit_compat(smeared(star - 1e-6, {0, 0, 1}), smeared(star - 1e-6, {1, 0, 0})));
    CHECK_FALSE(qubit_compat(smeared(star + 1e-6, {0, 0, 1}), smeared(star + 1e-6, {1, 0, 0})));
  }
  SECTION("oracle agreement outside the slack band") {
    std::mt19937_64 rng(13);
    int compared = 0;
    for (int t = 0; t < 200; ++t) {
      const Effect e = random_qubit_effect(rng);
      const Effect f = random_qubit_effect(rng);
      const double slack = qubit_compat_slack(e, f);
      if (std::abs(slack) <= 1e-6) continue;
      ++compared;
      const bool numeric =
          binary_jointly_measurable(BinaryObservable(e), BinaryObservable(f));
      CHECK(numeric == (slack >= 0.0));
    }
    CHECK(compared >= 190);
  }
}

TEST_CASE("noise models") {
  SECTION("noise_add worked values") {
    CHECK((noise_add(Effect::zero(2), 0.5, 0.5).matrix() - 0.25 * cmat::Identity(2, 2)).norm() <
          1e-12);
    CHECK((noise_add(Effect(diag2(1, 0)), 0.1, 0.5).matrix() - diag2(0.95, 0.05)).norm() <
          1e-12);
  }
  SECTION("noise_add restores full support") {
    std::mt19937_64 rng(17);
    for (double lambda : {0.01, 0.1, 0.5})
      for (double p : {0.01, 0.5, 0.99}) {
        const Effect e = random_effect(4, rng, 2);
        const Effect noisy = noise_add(e, lambda, p);
        CHECK(support_projection(noisy).rank() == 4);
      }
  }
  SECTION("noise_flip spectra") {
    CHECK((noise_flip(Effect::identity(2), 0.3).matrix() - 0.7 * cmat::Identity(2, 2)).norm() <
          1e-12);
    const Effect p(diag2(1.0, 0.0));
    const Effect flipped = noise_flip(p, 0.2);
    CHECK((flipped.matrix() - diag2(0.8, 0.2)).norm() < 1e-12);
    // double flip composes affinely: spectrum maps through both steps
    const Effect twice = noise_flip(flipped, 0.2);
    const double expect_hi = 0.2 + 0.6 * 0.8;
    CHECK(twice.matrix()(0, 0).real() == Catch::Approx(expect_hi));
  }
  SECTION("boundary parameters are rejected") {
    CHECK_THROWS_AS(noise_add(Effect::identity(2), 0.0, 0.5), PreconditionError);
    CHECK_THROWS_AS(noise_add(Effect::identity(2), 0.5, 1.0), PreconditionError);
    CHECK_THROWS_AS(noise_flip(Effect::identity(2), 0.0), PreconditionError);
  }
  SECTION("noise kills disjointness along the whole parameter range") {
    const cmat eye = cmat::Identity(2, 2);
    const Effect e(0.9 * eye.col(0) * eye.col(0).adjoint());
    const Effect f(0.8 * eye.col(1) * eye.col(1).adjoint());
    REQUIRE(effects_disjoint(e, f));
    for (double lambda : {0.01, 0.1, 0.5})
      for (double p : {0.01, 0.1, 0.5})
        CHECK_FALSE(effects_disjoint(noise_add(e, lambda, p), noise_add(f, lambda, p)));
  }
}

TEST_CASE("jm_threshold") {
  SECTION("compatible pair saturates at one") {
    const BinaryObservable q(Effect(diag2(0.8, 0.2)));
    CHECK(jm_threshold(q, q) == Catch::Approx(1.0));
  }
  SECTION("qubit sharp z vs x reaches 1/sqrt(2)") {
    const double j = jm_threshold(sharp_axis({0, 0, 1}), sharp_axis({1, 0, 0}));
    CHECK(j == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1.5e-3));
  }
  SECTION("cyclic lattice at d = 2 coincides with the qubit case") {
    const CyclicLattice lat = cyclic_lattice(2);
    const BinaryObservable q1 = coarse_grain(lat.position, std::vector<int>{0});
    const BinaryObservable q2 = coarse_grain(lat.momentum, std::vector<int>{0});
    const double j = jm_threshold(q1, q2);
    CHECK(j == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1.5e-3));
  }
}

TEST_CASE("region_sample") {
  SECTION("compatible pair fills the square") {
    const BinaryObservable q(Effect(diag2(0.7, 0.4)));
    const RegionMap map = region_sample(q, q, 5);
    for (CellStatus s : map.cells) CHECK(s == CellStatus::feasible);
  }
  SECTION("delta inclusion and threshold boundary for the sharp pair") {
    const RegionMap map =
        region_sample(sharp_axis({0, 0, 1}), sharp_axis({1, 0, 0}), 9);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        if (map.lambda_at(i) + map.mu_at(j) <= 1.0 + 1e-12)
          CHECK(map.at(i, j) == CellStatus::feasible);
      }
    // the diagonal flips between 0.625 (feasible: λ²+μ²<1) and 0.75
    CHECK(map.at(5, 5) == CellStatus::feasible);   // 0.625² ·2 = 0.78 < 1
    CHECK(map.at(6, 6) == CellStatus::infeasible); // 0.75² ·2 = 1.125 > 1
  }
}
