#include <catch2/catch_amalgamated.hpp>

#include "qea/generators.hpp"
#include "qea/models.hpp"
#include "qea/observables.hpp"

#include <random>

using namespace qea;

namespace {

cmat diag2(double a, double b) {
  cmat m = cmat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

DiscreteObservable sharp_z() {
  return DiscreteObservable({"+1", "-1"}, {Effect(diag2(1, 0)), Effect(diag2(0, 1))});
}

DiscreteObservable sharp_x() {
  cvec plus(2), minus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  minus << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
  return DiscreteObservable(
      {"+1", "-1"}, {Effect(plus * plus.adjoint()), Effect(minus * minus.adjoint())});
}

} // namespace

TEST_CASE("DiscreteObservable validation") {
  CHECK_THROWS_AS(DiscreteObservable({"a"}, {Effect(diag2(1, 0))}), PreconditionError);
  CHECK_THROWS_AS(
      DiscreteObservable({"a", "a"}, {Effect(diag2(1, 0)), Effect(diag2(0, 1))}),
      PreconditionError);
  const DiscreteObservable z = sharp_z();
  CHECK(z.index_of("-1") == 1);
  CHECK_THROWS_AS(z.index_of("?"), PreconditionError);
  CHECK(z.is_projective());
}

TEST_CASE("coarse_grain") {
  const DiscreteObservable z = sharp_z();
  CHECK(coarse_grain(z, std::vector<int>{}).yes().matrix().norm() == 0.0);
  CHECK((coarse_grain(z, std::vector<int>{0, 1}).yes().matrix() - cmat::Identity(2, 2)).norm() <
        1e-12);
  CHECK((coarse_grain(z, std::vector<std::string>{"+1"}).yes().matrix() - diag2(1, 0)).norm() <
        1e-12);
}

TEST_CASE("is_test") {
  const BinaryObservable q(Effect(diag2(1.0, 0.5)));
  CHECK(is_test(q, q));
  CHECK_FALSE(is_test(BinaryObservable(Effect::zero(2)), q));
  CHECK(is_test(BinaryObservable(Effect(diag2(0.2, 0.5))), q));
  CHECK_FALSE(is_test(BinaryObservable(Effect(diag2(0.2, 0.6))), q));

  SECTION("a test induces the explicit four-effect joint observable") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
      const int dim = 2 + static_cast<int>(rng() % 5);
      const Effect qe = random_effect(dim, rng);
      // scale down to get A ⪯ Q
      const Effect ae(0.5 * qe.matrix());
      const BinaryObservable A(ae), Q(qe);
      if (!is_test(A, Q)) continue;
      const cmat eye = cmat::Identity(dim, dim);
      std::vector<Effect> joint = {Effect(eye - qe.matrix()), Effect::zero(dim),
                                   Effect(qe.matrix() - ae.matrix()), ae};
      cmat sum = cmat::Zero(dim, dim);
      for (const auto& g : joint) sum += g.matrix();
      CHECK((sum - eye).norm() < 1e-9);
    }
  }
}

TEST_CASE("common_test_exists") {
  SECTION("shared trivial effects") {
    const BinaryObservable half(Effect(0.5 * cmat::Identity(2, 2)));
    const auto res = common_test_exists(half, half);
    CHECK(res.exists);
    REQUIRE(res.witness.has_value());
    const BinaryObservable w(*res.witness);
    CHECK(is_test(w, half));
  }
  SECTION("orthogonal rank-1 supports have none") {
    const BinaryObservable q1(Effect(diag2(0.8, 0.0)));
    const BinaryObservable q2(Effect(diag2(0.0, 0.6)));
    CHECK_FALSE(common_test_exists(q1, q2).exists);
  }
  SECTION("sharp z vs x coarse grainings have none") {
    const auto q1 = coarse_grain(sharp_z(), std::vector<int>{0});
    const auto q2 = coarse_grain(sharp_x(), std::vector<int>{0});
    CHECK_FALSE(common_test_exists(q1, q2).exists);
  }
}

TEST_CASE("complementary_family") {
  SECTION("sharp z vs sharp x: all singleton pairs disjoint") {
    const auto fam = complementary_family(sharp_z(), sharp_x(), OutcomeFamily::singletons(2),
                                          OutcomeFamily::singletons(2));
    CHECK(fam.all_disjoint);
    CHECK(fam.verdicts.size() == 4);
  }
  SECTION("self-overlap is never disjoint") {
    const auto fam = complementary_family(sharp_z(), sharp_z(), OutcomeFamily::singletons(2),
                                          OutcomeFamily::singletons(2));
    CHECK_FALSE(fam.all_disjoint);
    // diagonal pairs overlap with cosine 1
    CHECK(fam.verdicts[0].overlap_cosine == Catch::Approx(1.0));
  }
  SECTION("multislit pair, singleton families") {
    const auto [qd, pmod] = multislit(3, 4);
    const auto fam = complementary_family(qd, pmod, OutcomeFamily::singletons(3),
                                          OutcomeFamily::singletons(3));
    CHECK(fam.all_disjoint);
  }
}

TEST_CASE("outcome families") {
  const OutcomeFamily f = OutcomeFamily::proper_subsets_up_to(4, 2);
  for (const auto& s : f.sets) CHECK(s.size() <= 2);
  CHECK(f.sets.size() == 4 + 6);
  CHECK_THROWS_AS([] {
    OutcomeFamily bad;
    bad.sets.push_back({});
    bad.validate(3);
  }(), PreconditionError);
  CHECK_THROWS_AS([] {
    OutcomeFamily bad;
    bad.sets.push_back({0, 1, 2});
    bad.validate(3);
  }(), PreconditionError);
}

TEST_CASE("no_joint_measurement_check") {
  SECTION("product observable of a commuting pair is consistent") {
    const DiscreteObservable z = sharp_z();
    std::vector<Effect> cells;
    std::vector<std::string> labels;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        cells.emplace_back(z.effect(x).matrix() * z.effect(y).matrix());
        labels.push_back("g" + std::to_string(x) + std::to_string(y));
      }
    const DiscreteObservable g(labels, cells);
    const auto res = no_joint_measurement_check(z, z, OutcomeFamily::singletons(2),
                                                OutcomeFamily::singletons(2), g);
    CHECK(res.status == JointCheckStatus::consistent);
  }
  SECTION("wrong marginals are reported distinctly") {
    const DiscreteObservable z = sharp_z();
    std::vector<Effect> cells = {Effect(0.25 * cmat::Identity(2, 2)),
                                 Effect(0.25 * cmat::Identity(2, 2)),
                                 Effect(0.25 * cmat::Identity(2, 2)),
                                 Effect(0.25 * cmat::Identity(2, 2))};
    const DiscreteObservable g({"00", "01", "10", "11"}, cells);
    const auto res = no_joint_measurement_check(z, z, OutcomeFamily::singletons(2),
                                                OutcomeFamily::singletons(2), g);
    CHECK(res.status == JointCheckStatus::marginal_mismatch);
  }
  SECTION("complementary pair admits no correct-marginal candidate") {
    // random search over valid joint POVMs whose first marginal equals the
    // sharp z observable: none may come out consistent with the z/x pair
    const DiscreteObservable z = sharp_z();
    const DiscreteObservable x = sharp_x();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int tested = 0;
    for (int t = 0; t < 50; ++t) {
      std::vector<Effect> cells;
      std::vector<std::string> labels;
      for (int i = 0; i < 2; ++i) {
        const double q = uni(rng); // split E_z(i) between the two y-columns
        for (int j = 0; j < 2; ++j) {
          cells.emplace_back((j == 0 ? q : 1.0 - q) * z.effect(i).matrix());
          labels.push_back("g" + std::to_string(i) + std::to_string(j));
        }
      }
      ++tested;
      const DiscreteObservable g(labels, cells);
      const auto res = no_joint_measurement_check(z, x, OutcomeFamily::singletons(2),
                                                  OutcomeFamily::singletons(2), g);
      // either the x-marginal is broken or a disjoint cell carries mass
      CHECK(res.status != JointCheckStatus::consistent);
    }
    CHECK(tested > 0);
  }
}

TEST_CASE("minimal_dilation structure") {
  SECTION("projective observable dilates with a unitary") {
    const DiscreteObservable z = sharp_z();
    const NaimarkDilation dil = minimal_dilation(z);
    CHECK(dil.dilation_dim() == 2);
    CHECK((dil.isometry * dil.isometry.adjoint() - cmat::Identity(2, 2)).norm() < 1e-10);
  }
  SECTION("trivial observable doubles the dimension") {
    const int d = 3;
    const double p = 0.3;
    const DiscreteObservable triv(
        {"0", "1"}, {Effect(p * cmat::Identity(d, d)), Effect((1 - p) * cmat::Identity(d, d))});
    const NaimarkDilation dil = minimal_dilation(triv);
    CHECK(dil.dilation_dim() == 2 * d);
  }
  SECTION("qubit trine POVM has a 3-dimensional dilation space") {
    std::vector<Effect> effs;
    for (int k = 0; k < 3; ++k) {
      const double th = 2.0 * kPi * k / 3.0;
      cvec psi(2);
      psi << std::cos(th / 2.0), std::sin(th / 2.0);
      effs.emplace_back((2.0 / 3.0) * psi * psi.adjoint());
    }
    const DiscreteObservable trine({"0", "1", "2"}, effs);
    const NaimarkDilation dil = minimal_dilation(trine);
    CHECK(dil.dilation_dim() == 3);
    for (int y = 0; y < 3; ++y) {
      const cmat rec = dil.isometry.adjoint() * dil.block_projection(y) * dil.isometry;
      CHECK((rec - trine.effect(y).matrix()).norm() <= 1e-10);
    }
  }
  SECTION("random POVMs reconstruct within 1e-9 and are minimal") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 25; ++t) {
      const int dim = 2 + static_cast<int>(rng() % 11);
      const int outcomes = 2 + static_cast<int>(rng() % 5);
      const DiscreteObservable obs = random_povm(dim, outcomes, rng);
      const NaimarkDilation dil = minimal_dilation(obs);
      int rank_sum = 0;
      for (int y = 0; y < outcomes; ++y) {
        const cmat rec = dil.isometry.adjoint() * dil.block_projection(y) * dil.isometry;
        CHECK((rec - obs.effect(y).matrix()).norm() <= 1e-9);
        rank_sum += numerical_rank(obs.effect(y).matrix());
      }
      CHECK(dil.dilation_dim() == rank_sum);
      CHECK((dil.isometry.adjoint() * dil.isometry - cmat::Identity(dim, dim)).norm() <= 1e-9);
    }
  }
}

TEST_CASE("dilation_complementarity") {
  SECTION("self pair is never disjoint") {
    const DiscreteObservable z = sharp_z();
    const NaimarkDilation dil = minimal_dilation(z);
    const auto v = dilation_complementarity(z, z, {0}, {0}, dil, dil);
    CHECK_FALSE(v.disjoint);
    REQUIRE(v.witness.has_value());
  }
  SECTION("sharp z vs x matches the support route") {
    const DiscreteObservable z = sharp_z();
    const DiscreteObservable x = sharp_x();
    const NaimarkDilation dz = minimal_dilation(z);
    const NaimarkDilation dx = minimal_dilation(x);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const auto v = dilation_complementarity(z, x, {i}, {j}, dz, dx);
        CHECK(v.disjoint);
      }
  }
  SECTION("multislit s=2 m=3: all pairs disjoint through dilations") {
    const auto [qd, pmod] = multislit(2, 3);
    const NaimarkDilation d1 = minimal_dilation(qd);
    const NaimarkDilation d2 = minimal_dilation(pmod);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(dilation_complementarity(qd, pmod, {i}, {j}, d1, d2).disjoint);
  }
  SECTION("agrees with the support-intersection criterion on random pairs") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 40; ++t) {
      const int dim = 2 + static_cast<int>(rng() % 7);
      DiscreteObservable a = random_povm(dim, 2 + static_cast<int>(rng() % 3), rng);
      DiscreteObservable b = random_povm(dim, 2 + static_cast<int>(rng() % 3), rng);
      if (t % 3 == 0) {
        // partition pairs over a shared basis produce genuinely disjoint cells
        const cmat basis = random_unitary(dim, rng);
        const int cut = 1 + static_cast<int>(rng() % (dim - 1));
        a = random_partition_observable(dim, {cut, dim - cut}, basis);
        b = random_partition_observable(dim, {dim - cut, cut}, basis);
      }
      const NaimarkDilation da = minimal_dilation(a);
      const NaimarkDilation db = minimal_dilation(b);
      const auto fam =
          complementary_family(a, b, OutcomeFamily::singletons(a.outcomes()),
                               OutcomeFamily::singletons(b.outcomes()));
      std::size_t idx = 0;
      for (int i = 0; i < a.outcomes(); ++i)
        for (int j = 0; j < b.outcomes(); ++j, ++idx) {
          const auto v = dilation_complementarity(a, b, {i}, {j}, da, db);
          CHECK(v.disjoint == fam.verdicts[idx].disjoint);
        }
    }
  }
}

TEST_CASE("strong_complementarity") {
  SECTION("sharp z vs x is strongly complementary on singletons") {
    const auto v = strong_complementarity(sharp_z(), sharp_x(), {0}, {0});
    CHECK(v.xy);
    CHECK(v.x_not_y);
    CHECK(v.not_x_y);
    CHECK(v.all());
  }
  SECTION("a pair with itself fails the first component") {
    const auto v = strong_complementarity(sharp_z(), sharp_z(), {0}, {0});
    CHECK_FALSE(v.xy);
  }
}

TEST_CASE("com_observables") {
  SECTION("commuting diagonal pair") {
    const DiscreteObservable z = sharp_z();
    CHECK(com_observables(z, z).rank() == 2);
  }
  SECTION("sharp z vs x is totally incompatible") {
    CHECK(com_observables(sharp_z(), sharp_x()).rank() == 0);
  }
  SECTION("multislit pair is totally incompatible") {
    const auto [qd, pmod] = multislit(3, 2);
    CHECK(com_observables(qd, pmod).rank() == 0);
  }
  SECTION("rejects non-projective input") {
    const DiscreteObservable triv(
        {"0", "1"},
        {Effect(0.5 * cmat::Identity(2, 2)), Effect(0.5 * cmat::Identity(2, 2))});
    CHECK_THROWS_AS(com_observables(triv, sharp_z()), PreconditionError);
  }
  SECTION("com = I iff every effect pair commutes, on random projective pairs") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
      const int dim = 2 + static_cast<int>(rng() % 4);
      const cmat basis_a = random_unitary(dim, rng);
      const cmat basis_b = (t % 2 == 0) ? basis_a : random_unitary(dim, rng);
      const int cut = 1 + static_cast<int>(rng() % (dim - 1));
      const DiscreteObservable a =
          random_partition_observable(dim, {cut, dim - cut}, basis_a);
      const DiscreteObservable b =
          random_partition_observable(dim, {1, dim - 1}, basis_b);
      bool all_commute = true;
      for (int i = 0; i < a.outcomes(); ++i)
        for (int j = 0; j < b.outcomes(); ++j) {
          const cmat& p = a.effect(i).matrix();
          const cmat& r = b.effect(j).matrix();
          if ((p * r - r * p).norm() > 1e-7) all_commute = false;
        }
      CHECK((com_observables(a, b).rank() == dim) == all_commute);
    }
  }
}
