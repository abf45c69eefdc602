#include <doctest.h>

#include <cmath>
#include <random>

#include "lrprop/errors.hpp"
#include "lrprop/lattice.hpp"
#include "oracles.hpp"

using namespace lrprop;
using namespace lrprop::lattice;

TEST_SUITE_BEGIN("lattice");

TEST_CASE("chain distance on the ring") {
  CHECK(chain_distance(3, 10) == 3);
  CHECK(chain_distance(7, 10) == 3);
  CHECK(chain_distance(5, 10) == 5);
  CHECK_THROWS_AS(chain_distance(0, 10), Error);
  CHECK_THROWS_AS(chain_distance(10, 10), Error);
}

TEST_CASE("graph distance agrees with breadth-first search") {
  SUBCASE("identity") {
    const LatticeSpec spec = chain(9);
    CHECK(spec.distance(4, 4) == 0);
  }
  SUBCASE("periodic chain matches chain_distance") {
    const LatticeSpec spec = chain(12);
    for (int j = 1; j < 12; ++j) CHECK(spec.distance(0, j) == chain_distance(j, 12));
  }
  SUBCASE("5x5 periodic corner pair") {
    const LatticeSpec spec = make_lattice(2, {5, 5}, Boundary::Periodic);
    const int corner = 4 * 5 + 4;  // site (4,4)
    CHECK(spec.distance(0, corner) == 2);
    CHECK(spec.distance(0, corner) == oracles::bfs_distance(spec, 0, corner));
  }
  SUBCASE("random pairs on periodic and open lattices") {
    std::mt19937_64 rng(21);
    for (Boundary boundary : {Boundary::Periodic, Boundary::Open}) {
      const LatticeSpec spec = make_lattice(2, {4, 7}, boundary);
      std::uniform_int_distribution<int> site(0, spec.sites() - 1);
      for (int trial = 0; trial < 40; ++trial) {
        const int a = site(rng);
        const int b = site(rng);
        CHECK(spec.distance(a, b) == oracles::bfs_distance(spec, a, b));
      }
    }
  }
  CHECK_THROWS_AS(chain(10).distance(0, 10), Error);
}

TEST_CASE("normalization factor closed cases") {
  const LatticeSpec ten = chain(10);
  CHECK(normalization_factor(ten, 0.0) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
  const LatticeSpec two = chain(2, Boundary::Open);
  for (double alpha : {0.5, 1.0, 3.0})
    CHECK(normalization_factor(two, alpha) ==
          doctest::Approx(std::pow(2.0, alpha)).epsilon(1e-14));
}

TEST_CASE("normalization factor scaling regimes") {
  // alpha < D: N^{alpha-1} growth of the site sum
  const double a = 0.5;
  const double r1 =
      normalization_factor(chain(4096), a) * std::pow(4096.0, 1.0 - a);
  const double r2 =
      normalization_factor(chain(8192), a) * std::pow(8192.0, 1.0 - a);
  CHECK(std::abs(r1 / r2 - 1.0) < 0.02);
  // alpha > D: approaches a constant
  const double c1 = normalization_factor(chain(4096), 2.0);
  const double c2 = normalization_factor(chain(8192), 2.0);
  CHECK(std::abs(c1 / c2 - 1.0) < 0.01);
}

namespace {

// Direct evaluation of the reproducibility maximum, written independently.
double reproducibility_brute(const LatticeSpec& spec, double alpha) {
  const int n = spec.sites();
  double best = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double sum = 0;
      for (int k = 0; k < n; ++k)
        sum += std::pow((1.0 + spec.distance(i, k)) * (1.0 + spec.distance(k, j)), -alpha);
      best = std::max(best, sum * std::pow(1.0 + spec.distance(i, j), alpha));
    }
  }
  return best * normalization_factor(spec, alpha);
}

}  // namespace

TEST_CASE("reproducibility constant") {
  SUBCASE("alpha = 0 collapses to N/(N-1)") {
    for (int n : {5, 12})
      CHECK(reproducibility_constant(chain(n), 0.0) ==
            doctest::Approx(n / (n - 1.0)).epsilon(1e-13));
  }
  SUBCASE("two sites, brute force") {
    const LatticeSpec two = chain(2, Boundary::Open);
    for (double alpha : {0.7, 2.0})
      CHECK(reproducibility_constant(two, alpha) ==
            doctest::Approx(reproducibility_brute(two, alpha)).epsilon(1e-13));
  }
  SUBCASE("matches the brute evaluation on small lattices") {
    for (double alpha : {0.5, 1.5, 3.0}) {
      const LatticeSpec ring = chain(14);
      CHECK(reproducibility_constant(ring, alpha) ==
            doctest::Approx(reproducibility_brute(ring, alpha)).epsilon(1e-12));
      const LatticeSpec open_square = make_lattice(2, {3, 5}, Boundary::Open);
      CHECK(reproducibility_constant(open_square, alpha) ==
            doctest::Approx(reproducibility_brute(open_square, alpha)).epsilon(1e-12));
    }
  }
  SUBCASE("stable under doubling for alpha > D") {
    const double p100 = reproducibility_constant(chain(100), 3.0);
    const double p200 = reproducibility_constant(chain(200), 3.0);
    CHECK(std::abs(p100 / p200 - 1.0) < 0.01);
    CHECK(p200 <= p100 + 1e-12);
  }
}

TEST_CASE("power-law interaction matrix") {
  SUBCASE("three-site open chain by hand") {
    const InteractionMatrix m =
        power_law_interactions(chain(3, Boundary::Open), 1.0, 1.0);
    CHECK(m.couplings(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.couplings(0, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(m.couplings(1, 2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.max_row_sum == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("nearest-neighbor dominance at huge alpha") {
    const InteractionMatrix m = power_law_interactions(chain(8), 1000.0, 1.0);
    CHECK(m.couplings(0, 2) < 1e-300);
    CHECK(m.couplings(0, 1) == doctest::Approx(std::pow(2.0, -1000.0)));
  }
  SUBCASE("symmetry and row-sum bound recomputed") {
    std::mt19937_64 rng(5);
    const InteractionMatrix m = power_law_interactions(chain(17), 1.3, 0.8);
    std::uniform_int_distribution<int> site(0, 16);
    for (int trial = 0; trial < 20; ++trial) {
      const int i = site(rng);
      const int j = site(rng);
      CHECK(m.couplings(i, j) == m.couplings(j, i));
    }
    double best = 0;
    for (int i = 0; i < 17; ++i) {
      double row = 0;
      for (int j = 0; j < 17; ++j) row += m.couplings(i, j);
      best = std::max(best, row);
    }
    CHECK(m.max_row_sum == doctest::Approx(best).epsilon(1e-14));
  }
}

TEST_CASE("hopping interaction matrix") {
  SUBCASE("4-site ring at alpha = 1") {
    const InteractionMatrix m = hopping_interactions(4, 1.0);
    CHECK(m.couplings(0, 1) == doctest::Approx(0.5));
    CHECK(m.couplings(0, 2) == doctest::Approx(0.25));
    CHECK(m.couplings(0, 3) == doctest::Approx(0.5));
  }
  SUBCASE("alpha = 0 gives constant hopping 1/2") {
    const InteractionMatrix m = hopping_interactions(6, 0.0);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        if (i != j) CHECK(m.couplings(i, j) == 0.5);
  }
  SUBCASE("translation invariance: all row sums equal") {
    const InteractionMatrix m = hopping_interactions(10, 1.7);
    const double first = m.couplings.row(0).sum();
    for (int i = 1; i < 10; ++i)
      CHECK(m.couplings.row(i).sum() == doctest::Approx(first).epsilon(1e-14));
    CHECK(m.max_row_sum == doctest::Approx(first).epsilon(1e-14));
  }
}

TEST_CASE("interaction matrix validation") {
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(3, 3);
  bad(0, 1) = 1.0;  // not symmetric
  CHECK_THROWS_AS(make_interaction_matrix(chain(3), bad), Error);
  Eigen::MatrixXd diag = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(make_interaction_matrix(chain(3), diag), Error);
}

TEST_SUITE_END();
