#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lrprop/errors.hpp"
#include "lrprop/hopping.hpp"
#include "oracles.hpp"

using namespace lrprop;
using namespace lrprop::hopping;
constexpr double kPi = std::numbers::pi;

TEST_SUITE_BEGIN("hopping");

TEST_CASE("model validation") {
  CHECK_THROWS_AS(make_model(7, 1.0), Error);
  CHECK_THROWS_AS(make_model(2, 1.0), Error);
  CHECK_THROWS_AS(make_model(8, -1.0), Error);
}

TEST_CASE("finite-chain dispersion limits") {
  SUBCASE("huge alpha leaves only nearest-neighbor hopping") {
    const HoppingModel model = make_model(16, 50.0);
    for (int m : {1, 3, 8})
      CHECK(dispersion_finite(model, m) ==
            doctest::Approx(-2.0 * std::cos(2.0 * kPi * m / 16)).epsilon(1e-14));
  }
  SUBCASE("alpha = 0 at k = 0 counts the couplings") {
    const HoppingModel model = make_model(12, 0.0);
    CHECK(dispersion_finite(model, 0) == doctest::Approx(-11.0).epsilon(1e-14));
  }
  SUBCASE("cosine symmetry of the table") {
    const DispersionTable table = make_dispersion_table(make_model(30, 1.3));
    for (int m = 1; m < 30; ++m) CHECK(table.eps[m] == table.eps[30 - m]);
  }
  SUBCASE("large-N convergence to the polylogarithm form") {
    const HoppingModel model = make_model(200, 3.0);
    const double finite = dispersion_finite(model, 50);  // k = pi/2
    const double infinite = dispersion_infinite(3.0, kPi / 2);
    CHECK(std::abs(finite - infinite) < 1e-3);
    CHECK(std::abs(finite - infinite) < 10.0 * std::pow(200.0, 1.0 - 3.0));
  }
}

TEST_CASE("infinite-chain dispersion") {
  SUBCASE("k -> 0 limit is -2 zeta(alpha)") {
    CHECK(dispersion_infinite(3.0, 0.0) ==
          doctest::Approx(-2.0 * 1.2020569031595942854).epsilon(1e-13));
    CHECK(dispersion_infinite(3.0, 1e-6) ==
          doctest::Approx(-2.0 * 1.2020569031595942854).epsilon(1e-9));
  }
  SUBCASE("cusp at alpha = 2: one-sided slopes differ by 2 pi") {
    const double h = 1e-5;
    const double right = (dispersion_infinite(2.0, 2 * h) - dispersion_infinite(2.0, h)) / h;
    const double left =
        (dispersion_infinite(2.0, 2 * kPi - h) - dispersion_infinite(2.0, 2 * kPi - 2 * h)) / h;
    CHECK(std::abs(right - left) == doctest::Approx(2.0 * kPi).epsilon(1e-4));
  }
  SUBCASE("divergence onset just above alpha = 1") {
    const double near = dispersion_infinite(1.0001, 1e-2);
    const double nearer = dispersion_infinite(1.0001, 1e-4);
    CHECK(near < -5.0);
    CHECK(nearer < near);
  }
  CHECK_THROWS_AS(dispersion_infinite(1.0, 0.5), Error);
  CHECK_THROWS_AS(dispersion_infinite(0.7, 0.5), Error);
}

TEST_CASE("staggered quench frequencies") {
  SUBCASE("the two closed forms agree across alpha and N") {
    for (int n : {4, 10, 200})
      for (double alpha : {0.0, 0.5, 1.0, 2.0, 3.0, 8.0})
        CHECK_NOTHROW(delta_frequencies(make_model(n, alpha)));
  }
  SUBCASE("alpha = 0 at k = 0 counts odd offsets") {
    const Eigen::VectorXd freq = delta_frequencies(make_model(12, 0.0));
    CHECK(freq[0] == doctest::Approx(12.0).epsilon(1e-13));
  }
  SUBCASE("vanishes at k = pi/2") {
    const Eigen::VectorXd freq = delta_frequencies(make_model(16, 1.5));
    CHECK(std::abs(freq[4]) < 1e-12);
  }
  SUBCASE("frequencies concentrate near zero for small alpha") {
    const auto mass_near_zero = [](double alpha) {
      const Eigen::VectorXd freq = delta_frequencies(make_model(200, alpha));
      int inside = 0;
      for (int m = 0; m < 200; ++m)
        if (std::abs(freq[m]) < 0.2) ++inside;
      return inside;
    };
    CHECK(mass_near_zero(0.5) > mass_near_zero(3.0));
  }
}

TEST_CASE("occupation dynamics") {
  const DispersionTable table = make_dispersion_table(make_model(200, 3.0));
  SUBCASE("staggered start") {
    CHECK(occupation(table, 0, 0.0) == doctest::Approx(0.0));
    CHECK(occupation(table, 1, 0.0) == doctest::Approx(1.0));
  }
  SUBCASE("adjacent sites always fill one particle") {
    for (double t : {0.3, 2.7, 40.0})
      CHECK(occupation(table, 4, t) + occupation(table, 5, t) ==
            doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("relaxation toward half filling") {
    double mean = 0;
    const int samples = 400;
    for (int i = 0; i < samples; ++i)
      mean += occupation(table, 0, 50.0 + 50.0 * i / (samples - 1));
    mean /= samples;
    CHECK(std::abs(mean - 0.5) < 0.01);
  }
}

TEST_CASE("staggered correlations") {
  const DispersionTable table = make_dispersion_table(make_model(40, 1.5));
  SUBCASE("initial product state has no off-site correlations") {
    for (int delta = 1; delta < 40; ++delta)
      CHECK(std::abs(staggered_correlation(table, 0, delta, 0.0)) < 1e-13);
    CHECK(staggered_correlation(table, 1, 0, 0.0).real() == doctest::Approx(1.0));
    CHECK(staggered_correlation(table, 2, 0, 0.0).real() == doctest::Approx(0.0));
  }
  SUBCASE("delta = 0 reduces to the occupation") {
    for (double t : {0.4, 1.9})
      for (int j : {0, 3}) {
        const std::complex<double> c = staggered_correlation(table, j, 0, t);
        CHECK(c.real() == doctest::Approx(occupation(table, j, t)).epsilon(1e-12));
        CHECK(std::abs(c.imag()) < 1e-12);
      }
  }
  SUBCASE("offsets wrap around the ring") {
    const std::complex<double> direct = staggered_correlation(table, 2, 7, 1.3);
    CHECK(std::abs(staggered_correlation(table, 2, 7 + 40, 1.3) - direct) < 1e-15);
    CHECK(std::abs(staggered_correlation(table, 2, 7 - 40, 1.3) - direct) < 1e-15);
  }
  SUBCASE("correlations leak outside the cone only at small alpha") {
    const DispersionTable leaky = make_dispersion_table(make_model(200, 0.75));
    const DispersionTable sharp = make_dispersion_table(make_model(200, 3.0));
    // delta = 60 at t = 10 lies outside both cones (speeds ~1 and ~3.7)
    const double outside_leaky = std::abs(staggered_correlation(leaky, 0, 60, 10.0));
    const double outside_sharp = std::abs(staggered_correlation(sharp, 0, 60, 10.0));
    CHECK(outside_leaky > 100.0 * outside_sharp);
  }
}

TEST_CASE("correlation matrix invariants and oracle") {
  SUBCASE("t = 0 is the staggered projector") {
    const DispersionTable table = make_dispersion_table(make_model(12, 2.0));
    const CorrelationMatrix matrix = correlation_matrix(table, 0.0);
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j) {
        const double expected = (i == j && i % 2 == 1) ? 1.0 : 0.0;
        CHECK(std::abs(matrix.entries(i, j) - std::complex<double>(expected, 0)) < 1e-12);
      }
  }
  SUBCASE("one-body evolution oracle") {
    const DispersionTable table = make_dispersion_table(make_model(8, 2.0));
    const CorrelationMatrix matrix = correlation_matrix(table, 0.7);
    const Eigen::MatrixXcd oracle = oracles::staggered_correlations_ed(8, 2.0, 0.7);
    CHECK((matrix.entries - oracle).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("physicality at random times") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> time(0.0, 20.0);
    const DispersionTable table = make_dispersion_table(make_model(16, 1.2));
    for (int trial = 0; trial < 5; ++trial) {
      const CorrelationMatrix matrix = correlation_matrix(table, time(rng));
      const std::complex<double> trace = matrix.entries.trace();
      CHECK(std::abs(trace - std::complex<double>(8.0, 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("two-site mutual information") {
  const DispersionTable table = make_dispersion_table(make_model(60, 8.0));
  SUBCASE("product state carries none") {
    const CorrelationMatrix matrix = correlation_matrix(table, 0.0);
    for (int j : {1, 7, 30}) CHECK(mutual_information(matrix, 0, j) == 0.0);
  }
  SUBCASE("symmetry and positivity") {
    const CorrelationMatrix matrix = correlation_matrix(table, 2.0);
    for (int j : {1, 5, 17}) {
      const double forward = mutual_information(matrix, 0, j);
      CHECK(forward == doctest::Approx(mutual_information(matrix, j, 0)));
      CHECK(forward >= -1e-10);
    }
  }
  SUBCASE("sharp cone at large alpha") {
    const CorrelationMatrix matrix = correlation_matrix(table, 1.0);
    const double inside = mutual_information(matrix, 0, 2);
    const double outside = mutual_information(matrix, 0, 25);
    CHECK(outside < 1e-8 * inside);
  }
  SUBCASE("sharp cone on the full 200-site chain") {
    const HoppingModel model = make_model(200, 8.0);
    std::vector<int> deltas;
    for (int d = 1; d <= 100; ++d) deltas.push_back(d);
    const SpacetimeGrid grid = mutual_information_grid(model, deltas, {0.0, 6.0});
    // t = 0 column vanishes; at t = 6 the front sits near delta = 25 and the
    // information level collapses by eight orders within the next ~15 sites
    double inside_peak = 0, outside_peak = 0;
    for (size_t d = 0; d < deltas.size(); ++d) {
      CHECK(grid.at(d, 0) == 0.0);
      (deltas[d] <= 40 ? inside_peak : outside_peak) =
          std::max(deltas[d] <= 40 ? inside_peak : outside_peak, grid.at(d, 1));
    }
    CHECK(outside_peak < 1e-8 * inside_peak);
  }
  CHECK_THROWS_AS(
      mutual_information(correlation_matrix(table, 0.0), 3, 3), Error);
}

TEST_CASE("density of states quick checks") {
  SUBCASE("alpha = 2: uniform on (-pi, pi)") {
    std::vector<double> edges;
    for (int i = 0; i <= 140; ++i) edges.push_back(-3.5 + 7.0 * i / 140);
    const DosResult dos = density_of_states(2.0, 10000, edges);
    for (size_t bin = 0; bin < dos.density.size(); ++bin) {
      const double center = 0.5 * (dos.edges[bin] + dos.edges[bin + 1]);
      if (std::abs(center) < 2.9)
        CHECK(dos.density[bin] == doctest::Approx(1.0 / (2 * kPi)).epsilon(2e-2));
      if (std::abs(center) > kPi + 0.1) CHECK(dos.density[bin] < 1e-2);
    }
  }
  SUBCASE("alpha = 1: Cauchy law") {
    std::vector<double> edges;
    for (int i = 0; i <= 110; ++i) edges.push_back(-5.5 + 11.0 * i / 110);
    const DosResult dos = density_of_states(1.0, 10000, edges);
    double worst = 0;
    double integral = 0;
    for (size_t bin = 0; bin < dos.density.size(); ++bin) {
      CHECK(dos.density[bin] >= 0.0);
      integral += dos.density[bin] * (dos.edges[bin + 1] - dos.edges[bin]);
      const double center = 0.5 * (dos.edges[bin] + dos.edges[bin + 1]);
      if (std::abs(center) > 5.0) continue;
      worst = std::max(worst,
                       std::abs(dos.density[bin] - 1.0 / (kPi * (1 + center * center))));
    }
    CHECK(worst < 2e-2);
    CHECK(integral + dos.out_of_range_mass == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(density_of_states(1.0, 100, {0.0, 1.0}), Error);
}

TEST_CASE("band-origin difference quotient") {
  SUBCASE("alpha = 0 closed form N^2/(2 pi)") {
    for (int n : {16, 64})
      CHECK(group_velocity_quotient(n, 0.0) ==
            doctest::Approx(n * n / (2.0 * kPi)).epsilon(1e-12));
    const numerics::PowerLawFit fit = group_velocity_scaling(0.0, {16, 32, 64, 128});
    CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-10));
  }
  SUBCASE("alpha = 1 scales like N up to the fit tolerance") {
    const numerics::PowerLawFit fit =
        group_velocity_scaling(1.0, {256, 512, 1024, 2048});
    CHECK(fit.exponent > 1.0 - 0.15);
    CHECK(fit.exponent < 1.05);
  }
  SUBCASE("alpha = 3: the band-origin quotient decays like log(N)/N") {
    // eps''(0) diverges logarithmically, so the mode-0/1 quotient vanishes:
    // per doubling it shrinks by roughly half (plus a slowly growing log).
    const double q1 = group_velocity_quotient(2048, 3.0);
    const double q2 = group_velocity_quotient(4096, 3.0);
    CHECK(q2 < q1);
    CHECK(q2 / q1 == doctest::Approx(0.54).epsilon(0.1));
    // the sup of |eps'| is the quantity that settles to the group velocity
    const double v1 = max_group_velocity(make_dispersion_table(make_model(2048, 3.0)));
    const double v2 = max_group_velocity(make_dispersion_table(make_model(4096, 3.0)));
    CHECK(std::abs(v2 / v1 - 1.0) < 0.01);
  }
  CHECK_THROWS_AS(group_velocity_scaling(1.0, {16, 32, 64}), Error);
  CHECK_THROWS_AS(group_velocity_scaling(1.0, {16, 32, 64, 63}), Error);
}

TEST_CASE("front extraction and velocity") {
  SUBCASE("empty grid has no front") {
    SpacetimeGrid grid;
    grid.delta_values = {1, 2, 3, 4, 5};
    grid.t_values = {0.0, 1.0, 2.0};
    grid.values.assign(15, 0.0);
    CHECK_THROWS_AS(cone_front(grid, 0.5), Error);
  }
  SUBCASE("planted linear front") {
    SpacetimeGrid grid;
    for (int d = 1; d <= 40; ++d) grid.delta_values.push_back(d);
    for (int i = 0; i <= 16; ++i) grid.t_values.push_back(0.5 * i);
    grid.values.assign(grid.rows() * grid.cols(), 0.0);
    for (size_t d = 0; d < grid.rows(); ++d)
      for (size_t ti = 0; ti < grid.cols(); ++ti)
        grid.at(d, ti) = grid.delta_values[d] <= 2.0 * grid.t_values[ti] ? 1.0 : 0.0;
    CHECK(cone_velocity(grid, 0.5) == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("velocity grows with alpha") {
    // thresholds well above the supersonic leakage floor track the cone ridge
    const auto velocity_at = [](double alpha, double t_max) {
      const HoppingModel model = make_model(100, alpha);
      std::vector<int> deltas;
      for (int d = 1; d <= 50; ++d) deltas.push_back(d);
      std::vector<double> times;
      for (int i = 0; i <= 120; ++i) times.push_back(t_max * i / 120);
      const SpacetimeGrid grid = correlation_grid(model, deltas, times);
      const double peak = *std::max_element(grid.values.begin(), grid.values.end());
      return cone_velocity(grid, 0.2 * peak);
    };
    const double slow = velocity_at(0.75, 35.0);
    const double fast = velocity_at(3.0, 20.0);
    CHECK(slow < fast);
  }
}

TEST_SUITE_END();
