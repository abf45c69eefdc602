#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "lrprop/grid.hpp"
#include "lrprop/numerics.hpp"

namespace lrprop::hopping {

// 1-D periodic chain with hopping rate d_l^-alpha / 2 at ring offset l.
// The staggered reference state occupies the odd sites (0-based).
struct HoppingModel {
  int sites = 0;   // even, >= 4
  double alpha = 0;
};

HoppingModel make_model(int sites, double alpha);

// eps[m] = -sum_{l=1}^{N-1} cos(2 pi m l / N) / d_l^alpha and the staggered
// quench frequencies delta_freq[m] = eps[(m + N/2) % N] - eps[m].
struct DispersionTable {
  HoppingModel model;
  Eigen::VectorXd eps;
  Eigen::VectorXd delta_freq;
};

DispersionTable make_dispersion_table(const HoppingModel& model);

double dispersion_finite(const HoppingModel& model, int mode);

// Infinite-chain dispersion -[Li_a(e^{ik}) + Li_a(e^{-ik})]; needs alpha > 1.
double dispersion_infinite(double alpha, double k);

// Quench frequencies; evaluates both the shifted-dispersion difference and the
// odd-distance cosine sum and requires them to agree to 1e-12.
Eigen::VectorXd delta_frequencies(const HoppingModel& model);

// <n_j(t)> from the staggered initial state.
double occupation(const DispersionTable& table, int site, double t);

// <c+_{j+delta}(t) c_j(t)> from the staggered initial state.
std::complex<double> staggered_correlation(const DispersionTable& table, int site,
                                           int delta, double t);

struct CorrelationMatrix {
  int sites = 0;
  double time = 0;
  Eigen::MatrixXcd entries;  // (i, j) = <c+_i c_j>
};

// Full one-body correlation matrix at time t; validated to be Hermitian with
// spectrum in [0, 1] and trace N/2.
CorrelationMatrix correlation_matrix(const DispersionTable& table, double t);

// I(i:j) = S({i}) + S({j}) - S({i,j}) in nats, via the one-body spectrum of
// the restricted correlation matrix.
double mutual_information(const CorrelationMatrix& matrix, int i, int j);

// |correlation| and mutual-information sweeps from source site 0.
SpacetimeGrid correlation_grid(const HoppingModel& model, const std::vector<int>& deltas,
                               const std::vector<double>& times);
SpacetimeGrid mutual_information_grid(const HoppingModel& model,
                                      const std::vector<int>& deltas,
                                      const std::vector<double>& times);

struct DosResult {
  std::vector<double> edges;
  std::vector<double> density;
  double out_of_range_mass = 0;  // excluded modes and samples outside the bins
};

// Group-velocity density over a uniform k grid of (at least) k_points modes,
// with v = eps'(k) by central differences.  For alpha <= 2 the two modes
// adjacent to the k = 0 singularity are excluded and reported as
// out-of-range mass.
DosResult density_of_states(double alpha, int k_points,
                            const std::vector<double>& v_edges);

// |eps(2 pi / N) - eps(0)| N / (2 pi): difference quotient at the band origin.
double group_velocity_quotient(int sites, double alpha);

// Log-log fit of the band-origin quotient against chain length.
numerics::PowerLawFit group_velocity_scaling(double alpha, const std::vector<int>& sizes);

// max_m |eps[m+1] - eps[m]| N / (2 pi): numerical sup of |eps'|.
double max_group_velocity(const DispersionTable& table);

struct FrontPoint {
  double t = 0;
  int delta = 0;
};

// Largest distance at or above threshold, per time column.
std::vector<FrontPoint> cone_front(const SpacetimeGrid& grid, double threshold);

// Slope of the front in the pre-wraparound window; the time cut N/(2 v) is
// applied once with the first-pass velocity estimate.
double cone_velocity(const SpacetimeGrid& grid, double threshold);

}  // namespace lrprop::hopping
