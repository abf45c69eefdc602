#pragma once

#include <variant>
#include <vector>

#include "lrprop/grid.hpp"
#include "lrprop/lattice.hpp"

namespace lrprop::bounds {

// Commutator bounds below are all stated for unit operator norms; grids
// record this convention in their metadata.

struct HKParams {
  double prefactor = 0;  // C
  double velocity = 0;   // v
  double alpha = 0;
  int size_a = 1;
  int size_b = 1;
};

// C |A||B| (e^{v|t|} - 1) / (1 + dist)^alpha
double hastings_koma(const HKParams& params, int dist, double t);

// tau = t / normalization_factor
double rescale_time(double t, double n_factor);

// 2 |A||B| (e^{2 p lambda |tau|} - 1) / (p (1 + dist)^alpha), in rescaled time.
double rescaled_bound(const lattice::DecayParams& decay, int size_a, int size_b,
                      int dist, double tau);

// 2 (exp(2 kappa J |t|)_{ij} - delta_ij) with kappa the max row sum of J.
double matexp_bound(const lattice::InteractionMatrix& interactions, double t,
                    int i, int j);

// Same value for a circulant J given its first row, via the Fourier spectrum.
double matexp_bound_circulant(const std::vector<double>& first_row, double t,
                              int delta);

struct SeriesBound {
  double value = 0;       // partial sum; a certified lower bound on the full series
  double tail_bound = 0;  // sum_{n > n_max} (2 kappa ||J|| |t|)^n / n!
};

// Truncated series form of the matrix-exponential bound.  Guarantees
//   value <= matexp_bound <= value + 2 * tail_bound.
SeriesBound series_oracle_bound(const lattice::InteractionMatrix& interactions,
                                double t, int i, int j, int n_max);

// Two-term bound with a tunable split parameter mu; constants are derived
// from the single-site coupling sum.
struct GongParams {
  double alpha = 1;       // >= 1
  int dimension = 1;
  double coupling_sum = 0;  // sum_k d(i,k)^-alpha, site independent

  double c1() const { return 1.0 / coupling_sum; }
  double v1() const;
  double c2() const;
  double v2() const;
};

GongParams make_gong_params(double alpha, int dimension, double coupling_sum);
GongParams gong_params_for_chain(double alpha, int sites);

// T1 = c1 (e^{v1 |t|} - 1) e^{-mu delta},  T2 = c2 (e^{v2 |t|} - 1) / ((1-mu) delta)^alpha
std::pair<double, double> gong_terms(const GongParams& params, double mu,
                                     double delta, double t);

// min over mu in (0,1) of T1 + T2.
double gong_bound(const GongParams& params, double delta, double t);

// Grid sweep configurations, one per bound family.
struct HKGridConfig {
  HKParams params;
};
struct RescaledGridConfig {
  lattice::DecayParams decay;
  int size_a = 1;
  int size_b = 1;
  double n_factor = 1;       // rescales physical times when time_is_physical
  bool time_is_physical = false;
};
struct MatexpGridConfig {
  lattice::InteractionMatrix interactions;
  bool use_circulant = false;
  int source_site = 0;
};
struct GongGridConfig {
  GongParams params;
};

using BoundGridConfig =
    std::variant<HKGridConfig, RescaledGridConfig, MatexpGridConfig, GongGridConfig>;

SpacetimeGrid bound_grid(const BoundGridConfig& config, const std::vector<int>& deltas,
                         const std::vector<double>& times);

}  // namespace lrprop::bounds
