#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "lrprop/grid.hpp"

namespace lrprop::channel {

// Ising chain sigma^z sigma^z channel: a bit is encoded by an optional spin
// flip at site 0 and detected by a |+><+| measurement at site N-1.
struct ChannelSpec {
  int sites = 0;              // >= 3
  Eigen::MatrixXd couplings;  // symmetric, zero diagonal
};

ChannelSpec power_law_channel(int sites, double alpha);  // J_ij = |i-j|^-alpha
ChannelSpec explicit_channel(Eigen::MatrixXd couplings);

// Detection probability |sin(2t sum_{r in S} J_{r,B}) sin(2t J_{A,B})|.
double signal_probability(const ChannelSpec& spec, double t);

// Probability of the |+> outcome for one branch of the protocol
// (flipped = false: raw initial state, true: sender flipped).
double branch_probability(const ChannelSpec& spec, double t, bool flipped);

// (pi/4) / sum_{r=1}^{N-2} r^-alpha; the window where the sine
// linearization behind the lower bound holds.
double validity_horizon(double alpha, int sites);

// (16 t^2 / pi^2 (alpha-1)) (N-1)^-alpha (1 - (N-1)^{1-alpha}); nullopt past
// the validity horizon.  Needs alpha > 1.
std::optional<double> lower_bound_probability(double alpha, int sites, double t);

// First-principles p_t: evolve the full 2^N state vector under the diagonal
// Hamiltonian for both branches and project.  Guarded to N <= 14.
double ed_oracle_probability(const ChannelSpec& spec, double t);

struct SignalCurve {
  std::vector<double> times;
  std::vector<double> exact;
  std::vector<std::optional<double>> lower;
  double horizon = 0;
};

SignalCurve signal_curve(int sites, double alpha, const std::vector<double>& times);

struct ContourPoint {
  int sites = 0;
  double delta = 0;
  double time = 0;
  bool pruned = false;  // contour time fell past the validity horizon
};

struct ContourFit {
  double exponent = 0;
  double prefactor = 0;
  double residual = 0;
  std::vector<ContourPoint> points;
  int pruned_count = 0;
};

// Solve lower_bound = epsilon for t at every chain length and fit
// log(delta) against log(t).
ContourFit contour_exponent(double alpha, double epsilon, const std::vector<int>& sizes);

}  // namespace lrprop::channel
