#pragma once

#include <Eigen/Dense>
#include <vector>

namespace lrprop::lattice {

enum class Boundary { Periodic, Open };

// Regular cubic lattice with the Manhattan graph distance (per-axis wrap when
// periodic).  Sites are indexed row-major over the extents.
struct LatticeSpec {
  int dimension = 1;
  std::vector<int> extent;
  Boundary boundary = Boundary::Periodic;

  int sites() const;
  int distance(int i, int j) const;
  int max_distance() const;
};

LatticeSpec make_lattice(int dimension, std::vector<int> extent, Boundary boundary);
LatticeSpec chain(int sites, Boundary boundary = Boundary::Periodic);

// Shortest ring distance for a site offset l on an N-site periodic chain.
int chain_distance(int offset, int sites);

// 1 / sup_i sum_{j != i} (1 + dist(i,j))^-alpha
double normalization_factor(const LatticeSpec& spec, double alpha);

// Smallest constant p such that
//   normalization * sum_k (1+d(i,k))^-a (1+d(k,j))^-a <= p (1+d(i,j))^-a
// holds on this finite lattice.
double reproducibility_constant(const LatticeSpec& spec, double alpha);

struct DecayParams {
  double alpha = 0;   // power-law exponent, >= 0
  double lambda = 0;  // coupling-strength constant of the boundedness condition
  double p = 0;       // reproducibility constant
};

struct InteractionMatrix {
  LatticeSpec lattice;
  Eigen::MatrixXd couplings;  // symmetric, zero diagonal, nonnegative
  double max_row_sum = 0;
};

// J_ij = strength (1 + dist(i,j))^-alpha; the regularized "+1" convention.
InteractionMatrix power_law_interactions(const LatticeSpec& spec, double alpha,
                                         double strength);

// J at ring offset l equal to d_l^-alpha / 2; the hopping-model convention
// (no "+1"), on a periodic chain.
InteractionMatrix hopping_interactions(int sites, double alpha);

// Validates symmetry/diagonal/finiteness and computes the row-sum bound.
InteractionMatrix make_interaction_matrix(LatticeSpec spec, Eigen::MatrixXd couplings);

}  // namespace lrprop::lattice
