#include "lrprop/lattice.hpp"

#include <cmath>
#include <numeric>

#include "lrprop/errors.hpp"
#include "lrprop/numerics.hpp"

namespace lrprop::lattice {

int LatticeSpec::sites() const {
  int n = 1;
  for (int e : extent) n *= e;
  return n;
}

int LatticeSpec::distance(int i, int j) const {
  const int n = sites();
  if (i < 0 || i >= n || j < 0 || j >= n)
    fail(ErrorKind::InvalidInput, "lattice: site index out of range");
  int d = 0;
  for (int axis = dimension - 1; axis >= 0; --axis) {
    const int len = extent[axis];
    const int xi = i % len;
    const int xj = j % len;
    i /= len;
    j /= len;
    int delta = std::abs(xi - xj);
    if (boundary == Boundary::Periodic) delta = std::min(delta, len - delta);
    d += delta;
  }
  return d;
}

int LatticeSpec::max_distance() const {
  int d = 0;
  for (int len : extent)
    d += boundary == Boundary::Periodic ? len / 2 : len - 1;
  return d;
}

LatticeSpec make_lattice(int dimension, std::vector<int> extent, Boundary boundary) {
  if (dimension < 1 || static_cast<int>(extent.size()) != dimension)
    fail(ErrorKind::InvalidInput, "lattice: extent list must match the dimension");
  for (int e : extent)
    if (e < 1) fail(ErrorKind::InvalidInput, "lattice: extents must be positive");
  LatticeSpec spec{dimension, std::move(extent), boundary};
  if (spec.sites() < 2) fail(ErrorKind::InvalidInput, "lattice: need at least two sites");
  return spec;
}

LatticeSpec chain(int sites, Boundary boundary) {
  return make_lattice(1, {sites}, boundary);
}

int chain_distance(int offset, int sites) {
  if (offset < 1 || offset > sites - 1)
    fail(ErrorKind::InvalidInput, "chain_distance: offset must be in 1..N-1");
  return offset <= sites / 2 ? offset : sites - offset;
}

namespace {

// (1 + d)^-alpha for every realizable distance.
std::vector<double> decay_table(const LatticeSpec& spec, double alpha) {
  std::vector<double> weights(spec.max_distance() + 1);
  for (size_t d = 0; d < weights.size(); ++d)
    weights[d] = std::pow(1.0 + static_cast<double>(d), -alpha);
  return weights;
}

double site_coupling_sum(const LatticeSpec& spec, const std::vector<double>& weights, int i) {
  const int n = spec.sites();
  numerics::KahanSum acc;
  for (int j = 0; j < n; ++j)
    if (j != i) acc.add(weights[spec.distance(i, j)]);
  return acc.value();
}

}  // namespace

double normalization_factor(const LatticeSpec& spec, double alpha) {
  const std::vector<double> weights = decay_table(spec, alpha);
  // Periodic cubic lattices are translation invariant; one row realizes the sup.
  if (spec.boundary == Boundary::Periodic) return 1.0 / site_coupling_sum(spec, weights, 0);
  double sup = 0;
  for (int i = 0; i < spec.sites(); ++i)
    sup = std::max(sup, site_coupling_sum(spec, weights, i));
  return 1.0 / sup;
}

double reproducibility_constant(const LatticeSpec& spec, double alpha) {
  const int n = spec.sites();
  const std::vector<double> weights = decay_table(spec, alpha);
  const double normalization = normalization_factor(spec, alpha);
  const int i_end = spec.boundary == Boundary::Periodic ? 1 : n;
  double p = 0;
  for (int i = 0; i < i_end; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      numerics::KahanSum acc;
      for (int k = 0; k < n; ++k)
        acc.add(weights[spec.distance(i, k)] * weights[spec.distance(k, j)]);
      p = std::max(p, normalization * acc.value() / weights[spec.distance(i, j)]);
    }
  }
  return p;
}

InteractionMatrix make_interaction_matrix(LatticeSpec spec, Eigen::MatrixXd couplings) {
  const int n = spec.sites();
  if (couplings.rows() != n || couplings.cols() != n)
    fail(ErrorKind::InvalidInput, "interaction matrix: size must match the lattice");
  if (!couplings.allFinite())
    fail(ErrorKind::InvalidInput, "interaction matrix: non-finite entry");
  for (int i = 0; i < n; ++i) {
    if (couplings(i, i) != 0.0)
      fail(ErrorKind::InvalidInput, "interaction matrix: diagonal must be zero");
    for (int j = i + 1; j < n; ++j) {
      if (couplings(i, j) != couplings(j, i))
        fail(ErrorKind::InvalidInput, "interaction matrix: must be symmetric");
      if (couplings(i, j) < 0.0)
        fail(ErrorKind::InvalidInput, "interaction matrix: entries must be nonnegative");
    }
  }
  InteractionMatrix matrix{std::move(spec), std::move(couplings), 0.0};
  for (int i = 0; i < n; ++i)
    matrix.max_row_sum = std::max(matrix.max_row_sum, matrix.couplings.row(i).sum());
  return matrix;
}

InteractionMatrix power_law_interactions(const LatticeSpec& spec, double alpha,
                                         double strength) {
  if (!(strength > 0)) fail(ErrorKind::InvalidInput, "power_law_interactions: strength must be positive");
  const int n = spec.sites();
  const std::vector<double> weights = decay_table(spec, alpha);
  Eigen::MatrixXd couplings = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      couplings(i, j) = couplings(j, i) = strength * weights[spec.distance(i, j)];
  return make_interaction_matrix(spec, std::move(couplings));
}

InteractionMatrix hopping_interactions(int sites, double alpha) {
  if (sites < 2) fail(ErrorKind::InvalidInput, "hopping_interactions: need at least two sites");
  const LatticeSpec spec = chain(sites, Boundary::Periodic);
  Eigen::MatrixXd couplings = Eigen::MatrixXd::Zero(sites, sites);
  for (int i = 0; i < sites; ++i)
    for (int j = i + 1; j < sites; ++j)
      couplings(i, j) = couplings(j, i) =
          0.5 * std::pow(chain_distance(j - i, sites), -alpha);
  return make_interaction_matrix(spec, std::move(couplings));
}

}  // namespace lrprop::lattice
