#include "lrprop/bounds.hpp"

#include <cmath>
#include <numbers>

#include "lrprop/errors.hpp"
#include "lrprop/numerics.hpp"
#include "lrprop/parallel.hpp"

namespace lrprop::bounds {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

double hastings_koma(const HKParams& params, int dist, double t) {
  if (dist < 1) fail(ErrorKind::InvalidInput, "hastings_koma: distance must be >= 1");
  return params.prefactor * params.size_a * params.size_b *
         std::expm1(params.velocity * std::abs(t)) /
         std::pow(1.0 + dist, params.alpha);
}

double rescale_time(double t, double n_factor) {
  if (!(n_factor > 0)) fail(ErrorKind::InvalidInput, "rescale_time: factor must be positive");
  return t / n_factor;
}

double rescaled_bound(const lattice::DecayParams& decay, int size_a, int size_b,
                      int dist, double tau) {
  if (dist < 1) fail(ErrorKind::InvalidInput, "rescaled_bound: distance must be >= 1");
  if (!(decay.p > 0) || !(decay.lambda > 0))
    fail(ErrorKind::InvalidInput, "rescaled_bound: lambda and p must be positive");
  return 2.0 * size_a * size_b *
         std::expm1(2.0 * decay.p * decay.lambda * std::abs(tau)) /
         (decay.p * std::pow(1.0 + dist, decay.alpha));
}

double matexp_bound(const lattice::InteractionMatrix& interactions, double t, int i,
                    int j) {
  const int n = static_cast<int>(interactions.couplings.rows());
  if (i < 0 || i >= n || j < 0 || j >= n)
    fail(ErrorKind::InvalidInput, "matexp_bound: site index out of range");
  if (t == 0.0) return 0.0;
  const Eigen::MatrixXd exponential = numerics::expm_symmetric(
      interactions.couplings, 2.0 * interactions.max_row_sum * std::abs(t));
  return 2.0 * (exponential(i, j) - (i == j ? 1.0 : 0.0));
}

double matexp_bound_circulant(const std::vector<double>& first_row, double t,
                              int delta) {
  const numerics::CirculantSpectrum spectrum = numerics::circulant_eigenvalues(first_row);
  const int n = spectrum.size;
  const int offset = ((delta % n) + n) % n;
  if (t == 0.0) return 0.0;
  double row_sum = 0;
  for (double v : first_row) row_sum += v;
  numerics::KahanSum acc;
  for (int m = 0; m < n; ++m)
    acc.add(std::exp(2.0 * row_sum * std::abs(t) * spectrum.eigenvalues[m]) *
            std::cos(2.0 * kPi * ((static_cast<long long>(m) * offset) % n) / n));
  return 2.0 * (acc.value() / n - (offset == 0 ? 1.0 : 0.0));
}

SeriesBound series_oracle_bound(const lattice::InteractionMatrix& interactions,
                                double t, int i, int j, int n_max) {
  const int n = static_cast<int>(interactions.couplings.rows());
  if (i < 0 || i >= n || j < 0 || j >= n)
    fail(ErrorKind::InvalidInput, "series_oracle_bound: site index out of range");
  if (n_max < 1) fail(ErrorKind::InvalidInput, "series_oracle_bound: n_max must be >= 1");

  const double x = 2.0 * interactions.max_row_sum * std::abs(t);
  Eigen::VectorXd power = Eigen::VectorXd::Zero(n);  // J^k e_j
  power[j] = 1.0;
  double coefficient = 1.0;  // x^k / k!
  numerics::KahanSum value;
  for (int k = 1; k <= n_max; ++k) {
    power = (interactions.couplings * power).eval();
    coefficient *= x / k;
    value.add(coefficient * power[i]);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(interactions.couplings,
                                                        Eigen::EigenvaluesOnly);
  const double spectral_norm = solver.eigenvalues().cwiseAbs().maxCoeff();
  const double y = 2.0 * interactions.max_row_sum * spectral_norm * std::abs(t);
  double term = 1.0;
  for (int k = 1; k <= n_max; ++k) term *= y / k;
  double tail = 0;
  for (int k = n_max + 1; k < n_max + 100000; ++k) {
    term *= y / k;
    tail += term;
    if (term < 1e-300 || term < 1e-18 * tail) break;
  }
  return {2.0 * value.value(), tail};
}

double GongParams::v1() const { return 2.0 * coupling_sum * coupling_sum * std::numbers::e; }
double GongParams::c2() const { return 1.0 / (coupling_sum * std::pow(9.0, dimension)); }
double GongParams::v2() const {
  return 2.0 * coupling_sum * coupling_sum * std::pow(9.0, dimension);
}

GongParams make_gong_params(double alpha, int dimension, double coupling_sum) {
  if (!(alpha >= 1.0)) fail(ErrorKind::InvalidInput, "gong: requires alpha >= 1");
  if (dimension < 1) fail(ErrorKind::InvalidInput, "gong: dimension must be >= 1");
  if (!(coupling_sum > 0) || !std::isfinite(coupling_sum))
    fail(ErrorKind::InvalidInput, "gong: coupling sum must be positive and finite");
  return {alpha, dimension, coupling_sum};
}

GongParams gong_params_for_chain(double alpha, int sites) {
  if (sites < 2) fail(ErrorKind::InvalidInput, "gong: need at least two sites");
  numerics::KahanSum acc;
  for (int l = 1; l < sites; ++l)
    acc.add(std::pow(lattice::chain_distance(l, sites), -alpha));
  return make_gong_params(alpha, 1, acc.value());
}

std::pair<double, double> gong_terms(const GongParams& params, double mu, double delta,
                                     double t) {
  if (!(mu > 0.0) || !(mu < 1.0))
    fail(ErrorKind::InvalidInput, "gong_terms: mu must lie strictly inside (0, 1)");
  if (!(delta > 0)) fail(ErrorKind::InvalidInput, "gong_terms: delta must be positive");
  const double grow1 = std::expm1(params.v1() * std::abs(t));
  const double grow2 = std::expm1(params.v2() * std::abs(t));
  const double t1 = params.c1() * grow1 * std::exp(-mu * delta);
  const double t2 = params.c2() * grow2 / std::pow((1.0 - mu) * delta, params.alpha);
  return {t1, t2};
}

double gong_bound(const GongParams& params, double delta, double t) {
  if (!(delta > 0)) fail(ErrorKind::InvalidInput, "gong_bound: delta must be positive");
  if (t == 0.0) return 0.0;
  const auto objective = [&](double mu) {
    const auto [t1, t2] = gong_terms(params, mu, delta, t);
    return t1 + t2;
  };
  return numerics::minimize_scalar(objective, 1e-6, 1.0 - 1e-6, 1e-10).min_value;
}

namespace {

void check_axes(const std::vector<int>& deltas, const std::vector<double>& times) {
  if (deltas.empty()) fail(ErrorKind::InvalidInput, "bound_grid: empty distance list");
  if (times.empty()) fail(ErrorKind::InvalidInput, "bound_grid: empty time list");
  for (size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] < 1) fail(ErrorKind::InvalidInput, "bound_grid: distances must be >= 1");
    if (i > 0 && deltas[i] <= deltas[i - 1])
      fail(ErrorKind::InvalidInput, "bound_grid: distances must be strictly ascending");
  }
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0) fail(ErrorKind::InvalidInput, "bound_grid: times must be >= 0");
    if (i > 0 && times[i] <= times[i - 1])
      fail(ErrorKind::InvalidInput, "bound_grid: times must be strictly ascending");
  }
}

SpacetimeGrid make_grid(const std::vector<int>& deltas, const std::vector<double>& times) {
  SpacetimeGrid grid;
  grid.delta_values = deltas;
  grid.t_values = times;
  grid.values.assign(deltas.size() * times.size(), 0.0);
  grid.meta["operator_norms"] = "1";
  return grid;
}

std::vector<double> circulant_first_row(const lattice::InteractionMatrix& interactions) {
  const int n = static_cast<int>(interactions.couplings.rows());
  std::vector<double> row(n);
  for (int j = 0; j < n; ++j) row[j] = interactions.couplings(0, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (interactions.couplings(i, j) != row[(j - i + n) % n])
        fail(ErrorKind::InvalidInput,
             "bound_grid: circulant path requires a translation-invariant matrix");
  return row;
}

}  // namespace

SpacetimeGrid bound_grid(const BoundGridConfig& config, const std::vector<int>& deltas,
                         const std::vector<double>& times) {
  check_axes(deltas, times);
  SpacetimeGrid grid = make_grid(deltas, times);
  const int n_deltas = static_cast<int>(deltas.size());
  const int n_times = static_cast<int>(times.size());

  if (const auto* hk = std::get_if<HKGridConfig>(&config)) {
    grid.meta["kind"] = "hk";
    grid.meta["prefactor"] = format(hk->params.prefactor);
    grid.meta["velocity"] = format(hk->params.velocity);
    grid.meta["alpha"] = format(hk->params.alpha);
    grid.meta["size_a"] = std::to_string(hk->params.size_a);
    grid.meta["size_b"] = std::to_string(hk->params.size_b);
    parallel_for(n_deltas, [&](int d) {
      for (int ti = 0; ti < n_times; ++ti)
        grid.at(d, ti) = hastings_koma(hk->params, deltas[d], times[ti]);
    });
  } else if (const auto* rescaled = std::get_if<RescaledGridConfig>(&config)) {
    grid.meta["kind"] = "rescaled";
    grid.meta["alpha"] = format(rescaled->decay.alpha);
    grid.meta["lambda"] = format(rescaled->decay.lambda);
    grid.meta["p"] = format(rescaled->decay.p);
    grid.meta["size_a"] = std::to_string(rescaled->size_a);
    grid.meta["size_b"] = std::to_string(rescaled->size_b);
    grid.meta["time_axis"] = rescaled->time_is_physical ? "physical" : "rescaled";
    if (rescaled->time_is_physical) grid.meta["n_factor"] = format(rescaled->n_factor);
    parallel_for(n_deltas, [&](int d) {
      for (int ti = 0; ti < n_times; ++ti) {
        const double tau = rescaled->time_is_physical
                               ? rescale_time(times[ti], rescaled->n_factor)
                               : times[ti];
        grid.at(d, ti) = rescaled_bound(rescaled->decay, rescaled->size_a,
                                        rescaled->size_b, deltas[d], tau);
      }
    });
  } else if (const auto* matexp = std::get_if<MatexpGridConfig>(&config)) {
    const auto& interactions = matexp->interactions;
    const int n = static_cast<int>(interactions.couplings.rows());
    const int source = matexp->source_site;
    if (source < 0 || source >= n)
      fail(ErrorKind::InvalidInput, "bound_grid: source site out of range");
    if (deltas.back() >= n)
      fail(ErrorKind::InvalidInput, "bound_grid: distance exceeds the lattice");
    grid.meta["kind"] = "matexp";
    grid.meta["n"] = std::to_string(n);
    grid.meta["kappa"] = format(interactions.max_row_sum);
    grid.meta["path"] = matexp->use_circulant ? "circulant" : "dense";
    grid.meta["source_site"] = std::to_string(source);
    const double kappa = interactions.max_row_sum;
    if (matexp->use_circulant) {
      const std::vector<double> row = circulant_first_row(interactions);
      const numerics::CirculantSpectrum spectrum = numerics::circulant_eigenvalues(row);
      std::vector<double> cosines(n);
      parallel_for(n_times, [&](int ti) {
        const double t = times[ti];
        if (t == 0.0) return;  // exact zero column
        std::vector<double> boosted(n);
        for (int m = 0; m < n; ++m)
          boosted[m] = std::exp(2.0 * kappa * std::abs(t) * spectrum.eigenvalues[m]);
        for (int d = 0; d < n_deltas; ++d) {
          numerics::KahanSum acc;
          for (int m = 0; m < n; ++m)
            acc.add(boosted[m] *
                    std::cos(2.0 * kPi *
                             ((static_cast<long long>(m) * deltas[d]) % n) / n));
          grid.at(d, ti) = std::max(0.0, 2.0 * acc.value() / n);
        }
      });
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(interactions.couplings);
      if (solver.info() != Eigen::Success)
        fail(ErrorKind::Evaluation, "bound_grid: eigendecomposition failed");
      const Eigen::MatrixXd& vectors = solver.eigenvectors();
      const Eigen::VectorXd& eigenvalues = solver.eigenvalues();
      parallel_for(n_times, [&](int ti) {
        const double t = times[ti];
        if (t == 0.0) return;
        const Eigen::VectorXd boosted =
            (eigenvalues.array() * (2.0 * kappa * std::abs(t))).exp();
        const Eigen::RowVectorXd row =
            (vectors.row(source).array() * boosted.transpose().array()).matrix() *
            vectors.transpose();
        for (int d = 0; d < n_deltas; ++d)
          grid.at(d, ti) = std::max(0.0, 2.0 * row[(source + deltas[d]) % n]);
      });
    }
  } else if (const auto* gong = std::get_if<GongGridConfig>(&config)) {
    grid.meta["kind"] = "gong";
    grid.meta["alpha"] = format(gong->params.alpha);
    grid.meta["dimension"] = std::to_string(gong->params.dimension);
    grid.meta["coupling_sum"] = format(gong->params.coupling_sum);
    parallel_for(n_deltas, [&](int d) {
      for (int ti = 0; ti < n_times; ++ti)
        grid.at(d, ti) = gong_bound(gong->params, deltas[d], times[ti]);
    });
  }
  return grid;
}

}  // namespace lrprop::bounds
