#include "lrprop/hopping.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lrprop/errors.hpp"
#include "lrprop/lattice.hpp"
#include "lrprop/parallel.hpp"

namespace lrprop::hopping {

namespace {

constexpr double kPi = std::numbers::pi;

// cos(2 pi r / n), mirrored so that table[n - r] == table[r] exactly.
std::vector<double> cosine_table(int n) {
  std::vector<double> table(n);
  for (int r = 0; r <= n / 2; ++r) table[r] = std::cos(2.0 * kPi * r / n);
  for (int r = n / 2 + 1; r < n; ++r) table[r] = table[n - r];
  return table;
}

std::vector<double> hopping_weights(int n, double alpha) {
  std::vector<double> weights(n);  // weights[l] = d_l^-alpha, weights[0] unused
  for (int l = 1; l < n; ++l)
    weights[l] = std::pow(lattice::chain_distance(l, n), -alpha);
  return weights;
}

int mode_product(int m, int l, int n) {
  return static_cast<int>((static_cast<long long>(m) * l) % n);
}

}  // namespace

HoppingModel make_model(int sites, double alpha) {
  if (sites < 4 || sites % 2 != 0)
    fail(ErrorKind::InvalidInput, "hopping: chain length must be even and >= 4");
  if (!(alpha >= 0) || !std::isfinite(alpha))
    fail(ErrorKind::InvalidInput, "hopping: alpha must be a finite nonnegative real");
  return {sites, alpha};
}

DispersionTable make_dispersion_table(const HoppingModel& model) {
  const int n = model.sites;
  const std::vector<double> cosines = cosine_table(n);
  const std::vector<double> weights = hopping_weights(n, model.alpha);
  DispersionTable table;
  table.model = model;
  table.eps.resize(n);
  for (int m = 0; m < n; ++m) {
    numerics::KahanSum acc;
    for (int l = 1; l < n; ++l) acc.add(cosines[mode_product(m, l, n)] * weights[l]);
    table.eps[m] = -acc.value();
  }
  table.delta_freq.resize(n);
  for (int m = 0; m < n; ++m)
    table.delta_freq[m] = table.eps[(m + n / 2) % n] - table.eps[m];
  return table;
}

double dispersion_finite(const HoppingModel& model, int mode) {
  const int n = model.sites;
  if (mode < 0 || mode >= n)
    fail(ErrorKind::InvalidInput, "dispersion_finite: mode index out of range");
  const std::vector<double> weights = hopping_weights(n, model.alpha);
  numerics::KahanSum acc;
  for (int l = 1; l < n; ++l)
    acc.add(std::cos(2.0 * kPi * mode_product(mode, l, n) / n) * weights[l]);
  return -acc.value();
}

double dispersion_infinite(double alpha, double k) {
  if (!(alpha > 1))
    fail(ErrorKind::UnsupportedRegime,
         "dispersion_infinite: needs alpha > 1; use the finite-chain dispersion");
  return -2.0 * numerics::polylog_circle(alpha, k).real();
}

Eigen::VectorXd delta_frequencies(const HoppingModel& model) {
  const DispersionTable table = make_dispersion_table(model);
  const int n = model.sites;
  const std::vector<double> cosines = cosine_table(n);
  const std::vector<double> weights = hopping_weights(n, model.alpha);
  for (int m = 0; m < n; ++m) {
    numerics::KahanSum acc;  // 2 sum_{l=1}^{N/2} cos(k (2l-1)) / d_{2l-1}^alpha
    for (int l = 1; l <= n / 2; ++l)
      acc.add(2.0 * cosines[mode_product(m, 2 * l - 1, n)] * weights[2 * l - 1]);
    if (std::abs(acc.value() - table.delta_freq[m]) > 1e-12)
      fail(ErrorKind::InternalConsistency,
           "delta_frequencies: the two closed forms disagree beyond 1e-12");
  }
  return table.delta_freq;
}

double occupation(const DispersionTable& table, int site, double t) {
  const int n = table.model.sites;
  if (site < 0 || site >= n)
    fail(ErrorKind::InvalidInput, "occupation: site index out of range");
  numerics::KahanSum acc;
  for (int m = 0; m < n; ++m) acc.add(std::cos(t * table.delta_freq[m]));
  const double parity = site % 2 == 0 ? 1.0 : -1.0;
  return 0.5 - parity * acc.value() / (2.0 * n);
}

std::complex<double> staggered_correlation(const DispersionTable& table, int site,
                                           int delta, double t) {
  const int n = table.model.sites;
  if (site < 0 || site >= n)
    fail(ErrorKind::InvalidInput, "staggered_correlation: site index out of range");
  const int offset = ((delta % n) + n) % n;
  const double parity = (site + offset) % 2 == 0 ? 1.0 : -1.0;
  if (t == 0.0) {  // Fourier orthogonality: the k sum is exactly N delta_{d,0}
    if (offset != 0) return 0.0;
    return 0.5 - parity * 0.5;
  }
  numerics::KahanSum real_part;
  numerics::KahanSum imag_part;
  for (int m = 0; m < n; ++m) {
    const double phase = t * table.delta_freq[m] - 2.0 * kPi * mode_product(m, offset, n) / n;
    real_part.add(std::cos(phase));
    imag_part.add(std::sin(phase));
  }
  const std::complex<double> sum(real_part.value(), imag_part.value());
  return std::complex<double>(offset == 0 ? 0.5 : 0.0, 0.0) -
         parity / (2.0 * n) * sum;
}

namespace {

// F[d] = (1/2N) sum_m e^{i t delta_freq[m]} e^{-i k_m d}
std::vector<std::complex<double>> correlation_kernel(const DispersionTable& table,
                                                     double t) {
  const int n = table.model.sites;
  if (t == 0.0) {  // Fourier orthogonality: exactly (1/2) delta_{d,0}
    std::vector<std::complex<double>> kernel(n, 0.0);
    kernel[0] = 0.5;
    return kernel;
  }
  std::vector<double> cos_t(n), sin_t(n);
  for (int m = 0; m < n; ++m) {
    cos_t[m] = std::cos(t * table.delta_freq[m]);
    sin_t[m] = std::sin(t * table.delta_freq[m]);
  }
  const std::vector<double> cosines = cosine_table(n);
  std::vector<std::complex<double>> kernel(n);
  for (int d = 0; d < n; ++d) {
    numerics::KahanSum real_part;
    numerics::KahanSum imag_part;
    for (int m = 0; m < n; ++m) {
      const int r = mode_product(m, d, n);
      const double c = cosines[r];
      // sin(2 pi r / n) with the same quadrant bookkeeping as the cosine table
      const double s = r <= n / 2 ? std::sin(2.0 * kPi * r / n) : -std::sin(2.0 * kPi * (n - r) / n);
      real_part.add(cos_t[m] * c + sin_t[m] * s);
      imag_part.add(sin_t[m] * c - cos_t[m] * s);
    }
    kernel[d] = std::complex<double>(real_part.value(), imag_part.value()) /
                (2.0 * n);
  }
  return kernel;
}

}  // namespace

CorrelationMatrix correlation_matrix(const DispersionTable& table, double t) {
  const int n = table.model.sites;
  const auto kernel = correlation_kernel(table, t);
  CorrelationMatrix matrix;
  matrix.sites = n;
  matrix.time = t;
  matrix.entries.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const double parity = i % 2 == 0 ? 1.0 : -1.0;
    for (int j = 0; j < n; ++j) {
      const std::complex<double> value =
          std::complex<double>(i == j ? 0.5 : 0.0, 0.0) - parity * kernel[(i - j + n) % n];
      matrix.entries(i, j) = value;
    }
  }

  const double hermiticity =
      (matrix.entries - matrix.entries.adjoint().eval()).cwiseAbs().maxCoeff();
  if (hermiticity > 1e-12)
    fail(ErrorKind::InternalConsistency, "correlation_matrix: not Hermitian to 1e-12");
  const std::complex<double> trace = matrix.entries.trace();
  if (std::abs(trace - std::complex<double>(n / 2.0, 0.0)) > 1e-10)
    fail(ErrorKind::InternalConsistency, "correlation_matrix: trace is not N/2");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix.entries,
                                                         Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  const double hi = solver.eigenvalues().maxCoeff();
  if (lo < -1e-10 || hi > 1.0 + 1e-10)
    fail(ErrorKind::InternalConsistency,
         "correlation_matrix: one-body spectrum escapes [0, 1]");
  return matrix;
}

namespace {

double binary_entropy(double occupation_number) {
  const double nu = std::clamp(occupation_number, 0.0, 1.0);
  double s = 0;
  if (nu > 0) s -= nu * std::log(nu);
  if (nu < 1) s -= (1.0 - nu) * std::log(1.0 - nu);
  return s;
}

double checked_level(double nu) {
  if (nu < -1e-10 || nu > 1.0 + 1e-10)
    fail(ErrorKind::InvalidInput,
         "mutual_information: correlation eigenvalue escapes [0, 1]");
  return nu;
}

}  // namespace

double mutual_information(const CorrelationMatrix& matrix, int i, int j) {
  const int n = matrix.sites;
  if (i < 0 || i >= n || j < 0 || j >= n)
    fail(ErrorKind::InvalidInput, "mutual_information: site index out of range");
  if (i == j) fail(ErrorKind::InvalidInput, "mutual_information: sites must differ");
  const double a = checked_level(matrix.entries(i, i).real());
  const double d = checked_level(matrix.entries(j, j).real());
  const std::complex<double> b = matrix.entries(i, j);
  const double mid = 0.5 * (a + d);
  const double radius = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  const double nu_plus = checked_level(mid + radius);
  const double nu_minus = checked_level(mid - radius);
  return binary_entropy(a) + binary_entropy(d) - binary_entropy(nu_plus) -
         binary_entropy(nu_minus);
}

namespace {

void check_grid_axes(const HoppingModel& model, const std::vector<int>& deltas,
                     const std::vector<double>& times) {
  if (deltas.empty() || times.empty())
    fail(ErrorKind::InvalidInput, "hopping grid: empty axis");
  for (size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] < 1 || deltas[i] >= model.sites)
      fail(ErrorKind::InvalidInput, "hopping grid: distance out of range");
    if (i > 0 && deltas[i] <= deltas[i - 1])
      fail(ErrorKind::InvalidInput, "hopping grid: distances must be ascending");
  }
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0) fail(ErrorKind::InvalidInput, "hopping grid: negative time");
    if (i > 0 && times[i] <= times[i - 1])
      fail(ErrorKind::InvalidInput, "hopping grid: times must be ascending");
  }
}

void stamp_meta(SpacetimeGrid& grid, const HoppingModel& model) {
  char alpha[32];
  std::snprintf(alpha, sizeof(alpha), "%.17g", model.alpha);
  grid.meta["n"] = std::to_string(model.sites);
  grid.meta["alpha"] = alpha;
  grid.meta["initial_state"] = "staggered, odd sites occupied (0-based)";
  grid.meta["k_grid"] = "k = 2*pi*m/N, m = 0..N-1";
  grid.meta["source_site"] = "0";
}

}  // namespace

SpacetimeGrid correlation_grid(const HoppingModel& model, const std::vector<int>& deltas,
                               const std::vector<double>& times) {
  check_grid_axes(model, deltas, times);
  const DispersionTable table = make_dispersion_table(model);
  SpacetimeGrid grid;
  grid.delta_values = deltas;
  grid.t_values = times;
  grid.values.assign(deltas.size() * times.size(), 0.0);
  stamp_meta(grid, model);
  grid.meta["quantity"] = "abs_staggered_correlation";
  parallel_for(static_cast<int>(times.size()), [&](int ti) {
    const auto kernel = correlation_kernel(table, times[ti]);
    for (size_t d = 0; d < deltas.size(); ++d) {
      const int offset = deltas[d] % model.sites;
      const std::complex<double> value =
          std::complex<double>(offset == 0 ? 0.5 : 0.0, 0.0) -
          (offset % 2 == 0 ? 1.0 : -1.0) * kernel[offset];
      grid.at(d, ti) = std::abs(value);
    }
  });
  return grid;
}

SpacetimeGrid mutual_information_grid(const HoppingModel& model,
                                      const std::vector<int>& deltas,
                                      const std::vector<double>& times) {
  check_grid_axes(model, deltas, times);
  const DispersionTable table = make_dispersion_table(model);
  SpacetimeGrid grid;
  grid.delta_values = deltas;
  grid.t_values = times;
  grid.values.assign(deltas.size() * times.size(), 0.0);
  stamp_meta(grid, model);
  grid.meta["quantity"] = "two_site_mutual_information";
  grid.meta["entropy_unit"] = "nats";
  parallel_for(static_cast<int>(times.size()), [&](int ti) {
    const CorrelationMatrix matrix = correlation_matrix(table, times[ti]);
    for (size_t d = 0; d < deltas.size(); ++d)
      grid.at(d, ti) = mutual_information(matrix, 0, deltas[d] % model.sites);
  });
  return grid;
}

DosResult density_of_states(double alpha, int k_points,
                            const std::vector<double>& v_edges) {
  if (k_points < 10000)
    fail(ErrorKind::InvalidInput, "density_of_states: need at least 1e4 k points");
  if (!(alpha >= 0)) fail(ErrorKind::InvalidInput, "density_of_states: alpha must be >= 0");
  const int n = k_points + (k_points % 2);
  Eigen::VectorXd eps(n);
  if (alpha > 1.0) {
    const numerics::PolylogSeries series(alpha);
    for (int m = 0; m < n; ++m) eps[m] = -2.0 * series(2.0 * kPi * m / n).real();
  } else {
    std::vector<double> row(n, 0.0);
    for (int l = 1; l < n; ++l)
      row[l] = std::pow(lattice::chain_distance(l, n), -alpha);
    const numerics::CirculantSpectrum spectrum = numerics::circulant_eigenvalues_fft(row);
    eps = -spectrum.eigenvalues;
  }

  const bool exclude_origin_modes = alpha <= 2.0;
  const double spacing = 2.0 * kPi / n;
  std::vector<double> samples;
  samples.reserve(n);
  int excluded = 0;
  for (int m = 0; m < n; ++m) {
    if (exclude_origin_modes && (m == 1 || m == n - 1)) {
      ++excluded;
      continue;
    }
    samples.push_back((eps[(m + 1) % n] - eps[(m - 1 + n) % n]) / (2.0 * spacing));
  }

  const numerics::Histogram histogram = numerics::density_from_samples(samples, v_edges);
  DosResult result;
  result.edges = histogram.edges;
  result.density.resize(histogram.density.size());
  const double kept = static_cast<double>(samples.size());
  for (size_t i = 0; i < histogram.density.size(); ++i)
    result.density[i] = histogram.density[i] * kept / n;
  result.out_of_range_mass =
      (histogram.out_of_range_mass * kept + excluded) / n;
  return result;
}

double group_velocity_quotient(int sites, double alpha) {
  if (sites < 2) fail(ErrorKind::InvalidInput, "group_velocity_quotient: need N >= 2");
  const std::vector<double> weights = hopping_weights(sites, alpha);
  numerics::KahanSum acc;  // |eps(2 pi/N) - eps(0)| = sum_l (1 - cos(2 pi l/N))/d_l^a
  for (int l = 1; l < sites; ++l) {
    const double half_angle = std::sin(kPi * l / sites);
    acc.add(2.0 * half_angle * half_angle * weights[l]);
  }
  return acc.value() * sites / (2.0 * kPi);
}

numerics::PowerLawFit group_velocity_scaling(double alpha, const std::vector<int>& sizes) {
  if (sizes.size() < 4)
    fail(ErrorKind::InvalidInput, "group_velocity_scaling: need at least four sizes");
  std::vector<std::pair<double, double>> points;
  points.reserve(sizes.size());
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] % 2 != 0 || sizes[i] < 4)
      fail(ErrorKind::InvalidInput, "group_velocity_scaling: sizes must be even and >= 4");
    if (i > 0 && sizes[i] <= sizes[i - 1])
      fail(ErrorKind::InvalidInput, "group_velocity_scaling: sizes must be ascending");
    points.emplace_back(sizes[i], group_velocity_quotient(sizes[i], alpha));
  }
  return numerics::fit_power_law(points);
}

double max_group_velocity(const DispersionTable& table) {
  const int n = table.model.sites;
  double best = 0;
  for (int m = 0; m < n; ++m)
    best = std::max(best, std::abs(table.eps[(m + 1) % n] - table.eps[m]));
  return best * n / (2.0 * kPi);
}

std::vector<FrontPoint> cone_front(const SpacetimeGrid& grid, double threshold) {
  if (!(threshold > 0))
    fail(ErrorKind::InvalidInput, "cone_front: threshold must be positive");
  std::vector<FrontPoint> front;
  for (size_t ti = 0; ti < grid.t_values.size(); ++ti) {
    for (size_t d = grid.delta_values.size(); d-- > 0;) {
      if (grid.at(d, ti) >= threshold) {
        front.push_back({grid.t_values[ti], grid.delta_values[d]});
        break;
      }
    }
  }
  if (front.empty())
    fail(ErrorKind::NoFront, "cone_front: no grid value reaches the threshold");
  return front;
}

double cone_velocity(const SpacetimeGrid& grid, double threshold) {
  const std::vector<FrontPoint> front = cone_front(grid, threshold);
  const int delta_max = grid.delta_values.back();
  std::vector<double> ts, ds;
  for (const FrontPoint& point : front) {
    if (point.t <= 0) continue;
    if (point.delta > delta_max - 2) continue;  // wraparound guard
    ts.push_back(point.t);
    ds.push_back(point.delta);
  }
  if (ts.size() < 2)
    fail(ErrorKind::NoFront, "cone_velocity: front saturates the lattice immediately");
  numerics::LineFit fit = numerics::fit_line(ts, ds);
  if (fit.slope > 0) {
    // One refinement: drop times past the position where the front would
    // collide with its periodic image.
    const double t_limit = (delta_max + 1) / fit.slope;
    std::vector<double> ts2, ds2;
    for (size_t i = 0; i < ts.size(); ++i) {
      if (ts[i] < t_limit) {
        ts2.push_back(ts[i]);
        ds2.push_back(ds[i]);
      }
    }
    if (ts2.size() >= 2) fit = numerics::fit_line(ts2, ds2);
  }
  return fit.slope;
}

}  // namespace lrprop::hopping
