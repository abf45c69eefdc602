#include "lrprop/numerics.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lrprop/errors.hpp"

namespace lrprop::numerics {

namespace {

constexpr double kPi = std::numbers::pi;

// d_k coefficients of Borwein's alternating-series acceleration for eta(s).
const std::vector<double>& borwein_coefficients() {
  static const std::vector<double> coeffs = [] {
    const int n = 48;
    std::vector<double> d(n + 1);
    double term = 1.0 / n;  // (n-1)! / (n! 0!)
    double sum = term;
    d[0] = n * sum;
    for (int i = 1; i <= n; ++i) {
      term *= 4.0 * (n + i - 1) * (n - i + 1) / (2.0 * i * (2.0 * i - 1));
      sum += term;
      d[i] = n * sum;
    }
    return d;
  }();
  return coeffs;
}

double zeta_from_eta(double s) {
  const auto& d = borwein_coefficients();
  const int n = static_cast<int>(d.size()) - 1;
  KahanSum acc;
  double sign = 1;
  for (int k = 0; k < n; ++k) {
    acc.add(sign * (d[k] - d[n]) / std::pow(k + 1.0, s));
    sign = -sign;
  }
  return -acc.value() / (d[n] * (1.0 - std::pow(2.0, 1.0 - s)));
}

}  // namespace

double riemann_zeta(double s) {
  if (!std::isfinite(s)) fail(ErrorKind::InvalidInput, "zeta: non-finite argument");
  if (std::abs(s - 1.0) < 1e-9) fail(ErrorKind::Divergence, "zeta: pole at s = 1");
  if (s >= 0) return zeta_from_eta(s);
  // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
  return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * std::sin(kPi * s / 2.0) *
         std::tgamma(1.0 - s) * zeta_from_eta(1.0 - s);
}

Eigen::MatrixXd expm_symmetric(const Eigen::MatrixXd& m, double s) {
  const auto n = m.rows();
  if (n < 1 || m.cols() != n)
    fail(ErrorKind::InvalidInput, "expm_symmetric: matrix must be square and non-empty");
  if (!std::isfinite(s) || !m.allFinite())
    fail(ErrorKind::InvalidInput, "expm_symmetric: non-finite input");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (m(i, j) != m(j, i))
        fail(ErrorKind::InvalidInput, "expm_symmetric: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::Evaluation, "expm_symmetric: eigendecomposition failed");
  Eigen::VectorXd scaled = (solver.eigenvalues().array() * s).exp();
  Eigen::MatrixXd result =
      solver.eigenvectors() * scaled.asDiagonal() * solver.eigenvectors().transpose();
  return 0.5 * (result + result.transpose()).eval();
}

namespace {

void check_circulant_row(const std::vector<double>& row) {
  const int n = static_cast<int>(row.size());
  if (n < 1) fail(ErrorKind::InvalidInput, "circulant: empty first row");
  for (double v : row)
    if (!std::isfinite(v)) fail(ErrorKind::InvalidInput, "circulant: non-finite entry");
  if (row[0] != 0.0)
    fail(ErrorKind::InvalidInput, "circulant: first entry (self-coupling) must be zero");
  for (int l = 1; l < n; ++l)
    if (row[l] != row[n - l])
      fail(ErrorKind::InvalidInput, "circulant: first row is not reflection-symmetric");
}

// cos(2 pi r / n) for r = 0..n-1, mirrored so that table[n-r] == table[r] exactly.
std::vector<double> cosine_table(int n) {
  std::vector<double> table(n);
  for (int r = 0; r <= n / 2; ++r) table[r] = std::cos(2.0 * kPi * r / n);
  for (int r = n / 2 + 1; r < n; ++r) table[r] = table[n - r];
  return table;
}

}  // namespace

CirculantSpectrum circulant_eigenvalues(const std::vector<double>& first_row) {
  check_circulant_row(first_row);
  const int n = static_cast<int>(first_row.size());
  CirculantSpectrum spectrum;
  spectrum.size = n;
  spectrum.eigenvalues.resize(n);
  if (n == 1) {
    spectrum.eigenvalues[0] = 0.0;
    return spectrum;
  }
  const std::vector<double> cosines = cosine_table(n);
  const int half = (n - 1) / 2;
  for (int m = 0; m < n; ++m) {
    KahanSum acc;
    for (int l = 1; l <= half; ++l)
      acc.add(2.0 * first_row[l] * cosines[static_cast<int>((static_cast<long long>(m) * l) % n)]);
    if (n % 2 == 0)  // cos(k N/2) = (-1)^m on the mode grid
      acc.add(first_row[n / 2] * (m % 2 == 0 ? 1.0 : -1.0));
    spectrum.eigenvalues[m] = acc.value();
  }
  return spectrum;
}

CirculantSpectrum circulant_eigenvalues_fft(const std::vector<double>& first_row) {
  check_circulant_row(first_row);
  const int n = static_cast<int>(first_row.size());
  CirculantSpectrum spectrum;
  spectrum.size = n;
  spectrum.eigenvalues.resize(n);
  if (n == 1) {
    spectrum.eigenvalues[0] = 0.0;
    return spectrum;
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> freq;
  fft.fwd(freq, first_row);
  double scale = 0;
  for (double v : first_row) scale += std::abs(v);
  for (int m = 0; m < n; ++m) {
    if (std::abs(freq[m].imag()) > 1e-9 * (1.0 + scale))
      fail(ErrorKind::InternalConsistency,
           "circulant: spectrum of a symmetric row has a non-real component");
    spectrum.eigenvalues[m] = freq[m].real();
  }
  return spectrum;
}

// ---------------------------------------------------------------------------
// Polylogarithm on the unit circle.
//
// For moderate orders the series around z = 1,
//   Li_a(e^mu) = Gamma(1-a) (-mu)^{a-1} + sum_{j>=0} zeta(a-j) mu^j / j!
// with mu = ik converges geometrically for |k| <= pi (ratio k/2pi); the
// k in (pi, 2pi) half is reached through conjugation.  Positive integer
// orders replace the singular j = a-1 term by the standard limit involving
// harmonic numbers and log(-mu).
// ---------------------------------------------------------------------------

namespace {
constexpr double kPolylogDirectSumOrder = 28.0;
constexpr int kPolylogMaxTerms = 130;
}  // namespace

PolylogSeries::PolylogSeries(double alpha) : alpha_(alpha) {
  if (!std::isfinite(alpha)) fail(ErrorKind::InvalidInput, "polylog: non-finite order");
  if (alpha >= kPolylogDirectSumOrder) {
    direct_sum_ = true;
    return;
  }
  const double nearest = std::round(alpha);
  integer_order_ = nearest >= 1.0 && std::abs(alpha - nearest) < 1e-9;
  if (integer_order_) {
    order_ = static_cast<int>(nearest);
    alpha_ = nearest;
    for (int j = 1; j < order_; ++j) harmonic_ += 1.0 / j;
    if (order_ == 1) return;  // closed form -log(1 - e^{ik})
  }
  zeta_over_factorial_.resize(kPolylogMaxTerms + 1);
  double inv_factorial = 1.0;
  for (int j = 0; j <= kPolylogMaxTerms; ++j) {
    if (j > 0) inv_factorial /= j;
    if (integer_order_ && j == order_ - 1) {
      zeta_over_factorial_[j] = 0.0;  // replaced by the harmonic/log term
      continue;
    }
    zeta_over_factorial_[j] = riemann_zeta(alpha_ - j) * inv_factorial;
  }
}

std::complex<double> PolylogSeries::eval_half_circle(double k) const {
  using namespace std::complex_literals;
  if (direct_sum_) {
    const std::complex<double> z = std::polar(1.0, k);
    std::complex<double> power = 1.0;
    std::complex<double> sum = 0.0;
    for (int n = 1; n < 1000; ++n) {
      power *= z;
      const double weight = std::pow(n, -alpha_);
      sum += power * weight;
      if (weight * n < (alpha_ - 1.0) * 1e-16) break;
    }
    return sum;
  }
  if (integer_order_ && order_ == 1) return -std::log(1.0 - std::polar(1.0, k));

  const std::complex<double> mu(0.0, k);
  std::complex<double> mu_power = 1.0;
  std::complex<double> sum = 0.0;
  const int min_terms = integer_order_ ? order_ + 1 : 4;
  double previous = std::numeric_limits<double>::max();
  bool converged = false;
  for (int j = 0; j <= kPolylogMaxTerms; ++j) {
    if (j > 0) mu_power *= mu;
    if (integer_order_ && j == order_ - 1) continue;
    const std::complex<double> term = zeta_over_factorial_[j] * mu_power;
    sum += term;
    const double magnitude = std::abs(term);
    if (j >= min_terms && magnitude < 1e-17 * (1.0 + std::abs(sum)) &&
        previous < 1e-17 * (1.0 + std::abs(sum))) {
      converged = true;
      break;
    }
    previous = magnitude;
  }
  if (!converged && std::abs(mu_power) * std::abs(zeta_over_factorial_.back()) > 1e-12)
    fail(ErrorKind::InternalConsistency, "polylog: series did not converge");

  std::complex<double> leading;
  if (integer_order_) {
    // mu^{n-1}/(n-1)! (H_{n-1} - log(-mu))
    std::complex<double> mu_n1 = 1.0;
    double factorial = 1.0;
    for (int j = 1; j <= order_ - 1; ++j) {
      mu_n1 *= mu;
      factorial *= j;
    }
    const std::complex<double> log_neg_mu(std::log(k), -kPi / 2.0);
    leading = mu_n1 / factorial * (harmonic_ - log_neg_mu);
  } else {
    // Gamma(1-a) (-mu)^{a-1} with -mu = k e^{-i pi/2}
    leading = std::tgamma(1.0 - alpha_) *
              std::polar(std::pow(k, alpha_ - 1.0), -kPi * (alpha_ - 1.0) / 2.0);
  }
  return leading + sum;
}

std::complex<double> PolylogSeries::operator()(double k) const {
  double wrapped = std::fmod(k, 2.0 * kPi);
  if (wrapped < 0) wrapped += 2.0 * kPi;
  if (wrapped == 0.0) {
    if (alpha_ > 1.0) {
      if (direct_sum_) {
        double sum = 0;
        for (int n = 1; n < 1000; ++n) {
          const double weight = std::pow(n, -alpha_);
          sum += weight;
          if (weight * n < (alpha_ - 1.0) * 1e-16) break;
        }
        return sum;
      }
      return riemann_zeta(alpha_);
    }
    fail(ErrorKind::Divergence, "polylog: series diverges at k = 0 for order <= 1");
  }
  const std::complex<double> value = wrapped > kPi
                                         ? std::conj(eval_half_circle(2.0 * kPi - wrapped))
                                         : eval_half_circle(wrapped);
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    fail(ErrorKind::Divergence, "polylog: value overflowed (k too close to 0 for this order)");
  return value;
}

std::complex<double> polylog_circle(double alpha, double k) {
  return PolylogSeries(alpha)(k);
}

MinimizeResult minimize_scalar(const std::function<double(double)>& f, double lo,
                               double hi, double tol) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    fail(ErrorKind::InvalidInput, "minimize_scalar: invalid interval");
  if (!(tol > 0)) fail(ErrorKind::InvalidInput, "minimize_scalar: tolerance must be positive");
  auto eval = [&f](double x) {
    const double v = f(x);
    if (!std::isfinite(v))
      fail(ErrorKind::Evaluation, "minimize_scalar: objective returned a non-finite value");
    return v;
  };

  constexpr int kScanPoints = 64;
  double best_x = lo;
  double best_v = eval(lo);
  int best_index = 0;
  std::vector<double> xs(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) {
    xs[i] = lo + (hi - lo) * i / (kScanPoints - 1);
    const double v = i == 0 ? best_v : eval(xs[i]);
    if (v < best_v) {
      best_v = v;
      best_x = xs[i];
      best_index = i;
    }
  }

  double a = xs[std::max(0, best_index - 1)];
  double b = xs[std::min(kScanPoints - 1, best_index + 1)];
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  for (int iter = 0; iter < 200 && (b - a) > tol; ++iter) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = eval(x2);
    }
  }
  if (f1 < best_v) {
    best_v = f1;
    best_x = x1;
  }
  if (f2 < best_v) {
    best_v = f2;
    best_x = x2;
  }
  return {best_x, best_v};
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2)
    fail(ErrorKind::InvalidInput, "fit_power_law: need at least two points");
  std::vector<double> lx, ly;
  lx.reserve(points.size());
  ly.reserve(points.size());
  for (const auto& [x, y] : points) {
    if (!(x > 0) || !(y > 0) || !std::isfinite(x) || !std::isfinite(y))
      fail(ErrorKind::InvalidInput, "fit_power_law: coordinates must be positive and finite");
    lx.push_back(std::log(x));
    ly.push_back(std::log(y));
  }
  const auto n = static_cast<double>(points.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0) fail(ErrorKind::InvalidInput, "fit_power_law: all x coordinates coincide");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  double ss = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    const double r = ly[i] - (my + fit.exponent * (lx[i] - mx));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

Histogram density_from_samples(const std::vector<double>& samples,
                               const std::vector<double>& edges) {
  if (samples.empty()) fail(ErrorKind::InvalidInput, "density_from_samples: no samples");
  if (edges.size() < 2)
    fail(ErrorKind::InvalidInput, "density_from_samples: need at least two bin edges");
  for (size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1]))
      fail(ErrorKind::InvalidInput, "density_from_samples: edges must be strictly ascending");

  const size_t bins = edges.size() - 1;
  std::vector<double> counts(bins, 0.0);
  double outside = 0;
  for (double x : samples) {
    if (!std::isfinite(x) || x < edges.front() || x > edges.back()) {
      outside += 1;
      continue;
    }
    auto it = std::upper_bound(edges.begin(), edges.end(), x);
    size_t bin = static_cast<size_t>(std::distance(edges.begin(), it));
    bin = bin == 0 ? 0 : bin - 1;           // x == edges.front()
    if (bin >= bins) bin = bins - 1;        // x == edges.back()
    counts[bin] += 1;
  }
  Histogram histogram;
  histogram.edges = edges;
  histogram.density.resize(bins);
  const double total = static_cast<double>(samples.size());
  for (size_t i = 0; i < bins; ++i)
    histogram.density[i] = counts[i] / (total * (edges[i + 1] - edges[i]));
  histogram.out_of_range_mass = outside / total;
  return histogram;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    fail(ErrorKind::InvalidInput, "fit_line: need two equally sized samples of length >= 2");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) fail(ErrorKind::InvalidInput, "fit_line: degenerate abscissa");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy == 0 ? (ss_res == 0 ? 1.0 : 0.0) : 1.0 - ss_res / syy;
  return fit;
}

}  // namespace lrprop::numerics
