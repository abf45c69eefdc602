#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace lrprop::numerics {

// Riemann zeta for real s != 1 (alternating-series acceleration for s >= 1/2,
// functional equation below).
double riemann_zeta(double s);

// exp(s*M) of a real symmetric matrix via eigendecomposition.  The input must
// be exactly symmetric and finite; the result is symmetrized.
Eigen::MatrixXd expm_symmetric(const Eigen::MatrixXd& m, double s);

struct CirculantSpectrum {
  int size = 0;
  Eigen::VectorXd eigenvalues;  // mode m <-> k = 2*pi*m/size
};

// Eigenvalues of the circulant matrix with the given first row, which must
// have a zero leading entry and be reflection-symmetric (row[l] == row[N-l]).
// Evaluated as the cosine sum 2*sum_{n=1}^{floor((N-1)/2)} row[n] cos(n k),
// plus row[N/2]*cos(k N/2) when N is even.
CirculantSpectrum circulant_eigenvalues(const std::vector<double>& first_row);

// Same values computed with an FFT; use for large N.
CirculantSpectrum circulant_eigenvalues_fft(const std::vector<double>& first_row);

// Li_alpha(e^{ik}) = sum_{n>=1} e^{ikn}/n^alpha, evaluated to 1e-12 absolute
// truncation error.  Diverges at k == 0 (mod 2pi) for alpha <= 1.
std::complex<double> polylog_circle(double alpha, double k);

// Reusable evaluator for a fixed order: precomputes the zeta table once so
// that sweeps over many k are cheap.
class PolylogSeries {
 public:
  explicit PolylogSeries(double alpha);
  std::complex<double> operator()(double k) const;
  double alpha() const { return alpha_; }

 private:
  std::complex<double> eval_half_circle(double k) const;

  double alpha_ = 0;
  bool direct_sum_ = false;   // large alpha: plain summation converges fast
  bool integer_order_ = false;
  int order_ = 0;             // alpha rounded, when integer_order_
  double harmonic_ = 0;       // H_{order-1}
  std::vector<double> zeta_over_factorial_;  // zeta(alpha - j)/j!
};

struct MinimizeResult {
  double arg_min = 0;
  double min_value = 0;
};

// Global scan on a 64-point grid followed by golden-section refinement of the
// best bracket.  Robust to mild non-unimodality.
MinimizeResult minimize_scalar(const std::function<double(double)>& f,
                               double lo, double hi, double tol);

struct PowerLawFit {
  double exponent = 0;
  double prefactor = 0;
  double residual = 0;  // rms residual in log-log coordinates
};

// Least-squares line in log-log coordinates; points must be positive.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points);

struct Histogram {
  std::vector<double> edges;    // bins+1 ascending, uniform
  std::vector<double> density;  // integrates to 1 - out_of_range_mass
  double out_of_range_mass = 0;
};

Histogram density_from_samples(const std::vector<double>& samples,
                               const std::vector<double>& edges);

// Ordinary least squares y = slope*x + intercept.
struct LineFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Compensated (Kahan) summation.
class KahanSum {
 public:
  void add(double x) {
    double y = x - carry_;
    double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0;
  double carry_ = 0;
};

}  // namespace lrprop::numerics
