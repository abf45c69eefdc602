#include "lrprop/channel.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "lrprop/errors.hpp"
#include "lrprop/numerics.hpp"

namespace lrprop::channel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kOracleSiteGuard = 14;

void check_couplings(const Eigen::MatrixXd& couplings) {
  const auto n = couplings.rows();
  if (n < 3 || couplings.cols() != n)
    fail(ErrorKind::InvalidInput, "channel: need a square coupling matrix with N >= 3");
  if (!couplings.allFinite())
    fail(ErrorKind::InvalidInput, "channel: non-finite coupling");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (couplings(i, i) != 0.0)
      fail(ErrorKind::InvalidInput, "channel: diagonal couplings must vanish");
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (couplings(i, j) != couplings(j, i))
        fail(ErrorKind::InvalidInput, "channel: couplings must be symmetric");
  }
}

// Couplings from the receiver site: the bulk sum and the sender-receiver edge.
struct ReceiverCouplings {
  double bulk = 0;  // sum over S = {1..N-2} of J_{r, N-1}
  double edge = 0;  // J_{0, N-1}
};

ReceiverCouplings receiver_couplings(const ChannelSpec& spec) {
  ReceiverCouplings result;
  const int receiver = spec.sites - 1;
  numerics::KahanSum acc;
  for (int r = 1; r < receiver; ++r) acc.add(spec.couplings(r, receiver));
  result.bulk = acc.value();
  result.edge = spec.couplings(0, receiver);
  return result;
}

}  // namespace

ChannelSpec power_law_channel(int sites, double alpha) {
  if (sites < 3) fail(ErrorKind::InvalidInput, "channel: need at least three sites");
  Eigen::MatrixXd couplings = Eigen::MatrixXd::Zero(sites, sites);
  for (int i = 0; i < sites; ++i)
    for (int j = i + 1; j < sites; ++j)
      couplings(i, j) = couplings(j, i) = std::pow(j - i, -alpha);
  return {sites, std::move(couplings)};
}

ChannelSpec explicit_channel(Eigen::MatrixXd couplings) {
  check_couplings(couplings);
  const int sites = static_cast<int>(couplings.rows());
  return {sites, std::move(couplings)};
}

double signal_probability(const ChannelSpec& spec, double t) {
  if (!std::isfinite(t)) fail(ErrorKind::InvalidInput, "signal_probability: non-finite time");
  const ReceiverCouplings j = receiver_couplings(spec);
  return std::abs(std::sin(2.0 * t * j.bulk) * std::sin(2.0 * t * j.edge));
}

double branch_probability(const ChannelSpec& spec, double t, bool flipped) {
  const ReceiverCouplings j = receiver_couplings(spec);
  const double frequency = flipped ? j.bulk - j.edge : j.bulk + j.edge;
  return 0.5 * (1.0 + std::cos(2.0 * t * frequency));
}

double validity_horizon(double alpha, int sites) {
  if (sites < 3) fail(ErrorKind::InvalidInput, "validity_horizon: need at least three sites");
  numerics::KahanSum acc;
  for (int r = 1; r <= sites - 2; ++r) acc.add(std::pow(r, -alpha));
  return kPi / 4.0 / acc.value();
}

std::optional<double> lower_bound_probability(double alpha, int sites, double t) {
  if (sites < 3)
    fail(ErrorKind::InvalidInput, "lower_bound_probability: need at least three sites");
  if (alpha == 1.0)
    fail(ErrorKind::InvalidInput,
         "lower_bound_probability: alpha = 1 is singular (division by alpha - 1)");
  if (alpha < 1.0)
    fail(ErrorKind::UnsupportedRegime,
         "lower_bound_probability: the closed form requires alpha > 1");
  if (!(t >= 0)) fail(ErrorKind::InvalidInput, "lower_bound_probability: time must be >= 0");
  if (t > validity_horizon(alpha, sites)) return std::nullopt;
  const double span = sites - 1.0;
  return 16.0 * t * t / (kPi * kPi * (alpha - 1.0)) * std::pow(span, -alpha) *
         (1.0 - std::pow(span, 1.0 - alpha));
}

double ed_oracle_probability(const ChannelSpec& spec, double t) {
  const int n = spec.sites;
  if (n > kOracleSiteGuard)
    fail(ErrorKind::ResourceGuard,
         "ed_oracle_probability: state vector limited to 14 sites");
  const size_t dim = size_t{1} << n;

  // Diagonal energies E(b) = sum_{i<j} J_ij s_i s_j with s = +/-1 from the bits.
  std::vector<double> energy(dim);
  for (size_t b = 0; b < dim; ++b) {
    double e = 0;
    for (int i = 0; i < n; ++i) {
      const double si = (b >> i) & 1 ? 1.0 : -1.0;
      for (int j = i + 1; j < n; ++j) {
        const double sj = (b >> j) & 1 ? 1.0 : -1.0;
        e += spec.couplings(i, j) * si * sj;
      }
    }
    energy[b] = e;
  }

  const size_t receiver_mask = size_t{1} << (n - 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const auto branch = [&](bool flipped) {
    std::vector<std::complex<double>> amplitude(dim, 0.0);
    const size_t base = flipped ? size_t{1} : size_t{0};  // spin flip on site 0
    amplitude[base] = inv_sqrt2;
    amplitude[base | receiver_mask] = inv_sqrt2;
    for (size_t b = 0; b < dim; ++b)
      amplitude[b] *= std::polar(1.0, -energy[b] * t);
    // Probability of the |+> outcome on the receiver site.
    double p = 0;
    for (size_t b = 0; b < dim; ++b) {
      if (b & receiver_mask) continue;
      p += std::norm((amplitude[b] + amplitude[b | receiver_mask]) * inv_sqrt2);
    }
    return p;
  };
  return std::abs(branch(false) - branch(true));
}

SignalCurve signal_curve(int sites, double alpha, const std::vector<double>& times) {
  const ChannelSpec spec = power_law_channel(sites, alpha);
  SignalCurve curve;
  curve.times = times;
  curve.horizon = validity_horizon(alpha, sites);
  curve.exact.reserve(times.size());
  curve.lower.reserve(times.size());
  const bool lower_defined = alpha > 1.0;
  for (double t : times) {
    curve.exact.push_back(signal_probability(spec, t));
    curve.lower.push_back(lower_defined ? lower_bound_probability(alpha, sites, t)
                                        : std::nullopt);
  }
  return curve;
}

ContourFit contour_exponent(double alpha, double epsilon, const std::vector<int>& sizes) {
  if (alpha == 1.0)
    fail(ErrorKind::InvalidInput, "contour_exponent: alpha = 1 is singular");
  if (alpha < 1.0)
    fail(ErrorKind::UnsupportedRegime, "contour_exponent: requires alpha > 1");
  if (!(epsilon > 0)) fail(ErrorKind::InvalidInput, "contour_exponent: level must be positive");
  if (sizes.empty()) fail(ErrorKind::InvalidInput, "contour_exponent: no chain lengths");

  ContourFit fit;
  std::vector<std::pair<double, double>> points;
  for (int sites : sizes) {
    if (sites < 3) fail(ErrorKind::InvalidInput, "contour_exponent: sizes must be >= 3");
    const double span = sites - 1.0;
    const double coefficient = 16.0 / (kPi * kPi * (alpha - 1.0)) *
                               std::pow(span, -alpha) *
                               (1.0 - std::pow(span, 1.0 - alpha));
    const double time = std::sqrt(epsilon / coefficient);
    const bool pruned = time > validity_horizon(alpha, sites);
    fit.points.push_back({sites, span, time, pruned});
    if (pruned)
      ++fit.pruned_count;
    else
      points.emplace_back(time, span);
  }
  if (points.size() < 3)
    fail(ErrorKind::InvalidInput,
         "contour_exponent: fewer than three chain lengths stayed within the horizon");
  const numerics::PowerLawFit power = numerics::fit_power_law(points);
  fit.exponent = power.exponent;
  fit.prefactor = power.prefactor;
  fit.residual = power.residual;
  return fit;
}

}  // namespace lrprop::channel
