#include "lrprop/run.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <ctime>
#include <iostream>
#include <numbers>

#include "lrprop/bounds.hpp"
#include "lrprop/channel.hpp"
#include "lrprop/errors.hpp"
#include "lrprop/hopping.hpp"
#include "lrprop/lattice.hpp"
#include "lrprop/numerics.hpp"

namespace lrprop::cli {

namespace {

constexpr const char* kArtifactVersion = "lrprop 0.1.0";
constexpr double kPi = std::numbers::pi;

std::string fmt(double v) { return grid_io::format_double(v); }

std::vector<double> time_values(const TimeAxis& axis) {
  if (axis.steps < 1) fail(ErrorKind::Configuration, "--t-steps must be >= 1");
  if (axis.t_min < 0) fail(ErrorKind::Configuration, "--t-min must be >= 0");
  if (axis.steps == 1) {
    if (axis.t_max != axis.t_min && axis.t_max != 0)
      fail(ErrorKind::Configuration, "--t-steps 1 needs --t-max == --t-min");
    return {axis.t_min};
  }
  if (!(axis.t_max > axis.t_min))
    fail(ErrorKind::Configuration, "--t-max must exceed --t-min");
  std::vector<double> times(axis.steps);
  for (int i = 0; i < axis.steps; ++i)
    times[i] = axis.t_min + (axis.t_max - axis.t_min) * i / (axis.steps - 1);
  times.front() = axis.t_min;
  times.back() = axis.t_max;
  return times;
}

std::vector<int> delta_values(const DeltaAxis& axis, int default_max) {
  const int max = axis.max > 0 ? axis.max : default_max;
  if (max <= 0) fail(ErrorKind::Configuration, "--delta-max is required here");
  if (axis.min < 1) fail(ErrorKind::Configuration, "--delta-min must be >= 1");
  if (axis.step < 1) fail(ErrorKind::Configuration, "--delta-step must be >= 1");
  if (max < axis.min) fail(ErrorKind::Configuration, "--delta-max is below --delta-min");
  std::vector<int> deltas;
  for (int d = axis.min; d <= max; d += axis.step) deltas.push_back(d);
  return deltas;
}

void stamp_time_axis(std::map<std::string, std::string>& meta, const TimeAxis& axis) {
  meta["t_min"] = fmt(axis.t_min);
  meta["t_max"] = fmt(axis.t_max);
  meta["t_steps"] = std::to_string(axis.steps);
}

void stamp_delta_axis(std::map<std::string, std::string>& meta, const DeltaAxis& axis,
                      int default_max) {
  meta["delta_min"] = std::to_string(axis.min);
  meta["delta_max"] = std::to_string(axis.max > 0 ? axis.max : default_max);
  meta["delta_step"] = std::to_string(axis.step);
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
    now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  std::tm split{};
  gmtime_r(&now, &split);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &split);
  return buffer;
}

void stamp_common(std::map<std::string, std::string>& meta, const RunConfig& config) {
  meta["command"] = config.command;
  meta["artifact"] = kArtifactVersion;
  meta["timestamp"] = utc_timestamp();
  meta["seed"] = std::to_string(config.seed);
  meta["format"] = grid_io::format_name(config.format);
}

struct JobRunner {
  const RunConfig& config;

  Payload operator()(const BoundHKJob& job) const {
    bounds::HKGridConfig grid_config{
        {job.prefactor, job.velocity, job.alpha, job.size_a, job.size_b}};
    SpacetimeGrid grid = bounds::bound_grid(grid_config, delta_values(job.deltas, 0),
                                            time_values(job.times));
    grid.meta["quantity"] = "commutator_bound";
    stamp_time_axis(grid.meta, job.times);
    stamp_delta_axis(grid.meta, job.deltas, 0);
    return grid;
  }

  Payload operator()(const BoundRescaledJob& job) const {
    const lattice::LatticeSpec spec = lattice::chain(job.sites);
    const double n_factor = lattice::normalization_factor(spec, job.alpha);
    const double p = lattice::reproducibility_constant(spec, job.alpha);
    bounds::RescaledGridConfig grid_config{
        {job.alpha, job.strength, p}, job.size_a, job.size_b, n_factor,
        job.physical_time};
    const int default_max = job.sites / 2;
    SpacetimeGrid grid = bounds::bound_grid(
        grid_config, delta_values(job.deltas, default_max), time_values(job.times));
    grid.meta["quantity"] = "commutator_bound";
    grid.meta["n"] = std::to_string(job.sites);
    grid.meta["strength"] = fmt(job.strength);
    grid.meta["n_factor"] = fmt(n_factor);
    stamp_time_axis(grid.meta, job.times);
    stamp_delta_axis(grid.meta, job.deltas, default_max);
    return grid;
  }

  Payload operator()(const BoundMatexpJob& job) const {
    lattice::InteractionMatrix interactions =
        job.convention == "hopping"
            ? lattice::hopping_interactions(job.sites, job.alpha)
            : lattice::power_law_interactions(lattice::chain(job.sites), job.alpha,
                                              job.strength);
    bounds::MatexpGridConfig grid_config{std::move(interactions), job.circulant, 0};
    const int default_max = job.sites / 2;
    SpacetimeGrid grid = bounds::bound_grid(
        grid_config, delta_values(job.deltas, default_max), time_values(job.times));
    grid.meta["quantity"] = "commutator_bound";
    grid.meta["alpha"] = fmt(job.alpha);
    grid.meta["convention"] =
        job.convention == "hopping" ? "J = d^-alpha / 2" : "J = strength (1+d)^-alpha";
    if (job.convention != "hopping") grid.meta["strength"] = fmt(job.strength);
    stamp_time_axis(grid.meta, job.times);
    stamp_delta_axis(grid.meta, job.deltas, default_max);
    return grid;
  }

  Payload operator()(const BoundGongJob& job) const {
    const bounds::GongParams params =
        job.coupling_sum > 0
            ? bounds::make_gong_params(job.alpha, job.dimension, job.coupling_sum)
            : bounds::gong_params_for_chain(job.alpha, job.sites);
    bounds::GongGridConfig grid_config{params};
    SpacetimeGrid grid = bounds::bound_grid(grid_config, delta_values(job.deltas, 0),
                                            time_values(job.times));
    grid.meta["quantity"] = "commutator_bound";
    if (job.sites > 0) grid.meta["n"] = std::to_string(job.sites);
    stamp_time_axis(grid.meta, job.times);
    stamp_delta_axis(grid.meta, job.deltas, 0);
    return grid;
  }

  Payload operator()(const OccupationJob& job) const {
    const hopping::HoppingModel model = hopping::make_model(job.sites, job.alpha);
    const hopping::DispersionTable table = hopping::make_dispersion_table(model);
    const std::vector<double> times = time_values(job.times);
    Curve curve;
    curve.names = {"t", "occupation"};
    curve.columns.resize(2);
    for (double t : times) {
      curve.columns[0].push_back(t);
      curve.columns[1].push_back(hopping::occupation(table, job.site, t));
    }
    curve.meta["quantity"] = "occupation";
    curve.meta["n"] = std::to_string(job.sites);
    curve.meta["alpha"] = fmt(job.alpha);
    curve.meta["site"] = std::to_string(job.site);
    curve.meta["initial_state"] = "staggered, odd sites occupied (0-based)";
    stamp_time_axis(curve.meta, job.times);
    return curve;
  }

  Payload operator()(const CorrelationJob& job) const {
    const hopping::HoppingModel model = hopping::make_model(job.sites, job.alpha);
    const int default_max = job.sites / 2;
    SpacetimeGrid grid =
        hopping::correlation_grid(model, delta_values(job.deltas, default_max),
                                  time_values(job.times));
    stamp_time_axis(grid.meta, job.times);
    stamp_delta_axis(grid.meta, job.deltas, default_max);
    return grid;
  }

  Payload operator()(const MutualInfoJob& job) const {
    const hopping::HoppingModel model = hopping::make_model(job.sites, job.alpha);
    const int default_max = job.sites / 2;
    SpacetimeGrid grid =
        hopping::mutual_information_grid(model, delta_values(job.deltas, default_max),
                                         time_values(job.times));
    stamp_time_axis(grid.meta, job.times);
    stamp_delta_axis(grid.meta, job.deltas, default_max);
    return grid;
  }

  Payload operator()(const VelocityJob& job) const {
    const hopping::HoppingModel model = hopping::make_model(job.sites, job.alpha);
    const int default_max = job.sites / 2;
    const SpacetimeGrid grid =
        hopping::correlation_grid(model, delta_values(job.deltas, default_max),
                                  time_values(job.times));
    double threshold = job.threshold_abs;
    std::string mode = "absolute";
    if (!(threshold > 0)) {
      const double peak =
          *std::max_element(grid.values.begin(), grid.values.end());
      threshold = job.threshold_rel * peak;
      mode = "relative to grid maximum";
    }
    const double velocity = hopping::cone_velocity(grid, threshold);
    const std::vector<hopping::FrontPoint> front = hopping::cone_front(grid, threshold);
    Curve curve;
    curve.names = {"t", "front_delta"};
    curve.columns.resize(2);
    for (const auto& point : front) {
      curve.columns[0].push_back(point.t);
      curve.columns[1].push_back(static_cast<double>(point.delta));
    }
    curve.meta = grid.meta;
    curve.meta["quantity"] = "correlation_front";
    curve.meta["velocity"] = fmt(velocity);
    curve.meta["threshold"] = fmt(threshold);
    curve.meta["threshold_mode"] = mode;
    curve.meta["threshold_rel"] = fmt(job.threshold_rel);
    stamp_time_axis(curve.meta, job.times);
    stamp_delta_axis(curve.meta, job.deltas, default_max);
    return curve;
  }

  Payload operator()(const DispersionFiniteJob& job) const {
    const hopping::HoppingModel model = hopping::make_model(job.sites, job.alpha);
    const hopping::DispersionTable table = hopping::make_dispersion_table(model);
    Curve curve;
    curve.names = {"k", "eps"};
    curve.columns.resize(2);
    for (int m = 0; m < model.sites; ++m) {
      curve.columns[0].push_back(2.0 * kPi * m / model.sites);
      curve.columns[1].push_back(table.eps[m]);
    }
    curve.meta["quantity"] = "dispersion_finite";
    curve.meta["n"] = std::to_string(job.sites);
    curve.meta["alpha"] = fmt(job.alpha);
    curve.meta["k_grid"] = "k = 2*pi*m/N, m = 0..N-1";
    return curve;
  }

  Payload operator()(const DispersionInfiniteJob& job) const {
    if (job.k_points < 2) fail(ErrorKind::Configuration, "--k-points must be >= 2");
    Curve curve;
    curve.names = {"k", "eps"};
    curve.columns.resize(2);
    for (int m = 0; m < job.k_points; ++m) {
      const double k = 2.0 * kPi * m / job.k_points;
      curve.columns[0].push_back(k);
      curve.columns[1].push_back(hopping::dispersion_infinite(job.alpha, k));
    }
    curve.meta["quantity"] = "dispersion_infinite";
    curve.meta["alpha"] = fmt(job.alpha);
    curve.meta["k_points"] = std::to_string(job.k_points);
    return curve;
  }

  Payload operator()(const DispersionDeltaJob& job) const {
    const hopping::HoppingModel model = hopping::make_model(job.sites, job.alpha);
    const Eigen::VectorXd frequencies = hopping::delta_frequencies(model);
    Curve curve;
    curve.names = {"k", "delta_freq"};
    curve.columns.resize(2);
    for (int m = 0; m < model.sites; ++m) {
      curve.columns[0].push_back(2.0 * kPi * m / model.sites);
      curve.columns[1].push_back(frequencies[m]);
    }
    curve.meta["quantity"] = "staggered_frequencies";
    curve.meta["n"] = std::to_string(job.sites);
    curve.meta["alpha"] = fmt(job.alpha);
    curve.meta["k_grid"] = "k = 2*pi*m/N, m = 0..N-1";
    return curve;
  }

  Payload operator()(const DosJob& job) const {
    if (job.bins < 1) fail(ErrorKind::Configuration, "--bins must be >= 1");
    if (!(job.v_max > job.v_min))
      fail(ErrorKind::Configuration, "--v-max must exceed --v-min");
    std::vector<double> edges(job.bins + 1);
    for (int i = 0; i <= job.bins; ++i)
      edges[i] = job.v_min + (job.v_max - job.v_min) * i / job.bins;
    const hopping::DosResult dos =
        hopping::density_of_states(job.alpha, job.k_points, edges);
    Curve curve;
    curve.names = {"v", "density"};
    curve.columns.resize(2);
    for (int i = 0; i < job.bins; ++i) {
      curve.columns[0].push_back(0.5 * (edges[i] + edges[i + 1]));
      curve.columns[1].push_back(dos.density[i]);
    }
    curve.meta["quantity"] = "group_velocity_density";
    curve.meta["alpha"] = fmt(job.alpha);
    curve.meta["k_points"] = std::to_string(job.k_points);
    curve.meta["v_min"] = fmt(job.v_min);
    curve.meta["v_max"] = fmt(job.v_max);
    curve.meta["bins"] = std::to_string(job.bins);
    curve.meta["out_of_range_mass"] = fmt(dos.out_of_range_mass);
    curve.meta["derivative"] = "central differences on the k grid";
    if (job.alpha <= 2.0)
      curve.meta["excluded_modes"] = "the two modes adjacent to k = 0";
    return curve;
  }

  Payload operator()(const ChannelCurveJob& job) const {
    const channel::SignalCurve signal =
        channel::signal_curve(job.sites, job.alpha, time_values(job.times));
    Curve curve;
    curve.names = {"t", "p_exact", "p_lower"};
    curve.columns.resize(3);
    for (size_t i = 0; i < signal.times.size(); ++i) {
      curve.columns[0].push_back(signal.times[i]);
      curve.columns[1].push_back(signal.exact[i]);
      curve.columns[2].push_back(signal.lower[i]);
    }
    curve.meta["quantity"] = "channel_signal_probability";
    curve.meta["n"] = std::to_string(job.sites);
    curve.meta["alpha"] = fmt(job.alpha);
    curve.meta["horizon"] = fmt(signal.horizon);
    curve.meta["couplings"] = "J_ij = |i-j|^-alpha, open chain";
    curve.meta["protocol"] = "flip site 0, measure |+><+| at site N-1";
    stamp_time_axis(curve.meta, job.times);
    return curve;
  }

  Payload operator()(const ChannelExponentJob& job) const {
    if (job.n_count < 3) fail(ErrorKind::Configuration, "--n-count must be >= 3");
    if (job.n_min < 3 || job.n_max < job.n_min)
      fail(ErrorKind::Configuration, "need 3 <= --n-min <= --n-max");
    std::vector<int> sizes;
    for (int i = 0; i < job.n_count; ++i) {
      const double x = job.n_count == 1
                           ? std::log(static_cast<double>(job.n_min))
                           : std::log(static_cast<double>(job.n_min)) +
                                 (std::log(static_cast<double>(job.n_max)) -
                                  std::log(static_cast<double>(job.n_min))) *
                                     i / (job.n_count - 1);
      const int n = static_cast<int>(std::lround(std::exp(x)));
      if (sizes.empty() || n > sizes.back()) sizes.push_back(n);
    }
    const channel::ContourFit fit =
        channel::contour_exponent(job.alpha, job.epsilon, sizes);
    if (fit.pruned_count > 0)
      std::cerr << "warning: " << fit.pruned_count
                << " chain length(s) fell outside the validity horizon and were "
                   "pruned from the fit\n";
    Curve curve;
    curve.names = {"n", "delta", "t", "within_horizon"};
    curve.columns.resize(4);
    for (const auto& point : fit.points) {
      curve.columns[0].push_back(static_cast<double>(point.sites));
      curve.columns[1].push_back(point.delta);
      curve.columns[2].push_back(point.time);
      curve.columns[3].push_back(point.pruned ? 0.0 : 1.0);
    }
    curve.meta["quantity"] = "channel_contour";
    curve.meta["alpha"] = fmt(job.alpha);
    curve.meta["epsilon"] = fmt(job.epsilon);
    curve.meta["exponent"] = fmt(fit.exponent);
    curve.meta["prefactor"] = fmt(fit.prefactor);
    curve.meta["residual"] = fmt(fit.residual);
    curve.meta["pruned"] = std::to_string(fit.pruned_count);
    curve.meta["n_min"] = std::to_string(job.n_min);
    curve.meta["n_max"] = std::to_string(job.n_max);
    curve.meta["n_count"] = std::to_string(job.n_count);
    return curve;
  }
};

}  // namespace

std::optional<RunConfig> parse_config(const std::vector<std::string>& args) {
  RunConfig config;
  CLI::App app{"Propagation bounds and exact long-range lattice dynamics"};
  app.set_config("--config", "", "read options from an INI file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.fallthrough(true);
  app.require_subcommand(1);

  std::string format = "csv";
  app.add_option("-o,--output", config.output, "output path, '-' for stdout")
      ->capture_default_str();
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--seed", config.seed, "seed recorded in the output metadata")
      ->capture_default_str();

  const auto add_time = [](CLI::App* cmd, TimeAxis& axis) {
    cmd->add_option("--t-min", axis.t_min, "first time value")->capture_default_str();
    cmd->add_option("--t-max", axis.t_max, "last time value")->required();
    cmd->add_option("--t-steps", axis.steps, "number of time points")->required();
  };
  const auto add_deltas = [](CLI::App* cmd, DeltaAxis& axis, bool required_max) {
    auto* max = cmd->add_option("--delta-max", axis.max,
                                required_max ? "largest distance"
                                             : "largest distance (default N/2)");
    if (required_max) max->required();
    cmd->add_option("--delta-min", axis.min, "smallest distance")->capture_default_str();
    cmd->add_option("--delta-step", axis.step, "distance stride")->capture_default_str();
  };
  const auto select = [&config](const std::string& name, auto& job) {
    return [&config, name, &job] {
      config.command = name;
      config.job = job;
    };
  };

  auto* bound = app.add_subcommand("bound", "Lieb-Robinson-type bound grids");
  bound->require_subcommand(1);

  auto hk = std::make_shared<BoundHKJob>();
  auto* bound_hk = bound->add_subcommand("hk", "power-law bound with explicit constants");
  bound_hk->add_option("--c", hk->prefactor, "prefactor constant")->required();
  bound_hk->add_option("--v", hk->velocity, "exponential rate constant")->required();
  bound_hk->add_option("--alpha", hk->alpha, "decay exponent")->required();
  bound_hk->add_option("--size-a", hk->size_a, "|A|")->capture_default_str();
  bound_hk->add_option("--size-b", hk->size_b, "|B|")->capture_default_str();
  add_deltas(bound_hk, hk->deltas, true);
  add_time(bound_hk, hk->times);
  bound_hk->callback(select("bound hk", *hk));

  auto rescaled = std::make_shared<BoundRescaledJob>();
  auto* bound_rescaled =
      bound->add_subcommand("rescaled", "bound in rescaled time, valid for alpha < D");
  bound_rescaled->add_option("--alpha", rescaled->alpha, "decay exponent")->required();
  bound_rescaled->add_option("--n", rescaled->sites, "periodic chain length")->required();
  bound_rescaled->add_option("--strength", rescaled->strength, "coupling strength")
      ->capture_default_str();
  bound_rescaled->add_flag("--physical-time", rescaled->physical_time,
                           "time axis in physical units (rescaled internally)");
  bound_rescaled->add_option("--size-a", rescaled->size_a, "|A|")->capture_default_str();
  bound_rescaled->add_option("--size-b", rescaled->size_b, "|B|")->capture_default_str();
  add_deltas(bound_rescaled, rescaled->deltas, false);
  add_time(bound_rescaled, rescaled->times);
  bound_rescaled->callback(select("bound rescaled", *rescaled));

  auto matexp = std::make_shared<BoundMatexpJob>();
  auto* bound_matexp =
      bound->add_subcommand("matexp", "matrix-exponential bound on a periodic chain");
  bound_matexp->add_option("--n", matexp->sites, "chain length")->required();
  bound_matexp->add_option("--alpha", matexp->alpha, "decay exponent")->required();
  bound_matexp
      ->add_option("--convention", matexp->convention,
                   "coupling convention: hopping (d^-alpha/2) or power-law "
                   "((1+d)^-alpha)")
      ->check(CLI::IsMember({"hopping", "power-law"}))
      ->capture_default_str();
  bound_matexp->add_option("--strength", matexp->strength, "power-law strength")
      ->capture_default_str();
  bound_matexp->add_flag("--circulant", matexp->circulant,
                         "evaluate through the circulant Fourier spectrum");
  add_deltas(bound_matexp, matexp->deltas, false);
  add_time(bound_matexp, matexp->times);
  bound_matexp->callback(select("bound matexp", *matexp));

  auto gong = std::make_shared<BoundGongJob>();
  auto* bound_gong =
      bound->add_subcommand("gong", "two-term bound minimized over the split parameter");
  bound_gong->add_option("--alpha", gong->alpha, "decay exponent (>= 1)")->required();
  bound_gong->add_option("--dimension", gong->dimension, "lattice dimension")
      ->capture_default_str();
  bound_gong->add_option("--coupling-sum", gong->coupling_sum,
                         "site coupling sum; derived from --n when omitted");
  bound_gong->add_option("--n", gong->sites, "periodic chain length for the coupling sum");
  add_deltas(bound_gong, gong->deltas, true);
  add_time(bound_gong, gong->times);
  bound_gong->callback(select("bound gong", *gong));

  auto* hop = app.add_subcommand("hopping", "exact staggered-quench dynamics");
  hop->require_subcommand(1);

  auto occupation = std::make_shared<OccupationJob>();
  auto* hop_occupation = hop->add_subcommand("occupation", "site occupation versus time");
  hop_occupation->add_option("--n", occupation->sites, "chain length (even)")->required();
  hop_occupation->add_option("--alpha", occupation->alpha, "hopping exponent")->required();
  hop_occupation->add_option("--site", occupation->site, "lattice site")
      ->capture_default_str();
  add_time(hop_occupation, occupation->times);
  hop_occupation->callback(select("hopping occupation", *occupation));

  auto correlations = std::make_shared<CorrelationJob>();
  auto* hop_correlations =
      hop->add_subcommand("correlations", "|<c+_{delta} c_0>| spacetime grid");
  hop_correlations->add_option("--n", correlations->sites, "chain length (even)")
      ->required();
  hop_correlations->add_option("--alpha", correlations->alpha, "hopping exponent")
      ->required();
  add_deltas(hop_correlations, correlations->deltas, false);
  add_time(hop_correlations, correlations->times);
  hop_correlations->callback(select("hopping correlations", *correlations));

  auto mutual = std::make_shared<MutualInfoJob>();
  auto* hop_mutual =
      hop->add_subcommand("mutual-info", "two-site mutual information grid");
  hop_mutual->add_option("--n", mutual->sites, "chain length (even)")->required();
  hop_mutual->add_option("--alpha", mutual->alpha, "hopping exponent")->required();
  add_deltas(hop_mutual, mutual->deltas, false);
  add_time(hop_mutual, mutual->times);
  hop_mutual->callback(select("hopping mutual-info", *mutual));

  auto velocity = std::make_shared<VelocityJob>();
  auto* hop_velocity =
      hop->add_subcommand("velocity", "cone front extraction and velocity fit");
  hop_velocity->add_option("--n", velocity->sites, "chain length (even)")->required();
  hop_velocity->add_option("--alpha", velocity->alpha, "hopping exponent")->required();
  hop_velocity
      ->add_option("--threshold-rel", velocity->threshold_rel,
                   "front threshold as a fraction of the grid maximum")
      ->capture_default_str();
  hop_velocity->add_option("--threshold-abs", velocity->threshold_abs,
                           "absolute front threshold (overrides --threshold-rel)");
  add_deltas(hop_velocity, velocity->deltas, false);
  add_time(hop_velocity, velocity->times);
  hop_velocity->callback(select("hopping velocity", *velocity));

  auto* dispersion = app.add_subcommand("dispersion", "dispersion relations");
  dispersion->require_subcommand(1);

  auto disp_finite_job = std::make_shared<DispersionFiniteJob>();
  auto* disp_finite = dispersion->add_subcommand("finite", "finite-chain dispersion");
  disp_finite->add_option("--n", disp_finite_job->sites, "chain length (even)")->required();
  disp_finite->add_option("--alpha", disp_finite_job->alpha, "hopping exponent")
      ->required();
  disp_finite->callback(select("dispersion finite", *disp_finite_job));

  auto disp_infinite_job = std::make_shared<DispersionInfiniteJob>();
  auto* disp_infinite =
      dispersion->add_subcommand("infinite", "infinite-chain dispersion (alpha > 1)");
  disp_infinite->add_option("--alpha", disp_infinite_job->alpha, "hopping exponent")
      ->required();
  disp_infinite->add_option("--k-points", disp_infinite_job->k_points, "k samples")
      ->capture_default_str();
  disp_infinite->callback(select("dispersion infinite", *disp_infinite_job));

  auto disp_delta_job = std::make_shared<DispersionDeltaJob>();
  auto* disp_delta = dispersion->add_subcommand("delta", "staggered quench frequencies");
  disp_delta->add_option("--n", disp_delta_job->sites, "chain length (even)")->required();
  disp_delta->add_option("--alpha", disp_delta_job->alpha, "hopping exponent")->required();
  disp_delta->callback(select("dispersion delta", *disp_delta_job));

  auto dos = std::make_shared<DosJob>();
  auto* dos_cmd = app.add_subcommand("dos", "group-velocity density of states");
  dos_cmd->add_option("--alpha", dos->alpha, "hopping exponent")->required();
  dos_cmd->add_option("--n-k", dos->k_points, "number of k samples")->capture_default_str();
  dos_cmd->add_option("--v-min", dos->v_min, "lowest bin edge")->capture_default_str();
  dos_cmd->add_option("--v-max", dos->v_max, "highest bin edge")->capture_default_str();
  dos_cmd->add_option("--bins", dos->bins, "number of bins")->capture_default_str();
  dos_cmd->callback(select("dos", *dos));

  auto* chan = app.add_subcommand("channel", "binary Ising signaling channel");
  chan->require_subcommand(1);

  auto chan_curve_job = std::make_shared<ChannelCurveJob>();
  auto* chan_curve = chan->add_subcommand("curve", "detection probability versus time");
  chan_curve->add_option("--n", chan_curve_job->sites, "chain length")->required();
  chan_curve->add_option("--alpha", chan_curve_job->alpha, "coupling exponent")->required();
  add_time(chan_curve, chan_curve_job->times);
  chan_curve->callback(select("channel curve", *chan_curve_job));

  auto chan_exp_job = std::make_shared<ChannelExponentJob>();
  auto* chan_exp = chan->add_subcommand("exponent", "contour exponent of the lower bound");
  chan_exp->add_option("--alpha", chan_exp_job->alpha, "coupling exponent (> 1)")
      ->required();
  chan_exp->add_option("--epsilon", chan_exp_job->epsilon, "contour level")
      ->capture_default_str();
  chan_exp->add_option("--n-min", chan_exp_job->n_min, "smallest chain length")
      ->capture_default_str();
  chan_exp->add_option("--n-max", chan_exp_job->n_max, "largest chain length")
      ->capture_default_str();
  chan_exp->add_option("--n-count", chan_exp_job->n_count, "number of chain lengths")
      ->capture_default_str();
  chan_exp->callback(select("channel exponent", *chan_exp_job));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    fail(ErrorKind::Configuration, e.what());
  }
  config.format = grid_io::parse_format(format);
  return config;
}

Payload run(const RunConfig& config) {
  Payload payload = std::visit(JobRunner{config}, config.job);
  std::visit([&config](auto& value) { stamp_common(value.meta, config); }, payload);
  return payload;
}

std::string serialize(const Payload& payload, grid_io::Format format) {
  if (const auto* grid = std::get_if<SpacetimeGrid>(&payload))
    return grid_io::serialize_grid(*grid, format);
  return grid_io::serialize_curve(std::get<Curve>(payload), format);
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const std::optional<RunConfig> config = parse_config(args);
    if (!config) return 0;
    const Payload payload = run(*config);
    const std::string text = serialize(payload, config->format);
    if (config->output == "-")
      std::cout << text;
    else
      grid_io::write_file_atomic(config->output, text);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Configuration:
      case ErrorKind::InvalidInput:
        return 2;
      case ErrorKind::ResourceGuard:
        return 4;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace lrprop::cli
