#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lrprop/grid.hpp"
#include "lrprop/grid_io.hpp"

namespace lrprop::cli {

// Uniform inclusive axis t_min..t_max with `steps` points.
struct TimeAxis {
  double t_min = 0;
  double t_max = 0;
  int steps = 0;
};

struct DeltaAxis {
  int min = 1;
  int max = 0;  // 0: derived from the lattice (N/2)
  int step = 1;
};

struct BoundHKJob {
  double prefactor = 0, velocity = 0, alpha = 0;
  int size_a = 1, size_b = 1;
  DeltaAxis deltas;
  TimeAxis times;
};
struct BoundRescaledJob {
  double alpha = 0;
  int sites = 0;
  double strength = 1;
  bool physical_time = false;
  int size_a = 1, size_b = 1;
  DeltaAxis deltas;
  TimeAxis times;
};
struct BoundMatexpJob {
  int sites = 0;
  double alpha = 0;
  std::string convention = "hopping";  // or "power-law"
  double strength = 1;
  bool circulant = false;
  DeltaAxis deltas;
  TimeAxis times;
};
struct BoundGongJob {
  double alpha = 1;
  int dimension = 1;
  double coupling_sum = 0;  // 0: derive from `sites`
  int sites = 0;
  DeltaAxis deltas;
  TimeAxis times;
};
struct OccupationJob {
  int sites = 0;
  double alpha = 0;
  int site = 0;
  TimeAxis times;
};
struct CorrelationJob {
  int sites = 0;
  double alpha = 0;
  DeltaAxis deltas;
  TimeAxis times;
};
struct MutualInfoJob {
  int sites = 0;
  double alpha = 0;
  DeltaAxis deltas;
  TimeAxis times;
};
struct VelocityJob {
  int sites = 0;
  double alpha = 0;
  double threshold_rel = 0.05;  // of the grid maximum
  double threshold_abs = 0;     // > 0 overrides the relative rule
  DeltaAxis deltas;
  TimeAxis times;
};
struct DispersionFiniteJob {
  int sites = 0;
  double alpha = 0;
};
struct DispersionInfiniteJob {
  double alpha = 0;
  int k_points = 512;
};
struct DispersionDeltaJob {
  int sites = 0;
  double alpha = 0;
};
struct DosJob {
  double alpha = 0;
  int k_points = 100000;
  double v_min = -6;
  double v_max = 6;
  int bins = 240;
};
struct ChannelCurveJob {
  int sites = 0;
  double alpha = 0;
  TimeAxis times;
};
struct ChannelExponentJob {
  double alpha = 0;
  double epsilon = 1e-8;
  int n_min = 200;
  int n_max = 2000;
  int n_count = 8;
};

using Job = std::variant<BoundHKJob, BoundRescaledJob, BoundMatexpJob, BoundGongJob,
                         OccupationJob, CorrelationJob, MutualInfoJob, VelocityJob,
                         DispersionFiniteJob, DispersionInfiniteJob, DispersionDeltaJob,
                         DosJob, ChannelCurveJob, ChannelExponentJob>;

struct RunConfig {
  Job job;
  std::string command;  // subcommand path, e.g. "bound matexp"
  std::string output = "-";
  grid_io::Format format = grid_io::Format::Csv;
  long long seed = 0;
};

// Throws Error(Configuration) on usage problems; nullopt when help was
// requested (already printed).
std::optional<RunConfig> parse_config(const std::vector<std::string>& args);

using Payload = std::variant<SpacetimeGrid, Curve>;

Payload run(const RunConfig& config);
std::string serialize(const Payload& payload, grid_io::Format format);

// Parse + run + write; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace lrprop::cli
