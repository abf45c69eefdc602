#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "lrprop/errors.hpp"
#include "lrprop/grid_io.hpp"
#include "lrprop/run.hpp"

using namespace lrprop;
using grid_io::Format;

TEST_SUITE_BEGIN("io");

namespace {

SpacetimeGrid random_grid(int rows, int cols, unsigned seed) {
  SpacetimeGrid grid;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mantissa(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(-300, 300);
  for (int d = 0; d < rows; ++d) grid.delta_values.push_back(d + 1);
  for (int ti = 0; ti < cols; ++ti) grid.t_values.push_back(0.1 * ti);
  for (int i = 0; i < rows * cols; ++i)
    grid.values.push_back(std::abs(mantissa(rng)) * std::pow(10.0, exponent(rng)));
  grid.meta["quantity"] = "test";
  grid.meta["alpha"] = "2.5";
  return grid;
}

}  // namespace

TEST_CASE("a 1x1 grid serializes to a time row plus one data row") {
  SpacetimeGrid grid;
  grid.delta_values = {3};
  grid.t_values = {1.5};
  grid.values = {0.25};
  grid.meta["quantity"] = "tiny";
  const std::string text = grid_io::serialize_grid(grid, Format::Csv);
  int meta_lines = 0, data_lines = 0;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    (line[0] == '#' ? meta_lines : data_lines) += 1;
  }
  CHECK(meta_lines >= 1);
  CHECK(data_lines == 2);
  const SpacetimeGrid back = grid_io::parse_grid(text, Format::Csv);
  CHECK(back.values == grid.values);
  CHECK(back.meta.at("quantity") == "tiny");
}

TEST_CASE("grid round trips are bit exact in both formats") {
  const SpacetimeGrid grid = random_grid(100, 100, 31337);
  for (Format format : {Format::Csv, Format::Json}) {
    const SpacetimeGrid back = grid_io::parse_grid(grid_io::serialize_grid(grid, format), format);
    REQUIRE(back.values.size() == grid.values.size());
    CHECK(back.delta_values == grid.delta_values);
    for (size_t i = 0; i < grid.t_values.size(); ++i)
      CHECK(back.t_values[i] == grid.t_values[i]);
    for (size_t i = 0; i < grid.values.size(); ++i)
      CHECK(back.values[i] == grid.values[i]);
    CHECK(back.meta == grid.meta);
  }
}

TEST_CASE("csv and json decode to the same data block") {
  const SpacetimeGrid grid = random_grid(13, 7, 99);
  const SpacetimeGrid via_csv =
      grid_io::parse_grid(grid_io::serialize_grid(grid, Format::Csv), Format::Csv);
  const SpacetimeGrid via_json =
      grid_io::parse_grid(grid_io::serialize_grid(grid, Format::Json), Format::Json);
  CHECK(via_csv.values == via_json.values);
  CHECK(via_csv.t_values == via_json.t_values);
  CHECK(via_csv.delta_values == via_json.delta_values);
}

TEST_CASE("curves round trip with absent cells") {
  Curve curve;
  curve.names = {"t", "p_exact", "p_lower"};
  curve.columns = {{0.0, 0.5, 1.0}, {0.0, 0.25, 0.5}, {0.0, std::nullopt, std::nullopt}};
  curve.meta["horizon"] = "0.5";
  for (Format format : {Format::Csv, Format::Json}) {
    const Curve back = grid_io::parse_curve(grid_io::serialize_curve(curve, format), format);
    CHECK(back.names == curve.names);
    CHECK(back.columns == curve.columns);
    CHECK(back.meta == curve.meta);
  }
}

TEST_CASE("non-finite values are refused") {
  SpacetimeGrid grid;
  grid.delta_values = {1};
  grid.t_values = {0.0};
  grid.values = {std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(grid_io::serialize_grid(grid, Format::Csv), Error);
}

TEST_CASE("config parsing") {
  SUBCASE("matexp flags land in the job") {
    const auto config = cli::parse_config(
        {"bound", "matexp", "--n", "201", "--alpha", "8", "--t-max", "20",
         "--t-steps", "200"});
    REQUIRE(config.has_value());
    CHECK(config->command == "bound matexp");
    const auto& job = std::get<cli::BoundMatexpJob>(config->job);
    CHECK(job.sites == 201);
    CHECK(job.alpha == 8.0);
    CHECK(job.times.t_max == 20.0);
    CHECK(job.times.steps == 200);
    CHECK(job.convention == "hopping");
  }
  SUBCASE("missing required option is a usage error") {
    CHECK_THROWS_AS(cli::parse_config({"bound", "matexp", "--n", "201", "--t-max",
                                       "20", "--t-steps", "200"}),
                    Error);
  }
  SUBCASE("unknown option is a usage error") {
    CHECK_THROWS_AS(cli::parse_config({"dos", "--alpha", "1", "--bogus", "3"}), Error);
  }
  SUBCASE("unknown config file keys are rejected") {
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "lrprop_test_bad_config.ini";
    {
      std::ofstream out(path);
      out << "[dos]\nalpha=4\nbogus-key=1\n";
    }
    CHECK_THROWS_AS(cli::parse_config({"--config", path.string(), "dos"}), Error);
    std::filesystem::remove(path);
  }
  SUBCASE("command line overrides the config file") {
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "lrprop_test_config.ini";
    {
      std::ofstream out(path);
      out << "[dos]\nalpha=4\nn-k=12000\n";
    }
    const auto config = cli::parse_config(
        {"--config", path.string(), "dos", "--alpha", "8"});
    REQUIRE(config.has_value());
    const auto& job = std::get<cli::DosJob>(config->job);
    CHECK(job.alpha == 8.0);        // flag wins
    CHECK(job.k_points == 12000);   // config file fills the rest
    std::filesystem::remove(path);
  }
}

TEST_CASE("every subcommand runs, serializes and parses back") {
  const std::vector<std::vector<std::string>> commands{
      {"bound", "hk", "--c", "1", "--v", "1", "--alpha", "2", "--delta-max", "4",
       "--t-max", "1", "--t-steps", "3"},
      {"bound", "rescaled", "--alpha", "0.5", "--n", "24", "--t-max", "1", "--t-steps", "3"},
      {"bound", "matexp", "--n", "16", "--alpha", "3", "--t-max", "1", "--t-steps", "3"},
      {"bound", "matexp", "--n", "16", "--alpha", "3", "--circulant", "--t-max", "1",
       "--t-steps", "3"},
      {"bound", "gong", "--alpha", "1.5", "--n", "24", "--delta-max", "6", "--t-max",
       "0.05", "--t-steps", "3"},
      {"hopping", "occupation", "--n", "12", "--alpha", "2", "--t-max", "2", "--t-steps", "4"},
      {"hopping", "correlations", "--n", "12", "--alpha", "2", "--t-max", "2", "--t-steps", "4"},
      {"hopping", "mutual-info", "--n", "12", "--alpha", "2", "--t-max", "2", "--t-steps", "4"},
      {"hopping", "velocity", "--n", "40", "--alpha", "3", "--threshold-rel", "0.2",
       "--t-max", "8", "--t-steps", "40"},
      {"dispersion", "finite", "--n", "12", "--alpha", "2"},
      {"dispersion", "infinite", "--alpha", "3", "--k-points", "16"},
      {"dispersion", "delta", "--n", "12", "--alpha", "2"},
      {"dos", "--alpha", "2", "--n-k", "10000", "--bins", "16"},
      {"channel", "curve", "--n", "6", "--alpha", "1.5", "--t-max", "1", "--t-steps", "5"},
      {"channel", "exponent", "--alpha", "1.5", "--n-min", "50", "--n-max", "400",
       "--n-count", "4"},
  };
  for (const auto& command : commands) {
    CAPTURE(command.front());
    const auto config = cli::parse_config(command);
    REQUIRE(config.has_value());
    const cli::Payload payload = cli::run(*config);
    for (grid_io::Format format : {grid_io::Format::Csv, grid_io::Format::Json}) {
      const std::string text = cli::serialize(payload, format);
      CHECK(!text.empty());
      if (const auto* grid = std::get_if<SpacetimeGrid>(&payload)) {
        const SpacetimeGrid back = grid_io::parse_grid(text, format);
        CHECK(back.values == grid->values);
        CHECK(back.meta.at("command") == config->command);
      } else {
        const Curve& curve = std::get<Curve>(payload);
        const Curve back = grid_io::parse_curve(text, format);
        CHECK(back.columns == curve.columns);
        CHECK(back.meta.at("command") == config->command);
      }
    }
  }
}

TEST_CASE("runs are deterministic at the library level") {
  const auto config = cli::parse_config({"channel", "curve", "--n", "10", "--alpha",
                                         "1.5", "--t-max", "1", "--t-steps", "50"});
  REQUIRE(config.has_value());
  const std::string first = cli::serialize(cli::run(*config), config->format);
  const std::string second = cli::serialize(cli::run(*config), config->format);
  // strip timestamps, which are allowed to differ between runs
  const auto strip = [](const std::string& text) {
    std::string out;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line))
      if (line.rfind("# timestamp", 0) != 0) out += line + "\n";
    return out;
  };
  CHECK(strip(first) == strip(second));
}

TEST_CASE("atomic write places the file") {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() / "lrprop_test_output.csv";
  grid_io::write_file_atomic(path.string(), "# a=b\n1\n2,3\n");
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == "# a=b\n1\n2,3\n");
  std::filesystem::remove(path);
}

TEST_SUITE_END();
