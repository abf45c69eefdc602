#include "lrprop/grid_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lrprop/errors.hpp"

namespace lrprop::grid_io {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& line, char separator) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, separator)) fields.push_back(field);
  if (!line.empty() && line.back() == separator) fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    fail(ErrorKind::InvalidInput, "parse: malformed number '" + text + "'");
  return value;
}

void check_finite(double value) {
  if (!std::isfinite(value))
    fail(ErrorKind::InvalidInput, "serialize: non-finite value in data block");
}

void append_meta(std::string& out, const std::map<std::string, std::string>& meta) {
  for (const auto& [key, value] : meta) {
    if (key.find('=') != std::string::npos || key.find('\n') != std::string::npos)
      fail(ErrorKind::InvalidInput, "serialize: metadata key contains '=' or newline");
    if (value.find('\n') != std::string::npos)
      fail(ErrorKind::InvalidInput, "serialize: metadata value contains newline");
    out += "# ";
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
}

struct CsvBody {
  std::map<std::string, std::string> meta;
  std::vector<std::string> lines;
};

CsvBody read_csv(const std::string& text) {
  CsvBody body;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string entry = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
      const size_t eq = entry.find('=');
      if (eq == std::string::npos)
        fail(ErrorKind::InvalidInput, "parse: metadata line without '='");
      body.meta[entry.substr(0, eq)] = entry.substr(eq + 1);
      continue;
    }
    body.lines.push_back(line);
  }
  return body;
}

json meta_to_json(const std::map<std::string, std::string>& meta) {
  json object = json::object();
  for (const auto& [key, value] : meta) object[key] = value;
  return object;
}

std::map<std::string, std::string> meta_from_json(const json& object) {
  std::map<std::string, std::string> meta;
  for (const auto& [key, value] : object.items()) meta[key] = value.get<std::string>();
  return meta;
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  fail(ErrorKind::Configuration, "unknown output format '" + name + "'");
}

std::string format_name(Format format) {
  return format == Format::Csv ? "csv" : "json";
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string serialize_grid(const SpacetimeGrid& grid, Format format) {
  if (grid.values.size() != grid.rows() * grid.cols())
    fail(ErrorKind::InvalidInput, "serialize: inconsistent grid dimensions");
  for (double v : grid.values) check_finite(v);
  for (double t : grid.t_values) check_finite(t);

  if (format == Format::Json) {
    json object;
    object["meta"] = meta_to_json(grid.meta);
    object["delta_values"] = grid.delta_values;
    object["t_values"] = grid.t_values;
    object["values"] = grid.values;
    return object.dump() + "\n";
  }

  std::string out;
  append_meta(out, grid.meta);
  for (size_t ti = 0; ti < grid.cols(); ++ti) {
    if (ti) out += ',';
    out += format_double(grid.t_values[ti]);
  }
  out += '\n';
  for (size_t d = 0; d < grid.rows(); ++d) {
    out += std::to_string(grid.delta_values[d]);
    for (size_t ti = 0; ti < grid.cols(); ++ti) {
      out += ',';
      out += format_double(grid.at(d, ti));
    }
    out += '\n';
  }
  return out;
}

SpacetimeGrid parse_grid(const std::string& text, Format format) {
  SpacetimeGrid grid;
  if (format == Format::Json) {
    const json object = json::parse(text);
    grid.meta = meta_from_json(object.at("meta"));
    grid.delta_values = object.at("delta_values").get<std::vector<int>>();
    grid.t_values = object.at("t_values").get<std::vector<double>>();
    grid.values = object.at("values").get<std::vector<double>>();
  } else {
    const CsvBody body = read_csv(text);
    if (body.lines.empty()) fail(ErrorKind::InvalidInput, "parse: grid has no data rows");
    grid.meta = body.meta;
    for (const std::string& field : split(body.lines.front(), ','))
      grid.t_values.push_back(parse_double(field));
    for (size_t row = 1; row < body.lines.size(); ++row) {
      const std::vector<std::string> fields = split(body.lines[row], ',');
      if (fields.size() != grid.t_values.size() + 1)
        fail(ErrorKind::InvalidInput, "parse: grid row has the wrong number of fields");
      grid.delta_values.push_back(static_cast<int>(parse_double(fields[0])));
      for (size_t i = 1; i < fields.size(); ++i)
        grid.values.push_back(parse_double(fields[i]));
    }
  }
  if (grid.values.size() != grid.rows() * grid.cols())
    fail(ErrorKind::InvalidInput, "parse: inconsistent grid dimensions");
  return grid;
}

std::string serialize_curve(const Curve& curve, Format format) {
  if (curve.names.size() != curve.columns.size())
    fail(ErrorKind::InvalidInput, "serialize: curve column/name mismatch");
  for (const auto& column : curve.columns) {
    if (column.size() != curve.rows())
      fail(ErrorKind::InvalidInput, "serialize: ragged curve columns");
    for (const auto& cell : column)
      if (cell) check_finite(*cell);
  }

  if (format == Format::Json) {
    json object;
    object["meta"] = meta_to_json(curve.meta);
    json columns = json::array();
    for (size_t c = 0; c < curve.names.size(); ++c) {
      json values = json::array();
      for (const auto& cell : curve.columns[c])
        values.push_back(cell ? json(*cell) : json(nullptr));
      columns.push_back(json{{"name", curve.names[c]}, {"values", values}});
    }
    object["columns"] = columns;
    return object.dump() + "\n";
  }

  std::string out;
  append_meta(out, curve.meta);
  for (size_t c = 0; c < curve.names.size(); ++c) {
    if (curve.names[c].find(',') != std::string::npos)
      fail(ErrorKind::InvalidInput, "serialize: column name contains a comma");
    if (c) out += ',';
    out += curve.names[c];
  }
  out += '\n';
  for (size_t row = 0; row < curve.rows(); ++row) {
    for (size_t c = 0; c < curve.columns.size(); ++c) {
      if (c) out += ',';
      const auto& cell = curve.columns[c][row];
      if (cell) out += format_double(*cell);
    }
    out += '\n';
  }
  return out;
}

Curve parse_curve(const std::string& text, Format format) {
  Curve curve;
  if (format == Format::Json) {
    const json object = json::parse(text);
    curve.meta = meta_from_json(object.at("meta"));
    for (const auto& column : object.at("columns")) {
      curve.names.push_back(column.at("name").get<std::string>());
      std::vector<std::optional<double>> values;
      for (const auto& cell : column.at("values"))
        values.push_back(cell.is_null() ? std::nullopt
                                        : std::optional<double>(cell.get<double>()));
      curve.columns.push_back(std::move(values));
    }
  } else {
    const CsvBody body = read_csv(text);
    if (body.lines.empty()) fail(ErrorKind::InvalidInput, "parse: curve has no header");
    curve.meta = body.meta;
    curve.names = split(body.lines.front(), ',');
    curve.columns.resize(curve.names.size());
    for (size_t row = 1; row < body.lines.size(); ++row) {
      const std::vector<std::string> fields = split(body.lines[row], ',');
      if (fields.size() != curve.names.size())
        fail(ErrorKind::InvalidInput, "parse: curve row has the wrong number of fields");
      for (size_t c = 0; c < fields.size(); ++c)
        curve.columns[c].push_back(fields[c].empty()
                                       ? std::nullopt
                                       : std::optional<double>(parse_double(fields[c])));
    }
  }
  for (const auto& column : curve.columns)
    if (column.size() != curve.rows())
      fail(ErrorKind::InvalidInput, "parse: ragged curve columns");
  return curve;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Configuration, "cannot open output file " + temp.string());
    out << content;
    if (!out.good()) fail(ErrorKind::Configuration, "failed writing " + temp.string());
  }
  std::error_code code;
  fs::rename(temp, target, code);
  if (code)
    fail(ErrorKind::Configuration,
         "failed to move output into place: " + code.message());
}

}  // namespace lrprop::grid_io
