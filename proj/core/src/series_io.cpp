#include "photonfilter/series_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "photonfilter/errors.hpp"

namespace photonfilter {

namespace {

void check_shape(const SeriesTable& table) {
  for (std::size_t r = 0; r < table.rows.size(); ++r)
    if (table.rows[r].size() != table.columns.size())
      throw ShapeError("row " + std::to_string(r) + " has " +
                       std::to_string(table.rows[r].size()) + " values for " +
                       std::to_string(table.columns.size()) + " columns");
}

void put_double(std::ostream& out, double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.write(buf, len);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

nlohmann::json config_to_json(const SimConfig& cfg) {
  return {
      {"kappa", cfg.kappa},
      {"gamma", cfg.gamma},
      {"delta", cfg.delta},
      {"t0", cfg.t0},
      {"t_start", cfg.t_start},
      {"t_end", cfg.t_end},
      {"dt", cfg.dt},
      {"fock_dim", cfg.fock_dim},
      {"ntraj", cfg.ntraj},
      {"seed", cfg.seed},
      {"engine", std::string(to_string(cfg.engine))},
      {"detector", std::string(to_string(cfg.detector))},
  };
}

void write_csv(std::ostream& out, const SeriesTable& table, const SeriesMetadata* meta) {
  check_shape(table);
  if (meta) {
    out << "# config " << meta->config.dump() << '\n';
    out << "# seed " << meta->seed << '\n';
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      put_double(out, row[c]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const SeriesTable& table, const SeriesMetadata& meta) {
  check_shape(table);
  if (table.columns.empty()) throw ShapeError("JSON output needs a time column");
  nlohmann::json doc;
  std::vector<double> times;
  times.reserve(table.rows.size());
  for (const auto& row : table.rows) times.push_back(row[0]);
  doc["times"] = std::move(times);
  nlohmann::json series = nlohmann::json::object();
  for (std::size_t c = 1; c < table.columns.size(); ++c) {
    std::vector<double> values;
    values.reserve(table.rows.size());
    for (const auto& row : table.rows) values.push_back(row[c]);
    series[table.columns[c]] = std::move(values);
  }
  doc["series"] = std::move(series);
  doc["config"] = meta.config;
  doc["seed"] = meta.seed;
  out << doc.dump() << '\n';
}

void write_series(const std::filesystem::path& path, const SeriesTable& table,
                  OutputFormat format, const SeriesMetadata* meta) {
  check_shape(table);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  if (format == OutputFormat::csv) {
    write_csv(file, table, meta);
  } else {
    write_json(file, table, meta ? *meta : SeriesMetadata{});
  }
  file.flush();
  if (!file) throw IoError("failed writing " + path.string());
}

SeriesTable read_csv(std::istream& in) {
  SeriesTable table;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      table.columns = split(line);
      header = true;
      continue;
    }
    std::vector<double> row;
    for (const auto& field : split(line)) {
      char* end = nullptr;
      row.push_back(std::strtod(field.c_str(), &end));
      if (end == field.c_str()) throw IoError("malformed number '" + field + "'");
    }
    table.rows.push_back(std::move(row));
  }
  check_shape(table);
  return table;
}

}  // namespace photonfilter
