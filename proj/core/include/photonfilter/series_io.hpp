#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "photonfilter/config.hpp"

namespace photonfilter {

enum class OutputFormat { csv, json };

/// Row-major table whose first column is time.
struct SeriesTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Provenance written next to the data.
struct SeriesMetadata {
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
};

nlohmann::json config_to_json(const SimConfig& cfg);

/// CSV: optional `# config <json>` and `# seed <n>` comment lines, then the
/// header row, then one row per sample at 17 significant digits, each line
/// newline-terminated. Without metadata the file is exactly header + rows.
void write_csv(std::ostream& out, const SeriesTable& table, const SeriesMetadata* meta = nullptr);

/// {"times": [...], "series": {name: [...]}, "config": {...}, "seed": n}.
void write_json(std::ostream& out, const SeriesTable& table, const SeriesMetadata& meta);

/// Writes `table` to `path`. Throws ShapeError if a row width differs from
/// the column count and IoError if the file cannot be written.
void write_series(const std::filesystem::path& path, const SeriesTable& table,
                  OutputFormat format = OutputFormat::csv, const SeriesMetadata* meta = nullptr);

/// Reads back a CSV written by write_csv; comment lines are skipped.
SeriesTable read_csv(std::istream& in);

}  // namespace photonfilter
