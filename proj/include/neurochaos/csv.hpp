#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "neurochaos/matrix.hpp"

namespace neurochaos::csv {

// Shortest round-trip decimal representation (std::to_chars); byte-stable
// across runs, which the determinism guarantees rely on.
std::string format_double(double v);

std::string format_row(const std::vector<std::string>& cells);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Table& table);

// Dataset files: feature columns followed by a trailing integer `label` column.
void write_dataset(const std::filesystem::path& path, const Dataset& ds,
                   const std::vector<std::string>& feature_names);
Dataset read_dataset(const std::filesystem::path& path);

// Plain numeric matrix with named columns (feature files).
void write_matrix(const std::filesystem::path& path, const Matrix& m,
                  const std::vector<std::string>& header);

double parse_double(const std::string& cell);
int parse_int(const std::string& cell);

}  // namespace neurochaos::csv
