#include "neurochaos/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "neurochaos/errors.hpp"

namespace neurochaos::csv {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

double parse_double(const std::string& cell) {
  double v = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
    throw DataError("not a number: '" + cell + "'");
  }
  return v;
}

int parse_int(const std::string& cell) {
  int v = 0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
    throw DataError("not an integer: '" + cell + "'");
  }
  return v;
}

static std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

Table read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  Table t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != t.header.size()) {
        throw DataError(path.string() + ": row has " + std::to_string(cells.size()) +
                        " cells, header has " + std::to_string(t.header.size()));
      }
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

void write_file(const std::filesystem::path& path, const Table& table) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << format_row(table.header);
  for (const auto& row : table.rows) out << format_row(row);
}

void write_dataset(const std::filesystem::path& path, const Dataset& ds,
                   const std::vector<std::string>& feature_names) {
  Table t;
  t.header = feature_names;
  t.header.push_back("label");
  t.rows.reserve(ds.X.rows());
  for (std::size_t i = 0; i < ds.X.rows(); ++i) {
    std::vector<std::string> row;
    row.reserve(ds.X.cols() + 1);
    for (std::size_t j = 0; j < ds.X.cols(); ++j) row.push_back(format_double(ds.X(i, j)));
    row.push_back(std::to_string(ds.y[i]));
    t.rows.push_back(std::move(row));
  }
  write_file(path, t);
}

Dataset read_dataset(const std::filesystem::path& path) {
  const Table t = read_file(path);
  if (t.header.empty() || t.header.back() != "label") {
    throw DataError(path.string() + ": expected trailing 'label' column");
  }
  const std::size_t d = t.header.size() - 1;
  Dataset ds;
  ds.X = Matrix(t.rows.size(), d);
  ds.y.reserve(t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) ds.X(i, j) = parse_double(t.rows[i][j]);
    ds.y.push_back(parse_int(t.rows[i][d]));
  }
  return ds;
}

void write_matrix(const std::filesystem::path& path, const Matrix& m,
                  const std::vector<std::string>& header) {
  Table t;
  t.header = header;
  t.rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<std::string> row;
    row.reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_double(m(i, j)));
    t.rows.push_back(std::move(row));
  }
  write_file(path, t);
}

}  // namespace neurochaos::csv
