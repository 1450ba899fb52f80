#include "dmap/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace dmap {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m,
                      const std::string& header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (!header.empty()) out << "# " << header << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_real(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      if (b == std::string::npos) {
        throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                 ": empty field");
      }
      double v = 0.0;
      const char* begin = cell.data() + b;
      const char* end = cell.data() + e + 1;
      auto [ptr, ec] = std::from_chars(begin, end, v);
      if (ec != std::errc() || ptr != end) {
        throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                 ": not a number: " + cell);
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("no data rows in " + path.string());

  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

std::filesystem::path ground_truth_path(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p.replace_filename(csv.stem().string() + ".gt.csv");
  return p;
}

void write_point_cloud(const std::filesystem::path& path, const PointCloud& cloud) {
  write_matrix_csv(path, cloud.points(),
                   cloud.name().empty() ? std::string{} : "points " + cloud.name());
  if (cloud.ground_truth()) {
    write_matrix_csv(ground_truth_path(path), *cloud.ground_truth(),
                     "ground truth " + cloud.name());
  }
}

PointCloud read_point_cloud(const std::filesystem::path& path) {
  Matrix points = read_matrix_csv(path);
  std::optional<Matrix> truth;
  const auto gt = ground_truth_path(path);
  if (std::filesystem::exists(gt)) truth = read_matrix_csv(gt);
  return PointCloud(std::move(points), std::move(truth), path.stem().string());
}

}  // namespace dmap
