#pragma once

#include <filesystem>
#include <string>

#include "dmap/point_cloud.hpp"

namespace dmap {

/// Plain-text matrix dump: one row per line, comma separated, 17 significant
/// digits. `header` (without the leading '#') is written first when nonempty.
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m,
                      const std::string& header = {});

/// Reads a comma-separated numeric matrix. Blank lines and lines starting
/// with '#' are skipped. All rows must have the same length.
Matrix read_matrix_csv(const std::filesystem::path& path);

/// `<dir>/<stem>.gt.csv` for a cloud stored at `<dir>/<stem>.csv`.
std::filesystem::path ground_truth_path(const std::filesystem::path& csv);

/// Writes points and, when present, the sibling ground-truth file.
void write_point_cloud(const std::filesystem::path& path,
                       const PointCloud& cloud);

/// Reads points and picks up the sibling ground-truth file if it exists.
PointCloud read_point_cloud(const std::filesystem::path& path);

std::string format_real(double v);

}  // namespace dmap
