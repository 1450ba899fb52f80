#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dmap/kernel.hpp"

namespace dmap {

/// Geometric grid t_min * ratio^k.
struct TimeGrid {
  std::vector<double> times;
  double ratio = 2.0;
};

/// Throws std::invalid_argument for ratio <= 1, t_min >= t_max, or a grid
/// with fewer than three points.
TimeGrid make_grid(double t_min, double t_max, double ratio);

/// Data-driven grid: starts where almost every point is isolated
/// (t_min = median nearest-neighbor distance^2 / (4 C)) and ends at
/// (10 * diameter)^2, where the kernel is one diffuse blob.
TimeGrid default_grid(const Matrix& sq_dists, double trunc_c, double ratio = 2.0);

struct SGEPoint {
  double t = 0.0;
  double sge = 0.0;  // NaN marks a failed evaluation
  double mean_neighbors = 0.0;
  Index components = 0;
  bool connected_at_2t = false;

  bool valid() const { return sge == sge; }
};

enum class SelectionRule { kFirstLocalMin, kGlobalMin };

std::string to_string(SelectionRule rule);
SelectionRule parse_selection_rule(const std::string& s);

struct SelectionPolicy {
  SelectionRule rule = SelectionRule::kFirstLocalMin;
  double min_mean_neighbors = 10.0;
  bool require_connected = true;
};

struct SGECurve {
  std::vector<SGEPoint> points;
  std::optional<std::size_t> selected_index;
  SelectionPolicy policy;
  KernelConfig config;  // t is per point; alpha, trunc_c, dense are shared
};

/// A symmetric kernel at one diffusion time plus the diagnostics the
/// selector needs. This is the seam sweep() is written against.
struct KernelAtTime {
  Matrix k;
  double mean_neighbors = 0.0;
  Index components = 0;
};
using KernelProvider = std::function<KernelAtTime(double t)>;

/// || K_t^2 - K_2t ||, the operator norm of the semigroup defect.
double semigroup_error(const Matrix& k_t, const Matrix& k_2t);

SGEPoint sge_at(const PointCloud& cloud, const KernelConfig& config, double t);

/// Kernel provider for a cloud; squared distances are computed once.
KernelProvider cloud_kernel_provider(const PointCloud& cloud,
                                     const KernelConfig& config);

struct SweepOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  std::function<void(const SGEPoint&)> on_point;
};

/// Evaluates SGE at every grid time and selects t. Grid points whose kernel
/// cannot be built are kept with sge = NaN and never selected.
SGECurve sweep(const KernelProvider& provider, const TimeGrid& grid,
               const SelectionPolicy& policy, const SweepOptions& opts = {});

SGECurve sweep(const PointCloud& cloud, const KernelConfig& config,
               const TimeGrid& grid, const SelectionPolicy& policy,
               const SweepOptions& opts = {});

/// Index of the selected grid point, or nullopt if no point passes the
/// candidacy guards.
std::optional<std::size_t> select_t(const std::vector<SGEPoint>& points,
                                    const SelectionPolicy& policy);

/// Curve export: a `# sge_curve ...` line recording the kernel and policy
/// settings, the column header `t,sge,mean_neighbors,components,selected`,
/// then one row per grid point.
void write_sge_curve_csv(const std::filesystem::path& path, const SGECurve& curve);

}  // namespace dmap
