#include "dmap/sge.hpp"

#include <algorithm>
#include <fstream>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "dmap/csv.hpp"
#include "dmap/spectral.hpp"

namespace dmap {

TimeGrid make_grid(double t_min, double t_max, double ratio) {
  if (!(ratio > 1.0)) throw std::invalid_argument("grid ratio must exceed 1");
  if (!(t_min > 0.0) || !(t_max > 0.0)) {
    throw std::invalid_argument("grid bounds must be positive");
  }
  if (!(t_min < t_max)) throw std::invalid_argument("grid needs t_min < t_max");

  TimeGrid grid;
  grid.ratio = ratio;
  const double limit = t_max * (1.0 + 1e-12);
  for (int k = 0;; ++k) {
    const double t = t_min * std::pow(ratio, k);
    if (t > limit) break;
    grid.times.push_back(t);
  }
  if (grid.times.size() < 3) {
    throw std::invalid_argument("time grid has fewer than 3 points");
  }
  return grid;
}

TimeGrid default_grid(const Matrix& sq_dists, double trunc_c, double ratio) {
  const Index n = sq_dists.rows();
  std::vector<double> nearest;
  double max_sq = 0.0;
  for (Index i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < n; ++j) {
      const double s = sq_dists(i, j);
      if (j != i && s > 0.0) best = std::min(best, s);
      max_sq = std::max(max_sq, s);
    }
    if (std::isfinite(best)) nearest.push_back(best);
  }
  if (nearest.empty()) {
    throw std::invalid_argument("all points coincide; no time grid can be derived");
  }
  auto mid = nearest.begin() + static_cast<std::ptrdiff_t>(nearest.size() / 2);
  std::nth_element(nearest.begin(), mid, nearest.end());
  const double t_min = *mid / (4.0 * trunc_c);
  const double t_max = 100.0 * max_sq;
  return make_grid(t_min, t_max, ratio);
}

std::string to_string(SelectionRule rule) {
  return rule == SelectionRule::kFirstLocalMin ? "first-local-min" : "global-min";
}

SelectionRule parse_selection_rule(const std::string& s) {
  if (s == "first-local-min") return SelectionRule::kFirstLocalMin;
  if (s == "global-min" || s == "global-min-over-candidates") {
    return SelectionRule::kGlobalMin;
  }
  throw std::invalid_argument("unknown selection rule: " + s);
}

double semigroup_error(const Matrix& k_t, const Matrix& k_2t) {
  if (k_t.rows() != k_2t.rows() || k_t.cols() != k_2t.cols()) {
    throw std::invalid_argument("kernels at t and 2t differ in size");
  }
  Matrix diff = k_t * k_t;
  diff -= k_2t;
  // The product of two symmetric matrices is symmetric only up to rounding.
  const Matrix sym = 0.5 * (diff + diff.transpose());
  return operator_norm(sym);
}

KernelProvider cloud_kernel_provider(const PointCloud& cloud,
                                     const KernelConfig& config) {
  config.with_t(1.0).validate();
  auto sq = std::make_shared<const Matrix>(pairwise_sq_dists(cloud));
  return [sq, config](double t) {
    const KernelConfig at = config.with_t(t);
    AffinityMatrix w = affinity(*sq, at);
    const KernelDiagnostics diag = diagnostics(w);
    w = alpha_renormalize(w, at.alpha);
    const DegreeVector d = degrees(w);
    return KernelAtTime{symmetric_normalize(w, d).entries, diag.mean_neighbors,
                        diag.components};
  };
}

namespace {

// Evaluates a contiguous block of the grid. K_2t of one grid point is reused
// as K_t of the next whenever the two times are bit-identical (ratio 2).
void evaluate_block(const KernelProvider& provider, const std::vector<double>& times,
                    std::size_t begin, std::size_t end, std::vector<SGEPoint>& out,
                    const std::function<void(const SGEPoint&)>& notify) {
  std::optional<std::pair<double, KernelAtTime>> cached;
  auto fetch = [&](double t) -> KernelAtTime {
    if (cached && cached->first == t) return cached->second;
    return provider(t);
  };

  for (std::size_t m = begin; m < end; ++m) {
    const double t = times[m];
    SGEPoint p;
    p.t = t;
    try {
      KernelAtTime k_t = fetch(t);
      KernelAtTime k_2t = provider(2.0 * t);
      p.mean_neighbors = k_t.mean_neighbors;
      p.components = k_t.components;
      p.connected_at_2t = k_2t.components == 1;
      p.sge = semigroup_error(k_t.k, k_2t.k);
      cached.emplace(2.0 * t, std::move(k_2t));
    } catch (const std::exception&) {
      p.sge = std::numeric_limits<double>::quiet_NaN();
      cached.reset();
    }
    out[m] = p;
    if (notify) notify(p);
  }
}

}  // namespace

SGEPoint sge_at(const PointCloud& cloud, const KernelConfig& config, double t) {
  const KernelProvider provider = cloud_kernel_provider(cloud, config);
  const KernelAtTime k_t = provider(t);
  const KernelAtTime k_2t = provider(2.0 * t);
  SGEPoint p;
  p.t = t;
  p.sge = semigroup_error(k_t.k, k_2t.k);
  p.mean_neighbors = k_t.mean_neighbors;
  p.components = k_t.components;
  p.connected_at_2t = k_2t.components == 1;
  return p;
}

SGECurve sweep(const KernelProvider& provider, const TimeGrid& grid,
               const SelectionPolicy& policy, const SweepOptions& opts) {
  const std::size_t m = grid.times.size();
  SGECurve curve;
  curve.policy = policy;
  curve.points.resize(m);

  unsigned threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(m, 1)));

  std::mutex notify_mutex;
  std::function<void(const SGEPoint&)> notify;
  if (opts.on_point) {
    notify = [&](const SGEPoint& p) {
      std::lock_guard lock(notify_mutex);
      opts.on_point(p);
    };
  }

  if (threads == 1) {
    evaluate_block(provider, grid.times, 0, m, curve.points, notify);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (m + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t b = w * chunk;
      const std::size_t e = std::min(m, b + chunk);
      if (b >= e) break;
      pool.emplace_back([&, b, e] {
        evaluate_block(provider, grid.times, b, e, curve.points, notify);
      });
    }
    for (auto& th : pool) th.join();
  }
  curve.selected_index = select_t(curve.points, policy);
  return curve;
}

SGECurve sweep(const PointCloud& cloud, const KernelConfig& config,
               const TimeGrid& grid, const SelectionPolicy& policy,
               const SweepOptions& opts) {
  SGECurve curve = sweep(cloud_kernel_provider(cloud, config), grid, policy, opts);
  curve.config = config;
  return curve;
}

std::optional<std::size_t> select_t(const std::vector<SGEPoint>& points,
                                    const SelectionPolicy& policy) {
  if (policy.min_mean_neighbors < 0.0) {
    throw std::invalid_argument("min_mean_neighbors must be nonnegative");
  }
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SGEPoint& p = points[i];
    if (!p.valid()) continue;
    if (p.mean_neighbors < policy.min_mean_neighbors) continue;
    if (policy.require_connected && p.components != 1) continue;
    cand.push_back(i);
  }
  if (cand.empty()) return std::nullopt;

  if (policy.rule == SelectionRule::kGlobalMin) {
    std::size_t best = cand.front();
    for (std::size_t i : cand) {
      if (points[i].sge < points[best].sge) best = i;
    }
    return best;
  }

  for (std::size_t k = 0; k < cand.size(); ++k) {
    const double v = points[cand[k]].sge;
    const bool below_left = k == 0 || v < points[cand[k - 1]].sge;
    const bool below_right = k + 1 == cand.size() || v < points[cand[k + 1]].sge;
    if (below_left && below_right) return cand[k];
  }
  // Only reachable when neighboring candidates tie; fall back to the
  // smallest value, earliest first.
  std::size_t best = cand.front();
  for (std::size_t i : cand) {
    if (points[i].sge < points[best].sge) best = i;
  }
  return best;
}

void write_sge_curve_csv(const std::filesystem::path& path, const SGECurve& curve) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const KernelConfig& c = curve.config;
  out << "# sge_curve alpha=" << format_real(c.alpha)
      << " trunc_c=" << format_real(c.trunc_c)
      << " dense=" << (c.dense ? 1 : 0)
      << " rule=" << to_string(curve.policy.rule)
      << " min_mean_neighbors=" << format_real(curve.policy.min_mean_neighbors) << '\n';
  out << "t,sge,mean_neighbors,components,selected\n";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const SGEPoint& p = curve.points[i];
    const bool selected = curve.selected_index && *curve.selected_index == i;
    out << format_real(p.t) << ',' << format_real(p.sge) << ','
        << format_real(p.mean_neighbors) << ',' << p.components << ','
        << (selected ? 1 : 0) << '\n';
  }
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace dmap
