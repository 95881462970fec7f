// Index sets, concentration defects and moment functionals of sampled signals.
#ifndef UPLAB_CONCENTRATION_HPP
#define UPLAB_CONCENTRATION_HPP

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "uplab/core.hpp"

namespace uplab {

/// Subset of the sample indices of one grid axis.
class MaskSet {
 public:
  MaskSet(Grid grid, Axis axis, std::vector<bool> flags)
      : grid_(grid), axis_(axis), flags_(std::move(flags)) {
    if (static_cast<int>(flags_.size()) != grid_.size())
      throw std::invalid_argument("mask length does not match grid size");
  }

  static MaskSet empty(Grid grid, Axis axis) {
    return MaskSet(grid, axis, std::vector<bool>(grid.size(), false));
  }
  static MaskSet full(Grid grid, Axis axis) {
    return MaskSet(grid, axis, std::vector<bool>(grid.size(), true));
  }

  /// Union of half-open index ranges [lo, hi).
  static MaskSet from_intervals(Grid grid, Axis axis,
                                const std::vector<std::pair<int, int>>& ranges) {
    std::vector<bool> flags(grid.size(), false);
    for (auto [lo, hi] : ranges) {
      if (lo > hi || lo < 0 || hi > grid.size())
        throw std::invalid_argument("index range [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + ") outside the grid");
      for (int j = lo; j < hi; ++j) flags[j] = true;
    }
    return MaskSet(grid, axis, std::move(flags));
  }

  /// Indices whose coordinate lies in [a, b].
  static MaskSet from_coordinates(Grid grid, Axis axis, double a, double b) {
    std::vector<bool> flags(grid.size(), false);
    for (int j = 0; j < grid.size(); ++j) {
      const double x = grid.coord(axis, j);
      flags[j] = x >= a && x <= b;
    }
    return MaskSet(grid, axis, std::move(flags));
  }

  const Grid& grid() const { return grid_; }
  Axis axis() const { return axis_; }
  const std::vector<bool>& flags() const { return flags_; }
  bool contains(int j) const { return flags_[j]; }
  int count() const { return static_cast<int>(std::count(flags_.begin(), flags_.end(), true)); }
  double measure() const { return count() * grid_.spacing(axis_); }

  MaskSet complement() const {
    std::vector<bool> f(flags_.size());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] = !flags_[j];
    return MaskSet(grid_, axis_, std::move(f));
  }

  bool subset_of(const MaskSet& o) const {
    for (std::size_t j = 0; j < flags_.size(); ++j)
      if (flags_[j] && !o.flags_[j]) return false;
    return true;
  }

  /// Maximal runs of contained indices as half-open ranges.
  std::vector<std::pair<int, int>> intervals() const {
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(flags_.size());
    for (int j = 0; j < n;) {
      if (!flags_[j]) {
        ++j;
        continue;
      }
      int k = j;
      while (k + 1 < n && flags_[k + 1]) ++k;
      out.emplace_back(j, k + 1);
      j = k + 1;
    }
    return out;
  }

  bool operator==(const MaskSet& o) const {
    return grid_ == o.grid_ && axis_ == o.axis_ && flags_ == o.flags_;
  }

 private:
  Grid grid_;
  Axis axis_;
  std::vector<bool> flags_;
};

inline void require_matching(const Signal& f, const MaskSet& u, const char* what) {
  if (!(f.grid() == u.grid()) || f.axis() != u.axis())
    throw std::invalid_argument(std::string(what) + ": mask and signal disagree on grid or axis");
}

/// ||f outside u||_2 / ||f||_2, clamped to [0, 1].
inline double concentration_defect(const Signal& f, const MaskSet& u) {
  require_matching(f, u, "concentration_defect");
  const double total = f.samples().squaredNorm();
  if (total == 0.0) throw std::invalid_argument("concentration_defect: zero signal");
  double outside = 0.0;
  for (int j = 0; j < f.size(); ++j)
    if (!u.contains(j)) outside += std::norm(f[j]);
  return std::clamp(std::sqrt(outside / total), 0.0, 1.0);
}

struct ConcentrationResult {
  double epsilon;  // achieved defect
  MaskSet set;
};

/// Smallest index set whose complement carries at most eps^2 of the energy.
/// Greedy on |f_j|^2, ties broken by ascending index.
inline ConcentrationResult minimal_concentration_set(const Signal& f, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::invalid_argument("minimal_concentration_set: epsilon must lie in [0, 1]");
  const int n = f.size();
  std::vector<double> e(n);
  for (int j = 0; j < n; ++j) e[j] = std::norm(f[j]);
  const double total = std::accumulate(e.begin(), e.end(), 0.0);
  if (total == 0.0) throw std::invalid_argument("minimal_concentration_set: zero signal");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return e[a] > e[b]; });

  // tail[k]: energy of the samples ranked k and below
  std::vector<double> tail(n + 1, 0.0);
  for (int k = n - 1; k >= 0; --k) tail[k] = tail[k + 1] + e[order[k]];
  const double budget = eps * eps * total;
  int keep = n;
  for (int k = 0; k <= n; ++k) {
    if (tail[k] <= budget) {
      keep = k;
      break;
    }
  }
  std::vector<bool> flags(n, false);
  for (int k = 0; k < keep; ++k) flags[order[k]] = true;
  MaskSet set(f.grid(), f.axis(), std::move(flags));
  const double achieved = concentration_defect(f, set);
  return {achieved, std::move(set)};
}

/// Energy-weighted mean coordinate.
inline double energy_centroid(const Signal& f) {
  const double total = f.samples().squaredNorm();
  if (total == 0.0) throw std::invalid_argument("energy_centroid: zero signal");
  double s = 0.0;
  for (int j = 0; j < f.size(); ++j) s += f.coord(j) * std::norm(f[j]);
  return s / total;
}

/// || |x - center|^alpha f ||_q.
inline double weighted_moment_norm(const Signal& f, double center, double alpha, double q) {
  if (!(alpha > 0.0)) throw std::invalid_argument("weighted_moment_norm: alpha must be positive");
  CVector w(f.size());
  for (int j = 0; j < f.size(); ++j) w(j) = std::pow(std::abs(f.coord(j) - center), alpha) * f[j];
  return norm_lq(Signal(f.grid(), std::move(w), f.axis()), q);
}

/// || |x - center| f ||_2, the unnormalized spread used by the Heisenberg-type inequalities.
inline double std_dev(const Signal& f, double center = 0.0) {
  return weighted_moment_norm(f, center, 1.0, 2.0);
}

/// Indices where |f_j| exceeds threshold * max |f|.
inline MaskSet support_mask(const Signal& f, double threshold = 1e-12) {
  const double m = f.samples().cwiseAbs().maxCoeff();
  std::vector<bool> flags(f.size(), false);
  for (int j = 0; j < f.size(); ++j) flags[j] = m > 0.0 && std::abs(f[j]) > threshold * m;
  return MaskSet(f.grid(), f.axis(), std::move(flags));
}

/// Multiply f by the indicator of u.
inline Signal restrict_to(const Signal& f, const MaskSet& u) {
  require_matching(f, u, "restrict_to");
  CVector v = f.samples();
  for (int j = 0; j < f.size(); ++j)
    if (!u.contains(j)) v(j) = 0.0;
  return Signal(f.grid(), std::move(v), f.axis());
}

}  // namespace uplab

#endif
