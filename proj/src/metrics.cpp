#include "hhc/metrics.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "hhc/io.hpp"

namespace hhc {

namespace {

std::array<double, 3> as_array(const ObjectiveVector& v) { return {v.f1, v.f2, v.f3}; }

bool strictly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  const auto x = as_array(a), y = as_array(b);
  bool le = true, lt = false;
  for (int i = 0; i < 3; ++i) {
    if (x[i] > y[i]) le = false;
    if (x[i] < y[i]) lt = true;
  }
  return le && lt;
}

// Union area of the rectangles [x, rx] x [y, ry] as a staircase sweep.
double area2d(std::vector<std::array<double, 2>> pts, double rx, double ry) {
  std::erase_if(pts, [&](const auto& p) { return p[0] >= rx || p[1] >= ry; });
  std::sort(pts.begin(), pts.end());
  double area = 0, prev_y = ry;
  for (const auto& p : pts) {
    if (p[1] >= prev_y) continue;
    area += (rx - p[0]) * (prev_y - p[1]);
    prev_y = p[1];
  }
  return area;
}

}  // namespace

NormalizationBounds normalization_bounds(
    const std::vector<std::vector<ObjectiveVector>>& fronts) {
  bool any = false;
  NormalizationBounds b;
  for (const auto& front : fronts)
    for (const auto& v : front) {
      const auto a = as_array(v);
      if (!any) {
        b.min = b.max = a;
        any = true;
      } else {
        for (int i = 0; i < 3; ++i) {
          b.min[i] = std::min(b.min[i], a[i]);
          b.max[i] = std::max(b.max[i], a[i]);
        }
      }
    }
  if (!any) throw std::invalid_argument("normalization needs at least one point");
  return b;
}

ObjectiveVector normalize_point(const ObjectiveVector& point, const NormalizationBounds& b) {
  const auto a = as_array(point);
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) {
    const double range = b.max[i] - b.min[i];
    out[i] = range > 0 ? (a[i] - b.min[i]) / range : 0;
  }
  return {out[0], out[1], out[2]};
}

NormalizedFronts normalize(const std::vector<std::vector<ObjectiveVector>>& fronts) {
  NormalizedFronts out;
  out.bounds = normalization_bounds(fronts);
  for (const auto& front : fronts) {
    std::vector<ObjectiveVector> mapped;
    for (const auto& v : front) mapped.push_back(normalize_point(v, out.bounds));
    out.fronts.push_back(std::move(mapped));
  }
  return out;
}

double hypervolume(const std::vector<ObjectiveVector>& front, const ObjectiveVector& reference) {
  const auto ref = as_array(reference);
  std::vector<std::array<double, 3>> pts;
  for (const auto& v : front) {
    const auto a = as_array(v);
    if (a[0] < ref[0] && a[1] < ref[1] && a[2] < ref[2]) pts.push_back(a);
  }
  if (pts.empty()) return 0;

  // Dimension sweep over f3 slabs; each slab contributes the 2D union area
  // of the points already below it times the slab height.
  std::vector<double> levels;
  for (const auto& p : pts) levels.push_back(p[2]);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  levels.push_back(ref[2]);

  double volume = 0;
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    std::vector<std::array<double, 2>> active;
    for (const auto& p : pts)
      if (p[2] <= levels[k]) active.push_back({p[0], p[1]});
    volume += area2d(std::move(active), ref[0], ref[1]) * (levels[k + 1] - levels[k]);
  }
  return volume;
}

double coverage(const std::vector<ObjectiveVector>& a, const std::vector<ObjectiveVector>& b) {
  if (b.empty()) throw std::invalid_argument("coverage needs a nonempty B");
  std::size_t covered = 0;
  for (const auto& y : b)
    for (const auto& x : a)
      if (strictly_dominates(x, y)) {
        ++covered;
        break;
      }
  return static_cast<double>(covered) / static_cast<double>(b.size());
}

std::vector<ObjectiveVector> feasible_vectors(const Front& front) {
  std::vector<ObjectiveVector> out;
  for (const auto& m : front.members)
    if (m.feasible) out.push_back(m.f);
  return out;
}

std::string indicator_csv(const std::vector<IndicatorRow>& rows) {
  std::ostringstream os;
  os << "instance,algorithm,hypervolume,front_size,cpu_ms\n";
  for (const auto& r : rows)
    os << csv_field(r.instance) << ',' << csv_field(r.algorithm) << ','
       << csv_number(r.hypervolume) << ',' << r.front_size << ',' << csv_number(r.cpu_ms)
       << "\n";
  return os.str();
}

}  // namespace hhc
