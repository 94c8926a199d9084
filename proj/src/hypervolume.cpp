#include "sapeo/hypervolume.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sapeo {

double hv2d(std::span<const ObjectiveVector> points, const ObjectiveVector& ref) {
  std::vector<ObjectiveVector> inside;
  inside.reserve(points.size());
  for (const auto& p : points)
    if (p[0] <= ref[0] && p[1] <= ref[1]) inside.push_back(p);
  if (inside.empty()) return 0.0;

  std::sort(inside.begin(), inside.end(), [](const ObjectiveVector& a, const ObjectiveVector& b) {
    return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
  });

  double area = 0.0;
  double prev2 = ref[1];
  for (const auto& p : inside) {
    if (p[1] < prev2) {
      area += (ref[0] - p[0]) * (prev2 - p[1]);
      prev2 = p[1];
    }
  }
  return area;
}

std::vector<double> hv_contributions(std::span<const ObjectiveVector> points,
                                     const ObjectiveVector& ref) {
  const std::size_t m = points.size();
  std::vector<double> contrib(m, 0.0);
  if (m == 0) return contrib;
  const double total = hv2d(points, ref);
  std::vector<ObjectiveVector> rest;
  rest.reserve(m > 0 ? m - 1 : 0);
  for (std::size_t i = 0; i < m; ++i) {
    rest.clear();
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) rest.push_back(points[j]);
    contrib[i] = total - hv2d(rest, ref);
  }
  return contrib;
}

ObjectiveVector hv_reference(std::span<const ObjectiveVector> points) {
  if (points.empty()) throw std::invalid_argument("hv_reference: empty point set");
  ObjectiveVector lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  ObjectiveVector hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& p : points) {
    for (int k = 0; k < kObjectives; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  ObjectiveVector ref;
  for (int k = 0; k < kObjectives; ++k) ref[k] = hi[k] + 0.1 * (hi[k] - lo[k]);
  return ref;
}

std::vector<std::size_t> nondominated_indices_2d(std::span<const ObjectiveVector> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a][0] != points[b][0]) return points[a][0] < points[b][0];
    return points[a][1] < points[b][1];
  });
  std::vector<std::size_t> front;
  double best2 = std::numeric_limits<double>::infinity();
  for (std::size_t i : order) {
    if (points[i][1] < best2) {
      front.push_back(i);
      best2 = points[i][1];
    }
  }
  return front;
}

}  // namespace sapeo
