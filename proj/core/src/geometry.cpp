// Copyright 2026 The margindisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "margindisc/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace margindisc {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

std::vector<int> convex_hull(const std::vector<Point2>& points,
                             double collinear_tol) {
  const int n = static_cast<int>(points.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return points[a].x < points[b].x ||
           (points[a].x == points[b].x && points[a].y < points[b].y);
  });
  if (n < 3) return order;

  std::vector<int> hull(2 * static_cast<std::size_t>(n));
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(points[hull[k - 2]], points[hull[k - 1]],
                           points[order[i]]) <= collinear_tol) {
      --k;
    }
    hull[k++] = order[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && cross(points[hull[k - 2]], points[hull[k - 1]],
                               points[order[i]]) <= collinear_tol) {
      --k;
    }
    hull[k++] = order[i];
  }
  hull.resize(static_cast<std::size_t>(k - 1));
  return hull;
}

BoundaryPoint nearest_boundary_point(const std::vector<Point2>& points,
                                     const std::vector<int>& hull) {
  BoundaryPoint best;
  best.distance_squared = std::numeric_limits<double>::infinity();
  const std::size_t k = hull.size();
  if (k == 0) return best;
  if (k == 1) {
    const Point2& p = points[hull[0]];
    best.first = best.second = hull[0];
    best.distance_squared = p.x * p.x + p.y * p.y;
    return best;
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Point2& a = points[hull[i]];
    const Point2& b = points[hull[(i + 1) % k]];
    const double ex = b.x - a.x;
    const double ey = b.y - a.y;
    const double len2 = ex * ex + ey * ey;
    double t = len2 > 0.0 ? -(a.x * ex + a.y * ey) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double px = a.x + t * ex;
    const double py = a.y + t * ey;
    const double d2 = px * px + py * py;
    if (d2 < best.distance_squared) {
      best.distance_squared = d2;
      best.first = hull[i];
      best.second = hull[(i + 1) % k];
      best.weight = 1.0 - t;
      if (t == 0.0) best.second = best.first;
      if (t == 1.0) {
        best.first = best.second;
        best.weight = 1.0;
      }
    }
  }
  return best;
}

}  // namespace margindisc
