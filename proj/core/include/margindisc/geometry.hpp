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

#pragma once

#include <vector>

namespace margindisc {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Andrew's monotone chain. Returns indices of hull vertices in
/// counter-clockwise order without repeating the first vertex; points within
/// `collinear_tol` (cross product) of an edge are dropped.
std::vector<int> convex_hull(const std::vector<Point2>& points,
                             double collinear_tol = 1e-12);

/// Closest point of a convex polygon's boundary to the origin, written as a
/// convex combination of at most two polygon vertices.
struct BoundaryPoint {
  int first = 0;
  int second = 0;      // equals `first` when the closest point is a vertex
  double weight = 1.0; // weight of `first`; `second` gets 1 - weight
  double distance_squared = 0.0;
};

BoundaryPoint nearest_boundary_point(const std::vector<Point2>& points,
                                     const std::vector<int>& hull);

}  // namespace margindisc
