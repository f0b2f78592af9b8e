// Copyright 2026 The agvctl Authors
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

#ifndef AGV_WORLD_H_
#define AGV_WORLD_H_

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace agv {

struct Waypoint {
  double x = 0.0;
  double y = 0.0;
};

// Integer cell coordinates; iy grows upward (world +y).
struct Cell {
  int ix = 0;
  int iy = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Occupancy grid. The center of cell (ix, iy) sits at
// origin + resolution * (ix, iy).
class GridMap {
 public:
  GridMap(int width, int height, double resolution, double origin_x = 0.0,
          double origin_y = 0.0);

  // Text format: first line "width height resolution", then `height` rows
  // of `width` characters ('#' occupied, '.' free). The first row is the
  // top of the map (largest iy).
  static GridMap Parse(std::istream& in);
  static GridMap Load(const std::string& path);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  double origin_x() const { return origin_x_; }
  double origin_y() const { return origin_y_; }

  bool InBounds(const Cell& c) const {
    return c.ix >= 0 && c.iy >= 0 && c.ix < width_ && c.iy < height_;
  }
  bool Occupied(const Cell& c) const { return occupancy_[Index(c)] != 0; }
  void SetOccupied(const Cell& c, bool occupied) {
    occupancy_[Index(c)] = occupied ? 1 : 0;
  }
  // Row-major index, iy * width + ix.
  int Index(const Cell& c) const { return c.iy * width_ + c.ix; }

  // Nearest cell to a world point; may be out of bounds.
  Cell WorldToCell(const Waypoint& p) const;
  Waypoint CellToWorld(const Cell& c) const;

 private:
  int width_;
  int height_;
  double resolution_;
  double origin_x_;
  double origin_y_;
  std::vector<std::uint8_t> occupancy_;
};

struct GlobalPath {
  std::vector<Waypoint> points;

  double Length() const;
};

// Shortest 4-connected grid path between the cells containing `start` and
// `goal` (A*, Manhattan heuristic, ties broken on (f, h, cell index)).
// Waypoints are cell centers, so consecutive points are one cell apart.
// Throws OutOfBoundsError if an endpoint is outside the map or occupied and
// NoPathError if the goal is unreachable.
GlobalPath PlanGlobalPath(const GridMap& map, const Waypoint& start,
                          const Waypoint& goal);

// Plans start -> via... -> goal leg by leg and concatenates the legs.
GlobalPath PlanRoute(const GridMap& map, const std::vector<Waypoint>& route);

// Linear subdivision so that consecutive points are at most `spacing`
// apart. Original vertices are kept verbatim.
GlobalPath DensifyPath(const GlobalPath& path, double spacing);

}  // namespace agv

#endif  // AGV_WORLD_H_
