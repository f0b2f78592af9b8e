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

#include "agv/world.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "agv/errors.h"

namespace agv {

GridMap::GridMap(int width, int height, double resolution, double origin_x,
                 double origin_y)
    : width_(width),
      height_(height),
      resolution_(resolution),
      origin_x_(origin_x),
      origin_y_(origin_y),
      occupancy_(static_cast<std::size_t>(width > 0 ? width : 0) *
                     static_cast<std::size_t>(height > 0 ? height : 0),
                 0) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("GridMap: width and height must be positive");
  }
  if (!(resolution > 0.0)) {
    throw std::invalid_argument("GridMap: resolution must be positive");
  }
}

GridMap GridMap::Parse(std::istream& in) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) throw ConfigError("map", 1, "empty map file");
  std::istringstream header(line);
  int width = 0, height = 0;
  double resolution = 0.0;
  if (!(header >> width >> height >> resolution) || width <= 0 ||
      height <= 0 || !(resolution > 0.0)) {
    throw ConfigError("map", 1,
                      "header must be 'width height resolution' with "
                      "positive values");
  }
  GridMap map(width, height, resolution);
  for (int row = 0; row < height; ++row) {
    ++line_no;
    if (!std::getline(in, line)) {
      throw ConfigError("map", line_no, "expected " + std::to_string(height) +
                                            " rows of cells");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<int>(line.size()) != width) {
      throw ConfigError("map", line_no,
                        "row has " + std::to_string(line.size()) +
                            " cells, expected " + std::to_string(width));
    }
    const int iy = height - 1 - row;
    for (int ix = 0; ix < width; ++ix) {
      const char c = line[ix];
      if (c != '#' && c != '.') {
        throw ConfigError("map", line_no,
                          std::string("unexpected cell character '") + c +
                              "'");
      }
      map.SetOccupied({ix, iy}, c == '#');
    }
  }
  return map;
}

GridMap GridMap::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("map", 0, "cannot open map file " + path);
  return Parse(in);
}

Cell GridMap::WorldToCell(const Waypoint& p) const {
  return {static_cast<int>(std::lround((p.x - origin_x_) / resolution_)),
          static_cast<int>(std::lround((p.y - origin_y_) / resolution_))};
}

Waypoint GridMap::CellToWorld(const Cell& c) const {
  return {origin_x_ + resolution_ * c.ix, origin_y_ + resolution_ * c.iy};
}

double GlobalPath::Length() const {
  double length = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    length += std::hypot(points[i].x - points[i - 1].x,
                         points[i].y - points[i - 1].y);
  }
  return length;
}

namespace {

Cell CheckedCell(const GridMap& map, const Waypoint& p, const char* what) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw OutOfBoundsError(std::string(what) + " is not finite");
  }
  const Cell c = map.WorldToCell(p);
  if (!map.InBounds(c)) {
    throw OutOfBoundsError(std::string(what) + " lies outside the map");
  }
  if (map.Occupied(c)) {
    throw OutOfBoundsError(std::string(what) + " lies in an occupied cell");
  }
  return c;
}

}  // namespace

GlobalPath PlanGlobalPath(const GridMap& map, const Waypoint& start,
                          const Waypoint& goal) {
  const Cell s = CheckedCell(map, start, "start");
  const Cell g = CheckedCell(map, goal, "goal");
  const int n = map.width() * map.height();
  constexpr int kUnvisited = std::numeric_limits<int>::max();

  auto heuristic = [&](const Cell& c) {
    return std::abs(c.ix - g.ix) + std::abs(c.iy - g.iy);
  };
  auto cell_of = [&](int index) {
    return Cell{index % map.width(), index / map.width()};
  };

  std::vector<int> cost(n, kUnvisited);
  std::vector<int> parent(n, -1);
  std::vector<char> closed(n, 0);
  // (f, h, index), smallest first.
  using Entry = std::tuple<int, int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  const int s_index = map.Index(s);
  const int g_index = map.Index(g);
  cost[s_index] = 0;
  open.emplace(heuristic(s), heuristic(s), s_index);

  constexpr int kDx[4] = {1, -1, 0, 0};
  constexpr int kDy[4] = {0, 0, 1, -1};
  while (!open.empty()) {
    const auto [f, h, index] = open.top();
    open.pop();
    if (closed[index]) continue;
    closed[index] = 1;
    if (index == g_index) break;
    const Cell c = cell_of(index);
    for (int k = 0; k < 4; ++k) {
      const Cell nb{c.ix + kDx[k], c.iy + kDy[k]};
      if (!map.InBounds(nb) || map.Occupied(nb)) continue;
      const int nb_index = map.Index(nb);
      if (closed[nb_index]) continue;
      const int tentative = cost[index] + 1;
      if (tentative < cost[nb_index]) {
        cost[nb_index] = tentative;
        parent[nb_index] = index;
        const int nh = heuristic(nb);
        open.emplace(tentative + nh, nh, nb_index);
      }
    }
  }
  if (!closed[g_index]) {
    throw NoPathError("no 4-connected path between start and goal");
  }

  std::vector<Waypoint> reversed;
  for (int index = g_index; index != -1; index = parent[index]) {
    reversed.push_back(map.CellToWorld(cell_of(index)));
  }
  return {std::vector<Waypoint>(reversed.rbegin(), reversed.rend())};
}

GlobalPath PlanRoute(const GridMap& map, const std::vector<Waypoint>& route) {
  if (route.size() < 2) {
    throw std::invalid_argument("PlanRoute: need at least start and goal");
  }
  GlobalPath out;
  for (std::size_t leg = 0; leg + 1 < route.size(); ++leg) {
    GlobalPath part = PlanGlobalPath(map, route[leg], route[leg + 1]);
    const std::size_t skip = out.points.empty() ? 0 : 1;
    out.points.insert(out.points.end(), part.points.begin() + skip,
                      part.points.end());
  }
  return out;
}

GlobalPath DensifyPath(const GlobalPath& path, double spacing) {
  if (!(spacing > 0.0)) {
    throw std::invalid_argument("DensifyPath: spacing must be positive");
  }
  if (path.points.empty()) {
    throw std::invalid_argument("DensifyPath: path is empty");
  }
  GlobalPath out;
  out.points.push_back(path.points.front());
  for (std::size_t i = 1; i < path.points.size(); ++i) {
    const Waypoint& a = path.points[i - 1];
    const Waypoint& b = path.points[i];
    const double length = std::hypot(b.x - a.x, b.y - a.y);
    if (length == 0.0) continue;
    const int pieces =
        std::max(1, static_cast<int>(std::ceil(length / spacing - 1e-9)));
    for (int j = 1; j < pieces; ++j) {
      const double s = static_cast<double>(j) / pieces;
      out.points.push_back({a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)});
    }
    out.points.push_back(b);
  }
  return out;
}

}  // namespace agv
