#pragma once

namespace cr3kit {

// A point of a chart of the total space, coordinates (x, y, t).
struct Point {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

}  // namespace cr3kit
