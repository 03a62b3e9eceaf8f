#include "cr3kit/sweep.hpp"

#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cr3kit {

int sweep_thread_limit() {
  int limit = 1;
#ifdef _OPENMP
  limit = omp_get_max_threads();
#endif
  if (const char* env = std::getenv("CR3KIT_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0 && cap < limit) limit = cap;
    } catch (const std::exception&) {
      // ignored: malformed values leave the default
    }
  }
  return limit;
}

std::vector<Point> grid_points(const Rect& r, int n, int fiber_points, double fiber_len) {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n) * n * fiber_points);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < fiber_points; ++k) {
        out.push_back({r.x0 + (i + 0.5) * (r.x1 - r.x0) / n, r.y0 + (j + 0.5) * (r.y1 - r.y0) / n,
                       fiber_len * k / fiber_points});
      }
    }
  }
  return out;
}

std::vector<Point> random_points(const Rect& r, int count, std::uint64_t seed, double fiber_len) {
  std::mt19937_64 rng(seed);
  // Built from raw 53-bit draws so the sequence does not depend on the
  // standard library's distribution implementation.
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Point> out(count);
  for (Point& p : out) {
    p.x = r.x0 + (r.x1 - r.x0) * unit();
    p.y = r.y0 + (r.y1 - r.y0) * unit();
    p.t = fiber_len * unit();
  }
  return out;
}

MaxAt max_at(const std::vector<double>& values) {
  MaxAt best;
  if (values.empty()) return best;
  best = {values[0], 0};
  for (std::size_t i = 1; i < values.size(); ++i) {
    // NaN wins so a broken evaluation is never hidden by the reduction.
    if (std::isnan(best.value)) break;
    if (values[i] > best.value || std::isnan(values[i])) best = {values[i], i};
  }
  return best;
}

}  // namespace cr3kit
