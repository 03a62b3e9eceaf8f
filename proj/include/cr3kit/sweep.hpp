#pragma once

// Point sweeps over charts. Every kernel has a serial reference and an
// OpenMP version; both evaluate the same per-point function and write into
// a slot indexed by point, so results are bitwise identical and independent
// of the thread count. Reductions run afterwards, in index order.

#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

#include "cr3kit/point.hpp"
#include "cr3kit/surface.hpp"

namespace cr3kit {

// Honors CR3KIT_THREADS when set to a positive integer.
int sweep_thread_limit();

// n x n cell-centred grid over a rectangle, times `fiber_points` values of t
// spread over [0, fiber_len).
std::vector<Point> grid_points(const Rect& r, int n, int fiber_points = 1, double fiber_len = 1.0);
// Uniform random points of a rectangle; t uniform in [0, fiber_len).
std::vector<Point> random_points(const Rect& r, int count, std::uint64_t seed,
                                 double fiber_len = 1.0);

template <typename Result, typename Fn>
std::vector<Result> sweep_serial(const std::vector<Point>& points, Fn&& fn) {
  std::vector<Result> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = fn(points[i]);
  return out;
}

template <typename Result, typename Fn>
std::vector<Result> sweep_parallel(const std::vector<Point>& points, Fn&& fn) {
  std::vector<Result> out(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(sweep_thread_limit())
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = fn(points[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  // The lowest-index failure is reported, as the serial loop would.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

struct MaxAt {
  double value = 0.0;
  std::size_t index = 0;
};

// Largest entry, first index on ties.
MaxAt max_at(const std::vector<double>& values);

}  // namespace cr3kit
