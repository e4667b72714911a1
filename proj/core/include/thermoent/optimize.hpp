#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace thermoent {

using Objective = std::function<double(const std::vector<double>&)>;

struct SimplexOptions {
  std::size_t max_iterations = 2000;
  double size_tolerance = 1e-9;  // stop when the simplex characteristic size falls below this
  double initial_step = 0.5;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Unconstrained derivative-free minimisation (Nelder-Mead, GSL nmsimplex2).
/// Non-finite objective values are treated as +inf.
SimplexResult minimize_simplex(const Objective& f, const std::vector<double>& x0, const SimplexOptions& options = {});

/// Axis-aligned box. The objective is only ever evaluated inside it: points
/// outside are clamped and charged a quadratic penalty on the distance.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dimension() const { return lower.size(); }
  std::vector<double> clamp(const std::vector<double>& x) const;
  void validate() const;
};

/// Local searches from each of `seeds` plus `random_starts` points drawn
/// uniformly in the box from a generator seeded with `seed`. Returns the best
/// clamped result.
SimplexResult minimize_multistart(const Objective& f, const Box& box, const std::vector<std::vector<double>>& seeds,
                                  std::size_t random_starts, std::uint64_t seed, const SimplexOptions& options = {});

}  // namespace thermoent
