#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ivm/numerics.hpp"

namespace ivm {

struct MinNormPoint {
  Vector point;             // nearest point of the hull to the query
  double distance = 0.0;    // |point - query|
  double gap = 0.0;         // certified upper bound on distance - true distance
  std::size_t iterations = 0;
  std::size_t restarts = 0;
};

/// Wolfe's min-norm-point algorithm on the hull of `points` shifted so that
/// `query` sits at the origin. Terminates once the duality gap (in distance
/// units) is at most tol/2 or the iterate is within tol of the origin.
/// At most max(10n, 50) major cycles per attempt, one restart, then
/// NonConvergence.
MinNormPoint min_norm_point(std::span<const Vector> points, std::span<const double> query,
                            double tol);

}  // namespace ivm
