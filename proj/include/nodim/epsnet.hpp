#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nodim/geometry.hpp"

namespace nodim {

struct SelectionResult {
  Point q;
  double radius = 0.0;           // 3.5 D / sqrt(r)
  double hit_lower_bound = 0.0;  // r^-r * C(n, r)
  // exhaustive count of r-subsets whose hull meets B(q, radius); only set
  // when C(n, r) <= 1e5
  std::optional<std::uint64_t> verified_hits;
};

// Tverberg-partition centre point: the ball B(q, 3.5 D / sqrt(r)) meets the
// hull of at least r^-r C(n,r) of the r-subsets. The exhaustive count, when
// it runs, is checked against that floor (a miss throws: it would mean a
// partition or hull-distance bug, not a near-miss).
SelectionResult selection_point(const PointSet& points, int r);

// radius = factor(r) * D / sqrt(r); increasing in r with supremum
// sqrt(6.5 + 4 sqrt 2) = 3.4867... < 3.5
double selection_radius_factor(int r);

enum class ViolatorMode {
  Exhaustive,  // scan every ceil(eps n)-subset, certify on termination
  Heuristic    // farthest-from-net greedy plus seeded random restarts
};

struct EpsNetIteration {
  std::vector<int> violator;         // Y the new net point was built on
  std::uint64_t deleted_tuples = 0;  // r-subsets newly covered this round
  double min_deletions = 0.0;        // r^-r * C(|Y|, r)
};

struct EpsNetResult {
  std::vector<Point> net;
  double radius = 0.0;      // 3.5 D / sqrt(r)
  double size_bound = 0.0;  // r^r * eps^-r
  int iterations = 0;
  std::vector<EpsNetIteration> violator_log;
  bool certified = false;  // exhaustive final scan found no violator
};

// Iterates the selection lemma on violating subsets until every Y with
// |Y| >= eps n has conv Y within radius of the net.
EpsNetResult weak_epsnet(const PointSet& points, int r, double eps, ViolatorMode mode);

struct CenterpointCheck {
  double min_fraction = 0.0;
  bool pass = false;         // min_fraction >= 1/k - 1e-9
  Point worst_direction;
};

// Samples closed halfspaces containing B(q, 1/sqrt k) (seeded sphere
// directions, plus all point differences when n <= 50) and reports the
// smallest fraction of points captured. Requires the point set to fit in
// some unit ball.
CenterpointCheck centerpoint_verify(const PointSet& points, int k, const Point& q,
                                    int directions = 10000);

struct CenterpointResult {
  Point q;
  std::string route;              // "helly_subsets" or "tverberg_center"
  double radius_guarantee = 0.0;  // helly route: 1/sqrt k; tverberg: achieved
};

// Centre q such that halfspaces containing B(q, 1/sqrt k) hold >= n/k points.
// Exhaustive route: minimax centre over the hulls of all subsets of size
// n - ceil(n/k) + 1 (every k of them share an input point, so the minimax
// radius is at most 1/sqrt k). Falls back to a Tverberg centre with
// ceil(n/k) parts and a weaker radius when the subset count is out of reach.
CenterpointResult centerpoint_construct(const PointSet& points, int k,
                                        bool allow_fallback = true);

}  // namespace nodim
