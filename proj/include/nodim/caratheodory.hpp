#pragma once

#include <string>
#include <vector>

#include "nodim/geometry.hpp"
#include "nodim/rng.hpp"

namespace nodim {

// Point sets P_1..P_r with a convex weight vector per set.
// weights[i] is indexed like sets[i].points(); each vector is nonnegative and
// sums to 1 within 1e-12.
struct WeightedFamily {
  std::vector<PointSet> sets;
  std::vector<std::vector<double>> weights;
};

WeightedFamily uniform_family(std::vector<PointSet> sets);

// Throws std::invalid_argument on shape mismatch, negative weights, or a
// weight vector whose sum strays from 1.
void validate_weighted_family(const WeightedFamily& family);

struct TransversalResult {
  std::vector<int> chosen;  // one point index per set
  std::vector<Point> chosen_points;
  Point witness;  // point of conv(chosen_points) realizing `distance`
  std::vector<double> witness_coefficients;  // convex, indexed like chosen_points
  double distance = 0.0;
  double bound = 0.0;
  std::string method;  // "derandomized", "frank_wolfe", "random"
  // Conditional expectation of |centroid(T) - a|^2: entry 0 before any point
  // is fixed, then one entry per fixed set.  Non-increasing.
  std::vector<double> expectation_trace;
  // |q_j - a| after each Frank-Wolfe step, starting with the seed point.
  std::vector<double> contraction_log;
  bool hypothesis_verified = false;
};

// Greedy conditional-expectation scan.  Requires every set's weighted
// combination to equal a within 1e-9 (scaled); fixes the last set first.
// distance = |a - centroid(T)|, bound = D/sqrt(2r) with D = max diameter.
TransversalResult derandomized_transversal(const WeightedFamily& family, const Point& a);

struct FrankWolfeOptions {
  int p1_index = 0;           // which point of the first set seeds the walk
  bool verify_hypothesis = false;  // check a in conv of every t-set union
};

// Frank-Wolfe style transversal for families where a lies in the convex hull
// of every union of t distinct sets.  Performs r-t+1 picks, completes the
// remaining sets with their lowest-index point, and reports the distance of
// the partial hull's nearest point.  bound = 2*sqrt(ln4/3)*D/sqrt(r-t+1).
TransversalResult frank_wolfe_transversal(const std::vector<PointSet>& sets, const Point& a,
                                          int t, const FrankWolfeOptions& options = {});

// Variant for sets whose hulls only come within eta*D of a.  Weights are
// recovered from the nearest hull points; the reported distance is the hull
// distance d(a, conv T); bound = D/sqrt(2r) * sqrt(1 + 2(r-1)eta^2).
TransversalResult eta_perturbed_transversal(const std::vector<PointSet>& sets, const Point& a,
                                            double eta);

// Reduction of the single-set theorem to the family version: r copies of P,
// weights realizing a, then dedup and pad with the unused points of P nearest
// to a.  chosen holds r distinct indices into P; distance = d(a, conv Q).
TransversalResult single_set_caratheodory(const PointSet& P, const Point& a, int r);

struct BestSubset {
  std::vector<int> subset;
  double distance = 0.0;
};

// Exhaustive minimum of d(a, conv S) over all r-subsets S of P.
// Guard: C(|P|, r) <= 1e6.
BestSubset brute_force_best_subset(const PointSet& P, const Point& a, int r);

// Baseline: one uniformly random point per set.  No guarantee; bound field is
// filled with D/sqrt(2r) for comparison only.
TransversalResult random_transversal(const std::vector<PointSet>& sets, const Point& a,
                                     Rng& rng);

}  // namespace nodim
