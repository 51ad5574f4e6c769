#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nodim/geometry.hpp"

namespace nodim {

// F_1..F_k plus the anchor ball B(b, 1) the hypotheses are stated against.
struct BodyFamily {
  std::vector<std::vector<ConvexBody>> families;
  Ball anchor;
};

void validate_body_family(const BodyFamily& bf);

struct KwiseReport {
  bool ok = true;
  std::vector<std::vector<int>> failures;  // k-subsets J with K(J) missing the ball
};

// Checks that every k-wise intersection K(J) meets B(b,1). Guarded by the
// number of subsets; an undecided feasibility verdict is rethrown with the
// offending J spelled out.
KwiseReport check_kwise_hypothesis(const std::vector<ConvexBody>& bodies, int k,
                                   const Point& b);

struct HellyCenterReport {
  Point center;
  double radius = 0.0;        // max_i d(center, K_i)
  double bound_sqrt_k = 0.0;  // 1/sqrt(k)
  double bound_precise = 0.0; // sqrt((n-k)/(k(n-1)))
  bool pass_sqrt_k = false;
  bool pass_precise = false;
};

// Requires check_kwise_hypothesis to pass; reports the minimax centre of the
// whole family against both radius bounds (1e-6 slack).
HellyCenterReport helly_center(const std::vector<ConvexBody>& bodies, int k, const Point& b);

struct CountingReport {
  std::uint64_t total_transversals = 0;
  std::uint64_t far_transversals = 0;   // d(q, K(T)) > rho, empty counts as far
  std::uint64_t undecided = 0;          // feasibility solver could not commit
  std::uint64_t product_bound = 0;      // prod of the estimated m_i
  double rho = 0.0;                     // sqrt(sum rho_i^2)
  std::vector<std::uint64_t> per_family_m;  // probe-set estimates, see notes
};

// Exhaustive transversal count. m_i is estimated as the minimum over a probe
// set (q, body projections of q, 100 seeded samples of the anchor ball) of
// the number of bodies in F_i farther than rho_i. The true m_i quantifies
// over every point of space, so the estimate only upper-bounds it;
// product_bound is a diagnostic floor that holds on the constructed tight
// instances, not a certified one.
CountingReport count_far_transversals(const BodyFamily& bf, const Point& q,
                                      const std::vector<double>& rhos);

// Size of the largest subfamily with a nonempty common intersection
// (exhaustive over subsets, guarded; `origin` seeds the feasibility solver).
int largest_intersecting_subfamily(const std::vector<ConvexBody>& family, const Point& origin);

struct FractionalWitness {
  double alpha = 0.0;             // measured fraction, see alpha_convention
  double beta_required = 0.0;     // 1 - (1-alpha)^(1/k)
  std::string alpha_convention;   // "transversals" or "ordered_distinct"
  double alpha_with_repeats = 0.0;  // single-family companion count (n^k tuples)
  bool found = false;
  Point q;
  int family_index = -1;
  int hit_count = 0;
  double hit_fraction = 0.0;
};

// Measures alpha over all transversals, then hunts for a ball B(q, 1/sqrt(k))
// meeting at least beta*n_i bodies of some family. The search is best-effort
// (candidates: anchor centre, intersection witnesses, projections, per-family
// minimax centres, seeded ball samples); a miss is reported, never treated as
// a refutation.
FractionalWitness fractional_helly_witness(const BodyFamily& bf);

// Single-family variant: alpha over ordered k-tuples of distinct bodies, the
// with-repetition count (all n^k tuples) emitted alongside.
FractionalWitness fractional_single_family(const std::vector<ConvexBody>& family, int k,
                                           const Ball& anchor);

// sqrt((n-1)(n-k)/k), 1 <= k <= n-1.
double simplex_lambda(int n, int k);

enum class FaceMode {
  Affine,  // distance to the affine span of each (k-1)-face
  Cone     // distance to the outer facet cone attached to each (k-1)-face
};

struct FaceBallConfig {
  int restarts = 6;
  int iterations = 2500;
  std::uint64_t seed = 1;
};

struct FaceBallReport {
  Point center;
  double radius = 0.0;
  double inradius = 0.0;
  double ratio = 0.0;  // radius / inradius, >= simplex_lambda(n,k) - 1e-5
  Point incenter;
};

// Smallest ball meeting every (k-1)-face object of a nondegenerate simplex.
// Inradius comes from the facet-height identity (exact volumes), the centre
// from multi-start subgradient descent. Throws if the optimised ratio ever
// undercuts the simplex bound, which would indicate a volume or solver bug.
FaceBallReport min_ball_meeting_faces(const PointSet& vertices, int k, FaceMode mode,
                                      const FaceBallConfig& cfg = {});

}  // namespace nodim
