// Acceptance gate: one pass/fail line per shipped guarantee, exercised at
// desk scale with fixed seeds. Exits nonzero when any line fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nodim/caratheodory.hpp"
#include "nodim/enumeration.hpp"
#include "nodim/epsnet.hpp"
#include "nodim/geometry.hpp"
#include "nodim/helly.hpp"
#include "nodim/instance.hpp"
#include "nodim/linalg.hpp"
#include "nodim/rng.hpp"
#include "nodim/tverberg.hpp"
#include "nodim/vec.hpp"

namespace {

using namespace nodim;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

WeightedFamily make_common_point_family(Rng& rng, int r, int max_n, int max_d, Point* a_out) {
  GenParams p;
  p.r = r;
  p.n = rng.uniform_int(2, max_n);
  p.d = rng.uniform_int(2, max_d);
  const InstanceFile inst = generate_instance("random_weighted", p, rng.next_u64());
  return instance_weighted(inst, a_out);
}

// 1: greedy transversal beats the averaging bound on 1000 random weighted
//    families, under a minute end to end
Outcome criterion_transversal_bound() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(101);
  int violations = 0;
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int r = rng.uniform_int(2, 32);
    Point a;
    const WeightedFamily family = make_common_point_family(rng, r, 32, 64, &a);
    const TransversalResult res = derandomized_transversal(family, a);
    if (!(res.distance < res.bound)) ++violations;
    if (res.bound > 0.0) worst_ratio = std::max(worst_ratio, res.distance / res.bound);
  }
  const double elapsed = seconds_since(t0);
  Outcome out;
  out.pass = violations == 0 && elapsed < 60.0;
  out.detail = "1000 weighted families, violations " + std::to_string(violations) +
               ", worst distance/bound " + fmt(worst_ratio) + ", " + fmt(elapsed) + " s";
  return out;
}

// 2: best r-subset distance from the regular-simplex centroid matches the
//    closed form sqrt(1/(2r) - 1/(2n))
Outcome criterion_simplex_tightness() {
  double worst = 0.0;
  for (int n = 4; n <= 10; ++n) {
    const PointSet verts{regular_simplex(n, 1.0)};
    const Point a = zeros(n);
    for (int r = 2; r <= n - 1; ++r) {
      const BestSubset best = brute_force_best_subset(verts, a, r);
      const double expected = std::sqrt(1.0 / (2.0 * r) - 1.0 / (2.0 * n));
      worst = std::max(worst, std::abs(best.distance - expected));
    }
  }
  Outcome out;
  out.pass = worst <= 1e-9;
  out.detail = "n = 4..10, r = 2..n-1, worst closed-form gap " + fmt(worst);
  return out;
}

// 3: iterative transversal respects its bound and contracts step by step
Outcome criterion_frank_wolfe() {
  Rng rng(303);
  int violations = 0, contraction_breaks = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int t = 1 + trial % 3;
    const int r = rng.uniform_int(t + 1, 12);
    Point a;
    const WeightedFamily family = make_common_point_family(rng, r, 8, 16, &a);
    FrankWolfeOptions options;
    options.verify_hypothesis = trial % 25 == 0;  // spot-check the precondition
    const TransversalResult res = frank_wolfe_transversal(family.sets, a, t, options);
    double diam = 0.0;  // largest single-set diameter, the bound's scale
    for (const PointSet& s : family.sets) diam = std::max(diam, s.diameter());
    const double expected_bound = 2.0 * std::sqrt(std::log(4.0) / 3.0) * diam /
                                  std::sqrt(static_cast<double>(r - t + 1));
    if (std::abs(res.bound - expected_bound) > 1e-9 * std::max(1.0, expected_bound))
      ++violations;
    if (!(res.distance <= res.bound + 1e-12)) ++violations;
    for (std::size_t j = 0; j + 1 < res.contraction_log.size(); ++j) {
      const double qj = res.contraction_log[j];
      const double next = (1.0 - qj * qj / (2.0 * diam * diam)) * qj;
      if (!(res.contraction_log[j + 1] <= next + 1e-9)) ++contraction_breaks;
    }
  }
  Outcome out;
  out.pass = violations == 0 && contraction_breaks == 0;
  out.detail = "500 instances (t = 1..3), bound violations " + std::to_string(violations) +
               ", contraction breaks " + std::to_string(contraction_breaks);
  return out;
}

// 4: balanced halving displacement under the closed-form bound; the greedy
//    choice never exceeds the exhaustive mean on small families
Outcome criterion_halving() {
  Rng rng(404);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    GenParams p;
    p.r = rng.uniform_int(2, 16);
    p.n = rng.uniform_int(2, 16);
    p.d = rng.uniform_int(2, 8);
    const InstanceFile inst = generate_instance("random_colored", p, rng.next_u64());
    const ColoredFamily family = instance_colored(inst);
    const HalvingResult res = balanced_halving(family);
    if (!(res.displacement <= res.bound + 1e-12)) ++violations;
  }
  // exhaustive cross-check: E |c(Q0) - c(P)|^2 splits over colours because the
  // per-colour draws are independent and unbiased
  int mean_breaks = 0;
  for (int trial = 0; trial < 60; ++trial) {
    GenParams p;
    p.r = rng.uniform_int(2, 8);
    p.n = rng.uniform_int(2, 4);
    p.d = rng.uniform_int(2, 5);
    const InstanceFile inst = generate_instance("random_colored", p, rng.next_u64());
    const ColoredFamily family = instance_colored(inst);
    const int k = p.n, h = k / 2, r = p.r;
    if (h == 0) continue;
    double mean_sq = 0.0;
    for (const PointSet& color : family.colors) {
      double color_mean = 0.0;
      int subsets = 0;
      for_each_combination(k, h, [&](const std::vector<int>& S) {
        Point c = zeros(color.dimension());
        for (int idx : S) add_in_place(c, color[static_cast<std::size_t>(idx)]);
        scale_in_place(c, 1.0 / h);
        color_mean += dist_sq(c, color.centroid());
        ++subsets;
        return true;
      });
      mean_sq += color_mean / subsets;
    }
    mean_sq /= static_cast<double>(r) * r;
    const HalvingResult res = balanced_halving(family);
    if (!(res.displacement * res.displacement <= mean_sq * (1.0 + 1e-9) + 1e-12)) ++mean_breaks;
  }
  Outcome out;
  out.pass = violations == 0 && mean_breaks == 0;
  out.detail = "1000 families, bound violations " + std::to_string(violations) +
               "; greedy above exhaustive mean " + std::to_string(mean_breaks) + " of 60";
  return out;
}

// 5: colored partition bound on random families, plus the printed two-factor
//    lower-bound formula checked against exhaustive partitions of simplices
Outcome criterion_colored_tverberg() {
  Rng rng(505);
  int violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    GenParams p;
    p.r = rng.uniform_int(2, 8);
    p.n = rng.uniform_int(2, 6);
    p.d = rng.uniform_int(2, 8);
    const InstanceFile inst = generate_instance("random_colored", p, rng.next_u64());
    const ColoredFamily family = instance_colored(inst);
    std::vector<Point> all;
    for (const PointSet& c : family.colors)
      all.insert(all.end(), c.points().begin(), c.points().end());
    const double diam = PointSet(all).diameter();
    const double formula = (1.0 + std::sqrt(2.0)) * diam / std::sqrt(static_cast<double>(p.r));
    const TverbergPartition part = colored_tverberg(family);
    if (!(part.max_distance <= formula + 1e-9)) ++violations;
  }

  // second clause: the two-factor formula must undercut the exhaustive
  // optimum on regular simplices with n = k*r vertices
  struct Pair {
    int k, r;
  };
  const std::vector<Pair> pairs{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {4, 2}};
  int formula_breaks = 0;
  std::string first_break;
  for (const Pair pr : pairs) {
    const int n = pr.k * pr.r;
    const PointSet verts{regular_simplex(n, 1.0)};
    const BruteTverberg brute = brute_force_tverberg(verts, pr.k);
    const double formula = std::sqrt(((pr.k - 1.0) / pr.k) * ((n - 1.0) / (n - 2.0))) /
                           std::sqrt(2.0 * pr.r);
    if (!(formula <= brute.value + 1e-9)) {
      ++formula_breaks;
      if (first_break.empty()) {
        const double corrected = std::sqrt((pr.k - 1.0) / pr.k) / std::sqrt(2.0 * pr.r);
        first_break = " [k=" + std::to_string(pr.k) + " r=" + std::to_string(pr.r) +
                      ": formula " + fmt(formula) + " > exhaustive " + fmt(brute.value) +
                      "; dropping the (n-1)/(n-2) factor gives " + fmt(corrected) + "]";
      }
    }
  }
  Outcome out;
  out.pass = violations == 0 && formula_breaks == 0;
  out.detail = "500 families, bound violations " + std::to_string(violations) +
               "; two-factor lower-bound formula broken on " + std::to_string(formula_breaks) +
               " of " + std::to_string(pairs.size()) + " simplex cases" + first_break;
  return out;
}

// 6: uncoloured partition constants, general and divisible
Outcome criterion_uncolored_tverberg() {
  Rng rng(606);
  int violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = rng.uniform_int(4, 24);
    int k = rng.uniform_int(2, std::max(2, n / 2));
    if (trial % 2 == 0) {  // force a divisor so both constants get exercised
      std::vector<int> divisors;
      for (int cand = 2; cand <= n; ++cand)
        if (n % cand == 0) divisors.push_back(cand);
      k = divisors[static_cast<std::size_t>(rng.uniform_int(
          0, static_cast<int>(divisors.size()) - 1))];
    }
    GenParams p;
    p.n = n;
    p.d = rng.uniform_int(2, 8);
    const InstanceFile inst = generate_instance("random_cloud", p, rng.next_u64());
    const PointSet pts = instance_points(inst);
    const TverbergPartition part = uncolored_tverberg(pts, k);
    const double c = n % k == 0 ? 1.0 + std::sqrt(2.0) : 2.0 + std::sqrt(2.0);
    const double formula = c * std::sqrt(static_cast<double>(k) / n) * pts.diameter();
    if (!(part.max_distance <= formula + 1e-9)) ++violations;
  }
  Outcome out;
  out.pass = violations == 0;
  out.detail = "500 clouds, violations " + std::to_string(violations);
  return out;
}

// 7: centre radius exact on the tangent-facet instances, bounded on random
//    families that pass the k-wise check
Outcome criterion_helly_center() {
  double worst_gap = 0.0;
  for (int n = 3; n <= 8; ++n) {
    for (int k = 1; k <= n - 1; ++k) {
      GenParams p;
      p.n = n;
      p.k = k;
      const InstanceFile inst = generate_instance("helly_tight", p, 1);
      const BodyFamily bf = instance_bodies(inst);
      const HellyCenterReport rep = helly_center(bf.families[0], k, bf.anchor.center);
      const double expected = std::sqrt(static_cast<double>(n - k) /
                                        (static_cast<double>(k) * (n - 1)));
      worst_gap = std::max(worst_gap, std::abs(rep.radius - expected));
    }
  }
  Rng rng(707);
  int random_violations = 0, hypothesis_rejects = 0;
  for (int trial = 0; trial < 200; ++trial) {
    GenParams p;
    p.n = rng.uniform_int(3, 8);
    p.d = rng.uniform_int(2, 6);
    const int k = rng.uniform_int(1, std::min(4, p.n));
    const InstanceFile inst = generate_instance("random_helly", p, rng.next_u64());
    const BodyFamily bf = instance_bodies(inst);
    const KwiseReport check = check_kwise_hypothesis(bf.families[0], k, bf.anchor.center);
    if (!check.ok) {
      ++hypothesis_rejects;
      continue;
    }
    const HellyCenterReport rep = helly_center(bf.families[0], k, bf.anchor.center);
    if (!rep.pass_sqrt_k) ++random_violations;
  }
  Outcome out;
  out.pass = worst_gap <= 1e-5 && random_violations == 0 && hypothesis_rejects == 0;
  out.detail = "tangent instances n = 3..8 worst radius gap " + fmt(worst_gap) +
               "; random families over 1/sqrt(k): " + std::to_string(random_violations) +
               " of 200, precondition rejects " + std::to_string(hypothesis_rejects);
  return out;
}

// 8: far-transversal count equals the declared product exactly
Outcome criterion_far_count() {
  Rng rng(808);
  int mismatches = 0, cases = 0;
  for (int k = 1; k <= 4; ++k) {
    for (int rep = 0; rep < 5; ++rep) {
      GenParams p;
      p.k = k;
      for (int i = 0; i < k; ++i) {
        p.m.push_back(rep == 0 ? 4 : rng.uniform_int(1, 4));
        p.sizes.push_back(p.m.back() + rng.uniform_int(1, 2));
        p.rho.push_back(rng.uniform(0.3, 0.8));
      }
      const InstanceFile inst = generate_instance("hyperplane_family", p, rng.next_u64());
      const BodyFamily bf = instance_bodies(inst);
      const CountingReport count = count_far_transversals(bf, bf.anchor.center, inst.rhos);
      std::uint64_t product = 1;
      for (int mi : p.m) product *= static_cast<std::uint64_t>(mi);
      ++cases;
      if (count.far_transversals != product || count.undecided != 0) ++mismatches;
    }
  }
  Outcome out;
  out.pass = mismatches == 0;
  out.detail = std::to_string(cases) + " plate constructions (k <= 4, m_i <= 4), mismatches " +
               std::to_string(mismatches);
  return out;
}

// 9: the parallel-plate family pins its largest intersecting subfamily at
//    beta * n_i + 1 per family
Outcome criterion_largest_subfamily() {
  int mismatches = 0, cases = 0;
  for (int k = 2; k <= 4; ++k) {
    GenParams p;
    p.k = k;
    const InstanceFile inst = generate_instance("fractional_tight", p, 1);
    const BodyFamily bf = instance_bodies(inst);
    const double beta = std::stod(inst.metadata.at("beta"));
    for (const auto& family : bf.families) {
      const int expected =
          static_cast<int>(std::lround(beta * static_cast<double>(family.size()))) + 1;
      const int got = largest_intersecting_subfamily(family, bf.anchor.center);
      ++cases;
      if (got != expected) ++mismatches;
    }
  }
  Outcome out;
  out.pass = mismatches == 0;
  out.detail = std::to_string(cases) + " families across k = 2..4, mismatches " +
               std::to_string(mismatches);
  return out;
}

// 10: face-ball ratio never undercuts the simplex constant, equality on the
//     regular simplex, closed forms spot-checked
Outcome criterion_face_ball() {
  Outcome out;
  if (std::abs(simplex_lambda(3, 1) - 2.0) > 1e-12 ||
      std::abs(simplex_lambda(4, 2) - std::sqrt(3.0)) > 1e-12) {
    out.detail = "closed-form lambda values broken";
    return out;
  }
  double worst_regular = 0.0;
  for (int n = 3; n <= 6; ++n) {
    const PointSet verts{regular_simplex(n, 1.0)};
    for (int k = 1; k <= n - 1; ++k) {
      for (const FaceMode mode : {FaceMode::Affine, FaceMode::Cone}) {
        FaceBallConfig cfg;
        cfg.restarts = 3;
        cfg.iterations = 200;
        const FaceBallReport rep = min_ball_meeting_faces(verts, k, mode, cfg);
        worst_regular = std::max(worst_regular, std::abs(rep.ratio - simplex_lambda(n, k)));
      }
    }
  }
  Rng rng(1010);
  int undercuts = 0, simplices = 0;
  while (simplices < 100) {
    const int n = rng.uniform_int(3, 6);
    std::vector<Point> verts;
    for (int i = 0; i < n; ++i) {
      Point v(static_cast<std::size_t>(n - 1));
      for (double& c : v) c = rng.gaussian();
      verts.push_back(std::move(v));
    }
    try {
      for (int k = 1; k <= n - 1; ++k) {
        for (const FaceMode mode : {FaceMode::Affine, FaceMode::Cone}) {
          FaceBallConfig cfg;
          cfg.restarts = 2;
          cfg.iterations = 60;
          const FaceBallReport rep = min_ball_meeting_faces(PointSet(verts), k, mode, cfg);
          if (!(rep.ratio >= simplex_lambda(n, k) - 1e-5)) ++undercuts;
        }
      }
    } catch (const std::invalid_argument&) {
      continue;  // degenerate draw, resample
    }
    ++simplices;
  }
  out.pass = worst_regular <= 1e-5 && undercuts == 0;
  out.detail = "regular equality gap " + fmt(worst_regular) + "; " +
               std::to_string(undercuts) + " undercuts on 100 random simplices";
  return out;
}

// 11: net accounting (size cap, per-iteration deletion floor, certification)
//     and the selection guarantee
Outcome criterion_nets_and_selection() {
  Rng rng(1111);
  int breaks = 0;
  std::string note;
  struct NetCase {
    int n, r;
    double eps;
    ViolatorMode mode;
  };
  const std::vector<NetCase> cases{
      {12, 2, 1.0 / 3.0, ViolatorMode::Exhaustive}, {10, 2, 0.4, ViolatorMode::Exhaustive},
      {12, 3, 0.5, ViolatorMode::Exhaustive},       {9, 2, 0.5, ViolatorMode::Exhaustive},
      {30, 2, 0.2, ViolatorMode::Heuristic},        {25, 3, 0.3, ViolatorMode::Heuristic}};
  for (const NetCase& nc : cases) {
    GenParams p;
    p.n = nc.n;
    p.d = rng.uniform_int(2, 5);
    const InstanceFile inst = generate_instance("random_cloud", p, rng.next_u64());
    const PointSet pts = instance_points(inst);
    const EpsNetResult res = weak_epsnet(pts, nc.r, nc.eps, nc.mode);
    const double size_cap =
        std::pow(static_cast<double>(nc.r), nc.r) * std::pow(nc.eps, -nc.r);
    if (!(static_cast<double>(res.net.size()) <= size_cap + 1e-9)) ++breaks;
    if (nc.mode == ViolatorMode::Exhaustive) {
      const int m = static_cast<int>(std::ceil(nc.eps * nc.n - 1e-12));
      const double floor_per_iter =
          std::pow(static_cast<double>(nc.r), -nc.r) * binomial_double(m, nc.r);
      for (const EpsNetIteration& it : res.violator_log)
        if (!(static_cast<double>(it.deleted_tuples) >= floor_per_iter - 1e-9)) ++breaks;
      if (!res.certified) ++breaks;
      // independent certification: every m-subset hull must approach the net
      bool uncovered = false;
      for_each_combination(nc.n, m, [&](const std::vector<int>& S) {
        std::vector<Point> hull_pts;
        for (int idx : S) hull_pts.push_back(pts[static_cast<std::size_t>(idx)]);
        double best = 1e300;
        for (const Point& q : res.net)
          best = std::min(best, nearest_hull_point(hull_pts, q).distance);
        if (best > res.radius + 1e-9) {
          uncovered = true;
          return false;
        }
        return true;
      });
      if (uncovered) {
        ++breaks;
        note = " [uncovered subset at n=" + std::to_string(nc.n) + "]";
      }
    }
  }
  int selection_breaks = 0;
  for (int trial = 0; trial < 30; ++trial) {
    GenParams p;
    p.n = rng.uniform_int(6, 12);
    p.d = rng.uniform_int(2, 5);
    const int r = rng.uniform_int(2, 4);
    const InstanceFile inst = generate_instance("random_cloud", p, rng.next_u64());
    const SelectionResult sel = selection_point(instance_points(inst), r);
    const double floor =
        std::ceil(std::pow(static_cast<double>(r), -r) * binomial_double(p.n, r) - 1e-9);
    if (!sel.verified_hits || static_cast<double>(*sel.verified_hits) < floor)
      ++selection_breaks;
  }
  Outcome out;
  out.pass = breaks == 0 && selection_breaks == 0;
  out.detail = std::to_string(cases.size()) + " net runs, accounting breaks " +
               std::to_string(breaks) + note + "; selection floor breaks " +
               std::to_string(selection_breaks) + " of 30";
  return out;
}

// 12: projection onto a hull agrees with brute-force face enumeration
Outcome criterion_min_norm_oracle() {
  Rng rng(1212);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int count = rng.uniform_int(1, 6);
    const int d = rng.uniform_int(1, 4);
    std::vector<Point> pts;
    for (int i = 0; i < count; ++i) {
      Point v(static_cast<std::size_t>(d));
      for (double& c : v) c = rng.gaussian();
      pts.push_back(std::move(v));
    }
    Point a(static_cast<std::size_t>(d));
    for (double& c : a) c = 1.2 * rng.gaussian();

    // exhaustive oracle: affine minimiser of every affinely independent
    // subset, kept when its barycentric coordinates are nonnegative
    double oracle = 1e300;
    const int subsets = 1 << count;
    for (int mask = 1; mask < subsets; ++mask) {
      std::vector<Point> S;
      for (int i = 0; i < count; ++i)
        if (mask >> i & 1) S.push_back(pts[static_cast<std::size_t>(i)]);
      const int m = static_cast<int>(S.size());
      if (m == 1) {
        oracle = std::min(oracle, dist(S[0], a));
        continue;
      }
      const int b = m - 1;
      std::vector<double> gram(static_cast<std::size_t>(b * b));
      std::vector<double> rhs(static_cast<std::size_t>(b));
      const Point diff_a = sub(a, S[0]);
      std::vector<Point> basis;
      for (int i = 1; i < m; ++i) basis.push_back(sub(S[static_cast<std::size_t>(i)], S[0]));
      for (int i = 0; i < b; ++i) {
        for (int j = 0; j < b; ++j)
          gram[static_cast<std::size_t>(i * b + j)] =
              dot(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
        rhs[static_cast<std::size_t>(i)] = dot(basis[static_cast<std::size_t>(i)], diff_a);
      }
      const auto x = lu_solve(gram, rhs, b);
      if (!x) continue;  // affinely dependent; covered by sub-subsets
      double lambda0 = 1.0;
      bool feasible = true;
      for (double xi : *x) {
        lambda0 -= xi;
        feasible = feasible && xi >= -1e-9;
      }
      feasible = feasible && lambda0 >= -1e-9;
      if (!feasible) continue;
      Point q = S[0];
      for (int i = 0; i < b; ++i) axpy(q, (*x)[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(i)]);
      oracle = std::min(oracle, dist(q, a));
    }

    const double solver = nearest_hull_point(pts, a).distance;
    worst = std::max(worst, std::abs(solver - oracle));
  }
  Outcome out;
  out.pass = worst <= 1e-6;
  out.detail = "500 instances (|P| <= 6, d <= 4), worst oracle gap " + fmt(worst);
  return out;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries{
      {"transversal distance under the averaging bound", criterion_transversal_bound},
      {"regular-simplex subset distance closed form", criterion_simplex_tightness},
      {"iterative transversal bound and contraction", criterion_frank_wolfe},
      {"balanced halving bound and exhaustive mean", criterion_halving},
      {"colored partition bound and simplex lower-bound formula", criterion_colored_tverberg},
      {"uncolored partition constants", criterion_uncolored_tverberg},
      {"intersection centre radius, tight and random", criterion_helly_center},
      {"far transversal count equals the plate product", criterion_far_count},
      {"largest intersecting subfamily at the plate threshold", criterion_largest_subfamily},
      {"face-ball ratio against the simplex constant", criterion_face_ball},
      {"net size, deletion floor, certification, selection floor", criterion_nets_and_selection},
      {"hull projection against face enumeration", criterion_min_norm_oracle},
  };
  int failures = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      out = entries[i].run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("unexpected exception: ") + e.what();
    }
    const double elapsed = seconds_since(t0);
    std::printf("criterion %2zu: %s  %s (%s; %.1f s)\n", i + 1, out.pass ? "PASS" : "FAIL",
                entries[i].label, out.detail.c_str(), elapsed);
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  if (failures > 0) std::printf("%d of 12 criteria failing\n", failures);
  return failures == 0 ? 0 : 1;
}
