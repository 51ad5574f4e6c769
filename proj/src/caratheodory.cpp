#include "nodim/caratheodory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nodim/enumeration.hpp"
#include "nodim/vec.hpp"

namespace nodim {
namespace {

double family_diameter(const std::vector<PointSet>& sets) {
  double d = 0.0;
  for (const auto& s : sets) d = std::max(d, s.diameter());
  return d;
}

void check_dimension(const std::vector<PointSet>& sets, const Point& a) {
  if (sets.empty()) throw std::invalid_argument("family is empty");
  for (const auto& s : sets)
    if (s.dimension() != (int)a.size())
      throw std::invalid_argument("set dimension does not match target point");
}

struct GreedyOutcome {
  std::vector<int> chosen;
  std::vector<double> trace;  // expectation of |sum of a-centred picks|^2, per fix
};

// Greedy scan minimizing the conditional expectation of |Σ (x_i - a)|^2 where
// x_i is drawn from set i with its weight vector. Sets are fixed from the last
// down to the first; within a set the lowest index wins ties. The expectation
// is evaluated in closed form from per-set weighted centroids/second moments,
// so each candidate costs O(d).
GreedyOutcome weighted_greedy(const WeightedFamily& family, const Point& a) {
  const int r = (int)family.sets.size();
  const int d = (int)a.size();

  // prefix quantities over the first s sets (a-centred coordinates):
  // pre_c = Σ c_i, pre_cc = Σ |c_i|^2, pre_s = Σ Σ_x α_i(x)|x|^2.
  std::vector<Point> pre_c(r + 1, zeros(d));
  std::vector<double> pre_cc(r + 1, 0.0), pre_s(r + 1, 0.0);
  for (int i = 0; i < r; ++i) {
    Point c = zeros(d);
    double sm = 0.0;
    const auto& pts = family.sets[i].points();
    const auto& w = family.weights[i];
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Point x = sub(pts[k], a);
      axpy(c, w[k], x);
      sm += w[k] * norm_sq(x);
    }
    pre_c[i + 1] = add(pre_c[i], c);
    pre_cc[i + 1] = pre_cc[i] + norm_sq(c);
    pre_s[i + 1] = pre_s[i] + sm;
  }

  // E over random sets [0,s) given the fixed tail sum F:
  //   pre_s[s] + |pre_c[s]|^2 - pre_cc[s] + 2 F.pre_c[s] + |F|^2.
  const auto expectation = [&](int s, const Point& F) {
    return pre_s[s] + norm_sq(pre_c[s]) - pre_cc[s] + 2.0 * dot(F, pre_c[s]) + norm_sq(F);
  };

  GreedyOutcome out;
  out.chosen.assign(r, 0);
  Point F = zeros(d);  // sum of fixed picks, a-centred
  out.trace.push_back(expectation(r, F));
  for (int s = r; s >= 1; --s) {
    const auto& pts = family.sets[s - 1].points();
    // score(x) = |F + x|^2 + 2 x.pre_c[s-1], dropping terms constant in x.
    const Point g = add(F, pre_c[s - 1]);
    int best = 0;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Point x = sub(pts[k], a);
      const double score = norm_sq(x) + 2.0 * dot(x, g);
      if (score < best_score) {
        best_score = score;
        best = (int)k;
      }
    }
    out.chosen[s - 1] = best;
    add_in_place(F, sub(pts[best], a));
    out.trace.push_back(expectation(s - 1, F));
  }
  return out;
}

// Clamp stray negatives from the min-norm solve and renormalize to sum 1.
std::vector<double> convexify(std::vector<double> w) {
  double sum = 0.0;
  for (double& v : w) {
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (sum <= 0.0) throw std::runtime_error("degenerate weight recovery");
  for (double& v : w) v /= sum;
  return w;
}

TransversalResult finish_from_greedy(const WeightedFamily& family, const Point& a,
                                     GreedyOutcome&& g) {
  const int r = (int)family.sets.size();
  TransversalResult res;
  res.chosen = std::move(g.chosen);
  res.expectation_trace = std::move(g.trace);
  res.method = "derandomized";
  res.chosen_points.reserve(r);
  for (int i = 0; i < r; ++i) res.chosen_points.push_back(family.sets[i][res.chosen[i]]);
  Point centroid = zeros(a.size());
  for (const auto& p : res.chosen_points) axpy(centroid, 1.0 / r, p);
  res.witness = centroid;
  res.witness_coefficients.assign(r, 1.0 / r);
  res.distance = dist(a, centroid);
  return res;
}

}  // namespace

WeightedFamily uniform_family(std::vector<PointSet> sets) {
  WeightedFamily f;
  f.weights.reserve(sets.size());
  for (const auto& s : sets) f.weights.emplace_back(s.size(), 1.0 / (double)s.size());
  f.sets = std::move(sets);
  return f;
}

void validate_weighted_family(const WeightedFamily& family) {
  if (family.sets.size() != family.weights.size())
    throw std::invalid_argument("weights/sets size mismatch");
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    const auto& w = family.weights[i];
    if (w.size() != family.sets[i].size())
      throw std::invalid_argument("weight vector length mismatch at set " + std::to_string(i));
    double sum = 0.0;
    for (double v : w) {
      if (!std::isfinite(v) || v < -1e-12)
        throw std::invalid_argument("negative weight in set " + std::to_string(i));
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("weights of set " + std::to_string(i) + " do not sum to 1");
  }
}

TransversalResult derandomized_transversal(const WeightedFamily& family, const Point& a) {
  validate_weighted_family(family);
  check_dimension(family.sets, a);
  const double scale = 1.0 + norm(a);
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    Point c = zeros(a.size());
    const auto& pts = family.sets[i].points();
    for (std::size_t k = 0; k < pts.size(); ++k) axpy(c, family.weights[i][k], pts[k]);
    if (dist(c, a) > 1e-9 * scale)
      throw std::invalid_argument("not a Carathéodory instance: set " + std::to_string(i) +
                                  " combines to a point " + std::to_string(dist(c, a)) +
                                  " away from a");
  }
  const double r = (double)family.sets.size();
  TransversalResult res = finish_from_greedy(family, a, weighted_greedy(family, a));
  res.bound = family_diameter(family.sets) / std::sqrt(2.0 * r);
  return res;
}

TransversalResult eta_perturbed_transversal(const std::vector<PointSet>& sets, const Point& a,
                                            double eta) {
  check_dimension(sets, a);
  if (!(eta >= 0.0)) throw std::invalid_argument("eta must be nonnegative");
  const double D = family_diameter(sets);
  const int r = (int)sets.size();

  WeightedFamily family;
  family.sets = sets;
  family.weights.reserve(r);
  for (int i = 0; i < r; ++i) {
    MinNormResult nr = nearest_hull_point(sets[i].points(), a);
    if (nr.distance > eta * D + 1e-9) {
      std::ostringstream msg;
      msg << "set " << i << " violates the perturbation hypothesis: hull distance "
          << nr.distance << " exceeds eta*D = " << eta * D;
      throw std::invalid_argument(msg.str());
    }
    family.weights.push_back(convexify(std::move(nr.coefficients)));
  }

  TransversalResult res = finish_from_greedy(family, a, weighted_greedy(family, a));
  // The guarantee is about conv T, so report the hull distance (never worse
  // than the centroid distance the greedy controls).
  MinNormResult hull = nearest_hull_point(res.chosen_points, a);
  res.witness = hull.nearest;
  res.witness_coefficients = hull.coefficients;
  res.distance = hull.distance;
  res.bound = D / std::sqrt(2.0 * r) * std::sqrt(1.0 + 2.0 * (r - 1) * eta * eta);
  return res;
}

TransversalResult frank_wolfe_transversal(const std::vector<PointSet>& sets, const Point& a,
                                          int t, const FrankWolfeOptions& options) {
  check_dimension(sets, a);
  const int r = (int)sets.size();
  if (t < 1 || t > r - 1) throw std::invalid_argument("need 1 <= t <= r-1");
  if (options.p1_index < 0 || options.p1_index >= (int)sets[0].size())
    throw std::invalid_argument("p1_index out of range");

  if (options.verify_hypothesis) {
    if (binomial_capped(r, t, 100000) > 100000)
      throw std::invalid_argument("hypothesis verification too expensive: C(r,t) > 1e5");
    for_each_combination(r, t, [&](const std::vector<int>& idx) {
      std::vector<Point> pool;
      for (int i : idx)
        for (const auto& p : sets[i].points()) pool.push_back(p);
      if (nearest_hull_point(pool, a).distance > 1e-7) {
        std::ostringstream msg;
        msg << "hypothesis violated: a is outside the hull of the union of sets {";
        for (std::size_t k = 0; k < idx.size(); ++k) msg << (k ? "," : "") << idx[k];
        msg << "}";
        throw std::invalid_argument(msg.str());
      }
      return true;
    });
  }

  TransversalResult res;
  res.method = "frank_wolfe";
  res.hypothesis_verified = options.verify_hypothesis;
  res.chosen.assign(r, -1);
  res.chosen[0] = options.p1_index;

  std::vector<Point> hull_pts = {sets[0][options.p1_index]};
  std::vector<int> pick_sets = {0};
  std::vector<double> partial_coeffs = {1.0};
  std::vector<bool> used(r, false);
  used[0] = true;
  Point q = hull_pts[0];
  res.contraction_log.push_back(dist(q, a));

  // Step j may only draw from the first j+t sets (still unused ones); t <= r-1
  // keeps j+t <= r. Ties go to the lowest set index, then lowest point index.
  for (int j = 1; j <= r - t; ++j) {
    const Point v = sub(a, q);
    int best_set = -1, best_pt = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < j + t; ++i) {
      if (used[i]) continue;
      const auto& pts = sets[i].points();
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const double score = dot(sub(pts[k], q), v);
        if (score > best_score) {
          best_score = score;
          best_set = i;
          best_pt = (int)k;
        }
      }
    }
    if (best_set < 0) throw std::runtime_error("eligibility pool empty");
    used[best_set] = true;
    res.chosen[best_set] = best_pt;
    hull_pts.push_back(sets[best_set][best_pt]);
    pick_sets.push_back(best_set);
    MinNormResult mn = nearest_hull_point(hull_pts, a);
    q = mn.nearest;
    partial_coeffs = mn.coefficients;
    res.contraction_log.push_back(mn.distance);
  }

  // The guarantee lives on the partial hull; completing the unused sets with
  // their first point cannot hurt it, so the witness stays where it is and
  // the completion points carry coefficient zero.
  res.witness = q;
  res.distance = res.contraction_log.back();
  for (int i = 0; i < r; ++i)
    if (res.chosen[i] < 0) res.chosen[i] = 0;
  res.chosen_points.reserve(r);
  for (int i = 0; i < r; ++i) res.chosen_points.push_back(sets[i][res.chosen[i]]);
  res.witness_coefficients.assign(r, 0.0);
  for (std::size_t k = 0; k < pick_sets.size(); ++k)
    res.witness_coefficients[pick_sets[k]] = partial_coeffs[k];

  res.bound = 2.0 * std::sqrt(std::log(4.0) / 3.0) * family_diameter(sets) /
              std::sqrt((double)(r - t + 1));
  return res;
}

TransversalResult single_set_caratheodory(const PointSet& P, const Point& a, int r) {
  if (P.dimension() != (int)a.size())
    throw std::invalid_argument("set dimension does not match target point");
  if (r < 1 || r > (int)P.size()) throw std::invalid_argument("need 1 <= r <= |P|");
  MinNormResult nr = nearest_hull_point(P.points(), a);
  if (nr.distance > 1e-7)
    throw std::invalid_argument("a is not in the convex hull of P (distance " +
                                std::to_string(nr.distance) + ")");
  const std::vector<double> w = convexify(std::move(nr.coefficients));

  WeightedFamily family;
  family.sets.assign(r, P);
  family.weights.assign(r, w);
  GreedyOutcome g = weighted_greedy(family, a);

  std::vector<bool> in_q(P.size(), false);
  std::vector<int> subset;
  for (int idx : g.chosen)
    if (!in_q[idx]) {
      in_q[idx] = true;
      subset.push_back(idx);
    }
  // Pad with the unused points nearest to a; extra points never hurt the
  // hull distance.
  while ((int)subset.size() < r) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < P.size(); ++k) {
      if (in_q[k]) continue;
      const double d = dist(P[k], a);
      if (d < best_d) {
        best_d = d;
        best = (int)k;
      }
    }
    in_q[best] = true;
    subset.push_back(best);
  }
  std::sort(subset.begin(), subset.end());

  TransversalResult res;
  res.method = "derandomized";
  res.expectation_trace = std::move(g.trace);
  res.chosen = subset;
  for (int idx : subset) res.chosen_points.push_back(P[idx]);
  MinNormResult hull = nearest_hull_point(res.chosen_points, a);
  res.witness = hull.nearest;
  res.witness_coefficients = hull.coefficients;
  res.distance = hull.distance;
  res.bound = P.diameter() / std::sqrt(2.0 * r);
  return res;
}

BestSubset brute_force_best_subset(const PointSet& P, const Point& a, int r) {
  if (P.dimension() != (int)a.size())
    throw std::invalid_argument("set dimension does not match target point");
  const int n = (int)P.size();
  if (r < 1 || r > n) throw std::invalid_argument("need 1 <= r <= |P|");
  if (binomial_capped(n, r, 1000000) > 1000000)
    throw std::invalid_argument("too many subsets: C(|P|, r) > 1e6");

  BestSubset best;
  best.distance = std::numeric_limits<double>::infinity();
  std::vector<Point> buf(r);
  for_each_combination(n, r, [&](const std::vector<int>& idx) {
    for (int k = 0; k < r; ++k) buf[k] = P[idx[k]];
    const double d = nearest_hull_point(buf, a).distance;
    if (d < best.distance) {
      best.distance = d;
      best.subset = idx;
    }
    return true;
  });
  return best;
}

TransversalResult random_transversal(const std::vector<PointSet>& sets, const Point& a,
                                     Rng& rng) {
  check_dimension(sets, a);
  const int r = (int)sets.size();
  TransversalResult res;
  res.method = "random";
  res.chosen.reserve(r);
  for (const auto& s : sets) res.chosen.push_back(rng.uniform_int(0, (int)s.size() - 1));
  Point centroid = zeros(a.size());
  for (int i = 0; i < r; ++i) {
    res.chosen_points.push_back(sets[i][res.chosen[i]]);
    axpy(centroid, 1.0 / r, res.chosen_points.back());
  }
  res.witness = centroid;
  res.witness_coefficients.assign(r, 1.0 / r);
  res.distance = dist(a, centroid);
  res.bound = family_diameter(sets) / std::sqrt(2.0 * r);
  return res;
}

}  // namespace nodim
