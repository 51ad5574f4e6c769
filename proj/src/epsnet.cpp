#include "nodim/epsnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nodim/enumeration.hpp"
#include "nodim/rng.hpp"
#include "nodim/tverberg.hpp"

namespace nodim {

namespace {

constexpr double kCoverSlack = 1e-9;
constexpr std::uint64_t kSubsetGuard = 1000000;
constexpr std::uint64_t kVerifyGuard = 100000;

std::vector<Point> gather(const PointSet& points, const std::vector<int>& idx) {
  std::vector<Point> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(points[static_cast<std::size_t>(i)]);
  return out;
}

double hull_distance(const std::vector<Point>& hull_pts, const Point& from) {
  return nearest_hull_point(hull_pts, from).distance;
}

}  // namespace

double selection_radius_factor(int r) {
  if (r < 2) throw std::invalid_argument("radius factor needs r >= 2");
  const double gamma = 2.0 + std::sqrt(2.0);
  return std::sqrt(1.0 + 2.0 * ((r - 1.0) / r) * gamma * gamma) / std::sqrt(2.0);
}

SelectionResult selection_point(const PointSet& points, int r) {
  const int n = static_cast<int>(points.size());
  if (r < 2 || r > n)
    throw std::invalid_argument("selection needs 2 <= r <= n, got " + std::to_string(r));

  const double diam = points.diameter();
  SelectionResult out;
  out.radius = 3.5 * diam / std::sqrt(static_cast<double>(r));
  out.hit_lower_bound = binomial_double(n, r) * std::pow(static_cast<double>(r), -r);

  const int k = n / r;
  if (k >= 2) {
    TverbergConfig cfg;
    cfg.recenter = true;
    const TverbergPartition part = uncolored_tverberg(points, k, cfg);
    out.q = part.recentered ? part.recentered_center : part.center;
  } else {
    out.q = points.centroid();  // single part: its hull holds the centroid
  }

  if (binomial_capped(n, r, kVerifyGuard) <= kVerifyGuard) {
    std::uint64_t hits = 0;
    for_each_combination(n, r, [&](const std::vector<int>& tuple) {
      if (hull_distance(gather(points, tuple), out.q) <= out.radius + kCoverSlack) ++hits;
      return true;
    });
    if (static_cast<double>(hits) < out.hit_lower_bound - 1e-9)
      throw std::runtime_error("selection point covers fewer tuples than guaranteed");
    out.verified_hits = hits;
  }
  return out;
}

namespace {

// alive r-subsets, flattened; only materialized within the guard
struct TupleTracker {
  int r = 0;
  std::vector<int> flat;
  std::vector<char> alive;

  static std::optional<TupleTracker> make(int n, int r) {
    if (binomial_capped(n, r, kSubsetGuard) > kSubsetGuard) return std::nullopt;
    TupleTracker t;
    t.r = r;
    for_each_combination(n, r, [&](const std::vector<int>& tuple) {
      t.flat.insert(t.flat.end(), tuple.begin(), tuple.end());
      return true;
    });
    t.alive.assign(t.flat.size() / static_cast<std::size_t>(r), 1);
    return t;
  }

  std::uint64_t kill_covered(const PointSet& points, const Point& q, double radius) {
    std::uint64_t killed = 0;
    std::vector<Point> pts(static_cast<std::size_t>(r));
    for (std::size_t t = 0; t < alive.size(); ++t) {
      if (!alive[t]) continue;
      for (int j = 0; j < r; ++j)
        pts[static_cast<std::size_t>(j)] =
            points[static_cast<std::size_t>(flat[t * static_cast<std::size_t>(r) +
                                                  static_cast<std::size_t>(j)])];
      if (hull_distance(pts, q) <= radius + kCoverSlack) {
        alive[t] = 0;
        ++killed;
      }
    }
    return killed;
  }
};

bool is_violator(const PointSet& points, const std::vector<int>& subset,
                 const std::vector<Point>& net, double radius) {
  const std::vector<Point> hull_pts = gather(points, subset);
  for (const Point& f : net)
    if (hull_distance(hull_pts, f) <= radius + kCoverSlack) return false;
  return true;
}

std::optional<std::vector<int>> find_violator_exhaustive(const PointSet& points, int m,
                                                         const std::vector<Point>& net,
                                                         double radius) {
  const int n = static_cast<int>(points.size());
  std::optional<std::vector<int>> found;
  for_each_combination(n, m, [&](const std::vector<int>& subset) {
    if (is_violator(points, subset, net, radius)) {
      found = subset;
      return false;
    }
    return true;
  });
  return found;
}

std::optional<std::vector<int>> find_violator_heuristic(const PointSet& points, int m,
                                                        const std::vector<Point>& net,
                                                        double radius, Rng& rng) {
  const int n = static_cast<int>(points.size());
  // farthest-from-net points first
  std::vector<std::pair<double, int>> ranked;
  for (int i = 0; i < n; ++i) {
    double d = std::numeric_limits<double>::infinity();
    for (const Point& f : net)
      d = std::min(d, dist(points[static_cast<std::size_t>(i)], f));
    ranked.emplace_back(-d, i);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<int> greedy;
  for (int j = 0; j < m; ++j) greedy.push_back(ranked[static_cast<std::size_t>(j)].second);
  std::sort(greedy.begin(), greedy.end());
  if (is_violator(points, greedy, net, radius)) return greedy;

  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (int trial = 0; trial < 40; ++trial) {
    rng.shuffle(pool);
    std::vector<int> pick(pool.begin(), pool.begin() + m);
    std::sort(pick.begin(), pick.end());
    if (is_violator(points, pick, net, radius)) return pick;
  }
  return std::nullopt;
}

}  // namespace

EpsNetResult weak_epsnet(const PointSet& points, int r, double eps, ViolatorMode mode) {
  const int n = static_cast<int>(points.size());
  if (r < 2) throw std::invalid_argument("weak_epsnet needs r >= 2");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  const int m = std::min(n, static_cast<int>(std::ceil(eps * n - 1e-12)));
  if (m < r)
    throw std::invalid_argument("eps * n below r: no r-tuple fits in a violator");
  if (mode == ViolatorMode::Exhaustive &&
      binomial_capped(n, m, kSubsetGuard) > kSubsetGuard)
    throw std::invalid_argument(
        "violator subsets exceed the enumeration guard, use the heuristic mode");

  EpsNetResult out;
  const double diam = points.diameter();
  out.radius = 3.5 * diam / std::sqrt(static_cast<double>(r));
  out.size_bound = std::pow(static_cast<double>(r), r) * std::pow(eps, -r);

  auto tracker = TupleTracker::make(n, r);
  const double floor_per_iter =
      std::pow(static_cast<double>(r), -r) * binomial_double(m, r);
  Rng rng(8181);

  // hard cap: the tuple accounting cannot run longer than this
  const std::uint64_t cap =
      2 + static_cast<std::uint64_t>(binomial_double(n, r) / std::max(floor_per_iter, 1.0));
  for (std::uint64_t round = 0; round < cap; ++round) {
    std::optional<std::vector<int>> y =
        (mode == ViolatorMode::Exhaustive)
            ? find_violator_exhaustive(points, m, out.net, out.radius)
            : find_violator_heuristic(points, m, out.net, out.radius, rng);
    if (!y) {
      out.certified = (mode == ViolatorMode::Exhaustive);
      break;
    }

    const PointSet y_points{gather(points, *y)};
    const SelectionResult sel = selection_point(y_points, r);

    EpsNetIteration log;
    log.violator = *y;
    log.min_deletions = floor_per_iter;
    // the net ball radius is 3.5 diam(P)/sqrt(r); the selection q was built
    // on Y whose diameter is no larger, so its guarantee transfers
    if (tracker) log.deleted_tuples = tracker->kill_covered(points, sel.q, out.radius);
    out.net.push_back(sel.q);
    ++out.iterations;
    out.violator_log.push_back(std::move(log));
  }
  return out;
}

CenterpointCheck centerpoint_verify(const PointSet& points, int k, const Point& q,
                                    int directions) {
  const int n = static_cast<int>(points.size());
  const int d = points.dimension();
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (static_cast<int>(q.size()) != d) throw std::invalid_argument("dimension mismatch");
  const Ball meb = min_enclosing_ball(points.points());
  if (meb.radius > 1.0 + 1e-9)
    throw std::invalid_argument("point set does not fit in a unit ball");

  std::vector<Point> dirs;
  if (n <= 50) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        Point u = sub(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
        const double len = norm(u);
        if (len < 1e-12) continue;
        scale_in_place(u, 1.0 / len);
        dirs.push_back(std::move(u));
      }
  }
  Rng rng(4099);
  for (int s = 0; s < directions; ++s) {
    Point u = zeros(d);
    for (double& c : u) c = rng.gaussian();
    const double len = norm(u);
    if (len < 1e-12) continue;
    scale_in_place(u, 1.0 / len);
    dirs.push_back(std::move(u));
  }

  CenterpointCheck out;
  out.min_fraction = 1.0;
  const double shift = 1.0 / std::sqrt(static_cast<double>(k));
  for (const Point& u : dirs) {
    const double threshold = dot(u, q) - shift;
    int count = 0;
    for (const Point& p : points.points())
      if (dot(u, p) >= threshold - 1e-12) ++count;
    const double frac = static_cast<double>(count) / n;
    if (frac < out.min_fraction) {
      out.min_fraction = frac;
      out.worst_direction = u;
    }
  }
  out.pass = out.min_fraction >= 1.0 / k - 1e-9;
  return out;
}

CenterpointResult centerpoint_construct(const PointSet& points, int k, bool allow_fallback) {
  const int n = static_cast<int>(points.size());
  if (k < 1) throw std::invalid_argument("k must be positive");

  const int h = (n + k - 1) / k;  // ceil(n/k)
  const int t = n - h + 1;
  const bool exhaustive_ok =
      n <= 30 && t >= 1 && binomial_capped(n, t, 200000) <= 200000;

  CenterpointResult out;
  if (exhaustive_ok) {
    // every k subsets of size n-h+1 jointly omit at most k(h-1) < n points,
    // so they share an input point: the no-dimension Helly bound applies
    std::vector<ConvexBody> bodies;
    for_each_combination(n, t, [&](const std::vector<int>& subset) {
      bodies.push_back(ConvexBody::hull(gather(points, subset)));
      return true;
    });
    MinimaxConfig cfg;
    cfg.restarts = 12;
    cfg.iterations = 4000;
    cfg.tol = 1e-8;
    cfg.seed = 17;
    const MinimaxResult mm = minimax_center(bodies, cfg);
    out.q = mm.center;
    out.route = "helly_subsets";
    out.radius_guarantee = 1.0 / std::sqrt(static_cast<double>(k));
    return out;
  }

  if (!allow_fallback)
    throw std::invalid_argument("subset enumeration out of reach and fallback disabled");

  // one hull point per part inside any halfspace covering the centre ball,
  // with ceil(n/k) parts; radius is whatever the partition achieved
  const int parts = std::min(n, std::max(2, h));
  TverbergConfig cfg;
  cfg.recenter = true;
  const TverbergPartition part = uncolored_tverberg(points, parts, cfg);
  out.q = part.recentered ? part.recentered_center : part.center;
  out.route = "tverberg_center";
  out.radius_guarantee =
      part.recentered ? part.recentered_max_distance : part.max_distance;
  return out;
}

}  // namespace nodim
