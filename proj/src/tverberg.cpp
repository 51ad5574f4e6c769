#include "nodim/tverberg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "nodim/enumeration.hpp"
#include "nodim/rng.hpp"

namespace nodim {

namespace {

// Node of the halving tree: per-colour lists of global indices, all lists the
// same length while the tree is being built.
struct Node {
  std::vector<std::vector<int>> colors;
  int depth = 0;

  int color_size() const { return static_cast<int>(colors.front().size()); }
  std::vector<int> all_indices() const {
    std::vector<int> out;
    for (const auto& c : colors) out.insert(out.end(), c.begin(), c.end());
    return out;
  }
};

double node_diameter(const std::vector<Point>& flat, const Node& node) {
  const auto idx = node.all_indices();
  double best = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      best = std::max(best, dist(flat[static_cast<std::size_t>(idx[i])],
                                 flat[static_cast<std::size_t>(idx[j])]));
  return best;
}

Point node_centroid(const std::vector<Point>& flat, const Node& node, int dim) {
  Point c = zeros(dim);
  int n = 0;
  for (const auto& color : node.colors)
    for (int g : color) {
      add_in_place(c, flat[static_cast<std::size_t>(g)]);
      ++n;
    }
  scale_in_place(c, 1.0 / n);
  return c;
}

// Averaging bound for the displacement of a floor(k/2)-per-colour subset,
// n = r*k the node size, diam the node diameter.
double halving_bound(int k, int n, double diam) {
  if (k % 2 == 0)
    return std::sqrt(static_cast<double>(k) / (2.0 * (k - 1) * n)) * diam;
  return std::sqrt(static_cast<double>(k - 2) * (k + 1) /
                   (2.0 * static_cast<double>(k - 1) * (k - 1) * n)) *
         diam;
}

// Per-colour bookkeeping for the conditional-expectation scan. Coordinates
// are already centred at the node centroid. A = sum over decided-in, W/T =
// sum and squared-norm sum over undecided, a/u decided-in and undecided
// counts, m the per-colour target.
struct ColorState {
  Point A, W;
  double T = 0.0;
  int a = 0, u = 0, m = 0;

  Point expected_sum() const {
    Point r = A;
    if (u > 0) axpy(r, static_cast<double>(m - a) / u, W);
    return r;
  }

  // E |S|^2 over a uniformly random completion (hypergeometric inclusion and
  // pair probabilities are exact, no approximation).
  double expected_sq() const {
    if (u == 0) return norm_sq(A);
    const double q1 = static_cast<double>(m - a) / u;
    const double q2 = (u >= 2) ? q1 * static_cast<double>(m - a - 1) / (u - 1) : 0.0;
    return norm_sq(A) + 2.0 * q1 * dot(A, W) + q1 * T + q2 * (norm_sq(W) - T);
  }

  double variance() const {
    const Point e = expected_sum();
    return expected_sq() - norm_sq(e);
  }
};

// Picks floor(k/2) points per colour minimizing |sum of centred picks|^2 by
// fixing membership one element at a time; each branch is scored with the
// exact conditional expectation, so the final value never exceeds the
// uniform average and the averaging bound is a hard postcondition.
std::vector<std::vector<char>> derandomized_pick(
    const std::vector<std::vector<Point>>& centred, int m) {
  const int r = static_cast<int>(centred.size());
  const int dim = static_cast<int>(centred.front().front().size());

  std::vector<ColorState> st(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j) {
    auto& s = st[static_cast<std::size_t>(j)];
    s.A = zeros(dim);
    s.W = zeros(dim);
    s.m = m;
    for (const auto& x : centred[static_cast<std::size_t>(j)]) {
      add_in_place(s.W, x);
      s.T += norm_sq(x);
      ++s.u;
    }
  }

  Point G = zeros(dim);
  double V = 0.0;
  for (const auto& s : st) {
    add_in_place(G, s.expected_sum());
    V += s.variance();
  }

  std::vector<std::vector<char>> take(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j) {
    auto& s = st[static_cast<std::size_t>(j)];
    const auto& pts = centred[static_cast<std::size_t>(j)];
    take[static_cast<std::size_t>(j)].assign(pts.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Point& x = pts[i];
      const bool can_in = s.a < s.m;
      const bool can_out = s.u - 1 >= s.m - s.a;

      ColorState inc = s, exc = s;
      sub_in_place(inc.W, x);
      inc.T -= norm_sq(x);
      --inc.u;
      add_in_place(inc.A, x);
      ++inc.a;
      sub_in_place(exc.W, x);
      exc.T -= norm_sq(x);
      --exc.u;

      const Point es_old = s.expected_sum();
      const double var_old = s.variance();
      auto branch_score = [&](const ColorState& b) {
        Point g = G;
        sub_in_place(g, es_old);
        add_in_place(g, b.expected_sum());
        return norm_sq(g) + (V - var_old + b.variance());
      };

      bool include;
      if (!can_out) {
        include = true;
      } else if (!can_in) {
        include = false;
      } else {
        include = branch_score(inc) <= branch_score(exc);
      }

      const ColorState& next = include ? inc : exc;
      sub_in_place(G, es_old);
      add_in_place(G, next.expected_sum());
      V += next.variance() - var_old;
      take[static_cast<std::size_t>(j)][i] = include ? 1 : 0;
      s = next;
    }
  }
  return take;
}

std::vector<std::vector<char>> randomized_pick(const std::vector<std::vector<Point>>& centred,
                                               int m, double accept, Rng& rng) {
  const int r = static_cast<int>(centred.size());
  const int k = static_cast<int>(centred.front().size());
  const int dim = static_cast<int>(centred.front().front().size());
  const double picks = static_cast<double>(r) * m;

  std::vector<int> local(static_cast<std::size_t>(k));
  for (int tries = 0; tries < 100000; ++tries) {
    std::vector<std::vector<char>> take(static_cast<std::size_t>(r));
    Point sum = zeros(dim);
    for (int j = 0; j < r; ++j) {
      for (int i = 0; i < k; ++i) local[static_cast<std::size_t>(i)] = i;
      rng.shuffle(local);
      take[static_cast<std::size_t>(j)].assign(static_cast<std::size_t>(k), 0);
      for (int i = 0; i < m; ++i) {
        const int pick = local[static_cast<std::size_t>(i)];
        take[static_cast<std::size_t>(j)][static_cast<std::size_t>(pick)] = 1;
        add_in_place(sum, centred[static_cast<std::size_t>(j)][static_cast<std::size_t>(pick)]);
      }
    }
    if (norm(sum) / picks <= accept) return take;
  }
  throw std::runtime_error("randomized halving did not meet the averaging bound");
}

// Splits a node; global indices come back sorted because colour lists are.
HalvingResult halve_node(const std::vector<Point>& flat, const Node& node, int dim,
                         const HalvingConfig& cfg, Rng* rng) {
  const int r = static_cast<int>(node.colors.size());
  const int k = node.color_size();
  const int m = k / 2;
  const Point c = node_centroid(flat, node, dim);

  std::vector<std::vector<Point>> centred(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j)
    for (int g : node.colors[static_cast<std::size_t>(j)])
      centred[static_cast<std::size_t>(j)].push_back(sub(flat[static_cast<std::size_t>(g)], c));

  HalvingResult res;
  res.bound = halving_bound(k, r * k, node_diameter(flat, node));

  std::vector<std::vector<char>> take;
  if (cfg.randomized) {
    Rng local_rng(cfg.seed);
    Rng& use = rng ? *rng : local_rng;
    take = randomized_pick(centred, m, res.bound * (1.0 + 1e-9), use);
  } else {
    take = derandomized_pick(centred, m);
  }

  Point sum = zeros(dim);
  for (int j = 0; j < r; ++j) {
    const auto& color = node.colors[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < color.size(); ++i) {
      if (take[static_cast<std::size_t>(j)][i]) {
        res.q0.push_back(color[i]);
        add_in_place(sum, centred[static_cast<std::size_t>(j)][i]);
      } else {
        res.q1.push_back(color[i]);
      }
    }
  }
  res.displacement = norm(sum) / (static_cast<double>(r) * m);
  return res;
}

std::vector<Point> flatten(const ColoredFamily& family, std::vector<std::vector<int>>* by_color) {
  std::vector<Point> flat;
  by_color->clear();
  for (const auto& color : family.colors) {
    std::vector<int> ids;
    for (const auto& p : color.points()) {
      ids.push_back(static_cast<int>(flat.size()));
      flat.push_back(p);
    }
    by_color->push_back(std::move(ids));
  }
  return flat;
}

double part_distance(const std::vector<Point>& flat, const std::vector<int>& part,
                     const Point& q) {
  std::vector<Point> pts;
  pts.reserve(part.size());
  for (int g : part) pts.push_back(flat[static_cast<std::size_t>(g)]);
  return nearest_hull_point(pts, q).distance;
}

void maybe_recenter(const std::vector<Point>& flat, TverbergPartition* out) {
  std::vector<ConvexBody> bodies;
  for (const auto& part : out->parts) {
    std::vector<Point> pts;
    for (int g : part) pts.push_back(flat[static_cast<std::size_t>(g)]);
    bodies.push_back(ConvexBody::hull(std::move(pts)));
  }
  MinimaxConfig mc;
  mc.restarts = 12;
  mc.iterations = 4000;
  mc.tol = 1e-8;
  mc.seed = 7;
  const MinimaxResult mm = minimax_center(bodies, mc);
  double at_center = 0.0;
  for (const auto& part : out->parts)
    at_center = std::max(at_center, part_distance(flat, part, mm.center));

  out->recentered = true;
  if (at_center < out->max_distance) {
    out->recentered_center = mm.center;
    out->recentered_max_distance = at_center;
  } else {
    out->recentered_center = out->center;
    out->recentered_max_distance = out->max_distance;
  }
}

// Halving tree over a uniform colour family; returns the partition with one
// point per colour per part and fills the per-depth log.
TverbergPartition run_tree(const std::vector<Point>& flat,
                           const std::vector<std::vector<int>>& by_color, int dim,
                           const TverbergConfig& cfg) {
  const int r = static_cast<int>(by_color.size());
  PointSet all(flat);
  const double diam_root = all.diameter();

  TverbergPartition out;
  out.center = all.centroid();
  out.bound = (1.0 + std::sqrt(2.0)) * diam_root / std::sqrt(static_cast<double>(r));

  Rng rng(cfg.halving.seed);
  std::vector<HalvingLevel> levels;

  std::function<void(const Node&)> split = [&](const Node& node) {
    if (node.color_size() <= 1) {
      out.parts.push_back(node.all_indices());
      return;
    }
    const HalvingResult h = halve_node(flat, node, dim, cfg.halving, &rng);
    if (static_cast<int>(levels.size()) <= node.depth)
      levels.resize(static_cast<std::size_t>(node.depth) + 1);
    HalvingLevel& lv = levels[static_cast<std::size_t>(node.depth)];
    lv.depth = node.depth;
    ++lv.halvings;
    lv.min_color_size = lv.halvings == 1 ? node.color_size()
                                         : std::min(lv.min_color_size, node.color_size());
    lv.max_displacement = std::max(lv.max_displacement, h.displacement);

    Node lo, hi;
    lo.depth = hi.depth = node.depth + 1;
    lo.colors.resize(static_cast<std::size_t>(r));
    hi.colors.resize(static_cast<std::size_t>(r));
    std::vector<char> in_q0(flat.size(), 0);
    for (int g : h.q0) in_q0[static_cast<std::size_t>(g)] = 1;
    for (int j = 0; j < r; ++j)
      for (int g : node.colors[static_cast<std::size_t>(j)])
        (in_q0[static_cast<std::size_t>(g)] ? lo : hi).colors[static_cast<std::size_t>(j)].push_back(g);
    split(lo);
    split(hi);
  };

  Node root;
  root.colors = by_color;
  split(root);

  for (auto& lv : levels)
    lv.bound = diam_root / (std::sqrt(static_cast<double>(lv.min_color_size) - 1.0) *
                            std::sqrt(2.0 * r));
  out.tree_log = std::move(levels);

  double worst = 0.0;
  for (const auto& part : out.parts)
    worst = std::max(worst, part_distance(flat, part, out.center));
  out.max_distance = worst;

  if (cfg.recenter) maybe_recenter(flat, &out);
  return out;
}

}  // namespace

void validate_colored_family(const ColoredFamily& family, bool require_uniform_size) {
  if (family.colors.empty()) throw std::invalid_argument("family has no colour classes");
  const int dim = family.colors.front().dimension();
  for (std::size_t j = 0; j < family.colors.size(); ++j) {
    if (family.colors[j].dimension() != dim)
      throw std::invalid_argument("colour " + std::to_string(j) +
                                  " has mismatched dimension");
    if (require_uniform_size && family.colors[j].size() != family.colors.front().size())
      throw std::invalid_argument("colour " + std::to_string(j) +
                                  " breaks the uniform size requirement");
  }
}

int family_total_size(const ColoredFamily& family) {
  int n = 0;
  for (const auto& c : family.colors) n += static_cast<int>(c.size());
  return n;
}

HalvingResult balanced_halving(const ColoredFamily& family, const HalvingConfig& cfg) {
  validate_colored_family(family, true);
  const int k = static_cast<int>(family.colors.front().size());
  if (k < 2) throw std::invalid_argument("halving needs at least two points per colour");

  std::vector<std::vector<int>> by_color;
  const std::vector<Point> flat = flatten(family, &by_color);
  Node root;
  root.colors = by_color;
  return halve_node(flat, root, family.colors.front().dimension(), cfg, nullptr);
}

TverbergPartition colored_tverberg(const ColoredFamily& family, const TverbergConfig& cfg) {
  validate_colored_family(family, true);
  std::vector<std::vector<int>> by_color;
  const std::vector<Point> flat = flatten(family, &by_color);
  return run_tree(flat, by_color, family.colors.front().dimension(), cfg);
}

TverbergPartition uncolored_tverberg(const PointSet& points, int k, const TverbergConfig& cfg) {
  const int n = static_cast<int>(points.size());
  if (k < 2 || k > n)
    throw std::invalid_argument("part count must satisfy 2 <= k <= number of points, got " +
                                std::to_string(k));

  const int r = std::max(1, n / k);
  const int kept_count = r * k;

  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  Rng rng(cfg.shuffle_seed);
  rng.shuffle(perm);

  // Colour j takes every r-th kept point; each colour ends up with k points.
  std::vector<std::vector<int>> color_to_orig(static_cast<std::size_t>(r));
  std::vector<PointSet> colors;
  for (int j = 0; j < r; ++j) {
    std::vector<Point> pts;
    for (int i = j; i < kept_count; i += r) {
      const int orig = perm[static_cast<std::size_t>(i)];
      color_to_orig[static_cast<std::size_t>(j)].push_back(orig);
      pts.push_back(points[static_cast<std::size_t>(orig)]);
    }
    colors.push_back(PointSet(std::move(pts)));
  }

  ColoredFamily sub{std::move(colors)};
  std::vector<std::vector<int>> by_color;
  const std::vector<Point> flat = flatten(sub, &by_color);
  TverbergConfig tree_cfg = cfg;
  tree_cfg.recenter = false;  // recenter below, after the deleted points return
  TverbergPartition out = run_tree(flat, by_color, points.dimension(), tree_cfg);

  // Translate tree-local indices back to the caller's.
  std::vector<int> to_orig(flat.size());
  for (int j = 0; j < r; ++j)
    for (std::size_t i = 0; i < by_color[static_cast<std::size_t>(j)].size(); ++i)
      to_orig[static_cast<std::size_t>(by_color[static_cast<std::size_t>(j)][i])] =
          color_to_orig[static_cast<std::size_t>(j)][i];
  for (auto& part : out.parts) {
    for (int& g : part) g = to_orig[static_cast<std::size_t>(g)];
    std::sort(part.begin(), part.end());
  }

  // Deleted points rejoin whichever part's hull is nearest.
  std::vector<int> deleted(perm.begin() + kept_count, perm.end());
  std::sort(deleted.begin(), deleted.end());
  for (int idx : deleted) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < out.parts.size(); ++p) {
      const double d =
          part_distance(points.points(), out.parts[p], points[static_cast<std::size_t>(idx)]);
      if (d < best_dist) {
        best_dist = d;
        best = p;
      }
    }
    out.parts[best].push_back(idx);
    std::sort(out.parts[best].begin(), out.parts[best].end());
  }

  const int s = n - kept_count;
  const double constant = (s == 0) ? 1.0 + std::sqrt(2.0) : 2.0 + std::sqrt(2.0);
  out.bound = constant * std::sqrt(static_cast<double>(k) / n) * points.diameter();

  double worst = 0.0;
  for (const auto& part : out.parts)
    worst = std::max(worst, part_distance(points.points(), part, out.center));
  out.max_distance = worst;

  if (cfg.recenter) maybe_recenter(points.points(), &out);
  return out;
}

BruteTverberg brute_force_tverberg(const PointSet& points, int k) {
  const int n = static_cast<int>(points.size());
  if (k < 1 || k > n)
    throw std::invalid_argument("part count must satisfy 1 <= k <= number of points");
  if (stirling2_capped(n, k, 100000) > 100000)
    throw std::invalid_argument("number of " + std::to_string(k) +
                                "-partitions exceeds the enumeration guard");

  const int dim = points.dimension();
  BruteTverberg best;
  best.value = std::numeric_limits<double>::infinity();

  auto blocks_of = [&](const std::vector<int>& labels) {
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
    for (int i = 0; i < n; ++i)
      blocks[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])].push_back(i);
    return blocks;
  };

  if (k == 2) {
    // Exact: the minimax value of a bipartition is half the hull gap, read
    // off the min-norm point of the pairwise difference set.
    for_each_set_partition(n, k, [&](const std::vector<int>& labels) {
      auto blocks = blocks_of(labels);
      std::vector<Point> diffs;
      for (int ia : blocks[0])
        for (int ib : blocks[1])
          diffs.push_back(sub(points[static_cast<std::size_t>(ia)],
                              points[static_cast<std::size_t>(ib)]));
      const MinNormResult mn = min_norm_point(diffs);
      const double value = mn.distance / 2.0;
      if (value < best.value) {
        Point pa = zeros(dim), pb = zeros(dim);
        std::size_t t = 0;
        for (int ia : blocks[0])
          for (int ib : blocks[1]) {
            const double w = mn.coefficients[t++];
            axpy(pa, w, points[static_cast<std::size_t>(ia)]);
            axpy(pb, w, points[static_cast<std::size_t>(ib)]);
          }
        best.value = value;
        best.partition = std::move(blocks);
        best.center = scaled(add(pa, pb), 0.5);
      }
      return true;
    });
    return best;
  }

  MinimaxConfig light;
  light.restarts = 2;
  light.iterations = 400;
  light.tol = 1e-6;
  light.seed = 11;

  for_each_set_partition(n, k, [&](const std::vector<int>& labels) {
    auto blocks = blocks_of(labels);
    std::vector<ConvexBody> bodies;
    for (const auto& b : blocks) {
      std::vector<Point> pts;
      for (int i : b) pts.push_back(points[static_cast<std::size_t>(i)]);
      bodies.push_back(ConvexBody::hull(std::move(pts)));
    }
    const MinimaxResult mm = minimax_center(bodies, light);
    if (mm.radius < best.value) {
      best.value = mm.radius;
      best.partition = std::move(blocks);
      best.center = mm.center;
    }
    return true;
  });

  // Polish the winning partition with a heavier minimax run.
  std::vector<ConvexBody> bodies;
  for (const auto& b : best.partition) {
    std::vector<Point> pts;
    for (int i : b) pts.push_back(points[static_cast<std::size_t>(i)]);
    bodies.push_back(ConvexBody::hull(std::move(pts)));
  }
  MinimaxConfig heavy;
  heavy.restarts = 10;
  heavy.iterations = 4000;
  heavy.tol = 1e-8;
  heavy.seed = 11;
  const MinimaxResult mm = minimax_center(bodies, heavy);
  if (mm.radius < best.value) {
    best.value = mm.radius;
    best.center = mm.center;
  }
  return best;
}

}  // namespace nodim
