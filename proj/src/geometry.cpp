#include "nodim/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "nodim/linalg.hpp"
#include "nodim/rng.hpp"

namespace nodim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PointSet::PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
  if (pts_.empty()) throw std::invalid_argument("empty point set");
  dim_ = static_cast<int>(pts_[0].size());
  if (dim_ == 0) throw std::invalid_argument("zero-dimensional point");
  for (const auto& p : pts_) {
    if (static_cast<int>(p.size()) != dim_)
      throw std::invalid_argument("mixed dimensions in point set");
    if (!all_finite(p)) throw std::invalid_argument("non-finite coordinate");
  }
  centroid_ = zeros(dim_);
  for (const auto& p : pts_) add_in_place(centroid_, p);
  scale_in_place(centroid_, 1.0 / static_cast<double>(pts_.size()));
  for (std::size_t i = 0; i < pts_.size(); ++i)
    for (std::size_t j = i + 1; j < pts_.size(); ++j)
      diameter_ = std::max(diameter_, dist(pts_[i], pts_[j]));
}

ConvexBody ConvexBody::hull(std::vector<Point> pts) {
  ConvexBody b;
  b.kind_ = BodyKind::Hull;
  b.hull_.emplace(std::move(pts));
  b.dim_ = b.hull_->dimension();
  return b;
}

ConvexBody ConvexBody::ball(Point center, double radius) {
  if (center.empty() || !all_finite(center)) throw std::invalid_argument("bad ball center");
  if (!(radius >= 0.0)) throw std::invalid_argument("negative ball radius");
  ConvexBody b;
  b.kind_ = BodyKind::BallBody;
  b.dim_ = static_cast<int>(center.size());
  b.ball_ = Ball{std::move(center), radius};
  return b;
}

ConvexBody ConvexBody::halfspace(Point outer_normal, double offset) {
  const double nn = norm(outer_normal);
  if (!(nn > 0.0) || !all_finite(outer_normal))
    throw std::invalid_argument("degenerate halfspace normal");
  scale_in_place(outer_normal, 1.0 / nn);
  ConvexBody b;
  b.kind_ = BodyKind::HalfspaceBody;
  b.dim_ = static_cast<int>(outer_normal.size());
  b.halfspace_ = Halfspace{std::move(outer_normal), offset / nn};
  return b;
}

const PointSet& ConvexBody::hull_points() const {
  if (!hull_) throw std::logic_error("not a hull body");
  return *hull_;
}

const Ball& ConvexBody::as_ball() const {
  if (!ball_) throw std::logic_error("not a ball body");
  return *ball_;
}

const Halfspace& ConvexBody::as_halfspace() const {
  if (!halfspace_) throw std::logic_error("not a halfspace body");
  return *halfspace_;
}

// ---------------------------------------------------------------------------
// Wolfe's min-norm-point.

MinNormResult min_norm_point(const std::vector<Point>& points, double tol, int max_iterations) {
  if (points.empty()) throw std::invalid_argument("min_norm_point: empty input");
  const int d = static_cast<int>(points[0].size());
  const std::size_t n = points.size();

  std::size_t start = 0;
  double start_norm = norm_sq(points[0]);
  for (std::size_t i = 1; i < n; ++i) {
    const double v = norm_sq(points[i]);
    if (v < start_norm) {
      start_norm = v;
      start = i;
    }
  }

  std::vector<std::size_t> corral = {start};
  std::vector<double> w = {1.0};
  Point x = points[start];

  auto rebuild_x = [&]() {
    x = zeros(d);
    for (std::size_t j = 0; j < corral.size(); ++j) axpy(x, w[j], points[corral[j]]);
  };

  // Affine minimiser of |y|^2 over aff(corral): bordered Gram system
  // [G 1; 1^T 0][lam; mu] = [0; 1].
  auto affine_coeffs = [&]() {
    const int m = static_cast<int>(corral.size());
    std::vector<double> A(static_cast<std::size_t>((m + 1) * (m + 1)), 0.0);
    std::vector<double> b(static_cast<std::size_t>(m + 1), 0.0);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j)
        A[static_cast<std::size_t>(i * (m + 1) + j)] = dot(points[corral[i]], points[corral[j]]);
      A[static_cast<std::size_t>(i * (m + 1) + m)] = 1.0;
      A[static_cast<std::size_t>(m * (m + 1) + i)] = 1.0;
    }
    b[static_cast<std::size_t>(m)] = 1.0;
    auto sol = lu_solve(A, b, m + 1);
    std::vector<double> lam(static_cast<std::size_t>(m));
    if (sol) {
      std::copy(sol->begin(), sol->begin() + m, lam.begin());
    } else {
      const auto ridge = solve_with_ridge(A, b, m + 1);
      std::copy(ridge.begin(), ridge.begin() + m, lam.begin());
    }
    double s = 0.0;
    for (double v : lam) s += v;
    if (std::abs(s) > 1e-12) {
      for (double& v : lam) v /= s;
    } else {
      std::fill(lam.begin(), lam.end(), 1.0 / static_cast<double>(m));
    }
    return lam;
  };

  int iters = 0;
  double gap = 0.0;
  for (; iters < max_iterations; ++iters) {
    double min_dot = kInf;
    std::size_t pidx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dp = dot(x, points[i]);
      if (dp < min_dot) {
        min_dot = dp;
        pidx = i;
      }
    }
    gap = norm_sq(x) - min_dot;
    if (gap <= tol) break;
    if (std::find(corral.begin(), corral.end(), pidx) != corral.end()) break;  // stall
    corral.push_back(pidx);
    w.push_back(0.0);

    for (int minor = 0; minor < 3 * static_cast<int>(n) + 16; ++minor) {
      const auto lam = affine_coeffs();
      bool interior = true;
      for (double v : lam)
        if (v <= 1e-12) interior = false;
      if (interior) {
        w = lam;
        rebuild_x();
        break;
      }
      double theta = 1.0;
      for (std::size_t j = 0; j < lam.size(); ++j) {
        if (lam[j] <= 1e-12) {
          const double denom = w[j] - lam[j];
          if (denom > 1e-18) theta = std::min(theta, w[j] / denom);
        }
      }
      theta = std::clamp(theta, 0.0, 1.0);
      for (std::size_t j = 0; j < w.size(); ++j) w[j] = (1.0 - theta) * w[j] + theta * lam[j];
      // drop vanished vertices, keeping the heaviest if all vanish
      std::vector<std::size_t> nc;
      std::vector<double> nw;
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[j] > 1e-13) {
          nc.push_back(corral[j]);
          nw.push_back(w[j]);
        }
      }
      if (nc.empty()) {
        const std::size_t jmax = static_cast<std::size_t>(
            std::max_element(w.begin(), w.end()) - w.begin());
        nc.push_back(corral[jmax]);
        nw.push_back(1.0);
      }
      corral = std::move(nc);
      w = std::move(nw);
      double s = 0.0;
      for (double v : w) s += v;
      for (double& v : w) v /= s;
      rebuild_x();
      if (corral.size() == 1) break;
    }
  }

  MinNormResult res;
  res.nearest = x;
  res.distance = norm(x);
  res.coefficients.assign(n, 0.0);
  for (std::size_t j = 0; j < corral.size(); ++j) res.coefficients[corral[j]] += w[j];
  res.iterations = iters;
  res.gap = gap;
  return res;
}

MinNormResult nearest_hull_point(const std::vector<Point>& points, const Point& origin,
                                 double tol, int max_iterations) {
  std::vector<Point> shifted(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) shifted[i] = sub(points[i], origin);
  MinNormResult res = min_norm_point(shifted, tol, max_iterations);
  res.nearest = add(res.nearest, origin);
  return res;
}

Point project_onto_body(const ConvexBody& body, const Point& x, double tol) {
  switch (body.kind()) {
    case BodyKind::Hull:
      return nearest_hull_point(body.hull_points().points(), x, tol).nearest;
    case BodyKind::BallBody: {
      const Ball& b = body.as_ball();
      const double dv = dist(x, b.center);
      if (dv <= b.radius) return x;
      Point dir = sub(x, b.center);
      scale_in_place(dir, b.radius / dv);
      return add(b.center, dir);
    }
    case BodyKind::HalfspaceBody: {
      const Halfspace& h = body.as_halfspace();
      const double s = dot(h.outer_normal, x) - h.offset;
      if (s <= 0.0) return x;
      Point y = x;
      axpy(y, -s, h.outer_normal);
      return y;
    }
  }
  throw std::logic_error("unreachable body kind");
}

// ---------------------------------------------------------------------------
// Exact projection onto an intersection of halfspaces (small m).
//
// Enumerate candidate active sets; for each, solve the equality-constrained
// projection and accept when its multipliers are nonnegative and the point
// is feasible for every constraint. KKT makes any accepted candidate the
// true projection; if no mask is accepted the polyhedron is empty (every
// nonempty polyhedron admits a linearly independent active set whose
// multipliers are nonnegative).

std::optional<Point> polyhedron_project(const std::vector<Halfspace>& hs, const Point& x) {
  const int m = static_cast<int>(hs.size());
  if (m == 0) return x;
  if (m > 20) throw std::invalid_argument("polyhedron_project: too many halfspaces");
  const int d = static_cast<int>(x.size());

  const double feas_tol = 1e-9 * (1.0 + norm(x));
  std::optional<Point> best;
  double best_d = kInf;

  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    const int k = std::popcount(mask);
    if (k > d) continue;  // rows would be dependent
    Point y;
    if (k == 0) {
      y = x;
    } else {
      std::vector<int> act;
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) act.push_back(i);
      std::vector<double> G(static_cast<std::size_t>(k * k));
      std::vector<double> rhs(static_cast<std::size_t>(k));
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b)
          G[static_cast<std::size_t>(a * k + b)] =
              dot(hs[static_cast<std::size_t>(act[static_cast<std::size_t>(a)])].outer_normal,
                  hs[static_cast<std::size_t>(act[static_cast<std::size_t>(b)])].outer_normal);
        const auto& ha = hs[static_cast<std::size_t>(act[static_cast<std::size_t>(a)])];
        rhs[static_cast<std::size_t>(a)] = dot(ha.outer_normal, x) - ha.offset;
      }
      const auto mu = lu_solve(G, rhs, k);
      if (!mu) continue;  // dependent active normals; another mask covers this face
      bool ok = true;
      for (double v : *mu)
        if (v < -1e-9) ok = false;
      if (!ok) continue;
      y = x;
      for (int a = 0; a < k; ++a)
        axpy(y, -(*mu)[static_cast<std::size_t>(a)],
             hs[static_cast<std::size_t>(act[static_cast<std::size_t>(a)])].outer_normal);
    }
    bool feasible = true;
    for (const auto& h : hs) {
      if (dot(h.outer_normal, y) - h.offset > feas_tol) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    const double dv = dist(y, x);
    if (dv < best_d) {
      best_d = dv;
      best = y;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Distance from a query point to an intersection of bodies.

namespace {

double point_body_distance(const ConvexBody& b, const Point& q, Point* proj) {
  switch (b.kind()) {
    case BodyKind::Hull: {
      const auto r = nearest_hull_point(b.hull_points().points(), q, 1e-10);
      if (proj) *proj = r.nearest;
      return r.distance;
    }
    case BodyKind::BallBody: {
      const Ball& ball = b.as_ball();
      const double dv = dist(q, ball.center);
      if (dv <= ball.radius) {
        if (proj) *proj = q;
        return 0.0;
      }
      if (proj) {
        Point dir = sub(q, ball.center);
        scale_in_place(dir, ball.radius / dv);
        *proj = add(ball.center, dir);
      }
      return dv - ball.radius;
    }
    case BodyKind::HalfspaceBody: {
      const Halfspace& h = b.as_halfspace();
      const double s = dot(h.outer_normal, q) - h.offset;
      if (s <= 0.0) {
        if (proj) *proj = q;
        return 0.0;
      }
      if (proj) {
        Point y = q;
        axpy(y, -s, h.outer_normal);
        *proj = y;
      }
      return s;
    }
  }
  throw std::logic_error("unreachable body kind");
}

}  // namespace

IntersectionDistance distance_to_intersection(const std::vector<ConvexBody>& bodies,
                                              const Point& q, double tol) {
  IntersectionDistance out;
  if (bodies.empty()) {
    out.distance = 0.0;
    out.witness = q;
    return out;
  }

  // Exact path: all halfspaces, plus optionally balls centred at q.
  std::vector<Halfspace> hs;
  double ball_radius = kInf;
  bool exact = true;
  for (const auto& b : bodies) {
    if (b.kind() == BodyKind::HalfspaceBody) {
      hs.push_back(b.as_halfspace());
    } else if (b.kind() == BodyKind::BallBody &&
               dist(b.as_ball().center, q) <= 1e-12 * (1.0 + norm(q))) {
      ball_radius = std::min(ball_radius, b.as_ball().radius);
    } else {
      exact = false;
      break;
    }
  }
  if (exact && static_cast<int>(hs.size()) <= 12) {
    const auto p = polyhedron_project(hs, q);
    if (!p) {
      out.empty = true;
      return out;
    }
    const double dv = dist(*p, q);
    if (dv > ball_radius + 1e-12) {
      out.empty = true;  // every polyhedron point lies outside the ball
      return out;
    }
    out.distance = dv;
    out.witness = *p;
    return out;
  }

  // Dykstra's alternating projections with per-body correction terms.
  const std::size_t nb = bodies.size();
  Point y = q;
  std::vector<Point> corr(nb, zeros(static_cast<int>(q.size())));
  const int max_sweeps = 10000;
  const int window = 100;
  std::vector<double> recent;
  recent.reserve(window);
  double residual = kInf;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const Point y_prev = y;
    for (std::size_t i = 0; i < nb; ++i) {
      const Point z = add(y, corr[i]);
      const Point yp = project_onto_body(bodies[i], z, tol * 1e-2);
      corr[i] = sub(z, yp);
      y = yp;
    }
    residual = 0.0;
    for (const auto& b : bodies) residual = std::max(residual, point_body_distance(b, y, nullptr));
    // feasible AND stationary: the iterate has reached the projection of q
    if (residual <= tol && dist(y, y_prev) <= tol * (1.0 + norm(y))) {
      out.distance = dist(y, q);
      out.witness = y;
      return out;
    }
    recent.push_back(residual);
    if (static_cast<int>(recent.size()) > window) recent.erase(recent.begin());
    if (static_cast<int>(recent.size()) == window) {
      const double lo = *std::min_element(recent.begin(), recent.end());
      const double hi = *std::max_element(recent.begin(), recent.end());
      // stuck well above tolerance with no real progress: call it empty
      if (lo > 10.0 * tol && lo >= (1.0 - 1e-3) * hi) {
        out.empty = true;
        return out;
      }
    }
  }
  throw UndecidedError("intersection test did not converge", residual, max_sweeps);
}

// ---------------------------------------------------------------------------
// Minimax centre: min over q of max_i d(q, body_i).

MinimaxResult minimax_center(const std::vector<ConvexBody>& bodies, const MinimaxConfig& cfg) {
  if (bodies.empty()) throw std::invalid_argument("minimax_center: no bodies");
  const int d = bodies[0].dimension();
  for (const auto& b : bodies)
    if (b.dimension() != d) throw std::invalid_argument("minimax_center: mixed dimensions");

  int evals = 0;
  auto fval = [&](const Point& q, Point* grad) -> double {
    double fmax = -1.0;
    Point far_proj;
    for (const auto& b : bodies) {
      Point pr;
      const double dv = point_body_distance(b, q, grad ? &pr : nullptr);
      if (dv > fmax) {
        fmax = dv;
        if (grad) far_proj = pr;
      }
    }
    ++evals;
    if (grad) {
      if (fmax > 1e-15) {
        *grad = sub(q, far_proj);
        scale_in_place(*grad, 1.0 / fmax);
      } else {
        *grad = zeros(d);
      }
    }
    return fmax;
  };

  // Anchor starts: one representative point per body, their mean, and the
  // mean over all vertices; remaining slots are random perturbations.
  std::vector<Point> anchors;
  Point vertex_mean = zeros(d);
  int vertex_count = 0;
  for (const auto& b : bodies) {
    switch (b.kind()) {
      case BodyKind::Hull: {
        anchors.push_back(b.hull_points().centroid());
        for (const auto& p : b.hull_points().points()) {
          add_in_place(vertex_mean, p);
          ++vertex_count;
        }
        break;
      }
      case BodyKind::BallBody:
        anchors.push_back(b.as_ball().center);
        add_in_place(vertex_mean, b.as_ball().center);
        ++vertex_count;
        break;
      case BodyKind::HalfspaceBody: {
        const auto& h = b.as_halfspace();
        anchors.push_back(scaled(h.outer_normal, h.offset));
        add_in_place(vertex_mean, anchors.back());
        ++vertex_count;
        break;
      }
    }
  }
  Point anchors_mean = zeros(d);
  for (const auto& a : anchors) add_in_place(anchors_mean, a);
  scale_in_place(anchors_mean, 1.0 / static_cast<double>(anchors.size()));
  scale_in_place(vertex_mean, 1.0 / static_cast<double>(vertex_count));

  double spread = 1e-6;
  for (const auto& a : anchors) spread = std::max(spread, dist(a, anchors_mean));

  std::vector<Point> starts = {anchors_mean, vertex_mean};
  for (const auto& a : anchors) starts.push_back(a);
  Rng rng(cfg.seed);
  while (static_cast<int>(starts.size()) < cfg.restarts) {
    Point p = anchors_mean;
    for (double& c : p) c += 0.5 * spread * rng.gaussian();
    starts.push_back(std::move(p));
  }
  if (static_cast<int>(starts.size()) > std::max(cfg.restarts, 2))
    starts.resize(static_cast<std::size_t>(std::max(cfg.restarts, 2)));

  Point best_q = starts[0];
  double best_f = fval(starts[0], nullptr);

  for (const auto& start : starts) {
    Point q = start;
    double f_run = fval(q, nullptr);
    Point q_run = q;
    double delta = std::max(f_run * 0.25, cfg.tol);
    int stall = 0;
    Point avg = q;
    int avg_count = 1;
    for (int iter = 0; iter < cfg.iterations; ++iter) {
      Point g;
      const double f = fval(q, &g);
      if (f < f_run - 0.01 * cfg.tol) {
        f_run = f;
        q_run = q;
        stall = 0;
      } else {
        ++stall;
      }
      if (f <= cfg.tol * 0.5) {
        f_run = f;
        q_run = q;
        break;
      }
      if (stall >= 55) {
        delta = std::max(delta * 0.5, cfg.tol * 0.1);
        stall = 0;
        if (delta <= cfg.tol * 0.15 && iter > 200) break;
      }
      const double gn2 = norm_sq(g);
      if (gn2 < 1e-30) break;
      const double step = (f - (f_run - delta)) / gn2;
      axpy(q, -step, g);
      ++avg_count;
      for (int c = 0; c < d; ++c)
        avg[static_cast<std::size_t>(c)] +=
            (q[static_cast<std::size_t>(c)] - avg[static_cast<std::size_t>(c)]) /
            static_cast<double>(avg_count);
      if (iter % 97 == 96) {
        const double fa = fval(avg, nullptr);
        if (fa < f_run) {
          f_run = fa;
          q_run = avg;
        }
      }
    }
    if (f_run < best_f) {
      best_f = f_run;
      best_q = q_run;
    }
  }
  return {best_q, best_f, evals};
}

// ---------------------------------------------------------------------------

Ball min_enclosing_ball(const std::vector<Point>& pts, double tol) {
  const PointSet ps(pts);  // validation
  if (pts.size() == 1) return {pts[0], 0.0};
  const int d = ps.dimension();

  auto farthest = [&](const Point& q, double* f) -> std::size_t {
    double fmax = -1.0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double dv = dist(q, pts[i]);
      if (dv > fmax) {
        fmax = dv;
        idx = i;
      }
    }
    *f = fmax;
    return idx;
  };

  Point q = ps.centroid();
  double f_best;
  farthest(q, &f_best);
  Point q_best = q;
  double delta = std::max(f_best * 0.25, tol);
  int stall = 0;
  for (int iter = 0; iter < 60000; ++iter) {
    double f;
    const std::size_t far = farthest(q, &f);
    if (f < f_best - 0.01 * tol) {
      f_best = f;
      q_best = q;
      stall = 0;
    } else {
      ++stall;
    }
    if (f <= tol) break;
    if (stall >= 60) {
      delta = std::max(delta * 0.5, tol * 0.1);
      stall = 0;
      if (delta <= tol * 0.15 && iter > 500) break;
    }
    Point g = sub(q, pts[far]);
    scale_in_place(g, 1.0 / f);  // unit subgradient
    const double step = f - (f_best - delta);
    axpy(q, -step, g);
  }
  (void)d;
  return {q_best, f_best};
}

std::vector<Point> regular_simplex(int n, double edge) {
  if (n < 1) throw std::invalid_argument("regular_simplex: need n >= 1");
  if (!(edge > 0.0)) throw std::invalid_argument("regular_simplex: need positive edge");
  // s * e_i pairwise distances are s*sqrt(2); centre afterwards.
  const double s = edge / std::sqrt(2.0);
  std::vector<Point> pts(static_cast<std::size_t>(n), zeros(n));
  for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = s;
  const double shift = s / static_cast<double>(n);
  for (auto& p : pts)
    for (double& c : p) c -= shift;
  return pts;
}

Point project_affine_hull(const std::vector<Point>& pts, const Point& x) {
  if (pts.empty()) throw std::invalid_argument("project_affine_hull: empty input");
  const int m = static_cast<int>(pts.size()) - 1;
  if (m == 0) return pts[0];
  std::vector<Point> u(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) u[static_cast<std::size_t>(i)] = sub(pts[static_cast<std::size_t>(i + 1)], pts[0]);
  std::vector<double> G(static_cast<std::size_t>(m * m));
  std::vector<double> c(static_cast<std::size_t>(m));
  const Point r = sub(x, pts[0]);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j)
      G[static_cast<std::size_t>(i * m + j)] =
          dot(u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(j)]);
    c[static_cast<std::size_t>(i)] = dot(u[static_cast<std::size_t>(i)], r);
  }
  const auto a = solve_with_ridge(G, c, m);
  Point y = pts[0];
  for (int i = 0; i < m; ++i) axpy(y, a[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(i)]);
  return y;
}

}  // namespace nodim
