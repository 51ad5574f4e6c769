#include "nodim/helly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "nodim/enumeration.hpp"
#include "nodim/linalg.hpp"
#include "nodim/rng.hpp"

namespace nodim {

namespace {

constexpr std::uint64_t kEnumGuard = 1000000;

std::string subset_label(const std::vector<int>& J) {
  std::string s = "{";
  for (std::size_t i = 0; i < J.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(J[i]);
  }
  return s + "}";
}

double body_distance(const ConvexBody& body, const Point& x) {
  return dist(x, project_onto_body(body, x));
}

// m-dimensional volume of the simplex on verts (m = |verts| - 1), via the
// Gram determinant of the edge vectors. 0-dimensional volume is 1.
double simplex_volume(const std::vector<Point>& verts) {
  const int m = static_cast<int>(verts.size()) - 1;
  if (m <= 0) return 1.0;
  std::vector<Point> e(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) e[static_cast<std::size_t>(i)] = sub(verts[static_cast<std::size_t>(i + 1)], verts[0]);
  std::vector<double> G(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      G[static_cast<std::size_t>(i * m + j)] = dot(e[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(j)]);
  double fact = 1.0;
  for (int i = 2; i <= m; ++i) fact *= i;
  return std::sqrt(std::max(determinant(std::move(G), m), 0.0)) / fact;
}

// Multi-start Polyak subgradient descent over a max-of-convex-distances
// objective; same stall/step bookkeeping as the body minimax solver.
double polyak_minimize(const std::function<double(const Point&, Point*)>& fval,
                       const std::vector<Point>& starts, int iterations, double tol,
                       Point* best_q) {
  double best_f = std::numeric_limits<double>::infinity();
  const int d = static_cast<int>(starts.front().size());
  for (const auto& start : starts) {
    Point q = start;
    double f_run = fval(q, nullptr);
    Point q_run = q;
    double delta = std::max(f_run * 0.25, tol);
    int stall = 0;
    Point avg = q;
    int avg_count = 1;
    for (int iter = 0; iter < iterations; ++iter) {
      Point g;
      const double f = fval(q, &g);
      if (f < f_run - 0.01 * tol) {
        f_run = f;
        q_run = q;
        stall = 0;
      } else {
        ++stall;
      }
      if (f <= tol * 0.5) {
        f_run = f;
        q_run = q;
        break;
      }
      if (stall >= 55) {
        delta = std::max(delta * 0.5, tol * 0.1);
        stall = 0;
        if (delta <= tol * 0.15 && iter > 200) break;
      }
      const double gn2 = norm_sq(g);
      if (gn2 < 1e-30) break;
      const double step = (f - (f_run - delta)) / gn2;
      axpy(q, -step, g);
      ++avg_count;
      for (int c = 0; c < d; ++c)
        avg[static_cast<std::size_t>(c)] +=
            (q[static_cast<std::size_t>(c)] - avg[static_cast<std::size_t>(c)]) / avg_count;
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
      *best_q = q_run;
    }
  }
  return best_f;
}

std::vector<Point> ball_samples(const Ball& ball, int count, std::uint64_t seed) {
  Rng rng(seed);
  const int d = static_cast<int>(ball.center.size());
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    Point dir = zeros(d);
    for (double& v : dir) v = rng.gaussian();
    const double nn = norm(dir);
    if (nn < 1e-12) {
      out.push_back(ball.center);
      continue;
    }
    const double rad = ball.radius * std::pow(rng.uniform01(), 1.0 / d);
    Point p = ball.center;
    axpy(p, rad / nn, dir);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

void validate_body_family(const BodyFamily& bf) {
  if (bf.families.empty()) throw std::invalid_argument("body family is empty");
  const int dim = static_cast<int>(bf.anchor.center.size());
  if (!(bf.anchor.radius > 0.0)) throw std::invalid_argument("anchor ball needs positive radius");
  for (std::size_t i = 0; i < bf.families.size(); ++i) {
    if (bf.families[i].empty())
      throw std::invalid_argument("family " + std::to_string(i) + " is empty");
    for (const auto& body : bf.families[i])
      if (body.dimension() != dim)
        throw std::invalid_argument("family " + std::to_string(i) + " has mismatched dimension");
  }
}

KwiseReport check_kwise_hypothesis(const std::vector<ConvexBody>& bodies, int k,
                                   const Point& b) {
  const int n = static_cast<int>(bodies.size());
  if (k < 1 || k > n) throw std::invalid_argument("subset size must satisfy 1 <= k <= n");
  if (binomial_capped(n, k, kEnumGuard) > kEnumGuard)
    throw std::invalid_argument("number of k-subsets exceeds the enumeration guard");

  KwiseReport rep;
  for_each_combination(n, k, [&](const std::vector<int>& J) {
    std::vector<ConvexBody> sel;
    sel.reserve(J.size() + 1);
    for (int j : J) sel.push_back(bodies[static_cast<std::size_t>(j)]);
    sel.push_back(ConvexBody::ball(b, 1.0));
    try {
      const IntersectionDistance r = distance_to_intersection(sel, b);
      if (r.empty) {
        rep.ok = false;
        rep.failures.push_back(J);
      }
    } catch (const UndecidedError& e) {
      throw UndecidedError("hypothesis check undecided on J = " + subset_label(J) + ": " +
                               e.what(),
                           e.residual, e.sweeps);
    }
    return true;
  });
  return rep;
}

HellyCenterReport helly_center(const std::vector<ConvexBody>& bodies, int k, const Point& b) {
  const KwiseReport hyp = check_kwise_hypothesis(bodies, k, b);
  if (!hyp.ok)
    throw std::invalid_argument("the k-wise intersection hypothesis fails on " +
                                std::to_string(hyp.failures.size()) + " subsets");

  MinimaxConfig cfg;
  cfg.restarts = 16;
  cfg.iterations = 6000;
  cfg.tol = 1e-9;
  cfg.seed = 3;
  const MinimaxResult mm = minimax_center(bodies, cfg);

  const int n = static_cast<int>(bodies.size());
  HellyCenterReport rep;
  rep.center = mm.center;
  rep.radius = mm.radius;
  rep.bound_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));
  rep.bound_precise =
      (n > 1) ? std::sqrt(static_cast<double>(n - k) / (static_cast<double>(k) * (n - 1))) : 0.0;
  rep.pass_sqrt_k = rep.radius <= rep.bound_sqrt_k + 1e-6;
  rep.pass_precise = rep.radius <= rep.bound_precise + 1e-6;
  return rep;
}

CountingReport count_far_transversals(const BodyFamily& bf, const Point& q,
                                      const std::vector<double>& rhos) {
  validate_body_family(bf);
  const std::size_t k = bf.families.size();
  if (rhos.size() != k)
    throw std::invalid_argument("need one rho per family");

  std::uint64_t total = 1;
  for (const auto& fam : bf.families) {
    total *= fam.size();
    if (total > kEnumGuard)
      throw std::invalid_argument("number of transversals exceeds the enumeration guard");
  }

  CountingReport rep;
  rep.total_transversals = total;
  double rho_sq = 0.0;
  for (double r : rhos) rho_sq += r * r;
  rep.rho = std::sqrt(rho_sq);

  // odometer over one body index per family
  std::vector<std::size_t> pick(k, 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::vector<ConvexBody> sel;
    sel.reserve(k);
    for (std::size_t i = 0; i < k; ++i) sel.push_back(bf.families[i][pick[i]]);
    try {
      const IntersectionDistance r = distance_to_intersection(sel, q);
      if (r.empty || r.distance > rep.rho) ++rep.far_transversals;
    } catch (const UndecidedError&) {
      ++rep.undecided;
    }
    for (std::size_t i = k; i-- > 0;) {
      if (++pick[i] < bf.families[i].size()) break;
      pick[i] = 0;
    }
  }

  // probe set for the m_i estimate: q, projections of q, seeded ball samples
  std::vector<Point> probes{q};
  for (const auto& fam : bf.families)
    for (const auto& body : fam) probes.push_back(project_onto_body(body, q));
  for (auto& p : ball_samples(bf.anchor, 100, 9001)) probes.push_back(std::move(p));

  rep.product_bound = 1;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t mi = std::numeric_limits<std::uint64_t>::max();
    for (const auto& p : probes) {
      std::uint64_t cnt = 0;
      for (const auto& body : bf.families[i])
        if (body_distance(body, p) > rhos[i]) ++cnt;
      mi = std::min(mi, cnt);
    }
    rep.per_family_m.push_back(mi);
    rep.product_bound *= mi;
  }
  return rep;
}

int largest_intersecting_subfamily(const std::vector<ConvexBody>& family, const Point& origin) {
  const int n = static_cast<int>(family.size());
  if (n == 0) return 0;
  if (n > 20) throw std::invalid_argument("subfamily enumeration guard exceeded");

  for (int s = n; s >= 1; --s) {
    bool hit = false;
    for_each_combination(n, s, [&](const std::vector<int>& J) {
      std::vector<ConvexBody> sel;
      sel.reserve(J.size());
      for (int j : J) sel.push_back(family[static_cast<std::size_t>(j)]);
      const IntersectionDistance r = distance_to_intersection(sel, origin);
      if (!r.empty) {
        hit = true;
        return false;
      }
      return true;
    });
    if (hit) return s;
  }
  return 0;
}

namespace {

// Shared witness hunt: try candidate centres, report the best (family, count).
void hunt_witness(const std::vector<std::vector<ConvexBody>>& families, double radius,
                  const std::vector<Point>& candidates, FractionalWitness* out) {
  int best_count = -1;
  double best_frac = -1.0;
  for (const auto& q : candidates) {
    for (std::size_t i = 0; i < families.size(); ++i) {
      int count = 0;
      for (const auto& body : families[i])
        if (body_distance(body, q) <= radius + 1e-9) ++count;
      const double frac = static_cast<double>(count) / families[i].size();
      if (frac > best_frac) {
        best_frac = frac;
        best_count = count;
        out->q = q;
        out->family_index = static_cast<int>(i);
      }
    }
  }
  out->hit_count = best_count;
  out->hit_fraction = best_frac;
  const double need = out->beta_required *
                      static_cast<double>(families[static_cast<std::size_t>(out->family_index)].size());
  out->found = best_count + 1e-9 >= need;
}

std::vector<Point> base_candidates(const std::vector<std::vector<ConvexBody>>& families,
                                   const Ball& anchor) {
  std::vector<Point> cand{anchor.center};
  for (const auto& fam : families)
    for (const auto& body : fam) cand.push_back(project_onto_body(body, anchor.center));
  MinimaxConfig light;
  light.restarts = 6;
  light.iterations = 800;
  light.tol = 1e-7;
  light.seed = 5;
  for (const auto& fam : families) cand.push_back(minimax_center(fam, light).center);
  for (auto& p : ball_samples(anchor, 200, 271828)) cand.push_back(std::move(p));
  return cand;
}

}  // namespace

FractionalWitness fractional_helly_witness(const BodyFamily& bf) {
  validate_body_family(bf);
  const std::size_t k = bf.families.size();

  std::uint64_t total = 1;
  for (const auto& fam : bf.families) {
    total *= fam.size();
    if (total > kEnumGuard)
      throw std::invalid_argument("number of transversals exceeds the enumeration guard");
  }

  FractionalWitness out;
  out.alpha_convention = "transversals";

  std::vector<Point> candidates = base_candidates(bf.families, bf.anchor);
  std::uint64_t meets = 0;
  std::vector<std::size_t> pick(k, 0);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::vector<ConvexBody> sel;
    sel.reserve(k + 1);
    for (std::size_t i = 0; i < k; ++i) sel.push_back(bf.families[i][pick[i]]);
    sel.push_back(ConvexBody::ball(bf.anchor.center, bf.anchor.radius));
    const IntersectionDistance r = distance_to_intersection(sel, bf.anchor.center);
    if (!r.empty) {
      ++meets;
      if (candidates.size() < 600) candidates.push_back(r.witness);
    }
    for (std::size_t i = k; i-- > 0;) {
      if (++pick[i] < bf.families[i].size()) break;
      pick[i] = 0;
    }
  }

  out.alpha = static_cast<double>(meets) / static_cast<double>(total);
  out.beta_required = 1.0 - std::pow(1.0 - out.alpha, 1.0 / static_cast<double>(k));
  hunt_witness(bf.families, bf.anchor.radius / std::sqrt(static_cast<double>(k)), candidates,
               &out);
  return out;
}

FractionalWitness fractional_single_family(const std::vector<ConvexBody>& family, int k,
                                           const Ball& anchor) {
  const int n = static_cast<int>(family.size());
  if (k < 1 || n < k) throw std::invalid_argument("need k <= family size");
  if (binomial_capped(n, k, kEnumGuard) > kEnumGuard)
    throw std::invalid_argument("number of k-subsets exceeds the enumeration guard");

  FractionalWitness out;
  out.alpha_convention = "ordered_distinct";

  std::vector<std::vector<ConvexBody>> wrap{family};
  std::vector<Point> candidates = base_candidates(wrap, anchor);

  // meet counts per subset size feed both tuple conventions
  std::vector<double> meet(static_cast<std::size_t>(k) + 1, 0.0);
  for (int j = 1; j <= k; ++j) {
    for_each_combination(n, j, [&](const std::vector<int>& J) {
      std::vector<ConvexBody> sel;
      sel.reserve(J.size() + 1);
      for (int idx : J) sel.push_back(family[static_cast<std::size_t>(idx)]);
      sel.push_back(ConvexBody::ball(anchor.center, anchor.radius));
      const IntersectionDistance r = distance_to_intersection(sel, anchor.center);
      if (!r.empty) {
        meet[static_cast<std::size_t>(j)] += 1.0;
        if (candidates.size() < 600) candidates.push_back(r.witness);
      }
      return true;
    });
  }

  out.alpha = meet[static_cast<std::size_t>(k)] / binomial_double(n, k);

  // with repetitions: a tuple's intersection is decided by its support
  double meeting_rep = 0.0;
  for (int j = 1; j <= k; ++j) {
    double fact = 1.0;
    for (int i = 2; i <= j; ++i) fact *= i;
    const double surj =
        fact * static_cast<double>(stirling2_capped(k, j, 1000000000ull));
    meeting_rep += meet[static_cast<std::size_t>(j)] * surj;
  }
  out.alpha_with_repeats = meeting_rep / std::pow(static_cast<double>(n), k);

  out.beta_required = 1.0 - std::pow(1.0 - out.alpha, 1.0 / static_cast<double>(k));
  hunt_witness(wrap, anchor.radius / std::sqrt(static_cast<double>(k)), candidates, &out);
  return out;
}

double simplex_lambda(int n, int k) {
  if (k < 1 || k > n - 1) throw std::invalid_argument("need 1 <= k <= n-1");
  return std::sqrt(static_cast<double>(n - 1) * (n - k) / k);
}

FaceBallReport min_ball_meeting_faces(const PointSet& vertices, int k, FaceMode mode,
                                      const FaceBallConfig& cfg) {
  const int n = static_cast<int>(vertices.size());
  if (k < 1 || k > n - 1) throw std::invalid_argument("need 1 <= k <= n-1");
  const int d = vertices.dimension();

  // affine independence: normalized Gram determinant of the edge vectors
  {
    const int m = n - 1;
    std::vector<Point> e(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      e[static_cast<std::size_t>(i)] = sub(vertices[static_cast<std::size_t>(i + 1)], vertices[0]);
      const double len = norm(e[static_cast<std::size_t>(i)]);
      if (len < 1e-12) throw std::invalid_argument("degenerate simplex");
      scale_in_place(e[static_cast<std::size_t>(i)], 1.0 / len);
    }
    std::vector<double> G(static_cast<std::size_t>(m * m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        G[static_cast<std::size_t>(i * m + j)] =
            dot(e[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(j)]);
    if (determinant(std::move(G), m) <= 1e-10) throw std::invalid_argument("degenerate simplex");
  }

  // inradius and incenter from facet volumes: h_j T_j = (n-1) V
  const double vol = simplex_volume(vertices.points());
  std::vector<double> facet_vol(static_cast<std::size_t>(n));
  double vol_sum = 0.0;
  for (int j = 0; j < n; ++j) {
    std::vector<Point> facet;
    for (int i = 0; i < n; ++i)
      if (i != j) facet.push_back(vertices[static_cast<std::size_t>(i)]);
    facet_vol[static_cast<std::size_t>(j)] = simplex_volume(facet);
    vol_sum += facet_vol[static_cast<std::size_t>(j)];
  }
  const double inradius = (n - 1) * vol / vol_sum;
  Point incenter = zeros(d);
  for (int j = 0; j < n; ++j)
    axpy(incenter, facet_vol[static_cast<std::size_t>(j)] / vol_sum,
         vertices[static_cast<std::size_t>(j)]);

  // face objects: vertex k-subsets; cone mode attaches the outer halfspaces
  // of the n-k facets containing the face
  std::vector<Halfspace> facet_hs(static_cast<std::size_t>(n));
  if (mode == FaceMode::Cone) {
    for (int j = 0; j < n; ++j) {
      std::vector<Point> facet;
      for (int i = 0; i < n; ++i)
        if (i != j) facet.push_back(vertices[static_cast<std::size_t>(i)]);
      const Point foot = project_affine_hull(facet, vertices[static_cast<std::size_t>(j)]);
      Point u = sub(foot, vertices[static_cast<std::size_t>(j)]);
      const double h = norm(u);
      if (h < 1e-12) throw std::invalid_argument("degenerate simplex");
      scale_in_place(u, 1.0 / h);
      // far side of the facet plane, seen from vertex j
      facet_hs[static_cast<std::size_t>(j)] = Halfspace{scaled(u, -1.0), -dot(u, foot)};
    }
  }

  std::vector<std::vector<Point>> face_pts;
  std::vector<std::vector<Halfspace>> face_cones;
  for_each_combination(n, k, [&](const std::vector<int>& V) {
    std::vector<Point> pts;
    for (int v : V) pts.push_back(vertices[static_cast<std::size_t>(v)]);
    face_pts.push_back(std::move(pts));
    if (mode == FaceMode::Cone) {
      std::vector<Halfspace> hs;
      std::vector<char> in_face(static_cast<std::size_t>(n), 0);
      for (int v : V) in_face[static_cast<std::size_t>(v)] = 1;
      for (int j = 0; j < n; ++j)
        if (!in_face[static_cast<std::size_t>(j)]) hs.push_back(facet_hs[static_cast<std::size_t>(j)]);
      face_cones.push_back(std::move(hs));
    }
    return true;
  });

  auto fval = [&](const Point& q, Point* grad) -> double {
    double fmax = -1.0;
    Point far_proj;
    for (std::size_t f = 0; f < face_pts.size(); ++f) {
      Point proj;
      if (mode == FaceMode::Affine) {
        proj = project_affine_hull(face_pts[f], q);
      } else {
        proj = *polyhedron_project(face_cones[f], q);  // cones are never empty
      }
      const double dv = dist(q, proj);
      if (dv > fmax) {
        fmax = dv;
        if (grad) far_proj = proj;
      }
    }
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

  std::vector<Point> starts{incenter, vertices.centroid(),
                            min_enclosing_ball(vertices.points()).center};
  Rng rng(cfg.seed);
  while (static_cast<int>(starts.size()) < std::max(cfg.restarts, 3)) {
    Point p = incenter;
    for (double& c : p) c += inradius * rng.gaussian();
    starts.push_back(std::move(p));
  }

  FaceBallReport rep;
  rep.inradius = inradius;
  rep.incenter = incenter;
  rep.radius = polyak_minimize(fval, starts, cfg.iterations, 1e-10 * (1.0 + inradius),
                               &rep.center);
  rep.ratio = rep.radius / inradius;

  const double lambda = simplex_lambda(n, k);
  if (rep.ratio < lambda - 1e-5)
    throw std::runtime_error("face-ball ratio fell below the simplex bound; inconsistent volumes or solver failure");
  return rep;
}

}  // namespace nodim
