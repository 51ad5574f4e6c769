#include "nodim/geometry.hpp"

#include <cmath>

#include "doctest.h"
#include "nodim/rng.hpp"
#include "oracles.hpp"

using namespace nodim;

namespace {

std::vector<Point> random_cloud(Rng& rng, int n, int d, double scale) {
  std::vector<Point> pts(static_cast<std::size_t>(n), zeros(d));
  for (auto& p : pts)
    for (double& c : p) c = scale * rng.gaussian();
  return pts;
}

}  // namespace

TEST_CASE("point set validation") {
  CHECK_THROWS_AS(PointSet({}), std::invalid_argument);
  CHECK_THROWS_AS(PointSet({{1.0, 2.0}, {1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(PointSet({{1.0, std::nan("")}}), std::invalid_argument);
  const PointSet ps({{0.0, 0.0}, {2.0, 0.0}, {0.0, 2.0}});
  CHECK(ps.dimension() == 2);
  CHECK(ps.size() == 3);
  CHECK(ps.centroid()[0] == doctest::Approx(2.0 / 3.0));
  CHECK(ps.diameter() == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("min-norm point on a segment") {
  const auto res = min_norm_point({{1.0, 0.0}, {0.0, 1.0}});
  CHECK(res.distance == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
  CHECK(res.nearest[0] == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(res.nearest[1] == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(res.coefficients[0] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("min-norm point inside the hull is zero") {
  const auto res = min_norm_point({{1.0, 0.0}, {-1.0, 0.5}, {0.0, -1.0}});
  CHECK(res.distance == doctest::Approx(0.0).epsilon(1e-6));
  // coefficients stay a convex combination
  double s = 0.0;
  for (double c : res.coefficients) {
    CHECK(c >= -1e-12);
    s += c;
  }
  CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("vertex-to-facet distance of a regular simplex") {
  // distance from one vertex to the hull of the others: edge * sqrt(n/(2(n-1)))
  for (int n = 3; n <= 7; ++n) {
    const auto pts = regular_simplex(n, 1.0);
    std::vector<Point> facet(pts.begin() + 1, pts.end());
    const auto res = nearest_hull_point(facet, pts[0]);
    CHECK(res.distance ==
          doctest::Approx(std::sqrt(n / (2.0 * (n - 1)))).epsilon(1e-8));
  }
}

TEST_CASE("min-norm matches face enumeration on random hulls") {
  Rng rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + trial % 4;
    const int n = 3 + trial % 8;
    const auto pts = random_cloud(rng, n, d, 1.0);
    Point q = zeros(d);
    for (double& c : q) c = 0.5 * rng.gaussian();
    const auto res = nearest_hull_point(pts, q);
    const double ref = oracles::nearest_point_distance(pts, q);
    CHECK(res.distance == doctest::Approx(ref).epsilon(1e-6));
    // returned combination actually evaluates to the returned point
    Point y = zeros(d);
    for (std::size_t i = 0; i < pts.size(); ++i) axpy(y, res.coefficients[i], pts[i]);
    CHECK(dist(y, res.nearest) < 1e-7);
  }
}

TEST_CASE("projection onto bodies") {
  const auto ball = ConvexBody::ball({0.0, 0.0}, 1.0);
  const Point far_pt{3.0, 4.0};
  const auto pb = project_onto_body(ball, far_pt);
  CHECK(norm(pb) == doctest::Approx(1.0));
  CHECK(pb[0] == doctest::Approx(0.6));
  const Point inside{0.1, -0.2};
  CHECK(dist(project_onto_body(ball, inside), inside) == doctest::Approx(0.0));

  const auto hsp = ConvexBody::halfspace({0.0, 2.0}, 2.0);  // y <= 1 after normalisation
  const auto ph = project_onto_body(hsp, {5.0, 3.0});
  CHECK(ph[0] == doctest::Approx(5.0));
  CHECK(ph[1] == doctest::Approx(1.0));
}

TEST_CASE("polyhedron projection onto the unit square") {
  const std::vector<Halfspace> square = {
      {{1.0, 0.0}, 1.0}, {{-1.0, 0.0}, 0.0}, {{0.0, 1.0}, 1.0}, {{0.0, -1.0}, 0.0}};
  auto p = polyhedron_project(square, {2.0, 0.5});
  REQUIRE(p.has_value());
  CHECK((*p)[0] == doctest::Approx(1.0));
  CHECK((*p)[1] == doctest::Approx(0.5));
  p = polyhedron_project(square, {2.0, 2.0});
  REQUIRE(p.has_value());
  CHECK(dist(*p, Point{1.0, 1.0}) < 1e-9);
  p = polyhedron_project(square, {0.25, 0.75});
  REQUIRE(p.has_value());
  CHECK(dist(*p, Point{0.25, 0.75}) < 1e-12);
}

TEST_CASE("polyhedron projection detects empty slabs") {
  const std::vector<Halfspace> contradictory = {{{1.0, 0.0}, 0.0}, {{-1.0, 0.0}, -1.0}};
  CHECK(!polyhedron_project(contradictory, {0.0, 0.0}).has_value());
}

TEST_CASE("distance to intersection, exact halfspace path") {
  const std::vector<ConvexBody> square = {
      ConvexBody::halfspace({1.0, 0.0}, 1.0), ConvexBody::halfspace({-1.0, 0.0}, 0.0),
      ConvexBody::halfspace({0.0, 1.0}, 1.0), ConvexBody::halfspace({0.0, -1.0}, 0.0)};
  const auto r = distance_to_intersection(square, {2.0, 2.0});
  CHECK(!r.empty);
  CHECK(r.distance == doctest::Approx(std::sqrt(2.0)));

  auto with_ball = square;
  with_ball.push_back(ConvexBody::ball({2.0, 2.0}, 1.0));
  CHECK(distance_to_intersection(with_ball, {2.0, 2.0}).empty);
  with_ball.back() = ConvexBody::ball({2.0, 2.0}, 2.0);
  const auto r2 = distance_to_intersection(with_ball, {2.0, 2.0});
  CHECK(!r2.empty);
  CHECK(r2.distance == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("distance to intersection of two balls via alternating projections") {
  // lens of B((0,0),1) and B((1,0),1); query (-2,1): active constraint is the
  // second ball, giving distance sqrt(10) - 1.
  const std::vector<ConvexBody> lens = {ConvexBody::ball({0.0, 0.0}, 1.0),
                                        ConvexBody::ball({1.0, 0.0}, 1.0)};
  const auto r = distance_to_intersection(lens, {-2.0, 1.0}, 1e-8);
  CHECK(!r.empty);
  CHECK(r.distance == doctest::Approx(std::sqrt(10.0) - 1.0).epsilon(1e-5));
}

TEST_CASE("alternating projections declare disjoint balls empty") {
  const std::vector<ConvexBody> apart = {ConvexBody::ball({0.0, 0.0}, 1.0),
                                         ConvexBody::ball({5.0, 0.0}, 1.0)};
  CHECK(distance_to_intersection(apart, {0.0, 0.0}, 1e-7).empty);
}

TEST_CASE("minimax center of two points is the midpoint") {
  const std::vector<ConvexBody> two = {ConvexBody::hull({{0.0, 0.0}}),
                                       ConvexBody::hull({{2.0, 0.0}})};
  MinimaxConfig cfg;
  cfg.restarts = 6;
  cfg.iterations = 2000;
  const auto r = minimax_center(two, cfg);
  CHECK(r.radius == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(std::fabs(r.center[0] - 1.0) < 1e-4);
}

TEST_CASE("minimax center of three balls on an equilateral triangle") {
  const double rad = 0.25;
  const auto tri = regular_simplex(3, 1.0);  // lives in R^3
  std::vector<ConvexBody> balls;
  for (const auto& v : tri) balls.push_back(ConvexBody::ball(v, rad));
  MinimaxConfig cfg;
  cfg.restarts = 8;
  cfg.iterations = 3000;
  const auto r = minimax_center(balls, cfg);
  const double circum = 1.0 / std::sqrt(3.0);
  CHECK(r.radius == doctest::Approx(circum - rad).epsilon(1e-4));
}

TEST_CASE("smallest enclosing ball of regular simplotopes") {
  // circumradius of the regular simplex on n vertices, edge 1: sqrt((n-1)/(2n))
  for (int n = 2; n <= 6; ++n) {
    const auto pts = regular_simplex(n, 1.0);
    const auto ball = min_enclosing_ball(pts, 1e-9);
    CHECK(ball.radius == doctest::Approx(std::sqrt((n - 1) / (2.0 * n))).epsilon(1e-5));
  }
}

TEST_CASE("enclosing ball radius obeys the sqrt(1/2) diameter bound") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 5;
    const auto pts = random_cloud(rng, 4 + trial % 9, d, 2.0);
    const double diam = oracles::diameter(pts);
    const auto ball = min_enclosing_ball(pts, 1e-8);
    CHECK(ball.radius <= diam / std::sqrt(2.0) + 1e-5);
    CHECK(ball.radius >= diam / 2.0 - 1e-5);
    for (const auto& p : pts) CHECK(dist(p, ball.center) <= ball.radius + 1e-5);
  }
}

TEST_CASE("mean squared spread of a point set is at most (n-1)/2n of diameter^2") {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + trial % 4;
    const auto pts = random_cloud(rng, 3 + trial % 10, d, 1.5);
    const PointSet ps(pts);
    double ms = 0.0;
    for (const auto& p : pts) ms += dist_sq(p, ps.centroid());
    ms /= static_cast<double>(pts.size());
    const double n = static_cast<double>(pts.size());
    const double bound = (n - 1.0) / (2.0 * n) * ps.diameter() * ps.diameter();
    CHECK(ms <= bound + 1e-9);
  }
}

TEST_CASE("regular simplex geometry") {
  const auto pts = regular_simplex(5, 2.0);
  CHECK(pts.size() == 5);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      CHECK(dist(pts[i], pts[j]) == doctest::Approx(2.0));
  const PointSet ps(pts);
  CHECK(norm(ps.centroid()) < 1e-12);
}

TEST_CASE("projection onto an affine hull") {
  const auto p = project_affine_hull({{0.0, 0.0}, {1.0, 1.0}}, {1.0, 0.0});
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.5));
}
