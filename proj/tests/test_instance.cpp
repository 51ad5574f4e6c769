#include "nodim/instance.hpp"

#include <cstdio>
#include <string>

#include "doctest.h"
#include "nodim/caratheodory.hpp"
#include "nodim/helly.hpp"
#include "nodim/vec.hpp"

using namespace nodim;
using doctest::Approx;

namespace {

InstanceFile roundtrip(const InstanceFile& inst) {
  return parse_instance(serialize_instance(inst));
}

GenParams params_nd(int n, int d) {
  GenParams p;
  p.n = n;
  p.d = d;
  return p;
}

}  // namespace

TEST_CASE("serialization round-trips every generator bit-exactly") {
  std::vector<InstanceFile> all;
  all.push_back(generate_instance("regular_simplex", [] {
                  GenParams p;
                  p.n = 5;
                  p.edge = 1.25;
                  return p;
                }(),
                                  1));
  all.push_back(generate_instance("random_cloud", params_nd(9, 4), 2));
  all.push_back(generate_instance("random_colored", [] {
                  GenParams p;
                  p.r = 3;
                  p.n = 4;
                  p.d = 3;
                  return p;
                }(),
                                  3));
  all.push_back(generate_instance("random_weighted", [] {
                  GenParams p;
                  p.r = 3;
                  p.n = 5;
                  p.d = 4;
                  return p;
                }(),
                                  4));
  all.push_back(generate_instance("helly_tight", [] {
                  GenParams p;
                  p.n = 5;
                  p.k = 2;
                  return p;
                }(),
                                  5));
  all.push_back(generate_instance("hyperplane_family", [] {
                  GenParams p;
                  p.k = 2;
                  p.m = {2, 3};
                  p.rho = {0.5, 0.5};
                  return p;
                }(),
                                  6));
  all.push_back(generate_instance("fractional_tight", [] {
                  GenParams p;
                  p.k = 3;
                  return p;
                }(),
                                  7));
  all.push_back(generate_instance("random_helly", params_nd(6, 3), 8));

  for (const InstanceFile& inst : all) {
    CAPTURE(inst.kind);
    const InstanceFile back = roundtrip(inst);
    CHECK(back == inst);
    // serialization itself is deterministic
    CHECK(serialize_instance(back) == serialize_instance(inst));
  }
}

TEST_CASE("generation is deterministic in the seed") {
  const auto a = generate_instance("random_cloud", params_nd(12, 5), 99);
  const auto b = generate_instance("random_cloud", params_nd(12, 5), 99);
  const auto c = generate_instance("random_cloud", params_nd(12, 5), 100);
  CHECK(a == b);
  CHECK(a.coordinates != c.coordinates);
}

TEST_CASE("regular simplex instance has the declared edge length") {
  GenParams p;
  p.n = 6;
  p.edge = 0.75;
  const auto inst = generate_instance("regular_simplex", p, 1);
  const PointSet pts = instance_points(inst);
  REQUIRE(pts.size() == 6);
  CHECK(pts.dimension() == 6);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      CHECK(dist(pts[i], pts[j]) == Approx(0.75).epsilon(1e-12));
}

TEST_CASE("weighted instances express the target point exactly") {
  GenParams p;
  p.r = 4;
  p.n = 6;
  p.d = 5;
  for (std::uint64_t seed : {21u, 22u, 23u}) {
    const auto inst = generate_instance("random_weighted", p, seed);
    Point a;
    const WeightedFamily family = instance_weighted(inst, &a);
    REQUIRE(family.sets.size() == 4);
    for (std::size_t i = 0; i < family.sets.size(); ++i) {
      Point combo = zeros(5);
      for (std::size_t j = 0; j < family.sets[i].size(); ++j)
        axpy(combo, family.weights[i][j], family.sets[i][j]);
      CHECK(dist(combo, a) < 1e-12);
    }
    const auto res = derandomized_transversal(family, a);
    CHECK(res.distance <= res.bound + 1e-9);
  }
}

TEST_CASE("helly_tight reports sub-nanometre tangency slack") {
  for (int n : {4, 6}) {
    for (int k = 1; k < n; ++k) {
      GenParams p;
      p.n = n;
      p.k = k;
      const auto inst = generate_instance("helly_tight", p, 1);
      CAPTURE(n);
      CAPTURE(k);
      CHECK(std::stod(inst.metadata.at("tangency_slack")) < 1e-9);
      const BodyFamily bf = instance_bodies(inst);
      REQUIRE(bf.families.size() == 1);
      CHECK(bf.families[0].size() == static_cast<std::size_t>(n));
      const auto report = check_kwise_hypothesis(bf.families[0], k, bf.anchor.center);
      CHECK(report.ok);
    }
  }
}

TEST_CASE("hyperplane_family counting matches the declared product") {
  GenParams p;
  p.k = 2;
  p.m = {2, 3};
  p.rho = {0.5, 0.5};
  const auto inst = generate_instance("hyperplane_family", p, 1);
  CHECK(inst.metadata.at("m") == "2,3");
  CHECK(inst.metadata.at("expected_far") == "6");
  const BodyFamily bf = instance_bodies(inst);
  REQUIRE(bf.families.size() == 2);
  CHECK(bf.families[0].size() == 3);  // default size m_i + 1
  CHECK(bf.families[1].size() == 4);
  const auto count = count_far_transversals(bf, zeros(2), inst.rhos);
  CHECK(count.total_transversals == 12);
  CHECK(count.far_transversals == 6);
  CHECK(count.undecided == 0);
}

TEST_CASE("fractional_tight hits its alpha for k beyond the planar case") {
  for (int k : {2, 3, 4}) {
    GenParams p;
    p.k = k;
    const auto inst = generate_instance("fractional_tight", p, 1);
    CAPTURE(k);
    const BodyFamily bf = instance_bodies(inst);
    const auto witness = fractional_helly_witness(bf);
    CHECK(witness.alpha == Approx(1.0 - std::pow(2.0, -k)).epsilon(1e-12));
    CHECK(witness.beta_required == Approx(0.5).epsilon(1e-12));
    CHECK(witness.found);
    CHECK(largest_intersecting_subfamily(bf.families[0], zeros(inst.dimension)) == 3);
  }
}

TEST_CASE("random_helly instances satisfy the k-wise hypothesis by construction") {
  for (std::uint64_t seed : {31u, 32u}) {
    const auto inst = generate_instance("random_helly", params_nd(7, 3), seed);
    const BodyFamily bf = instance_bodies(inst);
    for (int k : {2, 3}) {
      const auto report = check_kwise_hypothesis(bf.families[0], k, bf.anchor.center);
      CAPTURE(seed);
      CAPTURE(k);
      CHECK(report.ok);
    }
  }
}

TEST_CASE("body records survive encode/decode for all three shapes") {
  const auto ball = ConvexBody::ball(Point{0.25, -1.5}, 2.75);
  const auto half = ConvexBody::halfspace(Point{1.0, 0.0}, 0.3);
  const auto hull = ConvexBody::hull({Point{0.0, 0.0}, Point{1.0, 0.1}, Point{0.4, 2.0}});
  for (const auto& body : {ball, half, hull}) {
    const ConvexBody back = decode_body(encode_body(body), 2);
    CHECK(back.kind() == body.kind());
    CHECK(encode_body(back) == encode_body(body));
  }
}

TEST_CASE("instance files round-trip through disk") {
  const std::string path = "instance_io_test.json";
  const auto inst = generate_instance("random_colored", [] {
    GenParams p;
    p.r = 2;
    p.n = 3;
    p.d = 2;
    return p;
  }(),
                                      77);
  write_instance(inst, path);
  const InstanceFile back = read_instance(path);
  CHECK(back == inst);
  std::remove(path.c_str());
}

TEST_CASE("validation rejects malformed instances") {
  InstanceFile inst;
  inst.kind = "point_set";
  inst.dimension = 2;
  inst.coordinates = {1.0, 2.0, 3.0};  // not a multiple of dimension
  CHECK_THROWS_WITH_AS(validate_instance(inst), doctest::Contains("multiple of dimension"),
                       std::invalid_argument);

  inst.coordinates = {1.0, 2.0};
  inst.kind = "mystery";
  CHECK_THROWS_WITH_AS(validate_instance(inst), doctest::Contains("unknown instance kind"),
                       std::invalid_argument);

  inst.kind = "colored_family";
  inst.color_sizes = {3};
  CHECK_THROWS_WITH_AS(validate_instance(inst), doctest::Contains("color_sizes sum"),
                       std::invalid_argument);

  InstanceFile bodies;
  bodies.kind = "body_family";
  bodies.dimension = 2;
  bodies.families.push_back({BodyRecord{"ball", {0.0, 0.0}}});  // missing radius
  bodies.anchor = {0.0, 0.0, 1.0};
  CHECK_THROWS_WITH_AS(validate_instance(bodies), doctest::Contains("record length"),
                       std::invalid_argument);

  bodies.families[0][0] = BodyRecord{"torus", {0.0, 0.0, 1.0}};
  CHECK_THROWS_WITH_AS(validate_instance(bodies), doctest::Contains("unknown body type"),
                       std::invalid_argument);

  CHECK_THROWS_WITH_AS(parse_instance("{ not json"), doctest::Contains("parse error"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(generate_instance("nope", GenParams{}, 1),
                       doctest::Contains("unknown generator"), std::invalid_argument);
}

TEST_CASE("converters refuse mismatched kinds") {
  const auto cloud = generate_instance("random_cloud", params_nd(4, 2), 5);
  CHECK_THROWS_AS(instance_colored(cloud), std::invalid_argument);
  CHECK_THROWS_AS(instance_bodies(cloud), std::invalid_argument);
  GenParams hp;
  hp.k = 1;
  hp.m = {2};
  hp.rho = {0.5};
  const auto bodies = generate_instance("hyperplane_family", hp, 5);
  CHECK_THROWS_AS(instance_points(bodies), std::invalid_argument);
}

TEST_CASE("bound report rows print deterministically and carry the fixed header") {
  CHECK(report_csv_header() ==
        "theorem_tag,instance_ref,n,r_or_k,dimension,achieved,bound,ratio,pass,runtime_ms,seed");
  BoundReport rep;
  rep.theorem_tag = "thm4";
  rep.instance_ref = "gen:random_weighted:7";
  rep.n = 12;
  rep.r_or_k = 3;
  rep.dimension = 5;
  rep.achieved = 0.123456789123456789;
  rep.bound = std::sqrt(2.0) / 3.0;
  rep.seed = 7;
  rep.slack = 1e-9;
  finish_report(rep);
  CHECK(rep.pass);
  CHECK(rep.ratio == Approx(rep.achieved / rep.bound).epsilon(1e-15));
  const std::string row = report_csv_row(rep);
  CHECK(row == report_csv_row(rep));
  // numbers round-trip through the printed text
  const auto at = row.find(",0.123");
  REQUIRE(at != std::string::npos);
  CHECK(std::stod(row.substr(at + 1)) == rep.achieved);
  // json mirror carries the slack too
  const std::string js = report_json(rep);
  CHECK(js.find("\"slack\"") != std::string::npos);
  CHECK(js == report_json(rep));

  BoundReport fail = rep;
  fail.achieved = fail.bound + 1.0;
  finish_report(fail);
  CHECK_FALSE(fail.pass);
}
