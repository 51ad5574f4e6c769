#include "nodim/instance.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "nodim/enumeration.hpp"
#include "nodim/rng.hpp"

namespace nodim {

namespace {

using nlohmann::json;

const char* kKinds[] = {"point_set", "colored_family", "weighted_family", "body_family"};

bool known_kind(const std::string& kind) {
  for (const char* k : kKinds)
    if (kind == k) return true;
  return false;
}

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

// shortest representation that parses back to the same double
std::string fmt_double(double v) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

std::vector<Point> unflatten(const std::vector<double>& flat, int dim) {
  std::vector<Point> pts;
  pts.reserve(flat.size() / static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i + static_cast<std::size_t>(dim) <= flat.size();
       i += static_cast<std::size_t>(dim))
    pts.emplace_back(flat.begin() + static_cast<long>(i),
                     flat.begin() + static_cast<long>(i) + dim);
  return pts;
}

void flatten_into(const std::vector<Point>& pts, std::vector<double>& out) {
  for (const Point& p : pts) out.insert(out.end(), p.begin(), p.end());
}

Point gaussian_point(Rng& rng, int d, double scale) {
  Point p(static_cast<std::size_t>(d));
  for (double& c : p) c = scale * rng.gaussian();
  return p;
}

// k unit vectors in R^{max(k-1,1)} summing to zero (regular simplex vertex
// directions, expressed in an orthonormal basis of their span).
std::vector<Point> simplex_directions(int k) {
  if (k < 2) bad("simplex_directions: need k >= 2");
  if (k == 2) return {Point{1.0}, Point{-1.0}};
  const std::vector<Point> verts = regular_simplex(k, 1.0);
  // Gram-Schmidt a basis of the span (rank k-1).
  std::vector<Point> basis;
  for (const Point& v : verts) {
    Point w = v;
    for (const Point& b : basis) axpy(w, -dot(w, b), b);
    const double nw = norm(w);
    if (nw > 1e-9) {
      scale_in_place(w, 1.0 / nw);
      basis.push_back(w);
    }
  }
  if (static_cast<int>(basis.size()) != k - 1) bad("simplex_directions: rank mismatch");
  std::vector<Point> dirs;
  for (const Point& v : verts) {
    Point c(static_cast<std::size_t>(k - 1));
    for (int j = 0; j < k - 1; ++j) c[static_cast<std::size_t>(j)] = dot(v, basis[static_cast<std::size_t>(j)]);
    scale_in_place(c, 1.0 / norm(c));
    dirs.push_back(std::move(c));
  }
  return dirs;
}

// bounded piece of the hyperplane {u.x = offset}: corners offset*u +/- L
// along an orthonormal basis of u's complement
std::vector<Point> plate_corners(const Point& u, double offset, double extent) {
  const int d = static_cast<int>(u.size());
  Point base = scaled(u, offset);
  if (d == 1) return {base};
  std::vector<Point> tangent;
  for (int i = 0; i < d && static_cast<int>(tangent.size()) < d - 1; ++i) {
    Point w(static_cast<std::size_t>(d), 0.0);
    w[static_cast<std::size_t>(i)] = 1.0;
    axpy(w, -dot(w, u), u);
    for (const Point& t : tangent) axpy(w, -dot(w, t), t);
    const double nw = norm(w);
    if (nw > 1e-9) {
      scale_in_place(w, 1.0 / nw);
      tangent.push_back(w);
    }
  }
  std::vector<Point> corners;
  const int combos = 1 << tangent.size();
  for (int mask = 0; mask < combos; ++mask) {
    Point c = base;
    for (std::size_t t = 0; t < tangent.size(); ++t)
      axpy(c, (mask >> t & 1) ? extent : -extent, tangent[t]);
    corners.push_back(std::move(c));
  }
  return corners;
}

// axis-aligned one-sided plate {x_axis = offset, |x_j| <= extent}
std::vector<Point> axis_plate_corners(int d, int axis, double offset, double extent) {
  Point u(static_cast<std::size_t>(d), 0.0);
  u[static_cast<std::size_t>(axis)] = 1.0;
  return plate_corners(u, offset, extent);
}

void meta_params(InstanceFile& inst, const std::string& generator, std::uint64_t seed) {
  inst.metadata["generator"] = generator;
  inst.metadata["seed"] = std::to_string(seed);
}

InstanceFile gen_regular_simplex(const GenParams& p) {
  if (p.n < 2) bad("regular_simplex: need n >= 2");
  InstanceFile inst;
  inst.kind = "point_set";
  inst.dimension = p.n;
  flatten_into(regular_simplex(p.n, p.edge), inst.coordinates);
  inst.metadata["edge"] = fmt_double(p.edge);
  return inst;
}

InstanceFile gen_random_cloud(const GenParams& p, Rng& rng) {
  if (p.n < 1 || p.d < 1) bad("random_cloud: need n >= 1 and d >= 1");
  InstanceFile inst;
  inst.kind = "point_set";
  inst.dimension = p.d;
  for (int i = 0; i < p.n; ++i)
    flatten_into({gaussian_point(rng, p.d, p.spread)}, inst.coordinates);
  return inst;
}

InstanceFile gen_random_colored(const GenParams& p, Rng& rng) {
  if (p.r < 1 || p.n < 1 || p.d < 1) bad("random_colored: need r, n, d >= 1");
  InstanceFile inst;
  inst.kind = "colored_family";
  inst.dimension = p.d;
  for (int c = 0; c < p.r; ++c) {
    inst.color_sizes.push_back(p.n);
    for (int i = 0; i < p.n; ++i)
      flatten_into({gaussian_point(rng, p.d, p.spread)}, inst.coordinates);
  }
  return inst;
}

// every set is translated so its centroid lands on a shared target point, so
// the uniform weight vectors express that point in every set
InstanceFile gen_random_weighted(const GenParams& p, Rng& rng) {
  if (p.r < 1 || p.n < 1 || p.d < 1) bad("random_weighted: need r, n, d >= 1");
  InstanceFile inst;
  inst.kind = "weighted_family";
  inst.dimension = p.d;
  inst.target = gaussian_point(rng, p.d, 0.3 * p.spread);
  for (int c = 0; c < p.r; ++c) {
    std::vector<Point> pts;
    Point centroid = zeros(p.d);
    for (int i = 0; i < p.n; ++i) {
      pts.push_back(gaussian_point(rng, p.d, p.spread));
      add_in_place(centroid, pts.back());
    }
    scale_in_place(centroid, 1.0 / p.n);
    for (Point& pt : pts) {
      add_in_place(pt, inst.target);
      sub_in_place(pt, centroid);
      inst.weights.push_back(1.0 / p.n);
    }
    inst.color_sizes.push_back(p.n);
    flatten_into(pts, inst.coordinates);
  }
  return inst;
}

// n halfspaces u_j.x >= t with the regular-simplex directions; every k of
// them touch the unit ball around the origin exactly when shrink == 1
InstanceFile gen_helly_tight(const GenParams& p) {
  const int n = p.n, k = p.k;
  if (n < 2 || n > 12) bad("helly_tight: need 2 <= n <= 12");
  if (k < 1 || k > n - 1) bad("helly_tight: need 1 <= k <= n-1");
  if (!(p.shrink > 0.0)) bad("helly_tight: shrink must be positive");
  const double t = p.shrink * std::sqrt(static_cast<double>(n - k) /
                                        (static_cast<double>(k) * (n - 1)));
  InstanceFile inst;
  inst.kind = "body_family";
  inst.dimension = n;
  std::vector<BodyRecord> fam;
  std::vector<Point> inner;  // unit inner normals, kept for the slack scan
  for (const Point& v : regular_simplex(n, 1.0)) {
    Point u = scaled(v, 1.0 / norm(v));
    BodyRecord rec;
    rec.type = "halfspace";
    Point outer = scaled(u, -1.0);
    rec.data.assign(outer.begin(), outer.end());
    rec.data.push_back(-t);
    fam.push_back(std::move(rec));
    inner.push_back(std::move(u));
  }
  inst.families.push_back(std::move(fam));
  inst.anchor.assign(static_cast<std::size_t>(n), 0.0);
  inst.anchor.push_back(1.0);

  // measured tangency defect: max over k-subsets of | d(0, K(J)) - shrink |
  double worst = 0.0;
  const Point origin = zeros(n);
  for_each_combination(n, k, [&](const std::vector<int>& J) {
    std::vector<Halfspace> hs;
    for (int j : J) hs.push_back(Halfspace{scaled(inner[static_cast<std::size_t>(j)], -1.0), -t});
    auto proj = polyhedron_project(hs, origin);
    if (!proj) bad("helly_tight: empty k-wise intersection");
    worst = std::max(worst, std::abs(dist(*proj, origin) - p.shrink));
    return true;
  });
  inst.metadata["tangency_slack"] = fmt_double(worst);
  inst.metadata["offset"] = fmt_double(t);
  inst.metadata["k"] = std::to_string(k);
  inst.metadata["shrink"] = fmt_double(p.shrink);
  return inst;
}

// family i: m_i copies of the plate {x_i = 1.01*rho_i, |x_j| <= L} (distinct
// extents so the records differ) padded to sizes[i] with huge balls; a
// transversal is far from the origin iff it picks a plate from every family
InstanceFile gen_hyperplane_family(const GenParams& p) {
  const int k = p.k;
  if (k < 1 || k > 5) bad("hyperplane_family: need 1 <= k <= 5");
  if (static_cast<int>(p.m.size()) != k) bad("hyperplane_family: need one m per family");
  std::vector<double> rho = p.rho;
  if (rho.empty()) rho.assign(static_cast<std::size_t>(k), 0.5);
  if (static_cast<int>(rho.size()) != k) bad("hyperplane_family: need one rho per family");
  std::vector<int> sizes = p.sizes;
  if (sizes.empty())
    for (int mi : p.m) sizes.push_back(mi + 1);
  if (static_cast<int>(sizes.size()) != k) bad("hyperplane_family: need one size per family");

  InstanceFile inst;
  inst.kind = "body_family";
  inst.dimension = k;
  for (int i = 0; i < k; ++i) {
    const int mi = p.m[static_cast<std::size_t>(i)];
    if (mi < 0 || mi > sizes[static_cast<std::size_t>(i)])
      bad("hyperplane_family: m out of range");
    if (!(rho[static_cast<std::size_t>(i)] > 0.0)) bad("hyperplane_family: rho must be positive");
    std::vector<BodyRecord> fam;
    const double offset = 1.01 * rho[static_cast<std::size_t>(i)];
    for (int j = 0; j < mi; ++j) {
      BodyRecord rec;
      rec.type = "hull";
      flatten_into(axis_plate_corners(k, i, offset, 50.0 + j), rec.data);
      fam.push_back(std::move(rec));
    }
    for (int j = mi; j < sizes[static_cast<std::size_t>(i)]; ++j) {
      BodyRecord rec;
      rec.type = "ball";
      rec.data.assign(static_cast<std::size_t>(k), 0.0);
      rec.data.push_back(1000.0 + j);
      fam.push_back(std::move(rec));
    }
    inst.families.push_back(std::move(fam));
  }
  inst.anchor.assign(static_cast<std::size_t>(k), 0.0);
  inst.anchor.push_back(1.0);
  inst.rhos = rho;
  std::uint64_t product = 1;
  std::string mlist;
  for (int mi : p.m) {
    product *= static_cast<std::uint64_t>(mi);
    if (!mlist.empty()) mlist += ",";
    mlist += std::to_string(mi);
  }
  inst.metadata["m"] = mlist;
  inst.metadata["expected_far"] = std::to_string(product);
  return inst;
}

// k families of 2 parallel plates + 2 huge balls; the plate normals sum to
// zero and the offsets are positive, so exactly the all-plate transversals
// miss the anchor ball: alpha = 1 - 2^-k, beta = 1/2
InstanceFile gen_fractional_tight(const GenParams& p) {
  const int k = p.k;
  if (k < 2 || k > 5) bad("fractional_tight: need 2 <= k <= 5");
  const int dim = std::max(k - 1, 1);
  const double offset_scale = k <= 3 ? 1.0 : 2.0 / (k - 1);
  InstanceFile inst;
  inst.kind = "body_family";
  inst.dimension = dim;
  const std::vector<Point> dirs = simplex_directions(k);
  for (int i = 0; i < k; ++i) {
    std::vector<BodyRecord> fam;
    for (double c : {0.1, 0.4}) {
      BodyRecord rec;
      rec.type = "hull";
      flatten_into(plate_corners(dirs[static_cast<std::size_t>(i)], c * offset_scale, 60.0),
                   rec.data);
      fam.push_back(std::move(rec));
    }
    for (int j = 0; j < 2; ++j) {
      BodyRecord rec;
      rec.type = "ball";
      rec.data.assign(static_cast<std::size_t>(dim), 0.0);
      rec.data.push_back(900.0 + j);
      fam.push_back(std::move(rec));
    }
    inst.families.push_back(std::move(fam));
  }
  inst.anchor.assign(static_cast<std::size_t>(dim), 0.0);
  inst.anchor.push_back(1.0);
  inst.metadata["alpha"] = fmt_double(1.0 - std::pow(2.0, -k));
  inst.metadata["beta"] = fmt_double(0.5);
  inst.metadata["largest_subfamily"] = "3";
  return inst;
}

// every body contains a shared interior point of the anchor ball, so the
// k-wise hypothesis holds by construction for every k
InstanceFile gen_random_helly(const GenParams& p, Rng& rng) {
  if (p.n < 2 || p.d < 1) bad("random_helly: need n >= 2 and d >= 1");
  InstanceFile inst;
  inst.kind = "body_family";
  inst.dimension = p.d;
  Point z = gaussian_point(rng, p.d, 0.15);
  const double nz = norm(z);
  if (nz > 0.5) scale_in_place(z, 0.5 / nz);
  std::vector<BodyRecord> fam;
  for (int i = 0; i < p.n; ++i) {
    BodyRecord rec;
    const int shape = rng.uniform_int(0, 2);
    if (shape == 0) {
      rec.type = "ball";
      Point c = add(z, gaussian_point(rng, p.d, 0.5 * p.spread));
      rec.data.assign(c.begin(), c.end());
      rec.data.push_back(dist(c, z) + 0.05 + rng.uniform01());
    } else if (shape == 1) {
      rec.type = "halfspace";
      Point u = gaussian_point(rng, p.d, 1.0);
      const double nu = norm(u);
      if (nu < 1e-9) {
        u = zeros(p.d);
        u[0] = 1.0;
      } else {
        scale_in_place(u, 1.0 / nu);
      }
      rec.data.assign(u.begin(), u.end());
      rec.data.push_back(dot(u, z) + 0.05 + rng.uniform01());
    } else {
      // full-dimensional hull with z strictly interior, so intersections
      // stay decisively nonempty for the feasibility solver
      rec.type = "hull";
      std::vector<Point> pts;
      const double c = 0.3 + 0.7 * rng.uniform01();
      for (const Point& u : simplex_directions(p.d + 1)) pts.push_back(add(z, scaled(u, c)));
      const int extra = rng.uniform_int(0, 2);
      for (int e = 0; e < extra; ++e)
        pts.push_back(add(z, gaussian_point(rng, p.d, p.spread)));
      flatten_into(pts, rec.data);
    }
    fam.push_back(std::move(rec));
  }
  inst.families.push_back(std::move(fam));
  inst.anchor.assign(static_cast<std::size_t>(p.d), 0.0);
  inst.anchor.push_back(1.0);
  return inst;
}

json to_json(const InstanceFile& inst) {
  json j;
  j["schema_version"] = inst.schema_version;
  j["kind"] = inst.kind;
  j["dimension"] = inst.dimension;
  j["coordinates"] = inst.coordinates;
  if (!inst.color_sizes.empty()) j["color_sizes"] = inst.color_sizes;
  if (!inst.weights.empty()) j["weights"] = inst.weights;
  if (!inst.target.empty()) j["target"] = inst.target;
  if (!inst.families.empty()) {
    json fams = json::array();
    for (const auto& fam : inst.families) {
      json jf = json::array();
      for (const BodyRecord& rec : fam) jf.push_back(json{{"type", rec.type}, {"data", rec.data}});
      fams.push_back(std::move(jf));
    }
    j["families"] = std::move(fams);
  }
  if (!inst.anchor.empty()) j["anchor"] = inst.anchor;
  if (!inst.rhos.empty()) j["rhos"] = inst.rhos;
  if (!inst.metadata.empty()) j["metadata"] = inst.metadata;
  return j;
}

}  // namespace

void validate_instance(const InstanceFile& inst) {
  if (inst.schema_version != "1") bad("unsupported schema_version: " + inst.schema_version);
  if (!known_kind(inst.kind)) bad("unknown instance kind: " + inst.kind);
  if (inst.dimension < 1) bad("dimension must be positive");
  const auto dim = static_cast<std::size_t>(inst.dimension);

  if (inst.kind == "body_family") {
    if (inst.families.empty()) bad("body_family needs at least one family");
    for (const auto& fam : inst.families) {
      if (fam.empty()) bad("empty family in body_family");
      for (const BodyRecord& rec : fam) {
        if (rec.type == "hull") {
          if (rec.data.empty() || rec.data.size() % dim != 0) bad("hull record length mismatch");
        } else if (rec.type == "ball" || rec.type == "halfspace") {
          if (rec.data.size() != dim + 1) bad(rec.type + " record length mismatch");
        } else {
          bad("unknown body type: " + rec.type);
        }
        for (double v : rec.data)
          if (!std::isfinite(v)) bad("non-finite value in body record");
      }
    }
    if (inst.anchor.size() != dim + 1) bad("anchor must hold center coordinates then radius");
    if (!(inst.anchor.back() > 0.0)) bad("anchor radius must be positive");
    if (!inst.rhos.empty() && inst.rhos.size() != inst.families.size())
      bad("rhos must match the family count");
    return;
  }

  if (inst.coordinates.empty()) bad("instance has no points");
  if (inst.coordinates.size() % dim != 0) bad("coordinate count is not a multiple of dimension");
  for (double v : inst.coordinates)
    if (!std::isfinite(v)) bad("non-finite coordinate");
  const int count = inst.point_count();

  if (inst.kind == "point_set") {
    if (!inst.color_sizes.empty() || !inst.weights.empty()) bad("point_set carries group fields");
    return;
  }
  // colored_family / weighted_family
  if (inst.color_sizes.empty()) bad(inst.kind + " needs color_sizes");
  int sum = 0;
  for (int s : inst.color_sizes) {
    if (s < 1) bad("color_sizes entries must be positive");
    sum += s;
  }
  if (sum != count) bad("color_sizes sum does not match the point count");
  if (inst.kind == "weighted_family") {
    if (inst.weights.size() != static_cast<std::size_t>(count))
      bad("weighted_family needs one weight per point");
    if (inst.target.size() != dim) bad("weighted_family target dimension mismatch");
  } else if (!inst.weights.empty()) {
    bad("colored_family carries weights");
  }
}

std::string serialize_instance(const InstanceFile& inst) {
  validate_instance(inst);
  return to_json(inst).dump(1) + "\n";
}

InstanceFile parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("instance parse error: ") + e.what());
  }
  InstanceFile inst;
  try {
    inst.schema_version = j.at("schema_version").get<std::string>();
    inst.kind = j.at("kind").get<std::string>();
    inst.dimension = j.at("dimension").get<int>();
    inst.coordinates = j.value("coordinates", std::vector<double>{});
    inst.color_sizes = j.value("color_sizes", std::vector<int>{});
    inst.weights = j.value("weights", std::vector<double>{});
    inst.target = j.value("target", std::vector<double>{});
    inst.anchor = j.value("anchor", std::vector<double>{});
    inst.rhos = j.value("rhos", std::vector<double>{});
    if (j.contains("families")) {
      for (const json& jf : j.at("families")) {
        std::vector<BodyRecord> fam;
        for (const json& jr : jf) {
          BodyRecord rec;
          rec.type = jr.at("type").get<std::string>();
          rec.data = jr.at("data").get<std::vector<double>>();
          fam.push_back(std::move(rec));
        }
        inst.families.push_back(std::move(fam));
      }
    }
    if (j.contains("metadata"))
      inst.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
  } catch (const json::exception& e) {
    bad(std::string("instance field error: ") + e.what());
  }
  validate_instance(inst);
  return inst;
}

void write_instance(const InstanceFile& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot open for writing: " + path);
  out << serialize_instance(inst);
  if (!out) bad("write failed: " + path);
}

InstanceFile read_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

InstanceFile generate_instance(const std::string& generator, const GenParams& params,
                               std::uint64_t seed) {
  Rng rng(seed);
  InstanceFile inst;
  if (generator == "regular_simplex") {
    inst = gen_regular_simplex(params);
  } else if (generator == "random_cloud") {
    inst = gen_random_cloud(params, rng);
  } else if (generator == "random_colored") {
    inst = gen_random_colored(params, rng);
  } else if (generator == "random_weighted") {
    inst = gen_random_weighted(params, rng);
  } else if (generator == "helly_tight") {
    inst = gen_helly_tight(params);
  } else if (generator == "hyperplane_family") {
    inst = gen_hyperplane_family(params);
  } else if (generator == "fractional_tight") {
    inst = gen_fractional_tight(params);
  } else if (generator == "random_helly") {
    inst = gen_random_helly(params, rng);
  } else {
    bad("unknown generator: " + generator);
  }
  meta_params(inst, generator, seed);
  validate_instance(inst);
  return inst;
}

PointSet instance_points(const InstanceFile& inst) {
  validate_instance(inst);
  if (inst.kind != "point_set" && inst.kind != "colored_family" && inst.kind != "weighted_family")
    bad("instance kind carries no point payload: " + inst.kind);
  return PointSet(unflatten(inst.coordinates, inst.dimension));
}

ColoredFamily instance_colored(const InstanceFile& inst) {
  validate_instance(inst);
  if (inst.kind != "colored_family" && inst.kind != "weighted_family")
    bad("instance kind has no colour classes: " + inst.kind);
  ColoredFamily family;
  std::vector<Point> pts = unflatten(inst.coordinates, inst.dimension);
  std::size_t at = 0;
  for (int s : inst.color_sizes) {
    std::vector<Point> group(pts.begin() + static_cast<long>(at),
                             pts.begin() + static_cast<long>(at + static_cast<std::size_t>(s)));
    family.colors.emplace_back(std::move(group));
    at += static_cast<std::size_t>(s);
  }
  return family;
}

WeightedFamily instance_weighted(const InstanceFile& inst, Point* target) {
  validate_instance(inst);
  if (inst.kind != "weighted_family") bad("instance kind is not weighted_family: " + inst.kind);
  ColoredFamily colored = instance_colored(inst);
  WeightedFamily family;
  family.sets = std::move(colored.colors);
  std::size_t at = 0;
  for (int s : inst.color_sizes) {
    family.weights.emplace_back(inst.weights.begin() + static_cast<long>(at),
                                inst.weights.begin() + static_cast<long>(at) + s);
    at += static_cast<std::size_t>(s);
  }
  validate_weighted_family(family);
  if (target) *target = inst.target;
  return family;
}

BodyFamily instance_bodies(const InstanceFile& inst) {
  validate_instance(inst);
  if (inst.kind != "body_family") bad("instance kind is not body_family: " + inst.kind);
  BodyFamily bf;
  for (const auto& fam : inst.families) {
    std::vector<ConvexBody> bodies;
    for (const BodyRecord& rec : fam) bodies.push_back(decode_body(rec, inst.dimension));
    bf.families.push_back(std::move(bodies));
  }
  bf.anchor.center.assign(inst.anchor.begin(), inst.anchor.end() - 1);
  bf.anchor.radius = inst.anchor.back();
  validate_body_family(bf);
  return bf;
}

BodyRecord encode_body(const ConvexBody& body) {
  BodyRecord rec;
  switch (body.kind()) {
    case BodyKind::Hull:
      rec.type = "hull";
      flatten_into(body.hull_points().points(), rec.data);
      break;
    case BodyKind::BallBody: {
      rec.type = "ball";
      const Ball& b = body.as_ball();
      rec.data.assign(b.center.begin(), b.center.end());
      rec.data.push_back(b.radius);
      break;
    }
    case BodyKind::HalfspaceBody: {
      rec.type = "halfspace";
      const Halfspace& h = body.as_halfspace();
      rec.data.assign(h.outer_normal.begin(), h.outer_normal.end());
      rec.data.push_back(h.offset);
      break;
    }
  }
  return rec;
}

ConvexBody decode_body(const BodyRecord& rec, int dimension) {
  const auto dim = static_cast<std::size_t>(dimension);
  if (rec.type == "hull") {
    if (rec.data.empty() || rec.data.size() % dim != 0) bad("hull record length mismatch");
    return ConvexBody::hull(unflatten(rec.data, dimension));
  }
  if (rec.type == "ball") {
    if (rec.data.size() != dim + 1) bad("ball record length mismatch");
    return ConvexBody::ball(Point(rec.data.begin(), rec.data.end() - 1), rec.data.back());
  }
  if (rec.type == "halfspace") {
    if (rec.data.size() != dim + 1) bad("halfspace record length mismatch");
    return ConvexBody::halfspace(Point(rec.data.begin(), rec.data.end() - 1), rec.data.back());
  }
  bad("unknown body type: " + rec.type);
}

void finish_report(BoundReport& rep) {
  rep.ratio = rep.bound != 0.0 ? rep.achieved / rep.bound : 0.0;
  rep.pass = rep.achieved <= rep.bound + rep.slack;
}

std::string report_csv_header() {
  return "theorem_tag,instance_ref,n,r_or_k,dimension,achieved,bound,ratio,pass,runtime_ms,seed";
}

std::string report_csv_row(const BoundReport& rep) {
  std::ostringstream out;
  out << rep.theorem_tag << ',' << rep.instance_ref << ',' << rep.n << ',' << rep.r_or_k << ','
      << rep.dimension << ',' << fmt_double(rep.achieved) << ',' << fmt_double(rep.bound) << ','
      << fmt_double(rep.ratio) << ',' << (rep.pass ? 1 : 0) << ',' << fmt_double(rep.runtime_ms)
      << ',' << rep.seed;
  return out.str();
}

std::string report_json(const BoundReport& rep) {
  json j;
  j["theorem_tag"] = rep.theorem_tag;
  j["instance_ref"] = rep.instance_ref;
  j["n"] = rep.n;
  j["r_or_k"] = rep.r_or_k;
  j["dimension"] = rep.dimension;
  j["achieved"] = rep.achieved;
  j["bound"] = rep.bound;
  j["ratio"] = rep.ratio;
  j["pass"] = rep.pass;
  j["runtime_ms"] = rep.runtime_ms;
  j["seed"] = rep.seed;
  j["slack"] = rep.slack;
  return j.dump();
}

}  // namespace nodim
