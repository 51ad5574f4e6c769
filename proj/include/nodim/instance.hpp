#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nodim/caratheodory.hpp"
#include "nodim/geometry.hpp"
#include "nodim/helly.hpp"
#include "nodim/tverberg.hpp"

namespace nodim {

// One serialized convex body. data layout by type:
//   hull:      row-major point coordinates (count * dimension)
//   ball:      center coordinates then radius
//   halfspace: outer normal coordinates then offset
struct BodyRecord {
  std::string type;
  std::vector<double> data;
  bool operator==(const BodyRecord&) const = default;
};

// Single-document instance: one JSON file per instance, flat coordinate
// arrays in row-major point order. Exactly the payload fields implied by
// `kind` are populated.
struct InstanceFile {
  std::string schema_version = "1";
  std::string kind;  // point_set | colored_family | weighted_family | body_family
  int dimension = 0;

  std::vector<double> coordinates;  // point kinds, row-major
  std::vector<int> color_sizes;     // colored_family / weighted_family groups
  std::vector<double> weights;      // weighted_family, one per point
  std::vector<double> target;       // weighted_family common point

  std::vector<std::vector<BodyRecord>> families;  // body_family
  std::vector<double> anchor;                     // body_family: center then radius
  std::vector<double> rhos;                       // body_family counting setups

  std::map<std::string, std::string> metadata;

  bool operator==(const InstanceFile&) const = default;

  int point_count() const {
    return dimension > 0 ? static_cast<int>(coordinates.size()) / dimension : 0;
  }
};

// Shape checks (divisibility, group sums, record lengths); throws
// std::invalid_argument with the offending field named.
void validate_instance(const InstanceFile& inst);

std::string serialize_instance(const InstanceFile& inst);
InstanceFile parse_instance(const std::string& text);

void write_instance(const InstanceFile& inst, const std::string& path);
InstanceFile read_instance(const std::string& path);

// Generator parameters; each generator reads the subset it needs.
struct GenParams {
  int n = 0;
  int k = 0;
  int r = 0;
  int d = 0;
  double edge = 1.0;
  double spread = 1.0;
  double shrink = 1.0;
  std::vector<int> m;          // hyperplane_family far counts
  std::vector<int> sizes;      // hyperplane_family family sizes
  std::vector<double> rho;     // hyperplane_family distances
};

// Generators: regular_simplex, random_cloud, random_colored, random_weighted,
// helly_tight, hyperplane_family, fractional_tight, random_helly.
// Deterministic for fixed seed; metadata records generator, seed, params.
InstanceFile generate_instance(const std::string& generator, const GenParams& params,
                               std::uint64_t seed);

// payload decoding (validates first)
PointSet instance_points(const InstanceFile& inst);
ColoredFamily instance_colored(const InstanceFile& inst);
WeightedFamily instance_weighted(const InstanceFile& inst, Point* target);
BodyFamily instance_bodies(const InstanceFile& inst);

BodyRecord encode_body(const ConvexBody& body);
ConvexBody decode_body(const BodyRecord& rec, int dimension);

struct BoundReport {
  std::string theorem_tag;
  std::string instance_ref;
  int n = 0;
  int r_or_k = 0;
  int dimension = 0;
  double achieved = 0.0;
  double bound = 0.0;
  double ratio = 0.0;  // achieved / bound (0 when bound is 0)
  bool pass = false;   // achieved <= bound + slack
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
  double slack = 0.0;
};

// fills ratio and pass from achieved/bound/slack
void finish_report(BoundReport& rep);

// fixed column set; numbers printed with round-trip precision
std::string report_csv_header();
std::string report_csv_row(const BoundReport& rep);
std::string report_json(const BoundReport& rep);

}  // namespace nodim
