#pragma once

#include <cstdint>
#include <vector>

#include "nodim/geometry.hpp"

namespace nodim {

// Colour classes C_1..C_r. Global point index = offset of the colour (colours
// taken in order) + local index, so colours are disjoint as index sets even
// when coordinates coincide.
struct ColoredFamily {
  std::vector<PointSet> colors;
};

// Uniform size means every colour has the same number of points.
void validate_colored_family(const ColoredFamily& family, bool require_uniform_size);
int family_total_size(const ColoredFamily& family);

struct HalvingConfig {
  bool randomized = false;  // resample instead of the derandomized scan
  std::uint64_t seed = 1;   // only used when randomized
};

// q0 picks floor(k/2) points per colour, q1 the rest; displacement is
// |centroid(Q0) - centroid(P)| and bound the averaging bound for this split.
struct HalvingResult {
  std::vector<int> q0, q1;
  double displacement = 0.0;
  double bound = 0.0;
};

HalvingResult balanced_halving(const ColoredFamily& family, const HalvingConfig& cfg = {});

// One level of the halving tree: `halvings` nodes split at this depth,
// `min_color_size` the smallest per-colour size among them before splitting,
// bound = D / (sqrt(min_color_size - 1) * sqrt(2r)) with D the root diameter.
struct HalvingLevel {
  int depth = 0;
  int halvings = 0;
  int min_color_size = 0;
  double max_displacement = 0.0;
  double bound = 0.0;
};

struct TverbergPartition {
  std::vector<std::vector<int>> parts;  // disjoint, cover all input indices
  Point center;
  double max_distance = 0.0;  // max over parts of d(center, conv part)
  double bound = 0.0;
  std::vector<HalvingLevel> tree_log;
  bool recentered = false;
  Point recentered_center;
  double recentered_max_distance = 0.0;
};

struct TverbergConfig {
  HalvingConfig halving;
  bool recenter = false;          // try a minimax centre, keep it if better
  std::uint64_t shuffle_seed = 1; // colouring of uncoloured input
};

// Requires uniform colour size k >= 1; produces k parts with exactly one
// point of each colour per part.
TverbergPartition colored_tverberg(const ColoredFamily& family, const TverbergConfig& cfg = {});

// 2 <= k <= |P|. Splits P into k parts whose hulls all pass near the centre.
TverbergPartition uncolored_tverberg(const PointSet& points, int k, const TverbergConfig& cfg = {});

// Exhaustive search over all partitions into exactly k nonempty parts,
// minimizing max_i d(q, conv P_i) over the centre q as well. Guarded by the
// partition count; exact for k == 2, a polished minimax estimate otherwise.
struct BruteTverberg {
  std::vector<std::vector<int>> partition;
  Point center;
  double value = 0.0;
};

BruteTverberg brute_force_tverberg(const PointSet& points, int k);

}  // namespace nodim
