// Command line front end: generates instances, runs every bound check the
// library exposes, and emits one report row per verified inequality.
//
// Exit codes: 0 all rows pass, 1 at least one bound violated (or a solver
// detected a violation mid-run), 2 usage or input errors.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nodim/caratheodory.hpp"
#include "nodim/enumeration.hpp"
#include "nodim/epsnet.hpp"
#include "nodim/geometry.hpp"
#include "nodim/helly.hpp"
#include "nodim/instance.hpp"
#include "nodim/rng.hpp"
#include "nodim/tverberg.hpp"
#include "nodim/vec.hpp"

namespace {

using namespace nodim;

struct OutputOptions {
  std::string format = "csv";  // csv | json (json = one object per line)
  std::string out_path;        // empty = stdout
  bool timing = false;         // wall-clock runtime_ms; off keeps rows byte-stable
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct RowSink {
  OutputOptions opts;
  std::vector<BoundReport> rows;

  void add(BoundReport rep, const Stopwatch& watch) {
    rep.runtime_ms = opts.timing ? watch.ms() : 0.0;
    finish_report(rep);
    rows.push_back(std::move(rep));
  }

  int flush() const {
    std::ostringstream text;
    if (opts.format == "csv") {
      text << report_csv_header() << '\n';
      for (const BoundReport& rep : rows) text << report_csv_row(rep) << '\n';
    } else {
      for (const BoundReport& rep : rows) text << report_json(rep) << '\n';
    }
    if (opts.out_path.empty()) {
      std::cout << text.str();
    } else {
      std::ofstream out(opts.out_path, std::ios::binary);
      if (!out) throw std::invalid_argument("cannot open for writing: " + opts.out_path);
      out << text.str();
    }
    for (const BoundReport& rep : rows)
      if (!rep.pass) return 1;
    return 0;
  }
};

void attach_output(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "row format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out_path, "write rows to this file instead of stdout");
  cmd->add_flag_callback(
      "--timing", [&opts] { opts.timing = true; },
      "fill runtime_ms with wall-clock time (rows stop being byte-stable)");
}

// loads --instance when given, otherwise generates; ref identifies the source
InstanceFile resolve_instance(const std::string& path, const std::string& generator,
                              const GenParams& params, std::uint64_t seed, std::string& ref) {
  if (!path.empty()) {
    ref = path;
    return read_instance(path);
  }
  ref = "gen:" + generator + ":" + std::to_string(seed);
  return generate_instance(generator, params, seed);
}

BoundReport base_row(const std::string& tag, const std::string& ref, std::uint64_t seed) {
  BoundReport rep;
  rep.theorem_tag = tag;
  rep.instance_ref = ref;
  rep.seed = seed;
  return rep;
}

// ---- caratheodory family --------------------------------------------------

int run_caratheodory(const std::string& instance_path, int trials, int r, int n, int d,
                     std::uint64_t seed, const std::string& mode, double tol, RowSink& sink) {
  GenParams params;
  params.r = r;
  params.n = n;
  params.d = d;
  const int rounds = instance_path.empty() ? trials : 1;
  for (int trial = 0; trial < rounds; ++trial) {
    const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(trial);
    std::string ref;
    const InstanceFile inst =
        resolve_instance(instance_path, "random_weighted", params, trial_seed, ref);
    Point a;
    const WeightedFamily family = instance_weighted(inst, &a);
    Stopwatch watch;
    TransversalResult res;
    if (mode == "derandomized") {
      res = derandomized_transversal(family, a);
    } else {
      Rng rng(trial_seed * 2 + 1);
      res = random_transversal(family.sets, a, rng);
    }
    BoundReport rep = base_row("thm4", ref, trial_seed);
    rep.n = family_total_size(ColoredFamily{family.sets});
    rep.r_or_k = static_cast<int>(family.sets.size());
    rep.dimension = inst.dimension;
    rep.achieved = res.distance;
    rep.bound = res.bound;
    rep.slack = tol;
    sink.add(rep, watch);
  }
  return sink.flush();
}

int run_colorful(const std::string& instance_path, int trials, int r, int n, int d, double eta,
                 std::uint64_t seed, double tol, RowSink& sink) {
  GenParams params;
  params.r = r;
  params.n = n;
  params.d = d;
  const int rounds = instance_path.empty() ? trials : 1;
  for (int trial = 0; trial < rounds; ++trial) {
    const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(trial);
    std::string ref;
    const InstanceFile inst =
        resolve_instance(instance_path, "random_weighted", params, trial_seed, ref);
    Point a;
    WeightedFamily family = instance_weighted(inst, &a);
    std::vector<std::vector<Point>> sets;
    for (const PointSet& s : family.sets) sets.push_back(s.points());
    if (instance_path.empty() && eta > 0.0) {
      // push each set off the common point, staying within eta * diameter
      Rng rng(trial_seed * 7 + 3);
      std::vector<Point> shifts;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        Point v(static_cast<std::size_t>(d));
        for (double& c : v) c = rng.gaussian();
        scale_in_place(v, 1.0 / std::max(norm(v), 1e-12));
        shifts.push_back(std::move(v));
      }
      std::vector<Point> all;
      for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());
      double step = 0.5 * eta * PointSet(all).diameter();
      for (int attempt = 0; attempt < 40; ++attempt) {
        std::vector<std::vector<Point>> moved = sets;
        std::vector<Point> flat;
        for (std::size_t i = 0; i < moved.size(); ++i) {
          for (Point& pt : moved[i]) axpy(pt, step, shifts[i]);
          flat.insert(flat.end(), moved[i].begin(), moved[i].end());
        }
        const double diam = PointSet(flat).diameter();
        bool ok = true;
        for (const auto& s : moved)
          ok = ok && nearest_hull_point(s, a).distance <= eta * diam * 0.999;
        if (ok) {
          sets = std::move(moved);
          break;
        }
        step *= 0.5;
      }
    }
    std::vector<PointSet> packed;
    for (auto& s : sets) packed.emplace_back(std::move(s));
    Stopwatch watch;
    const TransversalResult res = eta_perturbed_transversal(packed, a, eta);
    BoundReport rep = base_row("lem3", ref, trial_seed);
    rep.n = n * r;
    rep.r_or_k = r;
    rep.dimension = d;
    rep.achieved = res.distance;
    rep.bound = res.bound;
    rep.slack = tol;
    sink.add(rep, watch);
  }
  return sink.flush();
}

int run_frank_wolfe(const std::string& instance_path, int trials, int r, int n, int d, int t,
                    bool verify, std::uint64_t seed, double tol, RowSink& sink) {
  GenParams params;
  params.r = r;
  params.n = n;
  params.d = d;
  const int rounds = instance_path.empty() ? trials : 1;
  for (int trial = 0; trial < rounds; ++trial) {
    const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(trial);
    std::string ref;
    const InstanceFile inst =
        resolve_instance(instance_path, "random_weighted", params, trial_seed, ref);
    Point a;
    const WeightedFamily family = instance_weighted(inst, &a);
    Stopwatch watch;
    FrankWolfeOptions options;
    options.verify_hypothesis = verify;
    const TransversalResult res = frank_wolfe_transversal(family.sets, a, t, options);
    BoundReport rep = base_row("thm5", ref, trial_seed);
    rep.n = family_total_size(ColoredFamily{family.sets});
    rep.r_or_k = static_cast<int>(family.sets.size());
    rep.dimension = inst.dimension;
    rep.achieved = res.distance;
    rep.bound = res.bound;
    rep.slack = tol;
    sink.add(rep, watch);
  }
  return sink.flush();
}

// ---- tverberg ---------------------------------------------------------------

int run_tverberg(const std::string& instance_path, int n, int k, int d, std::uint64_t seed,
                 const std::string& mode, bool recenter, double tol, RowSink& sink) {
  GenParams params;
  params.n = n;
  params.d = d;
  std::string ref;
  const InstanceFile inst = resolve_instance(instance_path, "random_cloud", params, seed, ref);
  TverbergConfig cfg;
  cfg.halving.randomized = mode == "random";
  cfg.halving.seed = seed;
  cfg.recenter = recenter;
  cfg.shuffle_seed = seed;
  Stopwatch watch;
  TverbergPartition part;
  BoundReport rep;
  if (inst.kind == "colored_family") {
    const ColoredFamily family = instance_colored(inst);
    part = colored_tverberg(family, cfg);
    rep = base_row("thm9", ref, seed);
    rep.n = family_total_size(family);
    rep.r_or_k = static_cast<int>(family.colors.size());
  } else {
    const PointSet pts = instance_points(inst);
    part = uncolored_tverberg(pts, k, cfg);
    rep = base_row("thm3", ref, seed);
    rep.n = static_cast<int>(pts.size());
    rep.r_or_k = k;
  }
  rep.dimension = inst.dimension;
  rep.achieved = part.max_distance;
  rep.bound = part.bound;
  rep.slack = tol;
  sink.add(rep, watch);
  return sink.flush();
}

// ---- helly ------------------------------------------------------------------

std::vector<ConvexBody> flatten_families(const BodyFamily& bf) {
  std::vector<ConvexBody> all;
  for (const auto& fam : bf.families) all.insert(all.end(), fam.begin(), fam.end());
  return all;
}

int run_helly_verify(const std::string& instance_path, int n, int k, double shrink,
                     std::uint64_t seed, double tol, RowSink& sink) {
  GenParams params;
  params.n = n;
  params.k = k;
  params.shrink = shrink;
  std::string ref;
  const InstanceFile inst = resolve_instance(instance_path, "helly_tight", params, seed, ref);
  const BodyFamily bf = instance_bodies(inst);
  const std::vector<ConvexBody> bodies = flatten_families(bf);
  Stopwatch watch;
  const HellyCenterReport report = helly_center(bodies, k, bf.anchor.center);
  BoundReport coarse = base_row("thm2", ref, seed);
  coarse.n = static_cast<int>(bodies.size());
  coarse.r_or_k = k;
  coarse.dimension = inst.dimension;
  coarse.achieved = report.radius;
  coarse.bound = report.bound_sqrt_k;
  coarse.slack = tol;
  sink.add(coarse, watch);
  BoundReport precise = coarse;
  precise.theorem_tag = "thm10";
  precise.bound = report.bound_precise;
  finish_report(precise);
  sink.add(precise, watch);
  return sink.flush();
}

int run_helly_count(const std::string& instance_path, int k, std::vector<int> m,
                    std::vector<double> rho, std::uint64_t seed, RowSink& sink) {
  GenParams params;
  params.k = k;
  params.m = m.empty() ? std::vector<int>{2, 3} : m;
  params.rho = rho;
  std::string ref;
  const InstanceFile inst =
      resolve_instance(instance_path, "hyperplane_family", params, seed, ref);
  const BodyFamily bf = instance_bodies(inst);
  std::vector<double> rhos = rho.empty() ? inst.rhos : rho;
  if (rhos.empty()) throw std::invalid_argument("helly-count needs rhos (instance or --rho)");
  Stopwatch watch;
  const CountingReport count = count_far_transversals(bf, bf.anchor.center, rhos);
  if (count.undecided > 0)
    std::cerr << "warning: " << count.undecided << " transversals undecided\n";
  BoundReport rep = base_row("thm6", ref, seed);
  rep.n = static_cast<int>(count.total_transversals);
  rep.r_or_k = static_cast<int>(bf.families.size());
  rep.dimension = inst.dimension;
  // declared floor when the instance carries one, probe estimate otherwise
  double floor_value = static_cast<double>(count.product_bound);
  if (auto it = inst.metadata.find("expected_far"); it != inst.metadata.end())
    floor_value = std::stod(it->second);
  rep.achieved = floor_value;
  rep.bound = static_cast<double>(count.far_transversals);
  sink.add(rep, watch);
  return sink.flush();
}

int run_fractional(const std::string& instance_path, int k, std::uint64_t seed, double tol,
                   RowSink& sink) {
  GenParams params;
  params.k = k < 2 ? 3 : k;
  std::string ref;
  const InstanceFile inst =
      resolve_instance(instance_path, "fractional_tight", params, seed, ref);
  const BodyFamily bf = instance_bodies(inst);
  Stopwatch watch;
  if (bf.families.size() >= 2) {
    const FractionalWitness witness = fractional_helly_witness(bf);
    BoundReport rep = base_row("thm7", ref, seed);
    int total = 0;
    for (const auto& fam : bf.families) total += static_cast<int>(fam.size());
    rep.n = total;
    rep.r_or_k = static_cast<int>(bf.families.size());
    rep.dimension = inst.dimension;
    const double family_size =
        witness.family_index >= 0
            ? static_cast<double>(bf.families[static_cast<std::size_t>(witness.family_index)].size())
            : 0.0;
    rep.achieved = witness.beta_required * family_size;  // hits the witness must reach
    rep.bound = static_cast<double>(witness.hit_count);
    rep.slack = tol;
    sink.add(rep, watch);
  } else {
    if (k < 1) throw std::invalid_argument("single-family fractional check needs --k");
    const FractionalWitness witness = fractional_single_family(bf.families[0], k, bf.anchor);
    BoundReport rep = base_row("thm8", ref, seed);
    rep.n = static_cast<int>(bf.families[0].size());
    rep.r_or_k = k;
    rep.dimension = inst.dimension;
    rep.achieved = witness.beta_required * static_cast<double>(bf.families[0].size());
    rep.bound = static_cast<double>(witness.hit_count);
    rep.slack = tol;
    sink.add(rep, watch);
  }
  return sink.flush();
}

int run_simplex_check(const std::string& instance_path, int n, int k, const std::string& mode,
                      int restarts, int iterations, std::uint64_t seed, double tol,
                      RowSink& sink) {
  GenParams params;
  params.n = n;
  std::string ref;
  const InstanceFile inst = resolve_instance(instance_path, "regular_simplex", params, seed, ref);
  const PointSet vertices = instance_points(inst);
  FaceBallConfig cfg;
  cfg.restarts = restarts;
  cfg.iterations = iterations;
  cfg.seed = seed;
  Stopwatch watch;
  const FaceMode face_mode = mode == "cone" ? FaceMode::Cone : FaceMode::Affine;
  const FaceBallReport report = min_ball_meeting_faces(vertices, k, face_mode, cfg);
  BoundReport rep = base_row("thm14", ref, seed);
  rep.n = static_cast<int>(vertices.size());
  rep.r_or_k = k;
  rep.dimension = inst.dimension;
  rep.achieved = simplex_lambda(static_cast<int>(vertices.size()), k);
  rep.bound = report.ratio;
  rep.slack = tol;
  sink.add(rep, watch);
  return sink.flush();
}

// ---- selection / nets / centerpoints ---------------------------------------

int run_selection(const std::string& instance_path, int n, int r, int d, std::uint64_t seed,
                  RowSink& sink) {
  GenParams params;
  params.n = n;
  params.d = d;
  std::string ref;
  const InstanceFile inst = resolve_instance(instance_path, "random_cloud", params, seed, ref);
  const PointSet pts = instance_points(inst);
  Stopwatch watch;
  const SelectionResult res = selection_point(pts, r);
  if (!res.verified_hits)
    throw std::invalid_argument(
        "instance too large to verify the selection guarantee; keep C(n,r) <= 1e5");
  BoundReport rep = base_row("thm12", ref, seed);
  rep.n = static_cast<int>(pts.size());
  rep.r_or_k = r;
  rep.dimension = inst.dimension;
  rep.achieved = res.hit_lower_bound;
  rep.bound = static_cast<double>(*res.verified_hits);
  sink.add(rep, watch);
  return sink.flush();
}

int run_epsnet(const std::string& instance_path, int n, int r, int d, double eps,
               const std::string& mode, std::uint64_t seed, RowSink& sink) {
  GenParams params;
  params.n = n;
  params.d = d;
  std::string ref;
  const InstanceFile inst = resolve_instance(instance_path, "random_cloud", params, seed, ref);
  const PointSet pts = instance_points(inst);
  Stopwatch watch;
  const EpsNetResult res = weak_epsnet(
      pts, r, eps, mode == "heuristic" ? ViolatorMode::Heuristic : ViolatorMode::Exhaustive);
  BoundReport size_row = base_row("thm13", ref, seed);
  size_row.n = static_cast<int>(pts.size());
  size_row.r_or_k = r;
  size_row.dimension = inst.dimension;
  size_row.achieved = static_cast<double>(res.net.size());
  size_row.bound = res.size_bound;
  size_row.instance_ref += res.certified ? "#certified" : "#heuristic";
  sink.add(size_row, watch);
  // per-iteration deletion floor, summed
  double floors = 0.0, deleted = 0.0;
  for (const EpsNetIteration& it : res.violator_log) {
    floors += it.min_deletions;
    deleted += static_cast<double>(it.deleted_tuples);
  }
  BoundReport del_row = size_row;
  del_row.achieved = floors;
  del_row.bound = deleted;
  del_row.slack = 1e-9;
  sink.add(del_row, watch);
  return sink.flush();
}

int run_centerpoint(const std::string& instance_path, int n, int k, int d, int directions,
                    std::uint64_t seed, RowSink& sink) {
  GenParams params;
  params.n = n;
  params.d = d;
  params.spread = 0.3;  // keep the generated cloud inside the unit ball
  std::string ref;
  InstanceFile inst = resolve_instance(instance_path, "random_cloud", params, seed, ref);
  PointSet pts = instance_points(inst);
  if (instance_path.empty()) {
    // rescale into B(0, 0.98) so the verifier's unit-ball precondition holds
    const Ball meb = min_enclosing_ball(pts.points());
    std::vector<Point> moved;
    const double scale = meb.radius > 0.98 ? 0.98 / meb.radius : 1.0;
    for (const Point& p : pts.points()) moved.push_back(scaled(sub(p, meb.center), scale));
    pts = PointSet(moved);
  }
  Stopwatch watch;
  const CenterpointResult res = centerpoint_construct(pts, k);
  const CenterpointCheck check = centerpoint_verify(pts, k, res.q, directions);
  BoundReport rep = base_row("centerpoint", ref + "#" + res.route, seed);
  rep.n = static_cast<int>(pts.size());
  rep.r_or_k = k;
  rep.dimension = pts.dimension();
  rep.achieved = 1.0 / k;
  rep.bound = check.min_fraction;
  rep.slack = 1e-9;
  sink.add(rep, watch);
  return sink.flush();
}

// ---- bench ------------------------------------------------------------------

// one deterministic row per theorem tag the library certifies
int run_bench(std::uint64_t seed, RowSink& sink) {
  {
    GenParams p;
    p.r = 4;
    p.n = 5;
    p.d = 6;
    const auto inst = generate_instance("random_weighted", p, seed);
    Point a;
    const WeightedFamily family = instance_weighted(inst, &a);
    Stopwatch watch;
    const auto res = derandomized_transversal(family, a);
    BoundReport rep = base_row("thm4", "bench:weighted", seed);
    rep.n = 20;
    rep.r_or_k = 4;
    rep.dimension = 6;
    rep.achieved = res.distance;
    rep.bound = res.bound;
    rep.slack = 1e-9;
    sink.add(rep, watch);

    Stopwatch watch_eta;
    const auto eta_res = eta_perturbed_transversal(family.sets, a, 0.05);
    BoundReport eta_rep = base_row("lem3", "bench:weighted", seed);
    eta_rep.n = 20;
    eta_rep.r_or_k = 4;
    eta_rep.dimension = 6;
    eta_rep.achieved = eta_res.distance;
    eta_rep.bound = eta_res.bound;
    eta_rep.slack = 1e-9;
    sink.add(eta_rep, watch_eta);

    Stopwatch watch_fw;
    const auto fw = frank_wolfe_transversal(family.sets, a, 2);
    BoundReport fw_rep = base_row("thm5", "bench:weighted", seed);
    fw_rep.n = 20;
    fw_rep.r_or_k = 4;
    fw_rep.dimension = 6;
    fw_rep.achieved = fw.distance;
    fw_rep.bound = fw.bound;
    fw_rep.slack = 1e-9;
    sink.add(fw_rep, watch_fw);
  }
  {
    GenParams p;
    p.r = 4;
    p.n = 4;
    p.d = 3;
    const auto inst = generate_instance("random_colored", p, seed + 1);
    const ColoredFamily family = instance_colored(inst);
    Stopwatch watch;
    const auto halving = balanced_halving(family);
    BoundReport rep = base_row("cor1", "bench:colored", seed + 1);
    rep.n = family_total_size(family);
    rep.r_or_k = 4;
    rep.dimension = 3;
    rep.achieved = halving.displacement;
    rep.bound = halving.bound;
    rep.slack = 1e-9;
    sink.add(rep, watch);

    Stopwatch watch_col;
    const auto part = colored_tverberg(family);
    BoundReport col = base_row("thm9", "bench:colored", seed + 1);
    col.n = family_total_size(family);
    col.r_or_k = 4;
    col.dimension = 3;
    col.achieved = part.max_distance;
    col.bound = part.bound;
    col.slack = 1e-9;
    sink.add(col, watch_col);
  }
  {
    GenParams p;
    p.n = 14;
    p.d = 4;
    const auto inst = generate_instance("random_cloud", p, seed + 2);
    const PointSet pts = instance_points(inst);
    Stopwatch watch;
    const auto part = uncolored_tverberg(pts, 3);
    BoundReport rep = base_row("thm3", "bench:cloud", seed + 2);
    rep.n = 14;
    rep.r_or_k = 3;
    rep.dimension = 4;
    rep.achieved = part.max_distance;
    rep.bound = part.bound;
    rep.slack = 1e-9;
    sink.add(rep, watch);

    // dimension-aware enclosing-ball bound, R <= D sqrt(d / (2(d+1)))
    Stopwatch watch_jung;
    const Ball meb = min_enclosing_ball(pts.points());
    BoundReport jung = base_row("jung", "bench:cloud", seed + 2);
    jung.n = 14;
    jung.dimension = 4;
    jung.achieved = meb.radius;
    jung.bound = pts.diameter() * std::sqrt(4.0 / (2.0 * 5.0));
    jung.slack = 1e-6;
    sink.add(jung, watch_jung);
  }
  {
    GenParams p;
    p.n = 5;
    p.k = 2;
    const auto inst = generate_instance("helly_tight", p, seed);
    const BodyFamily bf = instance_bodies(inst);
    Stopwatch watch;
    const auto report = helly_center(bf.families[0], 2, bf.anchor.center);
    BoundReport coarse = base_row("thm2", "bench:helly_tight", seed);
    coarse.n = 5;
    coarse.r_or_k = 2;
    coarse.dimension = 5;
    coarse.achieved = report.radius;
    coarse.bound = report.bound_sqrt_k;
    coarse.slack = 1e-6;
    sink.add(coarse, watch);
    BoundReport precise = coarse;
    precise.theorem_tag = "thm10";
    precise.bound = report.bound_precise;
    sink.add(precise, watch);
  }
  {
    GenParams p;
    p.k = 2;
    p.m = {2, 3};
    const auto inst = generate_instance("hyperplane_family", p, seed);
    const BodyFamily bf = instance_bodies(inst);
    Stopwatch watch;
    const auto count = count_far_transversals(bf, bf.anchor.center, inst.rhos);
    BoundReport rep = base_row("thm6", "bench:hyperplane", seed);
    rep.n = static_cast<int>(count.total_transversals);
    rep.r_or_k = 2;
    rep.dimension = 2;
    rep.achieved = std::stod(inst.metadata.at("expected_far"));
    rep.bound = static_cast<double>(count.far_transversals);
    sink.add(rep, watch);
  }
  {
    GenParams p;
    p.k = 3;
    const auto inst = generate_instance("fractional_tight", p, seed);
    const BodyFamily bf = instance_bodies(inst);
    Stopwatch watch;
    const auto witness = fractional_helly_witness(bf);
    BoundReport rep = base_row("thm7", "bench:fractional", seed);
    rep.n = 12;
    rep.r_or_k = 3;
    rep.dimension = 2;
    rep.achieved = witness.beta_required * 4.0;
    rep.bound = static_cast<double>(witness.hit_count);
    rep.slack = 1e-9;
    sink.add(rep, watch);

    Stopwatch watch_single;
    const auto single = fractional_single_family(bf.families[0], 2, bf.anchor);
    BoundReport srep = base_row("thm8", "bench:fractional", seed);
    srep.n = 4;
    srep.r_or_k = 2;
    srep.dimension = 2;
    srep.achieved = single.beta_required * 4.0;
    srep.bound = static_cast<double>(single.hit_count);
    srep.slack = 1e-9;
    sink.add(srep, watch_single);
  }
  {
    GenParams p;
    p.n = 4;
    const auto inst = generate_instance("regular_simplex", p, seed);
    const PointSet vertices = instance_points(inst);
    Stopwatch watch;
    FaceBallConfig cfg;
    cfg.restarts = 3;
    cfg.iterations = 400;
    const auto report = min_ball_meeting_faces(vertices, 2, FaceMode::Affine, cfg);
    BoundReport rep = base_row("thm14", "bench:simplex", seed);
    rep.n = 4;
    rep.r_or_k = 2;
    rep.dimension = 4;
    rep.achieved = simplex_lambda(4, 2);
    rep.bound = report.ratio;
    rep.slack = 1e-5;
    sink.add(rep, watch);
  }
  {
    GenParams p;
    p.n = 10;
    p.d = 3;
    const auto inst = generate_instance("random_cloud", p, seed + 3);
    const PointSet pts = instance_points(inst);
    Stopwatch watch;
    const auto sel = selection_point(pts, 3);
    BoundReport rep = base_row("thm12", "bench:cloud", seed + 3);
    rep.n = 10;
    rep.r_or_k = 3;
    rep.dimension = 3;
    rep.achieved = sel.hit_lower_bound;
    rep.bound = sel.verified_hits ? static_cast<double>(*sel.verified_hits) : 0.0;
    sink.add(rep, watch);

    Stopwatch watch_net;
    const auto net = weak_epsnet(pts, 2, 0.4, ViolatorMode::Exhaustive);
    BoundReport net_rep = base_row("thm13", "bench:cloud", seed + 3);
    net_rep.n = 10;
    net_rep.r_or_k = 2;
    net_rep.dimension = 3;
    net_rep.achieved = static_cast<double>(net.net.size());
    net_rep.bound = net.size_bound;
    sink.add(net_rep, watch_net);

    Stopwatch watch_cp;
    const Ball meb = min_enclosing_ball(pts.points());
    std::vector<Point> moved;
    for (const Point& q : pts.points())
      moved.push_back(scaled(sub(q, meb.center), 0.98 / std::max(meb.radius, 0.98)));
    const PointSet unit(moved);
    const auto built = centerpoint_construct(unit, 2);
    const auto check = centerpoint_verify(unit, 2, built.q, 2000);
    BoundReport cp = base_row("centerpoint", "bench:cloud#" + built.route, seed + 3);
    cp.n = 10;
    cp.r_or_k = 2;
    cp.dimension = 3;
    cp.achieved = 0.5;
    cp.bound = check.min_fraction;
    cp.slack = 1e-9;
    sink.add(cp, watch_cp);
  }
  return sink.flush();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "no-dimension convexity toolkit: instance generation and bound verification.\n"
      "Rows report achieved <= bound + slack; for floor-style checks the required\n"
      "floor sits in `achieved` and the measured quantity in `bound`.\n"
      "Tags: thm2..thm10 (helly/tverberg/caratheodory), lem3, cor1, thm12..thm14,\n"
      "centerpoint, jung."};
  app.require_subcommand(1);

  std::string instance_path, mode, generator, out_path;
  int n = 12, k = 2, r = 3, d = 4, t = 1, trials = 5, directions = 4000, restarts = 4,
      iterations = 1200;
  double tol = 1e-9, eta = 0.05, eps = 0.4, shrink = 1.0, edge = 1.0, spread = 1.0;
  std::vector<int> m_counts, sizes;
  std::vector<double> rho;
  std::uint64_t seed = 1;
  bool recenter = false, verify_fw = false;
  OutputOptions output;
  int exit_code = 0;

  auto* gen = app.add_subcommand("gen", "generate an instance file");
  gen->add_option("--generator", generator,
                  "regular_simplex | random_cloud | random_colored | random_weighted | "
                  "helly_tight | hyperplane_family | fractional_tight | random_helly")
      ->required();
  gen->add_option("--out", out_path, "output path")->required();
  gen->add_option("--n", n);
  gen->add_option("--k", k);
  gen->add_option("--r", r);
  gen->add_option("--d", d);
  gen->add_option("--edge", edge);
  gen->add_option("--spread", spread);
  gen->add_option("--shrink", shrink);
  gen->add_option("--m", m_counts, "far counts per family (hyperplane_family)");
  gen->add_option("--sizes", sizes, "family sizes (hyperplane_family)");
  gen->add_option("--rho", rho, "distances per family (hyperplane_family)");
  gen->add_option("--seed", seed);
  gen->callback([&] {
    GenParams params;
    params.n = n;
    params.k = k;
    params.r = r;
    params.d = d;
    params.edge = edge;
    params.spread = spread;
    params.shrink = shrink;
    params.m = m_counts;
    params.sizes = sizes;
    params.rho = rho;
    const InstanceFile inst = generate_instance(generator, params, seed);
    write_instance(inst, out_path);
    std::cout << out_path << ": " << inst.kind << ", dimension " << inst.dimension << "\n";
  });

  auto add_common = [&](CLI::App* cmd, bool with_trials) {
    cmd->add_option("--instance", instance_path, "instance file (generated when omitted)");
    cmd->add_option("--seed", seed);
    cmd->add_option("--tol", tol, "pass slack");
    if (with_trials) cmd->add_option("--trials", trials);
    attach_output(cmd, output);
  };

  auto* cara = app.add_subcommand("caratheodory", "transversal distance vs D/sqrt(2r)");
  add_common(cara, true);
  cara->add_option("--r", r)->check(CLI::PositiveNumber);
  cara->add_option("--n", n, "points per set");
  cara->add_option("--d", d);
  cara->add_option("--mode", mode, "derandomized | random (random may exceed the mean bound)")
      ->check(CLI::IsMember({"derandomized", "random"}));
  cara->callback([&] {
    RowSink sink{output, {}};
    exit_code = run_caratheodory(instance_path, trials, r, n, d, seed,
                                 mode.empty() ? "derandomized" : mode, tol, sink);
  });

  auto* colorful =
      app.add_subcommand("colorful-caratheodory", "perturbed-family transversal bound");
  add_common(colorful, true);
  colorful->add_option("--r", r)->check(CLI::PositiveNumber);
  colorful->add_option("--n", n, "points per set");
  colorful->add_option("--d", d);
  colorful->add_option("--eta", eta, "hull distance allowance, fraction of the diameter");
  colorful->callback([&] {
    RowSink sink{output, {}};
    exit_code = run_colorful(instance_path, trials, r, n, d, eta, seed, tol, sink);
  });

  auto* fw = app.add_subcommand("frank-wolfe", "iterative transversal vs the t-set bound");
  add_common(fw, true);
  fw->add_option("--r", r)->check(CLI::PositiveNumber);
  fw->add_option("--n", n, "points per set");
  fw->add_option("--d", d);
  fw->add_option("--t", t, "hypothesis strength");
  fw->add_flag("--verify-hypothesis", verify_fw);
  fw->callback([&] {
    RowSink sink{output, {}};
    exit_code = run_frank_wolfe(instance_path, trials, r, n, d, t, verify_fw, seed, tol, sink);
  });

  auto* tv = app.add_subcommand("tverberg", "partition with a near-common hull point");
  add_common(tv, false);
  tv->add_option("--n", n);
  tv->add_option("--k", k, "parts (point_set instances)");
  tv->add_option("--d", d);
  tv->add_option("--mode", mode, "derandomized | random halving")
      ->check(CLI::IsMember({"derandomized", "random"}));
  tv->add_flag("--recenter", recenter, "polish the centre with a minimax pass");
  tv->callback([&] {
    RowSink sink{output, {}};
    exit_code = run_tverberg(instance_path, n, k, d, seed, mode.empty() ? "derandomized" : mode,
                             recenter, tol, sink);
  });

  auto* hv = app.add_subcommand("helly-verify", "k-wise hypothesis to family-wide centre");
  add_common(hv, false);
  hv->add_option("--n", n);
  hv->add_option("--k", k)->check(CLI::PositiveNumber);
  hv->add_option("--shrink", shrink, "tight-instance scale (generated instances)");
  hv->callback([&] {
    RowSink sink{output, {}};
    if (tol == 1e-9) tol = 1e-6;  // minimax centres carry solver error
    exit_code = run_helly_verify(instance_path, n, k, shrink, seed, tol, sink);
  });

  auto* hc = app.add_subcommand("helly-count", "far transversal count vs the declared floor");
  add_common(hc, false);
  hc->add_option("--k", k)->check(CLI::PositiveNumber);
  hc->add_option("--m", m_counts, "far counts per family (generated instances)");
  hc->add_option("--rho", rho, "per-family distances");
  hc->callback([&] {
    RowSink sink{output, {}};
    exit_code = run_helly_count(instance_path, k, m_counts, rho, seed, sink);
  });

  auto* fr = app.add_subcommand("fractional-helly", "witness ball for intersecting transversals");
  add_common(fr, false);
  fr->add_option("--k", k, "tuple size (single-family instances)");
  fr->callback([&] {
    RowSink sink{output, {}};
    exit_code = run_fractional(instance_path, k, seed, tol, sink);
  });

  auto* sx = app.add_subcommand("simplex-check", "min ball meeting all (k-1)-faces vs inball");
  add_common(sx, false);
  sx->add_option("--n", n, "vertex count (generated instances)");
  sx->add_option("--k", k)->check(CLI::PositiveNumber);
  sx->add_option("--mode", mode, "affine | cone face objects")
      ->check(CLI::IsMember({"affine", "cone"}));
  sx->add_option("--restarts", restarts);
  sx->add_option("--iterations", iterations);
  sx->callback([&] {
    RowSink sink{output, {}};
    if (tol == 1e-9) tol = 1e-5;  // subgradient descent tolerance
    exit_code = run_simplex_check(instance_path, n, k, mode.empty() ? "affine" : mode, restarts,
                                  iterations, seed, tol, sink);
  });

  auto* sel = app.add_subcommand("selection", "point hit by many r-tuple hulls");
  add_common(sel, false);
  sel->add_option("--n", n);
  sel->add_option("--r", r)->check(CLI::PositiveNumber);
  sel->add_option("--d", d);
  sel->callback([&] {
    RowSink sink{output, {}};
    exit_code = run_selection(instance_path, n, r, d, seed, sink);
  });

  auto* net = app.add_subcommand("epsnet", "weak net for convex ranges");
  add_common(net, false);
  net->add_option("--n", n);
  net->add_option("--r", r)->check(CLI::PositiveNumber);
  net->add_option("--d", d);
  net->add_option("--eps", eps)->check(CLI::Range(1e-9, 1.0));
  net->add_option("--mode", mode, "exhaustive | heuristic violator search")
      ->check(CLI::IsMember({"exhaustive", "heuristic"}));
  net->callback([&] {
    RowSink sink{output, {}};
    exit_code = run_epsnet(instance_path, n, r, d, eps, mode.empty() ? "exhaustive" : mode, seed,
                           sink);
  });

  auto* cp = app.add_subcommand("centerpoint", "point deep in every halfspace");
  add_common(cp, false);
  cp->add_option("--n", n);
  cp->add_option("--k", k)->check(CLI::PositiveNumber);
  cp->add_option("--d", d);
  cp->add_option("--directions", directions, "verification directions");
  cp->callback([&] {
    RowSink sink{output, {}};
    exit_code = run_centerpoint(instance_path, n, k, d, directions, seed, sink);
  });

  auto* bench = app.add_subcommand("bench", "one deterministic row per supported bound");
  bench->add_option("--seed", seed);
  attach_output(bench, output);
  bench->callback([&] {
    RowSink sink{output, {}};
    exit_code = run_bench(seed, sink);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "bound violation: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
