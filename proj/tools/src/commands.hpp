#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "run_config.hpp"
#include "sdc/hierarchy.hpp"
#include "sdc/metrics.hpp"
#include "sdc/point_set.hpp"
#include "sdc/synthetic.hpp"

#include "json.hpp"

namespace sdc::cli {

/// Exit statuses of the `sdc` tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitUsage = 2;

/// The points named by `cfg` (CSV, image or generator, plus noise), before
/// preprocessing.
PointSet load_points(const RunConfig& cfg);

struct RunOutcome {
  PointSet raw;     // as loaded
  PointSet points;  // as clustered, i.e. after optional minmax rescaling
  HierarchyResult result;
  std::vector<int> labels;  // exported: isolated -1, clusters from 0
  double seconds = 0.0;
};

/// Full pipeline (`run`), or a single kNN-mode core run when `knn_only`.
RunOutcome execute(const RunConfig& cfg, bool knn_only);
RunOutcome execute(const PointSet& raw, const RunConfig& cfg, bool knn_only);

nlohmann::json summary_json(const RunConfig& cfg, const RunOutcome& outcome);
nlohmann::json params_json(const ParamSet& params);

struct BenchSpec {
  std::vector<Dataset> datasets;
  std::vector<std::uint64_t> seeds;
  std::vector<double> noise_levels;
  ParamSet params;  // redistribution is forced on
  bool minmax = true;
  std::size_t threads = 0;  // concurrent cells; 0 picks the default
};

struct BenchRow {
  Dataset dataset = Dataset::TC;
  std::uint64_t seed = 0;
  double noise = 0.0;
  std::size_t n = 0;
  std::size_t clusters = 0;
  double ari = 0.0;
  double nmi = 0.0;
  double seconds = 0.0;
};

struct BenchAverage {
  double noise = 0.0;
  std::size_t cells = 0;
  double ari = 0.0;
  double nmi = 0.0;
  double seconds = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;          // dataset, then noise, then seed order
  std::vector<BenchAverage> averages;  // one per noise level
};

/// Generates, perturbs, clusters, redistributes and scores every
/// (dataset, seed, noise) cell.
BenchReport run_bench(const BenchSpec& spec);
BenchRow bench_cell(Dataset d, std::uint64_t seed, double noise, const ParamSet& params, bool minmax);

void write_bench_csv(std::ostream& out, const BenchReport& report);
nlohmann::json bench_json(const BenchReport& report);

/// Entry point of the `sdc` tool; returns the exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sdc::cli
