#include "commands.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "csv_io.hpp"
#include "image_io.hpp"
#include "sdc/core_cluster.hpp"
#include "sdc/error.hpp"
#include "sdc/parallel.hpp"

namespace sdc::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    items.push_back(item.substr(b, item.find_last_not_of(" \t") - b + 1));
  }
  return items;
}

std::vector<Dataset> parse_dataset_list(const std::string& s) {
  std::vector<Dataset> out;
  for (const auto& name : split_list(s)) {
    std::string lower = name;
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "suite") {
      out.insert(out.end(), standard_suite().begin(), standard_suite().end());
    } else if (lower == "all") {
      out.insert(out.end(), all_datasets().begin(), all_datasets().end());
    } else if (lower != "none") {
      out.push_back(parse_dataset(name));
    }
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || v < 0.0) {
      throw ParameterError("noise: not a non-negative number: '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

/// `--config` must be applied before the other flags, so find it up front.
std::string prescan_config(int argc, const char* const* argv) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) path = argv[++i];
    else if (a.rfind("--config=", 0) == 0) path = a.substr(9);
  }
  return path;
}

void bind_fields(CLI::App* app, RunConfig& cfg, bool params_only) {
  for (const auto& field : config_fields()) {
    if (params_only && !field.is_param && field.key != "minmax") continue;
    const ConfigField* f = &field;
    auto* opt = app->add_option_function<std::string>(
        "--" + field.key, [f, &cfg](const std::string& v) { f->set(cfg, v); }, field.help);
    if (field.is_flag) opt->expected(0, 1)->default_str("true");
  }
  app->add_option("--config", "flat key = value file; flags override it");
}

std::vector<int> read_any_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::string first;
  std::getline(in, first);
  while (!first.empty() && (first.back() == '\r' || first.back() == ' ')) first.pop_back();
  if (first == "index,label") return read_labels_csv(path);
  const PointSet ps = read_csv(path);
  if (!ps.has_labels()) {
    throw DataError(path + ": expected an index,label file or a CSV with a label column");
  }
  return ps.labels();
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  auto out = open_out(path);
  out << text;
}

}  // namespace

PointSet load_points(const RunConfig& cfg) {
  const int sources = int(!cfg.input.empty()) + int(!cfg.image.empty()) + int(cfg.gen.has_value());
  if (sources != 1) throw ParameterError("give exactly one of --input, --image or --gen");
  PointSet ps;
  if (!cfg.input.empty()) ps = read_csv(cfg.input);
  else if (!cfg.image.empty()) ps = image_points(read_image(cfg.image), cfg.image_mode);
  else ps = gen_suite({*cfg.gen, cfg.seed, false});
  if (cfg.noise > 0.0) ps = add_noise(ps, cfg.noise, noise_seed(cfg.seed));
  return ps;
}

RunOutcome execute(const PointSet& raw, const RunConfig& cfg, bool knn_only) {
  cfg.params.validate();
  RunOutcome out;
  out.raw = raw;
  const auto t0 = Clock::now();
  out.points = cfg.minmax ? minmax_rescale(raw) : raw;
  if (knn_only) {
    ParamSet p = cfg.params;
    p.mode = Mode::KNN;
    Assignment a = core_cluster(out.points, p);
    if (p.redistribute_isolated && !a.isolated().empty()) {
      a = redistribute_isolated(a, out.points, &out.result.redistribution_skipped);
    }
    if (!a.isolated().empty()) out.result.isolated_groups.push_back({IsolationStage::Global, a.isolated()});
    out.result.assignment = std::move(a);
  } else {
    out.result = sdc_hsdd_ndsa(out.points, cfg.params);
  }
  out.seconds = seconds_since(t0);
  out.labels = export_labels(out.result.assignment.cp);
  return out;
}

RunOutcome execute(const RunConfig& cfg, bool knn_only) {
  return execute(load_points(cfg), cfg, knn_only);
}

nlohmann::json params_json(const ParamSet& p) {
  nlohmann::json j;
  j["search-neighbor-k"] = p.search_neighbor_k;
  j["rho-calculate-k"] = p.rho_calculate_k;
  j["iso-neighbor-k"] = p.iso_neighbor_k;
  j["max-iso-point-rho"] = p.max_iso_point_rho;
  j["min-cluster-point"] = p.min_cluster_point;
  j["min-knn-cluster-point"] = p.min_knn_cluster_point;
  j["eps"] = p.eps;
  j["min-eps"] = p.min_eps;
  j["max-eps"] = p.max_eps;
  j["adjust"] = p.adjust;
  j["fraction-f"] = p.fraction_f ? nlohmann::json(*p.fraction_f) : nlohmann::json(nullptr);
  j["mode"] = p.mode == Mode::SD ? "sd" : "knn";
  j["kon"] = p.kon;
  j["ioc"] = p.ioc;
  j["merge-enabled"] = p.merge_enabled;
  j["redistribute-isolated"] = p.redistribute_isolated;
  j["differential-source"] =
      p.differential_source == DifferentialSource::MaxNormalized ? "max" : "mean";
  j["threads"] = p.threads;
  return j;
}

nlohmann::json summary_json(const RunConfig& cfg, const RunOutcome& o) {
  const Assignment& a = o.result.assignment;
  nlohmann::json j;
  j["n"] = o.points.size();
  j["dim"] = o.points.dim();
  j["clusters"] = a.cluster_count();
  std::vector<std::size_t> sizes;
  for (std::size_t c = 1; c < a.clusters.size(); ++c) sizes.push_back(a.clusters[c].size());
  j["sizes"] = sizes;
  j["isolated"] = a.isolated().size();
  nlohmann::json eps = nlohmann::json::array();
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : o.result.refinements) {
    eps.push_back(s.eps);
    steps.push_back({{"subset_size", s.subset_size}, {"eps", s.eps}, {"parts", s.parts}});
  }
  j["eps"] = eps;
  j["refinements"] = steps;
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : o.result.isolated_groups) {
    groups.push_back({{"stage", to_string(g.stage)}, {"size", g.points.size()}});
  }
  j["isolated_groups"] = groups;
  j["redistribution_skipped"] = o.result.redistribution_skipped;
  if (o.raw.has_labels()) {
    j["ari"] = ari(o.raw.labels(), o.labels);
    j["nmi"] = nmi(o.raw.labels(), o.labels);
  }
  j["wall_seconds"] = o.seconds;
  j["minmax"] = cfg.minmax;
  j["params"] = params_json(cfg.params);
  return j;
}

BenchRow bench_cell(Dataset d, std::uint64_t seed, double noise, const ParamSet& params, bool minmax) {
  PointSet ps = gen_suite({d, seed, false});
  if (noise > 0.0) ps = add_noise(ps, noise, noise_seed(seed));
  ParamSet p = params;
  p.redistribute_isolated = true;
  const auto t0 = Clock::now();
  const PointSet input = minmax ? minmax_rescale(ps) : ps;
  const HierarchyResult r = sdc_hsdd_ndsa(input, p);
  BenchRow row;
  row.seconds = seconds_since(t0);
  row.dataset = d;
  row.seed = seed;
  row.noise = noise;
  row.n = ps.size();
  row.clusters = r.assignment.cluster_count();
  row.ari = ari(ps.labels(), r.assignment.cp);
  row.nmi = nmi(ps.labels(), r.assignment.cp);
  return row;
}

BenchReport run_bench(const BenchSpec& spec) {
  spec.params.validate();
  BenchReport report;
  for (Dataset d : spec.datasets) {
    for (double x : spec.noise_levels) {
      for (std::uint64_t s : spec.seeds) report.rows.push_back({d, s, x});
    }
  }
  const std::size_t threads = spec.threads ? spec.threads : default_thread_count();
  ParamSet inner = spec.params;
  if (threads > 1) inner.threads = 1;
  parallel_for(report.rows.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      BenchRow& r = report.rows[i];
      r = bench_cell(r.dataset, r.seed, r.noise, inner, spec.minmax);
    }
  });
  for (double x : spec.noise_levels) {
    BenchAverage avg;
    avg.noise = x;
    for (const auto& r : report.rows) {
      if (r.noise != x) continue;
      ++avg.cells;
      avg.ari += r.ari;
      avg.nmi += r.nmi;
      avg.seconds += r.seconds;
    }
    if (avg.cells == 0) continue;
    avg.ari /= double(avg.cells);
    avg.nmi /= double(avg.cells);
    avg.seconds /= double(avg.cells);
    report.averages.push_back(avg);
  }
  return report;
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "dataset,seed,noise,n,clusters,ari,nmi,seconds\n";
  for (const auto& r : report.rows) {
    out << to_string(r.dataset) << ',' << r.seed << ',' << fmt("%g", r.noise) << ',' << r.n << ','
        << r.clusters << ',' << fmt("%.6f", r.ari) << ',' << fmt("%.6f", r.nmi) << ','
        << fmt("%.4f", r.seconds) << '\n';
  }
  for (const auto& a : report.averages) {
    out << "AVERAGE,," << fmt("%g", a.noise) << ",,," << fmt("%.6f", a.ari) << ','
        << fmt("%.6f", a.nmi) << ',' << fmt("%.4f", a.seconds) << '\n';
  }
}

nlohmann::json bench_json(const BenchReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"dataset", to_string(r.dataset)}, {"seed", r.seed}, {"noise", r.noise},
                    {"n", r.n}, {"clusters", r.clusters}, {"ari", r.ari}, {"nmi", r.nmi},
                    {"seconds", r.seconds}});
  }
  nlohmann::json avgs = nlohmann::json::array();
  for (const auto& a : report.averages) {
    avgs.push_back({{"noise", a.noise}, {"cells", a.cells}, {"ari", a.ari}, {"nmi", a.nmi},
                    {"seconds", a.seconds}});
  }
  return {{"rows", rows}, {"averages", avgs}};
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Density clustering with secondary directed differentials"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sdc 0.1.0");

  RunConfig cfg;
  RunConfig knn_cfg;
  RunConfig bench_cfg;
  int status = kExitOk;

  // gen
  auto* gen = app.add_subcommand("gen", "write a roster dataset as CSV");
  std::string gen_name, gen_out, gen_raster;
  std::uint64_t gen_seed = 1;
  double gen_noise = 0.0;
  bool gen_exact = false, gen_list = false;
  gen->add_option("name", gen_name, "dataset name (see --list)");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--noise", gen_noise, "Gaussian noise level")->check(CLI::NonNegativeNumber);
  gen->add_flag("--exact-grid", gen_exact, "put plateau generators on exact lattices");
  gen->add_option("--out", gen_out, "output CSV (default stdout)");
  gen->add_option("--raster", gen_raster, "also write a color card as an image (.png, else PGM)");
  gen->add_flag("--list", gen_list, "list dataset names");

  // run / knn-baseline
  auto* run = app.add_subcommand("run", "cluster a dataset with the full pipeline");
  bind_fields(run, cfg, false);
  auto* knn = app.add_subcommand("knn-baseline", "cluster with a single kNN-mode core run");
  bind_fields(knn, knn_cfg, false);

  // score
  auto* score = app.add_subcommand("score", "ARI and NMI of a labelling against ground truth");
  std::string truth_path, pred_path, norm = "arithmetic";
  score->add_option("--truth", truth_path, "index,label file or CSV with a label column")->required();
  score->add_option("--pred", pred_path, "index,label file or CSV with a label column")->required();
  score->add_option("--nmi-norm", norm, "arithmetic or geometric")
      ->check(CLI::IsMember({"arithmetic", "geometric"}));

  // bench
  auto* bench = app.add_subcommand("bench", "score the roster over seeds and noise levels");
  std::string datasets = "suite", noise_list = "0", format = "csv", bench_out;
  std::size_t seeds = 5, jobs = 0;
  std::uint64_t first_seed = 1;
  bench->add_option("--datasets", datasets, "comma list of names, `suite`, `all` or `none`");
  bench->add_option("--seeds", seeds, "seeds per cell");
  bench->add_option("--first-seed", first_seed, "first seed");
  bench->add_option("--noise", noise_list, "comma list of noise levels");
  bench->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--out", bench_out, "report path (default stdout)");
  bench->add_option("--jobs", jobs, "cells run concurrently (0: default thread count)");
  bind_fields(bench, bench_cfg, true);

  try {
    const std::string config = prescan_config(argc, argv);
    if (!config.empty()) {
      cfg = load_config(config);
      knn_cfg = cfg;
      bench_cfg = cfg;
    }
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }

  try {
    if (*gen) {
      if (gen_list) {
        for (Dataset d : all_datasets()) out << to_string(d) << '\n';
        return kExitOk;
      }
      if (gen_name.empty()) throw ParameterError("gen: missing dataset name");
      const Dataset d = parse_dataset(gen_name);
      PointSet ps = gen_suite({d, gen_seed, gen_exact});
      if (gen_noise > 0.0) ps = add_noise(ps, gen_noise, noise_seed(gen_seed));
      std::ostringstream csv;
      write_points_csv(csv, ps);
      if (!gen_raster.empty()) {
        const GrayRaster g = color_card_raster(d);
        Raster r{g.width, g.height, 1, 255, {g.gray.begin(), g.gray.end()}};
        write_image(gen_raster, r);
      }
      write_text(gen_out, csv.str(), out);
    } else if (*run || *knn) {
      const bool knn_only = bool(*knn);
      const RunConfig& c = knn_only ? knn_cfg : cfg;
      const RunOutcome o = execute(c, knn_only);
      std::ostringstream labels, points;
      write_labels_csv(labels, o.labels);
      if (!c.points_out.empty()) write_points_csv(points, o.raw, o.labels);
      const std::string summary = summary_json(c, o).dump(2) + "\n";
      if (!c.labels_out.empty()) write_text(c.labels_out, labels.str(), out);
      if (!c.points_out.empty()) write_text(c.points_out, points.str(), out);
      write_text(c.summary_out, summary, out);
    } else if (*score) {
      const auto truth = read_any_labels(truth_path);
      const auto pred = read_any_labels(pred_path);
      if (truth.size() != pred.size()) {
        throw DataError("truth has " + std::to_string(truth.size()) + " labels, prediction " +
                        std::to_string(pred.size()));
      }
      const NmiNorm nn = norm == "geometric" ? NmiNorm::Geometric : NmiNorm::Arithmetic;
      nlohmann::json j{{"n", truth.size()}, {"ari", ari(truth, pred)}, {"nmi", nmi(truth, pred, nn)}};
      out << j.dump(2) << '\n';
    } else if (*bench) {
      BenchSpec spec;
      spec.datasets = parse_dataset_list(datasets);
      for (std::size_t i = 0; i < seeds; ++i) spec.seeds.push_back(first_seed + i);
      spec.noise_levels = parse_real_list(noise_list);
      spec.params = bench_cfg.params;
      spec.minmax = bench_cfg.minmax;
      spec.threads = jobs;
      const BenchReport report = run_bench(spec);
      std::ostringstream text;
      if (format == "json") text << bench_json(report).dump(2) << '\n';
      else write_bench_csv(text, report);
      write_text(bench_out, text.str(), out);
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    status = kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    status = kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    status = kExitData;
  }
  return status;
}

}  // namespace sdc::cli
