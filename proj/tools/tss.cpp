#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <malloc.h>
#include <new>

#include <CLI11.hpp>

#include "tss/diversity.hpp"
#include "tss/json_io.hpp"
#include "tss/mem_tracker.hpp"
#include "tss/svg.hpp"

#ifdef TSS_HAVE_OPENMP
#include <omp.h>
#endif

TSS_MEM_TRACKER_DEFINE_GLOBALS

namespace {

// exit codes: 0 ok, 2 usage/config, 3 data parse/validation, 4 infeasible m
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInfeasible = 4;

int g_log_level = 1;  // 0=error 1=info 2=debug

void log_info(const std::string& msg) {
  if (g_log_level >= 1) std::fprintf(stderr, "[tss] %s\n", msg.c_str());
}

std::string now_iso8601() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
  return buf;
}

void ensure_outdir(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
}

void refuse_existing(const std::filesystem::path& p, bool force) {
  if (!force && std::filesystem::exists(p))
    throw tss::Error(p.string() + " exists (use --force to overwrite)");
}

std::vector<tss::UtilityConfig> utilities_or_default(const tss::RunConfig& cfg) {
  if (!cfg.utilities.empty()) return cfg.utilities;
  // defaults matched to the bundled generator's norm thresholds
  std::vector<tss::UtilityConfig> fns(3);
  fns[0].kind = tss::UtilityKind::Trend;
  fns[1].kind = tss::UtilityKind::Range;
  fns[1].tau_high = cfg.generator.tau_high();
  fns[1].tau_low = cfg.generator.tau_low();
  fns[1].k_high = fns[1].k_low = 2.0;
  fns[2].kind = tss::UtilityKind::TrendDeviation;
  return fns;
}

int cmd_generate(const std::string& config_path, const std::string& out_override,
                 long seed_override, bool force, bool deterministic) {
  tss::RunConfig cfg =
      config_path.empty() ? tss::RunConfig{} : tss::load_run_config(config_path);
  if (!out_override.empty()) cfg.output = out_override;
  if (seed_override >= 0) cfg.generator.seed = static_cast<std::uint64_t>(seed_override);
  ensure_outdir(cfg.output);

  auto dataset_path = cfg.output / "dataset.csv";
  auto ann_path = cfg.output / "annotations.csv";
  auto manifest_path = cfg.output / "manifest.json";
  refuse_existing(dataset_path, force);
  refuse_existing(ann_path, force);

  log_info("generating " + std::to_string(cfg.generator.n_series) + " series x " +
           std::to_string(cfg.generator.length) + " points (seed " +
           std::to_string(cfg.generator.seed) + ")");
  auto data = tss::generate_synthetic(cfg.generator);
  tss::save_dataset(data.dataset, dataset_path);
  tss::save_annotations(data.annotations, ann_path);

  tss::ordered_json manifest;
  manifest["tool"] = tss::kToolName;
  manifest["version"] = tss::kToolVersion;
  if (!deterministic) manifest["generated_at"] = now_iso8601();
  manifest["config"] = tss::config_to_json(cfg);
  manifest["n_points"] = data.dataset.total_points();
  manifest["n_annotations"] = data.annotations.size();
  tss::write_text_file(manifest_path, manifest.dump(2) + "\n");
  log_info("wrote " + dataset_path.string() + ", " + ann_path.string());
  return 0;
}

int cmd_summarize(const std::string& config_path, const std::string& out_override,
                  bool deterministic) {
  tss::RunConfig cfg = tss::load_run_config(config_path);
  if (!out_override.empty()) cfg.output = out_override;
  if (cfg.dataset.empty()) throw tss::ValidationError("config: 'dataset' is required");
  ensure_outdir(cfg.output);

  tss::Dataset d = tss::load_dataset(cfg.dataset);
  auto fns = utilities_or_default(cfg);
  tss::RunConfig resolved = cfg;
  resolved.utilities = fns;
  auto echo = tss::config_to_json(resolved);

  tss::Summary summary;
  bool infeasible = false;
  std::string infeasible_msg;
  try {
    if (cfg.method == "random")
      summary = tss::random_select(d, cfg.window, cfg.selection);
    else
      summary = tss::insights_select(d, cfg.window, fns, cfg.selection);
  } catch (tss::InfeasibleSelection& e) {
    summary = std::move(e.partial);
    infeasible = true;
    infeasible_msg = e.what();
  }

  auto sj = tss::summary_to_json(summary, echo);
  if (infeasible) sj["error"] = infeasible_msg;
  if (!deterministic) sj["generated_at"] = now_iso8601();
  tss::write_text_file(cfg.output / "summary.json", sj.dump(2) + "\n");

  std::string ts = deterministic ? "" : now_iso8601();
  std::string index = "<html><body><h1>Time series summary</h1>\n<ol>\n";
  char name[64];
  for (std::size_t i = 0; i < summary.entries.size(); ++i) {
    const auto& e = summary.entries[i];
    std::snprintf(name, sizeof name, "window_%03zu.svg", i);
    std::string title = e.window.series_id + " [" + std::to_string(e.window.start) + "," +
                        std::to_string(e.window.end) + "] (" + tss::to_string(e.source) +
                        (e.bucket_id.empty() ? "" : ": " + e.bucket_id) + ")";
    tss::write_text_file(
        cfg.output / name,
        tss::svg::window_chart(e.window.values, e.window.anchor - e.window.start, title, ts));
    char score[64];
    std::snprintf(score, sizeof score, "utility %.4g", e.utility_score);
    index += "<li><a href=\"" + std::string(name) + "\">" + title + "</a> " + score;
    if (e.diversity_score) {
      std::snprintf(score, sizeof score, ", diversity %.4g", *e.diversity_score);
      index += score;
    }
    index += "</li>\n";
  }
  index += "</ol></body></html>\n";
  tss::write_text_file(cfg.output / "index.html", index);

  if (infeasible) {
    std::fprintf(stderr, "[tss] infeasible: %s (partial summary written)\n",
                 infeasible_msg.c_str());
    return kExitInfeasible;
  }
  log_info("wrote " + (cfg.output / "summary.json").string() + " and " +
           std::to_string(summary.entries.size()) + " plots");
  return 0;
}

int cmd_evaluate(const std::string& summary_path, const std::string& ann_path,
                 const std::string& out_dir, bool deterministic) {
  tss::Summary summary = tss::load_summary_json(summary_path);
  if (summary.entries.empty())
    throw tss::ValidationError(summary_path + ": empty summary");
  auto anns = tss::load_annotations(ann_path);
  auto report = tss::capture_report(summary, anns);

  tss::ordered_json echo;
  echo["summary"] = summary_path;
  echo["annotations"] = ann_path;
  auto rj = tss::report_to_json(report, echo);
  if (!deterministic) rj["generated_at"] = now_iso8601();
  if (!out_dir.empty()) {
    ensure_outdir(out_dir);
    tss::write_text_file(std::filesystem::path(out_dir) / "report.json", rj.dump(2) + "\n");
  }

  std::printf("%-6s %-16s %-20s %-20s\n", "Size", "Model", "Event Coverage (%)",
              "Event Examples (%)");
  std::printf("%-6d %-16s %-20.2f %-20.2f\n", report.size, "summary",
              100.0 * report.coverage, 100.0 * report.examples);
  for (const auto& [type, total] : report.per_type_total)
    std::printf("  type %-16s annotations=%-6d captured=%s\n", type.c_str(), total,
                report.per_type_hits.at(type) ? "yes" : "no");
  return 0;
}

int cmd_bench(const std::string& sizes_arg, const std::string& methods_arg, int trials,
              const std::string& config_path, const std::string& out_dir,
              bool deterministic) {
  std::vector<long> sizes;
  {
    std::stringstream ss(sizes_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) sizes.push_back(std::stol(tok));
  }
  std::vector<std::string> methods;
  {
    std::stringstream ss(methods_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) methods.push_back(tok);
  }
  for (const auto& m : methods)
    if (m != "insights-tw" && m != "insights-critic" && m != "random")
      throw tss::ValidationError("config: unknown method '" + m +
                                 "' (valid: insights-tw, insights-critic, random)");

  tss::GeneratorConfig base =
      config_path.empty() ? tss::GeneratorConfig{} : tss::load_run_config(config_path).generator;

  auto rows = tss::bench_scaling(sizes, methods, trials, base);
  ensure_outdir(out_dir);
  tss::save_bench_csv(rows, std::filesystem::path(out_dir) / "scaling.csv");

  // median per (method, n)
  std::vector<tss::svg::LogLogSeries> time_series, mem_series;
  for (const auto& m : methods) {
    tss::svg::LogLogSeries ts{m + " time", {}, {}}, ms{m + " mem", {}, {}};
    for (long n : sizes) {
      std::vector<double> wall, peak;
      long actual = std::max(1L, n / base.length) * base.length;
      for (const auto& r : rows)
        if (r.method == m && r.n == actual) {
          wall.push_back(r.wall_ms);
          peak.push_back(static_cast<double>(r.peak_bytes));
        }
      if (wall.empty()) continue;
      std::sort(wall.begin(), wall.end());
      std::sort(peak.begin(), peak.end());
      ts.x.push_back(static_cast<double>(actual));
      ts.y.push_back(wall[wall.size() / 2]);
      ms.x.push_back(static_cast<double>(actual));
      ms.y.push_back(peak[peak.size() / 2]);
    }
    if (!ts.x.empty()) {
      if (ts.x.size() >= 2) {
        double slope = tss::loglog_slope(ts.x, ts.y);
        double r2 = tss::linear_r2(ts.x, ms.y);
        std::printf("%s: time log-log slope %.3f (%s), memory linear R^2 %.3f\n",
                    m.c_str(), slope, slope < 1.3 ? "pass" : "fail", r2);
      }
      time_series.push_back(std::move(ts));
      mem_series.push_back(std::move(ms));
    }
  }
  std::string ts_stamp = deterministic ? "" : now_iso8601();
  tss::write_text_file(std::filesystem::path(out_dir) / "scaling_time.svg",
                       tss::svg::loglog_chart(time_series, "runtime vs dataset size", "n",
                                              "wall ms", ts_stamp));
  tss::write_text_file(std::filesystem::path(out_dir) / "scaling_memory.svg",
                       tss::svg::loglog_chart(mem_series, "peak memory vs dataset size", "n",
                                              "bytes", ts_stamp));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* lvl = std::getenv("TSS_LOG")) {
    std::string s = lvl;
    g_log_level = s == "error" ? 0 : s == "debug" ? 2 : 1;
  }

  CLI::App app{"Global time-series summaries by greedy utility/diversity selection"};
  app.set_version_flag("--version", std::string(tss::kToolVersion));
  app.require_subcommand(1);

  int threads = 0;
  bool deterministic = false;
  app.add_option("--threads", threads, "worker threads (default: all cores)");
  app.add_flag("--deterministic", deterministic, "suppress timestamps in outputs");

  std::string config_path, out_dir, summary_path, ann_path;
  long seed = -1;
  bool force = false;

  auto* gen = app.add_subcommand("generate", "generate the synthetic annotated benchmark");
  gen->add_option("--config", config_path, "run config JSON");
  gen->add_option("--out", out_dir, "output directory");
  gen->add_option("--seed", seed, "generator seed override");
  gen->add_flag("--force", force, "overwrite existing outputs");

  auto* sum = app.add_subcommand("summarize", "build a time-series summary");
  sum->add_option("--config", config_path, "run config JSON")->required();
  sum->add_option("--out", out_dir, "output directory");

  auto* eva = app.add_subcommand("evaluate", "event-capture metrics for a summary");
  eva->add_option("--summary", summary_path, "summary.json path")->required();
  eva->add_option("--annotations", ann_path, "annotation CSV path")->required();
  eva->add_option("--out", out_dir, "output directory for report.json");

  std::string sizes = "10000,100000,1000000";
  std::string methods = "insights-tw,random";
  int trials = 3;
  auto* ben = app.add_subcommand("bench", "runtime/memory scaling measurements");
  ben->add_option("--sizes", sizes, "comma-separated dataset sizes");
  ben->add_option("--methods", methods, "comma-separated methods");
  ben->add_option("--trials", trials, "trials per point");
  ben->add_option("--config", config_path, "run config JSON (generator block)");
  ben->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

#ifdef TSS_HAVE_OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif
  try {
    if (gen->parsed()) return cmd_generate(config_path, out_dir, seed, force, deterministic);
    if (sum->parsed()) return cmd_summarize(config_path, out_dir, deterministic);
    if (eva->parsed())
      return cmd_evaluate(summary_path, ann_path, out_dir.empty() ? "out" : out_dir,
                          deterministic);
    if (ben->parsed())
      return cmd_bench(sizes, methods, trials, config_path,
                       out_dir.empty() ? "out" : out_dir, deterministic);
  } catch (const tss::InfeasibleError& e) {
    std::fprintf(stderr, "[tss] infeasible: %s\n", e.what());
    return kExitInfeasible;
  } catch (const tss::ParseError& e) {
    std::fprintf(stderr, "[tss] parse error: %s\n", e.what());
    return kExitData;
  } catch (const tss::ValidationError& e) {
    std::fprintf(stderr, "[tss] invalid input: %s\n", e.what());
    return std::string(e.what()).rfind("config:", 0) == 0 ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "[tss] error: %s\n", e.what());
    return 1;
  }
  return kExitUsage;
}
