#include "tss/json_io.hpp"

#include <fstream>
#include <set>

namespace tss {

namespace {

void reject_unknown_keys(const ordered_json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ValidationError("config: unknown key '" + it.key() + "' in " + where);
}

// validation errors raised while parsing a config file are usage errors
template <class F>
void validate_config(F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    std::string msg = e.what();
    if (msg.rfind("config:", 0) != 0) msg = "config: " + msg;
    throw ValidationError(msg);
  }
}

ordered_json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

UtilityConfig parse_utility(const ordered_json& j, std::size_t i) {
  std::string where = "utilities[" + std::to_string(i) + "]";
  reject_unknown_keys(j, {"kind", "id", "W_h", "W_l", "tau_h", "tau_l", "k_h", "k_l",
                          "w_h", "w_l", "feature_map"},
                      where);
  if (!j.contains("kind")) throw ValidationError("config: " + where + " missing 'kind'");
  UtilityConfig u;
  u.kind = utility_kind_from_string(j.at("kind").get<std::string>());
  u.id = j.value("id", "");
  u.w_rise = j.value("W_h", 1.0);
  u.w_fall = j.value("W_l", 1.0);
  u.tau_high = j.value("tau_h", 0.0);
  u.tau_low = j.value("tau_l", 0.0);
  u.k_high = j.value("k_h", 1.0);
  u.k_low = j.value("k_l", 1.0);
  u.range_w_high = j.value("w_h", 1.0);
  u.range_w_low = j.value("w_l", 1.0);
  u.feature_map = j.value("feature_map", "identity");
  validate_config([&] { u.validate(); });
  return u;
}

GeneratorConfig parse_generator(const ordered_json& j) {
  reject_unknown_keys(
      j, {"n_series", "length", "period", "amplitude", "noise_sigma", "evolving_rate",
          "surge_up_rate", "surge_down_rate", "out_of_bounds_rate", "evolving_magnitude",
          "evolving_duration", "surge_magnitude", "surge_width", "out_of_bounds_margin",
          "out_of_bounds_duration", "seed"},
      "generator");
  GeneratorConfig g;
  g.n_series = j.value("n_series", g.n_series);
  g.length = j.value("length", g.length);
  g.period = j.value("period", g.period);
  g.amplitude = j.value("amplitude", g.amplitude);
  g.noise_sigma = j.value("noise_sigma", g.noise_sigma);
  g.evolving_rate = j.value("evolving_rate", g.evolving_rate);
  g.surge_up_rate = j.value("surge_up_rate", g.surge_up_rate);
  g.surge_down_rate = j.value("surge_down_rate", g.surge_down_rate);
  g.out_of_bounds_rate = j.value("out_of_bounds_rate", g.out_of_bounds_rate);
  g.evolving_magnitude = j.value("evolving_magnitude", g.evolving_magnitude);
  g.evolving_duration = j.value("evolving_duration", g.evolving_duration);
  g.surge_magnitude = j.value("surge_magnitude", g.surge_magnitude);
  g.surge_width = j.value("surge_width", g.surge_width);
  g.out_of_bounds_margin = j.value("out_of_bounds_margin", g.out_of_bounds_margin);
  g.out_of_bounds_duration = j.value("out_of_bounds_duration", g.out_of_bounds_duration);
  g.seed = j.value("seed", g.seed);
  validate_config([&] { g.validate(); });
  return g;
}

}  // namespace

RunConfig parse_run_config(const ordered_json& j) {
  reject_unknown_keys(j, {"dataset", "annotations", "window", "utilities", "method",
                          "selection", "generator", "output"},
                      "top level");
  RunConfig cfg;
  if (j.contains("dataset")) cfg.dataset = j.at("dataset").get<std::string>();
  if (j.contains("annotations"))
    cfg.annotations = std::filesystem::path(j.at("annotations").get<std::string>());
  if (j.contains("window")) {
    const auto& w = j.at("window");
    reject_unknown_keys(w, {"b", "l"}, "window");
    cfg.window.before = w.value("b", cfg.window.before);
    cfg.window.length = w.value("l", cfg.window.length);
    validate_config([&] { cfg.window.validate(); });
  }
  if (j.contains("utilities")) {
    const auto& us = j.at("utilities");
    if (!us.is_array()) throw ValidationError("config: 'utilities' must be an array");
    for (std::size_t i = 0; i < us.size(); ++i)
      cfg.utilities.push_back(parse_utility(us[i], i));
  }
  if (j.contains("method")) {
    cfg.method = j.at("method").get<std::string>();
    if (cfg.method != "insights" && cfg.method != "random")
      throw ValidationError("config: method must be 'insights' or 'random'");
  }
  if (j.contains("selection")) {
    const auto& s = j.at("selection");
    reject_unknown_keys(s, {"m", "m_c", "m_p", "diversity", "seed", "overlap_gap",
                            "znorm_dtw", "critic_all_buckets"},
                        "selection");
    cfg.selection.target_size = s.value("m", cfg.selection.target_size);
    cfg.selection.candidates_per_round = s.value("m_c", cfg.selection.candidates_per_round);
    cfg.selection.prototypes = s.value("m_p", cfg.selection.prototypes);
    if (s.contains("diversity"))
      cfg.selection.diversity =
          diversity_kind_from_string(s.at("diversity").get<std::string>());
    cfg.selection.seed = s.value("seed", cfg.selection.seed);
    cfg.selection.overlap_gap = s.value("overlap_gap", cfg.selection.overlap_gap);
    cfg.selection.znorm_dtw = s.value("znorm_dtw", cfg.selection.znorm_dtw);
    cfg.selection.critic_all_buckets =
        s.value("critic_all_buckets", cfg.selection.critic_all_buckets);
    validate_config([&] { cfg.selection.validate(); });
  }
  if (j.contains("generator")) cfg.generator = parse_generator(j.at("generator"));
  if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(load_json(path));
}

ordered_json config_to_json(const RunConfig& cfg) {
  ordered_json j;
  j["dataset"] = cfg.dataset.string();
  if (cfg.annotations) j["annotations"] = cfg.annotations->string();
  j["window"] = {{"b", cfg.window.before}, {"l", cfg.window.length}};
  ordered_json us = ordered_json::array();
  for (const auto& u : cfg.utilities) {
    ordered_json ju;
    ju["kind"] = to_string(u.kind);
    ju["id"] = u.effective_id();
    switch (u.kind) {
      case UtilityKind::Trend:
        ju["W_h"] = u.w_rise;
        ju["W_l"] = u.w_fall;
        break;
      case UtilityKind::Range:
        ju["tau_h"] = u.tau_high;
        ju["tau_l"] = u.tau_low;
        ju["k_h"] = u.k_high;
        ju["k_l"] = u.k_low;
        ju["w_h"] = u.range_w_high;
        ju["w_l"] = u.range_w_low;
        break;
      case UtilityKind::TrendDeviation:
        break;
    }
    ju["feature_map"] = u.feature_map;
    us.push_back(std::move(ju));
  }
  j["utilities"] = std::move(us);
  j["method"] = cfg.method;
  j["selection"] = {{"m", cfg.selection.target_size},
                    {"m_c", cfg.selection.candidates_per_round},
                    {"m_p", cfg.selection.prototypes},
                    {"diversity", to_string(cfg.selection.diversity)},
                    {"seed", cfg.selection.seed},
                    {"overlap_gap", cfg.selection.overlap_gap},
                    {"znorm_dtw", cfg.selection.znorm_dtw},
                    {"critic_all_buckets", cfg.selection.critic_all_buckets}};
  j["generator"] = {{"n_series", cfg.generator.n_series},
                    {"length", cfg.generator.length},
                    {"period", cfg.generator.period},
                    {"amplitude", cfg.generator.amplitude},
                    {"noise_sigma", cfg.generator.noise_sigma},
                    {"evolving_rate", cfg.generator.evolving_rate},
                    {"surge_up_rate", cfg.generator.surge_up_rate},
                    {"surge_down_rate", cfg.generator.surge_down_rate},
                    {"out_of_bounds_rate", cfg.generator.out_of_bounds_rate},
                    {"evolving_magnitude", cfg.generator.evolving_magnitude},
                    {"evolving_duration", cfg.generator.evolving_duration},
                    {"surge_magnitude", cfg.generator.surge_magnitude},
                    {"surge_width", cfg.generator.surge_width},
                    {"out_of_bounds_margin", cfg.generator.out_of_bounds_margin},
                    {"out_of_bounds_duration", cfg.generator.out_of_bounds_duration},
                    {"seed", cfg.generator.seed}};
  // the output directory is where the file lives, not part of the analysis
  return j;
}

ordered_json summary_to_json(const Summary& s, const ordered_json& config_echo) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = config_echo;
  ordered_json entries = ordered_json::array();
  for (const auto& e : s.entries) {
    ordered_json je;
    je["series_id"] = e.window.series_id;
    je["start"] = e.window.start;
    je["anchor"] = e.window.anchor;
    je["end"] = e.window.end;
    je["values"] = e.window.values;
    je["source"] = to_string(e.source);
    je["bucket"] = e.bucket_id;
    je["utility_score"] = e.utility_score;
    if (e.diversity_score)
      je["diversity_score"] = *e.diversity_score;
    else
      je["diversity_score"] = nullptr;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  j["prototype_shortfall"] = s.prototype_shortfall;
  return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

void save_summary_json(const Summary& s, const ordered_json& config_echo,
                       const std::filesystem::path& path) {
  write_text_file(path, summary_to_json(s, config_echo).dump(2) + "\n");
}

Summary load_summary_json(const std::filesystem::path& path) {
  ordered_json j = load_json(path);
  if (!j.contains("entries") || !j.at("entries").is_array())
    throw ParseError(path.string() + ": missing 'entries' array");
  Summary s;
  for (const auto& je : j.at("entries")) {
    SummaryEntry e;
    e.window.series_id = je.at("series_id").get<std::string>();
    e.window.start = je.at("start").get<int>();
    e.window.anchor = je.at("anchor").get<int>();
    e.window.end = je.at("end").get<int>();
    if (je.contains("values")) e.window.values = je.at("values").get<std::vector<double>>();
    std::string src = je.value("source", "bucket");
    e.source = src == "prototype" ? EntrySource::Prototype
               : src == "random"  ? EntrySource::Random
                                  : EntrySource::Bucket;
    e.bucket_id = je.value("bucket", "");
    e.utility_score = je.value("utility_score", 0.0);
    if (je.contains("diversity_score") && !je.at("diversity_score").is_null())
      e.diversity_score = je.at("diversity_score").get<double>();
    s.entries.push_back(std::move(e));
  }
  s.prototype_shortfall = j.value("prototype_shortfall", 0);
  return s;
}

ordered_json report_to_json(const CaptureReport& r, const ordered_json& config_echo) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = config_echo;
  j["size"] = r.size;
  j["event_coverage"] = r.coverage;
  j["event_examples"] = r.examples;
  ordered_json types = ordered_json::array();
  for (const auto& [type, total] : r.per_type_total) {
    ordered_json jt;
    jt["event_type"] = type;
    jt["annotations"] = total;
    jt["captured"] = r.per_type_hits.at(type) != 0;
    types.push_back(std::move(jt));
  }
  j["per_type"] = std::move(types);
  return j;
}

}  // namespace tss
