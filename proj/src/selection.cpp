#include "tss/selection.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "tss/diversity.hpp"
#include "tss/kernels.hpp"

namespace tss {

std::string to_string(DiversityKind k) {
  return k == DiversityKind::TimeWarp ? "tw" : "critic";
}

DiversityKind diversity_kind_from_string(const std::string& s) {
  if (s == "tw") return DiversityKind::TimeWarp;
  if (s == "critic") return DiversityKind::Critic;
  throw ValidationError("unknown diversity kind: " + s + " (expected tw or critic)");
}

std::string to_string(EntrySource s) {
  switch (s) {
    case EntrySource::Bucket: return "bucket";
    case EntrySource::Prototype: return "prototype";
    case EntrySource::Random: return "random";
  }
  return "?";
}

void SelectionConfig::validate() const {
  if (target_size < 1) throw ValidationError("selection: m must be >= 1");
  if (candidates_per_round < 1) throw ValidationError("selection: m_c must be >= 1");
  if (prototypes < 0) throw ValidationError("selection: m_p must be >= 0");
  if (overlap_gap < 0) throw ValidationError("selection: overlap_gap must be >= 0");
}

namespace {

bool entry_overlaps(const SummaryEntry& e, const std::string& series_id, int start,
                    int end, int gap) {
  return e.window.series_id == series_id &&
         spans_overlap(e.window.start, e.window.end, start, end, gap);
}

bool overlaps_selected(std::span<const SummaryEntry> selected, const Dataset& d,
                       const Anchor& a, const WindowSpec& w, int gap) {
  const std::string& sid = d.series[a.series].id;
  int start = a.t - w.before;
  int end = a.t + (w.length - w.before);
  for (const auto& e : selected)
    if (entry_overlaps(e, sid, start, end, gap)) return true;
  return false;
}

}  // namespace

std::vector<int> select_candidates(std::deque<int>& queue, int m_c,
                                   std::span<const SummaryEntry> selected,
                                   std::span<const Anchor> anchors,
                                   const Dataset& d, const WindowSpec& w,
                                   int overlap_gap) {
  std::vector<int> out;
  while (!queue.empty() && static_cast<int>(out.size()) < m_c) {
    int idx = queue.front();
    queue.pop_front();
    if (overlaps_selected(selected, d, anchors[idx], w, overlap_gap))
      continue;  // discarded permanently
    out.push_back(idx);
  }
  return out;
}

namespace {

struct SelectionState {
  const Dataset& d;
  const WindowSpec& w;
  std::span<const Anchor> anchors;
  const SelectionConfig& cfg;

  // per-candidate DTW distances to the selected set, keyed by anchor index;
  // columns are appended as V grows
  std::unordered_map<int, std::vector<double>> dist_cache;

  std::vector<double> prepared(const Window& win) const {
    std::vector<double> v = win.values;
    if (cfg.znorm_dtw) znormalize(v);
    return v;
  }

  // distances from candidate windows to every selected window, cached
  std::vector<std::vector<double>> distances(std::span<const int> cand_idx,
                                             std::span<const Window> cand_win,
                                             std::span<const SummaryEntry> selected) {
    std::vector<std::vector<double>> dist(cand_idx.size());
    for (std::size_t c = 0; c < cand_idx.size(); ++c) {
      auto& cached = dist_cache[cand_idx[c]];
      if (cached.size() < selected.size()) {
        auto cv = prepared(cand_win[c]);
        std::vector<std::vector<double>> missing;
        for (std::size_t v = cached.size(); v < selected.size(); ++v)
          missing.push_back(prepared(selected[v].window));
        std::vector<double> extra(missing.size());
        dtw_batch(missing, cv, extra);
        cached.insert(cached.end(), extra.begin(), extra.end());
      }
      dist[c] = cached;
    }
    return dist;
  }
};

}  // namespace

Summary insights_select(const Dataset& d, const WindowSpec& w,
                        std::span<const UtilityConfig> fns,
                        const SelectionConfig& cfg) {
  w.validate();
  cfg.validate();
  auto anchors = enumerate_windows(d, w);
  if (anchors.empty()) throw InfeasibleError("no valid window anchors for this spec");

  auto buckets = build_buckets(d, w, fns, anchors);
  auto order = bucket_order(buckets);
  const int nb = static_cast<int>(buckets.size());

  std::vector<std::deque<int>> queues(nb);
  for (int b = 0; b < nb; ++b)
    queues[b].assign(buckets[b].queue.begin(), buckets[b].queue.end());

  Summary summary;
  std::vector<int> selected_anchor_idx;
  SelectionState state{d, w, anchors, cfg, {}};

  int cursor = 0;
  int empty_rounds = 0;
  while (static_cast<int>(summary.entries.size()) < cfg.target_size) {
    int b = order[cursor % nb];
    ++cursor;
    auto& q = queues[b];

    if (summary.entries.empty()) {
      if (q.empty()) {
        if (++empty_rounds >= nb)
          throw InfeasibleSelection("no scored anchors available", std::move(summary));
        continue;
      }
      int idx = q.front();
      q.pop_front();
      SummaryEntry e;
      e.window = make_window(d, anchors[idx], w);
      e.source = EntrySource::Bucket;
      e.bucket_id = buckets[b].function_id;
      e.utility_score = buckets[b].scores[idx];
      summary.entries.push_back(std::move(e));
      selected_anchor_idx.push_back(idx);
      empty_rounds = 0;
      continue;
    }

    auto cand = select_candidates(q, cfg.candidates_per_round, summary.entries,
                                  anchors, d, w, cfg.overlap_gap);
    if (cand.empty()) {
      if (++empty_rounds >= nb)
        throw InfeasibleSelection(
            "queues exhausted at " + std::to_string(summary.entries.size()) +
                " of " + std::to_string(cfg.target_size) + " requested windows",
            std::move(summary));
      continue;
    }
    empty_rounds = 0;

    std::vector<Window> cand_win;
    cand_win.reserve(cand.size());
    for (int idx : cand) cand_win.push_back(make_window(d, anchors[idx], w));

    std::size_t pick = 0;
    double div_score = 0.0;
    if (cfg.diversity == DiversityKind::TimeWarp) {
      auto dist = state.distances(cand, cand_win, summary.entries);
      pick = tw_diversity_pick(cand_win, dist, &div_score);
    } else {
      std::vector<double> sel_scores;
      if (cfg.critic_all_buckets) {
        for (const auto& bk : buckets)
          for (int idx : selected_anchor_idx) sel_scores.push_back(bk.scores[idx]);
      } else {
        for (int idx : selected_anchor_idx) sel_scores.push_back(buckets[b].scores[idx]);
      }
      std::vector<double> cand_scores;
      for (int idx : cand) cand_scores.push_back(buckets[b].scores[idx]);
      pick = critic_diversity_pick(cand_win, cand_scores, sel_scores, &div_score);
    }

    // unchosen candidates go back to the head, best score first
    for (std::size_t c = cand.size(); c-- > 0;) {
      if (c == pick) continue;
      q.push_front(cand[c]);
    }

    SummaryEntry e;
    e.window = std::move(cand_win[pick]);
    e.source = EntrySource::Bucket;
    e.bucket_id = buckets[b].function_id;
    e.utility_score = buckets[b].scores[cand[pick]];
    e.diversity_score = div_score;
    summary.entries.push_back(std::move(e));
    selected_anchor_idx.push_back(cand[pick]);
  }

  append_prototypes(summary, buckets, cfg.prototypes, cfg.candidates_per_round, d,
                    w, anchors, cfg.overlap_gap);
  return summary;
}

void append_prototypes(Summary& summary, std::span<const UtilityBucket> buckets,
                       int m_p, int /*m_c*/, const Dataset& d, const WindowSpec& w,
                       std::span<const Anchor> anchors, int overlap_gap) {
  if (m_p <= 0) return;
  auto order = bucket_order(buckets);
  const UtilityBucket& bucket = buckets[order[0]];

  std::vector<double> sorted_scores = bucket.scores;
  std::sort(sorted_scores.begin(), sorted_scores.end());
  const std::size_t n = sorted_scores.size();
  double median = n % 2 == 1 ? sorted_scores[n / 2]
                             : 0.5 * (sorted_scores[n / 2 - 1] + sorted_scores[n / 2]);

  std::vector<int> by_median(bucket.scores.size());
  for (std::size_t i = 0; i < by_median.size(); ++i) by_median[i] = static_cast<int>(i);
  std::sort(by_median.begin(), by_median.end(), [&](int a, int b) {
    double da = std::abs(bucket.scores[a] - median);
    double db = std::abs(bucket.scores[b] - median);
    if (da != db) return da < db;
    if (bucket.scores[a] != bucket.scores[b]) return bucket.scores[a] < bucket.scores[b];
    return a < b;
  });

  int appended = 0;
  for (int idx : by_median) {
    if (appended == m_p) break;
    if (overlaps_selected(summary.entries, d, anchors[idx], w, overlap_gap)) continue;
    SummaryEntry e;
    e.window = make_window(d, anchors[idx], w);
    e.source = EntrySource::Prototype;
    e.bucket_id = bucket.function_id;
    e.utility_score = bucket.scores[idx];
    summary.entries.push_back(std::move(e));
    ++appended;
  }
  summary.prototype_shortfall = m_p - appended;
}

Summary random_select(const Dataset& d, const WindowSpec& w,
                      const SelectionConfig& cfg) {
  w.validate();
  cfg.validate();
  auto anchors = enumerate_windows(d, w);
  if (anchors.empty()) throw InfeasibleError("no valid window anchors for this spec");

  std::mt19937_64 rng(cfg.seed);
  std::vector<int> remaining(anchors.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = static_cast<int>(i);

  Summary summary;
  while (static_cast<int>(summary.entries.size()) < cfg.target_size) {
    if (remaining.empty())
      throw InfeasibleSelection(
          "anchors exhausted at " + std::to_string(summary.entries.size()) + " of " +
              std::to_string(cfg.target_size) + " requested windows",
          std::move(summary));
    std::uniform_int_distribution<std::size_t> pick(0, remaining.size() - 1);
    std::size_t j = pick(rng);
    int idx = remaining[j];
    remaining[j] = remaining.back();
    remaining.pop_back();
    if (overlaps_selected(summary.entries, d, anchors[idx], w, cfg.overlap_gap)) continue;
    SummaryEntry e;
    e.window = make_window(d, anchors[idx], w);
    e.source = EntrySource::Random;
    summary.entries.push_back(std::move(e));
  }
  return summary;
}

}  // namespace tss
