#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tss/core.hpp"
#include "tss/utility.hpp"

namespace tss {

enum class DiversityKind { TimeWarp, Critic };

std::string to_string(DiversityKind k);
DiversityKind diversity_kind_from_string(const std::string& s);

struct SelectionConfig {
  int target_size = 6;           // m
  int candidates_per_round = 10; // m_c
  int prototypes = 0;            // m_p
  DiversityKind diversity = DiversityKind::TimeWarp;
  std::uint64_t seed = 0;        // Random baseline only
  int overlap_gap = 0;
  bool znorm_dtw = false;
  bool critic_all_buckets = false;  // mean over every bucket's scores instead
                                    // of the current bucket only

  void validate() const;
};

enum class EntrySource { Bucket, Prototype, Random };

std::string to_string(EntrySource s);

struct SummaryEntry {
  Window window;
  EntrySource source = EntrySource::Bucket;
  std::string bucket_id;  // empty for random entries
  double utility_score = 0.0;
  std::optional<double> diversity_score;
};

struct Summary {
  std::vector<SummaryEntry> entries;
  int prototype_shortfall = 0;  // prototypes requested but infeasible
};

/// Raised when queues exhaust before reaching m; carries the partial result.
struct InfeasibleSelection : InfeasibleError {
  InfeasibleSelection(std::string msg, Summary got)
      : InfeasibleError(std::move(msg)), partial(std::move(got)) {}
  Summary partial;
};

/// Pops from the head of `queue` until m_c candidates that do not overlap any
/// selected window are collected or the queue is exhausted. Overlapping pops
/// are discarded for good: V only grows, so they can never become valid.
std::vector<int> select_candidates(std::deque<int>& queue, int m_c,
                                   std::span<const SummaryEntry> selected,
                                   std::span<const Anchor> anchors,
                                   const Dataset& d, const WindowSpec& w,
                                   int overlap_gap);

/// The greedy selection loop: round-robin bucket traversal in descending-rl
/// order, candidate draw under the overlap constraint, diversity-maximizing
/// pick, add-back of unchosen candidates, then prototype appending. Fully
/// deterministic. Result has m + m_p entries.
Summary insights_select(const Dataset& d, const WindowSpec& w,
                        std::span<const UtilityConfig> fns,
                        const SelectionConfig& cfg);

/// Appends up to m_p non-overlapping windows whose scores in the highest-rl
/// bucket are nearest that bucket's median score.
void append_prototypes(Summary& summary, std::span<const UtilityBucket> buckets,
                       int m_p, int m_c, const Dataset& d, const WindowSpec& w,
                       std::span<const Anchor> anchors, int overlap_gap);

/// Uniform non-overlapping draw of m windows; reproducible per seed.
Summary random_select(const Dataset& d, const WindowSpec& w,
                      const SelectionConfig& cfg);

}  // namespace tss
