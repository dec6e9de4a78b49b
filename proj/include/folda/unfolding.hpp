#ifndef FOLDA_UNFOLDING_HPP
#define FOLDA_UNFOLDING_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "folda/alignment.hpp"
#include "folda/heuristic.hpp"
#include "folda/petri_net.hpp"
#include "folda/rational.hpp"
#include "folda/sync_product.hpp"

namespace folda {

// Condition of the branching process: a place occurrence with at most one
// input event (kNone for the initial conditions) and the set of conditions
// concurrent with it, maintained incrementally.
struct Condition {
  std::uint32_t id = 0;
  std::uint32_t place = 0;
  std::uint32_t input_event = kNone;
  std::vector<std::uint32_t> co;  // ascending condition ids
};

// Appended event. id is the queue-insertion counter (the tie-breaker of the
// adequate order), so ids are monotone along any causal chain but not
// contiguous across the event store.
struct UnfEvent {
  std::uint32_t id = 0;
  std::uint32_t transition = 0;
  std::vector<std::uint32_t> preset;        // condition ids, ascending
  std::vector<std::uint32_t> postset;       // condition ids, ascending
  std::vector<std::uint32_t> local_config;  // event ids incl. self, ascending
  CostUnits local_cost = 0;                 // Z([e])
  Marking marking;                          // Mark([e])
  std::optional<Rat> heuristic;             // h(Mark([e])) when the variant uses it
  Rat key;                                  // cost (+ h) as popped
  bool cutoff = false;
};

struct BranchingProcess {
  std::vector<Condition> conditions;  // index == condition id
  std::vector<UnfEvent> events;       // append order
  std::unordered_map<Marking, std::vector<std::uint32_t>, MarkingHash> by_marking;
  std::vector<std::uint32_t> cutoffs;          // event ids
  std::vector<std::uint32_t> event_index_by_id;  // id -> index in events, kNone otherwise

  const UnfEvent* event_by_id(std::uint32_t id) const {
    if (id >= event_index_by_id.size()) return nullptr;
    std::uint32_t idx = event_index_by_id[id];
    return idx == kNone ? nullptr : &events[idx];
  }
  bool concurrent(std::uint32_t cond_a, std::uint32_t cond_b) const;
};

struct UnfoldOptions {
  Variant variant = Variant::folda_n;  // folda_n or folda_h
  double timeout_s = 100.0;
  bool validate_appends = false;  // occurrence-net invariant suite per append
  bool record_pops = false;       // keep the popped-key sequence
  HeuristicCache* heuristic = nullptr;  // external cache for folda_h; optional
};

// Directed unfolding of a synchronous product. Construction performs the
// initialization step (initial conditions plus the extension queue seeded
// from them); run() executes the main loop until the dummy end event is
// appended, the queue empties, or the timeout hits.
class Unfolder {
 public:
  Unfolder(const SyncProduct& sp, UnfoldOptions options);
  ~Unfolder();

  AlignResult run();

  const BranchingProcess& process() const { return bp_; }
  std::size_t queue_size() const;
  // Product transitions currently queued as candidates (for inspection).
  std::vector<std::uint32_t> queued_transitions() const;
  const std::vector<Rat>& pop_keys() const { return pop_keys_; }
  std::uint64_t queued_count() const;

 private:
  struct Impl;
  Impl* impl_;
  BranchingProcess bp_;
  std::vector<Rat> pop_keys_;
};

// Alignment induced by the local configuration of the dummy-end event:
// dummies stripped, order = transitive closure of the causal relation on
// the remaining events, witness linearization in ascending event id.
POAlignment extract_alignment(const BranchingProcess& bp, const SyncProduct& sp,
                              std::uint32_t final_event_id);

// Convenience wrapper: unfold and return the alignment plus run metrics.
AlignResult unfold_align(const SyncProduct& sp, Variant variant, double timeout_s = 100.0,
                         HeuristicCache* cache = nullptr);
AlignResult unfold_align(const SyncProduct& sp, const UnfoldOptions& options);

}  // namespace folda

#endif
