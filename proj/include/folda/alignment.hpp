#ifndef FOLDA_ALIGNMENT_HPP
#define FOLDA_ALIGNMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "folda/rational.hpp"
#include "folda/sync_product.hpp"
#include "folda/trace.hpp"

namespace folda {

enum class Variant : std::uint8_t { folda_n, folda_h, dijkstra, astar };

const char* variant_name(Variant v);
bool parse_variant(const std::string& s, Variant& out);

// One non-dummy move of an alignment, self-contained for printing.
struct AlignedMove {
  std::uint32_t id = 0;  // event id (unfolding) or step index (sequential)
  MoveType type = MoveType::sync_move;
  std::uint32_t product_trans = kNone;
  std::uint32_t log_event = kNone;
  std::uint32_t model_trans = kNone;
  bool silent = false;
  std::string label;  // display label, e.g. "(A, e1)"

  bool is_dummy() const {
    return type == MoveType::dummy_start || type == MoveType::dummy_end;
  }
};

// A partial-order alignment: moves plus a strict partial order over their
// ids. `order` holds the transitive closure; `covering()` derives the
// minimal (reduced) relation. `linearization` is one witness total order
// (move ids) whose replay on the synchronous product reaches the final
// marking. Sequential aligners return a totally ordered instance.
struct POAlignment {
  std::vector<AlignedMove> moves;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> order;  // closure, (before, after)
  CostUnits cost = 0;
  std::vector<std::uint32_t> linearization;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> covering() const;
  bool ordered_before(std::uint32_t a, std::uint32_t b) const;
  bool concurrent(std::uint32_t a, std::uint32_t b) const;
  std::size_t count_type(MoveType t) const;
  std::size_t count_silent() const;
};

struct RunMetrics {
  double elapsed_s = 0.0;
  std::uint64_t queued_states = 0;
  std::uint64_t visited_states = 0;
  CostUnits cost = 0;
  std::uint32_t trace_length = 0;
  std::uint32_t spt = 0;
  bool timed_out = false;
  bool aligned = false;
  Variant variant = Variant::folda_n;
};

enum class AlignOutcome : std::uint8_t { aligned, timed_out, no_alignment };

struct AlignResult {
  AlignOutcome outcome = AlignOutcome::no_alignment;
  POAlignment alignment;  // valid when outcome == aligned
  RunMetrics metrics;
  std::string message;  // failure detail
};

// Checks Definition-level validity of an alignment against the product and
// the original trace: the witness linearization (wrapped in the dummies)
// replays from the product's initial to its final marking, the log
// projection enumerates every trace event in an order consistent with the
// trace, and the model projection replays the model from its initial to its
// final marking. Returns an empty string when valid, else a diagnostic.
std::string check_alignment(const SyncProduct& sp, const PetriNet& model, const Trace& trace,
                            const POAlignment& alignment);

}  // namespace folda

#endif
