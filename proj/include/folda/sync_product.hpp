#ifndef FOLDA_SYNC_PRODUCT_HPP
#define FOLDA_SYNC_PRODUCT_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <string>

#include "folda/petri_net.hpp"
#include "folda/rational.hpp"
#include "folda/trace.hpp"

namespace folda {

inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

enum class MoveType : std::uint8_t {
  log_move,
  model_move,
  sync_move,
  dummy_start,
  dummy_end,
};

// Typed move behind each product transition. log_event is the trace event
// index (log/sync), model_trans the transition id in the original model
// (model/sync); a (>>,>>) combination is not representable.
struct MoveInfo {
  MoveType type = MoveType::model_move;
  std::uint32_t log_event = kNone;
  std::uint32_t model_trans = kNone;
  bool silent = false;  // silent model move

  bool is_dummy() const {
    return type == MoveType::dummy_start || type == MoveType::dummy_end;
  }
};

// Standard cost: 0 sync, 1 log/model, 1/10000 silent model, 0 dummies.
CostUnits standard_cost(const MoveInfo& move);

using CostFn = std::function<CostUnits(const MoveInfo&)>;

// Synchronous product of a model and an event net, with a zero-cost dummy
// start transition feeding the combined initial marking from a fresh source
// place and a zero-cost dummy end transition draining the combined final
// marking into a fresh sink place. net.initial/final_marking are the source
// and sink; the pre-dummy markings are kept alongside.
struct SyncProduct {
  PetriNet net;
  std::vector<MoveInfo> move;   // per product transition
  std::vector<CostUnits> cost;  // per product transition
  std::uint32_t dummy_start = kNone;
  std::uint32_t dummy_end = kNone;
  std::uint32_t source_place = kNone;
  std::uint32_t sink_place = kNone;
  Marking combined_initial;  // i_l + i_m
  Marking combined_final;    // f_l + f_m
  std::uint32_t trace_length = 0;

  std::uint32_t spt() const {  // non-dummy transition count
    return static_cast<std::uint32_t>(net.num_transitions()) - 2;
  }
  std::string move_label(std::uint32_t t) const;
};

SyncProduct synchronous_product(const PetriNet& model, const PetriNet& event_net,
                                const CostFn& cost_fn = standard_cost);

// Convenience: builds the event net from the trace first.
SyncProduct synchronous_product(const PetriNet& model, const Trace& trace,
                                const CostFn& cost_fn = standard_cost);

}  // namespace folda

#endif
