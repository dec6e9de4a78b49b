#include "folda/sync_product.hpp"

#include <stdexcept>

namespace folda {

CostUnits standard_cost(const MoveInfo& move) {
  switch (move.type) {
    case MoveType::sync_move:
      return 0;
    case MoveType::log_move:
      return kCostScale;
    case MoveType::model_move:
      return move.silent ? 1 : kCostScale;
    case MoveType::dummy_start:
    case MoveType::dummy_end:
      return 0;
  }
  return 0;
}

std::string SyncProduct::move_label(std::uint32_t t) const {
  const MoveInfo& m = move.at(t);
  auto trace_side = [&]() {
    return "e" + std::to_string(m.log_event);
  };
  switch (m.type) {
    case MoveType::dummy_start:
      return "start";
    case MoveType::dummy_end:
      return "end";
    case MoveType::log_move:
      return "(>>, " + trace_side() + ")";
    case MoveType::model_move: {
      const auto& tr = net.transitions[t];
      return "(" + (m.silent ? "tau" : tr.label) + ", >>)";
    }
    case MoveType::sync_move: {
      const auto& tr = net.transitions[t];
      return "(" + tr.label + ", " + trace_side() + ")";
    }
  }
  return "?";
}

SyncProduct synchronous_product(const PetriNet& model, const PetriNet& event_net,
                                const CostFn& cost_fn) {
  model.validate();
  event_net.validate();

  SyncProduct sp;
  PetriNet& net = sp.net;

  // Model places first, then event-net places; ids are disjoint by offset,
  // names disambiguated by an m:/l: prefix.
  auto prefixed = [](const std::string& pfx, const std::string& name) {
    return name.rfind(pfx, 0) == 0 ? name : pfx + name;
  };
  for (const auto& name : model.place_names) net.add_place(prefixed("m:", name));
  const std::uint32_t log_off = static_cast<std::uint32_t>(model.num_places());
  for (const auto& name : event_net.place_names) net.add_place(prefixed("l:", name));

  auto add_move = [&](std::string name, std::string label, MoveInfo info) {
    std::uint32_t t = net.add_transition(std::move(name), std::move(label));
    sp.move.push_back(info);
    sp.cost.push_back(cost_fn(info));
    return t;
  };

  // Model moves.
  for (std::uint32_t mt = 0; mt < model.num_transitions(); ++mt) {
    const Transition& tr = model.transitions[mt];
    std::uint32_t t = add_move(prefixed("m:", tr.name), tr.label,
                               MoveInfo{MoveType::model_move, kNone, mt, tr.silent()});
    for (std::uint32_t p : tr.pre) net.add_arc_pt(p, t);
    for (std::uint32_t p : tr.post) net.add_arc_tp(t, p);
  }
  // Log moves; event-net transition index == trace event index.
  for (std::uint32_t le = 0; le < event_net.num_transitions(); ++le) {
    const Transition& tr = event_net.transitions[le];
    std::uint32_t t = add_move(prefixed("l:", tr.name), tr.label,
                               MoveInfo{MoveType::log_move, le, kNone, false});
    for (std::uint32_t p : tr.pre) net.add_arc_pt(p + log_off, t);
    for (std::uint32_t p : tr.post) net.add_arc_tp(t, p + log_off);
  }
  // Synchronous moves for every label-equal (event, model transition) pair.
  for (std::uint32_t le = 0; le < event_net.num_transitions(); ++le) {
    const Transition& ltr = event_net.transitions[le];
    if (ltr.silent()) continue;
    for (std::uint32_t mt = 0; mt < model.num_transitions(); ++mt) {
      const Transition& mtr = model.transitions[mt];
      if (mtr.silent() || mtr.label != ltr.label) continue;
      std::uint32_t t = add_move("s:e" + std::to_string(le) + ":m" + std::to_string(mt),
                                 mtr.label, MoveInfo{MoveType::sync_move, le, mt, false});
      for (std::uint32_t p : ltr.pre) net.add_arc_pt(p + log_off, t);
      for (std::uint32_t p : ltr.post) net.add_arc_tp(t, p + log_off);
      for (std::uint32_t p : mtr.pre) net.add_arc_pt(p, t);
      for (std::uint32_t p : mtr.post) net.add_arc_tp(t, p);
    }
  }

  std::vector<Marking::Entry> init_entries, final_entries;
  for (const auto& [p, c] : model.initial.entries()) init_entries.emplace_back(p, c);
  for (const auto& [p, c] : event_net.initial.entries()) init_entries.emplace_back(p + log_off, c);
  for (const auto& [p, c] : model.final_marking.entries()) final_entries.emplace_back(p, c);
  for (const auto& [p, c] : event_net.final_marking.entries())
    final_entries.emplace_back(p + log_off, c);
  sp.combined_initial = Marking(std::move(init_entries));
  sp.combined_final = Marking(std::move(final_entries));

  sp.source_place = net.add_place("src");
  sp.sink_place = net.add_place("snk");
  sp.dummy_start =
      add_move("dummy_start", "", MoveInfo{MoveType::dummy_start, kNone, kNone, false});
  net.add_arc_pt(sp.source_place, sp.dummy_start);
  for (const auto& [p, c] : sp.combined_initial.entries()) {
    for (std::uint32_t k = 0; k < c; ++k) net.add_arc_tp(sp.dummy_start, p);
  }
  sp.dummy_end = add_move("dummy_end", "", MoveInfo{MoveType::dummy_end, kNone, kNone, false});
  for (const auto& [p, c] : sp.combined_final.entries()) {
    for (std::uint32_t k = 0; k < c; ++k) net.add_arc_pt(p, sp.dummy_end);
  }
  net.add_arc_tp(sp.dummy_end, sp.sink_place);

  net.initial = Marking::single(sp.source_place);
  net.final_marking = Marking::single(sp.sink_place);
  sp.trace_length = 0;
  for (const auto& mi : sp.move) {
    if (mi.type == MoveType::log_move) ++sp.trace_length;
  }
  return sp;
}

SyncProduct synchronous_product(const PetriNet& model, const Trace& trace,
                                const CostFn& cost_fn) {
  SyncProduct sp = synchronous_product(model, build_event_net(trace), cost_fn);
  sp.trace_length = static_cast<std::uint32_t>(trace.size());
  return sp;
}

}  // namespace folda
