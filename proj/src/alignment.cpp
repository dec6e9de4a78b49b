#include "folda/alignment.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace folda {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::folda_n: return "foldn";
    case Variant::folda_h: return "foldh";
    case Variant::dijkstra: return "dijkstra";
    case Variant::astar: return "astar";
  }
  return "?";
}

bool parse_variant(const std::string& s, Variant& out) {
  if (s == "foldn") out = Variant::folda_n;
  else if (s == "foldh") out = Variant::folda_h;
  else if (s == "dijkstra") out = Variant::dijkstra;
  else if (s == "astar") out = Variant::astar;
  else return false;
  return true;
}

bool POAlignment::ordered_before(std::uint32_t a, std::uint32_t b) const {
  return std::binary_search(order.begin(), order.end(), std::make_pair(a, b));
}

bool POAlignment::concurrent(std::uint32_t a, std::uint32_t b) const {
  return a != b && !ordered_before(a, b) && !ordered_before(b, a);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> POAlignment::covering() const {
  // (a,b) is covering iff no c with a<c and c<b.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (auto [a, b] : order) {
    bool covered = false;
    for (const auto& m : moves) {
      std::uint32_t c = m.id;
      if (c != a && c != b && ordered_before(a, c) && ordered_before(c, b)) {
        covered = true;
        break;
      }
    }
    if (!covered) out.emplace_back(a, b);
  }
  return out;
}

std::size_t POAlignment::count_type(MoveType t) const {
  std::size_t n = 0;
  for (const auto& m : moves)
    if (m.type == t) ++n;
  return n;
}

std::size_t POAlignment::count_silent() const {
  std::size_t n = 0;
  for (const auto& m : moves)
    if (m.type == MoveType::model_move && m.silent) ++n;
  return n;
}

std::string check_alignment(const SyncProduct& sp, const PetriNet& model, const Trace& trace,
                            const POAlignment& alignment) {
  std::map<std::uint32_t, const AlignedMove*> by_id;
  for (const auto& m : alignment.moves) {
    if (m.is_dummy()) return "alignment contains a dummy move";
    by_id[m.id] = &m;
  }
  if (alignment.linearization.size() != alignment.moves.size())
    return "linearization does not enumerate the move set";

  // Witness replay on the product, wrapped in the dummies.
  std::vector<std::uint32_t> product_seq;
  product_seq.push_back(sp.dummy_start);
  std::vector<std::uint32_t> model_seq;
  std::vector<std::uint32_t> log_events;
  CostUnits cost = 0;
  for (std::uint32_t id : alignment.linearization) {
    auto it = by_id.find(id);
    if (it == by_id.end()) return "linearization references unknown move id";
    const AlignedMove& m = *it->second;
    product_seq.push_back(m.product_trans);
    cost += sp.cost.at(m.product_trans);
    if (m.type == MoveType::model_move || m.type == MoveType::sync_move)
      model_seq.push_back(m.model_trans);
    if (m.type == MoveType::log_move || m.type == MoveType::sync_move)
      log_events.push_back(m.log_event);
  }
  product_seq.push_back(sp.dummy_end);
  try {
    Marking end = replay(sp.net, product_seq);
    if (end != sp.net.final_marking) return "witness replay does not reach the final marking";
  } catch (const NotEnabledError& e) {
    return std::string("witness replay fails: ") + e.what();
  }
  if (cost != alignment.cost) return "stated cost disagrees with the move costs";

  // Log projection covers every trace event exactly once, in an order
  // consistent with the trace.
  if (log_events.size() != trace.size()) return "log projection does not cover the trace";
  std::set<std::uint32_t> seen;
  std::vector<std::uint32_t> pos(trace.size());
  for (std::uint32_t i = 0; i < log_events.size(); ++i) {
    std::uint32_t e = log_events[i];
    if (e >= trace.size() || !seen.insert(e).second) return "log projection repeats an event";
    pos[e] = i;
  }
  auto closure = order_closure(trace);
  for (std::uint32_t a = 0; a < trace.size(); ++a) {
    for (std::uint32_t b = 0; b < trace.size(); ++b) {
      if (closure[a][b] && pos[a] >= pos[b]) {
        std::ostringstream os;
        os << "log projection violates trace order: e" << a << " must precede e" << b;
        return os.str();
      }
    }
  }

  // Model projection is an occurrence sequence of the model from i to f.
  try {
    Marking end = replay(model, model_seq);
    if (end != model.final_marking) return "model projection does not reach the model's final marking";
  } catch (const NotEnabledError& e) {
    return std::string("model projection fails: ") + e.what();
  }
  return "";
}

}  // namespace folda
