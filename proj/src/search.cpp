#include "folda/search.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace folda {

namespace {

struct Node {
  Marking marking;
  CostUnits g = 0;
  std::uint32_t parent = kNone;  // node index
  std::uint32_t via = kNone;     // product transition
};

struct QueueEntry {
  Rat f;  // g (dijkstra) or g + h (astar)
  CostUnits g = 0;
  std::uint64_t seq = 0;  // insertion tie-break
  std::uint32_t node = 0;
};

struct EntryAfter {
  bool use_f;
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (use_f) {
      if (a.f != b.f) return a.f > b.f;
    } else {
      if (a.g != b.g) return a.g > b.g;
    }
    return a.seq > b.seq;
  }
};

POAlignment path_alignment(const SyncProduct& sp, const std::vector<Node>& nodes,
                           std::uint32_t goal) {
  std::vector<std::uint32_t> seq;
  for (std::uint32_t n = goal; nodes[n].via != kNone; n = nodes[n].parent) {
    seq.push_back(nodes[n].via);
  }
  std::reverse(seq.begin(), seq.end());

  POAlignment out;
  std::uint32_t id = 0;
  for (std::uint32_t t : seq) {
    const MoveInfo& mi = sp.move[t];
    if (mi.is_dummy()) continue;
    AlignedMove m;
    m.id = id++;
    m.type = mi.type;
    m.product_trans = t;
    m.log_event = mi.log_event;
    m.model_trans = mi.model_trans;
    m.silent = mi.silent;
    m.label = sp.move_label(t);
    out.cost += sp.cost[t];
    out.moves.push_back(std::move(m));
  }
  out.linearization.resize(out.moves.size());
  for (std::uint32_t i = 0; i < out.linearization.size(); ++i) out.linearization[i] = i;
  for (std::uint32_t a = 0; a < out.moves.size(); ++a) {
    for (std::uint32_t b = a + 1; b < out.moves.size(); ++b) out.order.emplace_back(a, b);
  }
  return out;
}

AlignResult best_first(const SyncProduct& sp, double timeout_s, bool use_h,
                       HeuristicCache* cache) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

  AlignResult res;
  RunMetrics& met = res.metrics;
  met.variant = use_h ? Variant::astar : Variant::dijkstra;
  met.trace_length = sp.trace_length;
  met.spt = sp.spt();

  HeuristicCache local_cache;
  if (use_h && cache == nullptr) cache = &local_cache;

  std::vector<Node> nodes;
  std::vector<QueueEntry> heap;
  const EntryAfter after{use_h};
  std::unordered_set<Marking, MarkingHash> closed;
  std::uint64_t seq = 0;

  auto push = [&](Marking m, CostUnits g, std::uint32_t parent, std::uint32_t via) {
    QueueEntry qe;
    qe.g = g;
    if (use_h) {
      auto h = cache->get_or_compute(sp, m);
      if (!h) return;  // final marking unreachable from m
      qe.f = units_to_rat(g) + *h;
    }
    qe.seq = seq++;
    qe.node = static_cast<std::uint32_t>(nodes.size());
    nodes.push_back(Node{std::move(m), g, parent, via});
    heap.push_back(std::move(qe));
    std::push_heap(heap.begin(), heap.end(), after);
    ++met.queued_states;
  };

  push(sp.net.initial, 0, kNone, kNone);

  std::uint64_t iter = 0;
  while (true) {
    if ((iter++ & 255u) == 0 && elapsed() > timeout_s) {
      res.outcome = AlignOutcome::timed_out;
      res.message = "timeout";
      met.timed_out = true;
      break;
    }
    if (heap.empty()) {
      res.outcome = AlignOutcome::no_alignment;
      res.message =
          "no alignment: the final marking is unreachable in the synchronous product "
          "(model not easy sound)";
      break;
    }
    std::pop_heap(heap.begin(), heap.end(), after);
    QueueEntry qe = heap.back();
    heap.pop_back();
    Node& node = nodes[qe.node];
    if (!closed.insert(node.marking).second) continue;
    ++met.visited_states;

    if (node.marking == sp.net.final_marking) {
      res.outcome = AlignOutcome::aligned;
      res.alignment = path_alignment(sp, nodes, qe.node);
      met.cost = res.alignment.cost;
      met.aligned = true;
      break;
    }
    for (std::uint32_t t : enabled(sp.net, node.marking)) {
      Marking next = fire(sp.net, node.marking, t);
      if (closed.count(next)) continue;
      push(std::move(next), node.g + sp.cost[t], qe.node, t);
    }
  }
  met.elapsed_s = elapsed();
  return res;
}

}  // namespace

AlignResult dijkstra_align(const SyncProduct& sp, double timeout_s) {
  return best_first(sp, timeout_s, false, nullptr);
}

AlignResult astar_align(const SyncProduct& sp, double timeout_s, HeuristicCache* cache) {
  return best_first(sp, timeout_s, true, cache);
}

// Plain least-cost enumeration, kept structurally separate from the search
// above so the two can serve as oracles for each other. Frontier is an
// ordered map cost -> markings; a marking is expanded once at its first
// (minimal) cost.
BruteForceResult brute_force_remaining_cost(const SyncProduct& sp, const Marking& start,
                                            std::size_t bound) {
  std::map<CostUnits, std::vector<Marking>> frontier;
  std::unordered_map<Marking, CostUnits, MarkingHash> best;
  std::unordered_set<Marking, MarkingHash> done;
  frontier[0].push_back(start);
  best[start] = 0;
  std::size_t expanded = 0;

  while (!frontier.empty()) {
    auto it = frontier.begin();
    const CostUnits g = it->first;
    std::vector<Marking> layer = std::move(it->second);
    frontier.erase(it);
    for (const Marking& m : layer) {
      auto bi = best.find(m);
      if (bi == best.end() || bi->second != g) continue;  // dominated copy
      if (!done.insert(m).second) continue;
      if (m == sp.net.final_marking) return {BruteForceResult::Status::optimal, g};
      if (++expanded > bound) return {BruteForceResult::Status::bound_exceeded, 0};
      for (std::uint32_t t : enabled(sp.net, m)) {
        Marking next = fire(sp.net, m, t);
        const CostUnits ng = g + sp.cost[t];
        auto ni = best.find(next);
        if (ni != best.end() && ni->second <= ng) continue;
        best[next] = ng;
        frontier[ng].push_back(std::move(next));
      }
    }
  }
  return {BruteForceResult::Status::no_path, 0};
}

BruteForceResult brute_force_optimal_cost(const SyncProduct& sp, std::size_t bound) {
  return brute_force_remaining_cost(sp, sp.net.initial, bound);
}

}  // namespace folda
