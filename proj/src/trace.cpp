#include "folda/trace.hpp"

#include <algorithm>

namespace folda {

std::vector<std::vector<bool>> order_closure(const Trace& trace) {
  const std::size_t n = trace.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (auto [a, b] : trace.order) {
    if (a >= n || b >= n) throw std::invalid_argument("trace order edge references unknown event");
    if (a == b) throw CyclicOrderError("trace order is not irreflexive");
    reach[a][b] = true;
  }
  if (!trace.partial) {
    for (std::size_t i = 0; i + 1 < n; ++i) reach[i][i + 1] = true;
  }
  // Floyd-Warshall style closure; trace sizes stay small.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (reach[i][i]) throw CyclicOrderError("trace order contains a cycle");
  }
  return reach;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> order_reduction(const Trace& trace) {
  const std::size_t n = trace.size();
  auto reach = order_closure(trace);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      if (!reach[a][b]) continue;
      bool covered = false;
      for (std::uint32_t k = 0; k < n && !covered; ++k) {
        if (reach[a][k] && reach[k][b]) covered = true;
      }
      if (!covered) edges.emplace_back(a, b);
    }
  }
  return edges;
}

PetriNet build_event_net(const Trace& trace) {
  PetriNet net;
  const std::size_t n = trace.size();
  for (const auto& a : trace.activities) {
    if (a.empty()) throw std::invalid_argument("trace contains an empty activity name");
  }

  if (n == 0) {
    std::uint32_t p = net.add_place("l:p0");
    net.initial = Marking::single(p);
    net.final_marking = Marking::single(p);
    return net;
  }

  if (!trace.partial) {
    std::uint32_t prev = net.add_place("l:p0");
    net.initial = Marking::single(prev);
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint32_t t = net.add_transition("l:e" + std::to_string(i), trace.activities[i]);
      std::uint32_t next = net.add_place("l:p" + std::to_string(i + 1));
      net.add_arc_pt(prev, t);
      net.add_arc_tp(t, next);
      prev = next;
    }
    net.final_marking = Marking::single(prev);
    return net;
  }

  auto edges = order_reduction(trace);
  std::vector<bool> has_pred(n, false), has_succ(n, false);
  for (auto [a, b] : edges) {
    has_pred[b] = true;
    has_succ[a] = true;
  }

  for (std::uint32_t i = 0; i < n; ++i) {
    net.add_transition("l:e" + std::to_string(i), trace.activities[i]);
  }
  std::vector<Marking::Entry> init_entries, final_entries;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!has_pred[i]) {
      std::uint32_t p = net.add_place("l:src" + std::to_string(i));
      net.add_arc_pt(p, i);
      init_entries.emplace_back(p, 1);
    }
  }
  for (auto [a, b] : edges) {
    std::uint32_t p = net.add_place("l:e" + std::to_string(a) + "_e" + std::to_string(b));
    net.add_arc_tp(a, p);
    net.add_arc_pt(p, b);
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!has_succ[i]) {
      std::uint32_t p = net.add_place("l:snk" + std::to_string(i));
      net.add_arc_tp(i, p);
      final_entries.emplace_back(p, 1);
    }
  }
  net.initial = Marking(std::move(init_entries));
  net.final_marking = Marking(std::move(final_entries));
  return net;
}

}  // namespace folda
