#ifndef FOLDA_SEARCH_HPP
#define FOLDA_SEARCH_HPP

#include <cstdint>
#include <optional>

#include "folda/alignment.hpp"
#include "folda/heuristic.hpp"
#include "folda/sync_product.hpp"

namespace folda {

// Uniform-cost search over the reachability graph of the product; markings
// close at first pop. queued = pushes, visited = distinct pops.
AlignResult dijkstra_align(const SyncProduct& sp, double timeout_s = 100.0);

// A* with the marking-equation lower bound; nodes whose bound is infeasible
// are pruned. Same counters and closing rule as dijkstra_align.
AlignResult astar_align(const SyncProduct& sp, double timeout_s = 100.0,
                        HeuristicCache* cache = nullptr);

struct BruteForceResult {
  enum class Status : std::uint8_t { optimal, no_path, bound_exceeded };
  Status status = Status::no_path;
  CostUnits cost = 0;
};

// Exhaustive least-cost enumeration with visited-marking dominance, used as
// the cost oracle on small products. bound caps the number of distinct
// markings expanded.
BruteForceResult brute_force_optimal_cost(const SyncProduct& sp, std::size_t bound = 100000);

// Same enumeration from an arbitrary start marking to the product's final
// marking (supports heuristic admissibility checks).
BruteForceResult brute_force_remaining_cost(const SyncProduct& sp, const Marking& start,
                                            std::size_t bound = 100000);

}  // namespace folda

#endif
