#ifndef FOLDA_HEURISTIC_HPP
#define FOLDA_HEURISTIC_HPP

#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "folda/rational.hpp"
#include "folda/sync_product.hpp"

namespace folda {

// Incidence matrix of a synchronous product over its non-dummy transitions:
// entry(p, t) = produced minus consumed tokens of place p when t fires.
struct IncidenceMatrix {
  std::size_t num_places = 0;
  std::vector<std::uint32_t> columns;  // product transition per column
  std::vector<std::int64_t> data;      // row-major num_places x columns

  std::int64_t entry(std::size_t place, std::size_t col) const {
    return data[place * columns.size() + col];
  }
  static IncidenceMatrix of(const SyncProduct& sp);
};

struct LpSolution {
  enum class Status : std::uint8_t { optimal, infeasible } status = Status::infeasible;
  Rat objective;  // true cost (units already divided out)
  std::vector<std::pair<std::uint32_t, Rat>> firing;  // product transition -> rate
};

// Minimum-cost solution of the marking equation m + C x = f of the product
// (dummy transitions excluded, source/sink handled by substitution), solved
// as an exact rational LP relaxation. A lower bound on any remaining
// alignment cost from m; infeasible means the final marking is unreachable
// even in the relaxation.
LpSolution marking_equation_lower_bound(const SyncProduct& sp, const Marking& m);

// Marking-keyed memo for the lower bound; nullopt = infeasible. Safe for
// concurrent readers with occasional inserts (get-or-compute is
// linearizable; duplicate computation is accepted).
class HeuristicCache {
 public:
  std::optional<Rat> get_or_compute(const SyncProduct& sp, const Marking& m);

  std::uint64_t lp_solves() const { return solves_; }
  std::uint64_t hits() const { return hits_; }

 private:
  mutable std::mutex mu_;
  std::unordered_map<Marking, std::optional<Rat>, MarkingHash> values_;
  std::uint64_t solves_ = 0;
  std::uint64_t hits_ = 0;
};

}  // namespace folda

#endif
