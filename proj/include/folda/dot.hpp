#ifndef FOLDA_DOT_HPP
#define FOLDA_DOT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "folda/alignment.hpp"
#include "folda/sync_product.hpp"
#include "folda/unfolding.hpp"

namespace folda {

// Branching process as a graph: conditions are circles, events are boxes
// labeled with their move, cut-off events dashed, move classes color-coded
// (sync green, log yellow, model blue, dummies gray). Events of
// `highlight_config` (event ids) are drawn bold. Node order follows the ids,
// so output is byte-stable for a given process.
void write_dot(const BranchingProcess& bp, const SyncProduct& sp, std::ostream& os,
               const std::vector<std::uint32_t>* highlight_config = nullptr);

// Alignment as an occurrence-net-shaped graph over its moves; edges are the
// covering pairs of the partial order.
void write_dot(const POAlignment& alignment, std::ostream& os);

std::string dot_string(const BranchingProcess& bp, const SyncProduct& sp,
                       const std::vector<std::uint32_t>* highlight_config = nullptr);
std::string dot_string(const POAlignment& alignment);

}  // namespace folda

#endif
