#ifndef FOLDA_TRACE_HPP
#define FOLDA_TRACE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "folda/petri_net.hpp"

namespace folda {

// A trace is either a sequence of activities or, when partial=true, a set of
// events with a strict partial order over them (order edges are event-index
// pairs; the transitive closure is taken internally).
struct Trace {
  std::vector<std::string> activities;                        // per event index
  std::vector<std::pair<std::uint32_t, std::uint32_t>> order;  // (before, after)
  bool partial = false;

  static Trace sequential(std::vector<std::string> acts) {
    return Trace{std::move(acts), {}, false};
  }
  std::size_t size() const { return activities.size(); }
};

struct CyclicOrderError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Builds the event net of a trace:
//  - sequential: a chain of |trace| transitions through |trace|+1 places,
//    one token in the first place, final marking one token in the last;
//  - partial order: one transition per event, one place per edge of the
//    transitive reduction, a fresh initially-marked place feeding each
//    source event and a fresh final place fed by each sink event.
// Transition i of the returned net is event i of the trace.
// Throws CyclicOrderError if the declared order has a cycle.
PetriNet build_event_net(const Trace& trace);

// Transitive reduction of the trace order (sequential traces yield the
// chain edges). Exposed for event-net tests and trace serialization.
std::vector<std::pair<std::uint32_t, std::uint32_t>> order_reduction(const Trace& trace);

// Transitive closure of the trace order as an adjacency matrix
// (closure[a][b] = a before b). Throws CyclicOrderError on cycles.
std::vector<std::vector<bool>> order_closure(const Trace& trace);

}  // namespace folda

#endif
