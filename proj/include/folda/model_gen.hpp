#ifndef FOLDA_MODEL_GEN_HPP
#define FOLDA_MODEL_GEN_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "folda/petri_net.hpp"
#include "folda/trace.hpp"

namespace folda {

// Artificial model families: plain concurrency (C) and choice (E) grids,
// their nested variants (CN/EN, nested copies substituted for the last
// transition of each branch, one construct family per model), and single
// loops (L).
enum class Construct : std::uint8_t { C, E, CN, EN, L };

const char* construct_name(Construct c);
bool parse_construct(const std::string& s, Construct& out);

struct ModelSpec {
  Construct construct = Construct::C;
  int breadth = 2;
  int depth = 1;
  int nesting_factor = 0;   // CN/EN
  int nesting_breadth = 0;  // CN/EN
  int nesting_depth = 0;    // CN/EN
  std::uint64_t seed = 0;   // trace simulation seed carried with the spec

  std::string id() const;  // e.g. "C_b3_d5"
};

struct InvalidSpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Validates the spec ranges (C: breadth 2-12, depth 1-15; E: breadth 2-15,
// depth 1-15; CN/EN: breadth 2, depth 1-5, nesting factor 1-5, nesting
// breadth 2, nesting depth 1-5; L: breadth 1, depth 1-5) and builds the net.
// Every transition label is unique within the model; splits, joins and loop
// arcs are silent.
PetriNet generate_model(const ModelSpec& spec);

enum class Placement : std::uint8_t { none, start, middle, end };

const char* placement_name(Placement p);
bool parse_placement(const std::string& s, Placement& out);
inline constexpr Placement kAllPlacements[] = {Placement::none, Placement::start,
                                               Placement::middle, Placement::end};

// n random traces by uniform enabled-transition play from the initial to the
// final marking; silent transitions fire without emitting. Once max_len
// events have been emitted, successors reaching not-yet-seen markings are
// preferred, which forces loops to exit. Deterministic for a given seed.
std::vector<Trace> simulate_traces(const PetriNet& net, int n, std::uint64_t seed,
                                   int max_len = 200);

struct EmptyTraceError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Removes one event: index 0 (start), (len-1)/2 (middle), len-1 (end);
// none is the identity. Throws EmptyTraceError when there is nothing to
// remove.
Trace inject_deviation(const Trace& trace, Placement placement);

}  // namespace folda

#endif
