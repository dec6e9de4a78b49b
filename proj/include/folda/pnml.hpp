#ifndef FOLDA_PNML_HPP
#define FOLDA_PNML_HPP

#include <stdexcept>
#include <string>

#include "folda/petri_net.hpp"

namespace folda {

struct PnmlError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingFinalMarkingError : PnmlError {
  using PnmlError::PnmlError;
};

// Reads a place/transition PNML file. Supported elements: net, page (also
// nested), place with initialMarking, transition with name, arc, and the
// finalmarkings block used by the usual process-mining tools. A transition
// whose name text is empty, absent, or starts with "tau" is silent. When the
// file carries no finalmarkings block, a sidecar "<path>.fm" with
// "<place-id> <count>" lines is consulted; a missing final marking is an
// error.
PetriNet read_pnml(const std::string& path);

// Writes the same dialect back (ids p0.., t0..; silent transitions are
// named tau..; finalmarkings inline). Round-trips through read_pnml up to
// id renaming.
void write_pnml(const PetriNet& net, const std::string& path);

}  // namespace folda

#endif
