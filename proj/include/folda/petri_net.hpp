#ifndef FOLDA_PETRI_NET_HPP
#define FOLDA_PETRI_NET_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace folda {

// ---------------------------------------------------------------------------
// Marking: a multiset of places, kept in canonical form (sorted by place id,
// zero counts omitted) so equal multisets always compare and hash equal.
// ---------------------------------------------------------------------------

class Marking {
 public:
  using Entry = std::pair<std::uint32_t, std::uint32_t>;  // (place, count)

  Marking() = default;
  explicit Marking(std::vector<Entry> entries);  // canonicalizes

  static Marking single(std::uint32_t place, std::uint32_t count = 1);

  std::uint32_t count(std::uint32_t place) const;
  std::uint64_t total_tokens() const;
  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }

  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  void add(std::uint32_t place, std::uint32_t count = 1);
  // Throws std::underflow_error if the tokens are not there.
  void remove(std::uint32_t place, std::uint32_t count = 1);

  // Multiset inclusion: this <= other pointwise.
  bool subset_of(const Marking& other) const;

  bool operator==(const Marking& other) const { return entries_ == other.entries_; }
  bool operator!=(const Marking& other) const { return !(*this == other); }
  // Lexicographic on the canonical form; gives a deterministic total order.
  bool operator<(const Marking& other) const { return entries_ < other.entries_; }

  std::size_t hash() const;
  std::string to_string(const std::vector<std::string>& place_names) const;

 private:
  std::vector<Entry> entries_;
};

struct MarkingHash {
  std::size_t operator()(const Marking& m) const { return m.hash(); }
};

// ---------------------------------------------------------------------------
// PetriNet: ordinary place/transition net with labeled transitions and
// initial/final markings. Places and transitions are dense indices; pre/post
// are multisets of place ids (sorted, duplicates = multiplicity). A label of
// "" means the transition is silent.
// ---------------------------------------------------------------------------

struct Transition {
  std::string name;
  std::string label;  // "" = silent
  std::vector<std::uint32_t> pre;
  std::vector<std::uint32_t> post;

  bool silent() const { return label.empty(); }
};

struct PetriNet {
  std::vector<std::string> place_names;
  std::vector<Transition> transitions;
  Marking initial;
  Marking final_marking;

  std::uint32_t add_place(std::string name);
  std::uint32_t add_transition(std::string name, std::string label);
  void add_arc_pt(std::uint32_t place, std::uint32_t transition);
  void add_arc_tp(std::uint32_t transition, std::uint32_t place);

  std::size_t num_places() const { return place_names.size(); }
  std::size_t num_transitions() const { return transitions.size(); }

  // place -> transitions consuming it (deduplicated, ascending).
  std::vector<std::vector<std::uint32_t>> consumers_by_place() const;

  // Throws std::invalid_argument on dangling arcs or markings over unknown
  // places.
  void validate() const;
};

struct NotEnabledError : std::runtime_error {
  std::uint32_t transition;
  std::size_t index;  // position in a replayed sequence, 0 for single fire
  NotEnabledError(std::uint32_t t, std::size_t idx, const std::string& what)
      : std::runtime_error(what), transition(t), index(idx) {}
};

// Transitions whose preset is covered by m, ascending ids.
std::vector<std::uint32_t> enabled(const PetriNet& net, const Marking& m);

bool is_enabled(const PetriNet& net, const Marking& m, std::uint32_t t);

// Successor marking; throws NotEnabledError if t is not enabled at m.
Marking fire(const PetriNet& net, const Marking& m, std::uint32_t t);

// Folds fire over seq starting at net.initial. Throws NotEnabledError with
// the failing index. Used as the validation oracle throughout the tests.
Marking replay(const PetriNet& net, std::span<const std::uint32_t> seq);
Marking replay_from(const PetriNet& net, Marking m, std::span<const std::uint32_t> seq);

}  // namespace folda

#endif
