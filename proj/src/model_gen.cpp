#include "folda/model_gen.hpp"

#include <algorithm>
#include <unordered_set>

namespace folda {

const char* construct_name(Construct c) {
  switch (c) {
    case Construct::C: return "C";
    case Construct::E: return "E";
    case Construct::CN: return "CN";
    case Construct::EN: return "EN";
    case Construct::L: return "L";
  }
  return "?";
}

bool parse_construct(const std::string& s, Construct& out) {
  if (s == "C") out = Construct::C;
  else if (s == "E") out = Construct::E;
  else if (s == "CN") out = Construct::CN;
  else if (s == "EN") out = Construct::EN;
  else if (s == "L") out = Construct::L;
  else return false;
  return true;
}

std::string ModelSpec::id() const {
  std::string s = construct_name(construct);
  s += "_b" + std::to_string(breadth) + "_d" + std::to_string(depth);
  if (construct == Construct::CN || construct == Construct::EN) {
    s += "_nf" + std::to_string(nesting_factor) + "_nb" + std::to_string(nesting_breadth) +
         "_nd" + std::to_string(nesting_depth);
  }
  return s;
}

const char* placement_name(Placement p) {
  switch (p) {
    case Placement::none: return "none";
    case Placement::start: return "start";
    case Placement::middle: return "middle";
    case Placement::end: return "end";
  }
  return "?";
}

bool parse_placement(const std::string& s, Placement& out) {
  if (s == "none") out = Placement::none;
  else if (s == "start") out = Placement::start;
  else if (s == "middle") out = Placement::middle;
  else if (s == "end") out = Placement::end;
  else return false;
  return true;
}

namespace {

void check_range(const char* what, int v, int lo, int hi) {
  if (v < lo || v > hi) {
    throw InvalidSpecError(std::string(what) + "=" + std::to_string(v) + " outside " +
                           std::to_string(lo) + ".." + std::to_string(hi));
  }
}

struct Builder {
  PetriNet net;
  int labels = 0;
  int silents = 0;

  std::string next_label() {
    // A, B, ..., Z, AA, AB, ...
    int n = labels++;
    std::string s;
    do {
      s.insert(s.begin(), static_cast<char>('A' + n % 26));
      n = n / 26 - 1;
    } while (n >= 0);
    return s;
  }

  std::uint32_t labeled(std::uint32_t from, std::uint32_t to) {
    std::string l = next_label();
    std::uint32_t t = net.add_transition("t_" + l, l);
    net.add_arc_pt(from, t);
    net.add_arc_tp(t, to);
    return t;
  }

  std::uint32_t silent(const std::string& hint) {
    return net.add_transition("tau_" + hint + std::to_string(silents++), "");
  }

  std::uint32_t place() {
    return net.add_place("p" + std::to_string(net.num_places()));
  }
};

// Parallel block between from and to: silent split, `breadth` branches of
// `depth` steps, silent join. With nesting levels remaining, the last step
// of every branch becomes a nested block (C inside CN, E inside EN).
void build_concurrent(Builder& b, std::uint32_t from, std::uint32_t to, int breadth, int depth,
                      int nesting, int nb, int nd, bool choice_family);
void build_choice(Builder& b, std::uint32_t from, std::uint32_t to, int breadth, int depth,
                  int nesting, int nb, int nd);

void build_branch_step(Builder& b, std::uint32_t from, std::uint32_t to, bool last, int nesting,
                       int nb, int nd, bool choice_family) {
  if (last && nesting > 0) {
    if (choice_family) {
      build_choice(b, from, to, nb, nd, nesting - 1, nb, nd);
    } else {
      build_concurrent(b, from, to, nb, nd, nesting - 1, nb, nd, false);
    }
  } else {
    b.labeled(from, to);
  }
}

void build_concurrent(Builder& b, std::uint32_t from, std::uint32_t to, int breadth, int depth,
                      int nesting, int nb, int nd, bool choice_family) {
  std::uint32_t split = b.silent("split");
  std::uint32_t join = b.silent("join");
  b.net.add_arc_pt(from, split);
  b.net.add_arc_tp(join, to);
  for (int br = 0; br < breadth; ++br) {
    std::uint32_t cur = b.place();
    b.net.add_arc_tp(split, cur);
    for (int k = 0; k < depth; ++k) {
      std::uint32_t next = b.place();
      build_branch_step(b, cur, next, k == depth - 1, nesting, nb, nd, choice_family);
      cur = next;
    }
    b.net.add_arc_pt(cur, join);
  }
}

void build_choice(Builder& b, std::uint32_t from, std::uint32_t to, int breadth, int depth,
                  int nesting, int nb, int nd) {
  for (int br = 0; br < breadth; ++br) {
    std::uint32_t cur = from;
    for (int k = 0; k < depth; ++k) {
      std::uint32_t next = k == depth - 1 ? to : b.place();
      build_branch_step(b, cur, next, k == depth - 1, nesting, nb, nd, true);
      cur = next;
    }
  }
}

}  // namespace

PetriNet generate_model(const ModelSpec& spec) {
  switch (spec.construct) {
    case Construct::C:
      check_range("breadth", spec.breadth, 2, 12);
      check_range("depth", spec.depth, 1, 15);
      break;
    case Construct::E:
      check_range("breadth", spec.breadth, 2, 15);
      check_range("depth", spec.depth, 1, 15);
      break;
    case Construct::CN:
    case Construct::EN:
      check_range("breadth", spec.breadth, 2, 2);
      check_range("depth", spec.depth, 1, 5);
      check_range("nesting_factor", spec.nesting_factor, 1, 5);
      check_range("nesting_breadth", spec.nesting_breadth, 2, 2);
      check_range("nesting_depth", spec.nesting_depth, 1, 5);
      break;
    case Construct::L:
      check_range("breadth", spec.breadth, 1, 1);
      check_range("depth", spec.depth, 1, 5);
      break;
  }

  Builder b;
  std::uint32_t start = b.place();
  if (spec.construct == Construct::L) {
    std::uint32_t cur = start;
    for (int k = 0; k < spec.depth; ++k) {
      std::uint32_t next = b.place();
      b.labeled(cur, next);
      cur = next;
    }
    std::uint32_t exit_place = b.place();
    std::uint32_t back = b.silent("back");
    b.net.add_arc_pt(cur, back);
    b.net.add_arc_tp(back, start);
    std::uint32_t exit = b.silent("exit");
    b.net.add_arc_pt(cur, exit);
    b.net.add_arc_tp(exit, exit_place);
    b.net.initial = Marking::single(start);
    b.net.final_marking = Marking::single(exit_place);
  } else {
    std::uint32_t end = b.place();
    const int nesting =
        spec.construct == Construct::CN || spec.construct == Construct::EN ? spec.nesting_factor
                                                                           : 0;
    if (spec.construct == Construct::C || spec.construct == Construct::CN) {
      build_concurrent(b, start, end, spec.breadth, spec.depth, nesting, spec.nesting_breadth,
                       spec.nesting_depth, false);
    } else {
      build_choice(b, start, end, spec.breadth, spec.depth, nesting, spec.nesting_breadth,
                   spec.nesting_depth);
    }
    b.net.initial = Marking::single(start);
    b.net.final_marking = Marking::single(end);
  }
  b.net.validate();
  return b.net;
}

namespace {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  // rejection sampling keeps the draw sequence platform-independent
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

}  // namespace

std::vector<Trace> simulate_traces(const PetriNet& net, int n, std::uint64_t seed, int max_len) {
  std::mt19937_64 rng(seed);
  std::vector<Trace> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    Trace tr;
    Marking m = net.initial;
    std::unordered_set<Marking, MarkingHash> seen;
    seen.insert(m);
    std::size_t steps = 0;
    while (m != net.final_marking) {
      if (++steps > 100000) throw std::logic_error("trace simulation did not terminate");
      auto en = enabled(net, m);
      if (en.empty()) throw std::logic_error("trace simulation deadlocked before the final marking");
      std::uint32_t t;
      if (static_cast<int>(tr.activities.size()) >= max_len) {
        std::vector<std::uint32_t> fresh;
        for (std::uint32_t cand : en) {
          if (!seen.count(fire(net, m, cand))) fresh.push_back(cand);
        }
        const auto& pool = fresh.empty() ? en : fresh;
        t = pool[bounded(rng, pool.size())];
      } else {
        t = en[bounded(rng, en.size())];
      }
      m = fire(net, m, t);
      seen.insert(m);
      if (!net.transitions[t].silent()) tr.activities.push_back(net.transitions[t].label);
    }
    out.push_back(std::move(tr));
  }
  return out;
}

Trace inject_deviation(const Trace& trace, Placement placement) {
  if (placement == Placement::none) return trace;
  if (trace.partial) throw std::invalid_argument("deviation injection expects a sequential trace");
  if (trace.size() == 0) throw EmptyTraceError("cannot remove an event from an empty trace");
  std::size_t idx = 0;
  switch (placement) {
    case Placement::start: idx = 0; break;
    case Placement::middle: idx = (trace.size() - 1) / 2; break;
    case Placement::end: idx = trace.size() - 1; break;
    case Placement::none: break;
  }
  Trace out = trace;
  out.activities.erase(out.activities.begin() + static_cast<std::ptrdiff_t>(idx));
  return out;
}

}  // namespace folda
