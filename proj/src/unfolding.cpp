#include "folda/unfolding.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>

namespace folda {

bool BranchingProcess::concurrent(std::uint32_t cond_a, std::uint32_t cond_b) const {
  const auto& co = conditions[cond_a].co;
  return std::binary_search(co.begin(), co.end(), cond_b);
}

namespace {

struct Candidate {
  std::uint32_t id = 0;
  std::uint32_t transition = 0;
  CostUnits cost = 0;
  Rat f;  // cost + h, only meaningful for folda_h
  std::optional<Rat> h;
  std::vector<std::uint32_t> preset;  // condition ids, ascending
  std::vector<std::uint32_t> config;  // cause event ids, ascending, excl. self
  Marking marking;                    // Mark([e])
};

// Max-heap "after" relation: a pops later than b.
struct CandidateAfter {
  Variant variant;
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (variant == Variant::folda_h) {
      if (a.f != b.f) return a.f > b.f;
    } else {
      if (a.cost != b.cost) return a.cost > b.cost;
    }
    return a.id > b.id;
  }
};

std::vector<std::uint32_t> intersect_sorted(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

struct Unfolder::Impl {
  const SyncProduct& sp;
  UnfoldOptions opt;
  BranchingProcess& bp;
  std::vector<Rat>& pop_keys;

  std::vector<std::vector<std::uint32_t>> consumers;  // place -> product transitions
  std::vector<std::vector<std::pair<std::uint32_t, std::int32_t>>> delta;  // per transition
  std::vector<Candidate> heap;
  CandidateAfter after;
  std::uint64_t pushes = 0;
  std::uint32_t next_id = 0;
  std::vector<bool> cutoff_by_id;
  HeuristicCache own_cache;
  HeuristicCache* cache = nullptr;
  std::vector<std::int64_t> scratch;  // per-place token accumulator
  std::set<std::pair<std::uint32_t, std::vector<std::uint32_t>>> seen_presets;  // validation

  Impl(const SyncProduct& s, UnfoldOptions o, BranchingProcess& b, std::vector<Rat>& pk)
      : sp(s), opt(o), bp(b), pop_keys(pk), after{o.variant} {
    consumers = sp.net.consumers_by_place();
    delta.resize(sp.net.num_transitions());
    scratch.assign(sp.net.num_places(), 0);
    cache = opt.heuristic ? opt.heuristic : &own_cache;
    initialize();
  }

  void initialize();
  std::uint32_t add_condition(std::uint32_t place, std::uint32_t input_event);
  void enumerate(const std::vector<std::uint32_t>& new_conds);
  void try_transition(std::uint32_t anchor, std::uint32_t first_new, std::uint32_t t);
  void choose_partners(std::uint32_t anchor, std::uint32_t t,
                       const std::vector<std::pair<std::uint32_t, std::uint32_t>>& needs,
                       const std::vector<std::vector<std::uint32_t>>& buckets, std::size_t k,
                       std::uint32_t taken, std::size_t from, std::vector<std::uint32_t>& chosen);
  void make_candidate(std::uint32_t t, std::vector<std::uint32_t> preset);
  Marking marking_of(const std::vector<std::uint32_t>& config, std::uint32_t extra_t);
  const UnfEvent& append(Candidate e);
  void validate_append(const UnfEvent& ev);
};

// --- construction helpers ---------------------------------------------------

void Unfolder::Impl::initialize() {
  // Transition deltas (self-loops cancel out).
  for (std::uint32_t t = 0; t < sp.net.num_transitions(); ++t) {
    std::fill(scratch.begin(), scratch.end(), 0);
    for (std::uint32_t p : sp.net.transitions[t].post) scratch[p] += 1;
    for (std::uint32_t p : sp.net.transitions[t].pre) scratch[p] -= 1;
    for (std::uint32_t p = 0; p < scratch.size(); ++p) {
      if (scratch[p] != 0) delta[t].emplace_back(p, static_cast<std::int32_t>(scratch[p]));
    }
  }

  // One condition per token of the initial marking; all pairwise concurrent.
  std::vector<std::uint32_t> init;
  for (const auto& [p, c] : sp.net.initial.entries()) {
    for (std::uint32_t k = 0; k < c; ++k) init.push_back(add_condition(p, kNone));
  }
  for (std::uint32_t b : init) {
    auto& co = bp.conditions[b].co;
    for (std::uint32_t other : init) {
      if (other != b) co.push_back(other);
    }
  }
  enumerate(init);
  // Transitions with an empty preset are enabled once, at initialization.
  for (std::uint32_t t = 0; t < sp.net.num_transitions(); ++t) {
    if (sp.net.transitions[t].pre.empty()) make_candidate(t, {});
  }
}

std::uint32_t Unfolder::Impl::add_condition(std::uint32_t place, std::uint32_t input_event) {
  std::uint32_t id = static_cast<std::uint32_t>(bp.conditions.size());
  bp.conditions.push_back(Condition{id, place, input_event, {}});
  return id;
}

// --- possible extensions ----------------------------------------------------

void Unfolder::Impl::enumerate(const std::vector<std::uint32_t>& new_conds) {
  if (new_conds.empty()) return;
  const std::uint32_t first_new = new_conds.front();
  for (std::uint32_t anchor : new_conds) {
    for (std::uint32_t t : consumers[bp.conditions[anchor].place]) {
      try_transition(anchor, first_new, t);
    }
  }
}

void Unfolder::Impl::try_transition(std::uint32_t anchor, std::uint32_t first_new,
                                    std::uint32_t t) {
  const Condition& bc = bp.conditions[anchor];
  const auto& pre = sp.net.transitions[t].pre;  // sorted, multiplicity as duplicates

  // Remaining requirement once the anchor covers one token of its place.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> needs;  // (place, count)
  std::size_t i = 0;
  while (i < pre.size()) {
    std::size_t j = i;
    while (j < pre.size() && pre[j] == pre[i]) ++j;
    std::uint32_t cnt = static_cast<std::uint32_t>(j - i);
    if (pre[i] == bc.place) cnt -= 1;
    if (cnt > 0) needs.emplace_back(pre[i], cnt);
    i = j;
  }

  if (needs.empty()) {
    make_candidate(t, {anchor});
    return;
  }

  // Partners come from co(anchor); a sibling from this append may join only
  // with a larger id than the anchor, so each co-set is found exactly once
  // (anchored at its smallest new condition).
  std::vector<std::vector<std::uint32_t>> buckets(needs.size());
  for (std::uint32_t c : bc.co) {
    if (c >= first_new && c < anchor) continue;
    const std::uint32_t pl = bp.conditions[c].place;
    for (std::size_t k = 0; k < needs.size(); ++k) {
      if (needs[k].first == pl) {
        buckets[k].push_back(c);
        break;
      }
    }
  }
  for (std::size_t k = 0; k < needs.size(); ++k) {
    if (buckets[k].size() < needs[k].second) return;
  }
  std::vector<std::uint32_t> chosen;
  choose_partners(anchor, t, needs, buckets, 0, 0, 0, chosen);
}

void Unfolder::Impl::choose_partners(
    std::uint32_t anchor, std::uint32_t t,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& needs,
    const std::vector<std::vector<std::uint32_t>>& buckets, std::size_t k, std::uint32_t taken,
    std::size_t from, std::vector<std::uint32_t>& chosen) {
  if (k == needs.size()) {
    std::vector<std::uint32_t> preset = chosen;
    preset.push_back(anchor);
    std::sort(preset.begin(), preset.end());
    make_candidate(t, std::move(preset));
    return;
  }
  if (taken == needs[k].second) {
    choose_partners(anchor, t, needs, buckets, k + 1, 0, 0, chosen);
    return;
  }
  const auto& bucket = buckets[k];
  const std::uint32_t still = needs[k].second - taken;
  for (std::size_t i = from; i + still <= bucket.size(); ++i) {
    const std::uint32_t c = bucket[i];
    bool ok = true;
    for (std::uint32_t d : chosen) {
      if (!bp.concurrent(c, d)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    chosen.push_back(c);
    choose_partners(anchor, t, needs, buckets, k, taken + 1, i + 1, chosen);
    chosen.pop_back();
  }
}

void Unfolder::Impl::make_candidate(std::uint32_t t, std::vector<std::uint32_t> preset) {
  Candidate cand;
  cand.transition = t;
  cand.preset = std::move(preset);

  for (std::uint32_t x : cand.preset) {
    const std::uint32_t ev = bp.conditions[x].input_event;
    if (ev == kNone) continue;
    const UnfEvent* e = bp.event_by_id(ev);
    cand.config.insert(cand.config.end(), e->local_config.begin(), e->local_config.end());
  }
  std::sort(cand.config.begin(), cand.config.end());
  cand.config.erase(std::unique(cand.config.begin(), cand.config.end()), cand.config.end());

  cand.cost = sp.cost[t];
  for (std::uint32_t id : cand.config) cand.cost += sp.cost[bp.event_by_id(id)->transition];
  cand.marking = marking_of(cand.config, t);

  if (opt.variant == Variant::folda_h) {
    cand.h = cache->get_or_compute(sp, cand.marking);
    if (!cand.h) return;  // final marking unreachable from here: prune
    cand.f = units_to_rat(cand.cost) + *cand.h;
  }
  cand.id = next_id++;
  heap.push_back(std::move(cand));
  std::push_heap(heap.begin(), heap.end(), after);
  ++pushes;
}

Marking Unfolder::Impl::marking_of(const std::vector<std::uint32_t>& config,
                                   std::uint32_t extra_t) {
  std::fill(scratch.begin(), scratch.end(), 0);
  for (const auto& [p, c] : sp.net.initial.entries()) scratch[p] += c;
  for (std::uint32_t id : config) {
    for (const auto& [p, d] : delta[bp.event_by_id(id)->transition]) scratch[p] += d;
  }
  for (const auto& [p, d] : delta[extra_t]) scratch[p] += d;
  std::vector<Marking::Entry> entries;
  for (std::uint32_t p = 0; p < scratch.size(); ++p) {
    if (scratch[p] < 0) throw std::logic_error("configuration marking went negative");
    if (scratch[p] > 0) entries.emplace_back(p, static_cast<std::uint32_t>(scratch[p]));
  }
  return Marking(std::move(entries));
}

// --- append -----------------------------------------------------------------

const UnfEvent& Unfolder::Impl::append(Candidate e) {
  // Concurrency of the new conditions: everything concurrent with the whole
  // preset, plus the sibling postset conditions.
  std::vector<std::uint32_t> common;
  if (e.preset.empty()) {
    common.resize(bp.conditions.size());
    for (std::uint32_t c = 0; c < common.size(); ++c) common[c] = c;
  } else {
    common = bp.conditions[e.preset[0]].co;
    for (std::size_t i = 1; i < e.preset.size(); ++i) {
      common = intersect_sorted(common, bp.conditions[e.preset[i]].co);
    }
  }

  UnfEvent ev;
  ev.id = e.id;
  ev.transition = e.transition;
  ev.preset = std::move(e.preset);
  for (std::uint32_t p : sp.net.transitions[e.transition].post) {
    ev.postset.push_back(add_condition(p, e.id));
  }
  for (std::uint32_t b : ev.postset) {
    auto& co = bp.conditions[b].co;
    co = common;
    for (std::uint32_t sib : ev.postset) {
      if (sib != b) co.push_back(sib);  // sibling ids exceed all of common
    }
  }
  for (std::uint32_t c : common) {
    auto& co = bp.conditions[c].co;
    for (std::uint32_t b : ev.postset) co.push_back(b);
  }

  ev.local_config = std::move(e.config);
  ev.local_config.push_back(e.id);
  ev.local_cost = e.cost;
  ev.marking = std::move(e.marking);
  ev.heuristic = std::move(e.h);
  ev.key = opt.variant == Variant::folda_h ? e.f : units_to_rat(e.cost);

  auto& same_marking = bp.by_marking[ev.marking];
  ev.cutoff = !same_marking.empty();

  if (ev.id >= bp.event_index_by_id.size()) bp.event_index_by_id.resize(next_id, kNone);
  if (ev.id >= cutoff_by_id.size()) cutoff_by_id.resize(next_id, false);
  bp.event_index_by_id[ev.id] = static_cast<std::uint32_t>(bp.events.size());
  bp.events.push_back(std::move(ev));
  const UnfEvent& ref = bp.events.back();
  same_marking.push_back(ref.id);
  if (ref.cutoff) {
    bp.cutoffs.push_back(ref.id);
    cutoff_by_id[ref.id] = true;
  }
  return ref;
}

// Occurrence-net invariant suite, run per append in validating mode.
void Unfolder::Impl::validate_append(const UnfEvent& ev) {
  // Conditions have at most one input event; ids grow along causal chains.
  for (std::uint32_t b : ev.postset) {
    if (bp.conditions[b].input_event != ev.id)
      throw std::logic_error("postset condition not wired to its event");
  }
  for (std::uint32_t x : ev.preset) {
    const std::uint32_t cause = bp.conditions[x].input_event;
    if (cause != kNone && cause >= ev.id)
      throw std::logic_error("acyclicity violated: preset produced by a later event");
  }
  // No duplicated (transition, preset).
  if (!seen_presets.emplace(ev.transition, ev.preset).second)
    throw std::logic_error("duplicated event (same transition and preset)");
  // Local configuration is causally closed and conflict-free.
  std::set<std::uint32_t> consumed;
  for (std::uint32_t id : ev.local_config) {
    const UnfEvent* e = bp.event_by_id(id);
    if (e == nullptr) throw std::logic_error("local configuration references missing event");
    for (std::uint32_t x : e->preset) {
      const std::uint32_t cause = bp.conditions[x].input_event;
      if (cause != kNone &&
          !std::binary_search(ev.local_config.begin(), ev.local_config.end(), cause))
        throw std::logic_error("local configuration not causally closed");
      if (!consumed.insert(x).second)
        throw std::logic_error("local configuration not conflict-free");
    }
  }
  // Mark([e]) agrees with replaying the id-ordered witness on the product.
  Marking m = sp.net.initial;
  for (std::uint32_t id : ev.local_config) {
    m = fire(sp.net, m, bp.event_by_id(id)->transition);
  }
  if (m != ev.marking) throw std::logic_error("configuration marking disagrees with replay");
}

// --- public surface ----------------------------------------------------------

Unfolder::Unfolder(const SyncProduct& sp, UnfoldOptions options)
    : impl_(new Impl(sp, options, bp_, pop_keys_)) {}

Unfolder::~Unfolder() { delete impl_; }

std::size_t Unfolder::queue_size() const { return impl_->heap.size(); }
std::uint64_t Unfolder::queued_count() const { return impl_->pushes; }

std::vector<std::uint32_t> Unfolder::queued_transitions() const {
  std::vector<std::uint32_t> out;
  for (const auto& c : impl_->heap) out.push_back(c.transition);
  std::sort(out.begin(), out.end());
  return out;
}

AlignResult Unfolder::run() {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

  AlignResult res;
  RunMetrics& met = res.metrics;
  met.variant = impl_->opt.variant;
  met.trace_length = impl_->sp.trace_length;
  met.spt = impl_->sp.spt();

  std::uint64_t iter = 0;
  while (true) {
    if ((iter++ & 63u) == 0 && elapsed() > impl_->opt.timeout_s) {
      res.outcome = AlignOutcome::timed_out;
      res.message = "timeout";
      met.timed_out = true;
      break;
    }
    if (impl_->heap.empty()) {
      res.outcome = AlignOutcome::no_alignment;
      res.message =
          "no alignment: the final marking is unreachable in the synchronous product "
          "(model not easy sound)";
      break;
    }
    std::pop_heap(impl_->heap.begin(), impl_->heap.end(), impl_->after);
    Candidate e = std::move(impl_->heap.back());
    impl_->heap.pop_back();
    if (impl_->opt.record_pops) {
      pop_keys_.push_back(impl_->opt.variant == Variant::folda_h ? e.f
                                                                 : units_to_rat(e.cost));
    }
    bool discard = false;
    for (std::uint32_t id : e.config) {
      if (id < impl_->cutoff_by_id.size() && impl_->cutoff_by_id[id]) {
        discard = true;
        break;
      }
    }
    if (discard) continue;

    const UnfEvent& ev = impl_->append(std::move(e));
    if (impl_->opt.validate_appends) impl_->validate_append(ev);
    if (impl_->sp.move[ev.transition].type == MoveType::dummy_end) {
      res.outcome = AlignOutcome::aligned;
      res.alignment = extract_alignment(bp_, impl_->sp, ev.id);
      met.cost = res.alignment.cost;
      met.aligned = true;
      break;
    }
    if (!ev.cutoff) impl_->enumerate(ev.postset);
  }
  met.elapsed_s = elapsed();
  met.queued_states = impl_->pushes;
  met.visited_states = bp_.events.size();
  return res;
}

POAlignment extract_alignment(const BranchingProcess& bp, const SyncProduct& sp,
                              std::uint32_t final_event_id) {
  const UnfEvent* fin = bp.event_by_id(final_event_id);
  if (fin == nullptr) throw std::invalid_argument("extract_alignment: unknown event id");
  const auto& config = fin->local_config;
  const std::size_t n = config.size();

  std::unordered_map<std::uint32_t, std::size_t> pos;
  pos.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pos[config[i]] = i;

  // before[i] = indices of events causally before config[i]; filled in id
  // order, so causes are complete when consumed.
  std::vector<std::vector<bool>> before(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    const UnfEvent* e = bp.event_by_id(config[i]);
    for (std::uint32_t x : e->preset) {
      const std::uint32_t cause = bp.conditions[x].input_event;
      if (cause == kNone) continue;
      const std::size_t j = pos.at(cause);
      before[i][j] = true;
      for (std::size_t k = 0; k < n; ++k) {
        if (before[j][k]) before[i][k] = true;
      }
    }
  }

  POAlignment out;
  out.cost = fin->local_cost;
  std::vector<bool> keep(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const UnfEvent* e = bp.event_by_id(config[i]);
    const MoveInfo& mi = sp.move[e->transition];
    if (mi.is_dummy()) continue;
    keep[i] = true;
    AlignedMove m;
    m.id = e->id;
    m.type = mi.type;
    m.product_trans = e->transition;
    m.log_event = mi.log_event;
    m.model_trans = mi.model_trans;
    m.silent = mi.silent;
    m.label = sp.move_label(e->transition);
    out.moves.push_back(std::move(m));
    out.linearization.push_back(e->id);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!keep[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (keep[j] && before[i][j]) out.order.emplace_back(config[j], config[i]);
    }
  }
  std::sort(out.order.begin(), out.order.end());
  return out;
}

AlignResult unfold_align(const SyncProduct& sp, const UnfoldOptions& options) {
  Unfolder unf(sp, options);
  return unf.run();
}

AlignResult unfold_align(const SyncProduct& sp, Variant variant, double timeout_s,
                         HeuristicCache* cache) {
  UnfoldOptions opt;
  opt.variant = variant;
  opt.timeout_s = timeout_s;
  opt.heuristic = cache;
  return unfold_align(sp, opt);
}

}  // namespace folda
