#include "folda/petri_net.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace folda {

Marking::Marking(std::vector<Entry> entries) {
  std::map<std::uint32_t, std::uint64_t> acc;
  for (const auto& [p, c] : entries) acc[p] += c;
  entries_.reserve(acc.size());
  for (const auto& [p, c] : acc) {
    if (c > 0) entries_.emplace_back(p, static_cast<std::uint32_t>(c));
  }
}

Marking Marking::single(std::uint32_t place, std::uint32_t count) {
  Marking m;
  if (count > 0) m.entries_.emplace_back(place, count);
  return m;
}

std::uint32_t Marking::count(std::uint32_t place) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), place,
                             [](const Entry& e, std::uint32_t p) { return e.first < p; });
  if (it != entries_.end() && it->first == place) return it->second;
  return 0;
}

std::uint64_t Marking::total_tokens() const {
  std::uint64_t n = 0;
  for (const auto& [p, c] : entries_) n += c;
  return n;
}

void Marking::add(std::uint32_t place, std::uint32_t count) {
  if (count == 0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), place,
                             [](const Entry& e, std::uint32_t p) { return e.first < p; });
  if (it != entries_.end() && it->first == place) {
    it->second += count;
  } else {
    entries_.insert(it, {place, count});
  }
}

void Marking::remove(std::uint32_t place, std::uint32_t count) {
  if (count == 0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), place,
                             [](const Entry& e, std::uint32_t p) { return e.first < p; });
  if (it == entries_.end() || it->first != place || it->second < count) {
    throw std::underflow_error("marking: removing tokens from place " + std::to_string(place) +
                               " below zero");
  }
  it->second -= count;
  if (it->second == 0) entries_.erase(it);
}

bool Marking::subset_of(const Marking& other) const {
  for (const auto& [p, c] : entries_) {
    if (other.count(p) < c) return false;
  }
  return true;
}

std::size_t Marking::hash() const {
  // FNV-1a over the canonical entry list.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (const auto& [p, c] : entries_) {
    mix(p);
    mix(c);
  }
  return static_cast<std::size_t>(h);
}

std::string Marking::to_string(const std::vector<std::string>& place_names) const {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [p, c] : entries_) {
    if (!first) os << ", ";
    first = false;
    if (p < place_names.size()) {
      os << place_names[p];
    } else {
      os << "p" << p;
    }
    if (c != 1) os << "^" << c;
  }
  os << "]";
  return os.str();
}

std::uint32_t PetriNet::add_place(std::string name) {
  place_names.push_back(std::move(name));
  return static_cast<std::uint32_t>(place_names.size() - 1);
}

std::uint32_t PetriNet::add_transition(std::string name, std::string label) {
  transitions.push_back(Transition{std::move(name), std::move(label), {}, {}});
  return static_cast<std::uint32_t>(transitions.size() - 1);
}

void PetriNet::add_arc_pt(std::uint32_t place, std::uint32_t transition) {
  auto& pre = transitions.at(transition).pre;
  pre.insert(std::upper_bound(pre.begin(), pre.end(), place), place);
}

void PetriNet::add_arc_tp(std::uint32_t transition, std::uint32_t place) {
  auto& post = transitions.at(transition).post;
  post.insert(std::upper_bound(post.begin(), post.end(), place), place);
}

std::vector<std::vector<std::uint32_t>> PetriNet::consumers_by_place() const {
  std::vector<std::vector<std::uint32_t>> by_place(num_places());
  for (std::uint32_t t = 0; t < transitions.size(); ++t) {
    std::uint32_t last = UINT32_MAX;
    for (std::uint32_t p : transitions[t].pre) {
      if (p != last) by_place[p].push_back(t);  // pre is sorted, dedupe runs
      last = p;
    }
  }
  return by_place;
}

void PetriNet::validate() const {
  const std::uint32_t np = static_cast<std::uint32_t>(num_places());
  for (std::uint32_t t = 0; t < transitions.size(); ++t) {
    for (std::uint32_t p : transitions[t].pre) {
      if (p >= np)
        throw std::invalid_argument("transition " + transitions[t].name +
                                    " consumes unknown place " + std::to_string(p));
    }
    for (std::uint32_t p : transitions[t].post) {
      if (p >= np)
        throw std::invalid_argument("transition " + transitions[t].name +
                                    " produces unknown place " + std::to_string(p));
    }
  }
  for (const auto& [p, c] : initial.entries()) {
    if (p >= np) throw std::invalid_argument("initial marking uses unknown place " + std::to_string(p));
  }
  for (const auto& [p, c] : final_marking.entries()) {
    if (p >= np) throw std::invalid_argument("final marking uses unknown place " + std::to_string(p));
  }
}

bool is_enabled(const PetriNet& net, const Marking& m, std::uint32_t t) {
  const auto& pre = net.transitions.at(t).pre;
  std::size_t i = 0;
  while (i < pre.size()) {
    std::size_t j = i;
    while (j < pre.size() && pre[j] == pre[i]) ++j;
    if (m.count(pre[i]) < j - i) return false;
    i = j;
  }
  return true;
}

std::vector<std::uint32_t> enabled(const PetriNet& net, const Marking& m) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = 0; t < net.transitions.size(); ++t) {
    if (is_enabled(net, m, t)) out.push_back(t);
  }
  return out;
}

Marking fire(const PetriNet& net, const Marking& m, std::uint32_t t) {
  if (!is_enabled(net, m, t)) {
    throw NotEnabledError(t, 0, "transition " + net.transitions.at(t).name + " not enabled");
  }
  Marking next = m;
  for (std::uint32_t p : net.transitions[t].pre) next.remove(p);
  for (std::uint32_t p : net.transitions[t].post) next.add(p);
  return next;
}

Marking replay_from(const PetriNet& net, Marking m, std::span<const std::uint32_t> seq) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::uint32_t t = seq[i];
    if (!is_enabled(net, m, t)) {
      throw NotEnabledError(t, i, "replay failed at index " + std::to_string(i) +
                                      ": transition " + net.transitions.at(t).name +
                                      " not enabled");
    }
    for (std::uint32_t p : net.transitions[t].pre) m.remove(p);
    for (std::uint32_t p : net.transitions[t].post) m.add(p);
  }
  return m;
}

Marking replay(const PetriNet& net, std::span<const std::uint32_t> seq) {
  return replay_from(net, net.initial, seq);
}

}  // namespace folda
