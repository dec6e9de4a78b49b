#include "folda/heuristic.hpp"

#include "folda/simplex.hpp"

namespace folda {

IncidenceMatrix IncidenceMatrix::of(const SyncProduct& sp) {
  IncidenceMatrix m;
  m.num_places = sp.net.num_places();
  for (std::uint32_t t = 0; t < sp.net.num_transitions(); ++t) {
    if (!sp.move[t].is_dummy()) m.columns.push_back(t);
  }
  m.data.assign(m.num_places * m.columns.size(), 0);
  for (std::size_t col = 0; col < m.columns.size(); ++col) {
    const Transition& tr = sp.net.transitions[m.columns[col]];
    for (std::uint32_t p : tr.post) m.data[p * m.columns.size() + col] += 1;
    for (std::uint32_t p : tr.pre) m.data[p * m.columns.size() + col] -= 1;
  }
  return m;
}

LpSolution marking_equation_lower_bound(const SyncProduct& sp, const Marking& m) {
  LpSolution sol;
  if (m == sp.net.final_marking) {
    sol.status = LpSolution::Status::optimal;
    sol.objective = 0;
    return sol;
  }
  // The sink has no consumers, so any other marking containing it is stuck.
  if (m.count(sp.sink_place) > 0) return sol;

  // Tokens still on the source stand for the markings the dummy start would
  // deliver.
  Marking adjusted = m;
  const std::uint32_t src = adjusted.count(sp.source_place);
  if (src > 0) {
    adjusted.remove(sp.source_place, src);
    for (const auto& [p, c] : sp.combined_initial.entries()) adjusted.add(p, c * src);
  }

  const IncidenceMatrix inc = IncidenceMatrix::of(sp);
  LpProblem lp;
  lp.cols = inc.columns.size();
  std::vector<std::size_t> row_places;
  for (std::size_t p = 0; p < inc.num_places; ++p) {
    if (p == sp.source_place || p == sp.sink_place) continue;
    row_places.push_back(p);
  }
  lp.rows = row_places.size();
  lp.a.assign(lp.rows * lp.cols, 0);
  lp.b.resize(lp.rows);
  for (std::size_t r = 0; r < lp.rows; ++r) {
    const std::size_t p = row_places[r];
    for (std::size_t j = 0; j < lp.cols; ++j) lp.at(r, j) = inc.entry(p, j);
    lp.b[r] = static_cast<std::int64_t>(sp.combined_final.count(static_cast<std::uint32_t>(p))) -
              static_cast<std::int64_t>(adjusted.count(static_cast<std::uint32_t>(p)));
  }
  lp.c.resize(lp.cols);
  for (std::size_t j = 0; j < lp.cols; ++j) lp.c[j] = sp.cost[inc.columns[j]];

  LpOutcome out = solve_exact_lp(lp);
  if (out.status != LpStatus::optimal) return sol;  // no unbounded case: costs >= 0
  sol.status = LpSolution::Status::optimal;
  sol.objective = out.objective / kCostScale;
  for (std::size_t j = 0; j < lp.cols; ++j) {
    if (out.x[j] != 0) sol.firing.emplace_back(inc.columns[j], out.x[j]);
  }
  return sol;
}

std::optional<Rat> HeuristicCache::get_or_compute(const SyncProduct& sp, const Marking& m) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = values_.find(m);
    if (it != values_.end()) {
      ++hits_;
      return it->second;
    }
  }
  LpSolution sol = marking_equation_lower_bound(sp, m);
  std::optional<Rat> value;
  if (sol.status == LpSolution::Status::optimal) value = sol.objective;
  std::lock_guard<std::mutex> lock(mu_);
  ++solves_;
  auto [it, inserted] = values_.emplace(m, value);
  return it->second;  // first writer wins
}

}  // namespace folda
