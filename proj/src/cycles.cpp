#include "stochgraph/cycles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>

namespace stochgraph {

double Cycle::gain() const {
  if (vertices.empty()) return 0.0;
  return std::pow(weight, 1.0 / static_cast<double>(vertices.size()));
}

Cycle make_cycle(const WeightedDigraph& d, std::vector<VertexId> vertices) {
  if (vertices.empty()) throw DigraphError("empty cycle");
  auto lead = std::min_element(vertices.begin(), vertices.end());
  std::rotate(vertices.begin(), lead, vertices.end());
  std::vector<VertexId> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw DigraphError("cycle repeats a vertex");
  Cycle c;
  c.weight = 1.0;
  bool exact = true;
  Rational q(1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    VertexId u = vertices[i];
    VertexId v = vertices[(i + 1) % vertices.size()];
    auto w = d.weight(u, v);
    if (!w) throw DigraphError("cycle uses missing arc (" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")");
    c.weight *= w->value;
    if (w->exact && exact) {
      q *= *w->exact;
    } else {
      exact = false;
    }
  }
  if (exact) c.exact_weight = q;
  c.vertices = std::move(vertices);
  return c;
}

int compare_gains(const Cycle& a, const Cycle& b) {
  if (a.exact_weight && b.exact_weight) {
    Rational lhs = pow(*a.exact_weight, b.length());
    Rational rhs = pow(*b.exact_weight, a.length());
    return sgn(lhs - rhs);
  }
  double ga = a.gain(), gb = b.gain();
  return (ga > gb) - (ga < gb);
}

int compare_gain_to(const Cycle& c, const Rational& t) {
  if (c.exact_weight && sgn(t) >= 0) return sgn(*c.exact_weight - pow(t, c.length()));
  double g = c.gain(), x = t.get_d();
  return (g > x) - (g < x);
}

std::size_t CycleUnion::total_length() const {
  std::size_t total = 0;
  for (const auto& c : cycles) total += c.length();
  return total;
}

double CycleUnion::weight() const {
  double w = 1.0;
  for (const auto& c : cycles) w *= c.weight;
  return w;
}

std::optional<Rational> CycleUnion::exact_weight() const {
  Rational w(1);
  for (const auto& c : cycles) {
    if (!c.exact_weight) return std::nullopt;
    w *= *c.exact_weight;
  }
  return w;
}

namespace {

/// Johnson's circuit search rooted at s inside `component`.
class JohnsonSearch {
 public:
  JohnsonSearch(const WeightedDigraph& d, const std::vector<char>& component)
      : d_(d), in_(component), blocked_(d.order(), 0), blocked_by_(d.order()) {}

  /// Returns false when the visitor asked to stop.
  bool run(VertexId s, const std::function<bool(const std::vector<VertexId>&)>& emit) {
    struct Frame {
      VertexId v;
      std::size_t next;
      bool found;
    };
    std::vector<Frame> frames;
    path_.clear();
    path_.push_back(s);
    blocked_[s] = 1;
    frames.push_back({s, 0, false});
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto row = d_.out_arcs(f.v);
      if (f.next < row.size()) {
        VertexId w = row[f.next++].to;
        if (w == f.v || !in_[w]) continue;
        if (w == s) {
          if (!emit(path_)) return false;
          f.found = true;
        } else if (!blocked_[w]) {
          blocked_[w] = 1;
          path_.push_back(w);
          frames.push_back({w, 0, false});
        }
        continue;
      }
      if (f.found) {
        unblock(f.v);
      } else {
        for (const auto& arc : row) {
          VertexId w = arc.to;
          if (w == f.v || !in_[w]) continue;
          auto& list = blocked_by_[w];
          if (std::find(list.begin(), list.end(), f.v) == list.end()) list.push_back(f.v);
        }
      }
      bool found = f.found;
      frames.pop_back();
      path_.pop_back();
      if (!frames.empty() && found) frames.back().found = true;
    }
    return true;
  }

  void reset(const std::vector<VertexId>& members) {
    for (VertexId v : members) {
      blocked_[v] = 0;
      blocked_by_[v].clear();
    }
  }

 private:
  void unblock(VertexId u) {
    std::vector<VertexId> work{u};
    while (!work.empty()) {
      VertexId x = work.back();
      work.pop_back();
      if (!blocked_[x]) continue;
      blocked_[x] = 0;
      for (VertexId y : blocked_by_[x]) work.push_back(y);
      blocked_by_[x].clear();
    }
  }

  const WeightedDigraph& d_;
  const std::vector<char>& in_;
  std::vector<char> blocked_;
  std::vector<std::vector<VertexId>> blocked_by_;
  std::vector<VertexId> path_;
};

/// Plain depth-limited search for cycles through s (the minimum vertex).
bool bounded_search(const WeightedDigraph& d, const std::vector<char>& in, VertexId s, std::size_t max_length,
                    const std::function<bool(const std::vector<VertexId>&)>& emit) {
  std::vector<VertexId> path{s};
  std::vector<char> on_path(d.order(), 0);
  on_path[s] = 1;
  std::vector<std::size_t> next{0};
  while (!path.empty()) {
    VertexId v = path.back();
    auto row = d.out_arcs(v);
    std::size_t& i = next.back();
    if (i < row.size()) {
      VertexId w = row[i++].to;
      if (w == v || !in[w]) continue;
      if (w == s) {
        if (!emit(path)) return false;
      } else if (!on_path[w] && path.size() < max_length) {
        on_path[w] = 1;
        path.push_back(w);
        next.push_back(0);
      }
      continue;
    }
    on_path[v] = 0;
    path.pop_back();
    next.pop_back();
  }
  return true;
}

}  // namespace

EnumerationStatus enumerate_cycles(const WeightedDigraph& d, const EnumerationLimits& limits,
                                   const std::function<bool(const std::vector<VertexId>&)>& visit) {
  EnumerationStatus status;
  const std::size_t n = d.order();
  if (limits.max_length == 0) return status;

  bool stopped = false;
  auto emit = [&](const std::vector<VertexId>& cycle) {
    if (status.emitted >= limits.max_count) {
      status.truncated = true;
      stopped = true;
      return false;
    }
    ++status.emitted;
    if (!visit(cycle)) {
      status.truncated = true;
      stopped = true;
      return false;
    }
    return true;
  };

  std::vector<std::vector<VertexId>> in_arcs(n);
  for (const auto& arc : d.arcs())
    if (arc.from != arc.to) in_arcs[arc.to].push_back(arc.from);

  std::vector<char> component(n, 0), forward(n, 0), backward(n, 0);
  std::vector<VertexId> stack, members;
  JohnsonSearch johnson(d, component);

  for (VertexId s = 0; s < n && !stopped; ++s) {
    if (d.has_loop(s)) {
      std::vector<VertexId> loop{s};
      if (!emit(loop)) break;
    }
    bool has_return = std::any_of(in_arcs[s].begin(), in_arcs[s].end(), [&](VertexId u) { return u > s; });
    if (!has_return) continue;

    // Strong component of s inside the subgraph on {v >= s}.
    auto reach = [&](std::vector<char>& mark, bool reverse) {
      std::fill(mark.begin() + static_cast<std::ptrdiff_t>(s), mark.end(), 0);
      mark[s] = 1;
      stack.assign(1, s);
      while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        auto relax = [&](VertexId w) {
          if (w > s && !mark[w]) {
            mark[w] = 1;
            stack.push_back(w);
          }
        };
        if (reverse) {
          for (VertexId w : in_arcs[v]) relax(w);
        } else {
          for (const auto& arc : d.out_arcs(v)) relax(arc.to);
        }
      }
    };
    reach(forward, false);
    reach(backward, true);
    members.clear();
    for (VertexId v = s; v < n; ++v) {
      component[v] = forward[v] && backward[v];
      if (component[v]) members.push_back(v);
    }
    if (members.size() > 1 && limits.max_length >= 2) {
      bool ok = limits.max_length >= members.size() ? johnson.run(s, emit)
                                                      : bounded_search(d, component, s, limits.max_length, emit);
      if (!ok) stopped = true;
      johnson.reset(members);
    }
    for (VertexId v : members) component[v] = 0;
  }
  return status;
}

std::vector<Cycle> list_cycles(const WeightedDigraph& d, const EnumerationLimits& limits, bool* truncated) {
  std::vector<Cycle> out;
  auto status = enumerate_cycles(d, limits, [&](const std::vector<VertexId>& c) {
    out.push_back(make_cycle(d, c));
    return true;
  });
  if (truncated) *truncated = status.truncated;
  return out;
}

std::optional<Cycle> find_cycle_longer_than(const WeightedDigraph& d, std::size_t length) {
  std::optional<std::vector<VertexId>> found;
  enumerate_cycles(d, {}, [&](const std::vector<VertexId>& c) {
    if (c.size() > length) {
      found = c;
      return false;
    }
    return true;
  });
  if (!found) return std::nullopt;
  return make_cycle(d, *found);
}

std::vector<CycleUnion> enumerate_cycle_unions(const WeightedDigraph& d, std::size_t max_unions) {
  std::vector<Cycle> cycles = list_cycles(d);
  std::vector<std::vector<std::size_t>> by_lead(d.order());
  std::vector<std::vector<char>> masks;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    by_lead[cycles[i].vertices.front()].push_back(i);
    std::vector<char> m(d.order(), 0);
    for (VertexId v : cycles[i].vertices) m[v] = 1;
    masks.push_back(std::move(m));
  }
  std::vector<CycleUnion> unions;
  std::vector<char> used(d.order(), 0);
  std::vector<std::size_t> chosen;
  std::function<void(VertexId)> recurse = [&](VertexId v) {
    while (v < d.order() && used[v]) ++v;
    if (v == d.order()) {
      if (!chosen.empty()) {
        if (unions.size() >= max_unions) throw BudgetExceeded("cycle-union budget exceeded");
        CycleUnion u;
        for (std::size_t i : chosen) u.cycles.push_back(cycles[i]);
        unions.push_back(std::move(u));
      }
      return;
    }
    recurse(v + 1);
    for (std::size_t i : by_lead[v]) {
      const auto& c = cycles[i];
      if (std::any_of(c.vertices.begin(), c.vertices.end(), [&](VertexId w) { return used[w]; })) continue;
      for (VertexId w : c.vertices) used[w] = 1;
      chosen.push_back(i);
      recurse(v + 1);
      chosen.pop_back();
      for (VertexId w : c.vertices) used[w] = 0;
    }
  };
  recurse(0);
  return unions;
}

bool is_single_cycle(const WeightedDigraph& d) {
  if (d.order() == 0 || d.arc_count() != d.order()) return false;
  for (VertexId v = 0; v < d.order(); ++v)
    if (d.out_arcs(v).size() != 1) return false;
  return is_strongly_connected(d);
}

OmegaResult omega(const WeightedDigraph& d, std::size_t n, bool proper_only, std::size_t max_cycles) {
  OmegaResult result;
  auto status = enumerate_cycles(d, {n, max_cycles}, [&](const std::vector<VertexId>& c) {
    if (proper_only && c.size() >= d.arc_count()) return true;
    Cycle cycle = make_cycle(d, c);
    if (!result.best || compare_gains(cycle, *result.best) > 0) result.best = std::move(cycle);
    return true;
  });
  if (status.truncated) throw OmegaBudgetExceeded("omega: cycle enumeration budget exceeded", result.best);
  return result;
}

std::vector<double> best_gain_by_length(const WeightedDigraph& d, std::size_t max_length) {
  std::vector<double> best(max_length + 1, 0.0);
  enumerate_cycles(d, {max_length, unlimited}, [&](const std::vector<VertexId>& c) {
    double log_weight = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      log_weight += std::log(d.weight(c[i], c[(i + 1) % c.size()])->value);
    }
    double g = std::exp(log_weight / static_cast<double>(c.size()));
    best[c.size()] = std::max(best[c.size()], g);
    return true;
  });
  return best;
}

bool is_cycle_transversal(const WeightedDigraph& d, const std::vector<VertexId>& vertices) {
  std::vector<bool> removed(d.order(), false);
  for (VertexId v : vertices) {
    if (v >= d.order()) return false;
    removed[v] = true;
  }
  return is_acyclic(d.without(removed).first);
}

std::optional<std::vector<VertexId>> shortest_cycle(const WeightedDigraph& d, const std::vector<bool>& allowed) {
  const std::size_t n = d.order();
  auto ok = [&](VertexId v) { return allowed.empty() || allowed[v]; };
  for (VertexId v = 0; v < n; ++v)
    if (ok(v) && d.has_loop(v)) return std::vector<VertexId>{v};

  std::optional<std::vector<VertexId>> best;
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n, none);
  std::vector<VertexId> parent(n, 0);
  std::deque<VertexId> queue;
  for (VertexId s = 0; s < n; ++s) {
    if (!ok(s)) continue;
    std::fill(dist.begin(), dist.end(), none);
    dist[s] = 0;
    queue.assign(1, s);
    bool closed = false;
    while (!queue.empty() && !closed) {
      VertexId u = queue.front();
      queue.pop_front();
      if (best && dist[u] + 1 >= best->size()) break;
      for (const auto& arc : d.out_arcs(u)) {
        VertexId w = arc.to;
        if (!ok(w) || w == u) continue;
        if (w == s) {
          std::vector<VertexId> cyc;
          for (VertexId x = u;; x = parent[x]) {
            cyc.push_back(x);
            if (x == s) break;
          }
          std::reverse(cyc.begin(), cyc.end());
          best = std::move(cyc);
          closed = true;
          break;
        }
        if (dist[w] == none) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        }
      }
    }
    if (best && best->size() == 2) break;
  }
  if (best) {
    auto lead = std::min_element(best->begin(), best->end());
    std::rotate(best->begin(), lead, best->end());
  }
  return best;
}

std::vector<Cycle> disjoint_cycle_packing(const WeightedDigraph& d) {
  std::vector<bool> allowed(d.order(), true);
  std::vector<Cycle> packing;
  while (auto c = shortest_cycle(d, allowed)) {
    for (VertexId v : *c) allowed[v] = false;
    packing.push_back(make_cycle(d, *c));
  }
  return packing;
}

namespace {

std::size_t packing_bound(const WeightedDigraph& d, std::vector<bool> allowed) {
  std::size_t count = 0;
  while (auto c = shortest_cycle(d, allowed)) {
    for (VertexId v : *c) allowed[v] = false;
    ++count;
  }
  return count;
}

class FvsSearch {
 public:
  FvsSearch(const WeightedDigraph& d, std::size_t budget) : d_(d), budget_(budget) {}

  TransversalResult solve() {
    const std::size_t n = d_.order();
    best_ = greedy();
    std::vector<bool> allowed(n, true);
    std::vector<char> excluded(n, 0);
    std::vector<VertexId> chosen;
    branch(allowed, excluded, chosen);
    TransversalResult r;
    r.vertices = best_;
    std::sort(r.vertices.begin(), r.vertices.end());
    r.optimality = exhausted_ ? Optimality::UpperBound : Optimality::Exact;
    r.nodes = nodes_;
    if (!is_cycle_transversal(d_, r.vertices)) throw std::logic_error("transversal failed acyclicity re-verification");
    return r;
  }

 private:
  std::vector<VertexId> greedy() const {
    std::vector<bool> allowed(d_.order(), true);
    std::vector<VertexId> picked;
    while (auto c = shortest_cycle(d_, allowed)) {
      VertexId pick = c->front();
      std::size_t best_degree = 0;
      for (VertexId v : *c) {
        std::size_t deg = 0;
        for (const auto& arc : d_.out_arcs(v)) deg += allowed[arc.to] ? 1 : 0;
        if (deg > best_degree) {
          best_degree = deg;
          pick = v;
        }
      }
      allowed[pick] = false;
      picked.push_back(pick);
    }
    return picked;
  }

  void branch(std::vector<bool>& allowed, std::vector<char>& excluded, std::vector<VertexId>& chosen) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (chosen.size() >= best_.size()) return;
    auto cyc = shortest_cycle(d_, allowed);
    if (!cyc) {
      best_ = chosen;
      return;
    }
    if (chosen.size() + packing_bound(d_, allowed) >= best_.size()) return;
    std::vector<VertexId> candidates;
    for (VertexId v : *cyc)
      if (!excluded[v]) candidates.push_back(v);
    std::vector<VertexId> newly_excluded;
    for (VertexId v : candidates) {
      allowed[v] = false;
      chosen.push_back(v);
      branch(allowed, excluded, chosen);
      chosen.pop_back();
      allowed[v] = true;
      if (exhausted_) break;
      excluded[v] = 1;
      newly_excluded.push_back(v);
    }
    for (VertexId v : newly_excluded) excluded[v] = 0;
  }

  const WeightedDigraph& d_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<VertexId> best_;
};

/// Longest cycle through subset dynamic programming (order <= 20).
std::optional<std::size_t> longest_cycle_dp(const WeightedDigraph& d) {
  const std::size_t n = d.order();
  std::optional<std::size_t> best;
  for (VertexId v = 0; v < n; ++v)
    if (d.has_loop(v)) best = 1;
  std::vector<std::uint32_t> adjacency(n, 0);
  for (const auto& arc : d.arcs())
    if (arc.from != arc.to) adjacency[arc.from] |= 1u << arc.to;
  for (VertexId s = 0; s < n; ++s) {
    // Masks over vertices s..n-1, shifted so bit 0 is s.
    const std::size_t width = n - s;
    std::vector<std::uint32_t> ends(std::size_t{1} << width, 0);
    ends[1] = 1;
    for (std::uint32_t mask = 1; mask < ends.size(); mask += 2) {
      std::uint32_t e = ends[mask];
      while (e) {
        unsigned bit = static_cast<unsigned>(std::countr_zero(e));
        e &= e - 1;
        std::uint32_t out = adjacency[s + bit] >> s;
        if (out & 1u) {
          std::size_t len = static_cast<std::size_t>(std::popcount(mask));
          if (len >= 2 && (!best || len > *best)) best = len;
        }
        std::uint32_t fresh = out & ~mask & ~1u;
        while (fresh) {
          unsigned w = static_cast<unsigned>(std::countr_zero(fresh));
          fresh &= fresh - 1;
          ends[mask | (1u << w)] |= 1u << w;
        }
      }
    }
  }
  return best;
}

}  // namespace

TransversalResult min_cycle_transversal(const WeightedDigraph& d, std::size_t node_budget) {
  return FvsSearch(d, node_budget).solve();
}

CycleLengthExtremes ell_extremes(const WeightedDigraph& d, std::size_t node_budget) {
  CycleLengthExtremes r;
  if (auto c = shortest_cycle(d)) r.ell_min = c->size();
  if (!r.ell_min) return r;
  if (d.order() <= 20) {
    r.ell_max = longest_cycle_dp(d);
    return r;
  }
  std::size_t best = *r.ell_min;
  std::size_t nodes = 0;
  bool exhausted = false;
  enumerate_cycles(d, {}, [&](const std::vector<VertexId>& c) {
    best = std::max(best, c.size());
    if (++nodes > node_budget) {
      exhausted = true;
      return false;
    }
    return best < d.order();
  });
  r.ell_max = best;
  r.ell_max_exact = !exhausted;
  return r;
}

}  // namespace stochgraph
