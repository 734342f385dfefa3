#include "stochgraph/digraph.hpp"

#include <algorithm>
#include <stack>

namespace stochgraph {

WeightedDigraph::WeightedDigraph(std::size_t order, std::vector<Arc> arcs) : order_(order), arcs_(std::move(arcs)) {
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  offsets_.assign(order_ + 1, 0);
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& arc = arcs_[i];
    if (arc.from >= order_ || arc.to >= order_) {
      throw DigraphError("arc (" + std::to_string(arc.from + 1) + "," + std::to_string(arc.to + 1) +
                         ") outside vertex range 1.." + std::to_string(order_));
    }
    if (i > 0 && arcs_[i - 1].from == arc.from && arcs_[i - 1].to == arc.to) {
      throw DigraphError("multiple arcs (" + std::to_string(arc.from + 1) + "," + std::to_string(arc.to + 1) + ")");
    }
    bool positive = arc.weight.exact ? sgn(*arc.weight.exact) > 0 : arc.weight.value > 0.0;
    if (!positive || !(arc.weight.value > 0.0)) {
      throw DigraphError("non-positive weight on arc (" + std::to_string(arc.from + 1) + "," +
                         std::to_string(arc.to + 1) + ")");
    }
    if (!arc.weight.exact) exact_ = false;
    ++offsets_[arc.from + 1];
  }
  for (std::size_t v = 0; v < order_; ++v) offsets_[v + 1] += offsets_[v];
}

std::optional<Weight> WeightedDigraph::weight(VertexId u, VertexId v) const {
  if (u >= order_) return std::nullopt;
  auto row = out_arcs(u);
  auto it = std::lower_bound(row.begin(), row.end(), v, [](const Arc& a, VertexId t) { return a.to < t; });
  if (it != row.end() && it->to == v) return it->weight;
  return std::nullopt;
}

WeightedDigraph WeightedDigraph::induced(std::span<const VertexId> keep) const {
  std::vector<std::size_t> position(order_, order_);
  for (std::size_t i = 0; i < keep.size(); ++i) position[keep[i]] = i;
  std::vector<Arc> out;
  for (const auto& arc : arcs_) {
    if (position[arc.from] < order_ && position[arc.to] < order_) {
      out.push_back(Arc{position[arc.from], position[arc.to], arc.weight});
    }
  }
  return WeightedDigraph(keep.size(), std::move(out));
}

std::pair<WeightedDigraph, std::vector<VertexId>> WeightedDigraph::without(const std::vector<bool>& removed) const {
  std::vector<VertexId> kept;
  for (VertexId v = 0; v < order_; ++v)
    if (v >= removed.size() || !removed[v]) kept.push_back(v);
  return {induced(kept), kept};
}

WeightedDigraph WeightedDigraph::floating() const {
  return reweighted([](const Arc& a) { return Weight(a.weight.value); });
}

bool operator==(const WeightedDigraph& a, const WeightedDigraph& b) {
  if (a.order_ != b.order_ || a.arcs_.size() != b.arcs_.size()) return false;
  for (std::size_t i = 0; i < a.arcs_.size(); ++i) {
    const Arc& x = a.arcs_[i];
    const Arc& y = b.arcs_[i];
    if (x.from != y.from || x.to != y.to) return false;
    if (x.weight.exact.has_value() != y.weight.exact.has_value()) return false;
    if (x.weight.exact ? *x.weight.exact != *y.weight.exact : x.weight.value != y.weight.value) return false;
  }
  return true;
}

DigraphBuilder& DigraphBuilder::arc(VertexId u, VertexId v, Weight w) {
  arcs_[{u, v}] = std::move(w);
  return *this;
}

WeightedDigraph DigraphBuilder::build() const {
  std::vector<Arc> arcs;
  arcs.reserve(arcs_.size());
  for (const auto& [key, w] : arcs_) arcs.push_back(Arc{key.first, key.second, w});
  return WeightedDigraph(order_, std::move(arcs));
}

std::string_view to_string(WeightingTag tag) {
  switch (tag) {
    case WeightingTag::Stochastic: return "Stochastic";
    case WeightingTag::TruthlySubstochastic: return "TruthlySubstochastic";
    case WeightingTag::StrictlySubstochastic: return "StrictlySubstochastic";
    case WeightingTag::Substochastic: return "Substochastic";
    case WeightingTag::NotSubstochastic: return "NotSubstochastic";
  }
  return "?";
}

bool WeightingClass::satisfies(WeightingTag weaker) const {
  if (tag == weaker) return true;
  switch (tag) {
    case WeightingTag::StrictlySubstochastic:
      return weaker == WeightingTag::TruthlySubstochastic || weaker == WeightingTag::Substochastic;
    case WeightingTag::TruthlySubstochastic:
    case WeightingTag::Stochastic:
      return weaker == WeightingTag::Substochastic;
    default:
      return false;
  }
}

WeightingClass classify_weighting(const WeightedDigraph& d, double tau) {
  // -1: below one, 0: equal to one, +1: above one.
  auto compare_to_one = [&](VertexId v) {
    if (d.is_exact()) return sgn(d.out_weight<Rational>(v) - 1);
    double w = d.out_weight<double>(v);
    if (w > 1.0 + tau) return 1;
    if (w < 1.0 - tau) return -1;
    return 0;
  };
  std::optional<VertexId> first_slack;
  bool all_slack = true;
  for (VertexId v = 0; v < d.order(); ++v) {
    int c = compare_to_one(v);
    if (c > 0) return {WeightingTag::NotSubstochastic, v};
    if (c < 0) {
      if (!first_slack) first_slack = v;
    } else {
      all_slack = false;
    }
  }
  if (d.order() == 0) return {WeightingTag::Substochastic, std::nullopt};
  if (all_slack) return {WeightingTag::StrictlySubstochastic, first_slack};
  if (first_slack) return {WeightingTag::TruthlySubstochastic, first_slack};
  return {WeightingTag::Stochastic, std::nullopt};
}

std::vector<std::size_t> strong_components(const WeightedDigraph& d, std::size_t* count) {
  // Iterative Tarjan.
  const std::size_t n = d.order();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexId> stack;
  std::vector<std::pair<VertexId, std::size_t>> call;
  std::size_t next_index = 0, next_comp = 0;
  for (VertexId root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      auto row = d.out_arcs(v);
      if (pos < row.size()) {
        VertexId w = row[pos++].to;
        if (index[w] == unvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      VertexId done = v;
      if (low[done] == index[done]) {
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = next_comp;
        } while (w != done);
        ++next_comp;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  if (count) *count = next_comp;
  return comp;
}

bool is_strongly_connected(const WeightedDigraph& d) {
  if (d.order() <= 1) return true;
  std::size_t count = 0;
  strong_components(d, &count);
  return count == 1;
}

bool is_acyclic(const WeightedDigraph& d) {
  for (VertexId v = 0; v < d.order(); ++v)
    if (d.has_loop(v)) return false;
  std::size_t count = 0;
  strong_components(d, &count);
  return count == d.order();
}

}  // namespace stochgraph
