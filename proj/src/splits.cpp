#include "heaplab/splits.hpp"

#include <algorithm>
#include <cstdlib>

namespace heaplab {

std::size_t split_cap_from_env() {
  if (const char* v = std::getenv("HEAPLAB_SPLIT_CAP")) {
    char* end = nullptr;
    const long long cap = std::strtoll(v, &end, 10);
    if (end != v && *end == '\0' && cap > 0) return static_cast<std::size_t>(cap);
  }
  return kDefaultSplitCap;
}

bool SplitGraph::has_up(int s, ColorId c) const {
  for (const auto& st : up[s])
    if (st.color == c) return true;
  return false;
}

bool SplitGraph::has_down(int s, ColorId c) const {
  for (const auto& st : down[s])
    if (st.color == c) return true;
  return false;
}

SplitLattice SplitLattice::enumerate(const FinitePoset& poset, std::size_t cap) {
  if (cap == 0) throw InputError("split cap must be positive");
  SplitLattice L;
  L.poset_ = std::make_shared<const FinitePoset>(poset);
  const int n = poset.size();

  // Level-by-level BFS from the empty ideal; each level holds ideals of one size.
  std::vector<ElementSet> level{ElementSet(n)};
  std::vector<ElementSet> all;
  while (!level.empty()) {
    std::sort(level.begin(), level.end(), [](const ElementSet& a, const ElementSet& b) {
      return a.members() < b.members();
    });
    for (auto& s : level) {
      if (all.size() >= cap)
        throw CapacityError("more than " + std::to_string(cap) + " splits (split cap " +
                            std::to_string(cap) + ")");
      all.push_back(s);
    }
    std::unordered_map<ElementSet, int> seen;
    std::vector<ElementSet> next;
    for (const auto& ideal : level) {
      for (ElementId x = 0; x < n; ++x) {
        if (ideal.contains(x)) continue;
        if (!poset.strictly_below(x).subset_of(ideal)) continue;
        ElementSet grown = ideal;
        grown.insert(x);
        if (seen.emplace(grown, 0).second) next.push_back(std::move(grown));
      }
    }
    level = std::move(next);
  }

  L.ideals_ = std::move(all);
  for (int i = 0; i < L.size(); ++i) L.index_.emplace(L.ideals_[i], i);

  SplitGraph& g = L.graph_;
  g.num_colors = poset.graph().size();
  g.up.assign(L.size(), {});
  g.down.assign(L.size(), {});
  g.complete.assign(L.size(), 1);
  for (int s = 0; s < L.size(); ++s) {
    const ElementSet& ideal = L.ideals_[s];
    for (ElementId x = 0; x < n; ++x) {
      if (ideal.contains(x) || !poset.strictly_below(x).subset_of(ideal)) continue;
      ElementSet grown = ideal;
      grown.insert(x);
      const int t = L.index_.at(grown);
      L.edges_.push_back({s, t, x, poset.color(x)});
      g.up[s].push_back({t, poset.color(x)});
      g.down[t].push_back({s, poset.color(x)});
    }
  }
  return L;
}

std::optional<int> SplitLattice::find(const ElementSet& ideal) const {
  auto it = index_.find(ideal);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int SplitLattice::index_of(const ElementSet& ideal) const {
  auto f = find(ideal);
  if (!f) throw InputError("set is not an ideal of the poset");
  return *f;
}

std::vector<int> graph_components(const SplitGraph& g) {
  std::vector<int> comp(g.size(), -1);
  int next = 0;
  for (int s = 0; s < g.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto* list : {&g.up[v], &g.down[v]}) {
        for (const auto& st : *list) {
          if (comp[st.target] < 0) {
            comp[st.target] = next;
            stack.push_back(st.target);
          }
        }
      }
    }
    ++next;
  }
  return comp;
}

std::vector<int> SplitLattice::components() const { return graph_components(graph_); }

int SplitLattice::num_components() const {
  const auto c = components();
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

std::string SplitLattice::split_label(int s) const {
  const ElementSet& ideal = ideals_.at(s);
  if (ideal.empty()) return "(P,{})";
  if (ideal.count() == poset_->size()) return "({},P)";
  // Ideals are named by their maximal elements.
  std::string out = "{";
  bool first = true;
  ideal.for_each([&](int x) {
    if ((poset_->strictly_above(x) & ideal).empty()) {
      if (!first) out += ",";
      out += poset_->name(x);
      first = false;
    }
  });
  return out + "}";
}

int delta(const FinitePoset& poset, ColorId b, const ElementSet& to_ideal,
          const ElementSet& from_ideal) {
  const ElementSet& pb = poset.color_class(b);
  return ((to_ideal - from_ideal) & pb).count() - ((from_ideal - to_ideal) & pb).count();
}

}  // namespace heaplab
