#include "heaplab/poset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace heaplab {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  try {
    std::size_t pos = 0;
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      std::int64_t n = std::stoll(text, &pos);
      if (pos != text.size()) throw InputError("bad rational: " + text);
      return Rational(n);
    }
    std::int64_t n = std::stoll(text.substr(0, slash), &pos);
    if (pos != slash) throw InputError("bad rational: " + text);
    const std::string den = text.substr(slash + 1);
    std::int64_t d = std::stoll(den, &pos);
    if (pos != den.size() || d == 0) throw InputError("bad rational: " + text);
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw InputError("bad rational: " + text);
  }
}

ColorGraph::ColorGraph(std::vector<std::string> names,
                       const std::vector<std::pair<std::string, std::string>>& edges)
    : names_(std::move(names)) {
  for (ColorId c = 0; c < size(); ++c) {
    if (!index_.emplace(names_[c], c).second)
      throw InputError("duplicate color '" + names_[c] + "'");
  }
  adjacency_.assign(static_cast<std::size_t>(size()) * size(), 0);
  for (const auto& [a, b] : edges) {
    const ColorId ia = id(a), ib = id(b);
    if (ia == ib) throw InputError("loop at color '" + a + "'");
    if (adjacency_[ia * size() + ib])
      throw InputError("multiple edge between '" + a + "' and '" + b + "'");
    adjacency_[ia * size() + ib] = adjacency_[ib * size() + ia] = 1;
  }
  finish();
}

ColorGraph ColorGraph::from_indices(int n, const std::vector<std::pair<ColorId, ColorId>>& edges) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i))
                                                      : "c" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> named;
  for (auto [a, b] : edges) named.emplace_back(names.at(a), names.at(b));
  return ColorGraph(std::move(names), named);
}

void ColorGraph::finish() {
  neighbors_.assign(size(), {});
  for (ColorId a = 0; a < size(); ++a)
    for (ColorId b = 0; b < size(); ++b)
      if (adjacent(a, b)) neighbors_[a].push_back(b);
}

ColorId ColorGraph::id(std::string_view name) const {
  auto f = find(name);
  if (!f) throw InputError("unknown color '" + std::string(name) + "'");
  return *f;
}

std::optional<ColorId> ColorGraph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int ColorGraph::theta(ColorId a, ColorId b) const {
  if (a < 0 || b < 0 || a >= size() || b >= size()) throw InputError("unknown color index");
  if (a == b) return 2;
  return adjacent(a, b) ? -1 : 0;
}

std::vector<std::pair<ColorId, ColorId>> ColorGraph::edges() const {
  std::vector<std::pair<ColorId, ColorId>> out;
  for (ColorId a = 0; a < size(); ++a)
    for (ColorId b = a + 1; b < size(); ++b)
      if (adjacent(a, b)) out.emplace_back(a, b);
  return out;
}

ColorGraph ColorGraph::induced(const std::vector<bool>& keep, std::vector<ColorId>& remap) const {
  remap.assign(size(), -1);
  std::vector<std::string> names;
  for (ColorId c = 0; c < size(); ++c) {
    if (keep[c]) {
      remap[c] = static_cast<ColorId>(names.size());
      names.push_back(names_[c]);
    }
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [a, b] : this->edges())
    if (keep[a] && keep[b]) edges.emplace_back(names_[a], names_[b]);
  return ColorGraph(std::move(names), edges);
}

FinitePoset FinitePoset::build(ColorGraph graph, const std::vector<ElementSpec>& elements,
                               const std::vector<std::pair<std::string, std::string>>& covers,
                               ColorMode mode) {
  std::vector<std::string> names;
  std::vector<ColorId> colors;
  std::unordered_map<std::string, ElementId> index;
  for (const auto& e : elements) {
    if (!index.emplace(e.id, static_cast<ElementId>(names.size())).second)
      throw InputError("duplicate element '" + e.id + "'");
    names.push_back(e.id);
    colors.push_back(graph.id(e.color));
  }
  std::vector<std::pair<ElementId, ElementId>> idx;
  for (const auto& [x, y] : covers) {
    auto ix = index.find(x), iy = index.find(y);
    if (ix == index.end()) throw InputError("cover references unknown element '" + x + "'");
    if (iy == index.end()) throw InputError("cover references unknown element '" + y + "'");
    idx.emplace_back(ix->second, iy->second);
  }
  return from_indices(std::move(graph), std::move(colors), idx, std::move(names), mode);
}

FinitePoset FinitePoset::from_indices(ColorGraph graph, std::vector<ColorId> colors,
                                      const std::vector<std::pair<ElementId, ElementId>>& covers,
                                      std::vector<std::string> names, ColorMode mode) {
  FinitePoset p;
  const int n = static_cast<int>(colors.size());
  if (names.empty())
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  if (static_cast<int>(names.size()) != n) throw InputError("name/color count mismatch");
  for (ColorId c : colors)
    if (c < 0 || c >= graph.size()) throw InputError("element color outside the color graph");

  std::vector<bool> used(graph.size(), false);
  for (ColorId c : colors) used[c] = true;
  const bool surjective = std::all_of(used.begin(), used.end(), [](bool u) { return u; });
  if (!surjective && mode != ColorMode::keep_graph) {
    if (mode == ColorMode::require_surjective) {
      for (ColorId c = 0; c < graph.size(); ++c)
        if (!used[c])
          throw InputError("coloring is not surjective: no element has color '" + graph.name(c) +
                           "'");
    }
    std::vector<ColorId> remap;
    graph = graph.induced(used, remap);
    for (auto& c : colors) c = remap[c];
    p.restricted_ = true;
  }

  p.graph_ = std::move(graph);
  p.names_ = std::move(names);
  p.colors_ = std::move(colors);
  for (ElementId x = 0; x < n; ++x)
    if (!p.index_.emplace(p.names_[x], x).second)
      throw InputError("duplicate element '" + p.names_[x] + "'");
  p.index_and_close(covers);
  return p;
}

void FinitePoset::index_and_close(const std::vector<std::pair<ElementId, ElementId>>& covers) {
  const int n = size();
  up_.assign(n, {});
  down_.assign(n, {});
  for (auto [x, y] : covers) {
    if (x < 0 || y < 0 || x >= n || y >= n) throw InputError("cover references unknown element");
    if (x == y) throw InputError("cover '" + names_[x] + "' -> '" + names_[x] + "' is a cycle");
    if (std::find(up_[x].begin(), up_[x].end(), y) != up_[x].end())
      throw InputError("duplicate cover '" + names_[x] + "' -> '" + names_[y] + "'");
    up_[x].push_back(y);
    down_[y].push_back(x);
  }
  for (auto& v : up_) std::sort(v.begin(), v.end());
  for (auto& v : down_) std::sort(v.begin(), v.end());

  // Kahn order; leftovers mean a directed cycle.
  std::vector<int> indeg(n, 0);
  for (int x = 0; x < n; ++x) indeg[x] = static_cast<int>(down_[x].size());
  std::vector<ElementId> order;
  for (int x = 0; x < n; ++x)
    if (indeg[x] == 0) order.push_back(x);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (ElementId y : up_[order[i]])
      if (--indeg[y] == 0) order.push_back(y);
  if (static_cast<int>(order.size()) != n) {
    for (int x = 0; x < n; ++x)
      if (indeg[x] > 0) throw InputError("cover relation has a cycle through '" + names_[x] + "'");
  }

  above_.assign(n, ElementSet(n));
  below_.assign(n, ElementSet(n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (ElementId y : up_[*it]) {
      above_[*it].insert(y);
      above_[*it] |= above_[y];
    }
  }
  for (ElementId x : order) {
    for (ElementId w : down_[x]) {
      below_[x].insert(w);
      below_[x] |= below_[w];
    }
  }
  for (int x = 0; x < n; ++x) {
    for (ElementId y : up_[x]) {
      for (ElementId z : up_[x]) {
        if (z != y && less(z, y))
          throw InputError("cover '" + names_[x] + "' -> '" + names_[y] +
                           "' is not transitively reduced (implied via '" + names_[z] + "')");
      }
    }
  }
  by_color_.assign(graph_.size(), ElementSet(n));
  for (int x = 0; x < n; ++x) by_color_[colors_[x]].insert(x);
}

ElementId FinitePoset::id(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw InputError("unknown element '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::pair<ElementId, ElementId>> FinitePoset::covers() const {
  std::vector<std::pair<ElementId, ElementId>> out;
  for (ElementId x = 0; x < size(); ++x)
    for (ElementId y : up_[x]) out.emplace_back(x, y);
  return out;
}

bool FinitePoset::covers(ElementId x, ElementId y) const {
  return std::binary_search(up_.at(x).begin(), up_.at(x).end(), y);
}

ElementSet FinitePoset::open_interval(ElementId x, ElementId y) const {
  if (!less(x, y))
    throw PreconditionError("open interval needs '" + names_.at(x) + "' < '" + names_.at(y) + "'");
  return above_[x] & below_[y];
}

std::vector<std::pair<ElementId, ElementId>> FinitePoset::consecutive_pairs(ColorId c) const {
  if (c < 0 || c >= graph_.size()) throw InputError("unknown color index");
  std::vector<std::pair<ElementId, ElementId>> out;
  const auto members = by_color_[c].members();
  for (ElementId x : members)
    for (ElementId y : members)
      if (less(x, y) && !(above_[x] & below_[y]).intersects(by_color_[c])) out.emplace_back(x, y);
  return out;
}

bool FinitePoset::is_ideal(const ElementSet& s) const {
  bool ok = true;
  s.for_each([&](int x) {
    if (!below_[x].subset_of(s)) ok = false;
  });
  return ok;
}

bool FinitePoset::is_filter(const ElementSet& s) const {
  bool ok = true;
  s.for_each([&](int x) {
    if (!above_[x].subset_of(s)) ok = false;
  });
  return ok;
}

FinitePoset FinitePoset::dual() const {
  FinitePoset d;
  d.graph_ = graph_;
  d.names_ = names_;
  d.colors_ = colors_;
  d.index_ = index_;
  d.up_ = down_;
  d.down_ = up_;
  d.above_ = below_;
  d.below_ = above_;
  d.by_color_ = by_color_;
  d.restricted_ = restricted_;
  return d;
}

}  // namespace heaplab
