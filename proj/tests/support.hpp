#pragma once

#include <string>
#include <utility>
#include <vector>

#include "heaplab/io.hpp"
#include "heaplab/poset.hpp"

namespace support {

using namespace heaplab;

inline std::string fixture(const std::string& name) { return std::string(HEAPLAB_FIXTURES) + "/" + name; }

inline ColorGraph d5() {
  return ColorGraph({"a", "b", "c", "d", "g"}, {{"b", "a"}, {"c", "a"}, {"a", "d"}, {"d", "g"}});
}

// The six-element d-complete example over D5.
inline FinitePoset fig2() {
  return FinitePoset::build(
      d5(),
      {{"u", "a"}, {"x", "b"}, {"y", "c"}, {"v", "a"}, {"z", "d"}, {"q", "g"}},
      {{"u", "x"}, {"u", "y"}, {"x", "v"}, {"y", "v"}, {"v", "z"}, {"q", "z"}});
}

// Chain 0 -> 1 -> ... with the given colors over `graph`.
inline FinitePoset chain(const ColorGraph& graph, std::vector<ColorId> colors) {
  std::vector<std::pair<ElementId, ElementId>> covers;
  for (int i = 0; i + 1 < static_cast<int>(colors.size()); ++i) covers.push_back({i, i + 1});
  return FinitePoset::from_indices(graph, std::move(colors), covers);
}

inline FinitePoset antichain(const ColorGraph& graph, std::vector<ColorId> colors) {
  return FinitePoset::from_indices(graph, std::move(colors), {});
}

inline ColorGraph one_color() { return ColorGraph::from_indices(1, {}); }
inline ColorGraph two_adjacent() { return ColorGraph::from_indices(2, {{0, 1}}); }

inline PeriodicHeap zchain() {
  return PeriodicHeap::build(ColorGraph({"a"}, {}), {{"x", "a"}}, {{"x", "x", 1}});
}

inline LoadedInput load(const std::string& name) { return load_input(fixture(name)); }

inline ElementSet ideal_of(const FinitePoset& P, const std::vector<std::string>& names) {
  ElementSet s = P.empty_set();
  for (const auto& n : names) s.insert(P.id(n));
  return s;
}

}  // namespace support
