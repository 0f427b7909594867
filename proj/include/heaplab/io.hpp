#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "heaplab/classify.hpp"
#include "heaplab/heap.hpp"
#include "heaplab/poset.hpp"
#include "heaplab/properties.hpp"
#include "heaplab/splits.hpp"
#include "heaplab/weights.hpp"

namespace heaplab {

using json = nlohmann::json;

enum class InputKind { poset, heap, tailed };

// One input file. Posets: {"graph", "poset"}; heaps: {"graph", "heap", optional
// "seed": {"frontier"}}; tailed posets: {"graph", "poset", "tails", "split"}.
struct LoadedInput {
  InputKind kind = InputKind::poset;
  std::optional<FinitePoset> poset;
  std::optional<PeriodicHeap> heap;
  std::optional<PeriodicSplit> seed;
  std::optional<TailedPoset> tailed;
  std::optional<TailedSplit> tailed_split;
};

// InputError messages carry the file name and the failing field (or the
// parser's line/column).
LoadedInput load_input(const std::string& path);
LoadedInput parse_input(const json& doc, const std::string& where = "input");
json read_json_file(const std::string& path);

ColorGraph parse_graph(const json& j);
FinitePoset parse_poset(const ColorGraph& G, const json& j,
                        ColorMode mode = ColorMode::require_surjective);
PeriodicHeap parse_heap(const ColorGraph& G, const json& j);
PeriodicSplit parse_periodic_split(const PeriodicHeap& H, const json& j);

json graph_to_json(const ColorGraph& G);
json poset_to_json(const FinitePoset& P);  // {"graph", "poset"}
json heap_to_json(const PeriodicHeap& H);  // {"graph", "heap"}
json periodic_split_to_json(const PeriodicHeap& H, const PeriodicSplit& s);

// Lattice export {"splits":[{"ideal":[...]}], "edges":[{"from","to","color"}]}.
json lattice_to_json(const SplitLattice& L);

// Name-level view of an exported lattice, used for round-trip checks.
struct LatticeData {
  std::vector<std::vector<std::string>> ideals;            // sorted names
  std::vector<std::tuple<int, int, std::string>> edges;    // sorted
  friend bool operator==(const LatticeData&, const LatticeData&) = default;
};
LatticeData lattice_data(const SplitLattice& L);
LatticeData parse_lattice_json(const json& j);

std::string lattice_to_dot(const SplitLattice& L);
std::string ball_to_dot(const PeriodicHeap& H, const SplitBall& ball);

// Rows {"color","split","value":"p/q"}.
json weights_to_json(const WeightFunction& eta, const ColorGraph& G);

json to_json(const PropertyReport& r);
json to_json(const ClassificationReport& r);
json to_json(const RelationReport& r, const ColorGraph& G);
json to_json(const RepresentationReport& r, const ColorGraph& G);
json to_json(const EquivalenceReport& r);
json to_json(const HarnessSummary& s);

}  // namespace heaplab
