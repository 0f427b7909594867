#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "heaplab/poset.hpp"

namespace heaplab {

inline constexpr std::size_t kDefaultSplitCap = 1'000'000;

// Cap from HEAPLAB_SPLIT_CAP when set and positive, else the default.
std::size_t split_cap_from_env();

struct Step {
  int target;
  ColorId color;
};

/// Edge-colored Hasse diagram over an indexed set of splits.
///
/// `up[s]` lists moves that transfer a minimal element of the filter into the
/// ideal (the raising direction), `down[s]` the reverse moves. A node is
/// `complete` when every such move from it lands inside the graph; operator
/// words are only evaluated exactly at nodes whose neighborhood is complete
/// to the word's length.
struct SplitGraph {
  int num_colors = 0;
  std::vector<std::vector<Step>> up;
  std::vector<std::vector<Step>> down;
  std::vector<char> complete;

  int size() const { return static_cast<int>(up.size()); }
  bool has_up(int s, ColorId c) const;
  bool has_down(int s, ColorId c) const;
};

/// All splits (F, I) of a finite poset, indexed in canonical order: by ideal
/// size, then lexicographically by sorted ideal members. Index 0 is (P, ∅).
class SplitLattice {
 public:
  struct Edge {
    int from;
    int to;
    ElementId element;
    ColorId color;
  };

  static SplitLattice enumerate(const FinitePoset& poset, std::size_t cap = kDefaultSplitCap);

  const FinitePoset& poset() const { return *poset_; }
  int size() const { return static_cast<int>(ideals_.size()); }
  const ElementSet& ideal(int s) const { return ideals_.at(s); }
  ElementSet filter(int s) const { return ideals_.at(s).complement(); }
  std::optional<int> find(const ElementSet& ideal) const;
  int index_of(const ElementSet& ideal) const;
  int bottom() const { return 0; }
  int top() const { return size() - 1; }

  const std::vector<Edge>& edges() const { return edges_; }
  const SplitGraph& graph() const { return graph_; }

  // Connected components of the Hasse graph; component id per split.
  std::vector<int> components() const;
  int num_components() const;

  std::string split_label(int s) const;

 private:
  std::shared_ptr<const FinitePoset> poset_;
  std::vector<ElementSet> ideals_;
  std::unordered_map<ElementSet, int> index_;
  std::vector<Edge> edges_;
  SplitGraph graph_;
};

// Δ_b[to, from] = |P_b ∩ (I_to − I_from)| − |P_b ∩ (I_from − I_to)|.
int delta(const FinitePoset& poset, ColorId b, const ElementSet& to_ideal,
          const ElementSet& from_ideal);

// Connected components of an arbitrary split graph.
std::vector<int> graph_components(const SplitGraph& g);

}  // namespace heaplab
