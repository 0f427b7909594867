#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "heaplab/common.hpp"
#include "heaplab/element_set.hpp"

namespace heaplab {

/// Finite simple graph of colors. Colors keep their input order.
class ColorGraph {
 public:
  ColorGraph() = default;
  ColorGraph(std::vector<std::string> names,
             const std::vector<std::pair<std::string, std::string>>& edges);

  static ColorGraph from_indices(int n, const std::vector<std::pair<ColorId, ColorId>>& edges);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(ColorId c) const { return names_.at(c); }
  const std::vector<std::string>& names() const { return names_; }
  ColorId id(std::string_view name) const;
  std::optional<ColorId> find(std::string_view name) const;

  bool adjacent(ColorId a, ColorId b) const { return adjacency_[a * size() + b]; }
  bool distant(ColorId a, ColorId b) const { return a != b && !adjacent(a, b); }
  const std::vector<ColorId>& neighbors(ColorId c) const { return neighbors_.at(c); }
  int degree(ColorId c) const { return static_cast<int>(neighbors_.at(c).size()); }

  // Generalized Cartan entry: 2 on the diagonal, -1 for adjacent, 0 for distant.
  int theta(ColorId a, ColorId b) const;

  std::vector<std::pair<ColorId, ColorId>> edges() const;

  // Induced subgraph on the kept colors; remap[c] is the new id or -1.
  ColorGraph induced(const std::vector<bool>& keep, std::vector<ColorId>& remap) const;

  friend bool operator==(const ColorGraph& a, const ColorGraph& b) {
    return a.names_ == b.names_ && a.adjacency_ == b.adjacency_;
  }

 private:
  void finish();

  std::vector<std::string> names_;
  std::vector<char> adjacency_;
  std::vector<std::vector<ColorId>> neighbors_;
  std::unordered_map<std::string, ColorId> index_;
};

struct ElementSpec {
  std::string id;
  std::string color;
};

// keep_graph accepts a non-surjective coloring without shrinking Γ.
enum class ColorMode { require_surjective, restrict_colors, keep_graph };

/// Immutable Γ-colored finite poset given by its Hasse diagram.
///
/// Construction validates acyclicity and transitive reduction of the cover
/// list and precomputes strict up/down sets, so every order query afterwards
/// is a bit test.
class FinitePoset {
 public:
  FinitePoset() = default;

  static FinitePoset build(ColorGraph graph, const std::vector<ElementSpec>& elements,
                           const std::vector<std::pair<std::string, std::string>>& covers,
                           ColorMode mode = ColorMode::require_surjective);

  // Elements named "0", "1", ... unless names are given.
  static FinitePoset from_indices(ColorGraph graph, std::vector<ColorId> colors,
                                  const std::vector<std::pair<ElementId, ElementId>>& covers,
                                  std::vector<std::string> names = {},
                                  ColorMode mode = ColorMode::require_surjective);

  int size() const { return static_cast<int>(colors_.size()); }
  const ColorGraph& graph() const { return graph_; }
  ColorId color(ElementId x) const { return colors_.at(x); }
  const std::vector<ColorId>& colors() const { return colors_; }
  const std::string& name(ElementId x) const { return names_.at(x); }
  const std::vector<std::string>& names() const { return names_; }
  ElementId id(std::string_view name) const;

  const std::vector<ElementId>& up_covers(ElementId x) const { return up_.at(x); }
  const std::vector<ElementId>& down_covers(ElementId x) const { return down_.at(x); }
  std::vector<std::pair<ElementId, ElementId>> covers() const;
  bool covers(ElementId x, ElementId y) const;
  bool neighbors(ElementId x, ElementId y) const { return covers(x, y) || covers(y, x); }

  bool less(ElementId x, ElementId y) const { return above_.at(x).contains(y); }
  bool leq(ElementId x, ElementId y) const { return x == y || less(x, y); }
  bool comparable(ElementId x, ElementId y) const { return leq(x, y) || leq(y, x); }

  const ElementSet& strictly_above(ElementId x) const { return above_.at(x); }
  const ElementSet& strictly_below(ElementId x) const { return below_.at(x); }
  const ElementSet& color_class(ColorId c) const { return by_color_.at(c); }

  // {z : x < z < y}; throws PreconditionError unless x < y.
  ElementSet open_interval(ElementId x, ElementId y) const;

  // Pairs x < y of color c with no c-colored element strictly between them.
  std::vector<std::pair<ElementId, ElementId>> consecutive_pairs(ColorId c) const;

  bool is_ideal(const ElementSet& s) const;
  bool is_filter(const ElementSet& s) const;
  ElementSet empty_set() const { return ElementSet(size()); }
  ElementSet all() const { return ElementSet::full(size()); }

  // Reverses every cover; names and colors are kept.
  FinitePoset dual() const;

  // True when the input coloring missed some colors and the graph was shrunk.
  bool colors_restricted() const { return restricted_; }

 private:
  void index_and_close(const std::vector<std::pair<ElementId, ElementId>>& covers);

  ColorGraph graph_;
  std::vector<std::string> names_;
  std::vector<ColorId> colors_;
  std::unordered_map<std::string, ElementId> index_;
  std::vector<std::vector<ElementId>> up_, down_;
  std::vector<ElementSet> above_, below_;
  std::vector<ElementSet> by_color_;
  bool restricted_ = false;
};

}  // namespace heaplab
