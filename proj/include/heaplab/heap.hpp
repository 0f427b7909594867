#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "heaplab/poset.hpp"
#include "heaplab/splits.hpp"

namespace heaplab {

using Layer = std::int64_t;

inline constexpr Layer kNegInf = std::numeric_limits<Layer>::min();
inline constexpr Layer kPosInf = std::numeric_limits<Layer>::max();
inline constexpr Layer kUnreachable = std::numeric_limits<Layer>::max();

inline bool is_finite(Layer v) { return v != kNegInf && v != kPosInf; }

struct CellSpec {
  std::string id;
  std::string color;
};

struct ShiftedCoverSpec {
  std::string from;
  std::string to;
  Layer shift;
};

struct ShiftedCover {
  int from;
  int to;
  Layer shift;
};

/// Ideal of a periodic heap, one cutoff per cell: I = {(u,n) : n <= frontier[u]}.
/// kNegInf puts the whole orbit of u in the filter, kPosInf in the ideal.
struct PeriodicSplit {
  std::vector<Layer> frontier;

  friend bool operator==(const PeriodicSplit&, const PeriodicSplit&) = default;
  friend auto operator<=>(const PeriodicSplit&, const PeriodicSplit&) = default;
  PeriodicSplit shifted(Layer by) const;
};

struct PeriodicSplitHash {
  std::size_t operator()(const PeriodicSplit& s) const noexcept;
};

// Finite slice of a periodic heap with exactness flags per element.
//
// An element is down-exact when every element below it (in the heap, or in
// the filter for filter windows) lies in the window; up-exact dually. Census
// properties only trust extreme elements that are exact in their direction.
struct Window {
  FinitePoset poset;
  std::vector<std::pair<int, Layer>> origin;  // (cell, layer) per element
  std::vector<char> down_exact;
  std::vector<char> up_exact;
  Layer n_min = 0;
  Layer n_max = 0;

  // Boundary = within the maximum cover shift (at least one layer) of either end.
  std::vector<char> boundary;
};

enum class Direction { up, down };

struct SplitMove {
  ColorId color;
  Direction direction;
  int cell;
  PeriodicSplit split;
};

struct SplitBall;

/// ℤ-periodic Γ-colored poset: a finite quiver of cells with shifted covers
/// (u, v, k) meaning (u, n) -> (v, n + k) for every n.
///
/// Shifts must be non-negative, so layers are monotone along covers and every
/// layer window is convex. Every cell must lie on a quiver cycle of total
/// shift 1 so that its translates form a chain; together with positive cycle
/// shifts this makes (u,n) < (v,m) exactly when m - n >= distance(u, v).
class PeriodicHeap {
 public:
  static PeriodicHeap build(ColorGraph graph, const std::vector<CellSpec>& cells,
                            const std::vector<ShiftedCoverSpec>& covers);

  const ColorGraph& graph() const { return graph_; }
  int num_cells() const { return static_cast<int>(names_.size()); }
  const std::string& cell_name(int u) const { return names_.at(u); }
  int cell_id(const std::string& name) const;
  ColorId color(int u) const { return colors_.at(u); }
  const std::vector<ShiftedCover>& covers() const { return covers_; }
  const std::vector<ShiftedCover>& up_covers(int u) const { return up_.at(u); }
  const std::vector<ShiftedCover>& down_covers(int u) const { return down_.at(u); }
  Layer max_shift() const { return max_shift_; }

  // Minimum total shift over nonempty quiver paths u -> v, or kUnreachable.
  Layer distance(int u, int v) const { return dist_[u * num_cells() + v]; }
  // Strict heap order between (u, n) and (v, m).
  bool less(int u, Layer n, int v, Layer m) const;
  bool comparable(int u, Layer n, int v, Layer m) const;

  // Every color of the graph occurs on some cell.
  bool is_full_heap() const;

  // Exact decisions of EC and AC from the distance matrix.
  bool equal_colors_comparable() const;
  bool adjacent_colors_comparable() const;

  Window materialize_window(Layer n_min, Layer n_max) const;
  // The filter of `split`, cut to layers <= top (and >= bottom for -inf cells).
  Window materialize_filter_window(const PeriodicSplit& split, Layer bottom, Layer top) const;

  bool is_valid(const PeriodicSplit& s) const;
  void validate(const PeriodicSplit& s) const;
  PeriodicSplit uniform_split(Layer value) const;

  std::vector<SplitMove> split_neighbors(const PeriodicSplit& s) const;
  SplitBall ball(const PeriodicSplit& seed, int radius) const;

  std::string element_name(int cell, Layer n) const { return names_.at(cell) + "@" + std::to_string(n); }

 private:
  Window make_window(Layer n_min, Layer n_max, const PeriodicSplit* filter, Layer bottom) const;

  ColorGraph graph_;
  std::vector<std::string> names_;
  std::vector<ColorId> colors_;
  std::vector<ShiftedCover> covers_;
  std::vector<std::vector<ShiftedCover>> up_, down_;
  std::vector<Layer> dist_;
  Layer max_shift_ = 0;
};

/// Splits within `radius` Hasse steps of a seed, with the induced split graph.
struct SplitBall {
  std::vector<PeriodicSplit> splits;  // canonical: by distance, then frontier order
  std::vector<int> distance;
  SplitGraph graph;
  int radius = 0;

  // Splits whose words of the given length stay inside the ball.
  std::vector<int> interior(int word_length) const;
  int index_of(const PeriodicSplit& s) const;
};

// Δ_b between periodic splits; throws PreconditionError when the symmetric
// difference is infinite (different components).
int periodic_delta(const PeriodicHeap& heap, ColorId b, const PeriodicSplit& to,
                   const PeriodicSplit& from);

enum class FrontierKind { neg_inf, finite, pos_inf };

struct PeriodicComponent {
  std::vector<FrontierKind> pattern;
  PeriodicSplit representative;
};

// Components of FI(H): one per realizable pattern of sentinel/finite cells.
std::vector<PeriodicComponent> periodic_components(const PeriodicHeap& heap,
                                                   std::size_t cap = 100000);

FrontierKind frontier_kind(Layer v);
bool same_component(const PeriodicSplit& a, const PeriodicSplit& b);

}  // namespace heaplab
