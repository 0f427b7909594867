#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "heaplab/heap.hpp"
#include "heaplab/operators.hpp"
#include "heaplab/poset.hpp"
#include "heaplab/splits.hpp"
#include "heaplab/weight_function.hpp"

namespace heaplab {

// υ_b or ψ_b together with the set it counts.
struct Census {
  int value = 0;
  bool has_extreme = false;        // P_b ∩ I has a maximum (resp. P_b ∩ F a minimum)
  ElementId extreme = -1;
  std::vector<ElementId> members;  // Υ_b (resp. Ψ_b)
  bool infinite_adjacent = false;  // finite posets: always false
};

// Finite posets. All of these need EC and throw PreconditionError otherwise.
Census upsilon_census(const FinitePoset& P, ColorId b, const ElementSet& ideal);
Census psi_census(const FinitePoset& P, ColorId b, const ElementSet& ideal);
int compute_upsilon(const FinitePoset& P, ColorId b, const ElementSet& ideal);
int compute_psi(const FinitePoset& P, ColorId b, const ElementSet& ideal);
int compute_mu(const FinitePoset& P, ColorId b, const ElementSet& ideal);
int compute_mu_prime(const FinitePoset& P, ColorId b, const ElementSet& ideal);

WeightFunction mu_weights(const SplitLattice& L);
WeightFunction mu_prime_weights(const SplitLattice& L);

// Periodic heaps, decided in closed form from the frontier and the distance matrix.
int periodic_upsilon(const PeriodicHeap& H, ColorId b, const PeriodicSplit& s);
int periodic_psi(const PeriodicHeap& H, ColorId b, const PeriodicSplit& s);
int periodic_mu(const PeriodicHeap& H, ColorId b, const PeriodicSplit& s);
int periodic_mu_prime(const PeriodicHeap& H, ColorId b, const PeriodicSplit& s);
WeightFunction mu_weights(const PeriodicHeap& H, const SplitBall& ball);

/// Finite core with upward-infinite single-file tails; a tail hangs above its
/// root and repeats its color cycle forever. Splits cut each tail after a
/// count in ℕ ∪ {∞}.
struct Tail {
  std::string name;
  ElementId root;
  std::vector<ColorId> cycle;
};

struct TailedPoset {
  FinitePoset core;
  std::vector<Tail> tails;
};

struct TailedSplit {
  ElementSet core_ideal;
  std::vector<std::optional<long>> tail_counts;  // nullopt = the whole tail is in I
};

void validate(const TailedPoset& P, const TailedSplit& s);
int compute_upsilon(const TailedPoset& P, ColorId b, const TailedSplit& s);
int compute_psi(const TailedPoset& P, ColorId b, const TailedSplit& s);
int compute_mu(const TailedPoset& P, ColorId b, const TailedSplit& s);

// Δ_b[to, from] on an indexed split domain.
using DeltaFn = std::function<int(ColorId b, int to, int from)>;
DeltaFn lattice_delta(const SplitLattice& L);
DeltaFn ball_delta(const PeriodicHeap& H, const SplitBall& ball);

struct WeightBase {
  int split;
  std::vector<Rational> values;  // one per color
};

// η_b(s) = η_b(s0) + 2Δ_b[s, s0] − Σ_{c∼b} Δ_c[s, s0], one base per component.
WeightFunction construct_weight(const ColorGraph& G, int num_splits,
                                const std::vector<int>& component,
                                const std::vector<WeightBase>& bases, const DeltaFn& delta);
WeightFunction construct_weight(const SplitLattice& L, const WeightBase& base);

struct WeightLawReport {
  bool holds = true;
  int from = -1;
  int to = -1;
  ColorId color = -1;       // b, the weight being tested
  ColorId edge_color = -1;  // edge law only
};

// Edge law on every colored edge of the graph.
WeightLawReport is_edge_weight(const WeightFunction& eta, const SplitGraph& graph,
                               const ColorGraph& G);
// Difference law on the given pairs (all same-component pairs when empty).
WeightLawReport is_component_weight(const WeightFunction& eta, const ColorGraph& G,
                                    const std::vector<int>& component, const DeltaFn& delta,
                                    const std::vector<std::pair<int, int>>& pairs = {});

std::set<Rational> eigenvalue_set(const WeightFunction& eta, const std::vector<int>& domain = {});

enum class MinusculeMode { upper, lower, full };

struct MinusculeReport {
  bool holds = true;
  std::string reason;
  ColorId color = -1;
  int split = -1;
  Rational value;
};

// Eigenvalue range and the ±1 biconditional; nodes outside `domain`
// (default: complete nodes) are skipped.
MinusculeReport check_minuscule_conditions(const WeightFunction& eta, const SplitGraph& graph,
                                           MinusculeMode mode, const std::vector<int>& domain = {});

// The edge weight function pinned by value -1 at every split with an up-edge of
// its color (or +1 at down-edges), if the pins agree. `free_colors` marks colors
// with no pinning split; their offset is 0.
struct ForcedWeight {
  bool exists = false;
  WeightFunction eta;
  std::vector<bool> free_colors;
};
ForcedWeight forced_edge_weight(const WeightFunction& edge_weight, const SplitGraph& graph,
                                Direction pinned_by);

// -1 / +1 / 0 according to up-edges, down-edges or neither; nullopt when a split
// has both an up- and a down-edge of one color.
std::optional<WeightFunction> rule_weight(const SplitGraph& graph, const std::vector<int>& domain = {});

// [X_a, Y_a] when it is diagonal on the domain, else nullopt.
std::optional<WeightFunction> commutator_weight(const OperatorContext& ctx,
                                                const std::vector<int>& domain = {});

struct UniquenessReport {
  bool applicable = false;
  std::string reason;
  bool equal = false;
  ColorId color = -1;
  int split = -1;
};

// Cor-style probe: an edge weight function pinned at -1 on up-edges or +1 on
// down-edges must equal μ when EC, AC, I2A hold and every color has an edge.
UniquenessReport uniqueness_probe(const SplitLattice& L, const WeightFunction& eta);

}  // namespace heaplab
