#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "heaplab/heap.hpp"
#include "heaplab/operators.hpp"
#include "heaplab/poset.hpp"
#include "heaplab/properties.hpp"
#include "heaplab/splits.hpp"
#include "heaplab/weights.hpp"

namespace heaplab {

enum class AlgebraKind { n_plus, n_minus, b_plus_derived, b_minus_derived, g_derived };

// "n-plus", "n-minus", "b-plus", "b-minus", "g-prime".
std::string algebra_name(AlgebraKind k);
AlgebraKind parse_algebra(const std::string& text);
std::vector<RelationSet> relation_sets(AlgebraKind k);

struct ClassificationReport {
  bool d_complete = false;
  bool minuscule = false;
  std::vector<PropertyReport> property_reports;  // EC, NA, AC, I2A, Mx1GA, Mn1LA
  std::vector<std::string> witnesses;            // one line per failing property
};

ClassificationReport classify_poset(const FinitePoset& P);
ClassificationReport classify_poset(const PeriodicHeap& H, int window = 3);
// The filter of a periodic split, through the filter-window protocol.
ClassificationReport classify_filter(const PeriodicHeap& H, const PeriodicSplit& split,
                                     int window = 3);

// Human-readable failure line, e.g. "Mn1LA: z; offenders u, v, q".
std::string describe_witness(const PropertyReport& r);

struct RepresentationReport {
  AlgebraKind kind{};
  bool refused = false;
  std::string refusal;

  int num_splits = 0;
  bool interior_only = false;  // periodic balls: only the interior was checked
  std::vector<int> domain;     // splits where relations were evaluated

  std::optional<WeightFunction> weights;  // μ for the b′ and g′ kinds
  std::vector<RelationReport> relations;
  std::optional<NilpotencyReport> nilpotency;
  std::optional<MinusculeReport> minuscule;
  std::set<Rational> eigenvalues;

  bool relations_hold() const;
  bool holds() const;
};

RepresentationReport build_representation(const SplitLattice& L, AlgebraKind kind,
                                          bool parallel = false);
// Ball of `radius` around `seed`; relations are checked where every word stays inside.
RepresentationReport build_representation(const PeriodicHeap& H, const PeriodicSplit& seed,
                                          int radius, AlgebraKind kind, bool parallel = false);

// ---- equivalence harness ----

// One equivalence (or implication) with both sides evaluated independently.
struct CheckOutcome {
  std::string name;
  bool applicable = true;  // hypotheses of the statement hold
  bool agree = true;
  std::string detail;      // filled on disagreement
};

struct EquivalenceReport {
  std::vector<CheckOutcome> checks;
  bool all_agree() const;
  const CheckOutcome* find(const std::string& name) const;
};

// Check names, in report order.
const std::vector<std::string>& equivalence_names();

EquivalenceReport verify_equivalences(const FinitePoset& P, std::size_t cap = kDefaultSplitCap);

// Order-dual metamorphic checks: properties, operators and representations.
EquivalenceReport verify_duality(const FinitePoset& P, std::size_t cap = kDefaultSplitCap);

// Weight-function laws on seeded constructed (and perturbed) weight functions.
struct WeightLawCounts {
  long constructed = 0;
  long perturbed = 0;
  long law_disagreements = 0;     // edge verdict != component verdict
  long transitivity_checked = 0;
  long transitivity_failures = 0;
  long uniqueness_applicable = 0;
  long uniqueness_failures = 0;
  std::string first_failure;

  WeightLawCounts& operator+=(const WeightLawCounts& o);
};

WeightLawCounts weight_law_suite(const FinitePoset& P, std::uint64_t seed, int samples = 4,
                                 std::size_t cap = kDefaultSplitCap);

// ---- instance stream ----

struct Instance {
  FinitePoset poset;
  std::string label;  // e.g. "n4-c2-#17"
};

enum class GeneratorMode { exhaustive, random };

struct GeneratorConfig {
  int max_elements = 4;
  int max_colors = 2;
  GeneratorMode mode = GeneratorMode::exhaustive;
  std::uint64_t seed = 1;
  long count = 10000;       // random mode
  bool exact_size = true;   // exhaustive: only posets with exactly max_elements elements
};

inline constexpr int kExhaustiveElementLimit = 6;

// Exhaustive: every naturally labeled poset on {0..n-1}, every surjective
// coloring with c <= max_colors colors, every simple graph on those colors.
// Random: `count` instances with 1..max_elements elements, seeded.
std::vector<Instance> generate_instances(const GeneratorConfig& cfg);

// Classes used to spread weight-law samples.
std::string instance_class(const FinitePoset& P);

struct HarnessSummary {
  long instances = 0;
  std::map<std::string, long> agreements;
  std::map<std::string, long> disagreements;
  std::map<std::string, long> applicable;
  std::map<std::string, WeightLawCounts> weight_laws;  // by instance class
  long guard_cases = 0;  // instances where the nilpotency guard was exercised
  struct Failure {
    std::string label;
    std::string check;
    std::string detail;
    std::optional<FinitePoset> poset;
  };
  std::vector<Failure> failures;  // first few only

  long total_disagreements() const;
};

struct HarnessOptions {
  bool duality = true;
  bool weight_laws = true;
  int weight_samples = 4;
  long min_class_samples = 0;  // top up each instance class to this many constructed samples
  int jobs = 1;
  std::size_t max_failures = 5;
  std::uint64_t seed = 1;
};

// Evaluates every instance; results are merged in instance order, so the
// summary does not depend on the job count.
HarnessSummary run_harness(const std::vector<Instance>& instances, const HarnessOptions& opt);

}  // namespace heaplab
