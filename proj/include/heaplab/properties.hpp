#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heaplab/heap.hpp"
#include "heaplab/poset.hpp"

namespace heaplab {

enum class Property { EC, ND, NA, I3ND, AC, I2A, MxkGA, MnkLA };

struct PropertySpec {
  Property property;
  int k = 0;  // census bound, only for MxkGA / MnkLA

  std::string name() const;
  friend bool operator==(const PropertySpec&, const PropertySpec&) = default;
};

// Accepts "EC", "ND", "NA", "I3ND", "AC", "I2A", "Mx<k>GA", "Mn<k>LA".
PropertySpec parse_property(const std::string& text);

// The eight properties with k = 1, in table order.
std::vector<PropertySpec> all_properties(int k = 1);

// Failure evidence. `elements` holds the pair, cover or 3-chain; census
// properties fill `extreme` and `offenders` instead.
struct Witness {
  std::vector<ElementId> elements;
  ElementId extreme = -1;
  std::vector<ElementId> offenders;
  int census = -1;  // I2A: adjacent-colored count in the open interval
};

struct PropertyReport {
  PropertySpec spec;
  bool holds = true;
  std::optional<Witness> witness;
  std::vector<std::string> names;  // element names, indexed like the checked poset
  // Window protocol only.
  bool windowed = false;
  bool windows_agree = true;
};

// Exactness masks restrict which elements may serve as color extremes for the
// census properties; an absent mask means the poset is taken as is.
struct ExtremeMask {
  const std::vector<char>* up_exact = nullptr;
  const std::vector<char>* down_exact = nullptr;
};

PropertyReport check_property(const FinitePoset& P, const PropertySpec& spec,
                              const ExtremeMask& mask = {});

// Window protocol: layers [0, W-1] and [0, W]; the second run decides and the
// agreement flag records whether the two runs matched.
PropertyReport check_property(const PeriodicHeap& H, const PropertySpec& spec, int window = 3);

// Same protocol on the filter of `split`, cut `window` layers above its highest cutoff.
PropertyReport check_filter_property(const PeriodicHeap& H, const PeriodicSplit& split,
                                     const PropertySpec& spec, int window = 3);

struct ImplicationReport {
  bool consistent = true;
  std::vector<std::string> contradictions;
};

// I2A ⇒ ND ∧ I3ND and NA ⇒ ND, evaluated on the instance.
ImplicationReport implication_checks(const FinitePoset& P);

}  // namespace heaplab
