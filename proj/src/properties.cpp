#include "heaplab/properties.hpp"

#include <algorithm>
#include <regex>

namespace heaplab {

std::string PropertySpec::name() const {
  switch (property) {
    case Property::EC: return "EC";
    case Property::ND: return "ND";
    case Property::NA: return "NA";
    case Property::I3ND: return "I3ND";
    case Property::AC: return "AC";
    case Property::I2A: return "I2A";
    case Property::MxkGA: return "Mx" + std::to_string(k) + "GA";
    case Property::MnkLA: return "Mn" + std::to_string(k) + "LA";
  }
  return "?";
}

PropertySpec parse_property(const std::string& text) {
  static const std::vector<std::pair<std::string, Property>> plain{
      {"EC", Property::EC},     {"ND", Property::ND}, {"NA", Property::NA},
      {"I3ND", Property::I3ND}, {"AC", Property::AC}, {"I2A", Property::I2A}};
  for (const auto& [n, p] : plain)
    if (text == n) return {p, 0};
  static const std::regex census(R"((Mx|Mn)(\d+)(GA|LA))");
  std::smatch m;
  if (std::regex_match(text, m, census)) {
    const bool mx = m[1] == "Mx";
    if ((mx && m[3] != "GA") || (!mx && m[3] != "LA"))
      throw InputError("unknown property '" + text + "'");
    const int k = std::stoi(m[2]);
    if (k < 1) throw InputError("census bound must be at least 1 in '" + text + "'");
    return {mx ? Property::MxkGA : Property::MnkLA, k};
  }
  if (text == "MxkGA" || text == "MnkLA") throw InputError("census property '" + text + "' needs k");
  throw InputError("unknown property '" + text + "'");
}

std::vector<PropertySpec> all_properties(int k) {
  return {{Property::EC, 0}, {Property::ND, 0}, {Property::NA, 0},    {Property::I3ND, 0},
          {Property::AC, 0}, {Property::I2A, 0}, {Property::MxkGA, k}, {Property::MnkLA, k}};
}

namespace {

std::optional<Witness> incomparable_pair(const FinitePoset& P, bool adjacent_colors) {
  const ColorGraph& G = P.graph();
  for (ElementId x = 0; x < P.size(); ++x)
    for (ElementId y = x + 1; y < P.size(); ++y) {
      const bool relevant = adjacent_colors ? G.adjacent(P.color(x), P.color(y))
                                            : P.color(x) == P.color(y);
      if (relevant && !P.comparable(x, y)) return Witness{{x, y}};
    }
  return std::nullopt;
}

std::optional<Witness> bad_cover(const FinitePoset& P, bool need_adjacent) {
  const ColorGraph& G = P.graph();
  for (ElementId x = 0; x < P.size(); ++x)
    for (ElementId y : P.up_covers(x)) {
      const ColorId a = P.color(x), b = P.color(y);
      const bool bad = need_adjacent ? !G.adjacent(a, b) : a == b;
      if (bad) return Witness{{x, y}};
    }
  return std::nullopt;
}

std::optional<Witness> i3nd(const FinitePoset& P) {
  for (ElementId x = 0; x < P.size(); ++x)
    for (ElementId y : P.up_covers(x))
      for (ElementId z : P.up_covers(y)) {
        if (P.color(x) != P.color(z)) continue;
        if (P.open_interval(x, z).count() == 1) return Witness{{x, y, z}};
      }
  return std::nullopt;
}

std::optional<Witness> i2a(const FinitePoset& P) {
  std::vector<std::pair<ElementId, ElementId>> pairs;
  for (ColorId c = 0; c < P.graph().size(); ++c)
    for (const auto& pr : P.consecutive_pairs(c)) pairs.push_back(pr);
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [x, y] : pairs) {
    const ColorId a = P.color(x);
    int census = 0;
    P.open_interval(x, y).for_each([&](int z) {
      if (P.graph().adjacent(P.color(z), a)) ++census;
    });
    if (census != 2) {
      Witness w{{x, y}};
      w.census = census;
      return w;
    }
  }
  return std::nullopt;
}

std::optional<Witness> census(const FinitePoset& P, int k, bool maxima, const ExtremeMask& mask) {
  const ColorGraph& G = P.graph();
  const std::vector<char>* exact = maxima ? mask.up_exact : mask.down_exact;
  for (ElementId x = 0; x < P.size(); ++x) {
    if (exact && !(*exact)[x]) continue;
    const ElementSet& beyond = maxima ? P.strictly_above(x) : P.strictly_below(x);
    if (beyond.intersects(P.color_class(P.color(x)))) continue;  // not a color extreme
    std::vector<ElementId> offenders;
    beyond.for_each([&](int z) {
      if (G.adjacent(P.color(z), P.color(x))) offenders.push_back(z);
    });
    if (static_cast<int>(offenders.size()) > k) {
      Witness w;
      w.extreme = x;
      w.offenders = std::move(offenders);
      return w;
    }
  }
  return std::nullopt;
}

}  // namespace

PropertyReport check_property(const FinitePoset& P, const PropertySpec& spec,
                              const ExtremeMask& mask) {
  if ((spec.property == Property::MxkGA || spec.property == Property::MnkLA) && spec.k < 1)
    throw InputError("census property " + spec.name() + " needs k >= 1");
  PropertyReport r;
  r.spec = spec;
  switch (spec.property) {
    case Property::EC: r.witness = incomparable_pair(P, false); break;
    case Property::AC: r.witness = incomparable_pair(P, true); break;
    case Property::ND: r.witness = bad_cover(P, false); break;
    case Property::NA: r.witness = bad_cover(P, true); break;
    case Property::I3ND: r.witness = i3nd(P); break;
    case Property::I2A: r.witness = i2a(P); break;
    case Property::MxkGA: r.witness = census(P, spec.k, true, mask); break;
    case Property::MnkLA: r.witness = census(P, spec.k, false, mask); break;
  }
  r.holds = !r.witness.has_value();
  r.names = P.names();
  return r;
}

namespace {

PropertyReport windowed(const Window& small, const Window& large, const PropertySpec& spec) {
  const auto a = check_property(small.poset, spec, {&small.up_exact, &small.down_exact});
  auto b = check_property(large.poset, spec, {&large.up_exact, &large.down_exact});
  b.windowed = true;
  b.windows_agree = a.holds == b.holds;
  return b;
}

}  // namespace

PropertyReport check_property(const PeriodicHeap& H, const PropertySpec& spec, int window) {
  if (window < 1) throw InputError("window must be at least 1");
  return windowed(H.materialize_window(0, window - 1), H.materialize_window(0, window), spec);
}

PropertyReport check_filter_property(const PeriodicHeap& H, const PeriodicSplit& split,
                                     const PropertySpec& spec, int window) {
  if (window < 1) throw InputError("window must be at least 1");
  H.validate(split);
  Layer lo = kPosInf, hi = kNegInf;
  bool open_below = false;
  for (Layer f : split.frontier) {
    if (f == kNegInf) open_below = true;
    if (is_finite(f)) {
      lo = std::min(lo, f + 1);
      hi = std::max(hi, f);
    }
  }
  if (lo == kPosInf) {
    if (!open_below) {  // empty filter: every property holds vacuously
      PropertyReport r;
      r.spec = spec;
      r.windowed = true;
      return r;
    }
    lo = 0;
    hi = 0;
  }
  auto make = [&](int w) {
    const Layer bottom = open_below ? lo - w : lo;
    return H.materialize_filter_window(split, bottom, hi + w);
  };
  return windowed(make(window), make(window + 1), spec);
}

ImplicationReport implication_checks(const FinitePoset& P) {
  ImplicationReport r;
  const bool nd = check_property(P, {Property::ND}).holds;
  const bool na = check_property(P, {Property::NA}).holds;
  const bool i3 = check_property(P, {Property::I3ND}).holds;
  const bool i2 = check_property(P, {Property::I2A}).holds;
  if (i2 && !nd) r.contradictions.push_back("I2A holds but ND fails");
  if (i2 && !i3) r.contradictions.push_back("I2A holds but I3ND fails");
  if (na && !nd) r.contradictions.push_back("NA holds but ND fails");
  r.consistent = r.contradictions.empty();
  return r;
}

}  // namespace heaplab
