#include "heaplab/weights.hpp"

#include <algorithm>
#include <numeric>

#include "heaplab/properties.hpp"

namespace heaplab {

namespace {

void require_ec(const FinitePoset& P) {
  if (!check_property(P, {Property::EC}).holds)
    throw PreconditionError("the census weights need EC (elements with equal colors comparable)");
}

// Unique maximal (or minimal) element of `pool`; PreconditionError on ties.
ElementId unique_extreme(const FinitePoset& P, const ElementSet& pool, bool maximum) {
  ElementId found = -1;
  pool.for_each([&](int y) {
    const ElementSet& beyond = maximum ? P.strictly_above(y) : P.strictly_below(y);
    if (beyond.intersects(pool)) return;
    if (found >= 0) throw PreconditionError("color extreme is not unique (EC fails)");
    found = y;
  });
  return found;
}

Census census_unchecked(const FinitePoset& P, ColorId b, const ElementSet& ideal, bool upper) {
  Census c;
  const ElementSet side = upper ? ideal : ideal.complement();
  const ElementSet pool = P.color_class(b) & side;
  if (pool.empty()) {
    c.value = 1;
    return c;
  }
  c.has_extreme = true;
  c.extreme = unique_extreme(P, pool, upper);
  const ElementSet beyond = (upper ? P.strictly_above(c.extreme) : P.strictly_below(c.extreme)) & side;
  beyond.for_each([&](int z) {
    if (P.graph().adjacent(P.color(z), b)) c.members.push_back(z);
  });
  c.value = static_cast<int>(c.members.size());
  return c;
}

int mu_unchecked(const FinitePoset& P, ColorId b, const ElementSet& ideal) {
  if (P.color_class(b).intersects(ideal)) return 1 - census_unchecked(P, b, ideal, true).value;
  return -1 + census_unchecked(P, b, ideal, false).value;
}

int mu_prime_unchecked(const FinitePoset& P, ColorId b, const ElementSet& ideal) {
  if (P.color_class(b).subset_of(ideal)) return 1 - census_unchecked(P, b, ideal, true).value;
  return -1 + census_unchecked(P, b, ideal, false).value;
}

}  // namespace

Census upsilon_census(const FinitePoset& P, ColorId b, const ElementSet& ideal) {
  require_ec(P);
  return census_unchecked(P, b, ideal, true);
}

Census psi_census(const FinitePoset& P, ColorId b, const ElementSet& ideal) {
  require_ec(P);
  return census_unchecked(P, b, ideal, false);
}

int compute_upsilon(const FinitePoset& P, ColorId b, const ElementSet& ideal) {
  return upsilon_census(P, b, ideal).value;
}

int compute_psi(const FinitePoset& P, ColorId b, const ElementSet& ideal) {
  return psi_census(P, b, ideal).value;
}

int compute_mu(const FinitePoset& P, ColorId b, const ElementSet& ideal) {
  require_ec(P);
  return mu_unchecked(P, b, ideal);
}

int compute_mu_prime(const FinitePoset& P, ColorId b, const ElementSet& ideal) {
  require_ec(P);
  return mu_prime_unchecked(P, b, ideal);
}

WeightFunction mu_weights(const SplitLattice& L) {
  const FinitePoset& P = L.poset();
  require_ec(P);
  WeightFunction w(P.graph().size(), L.size());
  for (ColorId b = 0; b < P.graph().size(); ++b)
    for (int s = 0; s < L.size(); ++s) w.at(b, s) = mu_unchecked(P, b, L.ideal(s));
  return w;
}

WeightFunction mu_prime_weights(const SplitLattice& L) {
  const FinitePoset& P = L.poset();
  require_ec(P);
  WeightFunction w(P.graph().size(), L.size());
  for (ColorId b = 0; b < P.graph().size(); ++b)
    for (int s = 0; s < L.size(); ++s) w.at(b, s) = mu_prime_unchecked(P, b, L.ideal(s));
  return w;
}

namespace {

struct PeriodicCensus {
  bool has_extreme = false;
  int value = 1;
};

// Ideal side: elements (v, m) with m <= f(v); filter side: m > f(v).
PeriodicCensus periodic_census(const PeriodicHeap& H, ColorId b, const PeriodicSplit& s,
                               bool upper) {
  H.validate(s);
  const ColorGraph& G = H.graph();
  const Layer empty_side = upper ? kNegInf : kPosInf;
  const Layer open_side = upper ? kPosInf : kNegInf;
  std::vector<int> cand;
  for (int u = 0; u < H.num_cells(); ++u) {
    if (H.color(u) != b) continue;
    const Layer f = s.frontier[u];
    if (f == open_side) return {};  // unbounded toward the extreme: no maximum/minimum
    if (f != empty_side) cand.push_back(u);
  }
  if (cand.empty()) return {};
  auto layer_of = [&](int u) { return upper ? s.frontier[u] : s.frontier[u] + 1; };
  int y = -1;
  for (int u : cand) {
    bool extreme = true;
    for (int v : cand) {
      if (v == u) continue;
      const bool beyond = upper ? H.less(u, layer_of(u), v, layer_of(v))
                                : H.less(v, layer_of(v), u, layer_of(u));
      if (beyond || !H.comparable(u, layer_of(u), v, layer_of(v))) extreme = false;
    }
    if (extreme) {
      if (y >= 0) throw PreconditionError("color extreme is not unique (EC fails)");
      y = u;
    }
  }
  if (y < 0) throw PreconditionError("color extreme is not unique (EC fails)");
  const Layer n = layer_of(y);

  PeriodicCensus out;
  out.has_extreme = true;
  long long finite = 0;
  bool infinite = false;
  for (ColorId c : G.neighbors(b)) {
    bool color_infinite = false;
    long long count = 0;
    for (int v = 0; v < H.num_cells(); ++v) {
      if (H.color(v) != c) continue;
      const Layer d = upper ? H.distance(y, v) : H.distance(v, y);
      if (d == kUnreachable) continue;
      const Layer f = s.frontier[v];
      if (f == open_side) {
        color_infinite = true;
      } else if (f != empty_side) {
        // Layers m with (v, m) beyond y on the chosen side of the split.
        const Layer k = upper ? f - (n + d) + 1 : (n - d) - f;
        count += std::max<Layer>(0, k);
      }
    }
    if (color_infinite)
      infinite = true;
    else
      finite += count;
  }
  out.value = static_cast<int>(finite) + (infinite ? 1 : 0);
  return out;
}

}  // namespace

int periodic_upsilon(const PeriodicHeap& H, ColorId b, const PeriodicSplit& s) {
  return periodic_census(H, b, s, true).value;
}

int periodic_psi(const PeriodicHeap& H, ColorId b, const PeriodicSplit& s) {
  return periodic_census(H, b, s, false).value;
}

namespace {

bool ideal_meets(const PeriodicHeap& H, ColorId b, const PeriodicSplit& s) {
  for (int u = 0; u < H.num_cells(); ++u)
    if (H.color(u) == b && s.frontier[u] != kNegInf) return true;
  return false;
}

bool filter_meets(const PeriodicHeap& H, ColorId b, const PeriodicSplit& s) {
  for (int u = 0; u < H.num_cells(); ++u)
    if (H.color(u) == b && s.frontier[u] != kPosInf) return true;
  return false;
}

}  // namespace

int periodic_mu(const PeriodicHeap& H, ColorId b, const PeriodicSplit& s) {
  if (ideal_meets(H, b, s)) return 1 - periodic_upsilon(H, b, s);
  return -1 + periodic_psi(H, b, s);
}

int periodic_mu_prime(const PeriodicHeap& H, ColorId b, const PeriodicSplit& s) {
  if (!filter_meets(H, b, s)) return 1 - periodic_upsilon(H, b, s);
  return -1 + periodic_psi(H, b, s);
}

WeightFunction mu_weights(const PeriodicHeap& H, const SplitBall& ball) {
  if (!H.equal_colors_comparable())
    throw PreconditionError("the census weights need EC (elements with equal colors comparable)");
  WeightFunction w(H.graph().size(), static_cast<int>(ball.splits.size()));
  for (ColorId b = 0; b < H.graph().size(); ++b)
    for (int s = 0; s < w.num_splits; ++s) w.at(b, s) = periodic_mu(H, b, ball.splits[s]);
  return w;
}

// ---- tailed posets ----

namespace {

// Element of a tailed poset: core element (tail = -1) or position >= 1 on a tail.
struct TElem {
  int tail;
  long index;
  friend bool operator==(const TElem&, const TElem&) = default;
};

ColorId tcolor(const TailedPoset& P, const TElem& e) {
  if (e.tail < 0) return P.core.color(static_cast<ElementId>(e.index));
  const auto& cyc = P.tails[e.tail].cycle;
  return cyc[(e.index - 1) % static_cast<long>(cyc.size())];
}

bool tless(const TailedPoset& P, const TElem& x, const TElem& y) {
  if (x.tail < 0 && y.tail < 0) return P.core.less(x.index, y.index);
  if (x.tail < 0) return P.core.leq(x.index, P.tails[y.tail].root);
  if (y.tail < 0) return false;
  return x.tail == y.tail && x.index < y.index;
}

bool tail_has_color(const Tail& t, ColorId c) {
  return std::find(t.cycle.begin(), t.cycle.end(), c) != t.cycle.end();
}

}  // namespace

void validate(const TailedPoset& P, const TailedSplit& s) {
  if (s.tail_counts.size() != P.tails.size()) throw InputError("tail count mismatch");
  if (!P.core.is_ideal(s.core_ideal)) throw InputError("core part is not an ideal");
  for (std::size_t t = 0; t < P.tails.size(); ++t) {
    const auto& n = s.tail_counts[t];
    if (n && *n < 0) throw InputError("negative tail count");
    const bool nonzero = !n || *n > 0;
    if (nonzero && !s.core_ideal.contains(P.tails[t].root))
      throw InputError("tail '" + P.tails[t].name + "' enters the ideal above a filter root");
  }
}

int compute_upsilon(const TailedPoset& P, ColorId b, const TailedSplit& s) {
  validate(P, s);
  std::vector<TElem> pool;
  s.core_ideal.for_each([&](int x) {
    if (P.core.color(x) == b) pool.push_back({-1, x});
  });
  for (int t = 0; t < static_cast<int>(P.tails.size()); ++t) {
    const auto& n = s.tail_counts[t];
    if (!n) {
      if (tail_has_color(P.tails[t], b)) return 1;  // unbounded color class in I
      continue;
    }
    for (long i = *n; i >= 1; --i)
      if (tcolor(P, {t, i}) == b) {
        pool.push_back({t, i});
        break;
      }
  }
  if (pool.empty()) return 1;
  std::vector<TElem> maxima;
  for (const auto& y : pool)
    if (std::none_of(pool.begin(), pool.end(), [&](const TElem& z) { return tless(P, y, z); }))
      maxima.push_back(y);
  if (maxima.size() != 1) throw PreconditionError("color extreme is not unique (EC fails)");
  const TElem y = maxima[0];

  const ColorGraph& G = P.core.graph();
  int finite = 0;
  bool infinite = false;
  for (ColorId c : G.neighbors(b)) {
    int count = 0;
    bool inf = false;
    s.core_ideal.for_each([&](int z) {
      if (P.core.color(z) == c && tless(P, y, {-1, z})) ++count;
    });
    for (int t = 0; t < static_cast<int>(P.tails.size()); ++t) {
      const auto& n = s.tail_counts[t];
      if (!n) {
        if (tail_has_color(P.tails[t], c) && tless(P, y, {t, 1'000'000'000L})) inf = true;
        continue;
      }
      for (long i = 1; i <= *n; ++i)
        if (tcolor(P, {t, i}) == c && tless(P, y, {t, i})) ++count;
    }
    if (inf)
      infinite = true;
    else
      finite += count;
  }
  return finite + (infinite ? 1 : 0);
}

int compute_psi(const TailedPoset& P, ColorId b, const TailedSplit& s) {
  validate(P, s);
  const ElementSet core_filter = s.core_ideal.complement();
  std::vector<TElem> pool;
  core_filter.for_each([&](int x) {
    if (P.core.color(x) == b) pool.push_back({-1, x});
  });
  for (int t = 0; t < static_cast<int>(P.tails.size()); ++t) {
    const auto& n = s.tail_counts[t];
    if (!n || !tail_has_color(P.tails[t], b)) continue;
    for (long i = *n + 1;; ++i)
      if (tcolor(P, {t, i}) == b) {
        pool.push_back({t, i});
        break;
      }
  }
  if (pool.empty()) return 1;
  std::vector<TElem> minima;
  for (const auto& y : pool)
    if (std::none_of(pool.begin(), pool.end(), [&](const TElem& z) { return tless(P, z, y); }))
      minima.push_back(y);
  if (minima.size() != 1) throw PreconditionError("color extreme is not unique (EC fails)");
  const TElem y = minima[0];
  // Everything below an element is finite here: tails only grow upward.
  const ColorGraph& G = P.core.graph();
  int count = 0;
  core_filter.for_each([&](int z) {
    if (G.adjacent(P.core.color(z), b) && tless(P, {-1, z}, y)) ++count;
  });
  if (y.tail >= 0) {
    const auto& n = s.tail_counts[y.tail];
    for (long i = *n + 1; i < y.index; ++i)
      if (G.adjacent(tcolor(P, {y.tail, i}), b)) ++count;
  }
  return count;
}

int compute_mu(const TailedPoset& P, ColorId b, const TailedSplit& s) {
  bool meets = P.core.color_class(b).intersects(s.core_ideal);
  for (std::size_t t = 0; t < P.tails.size() && !meets; ++t) {
    const auto& n = s.tail_counts[t];
    if (!n) {
      meets = tail_has_color(P.tails[t], b);
    } else {
      for (long i = 1; i <= *n; ++i)
        if (tcolor(P, {static_cast<int>(t), i}) == b) meets = true;
    }
  }
  return meets ? 1 - compute_upsilon(P, b, s) : -1 + compute_psi(P, b, s);
}

// ---- weight functions ----

DeltaFn lattice_delta(const SplitLattice& L) {
  return [&L](ColorId b, int to, int from) {
    return delta(L.poset(), b, L.ideal(to), L.ideal(from));
  };
}

DeltaFn ball_delta(const PeriodicHeap& H, const SplitBall& ball) {
  return [&H, &ball](ColorId b, int to, int from) {
    return periodic_delta(H, b, ball.splits[to], ball.splits[from]);
  };
}

WeightFunction construct_weight(const ColorGraph& G, int num_splits,
                                const std::vector<int>& component,
                                const std::vector<WeightBase>& bases, const DeltaFn& delta) {
  const int nc = G.size();
  std::vector<const WeightBase*> by_component(num_splits, nullptr);
  for (const auto& base : bases) {
    if (base.split < 0 || base.split >= num_splits) throw InputError("base split out of range");
    if (static_cast<int>(base.values.size()) != nc)
      throw InputError("base values need one entry per color");
    by_component[component[base.split]] = &base;
  }
  WeightFunction w(nc, num_splits);
  std::vector<int> d(nc);
  for (int s = 0; s < num_splits; ++s) {
    const WeightBase* base = by_component[component[s]];
    if (!base) throw InputError("no base split for the component of split " + std::to_string(s));
    for (ColorId c = 0; c < nc; ++c) d[c] = delta(c, s, base->split);
    for (ColorId b = 0; b < nc; ++b) {
      int shift = 2 * d[b];
      for (ColorId c : G.neighbors(b)) shift -= d[c];
      w.at(b, s) = base->values[b] + shift;
    }
  }
  return w;
}

WeightFunction construct_weight(const SplitLattice& L, const WeightBase& base) {
  return construct_weight(L.poset().graph(), L.size(), L.components(), {base}, lattice_delta(L));
}

WeightLawReport is_edge_weight(const WeightFunction& eta, const SplitGraph& graph,
                               const ColorGraph& G) {
  WeightLawReport r;
  for (int s = 0; s < graph.size(); ++s)
    for (const auto& st : graph.up[s])
      for (ColorId b = 0; b < G.size(); ++b)
        if (eta.at(b, st.target) - eta.at(b, s) != G.theta(st.color, b)) {
          r = {false, s, st.target, b, st.color};
          return r;
        }
  return r;
}

WeightLawReport is_component_weight(const WeightFunction& eta, const ColorGraph& G,
                                    const std::vector<int>& component, const DeltaFn& delta,
                                    const std::vector<std::pair<int, int>>& pairs) {
  WeightLawReport r;
  auto check = [&](int s, int t) {
    std::vector<int> d(G.size());
    for (ColorId c = 0; c < G.size(); ++c) d[c] = delta(c, t, s);
    for (ColorId b = 0; b < G.size(); ++b) {
      int rhs = 2 * d[b];
      for (ColorId c : G.neighbors(b)) rhs -= d[c];
      if (eta.at(b, t) - eta.at(b, s) != rhs) {
        r = {false, s, t, b, -1};
        return false;
      }
    }
    return true;
  };
  if (!pairs.empty()) {
    for (auto [s, t] : pairs)
      if (component[s] == component[t] && !check(s, t)) return r;
    return r;
  }
  for (int s = 0; s < eta.num_splits; ++s)
    for (int t = 0; t < eta.num_splits; ++t)
      if (component[s] == component[t] && !check(s, t)) return r;
  return r;
}

std::set<Rational> eigenvalue_set(const WeightFunction& eta, const std::vector<int>& domain) {
  std::set<Rational> out;
  for (ColorId b = 0; b < eta.num_colors; ++b) {
    if (domain.empty()) {
      for (int s = 0; s < eta.num_splits; ++s) out.insert(eta.at(b, s));
    } else {
      for (int s : domain) out.insert(eta.at(b, s));
    }
  }
  return out;
}

MinusculeReport check_minuscule_conditions(const WeightFunction& eta, const SplitGraph& graph,
                                           MinusculeMode mode, const std::vector<int>& domain) {
  std::vector<int> dom = domain;
  if (dom.empty())
    for (int s = 0; s < graph.size(); ++s)
      if (graph.complete[s]) dom.push_back(s);
  MinusculeReport r;
  auto fail = [&](std::string why, ColorId b, int s) {
    r = {false, std::move(why), b, s, eta.at(b, s)};
  };
  for (int s : dom)
    for (ColorId b = 0; b < eta.num_colors; ++b) {
      const Rational v = eta.at(b, s);
      if (mode == MinusculeMode::full) {
        if (v != -1 && v != 0 && v != 1) {
          fail("eigenvalue " + to_string(v) + " outside {-1,0,1}", b, s);
          return r;
        }
        continue;
      }
      if (v.denominator() != 1) {
        fail("non-integer eigenvalue " + to_string(v), b, s);
        return r;
      }
      const bool upper = mode == MinusculeMode::upper;
      if (upper ? v < -1 : v > 1) {
        fail("eigenvalue " + to_string(v) + (upper ? " below -1" : " above 1"), b, s);
        return r;
      }
      const bool pinned = upper ? graph.has_up(s, b) : graph.has_down(s, b);
      const bool at_pin = v == (upper ? -1 : 1);
      if (pinned != at_pin) {
        fail(pinned ? (upper ? "filter has a minimal element of this color but value is not -1"
                             : "ideal has a maximal element of this color but value is not +1")
                    : (upper ? "value -1 without a minimal filter element of this color"
                             : "value +1 without a maximal ideal element of this color"),
             b, s);
        return r;
      }
    }
  return r;
}

ForcedWeight forced_edge_weight(const WeightFunction& edge_weight, const SplitGraph& graph,
                                Direction pinned_by) {
  ForcedWeight out;
  out.exists = true;
  out.eta = edge_weight;
  out.free_colors.assign(edge_weight.num_colors, true);
  const Rational target = pinned_by == Direction::up ? -1 : 1;
  for (ColorId b = 0; b < edge_weight.num_colors; ++b) {
    std::optional<Rational> offset;
    for (int s = 0; s < graph.size(); ++s) {
      if (!graph.complete[s]) continue;
      const bool pinned = pinned_by == Direction::up ? graph.has_up(s, b) : graph.has_down(s, b);
      if (!pinned) continue;
      const Rational need = target - edge_weight.at(b, s);
      if (!offset) {
        offset = need;
      } else if (*offset != need) {
        out.exists = false;
        return out;
      }
    }
    if (offset) {
      out.free_colors[b] = false;
      for (int s = 0; s < edge_weight.num_splits; ++s) out.eta.at(b, s) += *offset;
    }
  }
  return out;
}

std::optional<WeightFunction> rule_weight(const SplitGraph& graph, const std::vector<int>& domain) {
  WeightFunction w(graph.num_colors, graph.size());
  std::vector<int> dom = domain;
  if (dom.empty()) {
    dom.resize(graph.size());
    std::iota(dom.begin(), dom.end(), 0);
  }
  for (int s : dom)
    for (ColorId b = 0; b < graph.num_colors; ++b) {
      const bool up = graph.has_up(s, b), down = graph.has_down(s, b);
      if (up && down) return std::nullopt;
      w.at(b, s) = up ? -1 : (down ? 1 : 0);
    }
  return w;
}

std::optional<WeightFunction> commutator_weight(const OperatorContext& ctx,
                                                const std::vector<int>& domain) {
  const SplitGraph& g = ctx.graph();
  WeightFunction w(g.num_colors, g.size());
  std::vector<int> dom = domain;
  if (dom.empty()) {
    dom.resize(g.size());
    std::iota(dom.begin(), dom.end(), 0);
  }
  for (ColorId a = 0; a < g.num_colors; ++a) {
    const OpExpr k = commutator(X(a), Y(a));
    for (int s : dom) {
      const SplitVector v = ctx.apply(k, s);
      if (v.size() > 1 || (v.size() == 1 && v.terms().begin()->first != s)) return std::nullopt;
      w.at(a, s) = v.coefficient(s);
    }
  }
  return w;
}

UniquenessReport uniqueness_probe(const SplitLattice& L, const WeightFunction& eta) {
  UniquenessReport r;
  const FinitePoset& P = L.poset();
  for (Property p : {Property::EC, Property::AC, Property::I2A}) {
    if (!check_property(P, {p}).holds) {
      r.reason = PropertySpec{p}.name() + " fails";
      return r;
    }
  }
  const SplitGraph& g = L.graph();
  const auto comp = L.components();
  const int ncomp = L.num_components();
  for (int c = 0; c < ncomp; ++c)
    for (ColorId b = 0; b < g.num_colors; ++b) {
      bool seen = false;
      for (const auto& e : L.edges())
        if (e.color == b && comp[e.from] == c) seen = true;
      if (!seen) {
        r.reason = "a component has no edge of color " + P.graph().name(b);
        return r;
      }
    }
  if (!is_edge_weight(eta, g, P.graph()).holds) {
    r.reason = "not an edge weight function";
    return r;
  }
  auto pinned = [&](Direction d) {
    for (int s = 0; s < g.size(); ++s)
      for (ColorId b = 0; b < g.num_colors; ++b) {
        const bool on = d == Direction::up ? g.has_up(s, b) : g.has_down(s, b);
        if (on && eta.at(b, s) != (d == Direction::up ? -1 : 1)) return false;
      }
    return true;
  };
  if (!pinned(Direction::up) && !pinned(Direction::down)) {
    r.reason = "weight is pinned neither at -1 on up-edges nor at +1 on down-edges";
    return r;
  }
  r.applicable = true;
  const WeightFunction mu = mu_weights(L);
  r.equal = true;
  for (ColorId b = 0; b < g.num_colors && r.equal; ++b)
    for (int s = 0; s < g.size(); ++s)
      if (eta.at(b, s) != mu.at(b, s)) {
        r.equal = false;
        r.color = b;
        r.split = s;
        break;
      }
  return r;
}

}  // namespace heaplab
