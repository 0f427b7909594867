#include "heaplab/classify.hpp"

#include <algorithm>
#include <exception>
#include <random>
#include <sstream>

namespace heaplab {

std::string algebra_name(AlgebraKind k) {
  switch (k) {
    case AlgebraKind::n_plus: return "n-plus";
    case AlgebraKind::n_minus: return "n-minus";
    case AlgebraKind::b_plus_derived: return "b-plus";
    case AlgebraKind::b_minus_derived: return "b-minus";
    case AlgebraKind::g_derived: return "g-prime";
  }
  return "?";
}

AlgebraKind parse_algebra(const std::string& text) {
  for (AlgebraKind k : {AlgebraKind::n_plus, AlgebraKind::n_minus, AlgebraKind::b_plus_derived,
                        AlgebraKind::b_minus_derived, AlgebraKind::g_derived})
    if (algebra_name(k) == text) return k;
  throw InputError("unknown algebra '" + text +
                   "' (expected n-plus, n-minus, b-plus, b-minus or g-prime)");
}

std::vector<RelationSet> relation_sets(AlgebraKind k) {
  using R = RelationSet;
  switch (k) {
    case AlgebraKind::n_plus: return {R::XX};
    case AlgebraKind::n_minus: return {R::YY};
    case AlgebraKind::b_plus_derived: return {R::XX, R::HH, R::HX};
    case AlgebraKind::b_minus_derived: return {R::YY, R::HH, R::HY};
    case AlgebraKind::g_derived: return {R::XX, R::YY, R::HH, R::HX, R::HY, R::XY};
  }
  return {};
}

// ---- classification ----

namespace {

const std::vector<PropertySpec>& classification_specs() {
  static const std::vector<PropertySpec> specs = {
      {Property::EC}, {Property::NA}, {Property::AC}, {Property::I2A},
      {Property::MxkGA, 1}, {Property::MnkLA, 1}};
  return specs;
}

std::string join_names(const std::vector<ElementId>& ids, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += ids[i] >= 0 && ids[i] < static_cast<int>(names.size()) ? names[ids[i]]
                                                                 : std::to_string(ids[i]);
  }
  return out;
}

ClassificationReport finish(std::vector<PropertyReport> reports) {
  ClassificationReport c;
  c.d_complete = true;
  for (std::size_t i = 0; i < 5; ++i) c.d_complete = c.d_complete && reports[i].holds;
  c.minuscule = c.d_complete && reports[5].holds;
  for (const auto& r : reports)
    if (!r.holds) c.witnesses.push_back(describe_witness(r));
  c.property_reports = std::move(reports);
  return c;
}

}  // namespace

std::string describe_witness(const PropertyReport& r) {
  std::string out = r.spec.name() + ": ";
  if (!r.witness) return out + (r.holds ? "holds" : "fails");
  const Witness& w = *r.witness;
  if (w.extreme >= 0) {
    out += join_names({w.extreme}, r.names) + "; offenders " + join_names(w.offenders, r.names);
  } else {
    out += join_names(w.elements, r.names);
    if (w.census >= 0) out += " (census " + std::to_string(w.census) + ")";
  }
  return out;
}

ClassificationReport classify_poset(const FinitePoset& P) {
  std::vector<PropertyReport> reports;
  for (const auto& spec : classification_specs()) reports.push_back(check_property(P, spec));
  return finish(std::move(reports));
}

ClassificationReport classify_poset(const PeriodicHeap& H, int window) {
  std::vector<PropertyReport> reports;
  for (const auto& spec : classification_specs()) reports.push_back(check_property(H, spec, window));
  return finish(std::move(reports));
}

ClassificationReport classify_filter(const PeriodicHeap& H, const PeriodicSplit& split, int window) {
  std::vector<PropertyReport> reports;
  for (const auto& spec : classification_specs())
    reports.push_back(check_filter_property(H, split, spec, window));
  return finish(std::move(reports));
}

// ---- representations ----

bool RepresentationReport::relations_hold() const { return all_hold(relations); }

bool RepresentationReport::holds() const {
  if (refused) return false;
  if (!relations_hold()) return false;
  if (nilpotency && !nilpotency->holds) return false;
  return !minuscule || minuscule->holds;
}

namespace {

void evaluate(RepresentationReport& rep, const SplitGraph& g, const ColorGraph& G,
              const std::vector<int>& domain, const std::vector<int>& condition_domain,
              bool parallel) {
  const WeightFunction* w = rep.weights ? &*rep.weights : nullptr;
  OperatorContext ctx(g, w);
  const auto rels = relation_instances(G, relation_sets(rep.kind));
  rep.relations = parallel ? verify_relations_parallel(ctx, rels, domain)
                           : verify_relations(ctx, rels, domain);
  switch (rep.kind) {
    case AlgebraKind::n_plus:
    case AlgebraKind::b_plus_derived:
      rep.nilpotency = check_square_nilpotent(ctx, Generator::Kind::X, domain);
      break;
    case AlgebraKind::n_minus:
    case AlgebraKind::b_minus_derived:
      rep.nilpotency = check_square_nilpotent(ctx, Generator::Kind::Y, domain);
      break;
    case AlgebraKind::g_derived:
      break;
  }
  if (!w) return;
  const MinusculeMode mode = rep.kind == AlgebraKind::b_plus_derived   ? MinusculeMode::upper
                             : rep.kind == AlgebraKind::b_minus_derived ? MinusculeMode::lower
                                                                        : MinusculeMode::full;
  rep.minuscule = check_minuscule_conditions(*w, g, mode, condition_domain);
}

bool needs_weights(AlgebraKind k) {
  return k == AlgebraKind::b_plus_derived || k == AlgebraKind::b_minus_derived ||
         k == AlgebraKind::g_derived;
}

}  // namespace

RepresentationReport build_representation(const SplitLattice& L, AlgebraKind kind, bool parallel) {
  RepresentationReport rep;
  rep.kind = kind;
  rep.num_splits = L.size();
  rep.domain.resize(L.size());
  for (int s = 0; s < L.size(); ++s) rep.domain[s] = s;
  if (needs_weights(kind)) {
    try {
      rep.weights = mu_weights(L);
    } catch (const PreconditionError& e) {
      rep.refused = true;
      rep.refusal = e.what();
      return rep;
    }
    rep.eigenvalues = eigenvalue_set(*rep.weights);
  }
  evaluate(rep, L.graph(), L.poset().graph(), rep.domain, rep.domain, parallel);
  return rep;
}

RepresentationReport build_representation(const PeriodicHeap& H, const PeriodicSplit& seed,
                                          int radius, AlgebraKind kind, bool parallel) {
  RepresentationReport rep;
  rep.kind = kind;
  rep.interior_only = true;
  constexpr int kWordLength = 3;  // [E_a, [E_a, E_b]] is the longest word checked
  if (radius < kWordLength) {
    rep.refused = true;
    rep.refusal = "ball radius " + std::to_string(radius) + " is too small; need at least " +
                  std::to_string(kWordLength);
    return rep;
  }
  const SplitBall ball = H.ball(seed, radius);
  rep.num_splits = static_cast<int>(ball.splits.size());
  rep.domain = ball.interior(kWordLength);
  if (needs_weights(kind)) {
    try {
      rep.weights = mu_weights(H, ball);
    } catch (const PreconditionError& e) {
      rep.refused = true;
      rep.refusal = e.what();
      return rep;
    }
    rep.eigenvalues = eigenvalue_set(*rep.weights);
  }
  evaluate(rep, ball.graph, H.graph(), rep.domain, ball.interior(1), parallel);
  return rep;
}

// ---- equivalences ----

bool EquivalenceReport::all_agree() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.agree; });
}

const CheckOutcome* EquivalenceReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

const std::vector<std::string>& equivalence_names() {
  static const std::vector<std::string> names = {
      "square_nilpotency", "distant_commutation", "serre",
      "n_plus", "b_plus_extension", "diagonal_hx",
      "sl2_strings", "upper_minuscule", "lower_minuscule",
      "common_minuscule_diagonals", "g_prime_minuscule", "classification",
      "nilpotency_from_eigenvalues", "xy_cross"};
  return names;
}

namespace {

bool prop(const FinitePoset& P, Property p) {
  return check_property(P, {p, (p == Property::MxkGA || p == Property::MnkLA) ? 1 : 0}).holds;
}

std::string yn(bool b) { return b ? "1" : "0"; }

bool holds_named(const OperatorContext& ctx, const ColorGraph& G, RelationSet set,
                 const std::string& only = {}) {
  auto rels = relation_instances(G, {set});
  if (!only.empty())
    std::erase_if(rels, [&](const RelationInstance& r) { return r.name != only; });
  return relations_hold(ctx, rels);
}

bool pinned(const WeightFunction& eta, const SplitGraph& g, Direction d) {
  const Rational target = d == Direction::up ? -1 : 1;
  for (int s = 0; s < g.size(); ++s)
    for (ColorId b = 0; b < g.num_colors; ++b) {
      const bool on = d == Direction::up ? g.has_up(s, b) : g.has_down(s, b);
      if (on && eta.at(b, s) != target) return false;
    }
  return true;
}

bool within_unit(const WeightFunction& eta) {
  for (const auto& v : eta.values)
    if (v != -1 && v != 0 && v != 1) return false;
  return true;
}

// Algebraic side, computed from the split graph alone.
struct AlgebraSide {
  bool Xsq = false, Ysq = false;
  bool XXi = false, XXii = false, YYi = false, YYii = false;
  WeightFunction eta0;
  bool eta0_edge = false;
  bool HX0 = false, HY0 = false, HH0 = false;
  bool bplus = false, bminus = false;
  ForcedWeight fu, fd;
  bool upper = false, lower = false;
  bool common_i = false;
  std::optional<WeightFunction> rule;
  bool common_ii = false;
  std::optional<WeightFunction> K;
  bool g_iv = false, g_v = false;

  bool XX() const { return XXi && XXii; }
  bool YY() const { return YYi && YYii; }
};

AlgebraSide algebra_side(const SplitLattice& L) {
  AlgebraSide a;
  const SplitGraph& g = L.graph();
  const ColorGraph& G = L.poset().graph();
  OperatorContext plain(g);
  a.Xsq = check_square_nilpotent(plain, Generator::Kind::X).holds;
  a.Ysq = check_square_nilpotent(plain, Generator::Kind::Y).holds;
  a.XXi = holds_named(plain, G, RelationSet::XX, "XX.i");
  a.XXii = holds_named(plain, G, RelationSet::XX, "XX.ii");
  a.YYi = holds_named(plain, G, RelationSet::YY, "YY.i");
  a.YYii = holds_named(plain, G, RelationSet::YY, "YY.ii");

  // Any weight function satisfying HX is an edge weight function, hence of
  // the constructed form up to per-color constants: one candidate decides.
  a.eta0 = construct_weight(L, {0, std::vector<Rational>(G.size(), Rational(0))});
  a.eta0_edge = is_edge_weight(a.eta0, g, G).holds;
  {
    OperatorContext ctx(g, &a.eta0);
    a.HX0 = holds_named(ctx, G, RelationSet::HX);
    a.HY0 = holds_named(ctx, G, RelationSet::HY);
    a.HH0 = holds_named(ctx, G, RelationSet::HH);
  }
  a.bplus = a.Xsq && a.XX() && a.HH0 && a.HX0;
  a.bminus = a.Ysq && a.YY() && a.HH0 && a.HY0;

  // Upper conditions pin η at -1 on every up-edge color; with every color
  // present that fixes the constant, so the forced candidate decides existence.
  a.fu = forced_edge_weight(a.eta0, g, Direction::up);
  a.fd = forced_edge_weight(a.eta0, g, Direction::down);
  auto rep_ok = [&](const WeightFunction& eta, bool upper) {
    OperatorContext ctx(g, &eta);
    if (upper)
      return a.Xsq && a.XX() && holds_named(ctx, G, RelationSet::HH) &&
             holds_named(ctx, G, RelationSet::HX);
    return a.Ysq && a.YY() && holds_named(ctx, G, RelationSet::HH) &&
           holds_named(ctx, G, RelationSet::HY);
  };
  a.upper = a.fu.exists && rep_ok(a.fu.eta, true) &&
            check_minuscule_conditions(a.fu.eta, g, MinusculeMode::upper).holds;
  a.lower = a.fd.exists && rep_ok(a.fd.eta, false) &&
            check_minuscule_conditions(a.fd.eta, g, MinusculeMode::lower).holds;
  a.common_i = a.fu.exists && a.fd.exists && a.fu.eta == a.fd.eta && a.upper && a.lower;

  a.rule = rule_weight(g);
  if (a.rule) {
    OperatorContext ctx(g, &*a.rule);
    a.common_ii = a.XX() && a.YY() && holds_named(ctx, G, RelationSet::HH) &&
                  holds_named(ctx, G, RelationSet::HX) && holds_named(ctx, G, RelationSet::HY);
  }

  // [X_a, Y_a] = H_a forces H to be the commutator, so it must be diagonal.
  a.K = commutator_weight(plain);
  if (a.K) {
    OperatorContext ctx(g, &*a.K);
    const bool hx = holds_named(ctx, G, RelationSet::HX);
    const bool hy = holds_named(ctx, G, RelationSet::HY);
    const bool hh = holds_named(ctx, G, RelationSet::HH);
    a.g_iv = a.Xsq && a.Ysq && a.XX() && a.YY() && hh && hx && hy;
    a.g_v = a.XX() && a.YY() && hh && hx && hy && holds_named(ctx, G, RelationSet::XY) &&
            within_unit(*a.K);
  }
  return a;
}

struct Recorder {
  EquivalenceReport report;

  void add(const std::string& name, bool applicable, bool agree, std::string detail) {
    report.checks.push_back({name, applicable, agree, agree ? std::string() : std::move(detail)});
  }
};

std::string first_difference(const WeightFunction& a, const WeightFunction& b,
                             const SplitLattice& L) {
  const auto& G = L.poset().graph();
  for (ColorId c = 0; c < a.num_colors; ++c)
    for (int s = 0; s < a.num_splits; ++s)
      if (a.at(c, s) != b.at(c, s))
        return G.name(c) + " at " + L.split_label(s) + ": " + to_string(a.at(c, s)) + " vs " +
               to_string(b.at(c, s));
  return "equal";
}

void require_all_colors(const FinitePoset& P) {
  for (ColorId c = 0; c < P.graph().size(); ++c)
    if (P.color_class(c).empty())
      throw PreconditionError("every color of the graph must occur in the poset");
}

}  // namespace

EquivalenceReport verify_equivalences(const FinitePoset& P, std::size_t cap) {
  require_all_colors(P);
  const SplitLattice L = SplitLattice::enumerate(P, cap);
  const SplitGraph& g = L.graph();
  const ColorGraph& G = P.graph();
  const AlgebraSide a = algebra_side(L);

  const bool EC = prop(P, Property::EC), ND = prop(P, Property::ND), NA = prop(P, Property::NA),
             I3ND = prop(P, Property::I3ND), AC = prop(P, Property::AC),
             I2A = prop(P, Property::I2A), Mx1 = prop(P, Property::MxkGA),
             Mn1 = prop(P, Property::MnkLA);
  std::optional<WeightFunction> mu;
  if (EC) mu = mu_weights(L);

  Recorder rec;
  auto three = [&](const std::string& name, bool i, bool ii, bool iii) {
    rec.add(name, true, i == ii && ii == iii,
            "algebraic " + yn(i) + ", combinatorial " + yn(ii) + ", dual algebraic " + yn(iii));
  };

  three("square_nilpotency", a.Xsq, EC && ND, a.Ysq);

  if (EC && ND) {
    three("distant_commutation", a.XXi, NA, a.YYi);
    three("serre", a.XXii, I3ND, a.YYii);
  } else {
    rec.add("distant_commutation", false, true, {});
    rec.add("serre", false, true, {});
  }

  three("n_plus", a.Xsq && a.XX(), EC && NA && I3ND, a.Ysq && a.YY());

  {
    const bool ok = a.eta0_edge && (a.bplus == (EC && NA && I3ND)) &&
                    (a.bminus == (EC && NA && I3ND));
    rec.add("b_plus_extension", true, ok,
            "constructed weight edge law " + yn(a.eta0_edge) + ", b+ " + yn(a.bplus) + ", b- " +
                yn(a.bminus) + ", properties " + yn(EC && NA && I3ND));
  }

  if (EC) {
    WeightFunction bent = a.eta0;
    bent.at(0, L.top()) += 1;
    bool ok = true;
    std::string detail;
    for (const WeightFunction* eta : std::initializer_list<const WeightFunction*>{&a.eta0, &bent}) {
      OperatorContext ctx(g, eta);
      const bool hx = holds_named(ctx, G, RelationSet::HX);
      const bool edge = is_edge_weight(*eta, g, G).holds;
      const bool hy = holds_named(ctx, G, RelationSet::HY);
      if (!(hx == edge && edge == hy)) {
        ok = false;
        detail = "HX " + yn(hx) + ", edge law " + yn(edge) + ", HY " + yn(hy);
      }
    }
    rec.add("diagonal_hx", true, ok, detail);
  } else {
    rec.add("diagonal_hx", false, true, {});
  }

  {
    const bool comb = EC && AC && I2A;
    bool ok = a.fu.exists == comb && a.fd.exists == comb;
    std::string detail = "up pin " + yn(a.fu.exists) + ", properties " + yn(comb) + ", down pin " +
                         yn(a.fd.exists);
    // Either pinning also gives the other one, and μ has both when they hold.
    if (a.fu.exists && !pinned(a.fu.eta, g, Direction::down)) {
      ok = false;
      detail += "; up-pinned weight misses a down pin";
    }
    if (a.fd.exists && !pinned(a.fd.eta, g, Direction::up)) {
      ok = false;
      detail += "; down-pinned weight misses an up pin";
    }
    if (comb && !(is_edge_weight(*mu, g, G).holds && pinned(*mu, g, Direction::up) &&
                  pinned(*mu, g, Direction::down))) {
      ok = false;
      detail += "; μ is not a pinned edge weight function";
    }
    rec.add("sl2_strings", true, ok, detail);
  }

  auto minuscule_check = [&](const std::string& name, bool alg, bool comb, MinusculeMode mode) {
    bool ok = alg == comb;
    std::string detail = "algebraic " + yn(alg) + ", combinatorial " + yn(comb);
    if (comb) {
      OperatorContext ctx(g, &*mu);
      const bool upper = mode == MinusculeMode::upper;
      const bool rel = holds_named(ctx, G, upper ? RelationSet::HX : RelationSet::HY);
      const auto cond = check_minuscule_conditions(*mu, g, mode);
      if (!rel || !cond.holds) {
        ok = false;
        detail += "; μ fails: " + (rel ? cond.reason : std::string("relations"));
      }
    }
    rec.add(name, true, ok, detail);
  };
  minuscule_check("upper_minuscule", a.upper, EC && NA && AC && I2A && Mx1, MinusculeMode::upper);
  minuscule_check("lower_minuscule", a.lower, EC && NA && AC && I2A && Mn1, MinusculeMode::lower);

  const bool minuscule_props = EC && NA && AC && I2A && Mx1 && Mn1;
  {
    bool ok = a.common_i == a.common_ii && a.common_ii == minuscule_props;
    std::string detail = "shared pinned diagonals " + yn(a.common_i) + ", rule diagonals " +
                         yn(a.common_ii) + ", properties " + yn(minuscule_props);
    if (ok && minuscule_props) {
      if (!(*mu == a.fu.eta && *mu == *a.rule)) {
        ok = false;
        detail = "uniqueness: " + first_difference(*mu, *a.rule, L);
      }
    }
    rec.add("common_minuscule_diagonals", true, ok, detail);
  }

  {
    bool ok = a.g_iv == minuscule_props && a.g_v == minuscule_props && a.common_i == a.g_v;
    std::string detail = "commutator diagonal " + yn(a.K.has_value()) + ", nilpotent b± " +
                         yn(a.g_iv) + ", g′ minuscule " + yn(a.g_v) + ", properties " +
                         yn(minuscule_props);
    if (ok && minuscule_props && !(*a.K == *mu)) {
      ok = false;
      detail = "uniqueness: " + first_difference(*mu, *a.K, L);
    }
    rec.add("g_prime_minuscule", true, ok, detail);
  }

  {
    const ClassificationReport c = classify_poset(P);
    const bool ok = c.d_complete == a.upper && c.minuscule == a.g_v;
    rec.add("classification", true, ok,
            "d-complete " + yn(c.d_complete) + " vs upper rep " + yn(a.upper) + ", minuscule " +
                yn(c.minuscule) + " vs g′ rep " + yn(a.g_v));
  }

  {
    std::vector<const WeightFunction*> cands = {&a.eta0};
    if (a.fu.exists) cands.push_back(&a.fu.eta);
    if (a.fd.exists) cands.push_back(&a.fd.eta);
    if (a.rule) cands.push_back(&*a.rule);
    if (a.K) cands.push_back(&*a.K);
    if (mu) cands.push_back(&*mu);
    bool applicable = false, ok = true;
    std::string detail;
    for (const WeightFunction* eta : cands) {
      if (!within_unit(*eta)) continue;
      OperatorContext ctx(g, eta);
      if (holds_named(ctx, G, RelationSet::HX)) {
        applicable = true;
        if (!a.Xsq) {
          ok = false;
          detail = "HX holds with eigenvalues in {-1,0,1} but X is not square nilpotent";
        }
      }
      if (holds_named(ctx, G, RelationSet::HY)) {
        applicable = true;
        if (!a.Ysq) {
          ok = false;
          detail = "HY holds with eigenvalues in {-1,0,1} but Y is not square nilpotent";
        }
      }
    }
    rec.add("nilpotency_from_eigenvalues", applicable, ok, detail);
  }

  if (EC) {
    OperatorContext plain(g);
    const bool ok = all_hold(check_XY_cross(plain, G, true));
    rec.add("xy_cross", true, ok, "[X_b, Y_a] is nonzero for distinct colors under EC");
  } else {
    rec.add("xy_cross", false, true, {});
  }
  return rec.report;
}

namespace {

PropertySpec dual_spec(const PropertySpec& s) {
  if (s.property == Property::MxkGA) return {Property::MnkLA, s.k};
  if (s.property == Property::MnkLA) return {Property::MxkGA, s.k};
  return s;
}

std::vector<std::pair<int, ColorId>> mapped(const std::vector<Step>& steps,
                                            const std::vector<int>& phi) {
  std::vector<std::pair<int, ColorId>> out;
  for (const auto& st : steps) out.emplace_back(phi[st.target], st.color);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, ColorId>> plain_steps(const std::vector<Step>& steps) {
  std::vector<std::pair<int, ColorId>> out;
  for (const auto& st : steps) out.emplace_back(st.target, st.color);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

EquivalenceReport verify_duality(const FinitePoset& P, std::size_t cap) {
  require_all_colors(P);
  const FinitePoset Q = P.dual();
  const SplitLattice L = SplitLattice::enumerate(P, cap);
  const SplitLattice M = SplitLattice::enumerate(Q, cap);
  Recorder rec;

  {
    bool ok = true;
    std::string detail;
    for (const auto& spec : all_properties(1)) {
      const bool here = check_property(P, spec).holds;
      const bool there = check_property(Q, dual_spec(spec)).holds;
      if (here != there) {
        ok = false;
        detail = spec.name() + " " + yn(here) + " vs dual " + dual_spec(spec).name() + " " + yn(there);
        break;
      }
    }
    rec.add("property_duality", true, ok, detail);
  }

  // (F, I) of P is (I, F) of the dual: its ideal there is F.
  std::vector<int> phi(L.size());
  for (int s = 0; s < L.size(); ++s) phi[s] = M.index_of(L.filter(s));
  {
    bool ok = L.size() == M.size();
    std::string detail = ok ? "" : "split counts differ";
    for (int s = 0; ok && s < L.size(); ++s) {
      if (mapped(L.graph().up[s], phi) != plain_steps(M.graph().down[phi[s]]) ||
          mapped(L.graph().down[s], phi) != plain_steps(M.graph().up[phi[s]])) {
        ok = false;
        detail = "X at " + L.split_label(s) + " does not match Y on the dual";
      }
    }
    if (ok) {
      // Spot-check through the operator layer as well.
      OperatorContext here(L.graph()), there(M.graph());
      for (int s = 0; ok && s < L.size(); ++s)
        for (ColorId c = 0; ok && c < P.graph().size(); ++c) {
          const SplitVector x = here.apply(Generator{Generator::Kind::X, c}, s);
          const SplitVector y = there.apply(Generator{Generator::Kind::Y, c}, phi[s]);
          SplitVector xm;
          for (const auto& [t, v] : x.terms()) xm.add(phi[t], v);
          if (!(xm == y)) {
            ok = false;
            detail = "operator images differ at " + L.split_label(s);
          }
        }
    }
    rec.add("operator_duality", true, ok, detail);
  }

  {
    const AlgebraSide a = algebra_side(L), b = algebra_side(M);
    bool ok = a.upper == b.lower && a.lower == b.upper && a.bplus == b.bminus &&
              a.bminus == b.bplus && a.g_v == b.g_v;
    std::string detail = "upper " + yn(a.upper) + "/dual lower " + yn(b.lower) + ", lower " +
                         yn(a.lower) + "/dual upper " + yn(b.upper);
    if (ok && prop(P, Property::EC)) {
      // μ on the dual is -μ′ transported along the bijection.
      const WeightFunction mu_dual = mu_weights(M);
      const WeightFunction mu_prime = mu_prime_weights(L);
      for (ColorId c = 0; ok && c < P.graph().size(); ++c)
        for (int s = 0; s < L.size(); ++s)
          if (mu_dual.at(c, phi[s]) != -mu_prime.at(c, s)) {
            ok = false;
            detail = "dual μ differs from -μ′ at " + L.split_label(s);
            break;
          }
    }
    rec.add("representation_duality", true, ok, detail);
  }
  return rec.report;
}

// ---- weight laws ----

WeightLawCounts& WeightLawCounts::operator+=(const WeightLawCounts& o) {
  constructed += o.constructed;
  perturbed += o.perturbed;
  law_disagreements += o.law_disagreements;
  transitivity_checked += o.transitivity_checked;
  transitivity_failures += o.transitivity_failures;
  uniqueness_applicable += o.uniqueness_applicable;
  uniqueness_failures += o.uniqueness_failures;
  if (first_failure.empty()) first_failure = o.first_failure;
  return *this;
}

WeightLawCounts weight_law_suite(const FinitePoset& P, std::uint64_t seed, int samples,
                                 std::size_t cap) {
  require_all_colors(P);
  const SplitLattice L = SplitLattice::enumerate(P, cap);
  const SplitGraph& g = L.graph();
  const ColorGraph& G = P.graph();
  const auto comp = L.components();
  const DeltaFn dl = lattice_delta(L);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3), split(0, L.size() - 1),
      color(0, G.size() - 1);
  auto random_rational = [&] { return Rational(num(rng), den(rng)); };

  WeightLawCounts out;
  auto fail = [&](std::string why) {
    if (out.first_failure.empty()) out.first_failure = std::move(why);
  };
  auto law = [&](const WeightFunction& eta, const char* what) {
    const bool edge = is_edge_weight(eta, g, G).holds;
    const bool component = is_component_weight(eta, G, comp, dl).holds;
    if (edge != component) {
      ++out.law_disagreements;
      fail(std::string(what) + ": edge law " + yn(edge) + ", component law " + yn(component));
    }
  };
  auto pair_law = [&](const WeightFunction& eta, int s, int t) {
    return is_component_weight(eta, G, comp, dl, {{s, t}}).holds;
  };

  for (int i = 0; i < samples; ++i) {
    WeightBase base{split(rng), {}};
    for (ColorId c = 0; c < G.size(); ++c) base.values.push_back(random_rational());
    const WeightFunction eta = construct_weight(L, base);
    ++out.constructed;
    law(eta, "constructed");

    WeightFunction bent = eta;
    Rational bump = 0;
    while (bump == 0) bump = random_rational();
    bent.at(color(rng), split(rng)) += bump;
    ++out.perturbed;
    law(bent, "perturbed");

    for (const WeightFunction* w : std::initializer_list<const WeightFunction*>{&eta, &bent})
      for (int j = 0; j < 4; ++j) {
        const int s = split(rng), t = split(rng), u = split(rng);
        ++out.transitivity_checked;
        bool additive = true;
        for (ColorId c = 0; c < G.size(); ++c)
          if (dl(c, u, s) != dl(c, u, t) + dl(c, t, s)) additive = false;
        const bool implied = !(pair_law(*w, s, t) && pair_law(*w, t, u)) || pair_law(*w, s, u);
        if (!additive || !implied) {
          ++out.transitivity_failures;
          fail("transitivity fails on splits " + std::to_string(s) + ", " + std::to_string(t) +
               ", " + std::to_string(u));
        }
      }

    if (i == 0) {
      for (Direction d : {Direction::up, Direction::down}) {
        const ForcedWeight f = forced_edge_weight(eta, g, d);
        if (!f.exists) continue;
        const UniquenessReport u = uniqueness_probe(L, f.eta);
        if (!u.applicable) continue;
        ++out.uniqueness_applicable;
        if (!u.equal) {
          ++out.uniqueness_failures;
          fail("pinned weight differs from μ at split " + std::to_string(u.split));
        }
      }
    }
  }
  return out;
}

// ---- instances ----

namespace {

std::string color_name(int c) {
  return c < 26 ? std::string(1, static_cast<char>('a' + c)) : "c" + std::to_string(c);
}

ColorGraph graph_from_mask(int c, unsigned mask) {
  std::vector<std::pair<ColorId, ColorId>> edges;
  int bit = 0;
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j, ++bit)
      if (mask >> bit & 1u) edges.emplace_back(i, j);
  std::vector<std::string> names;
  for (int i = 0; i < c; ++i) names.push_back(color_name(i));
  std::vector<std::pair<std::string, std::string>> named;
  for (auto [x, y] : edges) named.emplace_back(names[x], names[y]);
  return ColorGraph(names, named);
}

// Covers of the relation given as a bit per pair i<j.
std::vector<std::pair<ElementId, ElementId>> covers_of(int n, const std::vector<char>& rel) {
  auto r = [&](int i, int j) { return rel[i * n + j] != 0; };
  std::vector<std::pair<ElementId, ElementId>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!r(i, j)) continue;
      bool cover = true;
      for (int k = i + 1; k < j && cover; ++k)
        if (r(i, k) && r(k, j)) cover = false;
      if (cover) out.emplace_back(i, j);
    }
  return out;
}

// Every transitively closed relation contained in the natural order.
std::vector<std::vector<std::pair<ElementId, ElementId>>> natural_posets(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::vector<std::pair<ElementId, ElementId>>> out;
  const unsigned long total = 1ul << pairs.size();
  std::vector<char> rel(n * n);
  for (unsigned long mask = 0; mask < total; ++mask) {
    std::fill(rel.begin(), rel.end(), 0);
    for (std::size_t p = 0; p < pairs.size(); ++p)
      if (mask >> p & 1ul) rel[pairs[p].first * n + pairs[p].second] = 1;
    bool closed = true;
    for (int i = 0; i < n && closed; ++i)
      for (int j = i + 1; j < n && closed; ++j)
        for (int k = j + 1; k < n && closed; ++k)
          if (rel[i * n + j] && rel[j * n + k] && !rel[i * n + k]) closed = false;
    if (closed) out.push_back(covers_of(n, rel));
  }
  return out;
}

void exhaustive_size(int n, int max_colors, std::vector<Instance>& out) {
  const auto posets = natural_posets(n);
  for (int c = 1; c <= std::min(n, max_colors); ++c) {
    std::vector<std::vector<ColorId>> colorings;
    std::vector<ColorId> col(n, 0);
    while (true) {
      std::vector<char> seen(c, 0);
      for (ColorId x : col) seen[x] = 1;
      if (std::all_of(seen.begin(), seen.end(), [](char v) { return v != 0; }))
        colorings.push_back(col);
      int i = 0;
      while (i < n && ++col[i] == c) col[i++] = 0;
      if (i == n) break;
    }
    const unsigned graphs = 1u << (c * (c - 1) / 2);
    long idx = 0;
    for (unsigned gm = 0; gm < graphs; ++gm) {
      const ColorGraph G = graph_from_mask(c, gm);
      for (const auto& covers : posets)
        for (const auto& coloring : colorings)
          out.push_back({FinitePoset::from_indices(G, coloring, covers),
                         "n" + std::to_string(n) + "-c" + std::to_string(c) + "-#" +
                             std::to_string(idx++)});
    }
  }
}

}  // namespace

std::vector<Instance> generate_instances(const GeneratorConfig& cfg) {
  if (cfg.max_elements < 1 || cfg.max_colors < 1)
    throw InputError("max_elements and max_colors must be positive");
  std::vector<Instance> out;
  if (cfg.mode == GeneratorMode::exhaustive) {
    if (cfg.max_elements > kExhaustiveElementLimit)
      throw CapacityError("exhaustive generation is limited to " +
                          std::to_string(kExhaustiveElementLimit) + " elements");
    const int lo = cfg.exact_size ? cfg.max_elements : 1;
    for (int n = lo; n <= cfg.max_elements; ++n) exhaustive_size(n, cfg.max_colors, out);
    return out;
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> size(1, cfg.max_elements);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (long i = 0; i < cfg.count; ++i) {
    const int n = size(rng);
    const int c = std::uniform_int_distribution<int>(1, std::min(n, cfg.max_colors))(rng);
    const double density = 0.15 + 0.6 * unit(rng);
    std::vector<char> rel(n * n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) rel[a * n + b] = unit(rng) < density;
    for (int b = 0; b < n; ++b)  // transitive closure in natural order
      for (int a = 0; a < b; ++a)
        if (rel[a * n + b])
          for (int d = b + 1; d < n; ++d)
            if (rel[b * n + d]) rel[a * n + d] = 1;
    std::vector<ColorId> coloring(n);
    std::vector<int> perm(n);
    for (int x = 0; x < n; ++x) perm[x] = x;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::uniform_int_distribution<int> any(0, c - 1);
    for (int x = 0; x < n; ++x) coloring[perm[x]] = x < c ? x : any(rng);
    unsigned gm = 0;
    for (int e = 0; e < c * (c - 1) / 2; ++e)
      if (unit(rng) < 0.5) gm |= 1u << e;
    out.push_back({FinitePoset::from_indices(graph_from_mask(c, gm), coloring, covers_of(n, rel)),
                   "r" + std::to_string(cfg.seed) + "-#" + std::to_string(i)});
  }
  return out;
}

std::string instance_class(const FinitePoset& P) {
  const ClassificationReport c = classify_poset(P);
  if (c.minuscule) return "minuscule";
  if (c.d_complete) return "d_complete";
  return c.property_reports[0].holds ? "ec_only" : "no_ec";
}

// ---- harness ----

long HarnessSummary::total_disagreements() const {
  long t = 0;
  for (const auto& [k, v] : disagreements) t += v;
  for (const auto& [k, w] : weight_laws)
    t += w.law_disagreements + w.transitivity_failures + w.uniqueness_failures;
  return t;
}

namespace {

struct InstanceResult {
  std::vector<CheckOutcome> checks;
  std::string klass;
  WeightLawCounts laws;
  bool guard = false;
  std::string error;
};

InstanceResult evaluate_instance(const Instance& inst, const HarnessOptions& opt,
                                 std::uint64_t seed) {
  InstanceResult r;
  try {
    auto eq = verify_equivalences(inst.poset);
    if (const auto* c = eq.find("nilpotency_from_eigenvalues")) r.guard = c->applicable;
    r.checks = std::move(eq.checks);
    if (opt.duality) {
      auto d = verify_duality(inst.poset);
      r.checks.insert(r.checks.end(), d.checks.begin(), d.checks.end());
    }
    if (opt.weight_laws) {
      r.klass = instance_class(inst.poset);
      r.laws = weight_law_suite(inst.poset, seed, opt.weight_samples);
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace

HarnessSummary run_harness(const std::vector<Instance>& instances, const HarnessOptions& opt) {
  const long n = static_cast<long>(instances.size());
  std::vector<InstanceResult> results(n);
  const int jobs = std::max(1, opt.jobs);
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs)
  for (long i = 0; i < n; ++i)
    results[i] = evaluate_instance(instances[i], opt,
                                   opt.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(i));

  HarnessSummary sum;
  sum.instances = n;
  auto record_failure = [&](long i, std::string check, std::string detail) {
    if (sum.failures.size() < opt.max_failures)
      sum.failures.push_back({instances[i].label, std::move(check), std::move(detail),
                              instances[i].poset});
  };
  for (long i = 0; i < n; ++i) {
    const auto& r = results[i];
    if (!r.error.empty()) {
      ++sum.disagreements["error"];
      record_failure(i, "error", r.error);
      continue;
    }
    for (const auto& c : r.checks) {
      if (c.applicable) ++sum.applicable[c.name];
      if (c.agree) {
        ++sum.agreements[c.name];
      } else {
        ++sum.disagreements[c.name];
        record_failure(i, c.name, c.detail);
      }
    }
    if (r.guard) ++sum.guard_cases;
    if (opt.weight_laws) {
      sum.weight_laws[r.klass] += r.laws;
      if (!r.laws.first_failure.empty()) record_failure(i, "weight_laws", r.laws.first_failure);
    }
  }
  // Sparse classes get extra seeded samples, cycling over their instances in order.
  if (opt.weight_laws && opt.min_class_samples > 0) {
    std::map<std::string, std::vector<long>> members;
    for (long i = 0; i < n; ++i)
      if (results[i].error.empty()) members[results[i].klass].push_back(i);
    for (const auto& [klass, idx] : members) {
      WeightLawCounts& w = sum.weight_laws[klass];
      for (std::uint64_t round = 1; w.constructed < opt.min_class_samples; ++round)
        for (long i : idx) {
          if (w.constructed >= opt.min_class_samples) break;
          const WeightLawCounts extra = weight_law_suite(
              instances[i].poset, (opt.seed + round) * 0xD1B54A32D192ED03ULL + static_cast<std::uint64_t>(i),
              opt.weight_samples);
          w += extra;
          if (!extra.first_failure.empty()) record_failure(i, "weight_laws", extra.first_failure);
        }
    }
  }
  for (const auto& name : equivalence_names()) {
    sum.agreements.try_emplace(name, 0);
    sum.disagreements.try_emplace(name, 0);
  }
  return sum;
}

}  // namespace heaplab
