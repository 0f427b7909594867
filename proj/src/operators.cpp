#include "heaplab/operators.hpp"

#include <algorithm>
#include <exception>
#include <numeric>

namespace heaplab {

void SplitVector::add(int s, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(s, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SplitVector& SplitVector::operator+=(const SplitVector& o) {
  for (const auto& [s, c] : o.terms_) add(s, c);
  return *this;
}

SplitVector& SplitVector::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [s, v] : terms_) v *= c;
  return *this;
}

Rational SplitVector::coefficient(int s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? Rational(0) : it->second;
}

OpExpr operator+(OpExpr a, const OpExpr& b) {
  a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
  return a;
}

OpExpr operator-(OpExpr a, const OpExpr& b) {
  for (const auto& [c, w] : b.terms) a.terms.emplace_back(-c, w);
  return a;
}

OpExpr operator*(const OpExpr& a, const OpExpr& b) {
  OpExpr out;
  for (const auto& [ca, wa] : a.terms)
    for (const auto& [cb, wb] : b.terms) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.terms.emplace_back(ca * cb, std::move(w));
    }
  return out;
}

OpExpr operator*(const Rational& c, OpExpr a) {
  for (auto& t : a.terms) t.first *= c;
  return a;
}

std::size_t OpExpr::max_length() const {
  std::size_t m = 0;
  for (const auto& t : terms) m = std::max(m, t.second.size());
  return m;
}

OpExpr X(ColorId a) { return OpExpr::gen({Generator::Kind::X, a}); }
OpExpr Y(ColorId a) { return OpExpr::gen({Generator::Kind::Y, a}); }
OpExpr H(ColorId a) { return OpExpr::gen({Generator::Kind::H, a}); }
OpExpr commutator(const OpExpr& a, const OpExpr& b) { return a * b - b * a; }

SplitVector OperatorContext::apply(const Generator& g, int s) const {
  SplitVector out;
  switch (g.kind) {
    case Generator::Kind::X:
    case Generator::Kind::Y: {
      if (!graph_->complete[s])
        throw PreconditionError("operator applied at a split outside the explored region");
      const auto& steps = g.kind == Generator::Kind::X ? graph_->up[s] : graph_->down[s];
      for (const auto& st : steps)
        if (st.color == g.color) out.add(st.target, 1);
      break;
    }
    case Generator::Kind::H:
      if (!weights_) throw PreconditionError("diagonal operators need a weight function");
      out.add(s, weights_->at(g.color, s));
      break;
  }
  return out;
}

SplitVector OperatorContext::apply(const Generator& g, const SplitVector& v) const {
  SplitVector out;
  for (const auto& [s, c] : v.terms()) {
    SplitVector part = apply(g, s);
    part *= c;
    out += part;
  }
  return out;
}

SplitVector OperatorContext::apply(const Word& w, const SplitVector& v) const {
  SplitVector cur = v;
  for (auto it = w.rbegin(); it != w.rend() && !cur.is_zero(); ++it) cur = apply(*it, cur);
  return cur;
}

SplitVector OperatorContext::apply(const OpExpr& e, int s) const {
  const SplitVector start = SplitVector::basis(s);
  SplitVector out;
  for (const auto& [c, w] : e.terms) {
    SplitVector part = apply(w, start);
    part *= c;
    out += part;
  }
  return out;
}

std::string relation_set_name(RelationSet r) {
  switch (r) {
    case RelationSet::XX: return "XX";
    case RelationSet::YY: return "YY";
    case RelationSet::HH: return "HH";
    case RelationSet::HX: return "HX";
    case RelationSet::HY: return "HY";
    case RelationSet::XY: return "XY";
  }
  return "?";
}

namespace {

const char* hx_label(const ColorGraph& G, ColorId a, ColorId b) {
  if (a == b) return ".i";
  return G.adjacent(a, b) ? ".ii" : ".iii";
}

}  // namespace

std::vector<RelationInstance> relation_instances(const ColorGraph& G,
                                                 const std::vector<RelationSet>& sets) {
  std::vector<RelationInstance> out;
  const int n = G.size();
  for (RelationSet set : sets) {
    switch (set) {
      case RelationSet::XX:
      case RelationSet::YY: {
        const bool x = set == RelationSet::XX;
        auto E = [x](ColorId c) { return x ? X(c) : Y(c); };
        const std::string p = x ? "XX" : "YY";
        for (ColorId a = 0; a < n; ++a)
          for (ColorId b = a + 1; b < n; ++b)
            if (G.distant(a, b)) out.push_back({p + ".i", {a, b}, commutator(E(b), E(a))});
        for (ColorId a = 0; a < n; ++a)
          for (ColorId b = 0; b < n; ++b)
            if (a != b)
              out.push_back({p + ".ii", {a, b}, commutator(E(a), commutator(E(a), E(b)))});
        break;
      }
      case RelationSet::HH:
        for (ColorId a = 0; a < n; ++a)
          for (ColorId b = a + 1; b < n; ++b)
            out.push_back({"HH", {a, b}, commutator(H(b), H(a))});
        break;
      case RelationSet::HX:
      case RelationSet::HY: {
        const bool x = set == RelationSet::HX;
        for (ColorId a = 0; a < n; ++a)
          for (ColorId b = 0; b < n; ++b) {
            const Rational t(G.theta(a, b));
            OpExpr e = x ? commutator(H(b), X(a)) - t * X(a) : commutator(H(b), Y(a)) + t * Y(a);
            out.push_back({std::string(x ? "HX" : "HY") + hx_label(G, a, b), {a, b}, std::move(e)});
          }
        break;
      }
      case RelationSet::XY:
        for (ColorId a = 0; a < n; ++a)
          out.push_back({"XY.i", {a}, commutator(X(a), Y(a)) - H(a)});
        for (ColorId a = 0; a < n; ++a)
          for (ColorId b = 0; b < n; ++b)
            if (a != b) out.push_back({"XY.ii", {a, b}, commutator(X(b), Y(a))});
        break;
    }
  }
  return out;
}

namespace {

std::vector<int> resolve(const OperatorContext& ctx, const std::vector<int>& domain) {
  if (!domain.empty()) return domain;
  std::vector<int> all(ctx.graph().size());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

RelationReport verify_one(const OperatorContext& ctx, const RelationInstance& rel,
                          const std::vector<int>& domain, VerifyMode mode) {
  RelationReport r{rel.name, rel.colors};
  for (int s : domain) {
    SplitVector d = ctx.apply(rel.defect, s);
    if (d.is_zero()) continue;
    if (r.holds) {
      r.holds = false;
      r.witness_split = s;
      r.defect = std::move(d);
    }
    ++r.defect_count;
    if (mode == VerifyMode::early_exit) break;
  }
  return r;
}

}  // namespace

std::vector<RelationReport> verify_relations(const OperatorContext& ctx,
                                             const std::vector<RelationInstance>& relations,
                                             const std::vector<int>& domain, VerifyMode mode) {
  const auto dom = resolve(ctx, domain);
  std::vector<RelationReport> out;
  out.reserve(relations.size());
  for (const auto& rel : relations) out.push_back(verify_one(ctx, rel, dom, mode));
  return out;
}

std::vector<RelationReport> verify_relations_parallel(const OperatorContext& ctx,
                                                      const std::vector<RelationInstance>& relations,
                                                      const std::vector<int>& domain,
                                                      VerifyMode mode) {
  const auto dom = resolve(ctx, domain);
  std::vector<RelationReport> out(relations.size());
  const long n = static_cast<long>(relations.size());
  // Exceptions cannot cross the parallel region; the first one is rethrown after it.
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = verify_one(ctx, relations[i], dom, mode);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

bool all_hold(const std::vector<RelationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.holds; });
}

bool relations_hold(const OperatorContext& ctx, const std::vector<RelationInstance>& relations,
                    const std::vector<int>& domain) {
  const auto dom = resolve(ctx, domain);
  for (const auto& rel : relations)
    for (int s : dom)
      if (!ctx.apply(rel.defect, s).is_zero()) return false;
  return true;
}

NilpotencyReport check_square_nilpotent(const OperatorContext& ctx, Generator::Kind family,
                                        const std::vector<int>& domain) {
  const auto dom = resolve(ctx, domain);
  NilpotencyReport r;
  for (ColorId a = 0; a < ctx.graph().num_colors; ++a) {
    const Word sq{{family, a}, {family, a}};
    for (int s : dom) {
      SplitVector v = ctx.apply(sq, SplitVector::basis(s));
      if (!v.is_zero()) {
        r.holds = false;
        r.color = a;
        r.witness_split = s;
        r.image = std::move(v);
        return r;
      }
    }
  }
  return r;
}

std::vector<RelationReport> check_XY_cross(const OperatorContext& ctx, const ColorGraph& G,
                                           bool ec_holds, const std::vector<int>& domain) {
  if (!ec_holds) throw PreconditionError("the cross relation check needs EC");
  std::vector<RelationInstance> rels;
  for (const auto& r : relation_instances(G, {RelationSet::XY}))
    if (r.name == "XY.ii") rels.push_back(r);
  return verify_relations(ctx, rels, domain, VerifyMode::early_exit);
}

}  // namespace heaplab
