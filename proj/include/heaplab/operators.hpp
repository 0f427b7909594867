#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heaplab/poset.hpp"
#include "heaplab/splits.hpp"
#include "heaplab/weight_function.hpp"

namespace heaplab {

/// Finite formal combination of splits; zero coefficients are never stored.
class SplitVector {
 public:
  SplitVector() = default;
  static SplitVector basis(int s) {
    SplitVector v;
    v.terms_[s] = 1;
    return v;
  }

  void add(int s, const Rational& c);
  SplitVector& operator+=(const SplitVector& o);
  SplitVector& operator*=(const Rational& c);
  friend SplitVector operator+(SplitVector a, const SplitVector& b) { return a += b; }
  friend SplitVector operator-(SplitVector a, const SplitVector& b) {
    for (const auto& [s, c] : b.terms_) a.add(s, -c);
    return a;
  }

  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(int s) const;
  const std::map<int, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  friend bool operator==(const SplitVector&, const SplitVector&) = default;

 private:
  std::map<int, Rational> terms_;
};

struct Generator {
  enum class Kind { X, Y, H };
  Kind kind;
  ColorId color;
};

// Leftmost generator acts last: {A, B} means A·B.
using Word = std::vector<Generator>;

/// Rational combination of words.
struct OpExpr {
  std::vector<std::pair<Rational, Word>> terms;

  static OpExpr gen(Generator g) { return OpExpr{{{Rational(1), Word{g}}}}; }
  friend OpExpr operator+(OpExpr a, const OpExpr& b);
  friend OpExpr operator-(OpExpr a, const OpExpr& b);
  friend OpExpr operator*(const OpExpr& a, const OpExpr& b);
  friend OpExpr operator*(const Rational& c, OpExpr a);
  std::size_t max_length() const;
};

OpExpr X(ColorId a);
OpExpr Y(ColorId a);
OpExpr H(ColorId a);
OpExpr commutator(const OpExpr& a, const OpExpr& b);

/// Operators on the span of an indexed split graph. H reads the weight function.
/// Applying X or Y at a node whose neighborhood is incomplete throws
/// PreconditionError, so ball computations never silently truncate.
class OperatorContext {
 public:
  OperatorContext(const SplitGraph& graph, const WeightFunction* weights = nullptr)
      : graph_(&graph), weights_(weights) {}

  const SplitGraph& graph() const { return *graph_; }
  const WeightFunction* weights() const { return weights_; }

  SplitVector apply(const Generator& g, int s) const;
  SplitVector apply(const Generator& g, const SplitVector& v) const;
  SplitVector apply(const Word& w, const SplitVector& v) const;
  SplitVector apply(const OpExpr& e, int s) const;

 private:
  const SplitGraph* graph_;
  const WeightFunction* weights_;
};

enum class RelationSet { XX, YY, HH, HX, HY, XY };

std::string relation_set_name(RelationSet r);

struct RelationInstance {
  std::string name;              // e.g. "HX.ii"
  std::vector<ColorId> colors;   // as they appear in the relation
  OpExpr defect;                 // must act as zero
};

// Every instance of the requested sets over the colors of Γ, in canonical order.
std::vector<RelationInstance> relation_instances(const ColorGraph& G,
                                                 const std::vector<RelationSet>& sets);

struct RelationReport {
  std::string relation;
  std::vector<ColorId> colors;
  bool holds = true;
  int witness_split = -1;
  SplitVector defect;
  int defect_count = 0;  // exhaustive mode only
};

enum class VerifyMode { early_exit, exhaustive };

// Evaluates each instance on every split of `domain` (all splits when empty).
std::vector<RelationReport> verify_relations(const OperatorContext& ctx,
                                             const std::vector<RelationInstance>& relations,
                                             const std::vector<int>& domain = {},
                                             VerifyMode mode = VerifyMode::early_exit);

// OpenMP version over relation instances; identical output to the serial one.
std::vector<RelationReport> verify_relations_parallel(
    const OperatorContext& ctx, const std::vector<RelationInstance>& relations,
    const std::vector<int>& domain = {}, VerifyMode mode = VerifyMode::early_exit);

bool all_hold(const std::vector<RelationReport>& reports);

// True when every instance vanishes on the domain; stops at the first defect.
bool relations_hold(const OperatorContext& ctx, const std::vector<RelationInstance>& relations,
                    const std::vector<int>& domain = {});

struct NilpotencyReport {
  bool holds = true;
  ColorId color = -1;
  int witness_split = -1;
  SplitVector image;  // the nonzero square applied to the witness
};

NilpotencyReport check_square_nilpotent(const OperatorContext& ctx, Generator::Kind family,
                                        const std::vector<int>& domain = {});

// [X_b, Y_a] = 0 for distinct colors; needs EC (pass the EC verdict).
std::vector<RelationReport> check_XY_cross(const OperatorContext& ctx, const ColorGraph& G,
                                           bool ec_holds, const std::vector<int>& domain = {});

}  // namespace heaplab
