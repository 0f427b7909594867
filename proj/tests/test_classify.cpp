#include <doctest.h>

#include "heaplab/classify.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace heaplab;
using namespace support;

namespace {

std::vector<Instance> sweep(int n, int c, long random_count) {
  GeneratorConfig cfg;
  cfg.max_elements = n;
  cfg.max_colors = c;
  cfg.exact_size = false;
  auto out = generate_instances(cfg);
  GeneratorConfig rnd;
  rnd.mode = GeneratorMode::random;
  rnd.max_elements = 6;
  rnd.max_colors = 3;
  rnd.count = random_count;
  rnd.seed = 31;
  for (auto& i : generate_instances(rnd)) out.push_back(std::move(i));
  return out;
}

bool eigen_in_unit(const std::set<Rational>& e) {
  for (const auto& v : e)
    if (v != Rational(-1) && v != Rational(0) && v != Rational(1)) return false;
  return true;
}

}  // namespace

TEST_CASE("algebra names") {
  for (auto k : {AlgebraKind::n_plus, AlgebraKind::n_minus, AlgebraKind::b_plus_derived,
                 AlgebraKind::b_minus_derived, AlgebraKind::g_derived})
    CHECK(parse_algebra(algebra_name(k)) == k);
  CHECK(relation_sets(AlgebraKind::b_plus_derived) ==
        std::vector<RelationSet>{RelationSet::XX, RelationSet::HH, RelationSet::HX});
  CHECK(relation_sets(AlgebraKind::g_derived).size() == 6);
  CHECK_THROWS_AS(parse_algebra("sl2"), InputError);
}

TEST_CASE("classification of the fixtures") {
  const ClassificationReport f2 = classify_poset(fig2());
  CHECK(f2.d_complete);
  CHECK_FALSE(f2.minuscule);
  REQUIRE(f2.witnesses.size() == 1);
  CHECK(f2.witnesses[0] == "Mn1LA: z; offenders u, v, q");

  const LoadedInput in = load("fig1.json");
  const ClassificationReport f1 = classify_poset(*in.heap);
  CHECK(f1.d_complete);
  CHECK(f1.minuscule);

  const SplitBall ball = in.heap->ball(*in.seed, 2);
  for (const auto& s : ball.splits) CHECK(classify_filter(*in.heap, s).d_complete);
}

TEST_CASE("representations of the fixtures") {
  const SplitLattice L = SplitLattice::enumerate(fig2());
  const RepresentationReport b = build_representation(L, AlgebraKind::b_plus_derived);
  CHECK(b.relations_hold());
  REQUIRE(b.minuscule.has_value());
  CHECK(b.minuscule->holds);
  CHECK(b.holds());
  CHECK(b.eigenvalues == std::set<Rational>{-1, 0, 1, 2});

  const RepresentationReport g = build_representation(L, AlgebraKind::g_derived);
  CHECK_FALSE(g.holds());
  CHECK((!g.relations_hold() || !eigen_in_unit(g.eigenvalues)));

  const LoadedInput in = load("fig1.json");
  const RepresentationReport p = build_representation(*in.heap, *in.seed, 4, AlgebraKind::g_derived);
  CHECK_FALSE(p.refused);
  CHECK(p.interior_only);
  CHECK_FALSE(p.domain.empty());
  CHECK(p.relations_hold());
  CHECK(eigen_in_unit(p.eigenvalues));
  CHECK(p.holds());

  const RepresentationReport small = build_representation(*in.heap, *in.seed, 2, AlgebraKind::g_derived);
  CHECK(small.refused);

  const RepresentationReport par = build_representation(L, AlgebraKind::g_derived, true);
  CHECK(par.relations.size() == g.relations.size());
  CHECK(par.holds() == g.holds());
}

TEST_CASE("equivalences on named instances") {
  const EquivalenceReport f2 = verify_equivalences(fig2());
  CHECK(f2.all_agree());
  REQUIRE(f2.find("upper_minuscule") != nullptr);
  REQUIRE(f2.find("g_prime_minuscule") != nullptr);

  const EquivalenceReport ab = verify_equivalences(chain(two_adjacent(), {0, 1}));
  const CheckOutcome* np = ab.find("n_plus");
  REQUIRE(np != nullptr);
  CHECK(np->applicable);
  CHECK(np->agree);

  const EquivalenceReport aa = verify_equivalences(chain(one_color(), {0, 0}));
  CHECK(aa.find("square_nilpotency")->agree);
  CHECK(aa.all_agree());
  CHECK(verify_duality(fig2()).all_agree());
}

TEST_CASE("instance generator") {
  GeneratorConfig one;
  one.max_elements = 1;
  one.max_colors = 1;
  CHECK(generate_instances(one).size() == 1);

  GeneratorConfig two;
  two.max_elements = 2;
  two.max_colors = 1;
  CHECK(generate_instances(two).size() == 2);

  GeneratorConfig rnd;
  rnd.mode = GeneratorMode::random;
  rnd.max_elements = 5;
  rnd.max_colors = 3;
  rnd.seed = 7;
  rnd.count = 50;
  const auto a = generate_instances(rnd), b = generate_instances(rnd);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].label == b[i].label);
    CHECK(a[i].poset.covers() == b[i].poset.covers());
    CHECK(a[i].poset.colors() == b[i].poset.colors());
    CHECK(a[i].poset.graph() == b[i].poset.graph());
    CHECK(a[i].poset.size() <= 5);
    CHECK(a[i].poset.graph().size() <= 3);
  }

  GeneratorConfig big;
  big.max_elements = 7;
  CHECK_THROWS_AS(generate_instances(big), CapacityError);
}

TEST_CASE("classification and representations against the oracle") {
  long d_complete = 0, minuscule = 0;
  for (const auto& inst : sweep(4, 3, 1500)) {
    const FinitePoset& P = inst.poset;
    const oracle::Model M(P);
    const ClassificationReport c = classify_poset(P);
    CHECK(c.d_complete == M.d_complete());
    CHECK(c.minuscule == M.minuscule());
    if (!M.EC()) continue;

    // With the census weights: d-complete gives the upper Borel relations,
    // minuscule gives all relations with eigenvalues in {-1, 0, 1}.
    const auto ops = M.operators();
    const auto H = M.diagonal(ops);
    const oracle::Relations r = oracle::check_relations(M, ops, &H);
    if (M.d_complete()) {
      ++d_complete;
      CHECK((r.XX && r.HH && r.HX));
      CHECK(oracle::square_nilpotent(ops.X));
      const SplitLattice L = SplitLattice::enumerate(P);
      CHECK(build_representation(L, AlgebraKind::b_plus_derived).holds());
    }
    if (M.minuscule()) {
      ++minuscule;
      CHECK((r.XX && r.YY && r.HH && r.HX && r.HY && r.XY));
      const SplitLattice L = SplitLattice::enumerate(P);
      const RepresentationReport g = build_representation(L, AlgebraKind::g_derived);
      CHECK(g.holds());
      CHECK(eigen_in_unit(g.eigenvalues));
    }
  }
  CHECK(d_complete > 20);
  CHECK(minuscule > 10);
}

TEST_CASE("harness is independent of the job count") {
  GeneratorConfig cfg;
  cfg.max_elements = 3;
  cfg.max_colors = 2;
  cfg.exact_size = false;
  const auto instances = generate_instances(cfg);
  HarnessOptions serial;
  serial.weight_samples = 2;
  HarnessOptions parallel = serial;
  parallel.jobs = 3;
  const HarnessSummary a = run_harness(instances, serial);
  const HarnessSummary b = run_harness(instances, parallel);
  CHECK(a.instances == static_cast<long>(instances.size()));
  CHECK(a.total_disagreements() == 0);
  CHECK(a.agreements == b.agreements);
  CHECK(a.applicable == b.applicable);
  CHECK(a.disagreements == b.disagreements);
  CHECK(a.guard_cases == b.guard_cases);
  for (const auto& [k, w] : a.weight_laws) {
    CHECK(b.weight_laws.at(k).constructed == w.constructed);
    CHECK(b.weight_laws.at(k).transitivity_checked == w.transitivity_checked);
  }
  for (const auto& name : equivalence_names()) CHECK(a.agreements.count(name) == 1);
}
