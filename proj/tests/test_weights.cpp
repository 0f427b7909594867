#include <doctest.h>

#include "heaplab/classify.hpp"
#include "heaplab/weights.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace heaplab;
using namespace support;

namespace {

std::uint32_t mask_of(const ElementSet& s) {
  std::uint32_t m = 0;
  for (int x : s.members()) m |= 1u << x;
  return m;
}

std::vector<Instance> ec_sweep() {
  GeneratorConfig cfg;
  cfg.max_elements = 5;
  cfg.max_colors = 2;
  cfg.exact_size = false;
  auto out = generate_instances(cfg);
  GeneratorConfig rnd;
  rnd.mode = GeneratorMode::random;
  rnd.max_elements = 6;
  rnd.max_colors = 3;
  rnd.count = 2000;
  rnd.seed = 23;
  for (auto& i : generate_instances(rnd)) out.push_back(std::move(i));
  return out;
}

}  // namespace

TEST_CASE("census values on the tailed fixture") {
  const LoadedInput in = load("fig3.json");
  REQUIRE(in.tailed.has_value());
  const TailedPoset& P = *in.tailed;
  const ColorGraph& G = P.core.graph();
  CHECK(compute_upsilon(P, G.id("d"), *in.tailed_split) == 1);
  CHECK(compute_upsilon(P, G.id("g"), *in.tailed_split) == 2);
  CHECK(compute_upsilon(P, G.id("a"), *in.tailed_split) == 0);
}

TEST_CASE("census and mu on the D5 example") {
  const FinitePoset P = fig2();
  const ColorGraph& G = P.graph();
  const ElementSet none = P.empty_set();
  const Census psi_d = psi_census(P, G.id("d"), none);
  CHECK(psi_d.value == 3);
  CHECK(psi_d.extreme == P.id("z"));
  CHECK(psi_d.members == std::vector<ElementId>{P.id("u"), P.id("v"), P.id("q")});
  CHECK(compute_psi(P, G.id("a"), none) == 0);

  const std::vector<int> expect{-1, 0, 0, 2, -1};
  for (ColorId b = 0; b < 5; ++b) CHECK(compute_mu(P, b, none) == expect[b]);

  // A maximal element of color b in the ideal forces +1.
  const SplitLattice L = SplitLattice::enumerate(P);
  for (int s = 0; s < L.size(); ++s)
    for (int x : L.ideal(s).members()) {
      bool maximal = true;
      for (int y : L.ideal(s).members()) maximal = maximal && !P.less(x, y);
      if (maximal) CHECK(compute_mu(P, P.color(x), L.ideal(s)) == 1);
    }

  CHECK(mu_prime_weights(L) == mu_weights(L));
  CHECK(compute_mu(P, G.id("d"), P.all()) == 1);
  CHECK(compute_mu_prime(P, G.id("d"), P.all()) == 1);
  CHECK_THROWS_AS(compute_mu(antichain(one_color(), {0, 0}), 0, P.empty_set()), PreconditionError);
}

TEST_CASE("mu and mu-prime against the census oracle") {
  long separating = 0;
  long checked = 0;
  for (const auto& inst : ec_sweep()) {
    const FinitePoset& P = inst.poset;
    const oracle::Model M(P);
    if (!M.EC()) continue;
    const SplitLattice L = SplitLattice::enumerate(P);
    const WeightFunction mu = mu_weights(L);
    const WeightFunction mup = mu_prime_weights(L);
    bool differ = false;
    for (int s = 0; s < L.size(); ++s)
      for (ColorId b = 0; b < M.m; ++b) {
        const std::uint32_t I = mask_of(L.ideal(s));
        CHECK(mu.at(b, s) == Rational(M.mu(b, I)));
        CHECK(mup.at(b, s) == Rational(M.mu_prime(b, I)));
        CHECK(compute_upsilon(P, b, L.ideal(s)) == M.upsilon(b, I));
        CHECK(compute_psi(P, b, L.ideal(s)) == M.psi(b, I));
        differ = differ || mu.at(b, s) != mup.at(b, s);
        ++checked;
      }
    if (M.AC() && M.I2A()) {
      CHECK(!differ);
      // Minimal filter elements pin -1, maximal ideal elements pin +1.
      for (int s = 0; s < L.size(); ++s) {
        for (const auto& st : L.graph().up[s]) CHECK(mu.at(st.color, s) == Rational(-1));
        for (const auto& st : L.graph().down[s]) CHECK(mu.at(st.color, s) == Rational(1));
      }
      CHECK(is_edge_weight(mu, L.graph(), P.graph()).holds);
    }
    if (differ) {
      CHECK_FALSE((M.AC() && M.I2A()));
      ++separating;
    }
  }
  CHECK(checked > 10000);
  CHECK(separating > 0);
}

TEST_CASE("edge and component laws on the D5 example") {
  const FinitePoset P = fig2();
  const SplitLattice L = SplitLattice::enumerate(P);
  const ColorGraph& G = P.graph();
  const WeightFunction mu = mu_weights(L);
  const auto comp = L.components();
  const DeltaFn dl = lattice_delta(L);
  CHECK(is_edge_weight(mu, L.graph(), G).holds);
  CHECK(is_component_weight(mu, G, comp, dl).holds);

  const WeightLawReport zero = is_edge_weight(WeightFunction(5, L.size()), L.graph(), G);
  CHECK_FALSE(zero.holds);
  CHECK(zero.color == zero.edge_color);

  WeightFunction shifted = mu;
  for (ColorId b = 0; b < 5; ++b)
    for (int s = 0; s < L.size(); ++s) shifted.at(b, s) += Rational(b + 1, 3);
  CHECK(is_component_weight(shifted, G, comp, dl).holds);
  CHECK(is_edge_weight(shifted, L.graph(), G).holds);

  WeightFunction bent = mu;
  bent.at(2, 5) += 1;
  CHECK_FALSE(is_edge_weight(bent, L.graph(), G).holds);
  CHECK_FALSE(is_component_weight(bent, G, comp, dl).holds);
}

TEST_CASE("construction from base values") {
  const FinitePoset P = fig2();
  const SplitLattice L = SplitLattice::enumerate(P);
  const WeightFunction mu = mu_weights(L);

  WeightBase base{L.bottom(), {}};
  for (ColorId b = 0; b < 5; ++b) base.values.push_back(mu.at(b, L.bottom()));
  CHECK(construct_weight(L, base) == mu);

  WeightBase other{7, {Rational(1, 2), Rational(-3), Rational(0), Rational(5, 7), Rational(2)}};
  const WeightFunction eta = construct_weight(L, other);
  CHECK(is_edge_weight(eta, L.graph(), P.graph()).holds);
  for (ColorId b = 0; b < 5; ++b) {
    CHECK(eta.at(b, 7) == other.values[b]);
    const Rational offset = eta.at(b, 0) - mu.at(b, 0);
    for (int s = 0; s < L.size(); ++s) CHECK(eta.at(b, s) - mu.at(b, s) == offset);
  }

  const SplitLattice one = SplitLattice::enumerate(chain(one_color(), {0}));
  const WeightFunction w = construct_weight(one, WeightBase{one.bottom(), {Rational(0)}});
  CHECK(w.at(0, one.top()) - w.at(0, one.bottom()) == Rational(2));
}

TEST_CASE("eigenvalues and minuscule conditions") {
  const SplitLattice L = SplitLattice::enumerate(fig2());
  const WeightFunction mu = mu_weights(L);
  CHECK(eigenvalue_set(mu) == std::set<Rational>{-1, 0, 1, 2});
  CHECK(eigenvalue_set(WeightFunction(5, L.size())) == std::set<Rational>{0});
  CHECK(check_minuscule_conditions(mu, L.graph(), MinusculeMode::upper).holds);
  const MinusculeReport lower = check_minuscule_conditions(mu, L.graph(), MinusculeMode::lower);
  CHECK_FALSE(lower.holds);
  CHECK(lower.value == Rational(2));

  const LoadedInput in = load("fig1.json");
  const SplitBall ball = in.heap->ball(*in.seed, 4);
  const WeightFunction pm = mu_weights(*in.heap, ball);
  const auto interior = ball.interior(1);
  for (const auto& v : eigenvalue_set(pm, interior)) CHECK((v == Rational(-1) || v == Rational(0) || v == Rational(1)));
  CHECK(check_minuscule_conditions(pm, ball.graph, MinusculeMode::full, interior).holds);
  CHECK(is_edge_weight(pm, ball.graph, in.heap->graph()).holds);
}

TEST_CASE("uniqueness probe") {
  const FinitePoset P = fig2();
  const SplitLattice L = SplitLattice::enumerate(P);
  const WeightFunction mu = mu_weights(L);
  const UniquenessReport self = uniqueness_probe(L, mu);
  CHECK(self.applicable);
  CHECK(self.equal);

  // The pinned edge weight function rebuilt from one -1 pin is mu again.
  const ForcedWeight forced = forced_edge_weight(construct_weight(L, WeightBase{0, {0, 0, 0, 0, 0}}),
                                                 L.graph(), Direction::up);
  REQUIRE(forced.exists);
  CHECK(forced.eta == mu);
  CHECK(uniqueness_probe(L, forced.eta).equal);

  // A color with no occurrence has no edges, so the probe must refuse.
  const FinitePoset sparse = FinitePoset::from_indices(two_adjacent(), {0}, {}, {}, ColorMode::keep_graph);
  const SplitLattice S = SplitLattice::enumerate(sparse);
  const UniquenessReport refused = uniqueness_probe(S, WeightFunction(2, S.size()));
  CHECK_FALSE(refused.applicable);
  CHECK(refused.reason.find("no edge of color") != std::string::npos);
}

TEST_CASE("weight-law suite on generated instances") {
  GeneratorConfig cfg;
  cfg.max_elements = 4;
  cfg.max_colors = 2;
  cfg.exact_size = false;
  WeightLawCounts total;
  for (const auto& inst : generate_instances(cfg)) total += weight_law_suite(inst.poset, 17, 3);
  CHECK(total.constructed > 1000);
  CHECK(total.law_disagreements == 0);
  CHECK(total.transitivity_checked > 0);
  CHECK(total.transitivity_failures == 0);
  CHECK(total.uniqueness_applicable > 0);
  CHECK(total.uniqueness_failures == 0);
  CHECK(total.first_failure.empty());
}
