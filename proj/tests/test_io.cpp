#include <doctest.h>

#include "heaplab/io.hpp"
#include "support.hpp"

using namespace heaplab;
using namespace support;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_input(json::parse(text), "doc");
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("fixtures load") {
  CHECK(load("fig2.json").kind == InputKind::poset);
  CHECK(load("fig1.json").kind == InputKind::heap);
  CHECK(load("fig1.json").seed.has_value());
  CHECK(load("fig3.json").kind == InputKind::tailed);
  CHECK(load("zchain.json").kind == InputKind::heap);
  CHECK(load("antichain2.json").poset->size() == 2);
  CHECK_THROWS_AS(load("missing.json"), InputError);
}

TEST_CASE("poset round trip") {
  const FinitePoset P = fig2();
  const LoadedInput back = parse_input(poset_to_json(P));
  REQUIRE(back.poset.has_value());
  CHECK(back.poset->names() == P.names());
  CHECK(back.poset->colors() == P.colors());
  CHECK(back.poset->covers() == P.covers());
  CHECK(back.poset->graph() == P.graph());

  const PeriodicHeap H = *load("fig1.json").heap;
  const LoadedInput hb = parse_input(heap_to_json(H));
  REQUIRE(hb.heap.has_value());
  CHECK(hb.heap->num_cells() == H.num_cells());
  CHECK(hb.heap->covers().size() == H.covers().size());
}

TEST_CASE("lattice export round trip") {
  const SplitLattice L = SplitLattice::enumerate(fig2());
  const json j = lattice_to_json(L);
  CHECK(j["splits"].size() == 13);
  CHECK(j["edges"][0].contains("color"));
  CHECK(parse_lattice_json(json::parse(j.dump())) == lattice_data(L));

  const std::string dot = lattice_to_dot(L);
  CHECK(dot.find("label=\"a\"") != std::string::npos);
  CHECK(dot.find("digraph") != std::string::npos);
}

TEST_CASE("report formats") {
  const FinitePoset P = fig2();
  const json r = to_json(check_property(P, parse_property("Mn1LA")));
  CHECK(r["property"] == "Mn1LA");
  CHECK(r["k"] == 1);
  CHECK(r["holds"] == false);
  CHECK(r["witness"]["extreme"] == "z");
  CHECK(r["witness"]["offenders"] == json::array({"u", "v", "q"}));

  WeightFunction w(1, 2);
  w.at(0, 1) = Rational(-3, 4);
  const json rows = weights_to_json(w, one_color());
  REQUIRE(rows.size() == 2);
  CHECK(rows[1]["value"] == "-3/4");
  CHECK(rows[0]["value"] == "0");
  CHECK(rows[1]["color"] == "a");
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(to_string(Rational(6, 3)) == "2");
}

TEST_CASE("input errors name the failing field") {
  CHECK(error_of(R"({"graph":{"colors":["a"],"edges":[]}})").find("poset") != std::string::npos);
  CHECK(error_of(R"({"graph":{"colors":["a"],"edges":[["a"]]},"poset":{"elements":[],"covers":[]}})").find("edges") !=
        std::string::npos);
  CHECK(error_of(R"({"graph":{"colors":["a"],"edges":[]},
                     "poset":{"elements":[{"id":"x","color":"q"}],"covers":[]}})")
            .find("q") != std::string::npos);
  CHECK(error_of(R"({"graph":{"colors":["a"],"edges":[]},
                     "heap":{"cells":[{"id":"x","color":"a"}],"covers":[{"from":"x","to":"x","shift":"1"}]}})")
            .find("shift") != std::string::npos);
  CHECK_THROWS_AS(parse_input(json::parse("[1,2]")), InputError);
}
