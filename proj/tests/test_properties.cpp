#include <doctest.h>

#include "heaplab/classify.hpp"
#include "heaplab/properties.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace heaplab;
using namespace support;

namespace {

bool oracle_holds(const oracle::Model& M, const PropertySpec& p) {
  switch (p.property) {
    case Property::EC: return M.EC();
    case Property::ND: return M.ND();
    case Property::NA: return M.NA();
    case Property::I3ND: return M.I3ND();
    case Property::AC: return M.AC();
    case Property::I2A: return M.I2A();
    case Property::MxkGA: return M.MxGA(p.k);
    case Property::MnkLA: return M.MnLA(p.k);
  }
  return false;
}

// The reported witness must itself violate the property.
void check_witness(const FinitePoset& P, const oracle::Model& M, const PropertyReport& r) {
  REQUIRE(r.witness.has_value());
  const Witness& w = *r.witness;
  const auto& e = w.elements;
  switch (r.spec.property) {
    case Property::EC:
      REQUIRE(e.size() == 2);
      CHECK(M.color[e[0]] == M.color[e[1]]);
      CHECK_FALSE(M.comparable(e[0], e[1]));
      break;
    case Property::AC:
      REQUIRE(e.size() == 2);
      CHECK(M.adj[M.color[e[0]]][M.color[e[1]]]);
      CHECK_FALSE(M.comparable(e[0], e[1]));
      break;
    case Property::ND:
      REQUIRE(e.size() == 2);
      CHECK(M.cover[e[0]][e[1]]);
      CHECK(M.color[e[0]] == M.color[e[1]]);
      break;
    case Property::NA:
      REQUIRE(e.size() == 2);
      CHECK(M.cover[e[0]][e[1]]);
      CHECK_FALSE(M.adj[M.color[e[0]]][M.color[e[1]]]);
      break;
    case Property::I3ND:
      REQUIRE(e.size() == 3);
      CHECK(M.cover[e[0]][e[1]]);
      CHECK(M.cover[e[1]][e[2]]);
      CHECK(M.color[e[0]] == M.color[e[2]]);
      CHECK(P.open_interval(e[0], e[2]).count() == 1);
      break;
    case Property::I2A:
      REQUIRE(e.size() == 2);
      CHECK(M.consecutive(e[0], e[1]));
      CHECK(w.census != 2);
      break;
    case Property::MxkGA:
      CHECK(M.max_of_color(w.extreme));
      CHECK(static_cast<int>(w.offenders.size()) > r.spec.k);
      for (int o : w.offenders) CHECK(M.lt[w.extreme][o]);
      break;
    case Property::MnkLA:
      CHECK(M.min_of_color(w.extreme));
      CHECK(static_cast<int>(w.offenders.size()) > r.spec.k);
      for (int o : w.offenders) CHECK(M.lt[o][w.extreme]);
      break;
  }
}

}  // namespace

TEST_CASE("parse property names") {
  CHECK(parse_property("Mn1LA") == PropertySpec{Property::MnkLA, 1});
  CHECK(parse_property("Mx3GA") == PropertySpec{Property::MxkGA, 3});
  CHECK(parse_property("I2A").property == Property::I2A);
  CHECK_THROWS_AS(parse_property("XYZ"), InputError);
  CHECK_THROWS_AS(parse_property("MxGA"), InputError);
  CHECK(all_properties().size() == 8);
}

TEST_CASE("properties of the D5 example") {
  const FinitePoset P = fig2();
  CHECK(check_property(P, parse_property("I2A")).holds);
  CHECK(check_property(P, parse_property("Mx1GA")).holds);
  const PropertyReport mn = check_property(P, parse_property("Mn1LA"));
  CHECK_FALSE(mn.holds);
  REQUIRE(mn.witness.has_value());
  CHECK(mn.witness->extreme == P.id("z"));
  CHECK(mn.witness->offenders == std::vector<ElementId>{P.id("u"), P.id("v"), P.id("q")});
  CHECK(describe_witness(mn) == "Mn1LA: z; offenders u, v, q");
  CHECK(implication_checks(P).consistent);
}

TEST_CASE("small cases") {
  const PropertyReport ec = check_property(antichain(one_color(), {0, 0}), parse_property("EC"));
  CHECK_FALSE(ec.holds);
  CHECK(ec.witness->elements == std::vector<ElementId>{0, 1});

  const FinitePoset chain2 = chain(one_color(), {0, 0});
  CHECK_FALSE(check_property(chain2, parse_property("I2A")).holds);
  CHECK_FALSE(check_property(chain2, parse_property("ND")).holds);
  CHECK(implication_checks(chain2).consistent);

  const FinitePoset single = chain(one_color(), {0});
  for (const char* p : {"EC", "ND", "NA", "I3ND", "AC", "I2A"})
    CHECK(check_property(single, parse_property(p)).holds);
}

TEST_CASE("periodic E6 heap satisfies all eight properties") {
  const PeriodicHeap H = *load("fig1.json").heap;
  for (const auto& spec : all_properties()) {
    const PropertyReport r3 = check_property(H, spec, 3);
    const PropertyReport r4 = check_property(H, spec, 4);
    CHECK_MESSAGE(r3.holds, spec.name());
    CHECK(r3.windows_agree);
    CHECK(r4.holds == r3.holds);
  }
}

TEST_CASE("integer chain fails the neighbor properties") {
  const PeriodicHeap Z = zchain();
  CHECK(check_property(Z, parse_property("EC")).holds);
  CHECK_FALSE(check_property(Z, parse_property("ND")).holds);
  CHECK_FALSE(check_property(Z, parse_property("I2A")).holds);
}

TEST_CASE("properties agree with quantifier expansion") {
  std::vector<Instance> instances;
  {
    GeneratorConfig cfg;
    cfg.max_elements = 5;
    cfg.max_colors = 2;
    cfg.exact_size = false;
    instances = generate_instances(cfg);
    GeneratorConfig rnd;
    rnd.mode = GeneratorMode::random;
    rnd.max_elements = 6;
    rnd.max_colors = 3;
    rnd.count = 3000;
    rnd.seed = 11;
    for (auto& i : generate_instances(rnd)) instances.push_back(std::move(i));
  }
  std::vector<PropertySpec> specs = all_properties();
  specs.push_back({Property::MxkGA, 2});
  specs.push_back({Property::MnkLA, 2});
  long failures_seen = 0;
  for (const auto& inst : instances) {
    const FinitePoset& P = inst.poset;
    const oracle::Model M(P);
    const FinitePoset D = P.dual();
    for (const auto& spec : specs) {
      const PropertyReport r = check_property(P, spec);
      CHECK_MESSAGE(r.holds == oracle_holds(M, spec), inst.label << " " << spec.name());
      if (!r.holds) {
        check_witness(P, M, r);
        ++failures_seen;
      }
    }
    // Order duality and monotonicity in k.
    auto holds = [](const FinitePoset& Q, const char* p) { return check_property(Q, parse_property(p)).holds; };
    CHECK(holds(P, "EC") == holds(D, "EC"));
    CHECK(holds(P, "I3ND") == holds(D, "I3ND"));
    CHECK(holds(P, "I2A") == holds(D, "I2A"));
    CHECK(holds(P, "Mx1GA") == holds(D, "Mn1LA"));
    if (holds(P, "Mx1GA")) CHECK(holds(P, "Mx2GA"));
    if (holds(P, "Mn1LA")) CHECK(holds(P, "Mn2LA"));
    CHECK(implication_checks(P).consistent);
  }
  CHECK(failures_seen > 1000);
}
