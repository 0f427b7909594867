#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "support.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = "cd " + std::string(HEAPLAB_FIXTURES) + " && " + env + " " + HEAPLAB_CLI +
                          " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool has(const Run& r, const std::string& s) { return r.out.find(s) != std::string::npos; }

}  // namespace

TEST_CASE("check") {
  const Run f2 = run("check fig2.json --all");
  CHECK(f2.code == 1);
  CHECK(has(f2, "Mn1LA: fails"));
  CHECK(has(f2, "offenders u, v, q"));

  const Run f1 = run("check fig1.json --all --window 3");
  CHECK(f1.code == 0);
  CHECK_FALSE(has(f1, "fails"));

  CHECK(run("check missing.json").code == 2);
  CHECK(run("check fig2.json I2A").code == 0);
  CHECK(run("check fig2.json Bogus").code == 2);

  const Run js = run("check fig2.json Mn1LA --format json");
  CHECK(has(js, "\"offenders\""));
}

TEST_CASE("lattice") {
  CHECK(has(run("lattice fig2.json"), "13 splits"));
  CHECK(has(run("lattice antichain2.json"), "4 splits"));
  const Run capped = run("lattice fig2.json", "HEAPLAB_SPLIT_CAP=5");
  CHECK(capped.code == 1);
  CHECK(run("lattice fig2.json --cap 5").code == 1);
  const Run z = run("lattice zchain.json");
  CHECK(z.code == 0);
  CHECK(has(z, "3 components"));
}

TEST_CASE("rep") {
  const Run b = run("rep fig2.json --algebra b-plus");
  CHECK(b.code == 0);
  CHECK(has(b, "relations: all hold"));
  CHECK(has(b, "upper P-minuscule: yes"));

  const Run g = run("rep fig2.json --algebra g-prime");
  CHECK(g.code == 1);
  CHECK(has(g, "fails"));
  CHECK(has(g, "defect"));

  const Run p = run("rep fig1.json --algebra g-prime --ball 4");
  CHECK(p.code == 0);
  CHECK(has(p, "holds on interior"));

  CHECK(run("rep fig2.json --algebra nonsense").code == 2);
}

TEST_CASE("weights and classify") {
  const Run w = run("weights fig3.json");
  CHECK(w.code == 0);
  CHECK(has(w, "d: upsilon 1"));
  CHECK(has(w, "g: upsilon 2"));
  CHECK(has(w, "a: upsilon 0"));

  const Run f2 = run("weights fig2.json");
  CHECK(has(f2, "a=-1 b=0 c=0 d=2 g=-1"));

  const Run c = run("classify fig2.json");
  CHECK(c.code == 0);
  CHECK(has(c, "d-complete: yes"));
  CHECK(has(c, "minuscule: no"));
}

TEST_CASE("verify") {
  const Run one = run("verify --max-elements 1 --max-colors 1 --format json");
  CHECK(one.code == 0);
  CHECK(has(one, "\"instances\": 1"));
  const Run small = run("verify --max-elements 3 --max-colors 2 --jobs 2");
  CHECK(small.code == 0);
  CHECK(has(small, "0 disagree"));
  const Run big = run("verify --max-elements 7");
  CHECK(big.code == 1);
  CHECK(has(big, "6 elements"));
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("check").code == 2);
}
