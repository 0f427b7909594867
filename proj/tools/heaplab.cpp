// heaplab: properties, split lattices, representations and the equivalence harness.
//
// Exit codes: 0 success / everything holds, 1 something fails (or a capacity or
// precondition refusal), 2 bad input or usage.

#include <omp.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heaplab/classify.hpp"
#include "heaplab/io.hpp"

using namespace heaplab;

namespace {

struct Common {
  std::string input;
  std::size_t cap = 0;
  int window = 3;
  int ball = 4;
  std::string format = "text";
};

std::size_t effective_cap(const Common& c) { return c.cap ? c.cap : split_cap_from_env(); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot write");
  out << text;
}

PeriodicSplit seed_of(const LoadedInput& in) {
  return in.seed ? *in.seed : in.heap->uniform_split(0);
}

int cmd_check(const Common& c, const std::vector<std::string>& names, bool all) {
  const LoadedInput in = load_input(c.input);
  std::vector<PropertySpec> specs;
  for (const auto& n : names) specs.push_back(parse_property(n));
  if (all || specs.empty()) specs = all_properties(1);
  if (in.kind == InputKind::tailed) throw InputError(c.input + ": property checks need a poset or heap");
  json reports = json::array();
  bool ok = true;
  for (const auto& spec : specs) {
    const PropertyReport r = in.heap ? check_property(*in.heap, spec, c.window)
                                     : check_property(*in.poset, spec);
    ok = ok && r.holds;
    reports.push_back(to_json(r));
    if (c.format == "text") {
      std::cout << spec.name() << ": " << (r.holds ? "holds" : "fails");
      if (!r.holds) std::cout << "  [" << describe_witness(r) << "]";
      if (r.windowed && !r.windows_agree) std::cout << "  (windows disagree)";
      std::cout << "\n";
    }
  }
  if (c.format == "json") std::cout << reports.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_lattice(const Common& c, const std::string& dot, const std::string& json_out) {
  const LoadedInput in = load_input(c.input);
  if (in.heap) {
    const SplitBall ball = in.heap->ball(seed_of(in), c.ball);
    std::cout << ball.splits.size() << " splits in the ball of radius " << c.ball << "\n";
    const auto comps = periodic_components(*in.heap, effective_cap(c));
    std::cout << comps.size() << " components\n";
    for (const auto& comp : comps) {
      std::cout << "  ";
      for (std::size_t i = 0; i < comp.pattern.size(); ++i) {
        const FrontierKind k = comp.pattern[i];
        std::cout << (i ? " " : "")
                  << (k == FrontierKind::neg_inf ? "-inf" : k == FrontierKind::pos_inf ? "+inf" : "fin");
      }
      std::cout << "\n";
    }
    if (!dot.empty()) write_file(dot, ball_to_dot(*in.heap, ball));
    if (!json_out.empty()) {
      json splits = json::array();
      for (const auto& s : ball.splits) splits.push_back(periodic_split_to_json(*in.heap, s));
      write_file(json_out, json{{"splits", splits}}.dump(2) + "\n");
    }
    return 0;
  }
  if (!in.poset) throw InputError(c.input + ": lattice export needs a finite poset or heap");
  const SplitLattice L = SplitLattice::enumerate(*in.poset, effective_cap(c));
  std::cout << L.size() << " splits\n";
  if (!dot.empty()) write_file(dot, lattice_to_dot(L));
  if (!json_out.empty()) write_file(json_out, lattice_to_json(L).dump(2) + "\n");
  if (c.format == "json" && json_out.empty()) std::cout << lattice_to_json(L).dump(2) << "\n";
  return 0;
}

void print_representation(const RepresentationReport& r, const ColorGraph& G) {
  if (r.refused) {
    std::cout << "refused: " << r.refusal << "\n";
    return;
  }
  std::cout << "algebra " << algebra_name(r.kind) << " on " << r.num_splits << " splits ("
            << r.domain.size() << " checked)\n";
  for (const auto& rel : r.relations) {
    if (rel.holds) continue;
    std::cout << "  " << rel.relation << " [";
    for (std::size_t i = 0; i < rel.colors.size(); ++i) std::cout << (i ? "," : "") << G.name(rel.colors[i]);
    std::cout << "] fails at split " << rel.witness_split << ", defect";
    for (const auto& [s, v] : rel.defect.terms()) std::cout << " " << to_string(v) << "*<" << s << ">";
    std::cout << "\n";
  }
  std::cout << "relations: " << (r.relations_hold() ? "all hold" : "defects found") << "\n";
  if (r.nilpotency)
    std::cout << "square nilpotent: " << (r.nilpotency->holds ? "yes" : "no") << "\n";
  if (r.weights) {
    std::cout << "eigenvalues: {";
    bool first = true;
    for (const auto& v : r.eigenvalues) {
      std::cout << (first ? "" : ",") << to_string(v);
      first = false;
    }
    std::cout << "}\n";
  }
  if (r.minuscule) {
    const char* label = r.kind == AlgebraKind::b_plus_derived    ? "upper P-minuscule"
                        : r.kind == AlgebraKind::b_minus_derived ? "lower P-minuscule"
                                                                 : "eigenvalues in {-1,0,1}";
    std::cout << label << ": " << (r.minuscule->holds ? "yes" : "no");
    if (!r.minuscule->holds)
      std::cout << " (" << r.minuscule->reason << "; color " << G.name(r.minuscule->color)
                << ", split " << r.minuscule->split << ")";
    std::cout << "\n";
  }
}

int cmd_rep(const Common& c, const std::string& algebra, bool parallel) {
  const LoadedInput in = load_input(c.input);
  const AlgebraKind kind = parse_algebra(algebra);
  RepresentationReport r;
  const ColorGraph* G = nullptr;
  if (in.heap) {
    r = build_representation(*in.heap, seed_of(in), c.ball, kind, parallel);
    G = &in.heap->graph();
  } else if (in.poset) {
    r = build_representation(SplitLattice::enumerate(*in.poset, effective_cap(c)), kind, parallel);
    G = &in.poset->graph();
  } else {
    throw InputError(c.input + ": representations need a finite poset or heap");
  }
  if (c.format == "json") {
    std::cout << to_json(r, *G).dump(2) << "\n";
  } else {
    print_representation(r, *G);
    std::cout << (r.holds() ? (r.interior_only ? "holds on interior" : "holds") : "fails") << "\n";
  }
  return r.holds() ? 0 : 1;
}

int cmd_weights(const Common& c, bool prime) {
  const LoadedInput in = load_input(c.input);
  if (in.kind == InputKind::tailed) {
    const TailedPoset& T = *in.tailed;
    const ColorGraph& G = T.core.graph();
    json rows = json::array();
    for (ColorId b = 0; b < G.size(); ++b) {
      rows.push_back({{"color", G.name(b)},
                      {"upsilon", compute_upsilon(T, b, *in.tailed_split)},
                      {"psi", compute_psi(T, b, *in.tailed_split)},
                      {"mu", compute_mu(T, b, *in.tailed_split)}});
      if (c.format == "text")
        std::cout << G.name(b) << ": upsilon " << rows.back()["upsilon"] << ", psi "
                  << rows.back()["psi"] << ", mu " << rows.back()["mu"] << "\n";
    }
    if (c.format == "json") std::cout << rows.dump(2) << "\n";
    return 0;
  }
  if (in.heap) {
    const SplitBall ball = in.heap->ball(seed_of(in), c.ball);
    WeightFunction w = mu_weights(*in.heap, ball);
    if (prime)
      for (ColorId b = 0; b < w.num_colors; ++b)
        for (int s = 0; s < w.num_splits; ++s)
          w.at(b, s) = periodic_mu_prime(*in.heap, b, ball.splits[s]);
    std::cout << weights_to_json(w, in.heap->graph()).dump(c.format == "json" ? 2 : -1) << "\n";
    return 0;
  }
  const SplitLattice L = SplitLattice::enumerate(*in.poset, effective_cap(c));
  const WeightFunction w = prime ? mu_prime_weights(L) : mu_weights(L);
  if (c.format == "json") {
    std::cout << weights_to_json(w, in.poset->graph()).dump(2) << "\n";
  } else {
    const ColorGraph& G = in.poset->graph();
    for (int s = 0; s < L.size(); ++s) {
      std::cout << s << " " << L.split_label(s) << ":";
      for (ColorId b = 0; b < G.size(); ++b) std::cout << " " << G.name(b) << "=" << to_string(w.at(b, s));
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_classify(const Common& c) {
  const LoadedInput in = load_input(c.input);
  ClassificationReport r;
  if (in.heap)
    r = classify_poset(*in.heap, c.window);
  else if (in.poset)
    r = classify_poset(*in.poset);
  else
    throw InputError(c.input + ": classification needs a finite poset or heap");
  if (c.format == "json") {
    std::cout << to_json(r).dump(2) << "\n";
  } else {
    std::cout << "d-complete: " << (r.d_complete ? "yes" : "no") << "\n"
              << "minuscule: " << (r.minuscule ? "yes" : "no") << "\n";
    for (const auto& w : r.witnesses) std::cout << "  " << w << "\n";
  }
  return 0;
}

int cmd_verify(int max_elements, int max_colors, const std::string& mode, std::uint64_t seed,
               long count, int jobs, long class_samples, const std::string& summary_path,
               const std::string& format) {
  GeneratorConfig cfg;
  cfg.max_elements = max_elements;
  cfg.max_colors = max_colors;
  cfg.seed = seed;
  cfg.count = count;
  cfg.exact_size = false;
  if (mode == "exhaustive")
    cfg.mode = GeneratorMode::exhaustive;
  else if (mode == "random")
    cfg.mode = GeneratorMode::random;
  else
    throw InputError("--mode must be exhaustive or random");
  const auto instances = generate_instances(cfg);
  HarnessOptions opt;
  opt.jobs = jobs;
  opt.min_class_samples = class_samples;
  opt.seed = seed;
  const HarnessSummary s = run_harness(instances, opt);
  const json j = to_json(s);
  if (!summary_path.empty()) write_file(summary_path, j.dump(2) + "\n");
  if (format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << s.instances << " instances, " << s.total_disagreements() << " disagreements\n";
    for (const auto& [name, n] : s.agreements) {
      const long bad = s.disagreements.count(name) ? s.disagreements.at(name) : 0;
      const long app = s.applicable.count(name) ? s.applicable.at(name) : 0;
      std::cout << "  " << name << ": " << n << " agree, " << bad << " disagree, " << app
                << " applicable\n";
    }
    for (const auto& f : s.failures)
      std::cout << "  failure " << f.label << " " << f.check << ": " << f.detail << "\n";
  }
  return s.total_disagreements() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Colored posets, split lattices and their representations"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* sub, bool input = true) {
    if (input) sub->add_option("input", c.input, "JSON input file")->required();
    sub->add_option("--cap", c.cap, "split enumeration cap (default: HEAPLAB_SPLIT_CAP or 1000000)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  std::vector<std::string> props;
  bool all = false;
  auto* check = app.add_subcommand("check", "check coloring properties");
  add_common(check);
  check->add_option("properties", props, "EC ND NA I3ND AC I2A Mx<k>GA Mn<k>LA");
  check->add_flag("--all", all, "all eight properties with k = 1");
  check->add_option("--window", c.window, "periods per window for heaps")->check(CLI::PositiveNumber);

  std::string dot, json_out;
  auto* lattice = app.add_subcommand("lattice", "enumerate the splits");
  add_common(lattice);
  lattice->add_option("--dot", dot, "write the Hasse diagram as DOT");
  lattice->add_option("--json", json_out, "write the lattice as JSON");
  lattice->add_option("--ball", c.ball, "ball radius for heaps")->check(CLI::NonNegativeNumber);

  std::string algebra = "b-plus";
  bool parallel = false;
  auto* rep = app.add_subcommand("rep", "build and verify a representation");
  add_common(rep);
  rep->add_option("--algebra", algebra, "n-plus, n-minus, b-plus, b-minus or g-prime");
  rep->add_option("--ball", c.ball, "ball radius for heaps")->check(CLI::PositiveNumber);
  rep->add_flag("--parallel", parallel, "verify relations with OpenMP");

  bool prime = false;
  auto* weights = app.add_subcommand("weights", "the census weight function");
  add_common(weights);
  weights->add_flag("--prime", prime, "the filter-based variant");
  weights->add_option("--ball", c.ball, "ball radius for heaps")->check(CLI::NonNegativeNumber);

  auto* classify = app.add_subcommand("classify", "d-complete / minuscule classification");
  add_common(classify);
  classify->add_option("--window", c.window, "periods per window for heaps")->check(CLI::PositiveNumber);

  int max_elements = 4, max_colors = 2, jobs = omp_get_num_procs();
  long class_samples = 0;
  std::string mode = "exhaustive", summary;
  std::uint64_t seed = 1;
  long count = 10000;
  auto* verify = app.add_subcommand("verify", "run the equivalence harness");
  verify->add_option("--max-elements", max_elements)->check(CLI::PositiveNumber);
  verify->add_option("--max-colors", max_colors)->check(CLI::PositiveNumber);
  verify->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "random"}));
  verify->add_option("--seed", seed);
  verify->add_option("--count", count, "instances in random mode")->check(CLI::PositiveNumber);
  verify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--class-samples", class_samples,
                     "minimum constructed weight functions per instance class");
  verify->add_option("--summary", summary, "write the summary JSON here");
  verify->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(c, props, all);
    if (*lattice) return cmd_lattice(c, dot, json_out);
    if (*rep) return cmd_rep(c, algebra, parallel);
    if (*weights) return cmd_weights(c, prime);
    if (*classify) return cmd_classify(c);
    if (*verify)
      return cmd_verify(max_elements, max_colors, mode, seed, count, jobs, class_samples, summary,
                        c.format);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
