#include "heaplab/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace heaplab {

namespace {

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw InputError("'" + path + "' must be an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError("missing field '" + path + "." + key + "'");
  return *it;
}

std::string str(const json& j, const std::string& path) {
  if (!j.is_string()) throw InputError("'" + path + "' must be a string");
  return j.get<std::string>();
}

const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError("'" + path + "' must be an array");
  return j;
}

std::pair<std::string, std::string> name_pair(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw InputError("'" + path + "' must be a pair of ids");
  return {str(j[0], path + "[0]"), str(j[1], path + "[1]")};
}

Layer parse_layer(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<Layer>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kPosInf;
    if (s == "-inf") return kNegInf;
  }
  throw InputError("'" + path + "' must be an integer, \"inf\" or \"-inf\"");
}

json layer_json(Layer v) {
  if (v == kPosInf) return "inf";
  if (v == kNegInf) return "-inf";
  return v;
}

std::vector<std::string> ideal_names(const FinitePoset& P, const ElementSet& s) {
  std::vector<std::string> out;
  s.for_each([&](int x) { out.push_back(P.name(x)); });
  std::sort(out.begin(), out.end());
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

ColorGraph parse_graph(const json& j) {
  std::vector<std::string> colors;
  const auto& cs = array(field(j, "colors", "graph"), "graph.colors");
  for (std::size_t i = 0; i < cs.size(); ++i)
    colors.push_back(str(cs[i], "graph.colors[" + std::to_string(i) + "]"));
  std::vector<std::pair<std::string, std::string>> edges;
  if (j.contains("edges")) {
    const auto& es = array(j["edges"], "graph.edges");
    for (std::size_t i = 0; i < es.size(); ++i)
      edges.push_back(name_pair(es[i], "graph.edges[" + std::to_string(i) + "]"));
  }
  return ColorGraph(std::move(colors), edges);
}

FinitePoset parse_poset(const ColorGraph& G, const json& j, ColorMode mode) {
  std::vector<ElementSpec> elements;
  const auto& es = array(field(j, "elements", "poset"), "poset.elements");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string p = "poset.elements[" + std::to_string(i) + "]";
    elements.push_back({str(field(es[i], "id", p), p + ".id"),
                        str(field(es[i], "color", p), p + ".color")});
  }
  std::vector<std::pair<std::string, std::string>> covers;
  if (j.contains("covers")) {
    const auto& cs = array(j["covers"], "poset.covers");
    for (std::size_t i = 0; i < cs.size(); ++i)
      covers.push_back(name_pair(cs[i], "poset.covers[" + std::to_string(i) + "]"));
  }
  return FinitePoset::build(G, elements, covers, mode);
}

PeriodicHeap parse_heap(const ColorGraph& G, const json& j) {
  std::vector<CellSpec> cells;
  const auto& cs = array(field(j, "cells", "heap"), "heap.cells");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string p = "heap.cells[" + std::to_string(i) + "]";
    cells.push_back({str(field(cs[i], "id", p), p + ".id"),
                     str(field(cs[i], "color", p), p + ".color")});
  }
  std::vector<ShiftedCoverSpec> covers;
  const auto& vs = array(field(j, "covers", "heap"), "heap.covers");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string p = "heap.covers[" + std::to_string(i) + "]";
    const auto& sh = field(vs[i], "shift", p);
    if (!sh.is_number_integer()) throw InputError("'" + p + ".shift' must be an integer");
    covers.push_back({str(field(vs[i], "from", p), p + ".from"),
                      str(field(vs[i], "to", p), p + ".to"), sh.get<Layer>()});
  }
  return PeriodicHeap::build(G, cells, covers);
}

PeriodicSplit parse_periodic_split(const PeriodicHeap& H, const json& j) {
  const auto& f = field(j, "frontier", "split");
  if (!f.is_object()) throw InputError("'split.frontier' must be an object");
  PeriodicSplit s;
  s.frontier.assign(H.num_cells(), 0);
  std::vector<char> seen(H.num_cells(), 0);
  for (auto it = f.begin(); it != f.end(); ++it) {
    const int u = H.cell_id(it.key());
    s.frontier[u] = parse_layer(it.value(), "split.frontier." + it.key());
    seen[u] = 1;
  }
  for (int u = 0; u < H.num_cells(); ++u)
    if (!seen[u]) throw InputError("split.frontier is missing cell '" + H.cell_name(u) + "'");
  H.validate(s);
  return s;
}

namespace {

TailedPoset parse_tails(FinitePoset core, const json& j) {
  TailedPoset T{std::move(core), {}};
  const auto& ts = array(j, "tails");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string p = "tails[" + std::to_string(i) + "]";
    Tail t;
    t.name = str(field(ts[i], "name", p), p + ".name");
    t.root = T.core.id(str(field(ts[i], "root", p), p + ".root"));
    const auto& cyc = array(field(ts[i], "cycle", p), p + ".cycle");
    if (cyc.empty()) throw InputError("'" + p + ".cycle' must be nonempty");
    for (std::size_t k = 0; k < cyc.size(); ++k)
      t.cycle.push_back(T.core.graph().id(str(cyc[k], p + ".cycle")));
    T.tails.push_back(std::move(t));
  }
  return T;
}

TailedSplit parse_tailed_split(const TailedPoset& T, const json& j) {
  TailedSplit s;
  s.core_ideal = T.core.empty_set();
  const auto& ci = array(field(j, "core_ideal", "split"), "split.core_ideal");
  for (std::size_t i = 0; i < ci.size(); ++i)
    s.core_ideal.insert(T.core.id(str(ci[i], "split.core_ideal")));
  const auto& counts = field(j, "tail_counts", "split");
  for (const auto& t : T.tails) {
    const json& v = field(counts, t.name.c_str(), "split.tail_counts");
    const Layer n = parse_layer(v, "split.tail_counts." + t.name);
    if (n == kNegInf) throw InputError("tail counts cannot be -inf");
    s.tail_counts.push_back(n == kPosInf ? std::nullopt : std::optional<long>(n));
  }
  validate(T, s);
  return s;
}

}  // namespace

LoadedInput parse_input(const json& doc, const std::string& where) {
  try {
    LoadedInput in;
    const ColorGraph G = parse_graph(field(doc, "graph", "input"));
    if (doc.contains("heap")) {
      in.kind = InputKind::heap;
      in.heap = parse_heap(G, doc["heap"]);
      if (doc.contains("seed")) in.seed = parse_periodic_split(*in.heap, doc["seed"]);
      return in;
    }
    if (doc.contains("tails")) {
      in.kind = InputKind::tailed;
      in.tailed = parse_tails(parse_poset(G, field(doc, "poset", "input"), ColorMode::keep_graph),
                              doc["tails"]);
      in.tailed_split = parse_tailed_split(*in.tailed, field(doc, "split", "input"));
      return in;
    }
    in.poset = parse_poset(G, field(doc, "poset", "input"));
    return in;
  } catch (const InputError& e) {
    throw InputError(where + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(where + ": " + e.what());
  }
}

LoadedInput load_input(const std::string& path) { return parse_input(read_json_file(path), path); }

json graph_to_json(const ColorGraph& G) {
  json edges = json::array();
  for (auto [a, b] : G.edges()) edges.push_back({G.name(a), G.name(b)});
  return {{"colors", G.names()}, {"edges", edges}};
}

json poset_to_json(const FinitePoset& P) {
  json elements = json::array();
  for (int x = 0; x < P.size(); ++x)
    elements.push_back({{"id", P.name(x)}, {"color", P.graph().name(P.color(x))}});
  json covers = json::array();
  for (auto [x, y] : P.covers()) covers.push_back({P.name(x), P.name(y)});
  return {{"graph", graph_to_json(P.graph())},
          {"poset", {{"elements", elements}, {"covers", covers}}}};
}

json heap_to_json(const PeriodicHeap& H) {
  json cells = json::array();
  for (int u = 0; u < H.num_cells(); ++u)
    cells.push_back({{"id", H.cell_name(u)}, {"color", H.graph().name(H.color(u))}});
  json covers = json::array();
  for (const auto& c : H.covers())
    covers.push_back({{"from", H.cell_name(c.from)}, {"to", H.cell_name(c.to)}, {"shift", c.shift}});
  return {{"graph", graph_to_json(H.graph())}, {"heap", {{"cells", cells}, {"covers", covers}}}};
}

json periodic_split_to_json(const PeriodicHeap& H, const PeriodicSplit& s) {
  json f = json::object();
  for (int u = 0; u < H.num_cells(); ++u) f[H.cell_name(u)] = layer_json(s.frontier[u]);
  return {{"frontier", f}};
}

json lattice_to_json(const SplitLattice& L) {
  json splits = json::array();
  for (int s = 0; s < L.size(); ++s)
    splits.push_back({{"ideal", ideal_names(L.poset(), L.ideal(s))}});
  json edges = json::array();
  for (const auto& e : L.edges())
    edges.push_back({{"from", e.from}, {"to", e.to}, {"color", L.poset().graph().name(e.color)}});
  return {{"splits", splits}, {"edges", edges}};
}

LatticeData lattice_data(const SplitLattice& L) { return parse_lattice_json(lattice_to_json(L)); }

LatticeData parse_lattice_json(const json& j) {
  LatticeData d;
  const auto& ss = array(field(j, "splits", "lattice"), "lattice.splits");
  for (std::size_t i = 0; i < ss.size(); ++i) {
    const std::string p = "lattice.splits[" + std::to_string(i) + "]";
    std::vector<std::string> ideal;
    for (const auto& x : array(field(ss[i], "ideal", p), p + ".ideal"))
      ideal.push_back(str(x, p + ".ideal"));
    std::sort(ideal.begin(), ideal.end());
    d.ideals.push_back(std::move(ideal));
  }
  const auto& es = array(field(j, "edges", "lattice"), "lattice.edges");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string p = "lattice.edges[" + std::to_string(i) + "]";
    const auto& from = field(es[i], "from", p);
    const auto& to = field(es[i], "to", p);
    if (!from.is_number_integer() || !to.is_number_integer())
      throw InputError("'" + p + "' endpoints must be split indices");
    d.edges.emplace_back(from.get<int>(), to.get<int>(), str(field(es[i], "color", p), p + ".color"));
  }
  std::sort(d.edges.begin(), d.edges.end());
  return d;
}

std::string lattice_to_dot(const SplitLattice& L) {
  std::ostringstream out;
  out << "digraph splits {\n  rankdir=BT;\n";
  for (int s = 0; s < L.size(); ++s)
    out << "  s" << s << " [label=\"" << dot_escape(L.split_label(s)) << "\"];\n";
  for (const auto& e : L.edges())
    out << "  s" << e.from << " -> s" << e.to << " [label=\""
        << dot_escape(L.poset().graph().name(e.color)) << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string ball_to_dot(const PeriodicHeap& H, const SplitBall& ball) {
  std::ostringstream out;
  out << "digraph ball {\n  rankdir=BT;\n";
  for (std::size_t s = 0; s < ball.splits.size(); ++s) {
    std::string label;
    for (int u = 0; u < H.num_cells(); ++u) {
      if (u) label += " ";
      const Layer v = ball.splits[s].frontier[u];
      label += H.cell_name(u) + ":" +
               (v == kPosInf ? std::string("inf") : v == kNegInf ? std::string("-inf") : std::to_string(v));
    }
    out << "  s" << s << " [label=\"" << dot_escape(label) << "\"];\n";
  }
  for (int s = 0; s < ball.graph.size(); ++s)
    for (const auto& st : ball.graph.up[s])
      out << "  s" << s << " -> s" << st.target << " [label=\""
          << dot_escape(H.graph().name(st.color)) << "\"];\n";
  out << "}\n";
  return out.str();
}

json weights_to_json(const WeightFunction& eta, const ColorGraph& G) {
  json rows = json::array();
  for (ColorId c = 0; c < eta.num_colors; ++c)
    for (int s = 0; s < eta.num_splits; ++s)
      rows.push_back({{"color", G.name(c)}, {"split", s}, {"value", to_string(eta.at(c, s))}});
  return rows;
}

json to_json(const PropertyReport& r) {
  json j = {{"property", r.spec.name()}, {"holds", r.holds}};
  if (r.spec.property == Property::MxkGA || r.spec.property == Property::MnkLA) j["k"] = r.spec.k;
  auto name = [&](ElementId x) {
    return x >= 0 && x < static_cast<int>(r.names.size()) ? r.names[x] : std::to_string(x);
  };
  if (r.witness) {
    json w = json::object();
    if (r.witness->extreme >= 0) {
      w["extreme"] = name(r.witness->extreme);
      json off = json::array();
      for (auto x : r.witness->offenders) off.push_back(name(x));
      w["offenders"] = off;
    } else {
      json el = json::array();
      for (auto x : r.witness->elements) el.push_back(name(x));
      w["elements"] = el;
      if (r.witness->census >= 0) w["census"] = r.witness->census;
    }
    j["witness"] = w;
  }
  if (r.windowed) j["windows_agree"] = r.windows_agree;
  return j;
}

json to_json(const ClassificationReport& r) {
  json props = json::array();
  for (const auto& p : r.property_reports) props.push_back(to_json(p));
  return {{"d_complete", r.d_complete}, {"minuscule", r.minuscule}, {"properties", props},
          {"witnesses", r.witnesses}};
}

json to_json(const RelationReport& r, const ColorGraph& G) {
  json colors = json::array();
  for (auto c : r.colors) colors.push_back(G.name(c));
  json j = {{"relation", r.relation}, {"colors", colors}, {"holds", r.holds}};
  if (!r.holds) {
    j["witness_split"] = r.witness_split;
    json defect = json::array();
    for (const auto& [s, c] : r.defect.terms())
      defect.push_back({{"split", s}, {"coefficient", to_string(c)}});
    j["defect"] = defect;
    if (r.defect_count) j["defect_count"] = r.defect_count;
  }
  return j;
}

json to_json(const RepresentationReport& r, const ColorGraph& G) {
  json j = {{"algebra", algebra_name(r.kind)}, {"holds", r.holds()}};
  if (r.refused) {
    j["refused"] = r.refusal;
    return j;
  }
  j["splits"] = r.num_splits;
  j["checked_splits"] = r.domain.size();
  j["interior_only"] = r.interior_only;
  json rels = json::array();
  for (const auto& x : r.relations) rels.push_back(to_json(x, G));
  j["relations"] = rels;
  if (r.nilpotency)
    j["square_nilpotent"] = {{"holds", r.nilpotency->holds},
                             {"color", r.nilpotency->holds ? json() : json(G.name(r.nilpotency->color))},
                             {"split", r.nilpotency->witness_split}};
  if (r.minuscule) {
    json m = {{"holds", r.minuscule->holds}};
    if (!r.minuscule->holds)
      m.update({{"reason", r.minuscule->reason}, {"color", G.name(r.minuscule->color)},
                {"split", r.minuscule->split}, {"value", to_string(r.minuscule->value)}});
    j["minuscule_conditions"] = m;
  }
  if (r.weights) {
    json ev = json::array();
    for (const auto& v : r.eigenvalues) ev.push_back(to_string(v));
    j["eigenvalues"] = ev;
  }
  return j;
}

json to_json(const EquivalenceReport& r) {
  json out = json::array();
  for (const auto& c : r.checks) {
    json j = {{"check", c.name}, {"applicable", c.applicable}, {"agree", c.agree}};
    if (!c.agree) j["detail"] = c.detail;
    out.push_back(j);
  }
  return out;
}

json to_json(const HarnessSummary& s) {
  json laws = json::object();
  for (const auto& [k, w] : s.weight_laws)
    laws[k] = {{"constructed", w.constructed},
               {"perturbed", w.perturbed},
               {"law_disagreements", w.law_disagreements},
               {"transitivity_checked", w.transitivity_checked},
               {"transitivity_failures", w.transitivity_failures},
               {"uniqueness_applicable", w.uniqueness_applicable},
               {"uniqueness_failures", w.uniqueness_failures}};
  json failures = json::array();
  for (const auto& f : s.failures) {
    json j = {{"instance", f.label}, {"check", f.check}, {"detail", f.detail}};
    if (f.poset) j["poset"] = poset_to_json(*f.poset);
    failures.push_back(j);
  }
  return {{"instances", s.instances},
          {"disagreements_total", s.total_disagreements()},
          {"agreements", s.agreements},
          {"disagreements", s.disagreements},
          {"applicable", s.applicable},
          {"guard_cases", s.guard_cases},
          {"weight_laws", laws},
          {"failures", failures}};
}

}  // namespace heaplab
