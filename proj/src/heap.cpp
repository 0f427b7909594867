#include "heaplab/heap.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <unordered_map>

namespace heaplab {

namespace {

Layer add_dist(Layer a, Layer b) {
  if (a == kUnreachable || b == kUnreachable) return kUnreachable;
  return a + b;
}

}  // namespace

PeriodicSplit PeriodicSplit::shifted(Layer by) const {
  PeriodicSplit out = *this;
  for (auto& f : out.frontier)
    if (is_finite(f)) f += by;
  return out;
}

std::size_t PeriodicSplitHash::operator()(const PeriodicSplit& s) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (Layer v : s.frontier) h = (h ^ std::hash<Layer>{}(v)) * 0x100000001b3ull;
  return h;
}

FrontierKind frontier_kind(Layer v) {
  if (v == kNegInf) return FrontierKind::neg_inf;
  if (v == kPosInf) return FrontierKind::pos_inf;
  return FrontierKind::finite;
}

bool same_component(const PeriodicSplit& a, const PeriodicSplit& b) {
  if (a.frontier.size() != b.frontier.size()) return false;
  for (std::size_t i = 0; i < a.frontier.size(); ++i)
    if (frontier_kind(a.frontier[i]) != frontier_kind(b.frontier[i])) return false;
  return true;
}

PeriodicHeap PeriodicHeap::build(ColorGraph graph, const std::vector<CellSpec>& cells,
                                 const std::vector<ShiftedCoverSpec>& covers) {
  PeriodicHeap h;
  h.graph_ = std::move(graph);
  std::unordered_map<std::string, int> index;
  for (const auto& c : cells) {
    if (!index.emplace(c.id, static_cast<int>(h.names_.size())).second)
      throw InputError("duplicate cell '" + c.id + "'");
    h.names_.push_back(c.id);
    h.colors_.push_back(h.graph_.id(c.color));
  }
  const int n = h.num_cells();
  if (n == 0) throw InputError("heap has no cells");
  h.up_.assign(n, {});
  h.down_.assign(n, {});
  for (const auto& c : covers) {
    auto iu = index.find(c.from), iv = index.find(c.to);
    if (iu == index.end()) throw InputError("cover references unknown cell '" + c.from + "'");
    if (iv == index.end()) throw InputError("cover references unknown cell '" + c.to + "'");
    if (c.shift < 0)
      throw InputError("cover '" + c.from + "' -> '" + c.to + "' has negative shift");
    ShiftedCover sc{iu->second, iv->second, c.shift};
    for (const auto& e : h.covers_)
      if (e.from == sc.from && e.to == sc.to && e.shift == sc.shift)
        throw InputError("duplicate cover '" + c.from + "' -> '" + c.to + "'");
    h.covers_.push_back(sc);
    h.up_[sc.from].push_back(sc);
    h.down_[sc.to].push_back(sc);
    h.max_shift_ = std::max(h.max_shift_, sc.shift);
  }

  // Minimum shift over nonempty paths (Floyd–Warshall seeded with single covers).
  h.dist_.assign(static_cast<std::size_t>(n) * n, kUnreachable);
  for (const auto& e : h.covers_) {
    Layer& d = h.dist_[e.from * n + e.to];
    d = std::min(d, e.shift);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Layer via = add_dist(h.dist_[i * n + k], h.dist_[k * n + j]);
        if (via < h.dist_[i * n + j]) h.dist_[i * n + j] = via;
      }

  for (int u = 0; u < n; ++u) {
    const Layer d = h.distance(u, u);
    if (d != kUnreachable && d <= 0)
      throw InputError("cycle with total shift " + std::to_string(d) + " through cell '" +
                       h.names_[u] + "'");
  }
  for (int u = 0; u < n; ++u) {
    if (h.up_[u].empty() || h.down_[u].empty())
      throw InputError("cell '" + h.names_[u] + "' lacks an up or a down cover");
    if (h.distance(u, u) != 1)
      throw InputError("translates of cell '" + h.names_[u] +
                       "' do not form a chain (no cycle of total shift 1)");
  }
  // A cover is redundant when a path of two or more covers reaches the same element;
  // with shift-1 cycles at every cell such paths realize every shift >= their minimum.
  for (const auto& e : h.covers_) {
    for (const auto& first : h.up_[e.from]) {
      const Layer two = add_dist(first.shift, h.distance(first.to, e.to));
      if (two != kUnreachable && two <= e.shift)
        throw InputError("cover '" + h.names_[e.from] + "' -> '" + h.names_[e.to] +
                         "' is not transitively reduced");
    }
  }
  return h;
}

int PeriodicHeap::cell_id(const std::string& name) const {
  for (int u = 0; u < num_cells(); ++u)
    if (names_[u] == name) return u;
  throw InputError("unknown cell '" + name + "'");
}

bool PeriodicHeap::less(int u, Layer n, int v, Layer m) const {
  const Layer d = distance(u, v);
  return d != kUnreachable && m - n >= d;
}

bool PeriodicHeap::comparable(int u, Layer n, int v, Layer m) const {
  return (u == v && n == m) || less(u, n, v, m) || less(v, m, u, n);
}

bool PeriodicHeap::is_full_heap() const {
  std::vector<bool> seen(graph_.size(), false);
  for (ColorId c : colors_) seen[c] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

namespace {

// Orbits u and v are pairwise comparable iff every layer difference is covered.
bool orbits_comparable(const PeriodicHeap& h, int u, int v) {
  if (u == v) return true;
  const Layer a = h.distance(u, v), b = h.distance(v, u);
  if (a == kUnreachable || b == kUnreachable) return false;
  return a + b <= 1;
}

}  // namespace

bool PeriodicHeap::equal_colors_comparable() const {
  for (int u = 0; u < num_cells(); ++u)
    for (int v = u + 1; v < num_cells(); ++v)
      if (colors_[u] == colors_[v] && !orbits_comparable(*this, u, v)) return false;
  return true;
}

bool PeriodicHeap::adjacent_colors_comparable() const {
  for (int u = 0; u < num_cells(); ++u)
    for (int v = u + 1; v < num_cells(); ++v)
      if (graph_.adjacent(colors_[u], colors_[v]) && !orbits_comparable(*this, u, v)) return false;
  return true;
}

Window PeriodicHeap::make_window(Layer n_min, Layer n_max, const PeriodicSplit* filter,
                                 Layer bottom) const {
  if (n_min > n_max) throw InputError("empty window");
  const int n = num_cells();
  // Lowest layer of each orbit inside the domain (heap or filter).
  auto lo = [&](int u) -> Layer {
    if (!filter) return kNegInf;
    const Layer f = filter->frontier[u];
    return f == kNegInf ? kNegInf : (f == kPosInf ? kPosInf : f + 1);
  };
  const Layer start = filter ? bottom : n_min;

  Window w;
  w.n_min = start;
  w.n_max = n_max;
  std::vector<ColorId> colors;
  std::vector<std::string> names;
  std::unordered_map<long long, int> at;  // (layer - start) * n + cell
  for (Layer layer = start; layer <= n_max; ++layer) {
    for (int u = 0; u < n; ++u) {
      const Layer l = lo(u);
      if (l == kPosInf || (l != kNegInf && layer < l)) continue;
      at.emplace((layer - start) * n + u, static_cast<int>(colors.size()));
      w.origin.emplace_back(u, layer);
      colors.push_back(colors_[u]);
      names.push_back(element_name(u, layer));
    }
  }
  std::vector<std::pair<ElementId, ElementId>> cov;
  for (std::size_t x = 0; x < w.origin.size(); ++x) {
    const auto [u, layer] = w.origin[x];
    for (const auto& e : up_[u]) {
      const Layer target = layer + e.shift;
      if (target > n_max) continue;
      auto it = at.find((target - start) * n + e.to);
      if (it != at.end()) cov.emplace_back(static_cast<ElementId>(x), it->second);
    }
  }
  // Γ is kept whole so color ids agree with the heap even when a window misses a color.
  w.poset = FinitePoset::from_indices(graph_, colors, cov, names, ColorMode::keep_graph);

  const Layer margin = std::max<Layer>(1, max_shift_);
  for (const auto& [u, layer] : w.origin) {
    bool down = true, up = true;
    for (int v = 0; v < n; ++v) {
      const Layer dvu = distance(v, u), duv = distance(u, v);
      const Layer lv = lo(v);
      if (dvu != kUnreachable && lv != kPosInf) {
        const Layer hi = std::min(start - 1, layer - dvu);
        if (lv == kNegInf || lv <= hi) down = false;
      }
      if (duv != kUnreachable && lv != kPosInf) up = false;
    }
    w.down_exact.push_back(down);
    w.up_exact.push_back(up);
    w.boundary.push_back(layer < start + margin || layer > n_max - margin);
  }
  return w;
}

Window PeriodicHeap::materialize_window(Layer n_min, Layer n_max) const {
  return make_window(n_min, n_max, nullptr, n_min);
}

Window PeriodicHeap::materialize_filter_window(const PeriodicSplit& split, Layer bottom,
                                               Layer top) const {
  validate(split);
  return make_window(bottom, top, &split, bottom);
}

bool PeriodicHeap::is_valid(const PeriodicSplit& s) const {
  if (static_cast<int>(s.frontier.size()) != num_cells()) return false;
  for (const auto& e : covers_) {
    const Layer fu = s.frontier[e.from], fv = s.frontier[e.to];
    if (fv == kNegInf || fu == kPosInf) continue;
    if (fv == kPosInf || fu == kNegInf) return false;
    if (fu < fv - e.shift) return false;
  }
  return true;
}

void PeriodicHeap::validate(const PeriodicSplit& s) const {
  if (static_cast<int>(s.frontier.size()) != num_cells())
    throw InputError("frontier size does not match the heap");
  if (!is_valid(s)) throw InputError("frontier is not downward closed");
}

PeriodicSplit PeriodicHeap::uniform_split(Layer value) const {
  return PeriodicSplit{std::vector<Layer>(num_cells(), value)};
}

std::vector<SplitMove> PeriodicHeap::split_neighbors(const PeriodicSplit& s) const {
  validate(s);
  std::vector<SplitMove> out;
  for (int u = 0; u < num_cells(); ++u) {
    const Layer f = s.frontier[u];
    if (!is_finite(f)) continue;
    // (u, f+1) is minimal in F when all its lower covers lie in I.
    bool minimal = true;
    for (const auto& e : down_[u]) {
      const Layer fw = s.frontier[e.from];
      if (fw == kPosInf) continue;
      if (fw == kNegInf || fw < f + 1 - e.shift) {
        minimal = false;
        break;
      }
    }
    if (minimal) {
      PeriodicSplit t = s;
      ++t.frontier[u];
      out.push_back({colors_[u], Direction::up, u, std::move(t)});
    }
    bool maximal = true;
    for (const auto& e : up_[u]) {
      const Layer fv = s.frontier[e.to];
      if (fv == kNegInf) continue;
      if (fv == kPosInf || fv >= f + e.shift) {
        maximal = false;
        break;
      }
    }
    if (maximal) {
      PeriodicSplit t = s;
      --t.frontier[u];
      out.push_back({colors_[u], Direction::down, u, std::move(t)});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const SplitMove& a, const SplitMove& b) {
    if (a.color != b.color) return a.color < b.color;
    return a.direction < b.direction;
  });
  return out;
}

SplitBall PeriodicHeap::ball(const PeriodicSplit& seed, int radius) const {
  if (radius < 0) throw InputError("ball radius must be non-negative");
  validate(seed);
  std::unordered_map<PeriodicSplit, int, PeriodicSplitHash> dist{{seed, 0}};
  std::vector<PeriodicSplit> order{seed};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int d = dist.at(order[i]);
    if (d == radius) continue;
    for (auto& m : split_neighbors(order[i]))
      if (dist.emplace(m.split, d + 1).second) order.push_back(std::move(m.split));
  }
  std::sort(order.begin(), order.end(), [&](const PeriodicSplit& a, const PeriodicSplit& b) {
    const int da = dist.at(a), db = dist.at(b);
    return da != db ? da < db : a < b;
  });

  SplitBall B;
  B.radius = radius;
  B.splits = order;
  std::unordered_map<PeriodicSplit, int, PeriodicSplitHash> index;
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    index.emplace(order[i], i);
    B.distance.push_back(dist.at(order[i]));
  }
  SplitGraph& g = B.graph;
  g.num_colors = graph_.size();
  g.up.assign(order.size(), {});
  g.down.assign(order.size(), {});
  g.complete.assign(order.size(), 0);
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    bool complete = true;
    for (const auto& m : split_neighbors(order[i])) {
      auto it = index.find(m.split);
      if (it == index.end()) {
        complete = false;
        continue;
      }
      (m.direction == Direction::up ? g.up : g.down)[i].push_back({it->second, m.color});
    }
    g.complete[i] = complete;
  }
  return B;
}

std::vector<int> SplitBall::interior(int word_length) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(splits.size()); ++i)
    if (distance[i] <= radius - word_length) out.push_back(i);
  return out;
}

int SplitBall::index_of(const PeriodicSplit& s) const {
  for (int i = 0; i < static_cast<int>(splits.size()); ++i)
    if (splits[i] == s) return i;
  throw InputError("split is outside the ball");
}

int periodic_delta(const PeriodicHeap& heap, ColorId b, const PeriodicSplit& to,
                   const PeriodicSplit& from) {
  long long total = 0;
  for (int u = 0; u < heap.num_cells(); ++u) {
    if (heap.color(u) != b) continue;
    const Layer t = to.frontier.at(u), f = from.frontier.at(u);
    if (is_finite(t) && is_finite(f)) {
      total += t - f;
    } else if (t != f) {
      throw PreconditionError("splits are not in the same component");
    }
  }
  return static_cast<int>(total);
}

std::vector<PeriodicComponent> periodic_components(const PeriodicHeap& heap, std::size_t cap) {
  const int n = heap.num_cells();
  // Cells on a common cycle share their sentinel status; group by mutual reachability.
  std::vector<int> scc(n, -1);
  int groups = 0;
  for (int u = 0; u < n; ++u) {
    if (scc[u] >= 0) continue;
    for (int v = u; v < n; ++v)
      if (v == u || (heap.distance(u, v) != kUnreachable && heap.distance(v, u) != kUnreachable))
        scc[v] = groups;
    ++groups;
  }
  std::vector<int> status(groups, -1);
  std::vector<PeriodicComponent> out;
  const std::array<Layer, 3> values{kNegInf, 0, kPosInf};
  std::function<void(int)> rec = [&](int g) {
    if (g == groups) {
      if (out.size() >= cap) throw CapacityError("more than " + std::to_string(cap) + " components");
      PeriodicComponent c;
      c.representative.frontier.resize(n);
      for (int u = 0; u < n; ++u) {
        c.representative.frontier[u] = values[status[scc[u]]];
        c.pattern.push_back(frontier_kind(c.representative.frontier[u]));
      }
      out.push_back(std::move(c));
      return;
    }
    for (int s = 0; s < 3; ++s) {
      status[g] = s;
      bool ok = true;
      for (const auto& e : heap.covers()) {
        const int a = status[scc[e.from]], b = status[scc[e.to]];
        if (a >= 0 && b >= 0 && a < b) ok = false;
      }
      if (ok) rec(g + 1);
      status[g] = -1;
    }
  };
  rec(0);
  return out;
}

}  // namespace heaplab
