#pragma once

// Brute-force reference model for small finite posets. Everything here is
// recomputed from the cover list, the coloring and the color graph only:
// order by closure, splits by subset scan, properties by quantifier
// expansion, operators as dense integer matrices.

#include <cstdint>
#include <vector>

#include "heaplab/poset.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<long>>;

struct Model {
  int n = 0;
  int m = 0;
  std::vector<int> color;
  std::vector<std::vector<char>> adj;    // color graph
  std::vector<std::vector<char>> cover;  // x -> y
  std::vector<std::vector<char>> lt;     // strict order

  explicit Model(const heaplab::FinitePoset& P) {
    n = P.size();
    m = P.graph().size();
    color = P.colors();
    adj.assign(m, std::vector<char>(m, 0));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) adj[a][b] = P.graph().adjacent(a, b);
    cover.assign(n, std::vector<char>(n, 0));
    for (auto [x, y] : P.covers()) cover[x][y] = 1;
    lt = cover;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (lt[i][k] && lt[k][j]) lt[i][j] = 1;
  }

  bool comparable(int x, int y) const { return x == y || lt[x][y] || lt[y][x]; }
  bool in(std::uint32_t s, int x) const { return (s >> x) & 1u; }

  // ---- splits ----
  std::vector<std::uint32_t> ideals() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      bool ok = true;
      for (int y = 0; y < n && ok; ++y)
        if (in(s, y))
          for (int x = 0; x < n; ++x)
            if (lt[x][y] && !in(s, x)) ok = false;
      if (ok) out.push_back(s);
    }
    return out;
  }

  // ---- properties ----
  bool EC() const {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (color[x] == color[y] && !comparable(x, y)) return false;
    return true;
  }
  bool AC() const {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (adj[color[x]][color[y]] && !comparable(x, y)) return false;
    return true;
  }
  bool ND() const {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (cover[x][y] && color[x] == color[y]) return false;
    return true;
  }
  bool NA() const {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (cover[x][y] && !adj[color[x]][color[y]]) return false;
    return true;
  }
  bool I3ND() const {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          if (!cover[x][y] || !cover[y][z]) continue;
          int between = 0;
          for (int w = 0; w < n; ++w) between += lt[x][w] && lt[w][z];
          if (between == 1 && color[x] == color[z]) return false;
        }
    return true;
  }
  bool consecutive(int x, int y) const {
    if (!lt[x][y] || color[x] != color[y]) return false;
    for (int w = 0; w < n; ++w)
      if (lt[x][w] && lt[w][y] && color[w] == color[x]) return false;
    return true;
  }
  bool I2A() const {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (!consecutive(x, y)) continue;
        int census = 0;
        for (int w = 0; w < n; ++w) census += lt[x][w] && lt[w][y] && adj[color[w]][color[x]];
        if (census != 2) return false;
      }
    return true;
  }
  bool max_of_color(int x) const {
    for (int y = 0; y < n; ++y)
      if (lt[x][y] && color[y] == color[x]) return false;
    return true;
  }
  bool min_of_color(int x) const {
    for (int y = 0; y < n; ++y)
      if (lt[y][x] && color[y] == color[x]) return false;
    return true;
  }
  bool MxGA(int k) const {
    for (int x = 0; x < n; ++x) {
      if (!max_of_color(x)) continue;
      int c = 0;
      for (int y = 0; y < n; ++y) c += lt[x][y] && adj[color[y]][color[x]];
      if (c > k) return false;
    }
    return true;
  }
  bool MnLA(int k) const {
    for (int x = 0; x < n; ++x) {
      if (!min_of_color(x)) continue;
      int c = 0;
      for (int y = 0; y < n; ++y) c += lt[y][x] && adj[color[y]][color[x]];
      if (c > k) return false;
    }
    return true;
  }
  bool d_complete() const { return EC() && NA() && AC() && I2A() && MxGA(1); }
  bool minuscule() const { return d_complete() && MnLA(1); }

  // ---- census (no infinite colors in a finite poset, so no +1 term) ----
  using Members = std::vector<char>;
  Members members(std::uint32_t s) const {
    Members out(n);
    for (int x = 0; x < n; ++x) out[x] = in(s, x);
    return out;
  }
  int upsilon(int b, const Members& I) const {
    int y = -1;
    for (int x = 0; x < n; ++x)
      if (I[x] && color[x] == b) {
        bool top = true;
        for (int w = 0; w < n; ++w)
          if (I[w] && color[w] == b && lt[x][w]) top = false;
        if (top) y = x;
      }
    if (y < 0) return 1;
    int c = 0;
    for (int z = 0; z < n; ++z) c += I[z] && lt[y][z] && adj[color[z]][b];
    return c;
  }
  int psi(int b, const Members& I) const {
    int y = -1;
    for (int x = 0; x < n; ++x)
      if (!I[x] && color[x] == b) {
        bool bottom = true;
        for (int w = 0; w < n; ++w)
          if (!I[w] && color[w] == b && lt[w][x]) bottom = false;
        if (bottom) y = x;
      }
    if (y < 0) return 1;
    int c = 0;
    for (int z = 0; z < n; ++z) c += !I[z] && lt[z][y] && adj[color[z]][b];
    return c;
  }
  bool meets(int b, const Members& I, bool inside) const {
    for (int x = 0; x < n; ++x)
      if (static_cast<bool>(I[x]) == inside && color[x] == b) return true;
    return false;
  }
  int mu(int b, const Members& I) const { return meets(b, I, true) ? 1 - upsilon(b, I) : -1 + psi(b, I); }
  int mu_prime(int b, const Members& I) const {
    return meets(b, I, false) ? -1 + psi(b, I) : 1 - upsilon(b, I);
  }
  int upsilon(int b, std::uint32_t I) const { return upsilon(b, members(I)); }
  int psi(int b, std::uint32_t I) const { return psi(b, members(I)); }
  int mu(int b, std::uint32_t I) const { return mu(b, members(I)); }
  int mu_prime(int b, std::uint32_t I) const { return mu_prime(b, members(I)); }

  // ---- operators on the span of the ideals (row = image, column = source) ----
  struct Ops {
    std::vector<std::uint32_t> ideals;
    std::vector<Matrix> X, Y;
  };
  Ops operators() const {
    Ops o;
    o.ideals = ideals();
    const int N = static_cast<int>(o.ideals.size());
    auto index = [&](std::uint32_t s) {
      for (int i = 0; i < N; ++i)
        if (o.ideals[i] == s) return i;
      return -1;
    };
    o.X.assign(m, Matrix(N, std::vector<long>(N, 0)));
    o.Y = o.X;
    for (int i = 0; i < N; ++i)
      for (int x = 0; x < n; ++x) {
        const std::uint32_t s = o.ideals[i];
        const int j = index(s ^ (1u << x));  // a single-element change that stays an ideal
        if (j < 0) continue;
        if (!in(s, x)) o.X[color[x]][j][i] += 1;
        else o.Y[color[x]][j][i] += 1;
      }
    return o;
  }
  std::vector<Matrix> diagonal(const Ops& o, bool prime = false) const {
    const int N = static_cast<int>(o.ideals.size());
    std::vector<Matrix> H(m, Matrix(N, std::vector<long>(N, 0)));
    for (int a = 0; a < m; ++a)
      for (int i = 0; i < N; ++i) H[a][i][i] = prime ? mu_prime(a, o.ideals[i]) : mu(a, o.ideals[i]);
    return H;
  }
};

inline Matrix mul(const Matrix& A, const Matrix& B) {
  const std::size_t N = A.size();
  Matrix C(N, std::vector<long>(N, 0));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k)
      if (A[i][k])
        for (std::size_t j = 0; j < N; ++j) C[i][j] += A[i][k] * B[k][j];
  return C;
}
inline Matrix lin(const Matrix& A, long a, const Matrix& B, long b) {
  Matrix C = A;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A.size(); ++j) C[i][j] = a * A[i][j] + b * B[i][j];
  return C;
}
inline Matrix bracket(const Matrix& A, const Matrix& B) { return lin(mul(A, B), 1, mul(B, A), -1); }
inline bool zero(const Matrix& A) {
  for (const auto& row : A)
    for (long v : row)
      if (v) return false;
  return true;
}

// Relation families checked on dense matrices.
struct Relations {
  bool XX = true, YY = true, HH = true, HX = true, HY = true, XY = true;
};

inline Relations check_relations(const Model& M, const Model::Ops& o, const std::vector<Matrix>* H) {
  Relations r;
  const int m = M.m;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const bool dist = a != b && !M.adj[a][b];
      if (dist && !zero(bracket(o.X[b], o.X[a]))) r.XX = false;
      if (!zero(bracket(o.X[a], bracket(o.X[a], o.X[b])))) r.XX = false;
      if (dist && !zero(bracket(o.Y[b], o.Y[a]))) r.YY = false;
      if (!zero(bracket(o.Y[a], bracket(o.Y[a], o.Y[b])))) r.YY = false;
      if (a != b && !zero(bracket(o.X[b], o.Y[a]))) r.XY = false;
      if (!H) continue;
      const long theta = a == b ? 2 : M.adj[a][b] ? -1 : 0;
      if (!zero(bracket((*H)[b], (*H)[a]))) r.HH = false;
      if (!zero(lin(bracket((*H)[b], o.X[a]), 1, o.X[a], -theta))) r.HX = false;
      if (!zero(lin(bracket((*H)[b], o.Y[a]), 1, o.Y[a], theta))) r.HY = false;
      if (a == b && !zero(lin(bracket(o.X[a], o.Y[a]), 1, (*H)[a], -1))) r.XY = false;
    }
  return r;
}

inline bool square_nilpotent(const std::vector<Matrix>& ops) {
  for (const auto& A : ops)
    if (!zero(mul(A, A))) return false;
  return true;
}

}  // namespace oracle
