#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

#include "srlab/perm.hpp"
#include "srlab/sring.hpp"

namespace srlab {

inline constexpr int kMaxColorGraphDegree = 128;

/// Complete colored digraph on group elements. For an S-ring the color of the
/// arc (g,h) is the basic set containing hg^{-1}, so color classes are the
/// relations R(X) = {(g,xg)}.
struct ColorGraph {
  int n = 0;
  int ncolors = 0;
  std::vector<int> color;  // row-major, color[u*n+v]

  int at(int u, int v) const { return color[static_cast<std::size_t>(u) * n + v]; }
};

inline ColorGraph color_graph(const SRing& a) {
  const Group& g = a.group;
  if (g.size > kMaxColorGraphDegree)
    throw std::invalid_argument("color graph degree bound exceeded");
  ColorGraph c;
  c.n = g.size;
  c.ncolors = a.rank;
  c.color.resize(static_cast<std::size_t>(c.n) * c.n);
  for (int u = 0; u < c.n; ++u)
    for (int v = 0; v < c.n; ++v)
      c.color[static_cast<std::size_t>(u) * c.n + v] = a.class_of[g.mul(v, g.inv(u))];
  return c;
}

/// Two-colored digraph of Cay(G,S): arcs (g, sg) against the rest.
inline ColorGraph cayley_color_graph(const Group& g, const std::vector<int>& s) {
  if (g.size > kMaxColorGraphDegree)
    throw std::invalid_argument("color graph degree bound exceeded");
  std::vector<char> in_s(g.size, 0);
  for (int x : s) {
    if (x < 0 || x >= g.size) throw std::out_of_range("connection set element");
    in_s[x] = 1;
  }
  ColorGraph c;
  c.n = g.size;
  c.ncolors = 2;
  c.color.resize(static_cast<std::size_t>(c.n) * c.n);
  for (int u = 0; u < c.n; ++u)
    for (int v = 0; v < c.n; ++v)
      c.color[static_cast<std::size_t>(u) * c.n + v] = in_s[g.mul(v, g.inv(u))] ? 1 : 0;
  return c;
}

namespace detail {

/// Ordered vertex partition used by the refinement search. Cells keep a
/// deterministic order; splitting preserves position with sub-cells ordered
/// by signature.
struct VertexPartition {
  std::vector<std::vector<int>> cells;

  bool discrete() const {
    for (const auto& c : cells)
      if (c.size() > 1) return false;
    return true;
  }

  int first_target_cell() const {
    int best = -1;
    std::size_t best_size = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].size() <= 1) continue;
      if (best < 0 || cells[i].size() < best_size) {
        best = static_cast<int>(i);
        best_size = cells[i].size();
      }
    }
    return best;
  }
};

// Signature of v against cell C: counts of each color on arcs v->C and C->v.
inline void vertex_signature(const ColorGraph& g, int v, const std::vector<int>& cell,
                             std::vector<int>& sig) {
  sig.assign(2 * g.ncolors, 0);
  for (int u : cell) {
    sig[g.at(v, u)]++;
    sig[g.ncolors + g.at(u, v)]++;
  }
}

/// One joint refinement sweep over a pair of partitions (lockstep); the two
/// graphs must already share color labels. Returns false when the partitions
/// disagree structurally (no isomorphism extends them).
inline bool refine_pair(const ColorGraph& g1, const ColorGraph& g2,
                        VertexPartition& p1, VertexPartition& p2) {
  if (p1.cells.size() != p2.cells.size()) return false;
  bool changed = true;
  std::vector<int> sig;
  while (changed) {
    changed = false;
    for (std::size_t target = 0; target < p1.cells.size(); ++target) {
      for (std::size_t i = 0; i < p1.cells.size(); ++i) {
        if (p1.cells[i].size() != p2.cells[i].size()) return false;
        if (p1.cells[i].size() <= 1) continue;

        std::vector<std::pair<std::vector<int>, int>> tag1, tag2;
        tag1.reserve(p1.cells[i].size());
        tag2.reserve(p2.cells[i].size());
        for (int v : p1.cells[i]) {
          vertex_signature(g1, v, p1.cells[target], sig);
          tag1.emplace_back(sig, v);
        }
        for (int v : p2.cells[i]) {
          vertex_signature(g2, v, p2.cells[target], sig);
          tag2.emplace_back(sig, v);
        }
        std::stable_sort(tag1.begin(), tag1.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::stable_sort(tag2.begin(), tag2.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t t = 0; t < tag1.size(); ++t)
          if (tag1[t].first != tag2[t].first) return false;
        if (tag1.front().first == tag1.back().first) continue;

        // split cell i in both partitions, sub-cells in signature order
        auto split = [&](VertexPartition& p, std::vector<std::pair<std::vector<int>, int>>& tag,
                         std::size_t idx) {
          std::vector<std::vector<int>> pieces;
          pieces.emplace_back();
          pieces.back().push_back(tag[0].second);
          for (std::size_t t = 1; t < tag.size(); ++t) {
            if (tag[t].first != tag[t - 1].first) pieces.emplace_back();
            pieces.back().push_back(tag[t].second);
          }
          p.cells[idx] = std::move(pieces[0]);
          p.cells.insert(p.cells.begin() + idx + 1,
                         std::make_move_iterator(pieces.begin() + 1),
                         std::make_move_iterator(pieces.end()));
        };
        split(p1, tag1, i);
        split(p2, tag2, i);
        changed = true;
      }
      if (changed) break;
    }
  }
  return true;
}

inline VertexPartition initial_partition(const ColorGraph& g,
                                         const std::vector<int>& individualized) {
  VertexPartition p;
  std::vector<char> used(g.n, 0);
  for (int v : individualized) {
    p.cells.push_back({v});
    used[v] = 1;
  }
  std::vector<int> rest;
  for (int v = 0; v < g.n; ++v)
    if (!used[v]) rest.push_back(v);
  if (!rest.empty()) p.cells.push_back(std::move(rest));
  return p;
}

inline bool is_color_iso(const ColorGraph& g1, const ColorGraph& g2, const Perm& f) {
  for (int u = 0; u < g1.n; ++u)
    for (int v = 0; v < g1.n; ++v)
      if (g1.at(u, v) != g2.at(f[u], f[v])) return false;
  return true;
}

/// Depth-first search for one bijection g1 -> g2 consistent with the paired
/// partitions. Individualization-refinement with the first smallest
/// non-singleton cell as target.
inline std::optional<Perm> extend_to_iso(const ColorGraph& g1, const ColorGraph& g2,
                                         VertexPartition p1, VertexPartition p2) {
  if (!refine_pair(g1, g2, p1, p2)) return std::nullopt;
  if (p1.discrete()) {
    Perm f(g1.n);
    for (std::size_t i = 0; i < p1.cells.size(); ++i) f[p1.cells[i][0]] = p2.cells[i][0];
    if (is_color_iso(g1, g2, f)) return f;
    return std::nullopt;
  }
  int cell = p1.first_target_cell();
  int v = p1.cells[cell][0];
  for (int u : p2.cells[cell]) {
    VertexPartition q1 = p1, q2 = p2;
    q1.cells[cell].erase(std::find(q1.cells[cell].begin(), q1.cells[cell].end(), v));
    q1.cells.insert(q1.cells.begin() + cell, {v});
    q2.cells[cell].erase(std::find(q2.cells[cell].begin(), q2.cells[cell].end(), u));
    q2.cells.insert(q2.cells.begin() + cell, {u});
    if (auto f = extend_to_iso(g1, g2, std::move(q1), std::move(q2))) return f;
  }
  return std::nullopt;
}

}  // namespace detail

/// Equitable vertex partition, stable under arc-color counting, with the
/// listed vertices individualized first. Deterministic cell order.
inline std::vector<std::vector<int>> refine(const ColorGraph& g,
                                            const std::vector<int>& individualized) {
  detail::VertexPartition p = detail::initial_partition(g, individualized);
  detail::VertexPartition q = p;
  bool ok = detail::refine_pair(g, g, p, q);
  assert(ok);
  (void)ok;
  std::sort(p.cells.begin(), p.cells.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return p.cells;
}

/// Color-preserving automorphism group, computed by partition backtracking
/// with orbit pruning on a stabilizer chain. known_subgroup seeds the chain
/// (for S-rings: the right translations).
inline PermGroup automorphisms(const ColorGraph& g,
                               const std::vector<Perm>& known_subgroup = {}) {
  if (g.n > kMaxColorGraphDegree)
    throw std::invalid_argument("automorphism degree bound exceeded");

  // base points: least vertex of the first smallest non-singleton cell,
  // individualizing as we go
  std::vector<int> base;
  {
    detail::VertexPartition p = detail::initial_partition(g, {});
    detail::VertexPartition q = p;
    detail::refine_pair(g, g, p, q);
    while (!p.discrete()) {
      int cell = p.first_target_cell();
      int v = p.cells[cell][0];
      base.push_back(v);
      p.cells[cell].erase(p.cells[cell].begin());
      p.cells.insert(p.cells.begin() + cell, {v});
      q = p;
      detail::refine_pair(g, g, p, q);
    }
  }

  PermGroup group(g.n, {}, base);
  for (const Perm& s : known_subgroup) group.add_generator(s);

  std::vector<int> prefix;
  for (std::size_t level = 0; level < base.size(); ++level) {
    int b = base[level];
    // candidate images of b fixing the prefix pointwise: the cell of b
    detail::VertexPartition p = detail::initial_partition(g, prefix);
    detail::VertexPartition q = p;
    if (!detail::refine_pair(g, g, p, q)) break;
    std::vector<int> cell_of_b;
    for (const auto& c : p.cells)
      if (std::find(c.begin(), c.end(), b) != c.end()) {
        cell_of_b = c;
        break;
      }

    for (int w : cell_of_b) {
      if (w == b) continue;
      // skip images already reachable: orbit of b at this chain level
      if (static_cast<int>(level) < group.base_length() &&
          group.base_point(level) == b) {
        const Perm* rep = group.transversal(static_cast<int>(level), w);
        if (rep) continue;
      }
      std::vector<int> src_ind = prefix, tgt_ind = prefix;
      src_ind.push_back(b);
      tgt_ind.push_back(w);
      auto f = detail::extend_to_iso(g, g, detail::initial_partition(g, src_ind),
                                     detail::initial_partition(g, tgt_ind));
      if (f) group.add_generator(std::move(*f));
    }
    prefix.push_back(b);
  }
  return group;
}

struct IsoResult {
  bool found = false;
  Perm map;                    // vertex bijection g1 -> g2
  std::vector<int> color_map;  // color class matching, g1 color -> g2 color
};

namespace detail {

// Backtracking over color matchings compatible with the structure-constant
// tensors of two S-rings; calls out to the vertex search for each complete
// candidate.
inline bool match_colors(const SRing& a, const SRing& b, int next,
                         std::vector<int>& mu, std::vector<char>& used,
                         const ColorGraph& g1, const ColorGraph& g2, IsoResult& out) {
  int r = a.rank;
  if (next == r) {
    ColorGraph recolored = g2;
    std::vector<int> inv_mu(r);
    for (int i = 0; i < r; ++i) inv_mu[mu[i]] = i;
    for (auto& c : recolored.color) c = inv_mu[c];
    auto f = extend_to_iso(g1, recolored, initial_partition(g1, {}),
                           initial_partition(recolored, {}));
    if (!f) return false;
    out.found = true;
    out.map = *f;
    out.color_map = mu;
    return true;
  }
  for (int j = 0; j < r; ++j) {
    if (used[j]) continue;
    if (a.size_of(next) != b.size_of(j)) continue;
    bool ok = true;
    // inverse pairing must be respected
    if (a.inv_class[next] < next && mu[a.inv_class[next]] != b.inv_class[j]) ok = false;
    if (a.inv_class[next] == next && b.inv_class[j] != j) ok = false;
    // structure constants over the decided prefix
    auto img = [&](int idx) { return idx == next ? j : mu[idx]; };
    for (int i = 0; i <= next && ok; ++i)
      for (int k = 0; k <= next && ok; ++k)
        if (a.c(i, k, next) != b.c(img(i), img(k), j) ||
            a.c(i, next, k) != b.c(img(i), j, img(k)) ||
            a.c(next, i, k) != b.c(j, img(i), img(k)))
          ok = false;
    if (!ok) continue;
    mu[next] = j;
    used[j] = 1;
    if (match_colors(a, b, next + 1, mu, used, g1, g2, out)) return true;
    used[j] = 0;
  }
  return false;
}

}  // namespace detail

/// Isomorphism between two color graphs with a free color matching (the
/// S-ring notion: some bijection maps each R(X) onto some R(X')).
inline IsoResult sring_isomorphism(const SRing& a, const SRing& b) {
  IsoResult out;
  if (a.group.size != b.group.size || a.rank != b.rank) return out;
  std::vector<int> sa, sb;
  for (int i = 0; i < a.rank; ++i) sa.push_back(a.size_of(i));
  for (int i = 0; i < b.rank; ++i) sb.push_back(b.size_of(i));
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return out;

  ColorGraph g1 = color_graph(a), g2 = color_graph(b);
  std::vector<int> mu(a.rank, -1);
  std::vector<char> used(a.rank, 0);
  mu[0] = 0;
  used[0] = 1;  // identity class corresponds
  detail::match_colors(a, b, 1, mu, used, g1, g2, out);
  return out;
}

/// Isomorphism of plain color graphs with colors matched identically
/// (Cayley digraph isomorphism); returns the bijection if one exists.
inline std::optional<Perm> digraph_isomorphism(const ColorGraph& g1,
                                               const ColorGraph& g2) {
  if (g1.n != g2.n || g1.ncolors != g2.ncolors) return std::nullopt;
  return detail::extend_to_iso(g1, g2, detail::initial_partition(g1, {}),
                               detail::initial_partition(g2, {}));
}

}  // namespace srlab
