#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "srlab/colorgraph.hpp"
#include "srlab/parallel.hpp"
#include "srlab/schurian.hpp"
#include "srlab/sring.hpp"

namespace srlab {

struct CatalogEntry {
  std::vector<std::vector<int>> classes;
  std::map<std::string, std::string> tags;

  bool operator<(const CatalogEntry& o) const { return classes < o.classes; }
  bool operator==(const CatalogEntry& o) const { return classes == o.classes; }
};

/// Persisted collection of S-ring partitions over one group. Scope kRaw
/// lists every partition satisfying the constraint; scope kSlice (used at
/// order 32) lists every such partition in which the anchor element forms a
/// singleton class -- each Cayley class has at least one member there.
struct Catalog {
  Group group;
  std::string constraint;  // "all" or "p<prime>"
  enum Scope { kRaw, kSlice } scope = kRaw;
  int anchor = -1;  // kSlice: the anchored involution
  std::vector<CatalogEntry> entries;
};

namespace detail {

// ---------------------------------------------------------------------------
// hot search state: groups of size <= 32, classes as 32-bit masks
// ---------------------------------------------------------------------------

struct SearchCtx {
  const Group* g = nullptr;
  int n = 0;
  int p = 0;  // 0: no size constraint; otherwise class sizes are p-powers
  bool self_inverse = true;
  std::array<std::array<std::uint8_t, 32>, 32> mul{};
  std::array<std::uint8_t, 32> inv{};
  std::array<char, 33> p_power_size{};

  explicit SearchCtx(const Group& group, int prime) : g(&group), n(group.size), p(prime) {
    if (n > 32) throw std::invalid_argument("search state limited to 32 elements");
    self_inverse = group.exponent <= 2;
    for (int a = 0; a < n; ++a) {
      inv[a] = static_cast<std::uint8_t>(group.inv(a));
      for (int b = 0; b < n; ++b) mul[a][b] = static_cast<std::uint8_t>(group.mul(a, b));
    }
    for (int s = 1; s <= 32; ++s) {
      if (p == 0) {
        p_power_size[s] = 1;
      } else {
        int v = s;
        while (v % p == 0) v /= p;
        p_power_size[s] = (v == 1);
      }
    }
  }
};

struct WlState {
  int nclasses = 0;
  std::uint64_t committed = 0;
  std::array<std::uint32_t, 34> cls{};
  std::array<std::int8_t, 32> class_of{};

  int class_containing(int x) const { return class_of[x]; }
};

inline int mask_size(std::uint32_t m) { return std::popcount(m); }

// Splits class k of st by the per-element keys in key[], ascending key order
// keeps the lowest-key part under id k. Returns false when k is committed
// and would split.
inline bool split_class_by_key(WlState& st, int k, const std::array<std::uint8_t, 32>& key,
                               std::uint64_t& dirty) {
  std::uint32_t m = st.cls[k];
  int first = std::countr_zero(m);
  bool uniform = true;
  for (std::uint32_t w = m & (m - 1); w; w &= w - 1)
    if (key[std::countr_zero(w)] != key[first]) {
      uniform = false;
      break;
    }
  if (uniform) return true;
  if (st.committed >> k & 1) return false;

  // bucket by key value
  std::array<std::uint32_t, 33> bucket{};
  std::array<std::uint8_t, 33> vals{};
  int nb = 0;
  for (std::uint32_t w = m; w; w &= w - 1) {
    int x = std::countr_zero(w);
    std::uint8_t v = key[x];
    int slot = -1;
    for (int i = 0; i < nb; ++i)
      if (vals[i] == v) slot = i;
    if (slot < 0) {
      slot = nb++;
      vals[slot] = v;
      bucket[slot] = 0;
    }
    bucket[slot] |= 1u << x;
  }
  // ascending value order for determinism
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j)
      if (vals[j] < vals[i]) {
        std::swap(vals[i], vals[j]);
        std::swap(bucket[i], bucket[j]);
      }
  st.cls[k] = bucket[0];
  dirty |= 1ull << k;
  for (int i = 1; i < nb; ++i) {
    int fresh = st.nclasses++;
    st.cls[fresh] = bucket[i];
    for (std::uint32_t w = bucket[i]; w; w &= w - 1)
      st.class_of[std::countr_zero(w)] = static_cast<std::int8_t>(fresh);
    dirty |= 1ull << fresh;
  }
  return true;
}

/// WL stabilization: repeatedly split classes by inverse pairing and by
/// convolution counts against dirty classes, until stable. Returns false if
/// a committed class would split.
inline bool stabilize(const SearchCtx& ctx, WlState& st, std::uint64_t dirty) {
  std::array<std::uint8_t, 32> counts{};
  while (dirty) {
    int d = std::countr_zero(dirty);
    dirty &= dirty - 1;
    if (!ctx.self_inverse) {
      // inverse signature of every class touching the inverse image of d
      std::array<std::uint8_t, 32> key{};
      for (int x = 0; x < ctx.n; ++x) key[x] = static_cast<std::uint8_t>(st.class_of[ctx.inv[x]]);
      for (int k = 0; k < st.nclasses; ++k)
        if (!split_class_by_key(st, k, key, dirty)) return false;
    }
    for (int c = 0; c < st.nclasses; ++c) {
      std::uint32_t a = st.cls[d], b = st.cls[c];
      if (a == 0 || b == 0) continue;
      counts.fill(0);
      for (std::uint32_t wa = a; wa; wa &= wa - 1) {
        int x = std::countr_zero(wa);
        const auto& row = ctx.mul[x];
        for (std::uint32_t wb = b; wb; wb &= wb - 1) counts[row[std::countr_zero(wb)]]++;
      }
      int before = st.nclasses;
      for (int k = 0; k < before; ++k)
        if (!split_class_by_key(st, k, counts, dirty)) return false;
    }
  }
  return true;
}

inline std::vector<std::vector<int>> canonical_classes(const WlState& st) {
  std::vector<std::uint32_t> masks(st.cls.begin(), st.cls.begin() + st.nclasses);
  std::sort(masks.begin(), masks.end(),
            [](std::uint32_t a, std::uint32_t b) { return std::countr_zero(a) < std::countr_zero(b); });
  std::vector<std::vector<int>> out;
  out.reserve(masks.size());
  for (std::uint32_t m : masks) {
    std::vector<int> cls;
    for (std::uint32_t w = m; w; w &= w - 1) cls.push_back(std::countr_zero(w));
    out.push_back(std::move(cls));
  }
  return out;
}

// commits X (must live inside a single free class); the remainder of that
// class stays free
inline bool commit_class(const SearchCtx& ctx, WlState& st, std::uint32_t x,
                         std::uint64_t& dirty) {
  int host = st.class_of[std::countr_zero(x)];
  if ((x & ~st.cls[host]) != 0 || (st.committed >> host & 1)) return false;
  if (!ctx.p_power_size[mask_size(x)]) return false;
  if (x == st.cls[host]) {
    st.committed |= 1ull << host;
    dirty |= 1ull << host;
    return true;
  }
  st.cls[host] &= ~x;
  int fresh = st.nclasses++;
  st.cls[fresh] = x;
  for (std::uint32_t w = x; w; w &= w - 1)
    st.class_of[std::countr_zero(w)] = static_cast<std::int8_t>(fresh);
  st.committed |= 1ull << fresh;
  dirty |= (1ull << fresh) | (1ull << host);
  return true;
}

// cheap necessary condition: |X * X^{-1} at z| is constant over z in X
// (X would be a basic set, so the product X X^{-1} must be constant on X)
inline bool self_consistent(const SearchCtx& ctx, std::uint32_t x) {
  int expect = -1;
  for (std::uint32_t wz = x; wz; wz &= wz - 1) {
    int z = std::countr_zero(wz);
    int cnt = 0;
    for (std::uint32_t wa = x; wa; wa &= wa - 1) {
      int a = std::countr_zero(wa);
      if (x >> ctx.mul[a][ctx.inv[z]] & 1) ++cnt;  // a z^{-1} in X
    }
    if (expect < 0) expect = cnt;
    else if (cnt != expect) return false;
  }
  return true;
}

inline int least_free_element(const WlState& st, int n) {
  for (int x = 0; x < n; ++x)
    if (!(st.committed >> st.class_of[x] & 1)) return x;
  return -1;
}

// ---------------------------------------------------------------------------
// direct search: the class of the least unassigned element is chosen among
// sub-masks of its stable cell
// ---------------------------------------------------------------------------

inline void direct_rec(const SearchCtx& ctx, const WlState& st,
                       std::vector<std::vector<std::vector<int>>>& out) {
  int x = least_free_element(st, ctx.n);
  if (x < 0) {
    out.push_back(canonical_classes(st));
    return;
  }
  std::uint32_t cell = st.cls[st.class_of[x]];
  std::uint32_t rest = cell & ~(1u << x);
  // all sub-masks of cell containing x, in decreasing mask order
  std::uint32_t sub = rest;
  for (;;) {
    std::uint32_t cand = sub | (1u << x);
    if (ctx.p_power_size[mask_size(cand)] && self_consistent(ctx, cand)) {
      WlState next = st;
      std::uint64_t dirty = 0;
      if (commit_class(ctx, next, cand, dirty) && stabilize(ctx, next, dirty))
        direct_rec(ctx, next, out);
    }
    if (sub == 0) break;
    sub = (sub - 1) & rest;
  }
}

inline WlState initial_state(const SearchCtx& ctx) {
  WlState st;
  st.nclasses = 1;
  st.cls[0] = 1u;  // identity class, committed
  st.class_of[0] = 0;
  st.committed = 1ull;
  if (ctx.n > 1) {
    st.nclasses = 2;
    st.cls[1] = (ctx.n == 32 ? ~0u : ((1u << ctx.n) - 1)) & ~1u;
    for (int v = 1; v < ctx.n; ++v) st.class_of[v] = 1;
  }
  return st;
}

}  // namespace detail

/// Exhaustive backtracking enumeration over partitions; p = 0 enumerates all
/// S-rings, otherwise only p-S-rings. Bounded to |G| <= 16 for p = 0.
inline std::vector<CatalogEntry> enumerate_direct(const Group& g, int p, int workers = 1) {
  if (p == 0 && g.size > 16) throw std::invalid_argument("full enumeration bound exceeded");
  if (g.size > 32) throw std::invalid_argument("enumeration bound exceeded");
  detail::SearchCtx ctx(g, p);
  detail::WlState root = detail::initial_state(ctx);
  std::uint64_t dirty0 = root.nclasses > 1 ? 2ull : 0ull;
  std::vector<CatalogEntry> result;
  if (!detail::stabilize(ctx, root, dirty0)) return result;

  int x = detail::least_free_element(root, ctx.n);
  if (x < 0) {
    result.push_back({detail::canonical_classes(root), {}});
    return result;
  }
  // first-level branching, parallelized
  std::uint32_t cell = root.cls[root.class_of[x]];
  std::uint32_t rest = cell & ~(1u << x);
  std::vector<std::uint32_t> roots;
  std::uint32_t sub = rest;
  for (;;) {
    std::uint32_t cand = sub | (1u << x);
    if (ctx.p_power_size[detail::mask_size(cand)] && detail::self_consistent(ctx, cand))
      roots.push_back(cand);
    if (sub == 0) break;
    sub = (sub - 1) & rest;
  }
  std::vector<std::vector<std::vector<std::vector<int>>>> buckets(roots.size());
  parallel_tasks(static_cast<int>(roots.size()), workers, [&](int t) {
    detail::WlState next = root;
    std::uint64_t dirty = 0;
    if (detail::commit_class(ctx, next, roots[t], dirty) &&
        detail::stabilize(ctx, next, dirty))
      detail::direct_rec(ctx, next, buckets[t]);
  });
  for (auto& b : buckets)
    for (auto& classes : b) result.push_back({std::move(classes), {}});
  std::sort(result.begin(), result.end());
  return result;
}

namespace detail {

// ---------------------------------------------------------------------------
// lift search for 2-S-rings over C_2^n: every such ring has a non-identity
// singleton class g (class sizes are powers of two and they sum to 2^n, so
// the singletons come in pairs), hence refines the preimage partition of its
// quotient modulo {e,g}. Blocks lift either whole or as two fiber
// transversals.
// ---------------------------------------------------------------------------

struct LiftJob {
  const SearchCtx* ctx;
  int g0 = 1;                          // anchored singleton
  std::vector<std::uint32_t> blocks;   // preimage of each quotient class
  std::vector<int> block_sizes;        // |Y| per block (block size = 2|Y|)
  bool require_least_singleton = true; // raw mode: keep only g0 = least singleton
  std::vector<std::vector<std::vector<int>>> found;

  void emit(const WlState& st) {
    if (require_least_singleton) {
      for (int x = 1; x < g0; ++x)
        if (mask_size(st.cls[st.class_of[x]]) == 1) return;
    }
    found.push_back(canonical_classes(st));
  }

  void rec(const WlState& st, std::size_t t) {
    if (t == blocks.size()) {
      emit(st);
      return;
    }
    const SearchCtx& c = *ctx;
    std::uint32_t b = blocks[t];
    int half = block_sizes[t];

    // stable cells currently inside the block
    std::array<int, 32> cell_ids{};
    int ncells = 0;
    for (int k = 0; k < st.nclasses; ++k)
      if (st.cls[k] && (st.cls[k] & b) == st.cls[k]) cell_ids[ncells++] = k;

    auto transversal = [&](std::uint32_t x) {
      // one element per {u, u+g0} fiber
      std::uint32_t shifted = 0;
      for (std::uint32_t w = x; w; w &= w - 1)
        shifted |= 1u << c.mul[std::countr_zero(w)][g0];
      return (x & shifted) == 0;
    };

    if (ncells == 1) {
      int k = cell_ids[0];
      // whole block as a single class
      {
        WlState next = st;
        std::uint64_t dirty = 0;
        next.committed |= 1ull << k;
        dirty |= 1ull << k;
        if (stabilize(c, next, dirty)) rec(next, t + 1);
      }
      // two transversal classes; fix the least element's side
      int low = std::countr_zero(b);
      std::vector<int> fiber_reps;
      for (std::uint32_t w = b; w; w &= w - 1) {
        int u = std::countr_zero(w);
        if (u < c.mul[u][g0]) fiber_reps.push_back(u);
      }
      int f = static_cast<int>(fiber_reps.size());
      for (std::uint32_t choice = 0; choice < (1u << (f - 1)); ++choice) {
        std::uint32_t x = 0;
        for (int i = 0, bit = 0; i < f; ++i) {
          int u = fiber_reps[i];
          int v = c.mul[u][g0];
          if (u == low) {
            x |= 1u << u;
          } else {
            x |= 1u << ((choice >> bit & 1) ? v : u);
            ++bit;
          }
        }
        if (!self_consistent(c, x) || !self_consistent(c, b & ~x)) continue;
        WlState next = st;
        std::uint64_t dirty = 0;
        if (!commit_class(c, next, x, dirty)) continue;
        // the remainder is the second class
        int host = next.class_of[std::countr_zero(b & ~x)];
        next.committed |= 1ull << host;
        dirty |= 1ull << host;
        if (stabilize(c, next, dirty)) rec(next, t + 1);
      }
      return;
    }
    if (ncells == 2) {
      std::uint32_t c1 = st.cls[cell_ids[0]], c2 = st.cls[cell_ids[1]];
      if (mask_size(c1) != half || mask_size(c2) != half) return;
      if (!transversal(c1) || !transversal(c2)) return;
      WlState next = st;
      std::uint64_t dirty = 0;
      next.committed |= (1ull << cell_ids[0]) | (1ull << cell_ids[1]);
      dirty |= (1ull << cell_ids[0]) | (1ull << cell_ids[1]);
      if (stabilize(c, next, dirty)) rec(next, t + 1);
      return;
    }
    // more than two stable cells cannot arise from at most two classes
  }
};

/// All 2-S-rings over an elementary 2-group in which {g0} is a singleton
/// class and whose quotient modulo {e,g0} equals the given partition.
inline void lift_from_quotient(const SearchCtx& ctx, int g0, const Section& sec,
                               const std::vector<std::vector<int>>& quotient_classes,
                               bool require_least_singleton,
                               std::vector<std::vector<std::vector<int>>>& out) {
  WlState st;
  st.nclasses = 2;
  st.cls[0] = 1u;
  st.cls[1] = 1u << g0;
  st.class_of[0] = 0;
  st.class_of[g0] = 1;
  st.committed = 3ull;

  LiftJob job;
  job.ctx = &ctx;
  job.g0 = g0;
  job.require_least_singleton = require_least_singleton;

  std::uint64_t dirty = 3ull;
  for (const auto& qcls : quotient_classes) {
    if (qcls.size() == 1 && qcls[0] == 0) continue;  // identity coset = {e,g0}
    std::uint32_t block = 0;
    for (int x = 0; x < ctx.n; ++x)
      if (std::binary_search(qcls.begin(), qcls.end(), sec.to_quotient[x]))
        block |= 1u << x;
    int id = st.nclasses++;
    st.cls[id] = block;
    for (std::uint32_t w = block; w; w &= w - 1)
      st.class_of[std::countr_zero(w)] = static_cast<std::int8_t>(id);
    dirty |= 1ull << id;
    job.blocks.push_back(block);
    job.block_sizes.push_back(static_cast<int>(qcls.size()));
  }
  // smaller blocks first: cheap decisions, strong pruning
  std::vector<std::size_t> order(job.blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (job.block_sizes[a] != job.block_sizes[b]) return job.block_sizes[a] < job.block_sizes[b];
    return std::countr_zero(job.blocks[a]) < std::countr_zero(job.blocks[b]);
  });
  std::vector<std::uint32_t> blocks;
  std::vector<int> sizes;
  for (std::size_t i : order) {
    blocks.push_back(job.blocks[i]);
    sizes.push_back(job.block_sizes[i]);
  }
  job.blocks = std::move(blocks);
  job.block_sizes = std::move(sizes);

  if (stabilize(ctx, st, dirty)) job.rec(st, 0);
  out = std::move(job.found);
}

}  // namespace detail

/// 2-S-rings over an elementary abelian 2-group of rank >= 2, built by
/// lifting the raw catalog one rank below. anchored = true keeps only rings
/// where {1} is a singleton class (one representative slice per Cayley
/// class); otherwise the full raw list is produced.
inline std::vector<CatalogEntry> enumerate_lifted_two_srings(const Group& g, bool anchored,
                                                             int workers = 1) {
  if (!g.is_elementary_two() || g.orders.size() < 2)
    throw std::invalid_argument("lift enumeration needs C_2^n, n >= 2");
  Group below = make_group(std::vector<int>(g.orders.size() - 1, 2));
  std::vector<CatalogEntry> quotients =
      below.size >= 16 ? enumerate_lifted_two_srings(below, false, workers)
                       : enumerate_direct(below, 2, workers);

  detail::SearchCtx ctx(g, 2);
  std::vector<int> anchors;
  if (anchored) {
    anchors.push_back(1);
  } else {
    for (int h = 1; h < g.size; ++h) anchors.push_back(h);
  }

  struct Task {
    int anchor_idx;
    const CatalogEntry* quotient;
  };
  std::vector<Task> tasks;
  std::vector<Section> sections(anchors.size());
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    sections[i] = full_section(g, make_subgroup(g, {0, anchors[i]}));
    for (const CatalogEntry& q : quotients) tasks.push_back({static_cast<int>(i), &q});
  }
  std::vector<std::vector<std::vector<std::vector<int>>>> buckets(tasks.size());
  parallel_tasks(static_cast<int>(tasks.size()), workers, [&](int t) {
    detail::lift_from_quotient(ctx, anchors[tasks[t].anchor_idx],
                               sections[tasks[t].anchor_idx],
                               tasks[t].quotient->classes, !anchored, buckets[t]);
  });
  std::vector<CatalogEntry> result;
  for (auto& b : buckets)
    for (auto& classes : b) result.push_back({std::move(classes), {}});
  std::sort(result.begin(), result.end());
  return result;
}

/// Exhaustive enumeration under the stated constraint. "all" needs |G| <= 16;
/// "p2" over C_2^5 produces the anchored slice (see Catalog::Scope).
inline Catalog enumerate_srings(const Group& g, const std::string& constraint,
                                int workers = 0) {
  if (workers <= 0) workers = default_workers();
  Catalog cat;
  cat.group = g;
  cat.constraint = constraint;

  int p = 0;
  if (constraint != "all") {
    if (constraint.size() < 2 || constraint[0] != 'p')
      throw std::invalid_argument("constraint must be 'all' or 'p<prime>'");
    p = std::stoi(constraint.substr(1));
    if (p < 2) throw std::invalid_argument("bad constraint prime");
  }

  if (p == 0) {
    if (g.size > 16) throw std::invalid_argument("full enumeration supports |G| <= 16");
    cat.entries = enumerate_direct(g, 0, workers);
    return cat;
  }
  if (g.size > 32) throw std::invalid_argument("p-S-ring enumeration supports |G| <= 32");

  if (p == 2 && g.is_elementary_two() && g.size == 32) {
    cat.scope = Catalog::kSlice;
    cat.anchor = 1;
    cat.entries = enumerate_lifted_two_srings(g, true, workers);
    return cat;
  }
  if (p == 2 && g.is_elementary_two() && g.size == 16) {
    cat.entries = enumerate_lifted_two_srings(g, false, workers);
    return cat;
  }
  cat.entries = enumerate_direct(g, p, workers);
  return cat;
}

// ---------------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------------

namespace detail {

inline std::string partition_key(const std::vector<std::vector<int>>& classes) {
  std::string s;
  for (const auto& c : classes) {
    for (int x : c) {
      s += std::to_string(x);
      s += ',';
    }
    s += ';';
  }
  return s;
}

inline std::vector<std::vector<int>> apply_perm_to_partition(
    const Perm& sigma, const std::vector<std::vector<int>>& classes) {
  std::vector<std::vector<int>> out;
  out.reserve(classes.size());
  for (const auto& c : classes) {
    std::vector<int> img;
    img.reserve(c.size());
    for (int x : c) img.push_back(sigma[x]);
    std::sort(img.begin(), img.end());
    out.push_back(std::move(img));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return out;
}

// GF(2) linear maps act directly on element indices of C_2^n (the index is
// the coordinate vector)
inline Perm gl_index_perm(int n_elems, const std::array<std::uint8_t, 8>& col, int nbits) {
  Perm p(n_elems);
  for (int x = 0; x < n_elems; ++x) {
    int y = 0;
    for (int j = 0; j < nbits; ++j)
      if (x >> j & 1) y ^= col[j];
    p[x] = y;
  }
  return p;
}

/// Generators of the stabilizer of the vector `1` inside GL(n,2), acting on
/// element indices.
inline std::vector<Perm> anchor_stabilizer_gens(int nbits) {
  int n_elems = 1 << nbits;
  std::vector<Perm> out;
  std::array<std::uint8_t, 8> col{};
  auto ident = [&] {
    for (int j = 0; j < nbits; ++j) col[j] = static_cast<std::uint8_t>(1 << j);
  };
  if (nbits >= 3) {
    ident();  // cycle on bits 1..n-1
    for (int j = 1; j < nbits; ++j)
      col[j] = static_cast<std::uint8_t>(1 << (j == nbits - 1 ? 1 : j + 1));
    out.push_back(gl_index_perm(n_elems, col, nbits));
  }
  if (nbits >= 3) {
    ident();  // transvection inside the complement: b1 += b2
    col[1] = static_cast<std::uint8_t>((1 << 1) | (1 << 2));
    out.push_back(gl_index_perm(n_elems, col, nbits));
  }
  if (nbits >= 2) {
    ident();  // transvection into the anchor: b1 += b0
    col[1] = static_cast<std::uint8_t>((1 << 1) | 1);
    out.push_back(gl_index_perm(n_elems, col, nbits));
  }
  return out;
}

/// Some GL(n,2) element moving h to 1 (h nonzero), as an index permutation.
inline Perm move_to_anchor(int nbits, int h) {
  int n_elems = 1 << nbits;
  std::vector<int> basis{h};
  for (int j = 0; j < nbits && static_cast<int>(basis.size()) < nbits; ++j) {
    int cand = 1 << j;
    // Gaussian elimination to test independence
    std::vector<int> rows = basis;
    rows.push_back(cand);
    int rank = 0;
    for (int bit = nbits - 1; bit >= 0; --bit) {
      int pivot = -1;
      for (std::size_t r = rank; r < rows.size(); ++r)
        if (rows[r] >> bit & 1) {
          pivot = static_cast<int>(r);
          break;
        }
      if (pivot < 0) continue;
      std::swap(rows[rank], rows[pivot]);
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (static_cast<int>(r) != rank && (rows[r] >> bit & 1)) rows[r] ^= rows[rank];
      ++rank;
    }
    if (rank == static_cast<int>(rows.size())) basis.push_back(cand);
  }
  // map basis -> (1, then the other unit vectors)
  std::array<std::uint8_t, 8> col{};
  std::vector<int> targets{1};
  for (int j = 0; j < nbits; ++j)
    if ((1 << j) != 1 && static_cast<int>(targets.size()) < nbits) targets.push_back(1 << j);
  // columns of the inverse-basis map: we need M with M(basis[i]) = targets[i];
  // build M by solving on the standard basis
  for (int j = 0; j < nbits; ++j) {
    // express e_j in the chosen basis, tracking combinations
    int v = 1 << j;
    std::vector<int> work = basis;
    std::vector<int> tag(static_cast<std::size_t>(nbits), 0);
    for (std::size_t i = 0; i < work.size(); ++i) tag[i] = 1 << i;
    // gaussian elimination on work with tags
    std::vector<std::pair<int, int>> reduced;  // (vector, combination)
    for (std::size_t i = 0; i < work.size(); ++i) {
      int vec = work[i], comb = tag[i];
      for (auto& [rv, rc] : reduced) {
        int high = 31 - std::countl_zero(static_cast<unsigned>(rv));
        if (vec >> high & 1) {
          vec ^= rv;
          comb ^= rc;
        }
      }
      if (vec) reduced.emplace_back(vec, comb);
    }
    // sort reduced by high bit descending for back substitution of v
    std::sort(reduced.begin(), reduced.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    int comb = 0;
    for (auto& [rv, rc] : reduced) {
      int high = 31 - std::countl_zero(static_cast<unsigned>(rv));
      if (v >> high & 1) {
        v ^= rv;
        comb ^= rc;
      }
    }
    if (v != 0) throw std::logic_error("basis completion failed");
    int img = 0;
    for (int i = 0; i < nbits; ++i)
      if (comb >> i & 1) img ^= targets[i];
    col[j] = static_cast<std::uint8_t>(img);
  }
  Perm p = gl_index_perm(n_elems, col, nbits);
  if (p[h] != 1 || p[0] != 0 || !perm_valid(p)) throw std::logic_error("anchor move failed");
  return p;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

struct ClassificationReport {
  std::string mode;  // "cayley" or "combinatorial"
  std::vector<std::vector<int>> classes;        // entry indices per class
  std::vector<int> representatives;             // least entry index per class
  std::size_t cayley_class_count = 0;           // before any isomorphism merge
};

/// Groups catalog entries into Cayley classes (Aut(G)-orbits) and optionally
/// merges Cayley classes whose representatives are isomorphic.
inline ClassificationReport classify(const Catalog& cat, const std::string& mode) {
  if (mode != "cayley" && mode != "combinatorial")
    throw std::invalid_argument("mode must be 'cayley' or 'combinatorial'");
  const Group& g = cat.group;

  std::unordered_map<std::string, int> index;
  index.reserve(cat.entries.size() * 2);
  for (std::size_t i = 0; i < cat.entries.size(); ++i)
    index.emplace(detail::partition_key(cat.entries[i].classes), static_cast<int>(i));

  detail::UnionFind uf(static_cast<int>(cat.entries.size()));
  auto join_image = [&](int i, const Perm& sigma) {
    auto img = detail::apply_perm_to_partition(sigma, cat.entries[i].classes);
    auto it = index.find(detail::partition_key(img));
    if (it == index.end()) throw std::logic_error("catalog not closed under Aut(G)");
    uf.unite(i, it->second);
  };

  if (cat.scope == Catalog::kRaw) {
    std::vector<Perm> gens = group_automorphisms(g).gens;
    for (std::size_t i = 0; i < cat.entries.size(); ++i)
      for (const Perm& s : gens) join_image(static_cast<int>(i), s);
  } else {
    // slice: orbits of the anchor stabilizer, glued across anchor moves
    int nbits = static_cast<int>(g.orders.size());
    std::vector<Perm> stab = detail::anchor_stabilizer_gens(nbits);
    for (std::size_t i = 0; i < cat.entries.size(); ++i) {
      for (const Perm& s : stab) join_image(static_cast<int>(i), s);
      for (const auto& cls : cat.entries[i].classes) {
        if (cls.size() != 1 || cls[0] == 0 || cls[0] == cat.anchor) continue;
        join_image(static_cast<int>(i), detail::move_to_anchor(nbits, cls[0]));
      }
    }
  }

  std::map<int, std::vector<int>> components;
  for (std::size_t i = 0; i < cat.entries.size(); ++i)
    components[uf.find(static_cast<int>(i))].push_back(static_cast<int>(i));

  ClassificationReport rep;
  rep.mode = mode;
  std::vector<std::vector<int>> cayley_classes;
  for (auto& [root, members] : components) cayley_classes.push_back(members);
  std::sort(cayley_classes.begin(), cayley_classes.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  rep.cayley_class_count = cayley_classes.size();

  if (mode == "cayley") {
    rep.classes = std::move(cayley_classes);
  } else {
    // merge by combinatorial isomorphism of representatives
    std::vector<SRing> reps;
    std::vector<std::string> invariants;
    for (const auto& members : cayley_classes) {
      SRingPartition p;
      p.group = g;
      p.classes = cat.entries[members[0]].classes;
      reps.push_back(validate(p));
      // cheap invariant: rank + sorted (size, |rad|, |<X>|) triples
      const SRing& a = reps.back();
      std::vector<std::array<int, 3>> shape;
      for (int i = 0; i < a.rank; ++i) {
        SetInvariants si = set_invariants(a, a.classes[i]);
        shape.push_back({a.size_of(i), si.radical.order(), si.span.order()});
      }
      std::sort(shape.begin(), shape.end());
      std::string key = std::to_string(a.rank);
      for (auto& t : shape)
        key += "|" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
               std::to_string(t[2]);
      invariants.push_back(std::move(key));
    }
    detail::UnionFind merge(static_cast<int>(cayley_classes.size()));
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j) {
        if (merge.find(static_cast<int>(i)) == merge.find(static_cast<int>(j))) continue;
        if (invariants[i] != invariants[j]) continue;
        if (sring_isomorphism(reps[i], reps[j]).found)
          merge.unite(static_cast<int>(i), static_cast<int>(j));
      }
    std::map<int, std::vector<int>> merged;
    for (std::size_t i = 0; i < cayley_classes.size(); ++i)
      merged[merge.find(static_cast<int>(i))].push_back(static_cast<int>(i));
    for (auto& [root, groups] : merged) {
      std::vector<int> members;
      for (int gidx : groups)
        members.insert(members.end(), cayley_classes[gidx].begin(),
                       cayley_classes[gidx].end());
      std::sort(members.begin(), members.end());
      rep.classes.push_back(std::move(members));
    }
    std::sort(rep.classes.begin(), rep.classes.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
  }
  for (const auto& cls : rep.classes) rep.representatives.push_back(cls[0]);
  return rep;
}

// ---------------------------------------------------------------------------
// catalog files: header "srcat-1 {...}", one JSON record per line
// ---------------------------------------------------------------------------

inline void write_catalog(const Catalog& cat, std::ostream& os) {
  os << "srcat-1 {\"constraint\":\"" << cat.constraint << "\",\"scope\":\""
     << (cat.scope == Catalog::kRaw ? "raw" : "slice") << "\"";
  if (cat.scope == Catalog::kSlice) os << ",\"anchor\":" << cat.anchor;
  os << "}\n";
  std::string group_str = cat.group.spec_string();
  for (const CatalogEntry& e : cat.entries) {
    os << "{\"group\":" << group_str << ",\"classes\":[";
    for (std::size_t i = 0; i < e.classes.size(); ++i) {
      if (i) os << ",";
      os << "[";
      for (std::size_t j = 0; j < e.classes[i].size(); ++j) {
        if (j) os << ",";
        os << e.classes[i][j];
      }
      os << "]";
    }
    os << "],\"tags\":{";
    bool first = true;
    for (const auto& [k, v] : e.tags) {
      if (!first) os << ",";
      first = false;
      os << "\"" << k << "\":\"" << v << "\"";
    }
    os << "}}\n";
  }
}

inline void write_catalog_file(const Catalog& cat, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_catalog(cat, os);
}

inline Catalog read_catalog(std::istream& is, bool revalidate = true) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("srcat-1", 0) != 0)
    throw std::runtime_error("line 1: missing srcat-1 header");
  Catalog cat;
  cat.constraint = "all";
  if (line.size() > 8) {
    nlohmann::json meta = nlohmann::json::parse(line.substr(8));
    cat.constraint = meta.value("constraint", "all");
    if (meta.value("scope", "raw") == std::string("slice")) {
      cat.scope = Catalog::kSlice;
      cat.anchor = meta.value("anchor", 1);
    }
  }
  int line_no = 1;
  bool have_group = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!have_group) {
      cat.group = make_group(rec.at("group").get<std::vector<int>>());
      have_group = true;
    } else if (rec.at("group").get<std::vector<int>>() != cat.group.orders) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": group mismatch");
    }
    CatalogEntry e;
    e.classes = rec.at("classes").get<std::vector<std::vector<int>>>();
    if (rec.contains("tags"))
      for (auto& [k, v] : rec.at("tags").items()) e.tags[k] = v.get<std::string>();
    if (revalidate) {
      SRingPartition p;
      p.group = cat.group;
      p.classes = e.classes;
      try {
        validate(p);
      } catch (const ValidationError& err) {
        throw std::runtime_error("line " + std::to_string(line_no) +
                                 ": invalid S-ring: " + err.what());
      }
    }
    cat.entries.push_back(std::move(e));
  }
  if (!have_group) throw std::runtime_error("catalog has no records");
  return cat;
}

inline Catalog read_catalog_file(const std::string& path, bool revalidate = true) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_catalog(is, revalidate);
}

/// Entry as a validated ring.
inline SRing entry_ring(const Catalog& cat, int idx) {
  SRingPartition p;
  p.group = cat.group;
  p.classes = cat.entries[idx].classes;
  return validate(p);
}

}  // namespace srlab
