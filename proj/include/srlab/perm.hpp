#pragma once

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "srlab/biguint.hpp"

namespace srlab {

/// Permutation on [0, n) as an image array; x^p = p[x].
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool perm_is_identity(const Perm& p) {
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (p[i] != i) return false;
  return true;
}

/// a followed by b.
inline Perm perm_compose(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

inline Perm perm_inverse(const Perm& a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
  return r;
}

inline Perm perm_conjugate(const Perm& p, const Perm& by) {
  // by^{-1} p by
  return perm_compose(perm_inverse(by), perm_compose(p, by));
}

inline bool perm_valid(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

/// Permutation group with a deterministic stabilizer chain (Schreier-Sims,
/// no randomization). Base points follow base_hint, then least moved points.
class PermGroup {
 public:
  PermGroup() = default;

  explicit PermGroup(int degree, std::vector<Perm> generators = {},
                     std::vector<int> base_hint = {})
      : degree_(degree), base_hint_(std::move(base_hint)) {
    for (auto& g : generators) add_generator(std::move(g));
  }

  int degree() const { return degree_; }

  const std::vector<Perm>& generators() const { return input_gens_; }

  /// Adds a generator and re-establishes the chain.
  void add_generator(Perm g) {
    if (static_cast<int>(g.size()) != degree_)
      throw std::invalid_argument("generator degree mismatch");
    assert(perm_valid(g));
    if (perm_is_identity(g)) return;
    input_gens_.push_back(g);
    auto [res, level] = sift(g, 0);
    if (perm_is_identity(res)) return;
    place_residue(std::move(res), level);
    ensure(0);
  }

  BigUint order() const {
    BigUint o(1);
    for (const auto& lvl : levels_) o.mul_small(lvl.orbit.size());
    return o;
  }

  /// Order when it fits in 64 bits, otherwise throws.
  std::uint64_t order_u64() const {
    BigUint o = order();
    if (!o.fits_u64()) throw std::runtime_error("group order exceeds 64 bits");
    return o.as_u64();
  }

  bool contains(const Perm& p) const {
    if (static_cast<int>(p.size()) != degree_) return false;
    auto [res, level] = sift(p, 0);
    return perm_is_identity(res);
  }

  bool trivial() const { return levels_.empty(); }

  int base_length() const { return static_cast<int>(levels_.size()); }
  int base_point(int l) const { return levels_[l].base; }

  /// Orbit of the level-l base point under the l-th stabilizer.
  const std::vector<int>& orbit_at(int l) const { return levels_[l].orbit; }

  /// Strong generators fixing the first k base points.
  std::vector<Perm> stabilizer_generators(int k) const {
    std::vector<Perm> out;
    for (int l = k; l < static_cast<int>(levels_.size()); ++l)
      for (const auto& g : levels_[l].gens) out.push_back(g);
    return out;
  }

  /// Pointwise stabilizer of a single point, as a generator list. The chain
  /// must have been built with base_hint starting at that point.
  std::vector<Perm> point_stabilizer_generators(int point) const {
    if (levels_.empty()) return {};
    if (levels_[0].base != point)
      throw std::logic_error("chain base does not start at requested point");
    return stabilizer_generators(1);
  }

  /// Full element listing; throws if the order exceeds the cap.
  std::vector<Perm> elements(std::size_t cap = 1u << 20) const {
    BigUint o = order();
    if (!o.fits_u64() || o.as_u64() > cap)
      throw std::runtime_error("group too large to list");
    std::vector<Perm> out;
    out.reserve(static_cast<std::size_t>(o.as_u64()));
    Perm id = perm_identity(degree_);
    list_rec(0, id, out);
    return out;
  }

  /// Coset representative moving base point of level l to p (empty if p is
  /// outside the orbit).
  const Perm* transversal(int l, int p) const {
    int idx = levels_[l].where[p];
    if (idx < 0) return nullptr;
    return &levels_[l].reps[idx];
  }

  /// Streams every element without materializing the list.
  template <typename F>
  void for_each_element(F f) const {
    Perm id = perm_identity(degree_);
    stream_rec(0, id, f);
  }

 private:
  struct Level {
    int base = -1;
    std::vector<Perm> gens;       // residues assigned to this level
    std::vector<int> orbit;       // discovery order, orbit[0] == base
    std::vector<Perm> reps;       // reps[i] maps base -> orbit[i]
    std::vector<int> where;       // point -> index into orbit, or -1
  };

  int degree_ = 0;
  std::vector<Perm> input_gens_;
  std::vector<int> base_hint_;
  std::vector<Level> levels_;

  std::pair<Perm, int> sift(Perm g, int from) const {
    for (int l = from; l < static_cast<int>(levels_.size()); ++l) {
      if (perm_is_identity(g)) return {std::move(g), l};
      int p = g[levels_[l].base];
      const Perm* rep = transversal(l, p);
      if (!rep) return {std::move(g), l};
      g = perm_compose(g, perm_inverse(*rep));
    }
    return {std::move(g), static_cast<int>(levels_.size())};
  }

  void place_residue(Perm res, int level) {
    while (static_cast<int>(levels_.size()) <= level) append_level_for(res);
    levels_[level].gens.push_back(std::move(res));
  }

  void append_level_for(const Perm& moving) {
    Level lvl;
    int hint_idx = static_cast<int>(levels_.size());
    if (hint_idx < static_cast<int>(base_hint_.size())) {
      lvl.base = base_hint_[hint_idx];
    } else {
      lvl.base = -1;
      for (int i = 0; i < degree_; ++i)
        if (moving[i] != i) {
          lvl.base = i;
          break;
        }
      if (lvl.base < 0) throw std::logic_error("identity residue reached chain");
    }
    levels_.push_back(std::move(lvl));
  }

  std::vector<Perm> gens_at(int l) const {
    std::vector<Perm> out;
    for (int j = l; j < static_cast<int>(levels_.size()); ++j)
      for (const auto& g : levels_[j].gens) out.push_back(g);
    return out;
  }

  void rebuild_orbit(int l) {
    Level& lvl = levels_[l];
    lvl.orbit.assign(1, lvl.base);
    lvl.reps.assign(1, perm_identity(degree_));
    lvl.where.assign(degree_, -1);
    lvl.where[lvl.base] = 0;
    std::vector<Perm> gens = gens_at(l);
    for (std::size_t i = 0; i < lvl.orbit.size(); ++i) {
      for (const auto& g : gens) {
        int img = g[lvl.orbit[i]];
        if (lvl.where[img] < 0) {
          lvl.where[img] = static_cast<int>(lvl.orbit.size());
          lvl.orbit.push_back(img);
          lvl.reps.push_back(perm_compose(lvl.reps[i], g));
        }
      }
    }
  }

  // Establishes the Schreier condition for levels l.. by verifying that every
  // Schreier generator sifts to the identity, adding residues where it fails.
  void ensure(int l) {
    if (l >= static_cast<int>(levels_.size())) return;
    ensure(l + 1);
    for (;;) {
      rebuild_orbit(l);
      Level& lvl = levels_[l];
      std::vector<Perm> gens = gens_at(l);
      bool added = false;
      for (std::size_t i = 0; i < lvl.orbit.size() && !added; ++i) {
        for (const auto& x : gens) {
          int img = x[lvl.orbit[i]];
          Perm h = perm_compose(perm_compose(lvl.reps[i], x),
                                perm_inverse(lvl.reps[lvl.where[img]]));
          if (perm_is_identity(h)) continue;
          auto [res, dl] = sift(std::move(h), l + 1);
          if (!perm_is_identity(res)) {
            place_residue(std::move(res), std::max(dl, l + 1));
            ensure(l + 1);
            added = true;
            break;
          }
        }
      }
      if (!added) return;
    }
  }

  void list_rec(int l, const Perm& prefix, std::vector<Perm>& out) const {
    if (l == static_cast<int>(levels_.size())) {
      out.push_back(prefix);
      return;
    }
    for (const auto& rep : levels_[l].reps)
      list_rec(l + 1, perm_compose(rep, prefix), out);
  }

  template <typename F>
  void stream_rec(int l, const Perm& prefix, F& f) const {
    if (l == static_cast<int>(levels_.size())) {
      f(prefix);
      return;
    }
    for (const auto& rep : levels_[l].reps)
      stream_rec(l + 1, perm_compose(rep, prefix), f);
  }
};

/// Orbits of a generator set on [0, n), as a partition in least-element order.
inline std::vector<std::vector<int>> orbits_of(int n, const std::vector<Perm>& gens) {
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(out.size());
    std::vector<int> orb{s};
    comp[s] = id;
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const auto& g : gens) {
        int img = g[orb[i]];
        if (comp[img] < 0) {
          comp[img] = id;
          orb.push_back(img);
        }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

/// Generators of the kernel of the action of k on a block partition: the
/// action is extended to block points placed after the original domain, and
/// the chain fixes all block points first.
inline std::vector<Perm> kernel_of_block_action(
    const PermGroup& k, const std::vector<std::vector<int>>& blocks) {
  int n = k.degree();
  int nb = static_cast<int>(blocks.size());
  std::vector<int> block_of(n, -1);
  for (int b = 0; b < nb; ++b)
    for (int x : blocks[b]) block_of[x] = b;
  for (int x = 0; x < n; ++x)
    if (block_of[x] < 0) throw std::invalid_argument("blocks do not cover the domain");

  std::vector<int> hint(nb);
  std::iota(hint.begin(), hint.end(), n);
  PermGroup ext(n + nb, {}, hint);
  for (const Perm& g : k.generators()) {
    Perm e(n + nb);
    for (int x = 0; x < n; ++x) e[x] = g[x];
    for (int b = 0; b < nb; ++b) {
      int img = block_of[g[blocks[b][0]]];
      for (int x : blocks[b])
        if (block_of[g[x]] != img)
          throw std::invalid_argument("generator does not permute the blocks");
      e[n + b] = n + img;
    }
    ext.add_generator(std::move(e));
  }

  // levels whose base is a block point come first by construction
  int drop = 0;
  while (drop < ext.base_length() && ext.base_point(drop) >= n) ++drop;
  for (int l = drop; l < ext.base_length(); ++l)
    assert(ext.base_point(l) < n);
  std::vector<Perm> out;
  for (Perm g : ext.stabilizer_generators(drop)) {
    g.resize(n);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace srlab
