#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "srlab/colorgraph.hpp"
#include "srlab/perm.hpp"
#include "srlab/sring.hpp"

namespace srlab {

inline Perm translation_by(const Group& g, int h) {
  Perm p(g.size);
  for (int x = 0; x < g.size; ++x) p[x] = g.mul(x, h);
  return p;
}

inline std::vector<Perm> translation_generators(const Group& g) {
  std::vector<Perm> gens;
  std::vector<int> e(g.orders.size(), 0);
  for (std::size_t i = 0; i < g.orders.size(); ++i) {
    e[i] = 1;
    gens.push_back(translation_by(g, g.encode(e)));
    e[i] = 0;
  }
  return gens;
}

/// G_r, the regular group of right translations.
inline PermGroup right_translations(const Group& g) {
  PermGroup k(g.size, translation_generators(g), {0});
  assert(k.order() == BigUint(static_cast<std::uint64_t>(g.size)));
  return k;
}

inline bool contains_translations(const PermGroup& k, const Group& g) {
  for (const Perm& t : translation_generators(g))
    if (!k.contains(t)) return false;
  return true;
}

/// Orbit S-ring V(K,G): classes are the orbits of the point stabilizer K_e.
inline SRing orbit_sring(const PermGroup& k, const Group& g) {
  if (k.degree() != g.size) throw std::invalid_argument("degree mismatch");
  if (!contains_translations(k, g))
    throw std::invalid_argument("group does not contain the right translations");
  PermGroup anchored(g.size, k.generators(), {0});
  std::vector<Perm> stab = anchored.point_stabilizer_generators(0);
  SRingPartition p;
  p.group = g;
  p.classes = orbits_of(g.size, stab);
  return validate(p);
}

/// Automorphism group of the colored graph of a, seeded with translations.
inline PermGroup sring_automorphisms(const SRing& a) {
  return automorphisms(color_graph(a), translation_generators(a.group));
}

/// Group automorphisms for the supported shapes: C_2^n, C_2^n x C_p (p an odd
/// prime), C_p, and the trivial group.
struct GroupAutSet {
  Group group;
  std::vector<Perm> gens;
  BigUint order;

  PermGroup perm_group() const { return PermGroup(group.size, gens); }
};

namespace detail {

struct AutShape {
  int two_rank = 0;
  int odd_prime = 0;      // 0 when absent
  int single_cyclic = 0;  // m when the group is one cyclic factor C_m
  std::vector<int> basis_points;  // the C_2 factor generators, then the C_p one
};

inline AutShape aut_shape(const Group& g) {
  AutShape s;
  if (g.orders.size() == 1) {
    s.single_cyclic = g.orders[0];
    s.basis_points.push_back(1);
    return s;
  }
  int odd_count = 0;
  for (std::size_t i = 0; i < g.orders.size(); ++i) {
    if (g.orders[i] == 2) {
      ++s.two_rank;
    } else {
      int p = g.orders[i];
      for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("unsupported torsion in automorphism machinery");
      s.odd_prime = p;
      if (++odd_count > 1) throw std::invalid_argument("unsupported torsion in automorphism machinery");
    }
  }
  std::vector<int> e(g.orders.size(), 0);
  for (std::size_t i = 0; i < g.orders.size(); ++i) {
    if (g.orders[i] != 2) continue;
    e[i] = 1;
    s.basis_points.push_back(g.encode(e));
    e[i] = 0;
  }
  for (std::size_t i = 0; i < g.orders.size(); ++i) {
    if (g.orders[i] == 2) continue;
    e[i] = 1;
    s.basis_points.push_back(g.encode(e));
    e[i] = 0;
  }
  return s;
}

inline int primitive_root(int p) {
  for (int r = 2; r < p; ++r) {
    int x = r % p, n = 1;
    while (x != 1) {
      x = x * r % p;
      ++n;
    }
    if (n == p - 1) return r;
  }
  return 1;
}

}  // namespace detail

inline GroupAutSet group_automorphisms(const Group& g) {
  detail::AutShape shape = detail::aut_shape(g);
  GroupAutSet out;
  out.group = g;
  out.order = BigUint(1);
  if (shape.single_cyclic) {
    // one cyclic factor: automorphisms are the units acting by power maps
    int m = shape.single_cyclic;
    std::uint64_t phi = 0;
    for (int u = 1; u < m; ++u) {
      if (std::gcd(u, m) != 1) continue;
      ++phi;
      if (u == 1) continue;
      Perm p(g.size);
      for (int x = 0; x < m; ++x) p[x] = static_cast<int>((static_cast<long long>(x) * u) % m);
      out.gens.push_back(std::move(p));
    }
    out.order = BigUint(phi);
    return out;
  }

  std::vector<std::size_t> two_idx, odd_idx;
  for (std::size_t i = 0; i < g.orders.size(); ++i)
    (g.orders[i] == 2 ? two_idx : odd_idx).push_back(i);

  int n = shape.two_rank;
  if (n >= 2) {
    // coordinate cycle and one transvection generate GL(n,2)
    auto apply = [&](auto f) {
      Perm p(g.size);
      for (int x = 0; x < g.size; ++x) {
        std::vector<int> e = g.decode(x);
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = e[two_idx[i]];
        std::vector<int> w = f(v);
        for (int i = 0; i < n; ++i) e[two_idx[i]] = w[i];
        p[x] = g.encode(e);
      }
      return p;
    };
    out.gens.push_back(apply([&](std::vector<int> v) {
      std::rotate(v.rbegin(), v.rbegin() + 1, v.rend());
      return v;
    }));
    out.gens.push_back(apply([&](std::vector<int> v) {
      v[1] ^= v[0];  // e1 -> e1+e2
      return v;
    }));
    for (int i = 0; i < n; ++i)
      out.order.mul_small((1ull << n) - (1ull << i));
  }
  if (shape.odd_prime > 1) {
    int p = shape.odd_prime;
    int r = detail::primitive_root(p);
    Perm perm(g.size);
    std::size_t pi = odd_idx[0];
    for (int x = 0; x < g.size; ++x) {
      std::vector<int> e = g.decode(x);
      e[pi] = e[pi] * r % p;
      perm[x] = g.encode(e);
    }
    out.gens.push_back(std::move(perm));
    out.order.mul_small(p - 1);
  }
  return out;
}

namespace detail {

/// Completes a partial group automorphism given images for a prefix of the
/// generator points, requiring every element to stay inside its basic set.
/// Returns one completion or nullopt.
struct AutGSearch {
  const SRing& a;
  const Group& g;
  const std::vector<int>& points;  // generator points
  std::vector<int> span;            // elements with assigned images, in bfs order
  std::vector<int> image;           // element -> image, -1 unknown
  std::vector<char> hit;            // image already used

  explicit AutGSearch(const SRing& a_, const std::vector<int>& pts)
      : a(a_), g(a_.group), points(pts) {
    image.assign(g.size, -1);
    hit.assign(g.size, 0);
    image[0] = 0;
    hit[0] = 1;
    span.push_back(0);
  }

  // extend the assignment by point -> w; grows span by span * <point>
  bool assign(int point, int w, std::vector<int>& added) {
    int ord = g.order_of(point);
    if (g.order_of(w) != ord) return false;
    std::size_t base = span.size();
    int xp = point, xw = w;
    for (int step = 1; step < ord; ++step) {
      for (std::size_t i = 0; i < base; ++i) {
        int src = g.mul(span[i], xp);
        int dst = g.mul(image[span[i]], xw);
        if (image[src] != -1 || hit[dst]) return false;  // not injective/fresh
        if (a.class_of[src] != a.class_of[dst]) return false;
        image[src] = dst;
        hit[dst] = 1;
        span.push_back(src);
        added.push_back(src);
      }
      xp = g.mul(xp, point);
      xw = g.mul(xw, w);
    }
    return true;
  }

  void undo(const std::vector<int>& added) {
    for (auto it = added.rbegin(); it != added.rend(); ++it) {
      hit[image[*it]] = 0;
      image[*it] = -1;
      span.pop_back();
    }
  }

  std::optional<Perm> complete(std::size_t level) {
    if (level == points.size()) {
      Perm p(image.begin(), image.end());
      return p;
    }
    int b = points[level];
    if (image[b] != -1) return complete(level + 1);  // already in span
    for (int w : a.classes[a.class_of[b]]) {
      if (hit[w]) continue;
      std::vector<int> added;
      if (assign(b, w, added)) {
        if (auto res = complete(level + 1)) return res;
      }
      undo(added);
    }
    return std::nullopt;
  }
};

}  // namespace detail

/// aut_G(a): group automorphisms fixing every basic set setwise, with an
/// exact order via a stabilizer chain over the generator points. Never
/// materializes Aut(G).
inline PermGroup aut_G(const SRing& a) {
  const Group& g = a.group;
  detail::AutShape shape = detail::aut_shape(g);
  const std::vector<int>& pts = shape.basis_points;
  PermGroup group(g.size, {}, pts);
  if (g.size == 1) return group;

  std::vector<int> prefix_points(pts.begin(), pts.end());
  for (std::size_t level = 0; level < pts.size(); ++level) {
    int b = pts[level];
    for (int w : a.classes[a.class_of[b]]) {
      if (static_cast<int>(level) < group.base_length() &&
          group.base_point(static_cast<int>(level)) == b &&
          group.transversal(static_cast<int>(level), w))
        continue;  // already reachable
      detail::AutGSearch search(a, pts);
      bool feasible = true;
      std::vector<int> scratch;
      for (std::size_t j = 0; j < level && feasible; ++j) {
        scratch.clear();
        if (search.image[pts[j]] == -1)
          feasible = search.assign(pts[j], pts[j], scratch);
        else
          feasible = (search.image[pts[j]] == pts[j]);
      }
      if (!feasible) continue;
      scratch.clear();
      if (search.image[b] != -1
              ? search.image[b] != w
              : !search.assign(b, w, scratch))
        continue;
      if (auto perm = search.complete(level + 1)) group.add_generator(std::move(*perm));
    }
  }
  return group;
}

/// Orbit partition of a set of group automorphisms, as an S-ring.
inline SRing cyclotomic_ring(const Group& g, const std::vector<Perm>& auts) {
  for (const Perm& s : auts) {
    if (static_cast<int>(s.size()) != g.size || s[0] != 0)
      throw std::invalid_argument("not a group automorphism");
    for (int x = 0; x < g.size; ++x)
      for (int y = 0; y < g.size; ++y)
        if (s[g.mul(x, y)] != g.mul(s[x], s[y]))
          throw std::invalid_argument("not a group automorphism");
  }
  SRingPartition p;
  p.group = g;
  p.classes = orbits_of(g.size, auts);
  return validate(p);
}

inline bool is_normal(const SRing& a) {
  BigUint aut_order = sring_automorphisms(a).order();
  BigUint cmp(static_cast<std::uint64_t>(a.group.size));
  return aut_order == cmp * aut_G(a).order();
}

inline bool is_schurian(const SRing& a) {
  return orbit_sring(sring_automorphisms(a), a.group).same_partition(a);
}

/// K^(2) = Aut(V(K,G)); contains K, idempotent.
inline PermGroup two_closure(const PermGroup& k, const Group& g) {
  SRing v = orbit_sring(k, g);
  std::vector<Perm> seeds = k.generators();
  for (Perm& t : translation_generators(g)) seeds.push_back(std::move(t));
  return automorphisms(color_graph(v), seeds);
}

inline bool is_cyclotomic(const SRing& a) {
  PermGroup ag = aut_G(a);
  return orbits_of(a.group.size, ag.generators()) == a.classes;
}

namespace detail {

struct PermVecHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : p) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

}  // namespace detail

/// All subgroups of a small permutation group, as sorted element-index sets.
inline std::vector<std::vector<int>> small_group_subgroups(
    const std::vector<Perm>& elements, std::size_t cap = 200000) {
  int m = static_cast<int>(elements.size());
  std::unordered_map<Perm, int, detail::PermVecHash> index;
  for (int i = 0; i < m; ++i) index.emplace(elements[i], i);
  int id = index.at(perm_identity(static_cast<int>(elements[0].size())));

  auto close = [&](std::vector<int> seed) {
    std::vector<char> in(m, 0);
    std::vector<int> members;
    auto push = [&](int e) {
      if (!in[e]) {
        in[e] = 1;
        members.push_back(e);
      }
    };
    push(id);
    for (int s : seed) push(s);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        push(index.at(perm_compose(elements[members[i]], elements[members[j]])));
        push(index.at(perm_compose(elements[members[j]], elements[members[i]])));
      }
    std::sort(members.begin(), members.end());
    return members;
  };

  std::unordered_set<std::vector<int>, detail::VecHash> seen;
  std::vector<std::vector<int>> all;
  all.push_back(close({}));
  seen.insert(all[0]);
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::vector<int> base = all[i];
    for (int e = 0; e < m; ++e) {
      if (std::binary_search(base.begin(), base.end(), e)) continue;
      std::vector<int> ext = base;
      ext.push_back(e);
      std::vector<int> closed = close(std::move(ext));
      if (seen.insert(closed).second) {
        all.push_back(std::move(closed));
        if (all.size() > cap) throw std::runtime_error("subgroup enumeration bound exceeded");
      }
    }
  }
  return all;
}

/// Cayley minimality: no proper subgroup of aut_G(a) has the same orbits.
inline bool is_cayley_minimal(const SRing& a) {
  if (!is_cyclotomic(a)) throw std::invalid_argument("ring is not cyclotomic");
  PermGroup ag = aut_G(a);
  BigUint ord = ag.order();
  if (!ord.fits_u64() || ord.as_u64() > 10000)
    throw std::runtime_error("aut_G too large for the subgroup scan");
  std::vector<Perm> elements = ag.elements();
  if (elements.size() == 1) return true;
  auto full_orbits = orbits_of(a.group.size, ag.generators());
  for (const auto& sub : small_group_subgroups(elements)) {
    if (sub.size() == elements.size()) continue;
    std::vector<Perm> sub_perms;
    for (int e : sub) sub_perms.push_back(elements[e]);
    if (orbits_of(a.group.size, sub_perms) == full_orbits) return false;
  }
  return true;
}

}  // namespace srlab
