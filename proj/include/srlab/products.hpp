#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

#include "srlab/sring.hpp"

namespace srlab {

/// Nontrivial S-wreath decomposition: {e} < L <= U < G, both A-subgroups,
/// and rad(X) contains L for every basic set outside U.
struct GwrDecomposition {
  Subgroup upper;
  Subgroup lower;
};

inline std::vector<GwrDecomposition> find_gwr(const SRing& a) {
  const Group& g = a.group;
  std::vector<GwrDecomposition> out;
  if (g.size == 1) return out;
  std::vector<Subgroup> asubs = a_subgroups(a);

  std::vector<Mask128> rads(a.rank);
  for (int i = 0; i < a.rank; ++i) rads[i] = class_radical(a, i);

  for (const Subgroup& u : asubs) {
    if (u.order() == g.size) continue;
    // intersection of the radicals of all classes outside U
    Mask128 common;
    bool first = true;
    for (int i = 0; i < a.rank; ++i) {
      if (a.masks[i].subset_of(u.mask)) continue;
      common = first ? rads[i] : (common & rads[i]);
      first = false;
    }
    for (const Subgroup& l : asubs) {
      if (l.order() == 1 || l.order() > u.order()) continue;
      if (!l.mask.subset_of(u.mask)) continue;
      if (!l.mask.subset_of(common)) continue;
      out.push_back({u, l});
    }
  }
  return out;
}

inline bool is_decomposable(const SRing& a) { return !find_gwr(a).empty(); }

/// S-wreath product of a ring on U (in U's own indexing) and a ring on G/L
/// (in the quotient indexing of full_section(g, l)). The two must agree on
/// the common section S = U/L.
inline SRing build_gwr(const Group& g, const Subgroup& u, const Subgroup& l,
                       const SRing& ring_on_u, const SRing& ring_on_quotient) {
  for (int x : l.members)
    if (!u.contains(x)) throw std::invalid_argument("lower group not inside upper");
  Section sec_u = subgroup_as_group(u);
  Section sec_l = full_section(g, l);
  if (!ring_on_u.group.same_as(sec_u.quotient) ||
      !ring_on_quotient.group.same_as(sec_l.quotient))
    throw std::invalid_argument("component rings live on the wrong groups");

  // image of U in G/L
  Mask128 s_bar;
  for (int x : u.members) s_bar.set(sec_l.pi(x));

  // compatibility: the U-ring and the quotient ring induce the same
  // partition of S = U/L
  std::vector<std::vector<int>> u_side, q_side;
  for (const auto& cls : ring_on_u.classes) {
    std::vector<int> img;
    for (int xu : cls) img.push_back(sec_l.pi(sec_u.rep[xu]));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    u_side.push_back(std::move(img));
  }
  std::sort(u_side.begin(), u_side.end());
  u_side.erase(std::unique(u_side.begin(), u_side.end()), u_side.end());
  for (const auto& cls : ring_on_quotient.classes) {
    bool inside = true;
    for (int y : cls)
      if (!s_bar.test(y)) inside = false;
    if (inside) q_side.push_back(cls);
    else
      for (int y : cls)
        if (s_bar.test(y))
          throw std::invalid_argument("quotient ring does not respect the section");
  }
  std::sort(q_side.begin(), q_side.end());
  if (u_side != q_side)
    throw std::invalid_argument("component rings disagree on the common section");

  SRingPartition p;
  p.group = g;
  for (const auto& cls : ring_on_u.classes) {
    std::vector<int> lifted;
    for (int xu : cls) lifted.push_back(sec_u.rep[xu]);
    p.classes.push_back(std::move(lifted));
  }
  // classes outside U are full preimages of the quotient classes outside S
  for (const auto& cls : ring_on_quotient.classes) {
    if (s_bar.test(cls[0])) continue;
    std::vector<int> preimage;
    for (int x = 0; x < g.size; ++x)
      if (std::binary_search(cls.begin(), cls.end(), sec_l.pi(x)))
        preimage.push_back(x);
    p.classes.push_back(std::move(preimage));
  }
  return validate(p);
}

/// Tensor product on the direct product group, classes X1 x X2.
inline SRing tensor_product(const SRing& a1, const SRing& a2) {
  std::vector<int> orders = a1.group.orders;
  orders.insert(orders.end(), a2.group.orders.begin(), a2.group.orders.end());
  Group g = make_group(orders);
  int n2 = a2.group.size;
  SRingPartition p;
  p.group = g;
  for (const auto& c1 : a1.classes)
    for (const auto& c2 : a2.classes) {
      std::vector<int> cls;
      for (int x : c1)
        for (int y : c2) cls.push_back(x * n2 + y);
      p.classes.push_back(std::move(cls));
    }
  return validate(p);
}

struct StarDecomposition {
  Subgroup v;
  Subgroup w;
  bool tensor = false;     // V and W intersect trivially
  bool nontrivial = false; // V differs from {e} and G
};

/// Checks the star product conditions for A-subgroups V, W with VW = G:
/// V cap W normal in W (automatic here), classes inside W \ V are unions of
/// (V cap W)-cosets, and classes outside V u W factor as RS.
inline std::optional<StarDecomposition> star_check(const SRing& a,
                                                   const Subgroup& v,
                                                   const Subgroup& w) {
  const Group& g = a.group;
  if (!is_a_subgroup(a, v) || !is_a_subgroup(a, w)) return std::nullopt;

  std::vector<int> vw = subgroup_closure(g, [&] {
    std::vector<int> gens = v.members;
    gens.insert(gens.end(), w.members.begin(), w.members.end());
    return gens;
  }());
  if (static_cast<int>(vw.size()) != g.size) return std::nullopt;

  Mask128 d_mask = v.mask & w.mask;
  std::vector<int> d_members;
  d_mask.for_each([&](int x) { d_members.push_back(x); });

  Mask128 union_mask = v.mask | w.mask;
  for (int i = 0; i < a.rank; ++i) {
    const Mask128& t = a.masks[i];
    if (t.subset_of(w.mask) && !t.intersects(v.mask)) {
      // union of D-cosets
      bool ok = true;
      t.for_each([&](int x) {
        for (int d : d_members)
          if (!t.test(g.mul(d, x))) ok = false;
      });
      if (!ok) return std::nullopt;
    } else if (!t.intersects(union_mask)) {
      bool factored = false;
      for (int ri = 0; ri < a.rank && !factored; ++ri) {
        if (!a.masks[ri].subset_of(v.mask)) continue;
        for (int si = 0; si < a.rank && !factored; ++si) {
          if (!a.masks[si].subset_of(w.mask)) continue;
          Mask128 prod;
          for (int r : a.classes[ri])
            for (int s : a.classes[si]) prod.set(g.mul(r, s));
          if (prod == t) factored = true;
        }
      }
      if (!factored) return std::nullopt;
    }
  }

  StarDecomposition out;
  out.v = v;
  out.w = w;
  out.tensor = (d_mask.count() == 1);
  out.nontrivial = (v.order() > 1 && v.order() < g.size);
  return out;
}

/// All nontrivial star decompositions, scanning A-subgroup pairs.
inline std::vector<StarDecomposition> find_star(const SRing& a) {
  std::vector<StarDecomposition> out;
  auto asubs = a_subgroups(a);
  for (const Subgroup& v : asubs) {
    if (v.order() == 1 || v.order() == a.group.size) continue;
    for (const Subgroup& w : asubs) {
      if (w.order() == 1) continue;
      if (auto s = star_check(a, v, w))
        if (s->nontrivial) out.push_back(*s);
    }
  }
  return out;
}

/// Frame for S-rings over H x P with H a 2-group and P = C_p, p odd: the
/// maximal A-subgroup inside H, the least A-subgroup containing P, and which
/// structure statement applies when H1 < H.
struct NonpowerfulFrame {
  Subgroup h;   // the full 2-part
  Subgroup p;   // the C_p factor
  Subgroup h1;  // maximal A-subgroup inside H
  Subgroup p1;  // least A-subgroup containing P
  enum Case { kFullH, kWreathRankTwo, kWreathOverP1 } shape = kFullH;
  bool hall_star_hypothesis = false;  // H1 differs from the p'-part of H1P1
  bool zcp_star_hypothesis = false;   // ring on H1P1/H1 is the full group ring of C_p
};

inline NonpowerfulFrame nonpowerful_frame(const SRing& a) {
  const Group& g = a.group;
  int p = 0;
  for (int o : g.orders)
    if (o != 2) {
      if (p || o % 2 == 0) throw std::invalid_argument("expected a C_2^n x C_p group");
      p = o;
    }
  if (p == 0) throw std::invalid_argument("expected a C_2^n x C_p group");

  NonpowerfulFrame f;
  std::vector<int> h_members, p_members;
  for (int x = 0; x < g.size; ++x) {
    int o = g.order_of(x);
    if (o <= 2) h_members.push_back(x);
    if (x == 0 || o == p) p_members.push_back(x);
  }
  f.h = make_subgroup(g, h_members);
  f.p = make_subgroup(g, p_members);

  auto asubs = a_subgroups(a);
  f.h1 = asubs.front();  // trivial group
  for (const Subgroup& s : asubs)
    if (s.mask.subset_of(f.h.mask) && s.order() >= f.h1.order()) f.h1 = s;
  for (const Subgroup& s : asubs)
    if (s.mask.subset_of(f.h.mask))
      assert(s.mask.subset_of(f.h1.mask));  // the join stays in the list

  bool found_p1 = false;
  for (const Subgroup& s : asubs)
    if (f.p.mask.subset_of(s.mask)) {
      if (!found_p1 || s.order() < f.p1.order()) f.p1 = s;
      found_p1 = true;
    }
  assert(found_p1);  // G itself contains P

  std::vector<int> h1p1 =
      subgroup_closure(g, [&] {
        std::vector<int> gens = f.h1.members;
        gens.insert(gens.end(), f.p1.members.begin(), f.p1.members.end());
        return gens;
      }());
  Subgroup h1p1_sub = make_subgroup(g, h1p1);

  // star-product hypotheses on H1 P1
  Mask128 hall = h1p1_sub.mask & f.h.mask;
  f.hall_star_hypothesis = (hall != f.h1.mask);
  if (is_a_subgroup(a, h1p1_sub)) {
    Section s = make_section(h1p1_sub, f.h1);
    if (s.quotient.size == p) {
      SRing q = quotient_ring(a, s);
      f.zcp_star_hypothesis = (q.rank == q.group.size);
    }
  }

  if (f.h1.order() == f.h.order()) {
    f.shape = NonpowerfulFrame::kFullH;
    return f;
  }

  // H1 < H: one of the two wreath statements must hold
  std::vector<Mask128> rads(a.rank);
  for (int i = 0; i < a.rank; ++i) rads[i] = class_radical(a, i);

  bool rank2_wreath = true;
  int outside = 0;
  for (int i = 0; i < a.rank; ++i) {
    if (a.masks[i].subset_of(f.h1.mask)) continue;
    ++outside;
    if (!f.h1.mask.subset_of(rads[i])) rank2_wreath = false;
  }
  if (rank2_wreath && outside == 1) {
    f.shape = NonpowerfulFrame::kWreathRankTwo;
    return f;
  }

  bool over_p1 = (f.p1.order() < g.size);
  for (int i = 0; i < a.rank && over_p1; ++i) {
    if (a.masks[i].subset_of(h1p1_sub.mask)) continue;
    if (!f.p1.mask.subset_of(rads[i])) over_p1 = false;
  }
  if (!over_p1) throw std::logic_error("no wreath statement applies with H1 < H");
  f.shape = NonpowerfulFrame::kWreathOverP1;
  return f;
}

}  // namespace srlab
