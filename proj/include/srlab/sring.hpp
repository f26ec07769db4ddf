#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "srlab/group.hpp"
#include "srlab/mask.hpp"

namespace srlab {

inline constexpr int kMaxSRingDegree = 128;

/// Raised when a partition fails one of the S-ring axioms. Carries enough of
/// a witness to reproduce the failure by hand.
class ValidationError : public std::runtime_error {
 public:
  enum Kind {
    NotAPartition,
    MissingIdentityClass,
    NotInverseClosed,
    NotConstantOnClass,
  };

  Kind kind;
  int class_i = -1, class_j = -1;  // the product being expanded
  int witness_z1 = -1, witness_z2 = -1;

  ValidationError(Kind k, std::string msg, int i = -1, int j = -1, int z1 = -1,
                  int z2 = -1)
      : std::runtime_error(std::move(msg)),
        kind(k),
        class_i(i),
        class_j(j),
        witness_z1(z1),
        witness_z2(z2) {}
};

/// A partition of a group, candidate basic sets. Classes are kept canonical:
/// each sorted, ordered by least element, so class 0 is always {e}.
struct SRingPartition {
  Group group;
  std::vector<std::vector<int>> classes;

  void canonicalize() {
    for (auto& c : classes) std::sort(c.begin(), c.end());
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
  }
};

/// Validated S-ring: canonical partition plus structure constants.
struct SRing {
  Group group;
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;
  std::vector<Mask128> masks;
  std::vector<int> inv_class;  // class id of X^{-1}
  int rank = 0;
  std::vector<std::uint32_t> sc;  // rank^3, c_{ij}^k at ((i*rank)+j)*rank+k

  std::uint32_t c(int i, int j, int k) const {
    return sc[(static_cast<std::size_t>(i) * rank + j) * rank + k];
  }
  int size_of(int i) const { return static_cast<int>(classes[i].size()); }

  bool is_group_ring() const { return rank == group.size; }

  bool same_partition(const SRing& other) const {
    return group.same_as(other.group) && classes == other.classes;
  }

  std::string partition_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (i) s += ",";
      s += "[";
      for (std::size_t j = 0; j < classes[i].size(); ++j) {
        if (j) s += ",";
        s += std::to_string(classes[i][j]);
      }
      s += "]";
    }
    return s + "]";
  }
};

inline SRing validate(const SRingPartition& input) {
  const Group& g = input.group;
  if (g.size > kMaxSRingDegree)
    throw std::invalid_argument("group too large for S-ring machinery");

  SRingPartition p = input;
  p.canonicalize();

  SRing a;
  a.group = g;
  a.classes = p.classes;
  a.rank = static_cast<int>(a.classes.size());
  a.class_of.assign(g.size, -1);
  for (int i = 0; i < a.rank; ++i) {
    if (a.classes[i].empty())
      throw ValidationError(ValidationError::NotAPartition, "empty class");
    for (int x : a.classes[i]) {
      if (x < 0 || x >= g.size || a.class_of[x] != -1)
        throw ValidationError(ValidationError::NotAPartition,
                              "classes do not partition the group");
      a.class_of[x] = i;
    }
  }
  for (int x = 0; x < g.size; ++x)
    if (a.class_of[x] == -1)
      throw ValidationError(ValidationError::NotAPartition,
                            "classes do not cover the group");
  if (a.classes[0].size() != 1 || a.classes[0][0] != 0)
    throw ValidationError(ValidationError::MissingIdentityClass,
                          "identity is not a singleton class");

  a.masks.resize(a.rank);
  for (int i = 0; i < a.rank; ++i)
    for (int x : a.classes[i]) a.masks[i].set(x);

  a.inv_class.assign(a.rank, -1);
  for (int i = 0; i < a.rank; ++i) {
    int j = a.class_of[g.inv(a.classes[i][0])];
    for (int x : a.classes[i])
      if (a.class_of[g.inv(x)] != j)
        throw ValidationError(ValidationError::NotInverseClosed,
                              "class " + std::to_string(i) + " is not inverse-closed",
                              i);
    if (a.classes[j].size() != a.classes[i].size())
      throw ValidationError(ValidationError::NotInverseClosed,
                            "inverse image of class " + std::to_string(i) +
                                " is not a class",
                            i);
    a.inv_class[i] = j;
  }

  a.sc.assign(static_cast<std::size_t>(a.rank) * a.rank * a.rank, 0);
  std::vector<std::uint32_t> counts(g.size);
  for (int i = 0; i < a.rank; ++i) {
    for (int j = 0; j < a.rank; ++j) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int x : a.classes[i])
        for (int y : a.classes[j]) counts[g.mul(x, y)]++;
      for (int k = 0; k < a.rank; ++k) {
        std::uint32_t c0 = counts[a.classes[k][0]];
        for (int z : a.classes[k])
          if (counts[z] != c0)
            throw ValidationError(
                ValidationError::NotConstantOnClass,
                "product of classes " + std::to_string(i) + "," + std::to_string(j) +
                    " is not constant on class " + std::to_string(k),
                i, j, a.classes[k][0], z);
        a.sc[(static_cast<std::size_t>(i) * a.rank + j) * a.rank + k] = c0;
      }
#ifndef NDEBUG
      std::size_t total = 0;
      for (int k = 0; k < a.rank; ++k)
        total += static_cast<std::size_t>(a.c(i, j, k)) * a.classes[k].size();
      assert(total == a.classes[i].size() * a.classes[j].size());
#endif
    }
  }
  return a;
}

/// Smallest S-ring partition refining the seed sets: split classes by inverse
/// pairing and by convolution counts against class pairs until stable, then
/// validate. Always terminates; refinement is monotone.
inline SRing schur_closure(const Group& g,
                           const std::vector<std::vector<int>>& seeds) {
  if (g.size > kMaxSRingDegree)
    throw std::invalid_argument("group too large for S-ring machinery");
  std::vector<int> part_of(g.size, -1);
  part_of[0] = 0;
  int next = 1;
  for (const auto& seed : seeds) {
    int id = -1;
    for (int x : seed) {
      if (x < 0 || x >= g.size) throw std::out_of_range("seed element out of range");
      if (x == 0) continue;  // identity is always isolated
      if (part_of[x] != -1) throw std::invalid_argument("seed sets are not disjoint");
      if (id == -1) id = next++;
      part_of[x] = id;
    }
  }
  {
    int rest = -1;
    for (int x = 1; x < g.size; ++x)
      if (part_of[x] == -1) {
        if (rest == -1) rest = next++;
        part_of[x] = rest;
      }
  }

  const bool self_inverse = (g.exponent <= 2);
  std::vector<std::uint32_t> counts(g.size);
  std::vector<std::pair<std::uint32_t, int>> tagged;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<int>> classes(next);
    for (int x = 0; x < g.size; ++x) classes[part_of[x]].push_back(x);

    auto split_by = [&](const std::vector<int>& cls,
                        const std::vector<std::uint32_t>& key) {
      tagged.clear();
      for (int z : cls) tagged.emplace_back(key[z], z);
      std::sort(tagged.begin(), tagged.end());
      bool uniform = tagged.front().first == tagged.back().first;
      if (uniform) return false;
      for (std::size_t t = 1; t < tagged.size(); ++t)
        if (tagged[t].first != tagged[t - 1].first) {
          int fresh = next++;
          for (std::size_t u = t; u < tagged.size(); ++u) {
            if (u > t && tagged[u].first != tagged[u - 1].first) fresh = next++;
            part_of[tagged[u].second] = fresh;
          }
          break;
        }
      return true;
    };

    if (!self_inverse) {
      for (const auto& cls : classes) {
        if (cls.size() <= 1) continue;
        std::fill(counts.begin(), counts.end(), 0);
        for (int x = 0; x < g.size; ++x)
          counts[x] = static_cast<std::uint32_t>(part_of[g.inv(x)]);
        if (split_by(cls, counts)) {
          changed = true;
          break;
        }
      }
      if (changed) continue;
    }

    for (int i = 0; i < next && !changed; ++i) {
      if (classes[i].empty()) continue;
      for (int j = 0; j < next && !changed; ++j) {
        if (classes[j].empty()) continue;
        std::fill(counts.begin(), counts.end(), 0);
        for (int x : classes[i])
          for (int y : classes[j]) counts[g.mul(x, y)]++;
        for (int k = 0; k < next; ++k) {
          if (classes[k].size() <= 1) continue;
          if (split_by(classes[k], counts)) {
            changed = true;
            break;
          }
        }
      }
    }
  }

  SRingPartition p;
  p.group = g;
  p.classes.resize(next);
  for (int x = 0; x < g.size; ++x) p.classes[part_of[x]].push_back(x);
  p.classes.erase(std::remove_if(p.classes.begin(), p.classes.end(),
                                 [](const auto& c) { return c.empty(); }),
                  p.classes.end());
  return validate(p);
}

/// True when the member set of h is a union of classes of a.
inline bool is_a_set(const SRing& a, const Mask128& set) {
  for (int i = 0; i < a.rank; ++i)
    if (a.masks[i].intersects(set) && !a.masks[i].subset_of(set)) return false;
  return true;
}

inline bool is_a_subgroup(const SRing& a, const Subgroup& h) {
  return is_a_set(a, h.mask);
}

/// All subgroups that are unions of basic sets, ordered by (size, members).
inline std::vector<Subgroup> a_subgroups(const SRing& a) {
  std::vector<Subgroup> out;
  for (const Subgroup& h : subgroups(a.group))
    if (is_a_subgroup(a, h)) out.push_back(h);
  return out;
}

struct SetInvariants {
  Subgroup span;     // <X>
  Subgroup radical;  // {g : gX = X}
};

inline SetInvariants set_invariants(const SRing& a, const std::vector<int>& xs) {
  if (xs.empty()) throw std::invalid_argument("set_invariants: empty set");
  const Group& g = a.group;
  Mask128 x_mask;
  for (int x : xs) x_mask.set(x);

  SetInvariants inv;
  inv.span = make_subgroup(g, subgroup_closure(g, xs));

  std::vector<int> rad;
  for (int z = 0; z < g.size; ++z) {
    Mask128 shifted;
    bool ok = true;
    for (int x : xs) {
      int y = g.mul(z, x);
      if (!x_mask.test(y)) {
        ok = false;
        break;
      }
      shifted.set(y);
    }
    if (ok && shifted == x_mask) rad.push_back(z);
  }
  inv.radical = make_subgroup(g, rad);

  if (is_a_set(a, x_mask)) {
    assert(is_a_subgroup(a, inv.span));
    assert(is_a_subgroup(a, inv.radical));
  }
  return inv;
}

/// rad(X) for a basic set, as a mask; cheap path used by product scans.
inline Mask128 class_radical(const SRing& a, int class_id) {
  const Group& g = a.group;
  Mask128 rad;
  const Mask128& x = a.masks[class_id];
  for (int z = 0; z < g.size; ++z) {
    Mask128 shifted;
    bool ok = true;
    x.for_each([&](int e) {
      if (ok) {
        int y = g.mul(z, e);
        if (!x.test(y)) ok = false;
        else shifted.set(y);
      }
    });
    if (ok && shifted == x) rad.set(z);
  }
  return rad;
}

/// Union of singleton basic sets; always an A-subgroup.
inline Subgroup thin_radical(const SRing& a) {
  std::vector<int> members;
  for (int i = 0; i < a.rank; ++i)
    if (a.classes[i].size() == 1) members.push_back(a.classes[i][0]);
  return make_subgroup(a.group, members);  // throws if not a subgroup
}

/// |X \cap Hx|, verified constant over x in X.
inline int intersection_number(const SRing& a, int class_id, const Subgroup& h) {
  if (class_id < 0 || class_id >= a.rank)
    throw std::invalid_argument("intersection_number: not a class");
  if (!is_a_subgroup(a, h))
    throw std::invalid_argument("intersection_number: not an A-subgroup");
  const Group& g = a.group;
  const auto& cls = a.classes[class_id];
  int lambda = -1;
  for (int x : cls) {
    int cnt = 0;
    for (int y : cls)
      if (h.contains(g.mul(y, g.inv(x)))) ++cnt;
    if (lambda == -1)
      lambda = cnt;
    else if (cnt != lambda)
      throw std::logic_error("intersection number not constant on a class");
  }
  return lambda;
}

/// Quotient S-ring on an A-section: classes are the pi-images of the classes
/// inside U. Valid by theory; validated anyway.
inline SRing quotient_ring(const SRing& a, const Section& s) {
  if (!is_a_subgroup(a, s.upper) || !is_a_subgroup(a, s.lower))
    throw std::invalid_argument("section endpoints are not A-subgroups");
  std::vector<std::vector<int>> images;
  std::vector<char> seen(a.rank, 0);
  for (int i = 0; i < a.rank; ++i) {
    if (!a.masks[i].subset_of(s.upper.mask)) continue;
    std::vector<int> img;
    for (int x : a.classes[i]) img.push_back(s.pi(x));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    images.push_back(std::move(img));
  }
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  SRingPartition p;
  p.group = s.quotient;
  p.classes = std::move(images);
  return validate(p);
}

/// Restriction of a to an A-subgroup, realized over U as a group in its own
/// right. Returns the ring together with the section used for the carrier.
struct RestrictedRing {
  SRing ring;       // over section.quotient (= U with its own indexing)
  Section section;  // U/{e} inside the parent
};

inline RestrictedRing restrict_ring(const SRing& a, const Subgroup& u) {
  if (!is_a_subgroup(a, u))
    throw std::invalid_argument("restriction target is not an A-subgroup");
  RestrictedRing r{SRing{}, subgroup_as_group(u)};
  r.ring = quotient_ring(a, r.section);
  return r;
}

struct PSringCheck {
  bool is_p = false;
  std::vector<Subgroup> chain;  // {e} = G_0 < ... < G_s = G, index p steps
};

namespace detail {

inline bool p_chain_dfs(const std::vector<Subgroup>& asubs, int p,
                        const Subgroup& current, int target,
                        std::vector<Subgroup>& chain) {
  chain.push_back(current);
  if (current.order() == target) return true;
  for (const Subgroup& h : asubs) {
    if (h.order() != current.order() * p) continue;
    bool contains_cur = true;
    for (int x : current.members)
      if (!h.contains(x)) {
        contains_cur = false;
        break;
      }
    if (!contains_cur) continue;
    if (p_chain_dfs(asubs, p, h, target, chain)) return true;
  }
  chain.pop_back();
  return false;
}

}  // namespace detail

/// Every class size a power of p? When additionally |G| = p^s, extracts a
/// full chain of A-subgroups with index-p steps.
inline PSringCheck p_sring_check(const SRing& a, int p) {
  PSringCheck res;
  for (int i = 0; i < a.rank; ++i) {
    int sz = a.size_of(i);
    while (sz % p == 0) sz /= p;
    if (sz != 1) return res;
  }
  res.is_p = true;

  int n = a.group.size;
  bool p_power_group = true;
  {
    int sz = n;
    while (sz % p == 0) sz /= p;
    p_power_group = (sz == 1);
  }
  if (p_power_group && n > 1) {
    assert(thin_radical(a).order() > 1);
    auto asubs = a_subgroups(a);
    Subgroup trivial = make_subgroup(a.group, {0});
    if (!detail::p_chain_dfs(asubs, p, trivial, n, res.chain))
      throw std::logic_error("no index-p chain of A-subgroups found");
  }
  return res;
}

/// Canonical one-line encoding used for hashing and catalog files.
inline std::vector<std::vector<int>> partition_from_masks(
    const std::vector<Mask128>& masks) {
  std::vector<std::vector<int>> classes;
  classes.reserve(masks.size());
  for (const auto& m : masks) {
    std::vector<int> c;
    m.for_each([&](int x) { c.push_back(x); });
    classes.push_back(std::move(c));
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return classes;
}

}  // namespace srlab
