#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "srlab/mask.hpp"

namespace srlab {

inline constexpr int kMaxGroupSize = 1 << 20;
inline constexpr int kTableLimit = 128;  // mul table cached below this size

/// Finite abelian group presented as a product of cyclic factors. Elements
/// are integers in [0, size) under mixed-radix encoding, identity = 0.
class Group {
 public:
  std::vector<int> orders;
  int size = 1;
  int exponent = 1;

  int mul(int a, int b) const {
    check_index(a);
    check_index(b);
    if (mul_table_) return (*mul_table_)[static_cast<std::size_t>(a) * size + b];
    return mul_slow(a, b);
  }

  int inv(int a) const {
    check_index(a);
    if (inv_table_) return (*inv_table_)[a];
    return inv_slow(a);
  }

  std::vector<int> decode(int idx) const {
    check_index(idx);
    std::vector<int> e(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
      e[i] = idx % orders[i];
      idx /= orders[i];
    }
    return e;
  }

  int encode(const std::vector<int>& e) const {
    if (e.size() != orders.size())
      throw std::invalid_argument("exponent vector has wrong length");
    int idx = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      int c = e[i] % orders[i];
      if (c < 0) c += orders[i];
      idx = idx * orders[i] + c;
    }
    return idx;
  }

  int order_of(int a) const {
    check_index(a);
    int x = a, n = 1;
    while (x != 0) {
      x = mul(x, a);
      ++n;
    }
    return n;
  }

  bool is_elementary_two() const {
    for (int o : orders)
      if (o != 2) return false;
    return true;
  }

  bool same_as(const Group& other) const { return orders == other.orders; }

  std::string spec_string() const {
    // e.g. [2,2,3]
    std::string s = "[";
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(orders[i]);
    }
    return s + "]";
  }

  friend Group make_group(const std::vector<int>& orders);

 private:
  std::shared_ptr<const std::vector<std::int16_t>> mul_table_;
  std::shared_ptr<const std::vector<std::int16_t>> inv_table_;

  void check_index(int a) const {
    if (a < 0 || a >= size) throw std::out_of_range("element index out of range");
  }

  int mul_slow(int a, int b) const {
    int idx = 0;
    int ra = a, rb = b;
    // walk factors most-significant first without materializing vectors
    std::vector<int> ea(orders.size()), eb(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
      ea[i] = ra % orders[i];
      ra /= orders[i];
      eb[i] = rb % orders[i];
      rb /= orders[i];
    }
    for (std::size_t i = 0; i < orders.size(); ++i)
      idx = idx * orders[i] + (ea[i] + eb[i]) % orders[i];
    return idx;
  }

  int inv_slow(int a) const {
    std::vector<int> e(orders.size());
    int r = a;
    for (std::size_t i = orders.size(); i-- > 0;) {
      e[i] = r % orders[i];
      r /= orders[i];
    }
    int idx = 0;
    for (std::size_t i = 0; i < orders.size(); ++i)
      idx = idx * orders[i] + (orders[i] - e[i]) % orders[i];
    return idx;
  }
};

inline Group make_group(const std::vector<int>& orders) {
  Group g;
  g.orders = orders;
  long long size = 1;
  long long exponent = 1;
  for (int o : orders) {
    if (o < 2) throw std::invalid_argument("cyclic factor order must be >= 2");
    size *= o;
    if (size > kMaxGroupSize) throw std::invalid_argument("group size exceeds 2^20");
    exponent = std::lcm(exponent, static_cast<long long>(o));
  }
  g.size = static_cast<int>(size);
  g.exponent = static_cast<int>(exponent);
  if (g.size <= kTableLimit) {
    auto mul = std::make_shared<std::vector<std::int16_t>>(
        static_cast<std::size_t>(g.size) * g.size);
    auto inv = std::make_shared<std::vector<std::int16_t>>(g.size);
    for (int a = 0; a < g.size; ++a) {
      for (int b = 0; b < g.size; ++b)
        (*mul)[static_cast<std::size_t>(a) * g.size + b] =
            static_cast<std::int16_t>(g.mul_slow(a, b));
      (*inv)[a] = static_cast<std::int16_t>(g.inv_slow(a));
    }
    g.mul_table_ = mul;
    g.inv_table_ = inv;
  }
  return g;
}

/// Subgroup given by its sorted member list; always contains 0.
struct Subgroup {
  Group group;
  std::vector<int> members;
  Mask128 mask;  // valid when group.size <= 128

  int order() const { return static_cast<int>(members.size()); }
  bool contains(int x) const {
    return std::binary_search(members.begin(), members.end(), x);
  }
};

inline std::vector<int> subgroup_closure(const Group& g,
                                         std::vector<int> gens) {
  std::vector<char> in(g.size, 0);
  in[0] = 1;
  std::vector<int> members{0};
  std::vector<int> queue{0};
  for (int x : gens)
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
      queue.push_back(x);
    }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int x = queue[qi];
    std::size_t cur = members.size();
    for (std::size_t i = 0; i < cur; ++i) {
      int y = g.mul(x, members[i]);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
        queue.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

inline Subgroup make_subgroup(const Group& g, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty() || members[0] != 0)
    throw std::invalid_argument("subgroup must contain the identity");
  std::vector<char> in(g.size, 0);
  for (int x : members) {
    if (x < 0 || x >= g.size) throw std::out_of_range("subgroup member out of range");
    in[x] = 1;
  }
  for (int x : members) {
    if (!in[g.inv(x)]) throw std::invalid_argument("subgroup not inverse-closed");
    for (int y : members)
      if (!in[g.mul(x, y)]) throw std::invalid_argument("subgroup not closed");
  }
  if (g.size % static_cast<int>(members.size()) != 0)
    throw std::invalid_argument("subgroup order does not divide group order");
  Subgroup h;
  h.group = g;
  h.members = std::move(members);
  if (g.size <= 128)
    for (int x : h.members) h.mask.set(x);
  return h;
}

namespace detail {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

}  // namespace detail

/// All subgroups, ordered by (order, members lexicographically).
/// Cached per orders-vector; groups here are small and immutable.
inline const std::vector<Subgroup>& subgroups(const Group& g) {
  if (g.size > 4096) throw std::invalid_argument("subgroup enumeration bound exceeded");
  static std::mutex mu;
  static std::map<std::vector<int>, std::shared_ptr<const std::vector<Subgroup>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(g.orders);
    if (it != cache.end()) return *it->second;
  }

  std::unordered_set<std::vector<int>, detail::VecHash> seen;
  std::vector<std::vector<int>> all;
  std::vector<int> trivial{0};
  seen.insert(trivial);
  all.push_back(trivial);
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::vector<int> base = all[i];
    for (int x = 1; x < g.size; ++x) {
      if (std::binary_search(base.begin(), base.end(), x)) continue;
      std::vector<int> gens = base;
      gens.push_back(x);
      std::vector<int> ext = subgroup_closure(g, gens);
      if (seen.insert(ext).second) all.push_back(std::move(ext));
    }
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  auto result = std::make_shared<std::vector<Subgroup>>();
  result->reserve(all.size());
  for (auto& m : all) result->push_back(make_subgroup(g, std::move(m)));

  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(g.orders, result);
  return *it->second;
}

/// Section U/L with explicit coset table and the canonical epimorphism as an
/// index map. The quotient is presented as a Group in elementary-divisor form
/// together with an explicit isomorphism onto the coset space.
struct Section {
  Subgroup upper;
  Subgroup lower;
  std::vector<std::vector<int>> cosets;  // coset id -> sorted parent elements
  Group quotient;
  std::vector<int> to_quotient;  // parent element -> quotient index, -1 outside U
  std::vector<int> rep;          // quotient index -> least coset representative

  int pi(int x) const {
    int q = to_quotient[x];
    if (q < 0) throw std::invalid_argument("element outside the section's upper group");
    return q;
  }
};

namespace detail {

// Decomposes a small abelian group, given by a multiplication oracle on
// [0, q), into cyclic generators realizing it as a mixed-radix Group.
// Returns generator ids and their orders; backtracks if a greedy pick stalls.
template <typename Mul>
inline bool abelian_basis(int q, Mul mul, const std::vector<int>& ord,
                          std::vector<int>& gens, std::vector<int>& gen_orders,
                          std::vector<char>& span, int covered) {
  if (covered == q) return true;
  // candidates whose cyclic group meets the current span trivially
  std::vector<int> cands;
  int best_order = 0;
  for (int c = 1; c < q; ++c) {
    if (span[c]) continue;
    bool clean = true;
    int x = c;
    while (x != 0) {
      if (x != 0 && span[x]) { clean = false; break; }
      x = mul(x, c);
    }
    if (!clean) continue;
    if (ord[c] > best_order) best_order = ord[c];
    cands.push_back(c);
  }
  for (int c : cands) {
    if (ord[c] != best_order) continue;
    std::vector<char> span2 = span;
    // span2 = span * <c>
    std::vector<int> old;
    for (int s = 0; s < q; ++s)
      if (span[s]) old.push_back(s);
    int x = c;
    while (x != 0) {
      for (int s : old) span2[mul(s, x)] = 1;
      x = mul(x, c);
    }
    gens.push_back(c);
    gen_orders.push_back(ord[c]);
    if (abelian_basis(q, mul, ord, gens, gen_orders, span2, covered * ord[c]))
      return true;
    gens.pop_back();
    gen_orders.pop_back();
  }
  return false;
}

}  // namespace detail

inline Section make_section(const Subgroup& u, const Subgroup& l) {
  if (!u.group.same_as(l.group))
    throw std::invalid_argument("section endpoints lie in different groups");
  const Group& g = u.group;
  for (int x : l.members)
    if (!u.contains(x)) throw std::invalid_argument("lower group not contained in upper");

  Section s;
  s.upper = u;
  s.lower = l;
  s.to_quotient.assign(g.size, -1);

  // cosets of L in U, keyed by least representative
  std::vector<int> coset_of(g.size, -1);
  for (int x : u.members) {
    if (coset_of[x] >= 0) continue;
    int id = static_cast<int>(s.cosets.size());
    std::vector<int> coset;
    for (int y : l.members) coset.push_back(g.mul(x, y));
    std::sort(coset.begin(), coset.end());
    for (int y : coset) coset_of[y] = id;
    s.cosets.push_back(std::move(coset));
  }
  int q = static_cast<int>(s.cosets.size());

  auto cmul = [&](int a, int b) {
    return coset_of[g.mul(s.cosets[a][0], s.cosets[b][0])];
  };
  std::vector<int> ord(q, 1);
  for (int c = 1; c < q; ++c) {
    int x = c, n = 1;
    while (x != 0) {
      x = cmul(x, c);
      ++n;
    }
    ord[c] = n;
  }

  std::vector<int> gens, gen_orders;
  std::vector<char> span(q, 0);
  span[0] = 1;
  if (q > 1 && !detail::abelian_basis(q, cmul, ord, gens, gen_orders, span, 1))
    throw std::logic_error("abelian basis extraction failed");

  // split invariant-factor generators into prime-power components so the
  // quotient is presented by its elementary divisors
  {
    std::vector<int> split_gens, split_orders;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int full = gen_orders[i];
      int rest = full;
      for (int p = 2; p <= rest; ++p) {
        if (rest % p != 0) continue;
        int pk = 1;
        while (full % (static_cast<long long>(pk) * p) == 0) pk *= p;
        int x = 0;
        for (int t = 0; t < full / pk; ++t) x = cmul(x, gens[i]);
        split_gens.push_back(x);
        split_orders.push_back(pk);
        while (rest % p == 0) rest /= p;
      }
    }
    gens = std::move(split_gens);
    gen_orders = std::move(split_orders);
  }

  // present factors in ascending order
  std::vector<std::size_t> perm(gens.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return gen_orders[a] < gen_orders[b]; });
  std::vector<int> orders_sorted;
  std::vector<int> gens_sorted;
  for (std::size_t i : perm) {
    orders_sorted.push_back(gen_orders[i]);
    gens_sorted.push_back(gens[i]);
  }
  s.quotient = make_group(orders_sorted);
  if (s.quotient.size != q) throw std::logic_error("quotient size mismatch");

  // enumerate exponent tuples mixed-radix to map quotient index -> coset
  std::vector<int> q_to_coset(q, -1), coset_to_q(q, -1);
  for (int idx = 0; idx < q; ++idx) {
    int rem = idx, c = 0;
    for (std::size_t i = orders_sorted.size(); i-- > 0;) {
      int e = rem % orders_sorted[i];
      rem /= orders_sorted[i];
      int x = 0;
      for (int k = 0; k < e; ++k) x = cmul(x, gens_sorted[i]);
      c = cmul(c, x);
    }
    q_to_coset[idx] = c;
    if (coset_to_q[c] != -1) throw std::logic_error("quotient indexing not bijective");
    coset_to_q[c] = idx;
  }

  s.rep.resize(q);
  for (int idx = 0; idx < q; ++idx) s.rep[idx] = s.cosets[q_to_coset[idx]][0];
  for (int x : u.members) s.to_quotient[x] = coset_to_q[coset_of[x]];
  return s;
}

/// Convenience: section G/L over the full group.
inline Section full_section(const Group& g, const Subgroup& l) {
  std::vector<int> all(g.size);
  std::iota(all.begin(), all.end(), 0);
  return make_section(make_subgroup(g, all), l);
}

/// Convenience: U/{e}, realizing a subgroup as a Group in its own right.
inline Section subgroup_as_group(const Subgroup& u) {
  return make_section(u, make_subgroup(u.group, {0}));
}

}  // namespace srlab
