#ifndef ORBSHELL_GROUP_HPP_
#define ORBSHELL_GROUP_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "orbshell/base.hpp"
#include "orbshell/signed_perm.hpp"

namespace orbshell {

// Element requirements: static identity(), free compose(E,E), inverse(E),
// operator<, operator==. Specialize GroupTraits to unlock the dense-bitmap
// fast path for element types with a small enumerable universe.
template <class E>
struct GroupTraits {
  static constexpr uint32_t universe_size = 0;
};

template <>
struct GroupTraits<SignedPerm> {
  static constexpr uint32_t universe_size = kB6Order;
  static uint32_t index_of(const SignedPerm& p) { return encode(p); }
};

namespace detail {

template <class E>
struct DenseSet {
  std::vector<uint64_t> bits;
  DenseSet() : bits((GroupTraits<E>::universe_size + 63) / 64, 0) {}
  bool test_and_set(const E& e) {
    uint32_t i = GroupTraits<E>::index_of(e);
    uint64_t mask = 1ull << (i & 63);
    bool had = bits[i >> 6] & mask;
    bits[i >> 6] |= mask;
    return had;
  }
  bool test(const E& e) const {
    uint32_t i = GroupTraits<E>::index_of(e);
    return bits[i >> 6] & (1ull << (i & 63));
  }
};

}  // namespace detail

template <class E>
struct FiniteGroup {
  std::vector<E> gens;
  std::vector<E> elements;  // sorted ascending; set once by materialize()
  uint64_t hash = 0;        // FNV-1a over the sorted element stream

  size_t order() const { return elements.size(); }

  bool contains(const E& e) const {
    return std::binary_search(elements.begin(), elements.end(), e);
  }

  bool contains_group(const FiniteGroup& sub) const {
    if (sub.order() > order()) return false;
    for (const E& e : sub.elements)
      if (!contains(e)) return false;
    return true;
  }

  bool same_elements(const FiniteGroup& o) const {
    return hash == o.hash && elements == o.elements;
  }
};

namespace detail {

inline void fnv_mix(uint64_t& h, uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xff;
    h *= 0x100000001b3ull;
  }
}

template <class E>
uint64_t hash_sorted_elements(const std::vector<E>& elems) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (const E& e : elems) {
    if constexpr (GroupTraits<E>::universe_size > 0) {
      fnv_mix(h, GroupTraits<E>::index_of(e));
    } else {
      fnv_mix(h, e.key());
    }
  }
  return h;
}

}  // namespace detail

// Closure of the generating set under composition (BFS). Empty generator
// list yields the trivial group.
template <class E>
FiniteGroup<E> materialize(std::vector<E> gens) {
  FiniteGroup<E> g;
  g.gens = gens;
  std::vector<E> all;  // doubles as the BFS queue
  auto run = [&](auto& seen) {
    auto push_new = [&](const E& e) {
      if constexpr (GroupTraits<E>::universe_size > 0) {
        if (seen.test_and_set(e)) return;
      } else {
        if (!seen.insert(e).second) return;
      }
      all.push_back(e);
    };
    push_new(E::identity());
    for (const E& e : gens) push_new(e);
    for (size_t head = 0; head < all.size(); ++head) {
      E x = all[head];
      for (const E& gE : gens) push_new(compose(gE, x));
    }
  };
  if constexpr (GroupTraits<E>::universe_size > 0) {
    detail::DenseSet<E> seen;
    run(seen);
  } else {
    std::set<E> seen;
    run(seen);
  }
  std::sort(all.begin(), all.end());
  g.elements = std::move(all);
  g.hash = detail::hash_sorted_elements(g.elements);
  return g;
}

template <class E>
FiniteGroup<E> join(const FiniteGroup<E>& g, const E& extra) {
  std::vector<E> gens = g.gens;
  gens.push_back(extra);
  return materialize(std::move(gens));
}

template <class E>
void require_subgroup(const FiniteGroup<E>& k, const FiniteGroup<E>& h,
                      const char* what) {
  for (const E& e : h.gens)
    if (!k.contains(e)) throw NotSubgroup(std::string(what));
}

// Right-coset representatives of h in k, identity first: elements of k are
// scanned in canonical order and the first member of each uncovered coset
// Hg is taken as its representative.
template <class E>
std::vector<E> right_transversal(const FiniteGroup<E>& k, const FiniteGroup<E>& h) {
  require_subgroup(k, h, "transversal: h is not a subgroup of k");
  std::vector<E> reps;
  if constexpr (GroupTraits<E>::universe_size > 0) {
    detail::DenseSet<E> covered;
    for (const E& g : k.elements) {
      if (covered.test(g)) continue;
      reps.push_back(g);
      for (const E& x : h.elements) covered.test_and_set(compose(x, g));
    }
  } else {
    std::set<E> covered;
    for (const E& g : k.elements) {
      if (covered.count(g)) continue;
      reps.push_back(g);
      for (const E& x : h.elements) covered.insert(compose(x, g));
    }
  }
  check(reps.size() * h.order() == k.order(), "coset cover must partition k");
  check(reps.front() == E::identity(), "identity leads its own coset");
  return reps;
}

template <class E>
bool is_normal(const FiniteGroup<E>& h, const FiniteGroup<E>& k) {
  require_subgroup(k, h, "is_normal: h is not a subgroup of k");
  for (const E& g : k.gens) {
    E gi = inverse(g);
    for (const E& x : h.elements)
      if (!h.contains(compose(compose(gi, x), g))) return false;
  }
  return true;
}

template <class E, class Vec, class ApplyFn>
FiniteGroup<E> stabilizer(const FiniteGroup<E>& k, const Vec& v, ApplyFn&& act) {
  FiniteGroup<E> s;
  for (const E& e : k.elements)
    if (act(e, v) == v) s.elements.push_back(e);
  s.gens = s.elements;
  s.hash = detail::hash_sorted_elements(s.elements);
  return s;
}

// All subgroups K with h <= K <= ambient, discovered by breadth-first
// closure: adjoin one representative of each proper coset and iterate to a
// fixpoint. Complete: for any overgroup M and any reached K < M, the
// representative r of a coset Kg with g in M\K lies in M, so <K,r> <= M is
// reached and strictly larger; induction on index terminates at M.
template <class E>
std::vector<FiniteGroup<E>> overgroups_within(const FiniteGroup<E>& h,
                                               const FiniteGroup<E>& ambient) {
  require_subgroup(ambient, h, "overgroups: h is not a subgroup of ambient");
  std::vector<FiniteGroup<E>> found;
  std::map<uint64_t, std::vector<size_t>> by_hash;
  auto add_group = [&](FiniteGroup<E>&& g) -> bool {
    auto& bucket = by_hash[g.hash];
    for (size_t i : bucket)
      if (found[i].same_elements(g)) return false;
    bucket.push_back(found.size());
    found.push_back(std::move(g));
    return true;
  };
  add_group(materialize(h.gens.empty() ? h.elements : h.gens));
  for (size_t qi = 0; qi < found.size(); ++qi) {
    // Copy out what we need: `found` may reallocate while we append.
    std::vector<E> kgens = found[qi].gens;
    const size_t korder = found[qi].order();
    if (korder == ambient.order()) continue;
    std::vector<E> kelems = found[qi].elements;
    std::vector<E> reps;
    if constexpr (GroupTraits<E>::universe_size > 0) {
      detail::DenseSet<E> covered;
      for (const E& x : kelems) covered.test_and_set(x);
      for (const E& g : ambient.elements) {
        if (covered.test(g)) continue;
        reps.push_back(g);
        for (const E& x : kelems) covered.test_and_set(compose(x, g));
      }
    } else {
      std::set<E> covered(kelems.begin(), kelems.end());
      for (const E& g : ambient.elements) {
        if (covered.count(g)) continue;
        reps.push_back(g);
        for (const E& x : kelems) covered.insert(compose(x, g));
      }
    }
    for (const E& rep : reps) {
      std::vector<E> jg = kgens;
      jg.push_back(rep);
      FiniteGroup<E> cand = materialize(std::move(jg));
      check(cand.order() % korder == 0, "Lagrange on candidate join");
      add_group(std::move(cand));
    }
  }
  std::sort(found.begin(), found.end(),
            [](const FiniteGroup<E>& a, const FiniteGroup<E>& b) {
              if (a.order() != b.order()) return a.order() < b.order();
              return a.elements < b.elements;
            });
  return found;
}

}  // namespace orbshell

#endif
