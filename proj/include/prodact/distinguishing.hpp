#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prodact/errors.hpp"
#include "prodact/group.hpp"
#include "prodact/numeric.hpp"
#include "prodact/perm.hpp"

namespace prodact {

// Partition of {0..k-1} into labeled nonempty blocks; canonical order sorts
// blocks by their minimal element.
struct SetPartition {
  std::uint32_t k = 0;
  std::vector<std::vector<Point>> blocks;

  static SetPartition from_blocks(std::uint32_t k, std::vector<std::vector<Point>> blocks) {
    SetPartition p{k, std::move(blocks)};
    std::vector<char> seen(k, 0);
    for (auto& b : p.blocks) {
      if (b.empty()) throw InvalidInput("partition blocks must be nonempty");
      std::sort(b.begin(), b.end());
      for (Point x : b) {
        if (x >= k || seen[x]) throw InvalidInput("blocks must be disjoint subsets of the domain");
        seen[x] = 1;
      }
    }
    for (Point x = 0; x < k; ++x)
      if (!seen[x]) throw InvalidInput("blocks must cover the domain");
    std::sort(p.blocks.begin(), p.blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return p;
  }

  // block id per point
  std::vector<std::uint32_t> block_ids() const {
    std::vector<std::uint32_t> bid(k, 0);
    for (std::uint32_t i = 0; i < blocks.size(); ++i)
      for (Point x : blocks[i]) bid[x] = i;
    return bid;
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      s += i ? "|" : "";
      for (std::size_t j = 0; j < blocks[i].size(); ++j) {
        if (j) s += ",";
        s += std::to_string(blocks[i][j]);
      }
    }
    return s + "}";
  }
};

namespace detail {

// g fixes every block of the partition setwise iff bid[g[i]] == bid[i].
inline bool stabilizes_blocks(const Perm& g, const std::vector<std::uint32_t>& bid) {
  for (Point i = 0; i < g.degree(); ++i)
    if (bid[g[i]] != bid[i]) return false;
  return true;
}

// Prime-order elements, sorted by support size then image array: small
// supports kill non-distinguishing partitions fastest. Any partition with a
// nontrivial blockwise stabilizer is stabilized by a prime-order element.
inline std::vector<Perm> prime_order_elements(const PermutationGroup& p, const Budget& budget) {
  std::vector<Perm> elems;
  p.for_each_element(
      [&](const Perm& g) {
        if (is_prime_u64(g.order())) elems.push_back(g);
      },
      budget.max_enumerate);
  std::sort(elems.begin(), elems.end(), [](const Perm& a, const Perm& b) {
    std::size_t ma = a.n_moved(), mb = b.n_moved();
    if (ma != mb) return ma < mb;
    return a < b;
  });
  return elems;
}

}  // namespace detail

// True iff the intersection of the setwise block stabilizers is trivial.
inline bool is_distinguishing(const PermutationGroup& p, const SetPartition& part,
                              const Budget& budget = Budget::defaults()) {
  if (part.k != p.degree()) throw InvalidInput("partition does not match the group domain");
  std::vector<std::uint32_t> bid = part.block_ids();
  if (p.order() <= budget.distinguishing_filter_bound) {
    std::vector<Perm> primes = detail::prime_order_elements(p, budget);
    for (const Perm& g : primes)
      if (detail::stabilizes_blocks(g, bid)) return false;
    return true;
  }
  // chained setwise stabilizers; the groups shrink fast
  PermutationGroup k = p;
  for (const auto& b : part.blocks) {
    k = k.setwise_stabilizer(b, budget);
    if (k.order() == 1) return true;
  }
  return k.order() == 1;
}

// D(P) and the t_m profile. Exact for k <= 12 by restricted-growth-string
// enumeration; for 12 < k <= 20 only m = 2 data via a bitmask sweep.
struct DistinguishingProfile {
  unsigned D = 0;
  std::map<unsigned, std::uint64_t> t;  // m -> t_m for every m computed
  bool bounds_ok = true;                // |P|/m! <= t_m <= S(k,m) whenever t_m > 0
};

inline Integer stirling2(std::uint64_t k, std::uint64_t m) {
  if (m > k) return 0;
  if (k == 0) return m == 0 ? 1 : 0;
  if (m == 0) return 0;
  std::vector<Integer> row(m + 1, 0);
  row[std::min<std::uint64_t>(1, m)] = 1;  // S(1, 1)
  for (std::uint64_t n = 2; n <= k; ++n)
    for (std::uint64_t j = std::min(n, m); j >= 1; --j)
      row[j] = Integer(j) * row[j] + row[j - 1];
  return row[m];
}

namespace detail {

// Enumerate all set partitions of {0..k-1} as restricted growth strings,
// calling f(bid, m). Bell(12) ~ 4.2M is the supported ceiling.
template <typename F>
void for_each_partition(std::uint32_t k, F&& f) {
  std::vector<std::uint32_t> bid(k, 0);
  std::vector<std::uint32_t> maxv(k, 0);  // max block id used among 0..i
  std::uint32_t i = 1;
  if (k == 1) {
    f(bid, 1u);
    return;
  }
  // iterative odometer over restricted growth strings
  while (true) {
    if (i == k) {
      std::uint32_t m = maxv[k - 1] + 1;
      f(bid, m);
      // advance
      while (i-- > 1) {
        if (bid[i] <= maxv[i - 1]) {  // can increment
          ++bid[i];
          maxv[i] = std::max(maxv[i - 1], bid[i]);
          break;
        }
        bid[i] = 0;
        maxv[i] = maxv[i - 1];
      }
      if (i == 0) return;
      ++i;
      continue;
    }
    // descend: bid[i] already set; fill forward with zeros
    bid[i] = 0;
    maxv[i] = maxv[i - 1];
    ++i;
  }
}

inline void mask_sweep_guard(const PermutationGroup& p, const Budget& budget) {
  if (p.degree() > 20) throw BudgetExceeded("power-set sweep supports degree <= 20");
  if (p.order() > Integer(budget.distinguishing_filter_bound))
    throw BudgetExceeded("power-set sweep needs the element list");
}

// Marks every subset mask with a nontrivial setwise stabilizer: the fixed
// masks of a prime-order element are exactly the unions of its cycles.
inline std::vector<char> nonregular_masks(const PermutationGroup& p, const Budget& budget) {
  mask_sweep_guard(p, budget);
  const std::uint32_t k = static_cast<std::uint32_t>(p.degree());
  std::vector<char> marked(std::size_t(1) << k, 0);
  std::uint64_t work = 0;
  for (const Perm& g : prime_order_elements(p, budget)) {
    auto cycles = g.cycles(/*include_fixed=*/true);
    std::vector<std::uint32_t> cycle_masks;
    for (const auto& c : cycles) {
      std::uint32_t m = 0;
      for (Point x : c) m |= 1u << x;
      cycle_masks.push_back(m);
    }
    work += std::uint64_t(1) << cycle_masks.size();
    if (work > budget.max_mask_work) throw BudgetExceeded("power-set sweep work budget");
    std::uint64_t subsets = std::uint64_t(1) << cycle_masks.size();
    for (std::uint64_t s = 0; s < subsets; ++s) {
      std::uint32_t m = 0;
      for (std::size_t ci = 0; ci < cycle_masks.size(); ++ci)
        if (s >> ci & 1) m |= cycle_masks[ci];
      marked[m] = 1;
    }
  }
  return marked;
}

}  // namespace detail

// Exact profile for k <= 12: one sweep yields t_m for every m and D(P).
inline DistinguishingProfile distinguishing_profile(const PermutationGroup& p,
                                                    const Budget& budget = Budget::defaults()) {
  const std::uint32_t k = static_cast<std::uint32_t>(p.degree());
  if (k > 12) throw BudgetExceeded("exact t_m profile supports k <= 12");
  const std::vector<Perm> elems = detail::prime_order_elements(p, budget);
  DistinguishingProfile out;
  std::map<unsigned, std::uint64_t> t;
  detail::for_each_partition(k, [&](const std::vector<std::uint32_t>& bid, std::uint32_t m) {
    for (const Perm& g : elems)
      if (detail::stabilizes_blocks(g, bid)) return;
    ++t[m];
  });
  out.t = std::move(t);
  for (unsigned m = 1; m <= k; ++m)
    if (!out.t.count(m)) out.t[m] = 0;
  out.D = k;
  for (unsigned m = 1; m <= k; ++m)
    if (out.t[m] > 0) {
      out.D = m;
      break;
    }
  for (auto& [m, tm] : out.t)
    if (tm > 0) {
      bool ok = p.order() <= Integer(tm) * factorial(m) && Integer(tm) <= stirling2(k, m);
      out.bounds_ok = out.bounds_ok && ok;
    }
  return out;
}

// t_2 and the power-set data via the mask sweep (k <= 20).
struct PowerSetOrbits {
  std::uint64_t regular_on_power_set = 0;  // number of regular orbits on 2^[k]
  std::uint64_t regular_on_x = 0;          // restricted to |subset| != k/2
  std::uint64_t t2 = 0;
  std::vector<std::uint32_t> rep_masks;    // lexicographically minimal mask per regular orbit
};

inline PowerSetOrbits power_set_regular_orbits(const PermutationGroup& p,
                                               const Budget& budget = Budget::defaults()) {
  std::vector<char> marked = detail::nonregular_masks(p, budget);
  const std::uint32_t k = static_cast<std::uint32_t>(p.degree());
  std::uint64_t order = static_cast<std::uint64_t>(p.order());
  PowerSetOrbits out;
  std::uint64_t unmarked = 0, unmarked_x = 0;
  std::vector<char> seen(marked.size(), 0);
  for (std::uint64_t m = 0; m < marked.size(); ++m) {
    if (marked[m]) continue;
    ++unmarked;
    if (2 * static_cast<std::uint64_t>(__builtin_popcountll(m)) != k) ++unmarked_x;
    if (!seen[m]) {
      out.rep_masks.push_back(static_cast<std::uint32_t>(m));
      // orbit closure of the mask
      std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(m)};
      seen[m] = 1;
      for (std::size_t head = 0; head < queue.size(); ++head)
        for (const Perm& g : p.generators()) {
          std::uint32_t img = 0;
          for (Point x = 0; x < k; ++x)
            if (queue[head] >> x & 1) img |= 1u << g[x];
          if (!seen[img]) {
            seen[img] = 1;
            queue.push_back(img);
          }
        }
    }
  }
  if (unmarked % order != 0 || unmarked_x % order != 0)
    throw InternalCheckFailure("regular mask count is not a multiple of the group order");
  out.regular_on_power_set = unmarked / order;
  out.regular_on_x = unmarked_x / order;
  out.t2 = unmarked / 2;  // masks pair up with complements
  return out;
}

// t_m: exact by block enumeration for k <= 12, bitmask sweep for m = 2 and
// k <= 20; larger inputs are rejected, never approximated.
inline std::uint64_t count_tm(const PermutationGroup& p, unsigned m,
                              const Budget& budget = Budget::defaults()) {
  const std::uint32_t k = static_cast<std::uint32_t>(p.degree());
  if (m < 1 || m > k) return 0;
  if (k <= 12) return distinguishing_profile(p, budget).t.at(m);
  if (m == 2) return power_set_regular_orbits(p, budget).t2;
  throw BudgetExceeded("t_m is exact only for k <= 12, or m = 2 with k <= 20");
}

// D(P): profile sweep for k <= 12; mask sweep decides D <= 2 for k <= 20.
inline unsigned distinguishing_number(const PermutationGroup& p,
                                      const Budget& budget = Budget::defaults()) {
  if (p.order() == 1) return 1;
  const std::uint32_t k = static_cast<std::uint32_t>(p.degree());
  if (k <= 12) return distinguishing_profile(p, budget).D;
  if (power_set_regular_orbits(p, budget).regular_on_power_set > 0) return 2;
  throw BudgetExceeded("D(P) > 2 is only searched for k <= 12");
}

// Condition (double-dagger): every subset with trivial setwise stabilizer is
// mapped to its complement by some group element.
inline bool check_ddagger(const PermutationGroup& p, const Budget& budget = Budget::defaults()) {
  PowerSetOrbits ps = power_set_regular_orbits(p, budget);
  const std::uint32_t k = static_cast<std::uint32_t>(p.degree());
  const std::uint32_t full = k == 32 ? ~0u : (1u << k) - 1;
  std::vector<Perm> elems = p.elements(budget.distinguishing_filter_bound);
  for (std::uint32_t rep : ps.rep_masks) {
    bool complemented = false;
    for (const Perm& g : elems) {
      std::uint32_t img = 0;
      for (Point x = 0; x < k; ++x)
        if (rep >> x & 1) img |= 1u << g[x];
      if (img == (full ^ rep)) {
        complemented = true;
        break;
      }
    }
    if (!complemented) return false;  // property is orbit-invariant
  }
  return true;
}

// Condition (dagger) at m: every block of every distinguishing m-partition is
// disjoint from some translate of itself.
inline bool check_dagger(const PermutationGroup& p, unsigned m,
                         const Budget& budget = Budget::defaults()) {
  const std::uint32_t k = static_cast<std::uint32_t>(p.degree());
  if (k > 20) throw BudgetExceeded("condition (dagger) supports k <= 20");
  std::vector<Perm> elems = p.elements(budget.distinguishing_filter_bound);
  const std::vector<Perm> primes = detail::prime_order_elements(p, budget);
  bool ok = true;
  auto per_partition = [&](const std::vector<std::uint32_t>& bid, std::uint32_t nblocks) {
    if (!ok || nblocks != m) return;
    for (const Perm& g : primes)
      if (detail::stabilizes_blocks(g, bid)) return;  // not distinguishing
    std::vector<std::uint32_t> masks(nblocks, 0);
    for (Point x = 0; x < k; ++x) masks[bid[x]] |= 1u << x;
    for (std::uint32_t bm : masks) {
      bool found = false;
      for (const Perm& g : elems) {
        std::uint32_t img = 0;
        for (Point x = 0; x < k; ++x)
          if (bm >> x & 1) img |= 1u << g[x];
        if ((img & bm) == 0) {
          found = true;
          break;
        }
      }
      if (!found) {
        ok = false;
        return;
      }
    }
  };
  if (k <= 12) {
    detail::for_each_partition(k, per_partition);
    return ok;
  }
  if (m == 2) {
    // one representative partition per regular power-set orbit suffices:
    // (dagger) is invariant under translating the partition
    PowerSetOrbits ps = power_set_regular_orbits(p, budget);
    for (std::uint32_t rep : ps.rep_masks) {
      std::vector<std::uint32_t> bid(k);
      for (Point x = 0; x < k; ++x) bid[x] = rep >> x & 1;
      per_partition(bid, 2);
      if (!ok) return false;
    }
    return ok;
  }
  throw BudgetExceeded("condition (dagger) needs k <= 12 for m > 2");
}

// Bounds check: |P|/m! <= t_m <= S(k,m) whenever t_m > 0.
inline bool bounds_check(const PermutationGroup& p, unsigned m, std::uint64_t tm) {
  if (tm == 0) return true;
  return p.order() <= Integer(tm) * factorial(m) &&
         Integer(tm) <= stirling2(p.degree(), m);
}

}  // namespace prodact
