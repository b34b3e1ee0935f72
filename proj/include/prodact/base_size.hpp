#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prodact/errors.hpp"
#include "prodact/group.hpp"
#include "prodact/numeric.hpp"
#include "prodact/perm.hpp"

namespace prodact {

struct BaseResult {
  unsigned b = 0;
  std::vector<Point> witness;
  bool exact = true;  // false: greedy upper bound after budget exhaustion
};

namespace detail {

// One point per orbit of the current stabilizer, smallest first, skipping
// fixed points (they cannot extend a minimal base).
inline std::vector<Point> extension_candidates(const PermutationGroup& k) {
  OrbitPartition p = k.orbits();
  std::vector<Point> out;
  for (std::size_t i = 0; i < p.count(); ++i)
    if (p.sizes[i] > 1) out.push_back(p.reps[i]);
  return out;
}

inline bool base_dfs(const PermutationGroup& k, unsigned remaining, std::vector<Point>& prefix,
                     std::uint64_t& nodes, std::uint64_t node_budget) {
  if (k.order() == 1) return true;
  if (remaining == 0) return false;
  if (remaining == 1) {
    // a closing point exists iff the stabilizer has a regular orbit
    OrbitPartition p = k.orbits();
    for (std::size_t i = 0; i < p.count(); ++i)
      if (Integer(p.sizes[i]) == k.order()) {
        prefix.push_back(p.reps[i]);
        return true;
      }
    return false;
  }
  for (Point cand : extension_candidates(k)) {
    if (++nodes > node_budget) throw BudgetExceeded("base size search budget exhausted");
    prefix.push_back(cand);
    PermutationGroup next = k.point_stabilizer(cand);
    if (base_dfs(next, remaining - 1, prefix, nodes, node_budget)) return true;
    prefix.pop_back();
  }
  return false;
}

}  // namespace detail

// Exact base size by iterative deepening from the information bound
// ceil(log|G| / log|Omega|), with orbit-representative pruning. On budget
// exhaustion, falls back to a greedy (largest-orbit) upper bound.
inline BaseResult base_size_exact(const PermutationGroup& g,
                                  const Budget& budget = Budget::defaults(),
                                  unsigned depth_cap = 0) {
  if (!g.is_transitive()) throw IntransitiveInput("base size search expects a transitive group");
  if (g.order() == 1) return BaseResult{0, {}, true};
  if (depth_cap == 0) depth_cap = static_cast<unsigned>(g.degree());
  unsigned lower = std::max(1u, log_lower_bound(g.order(), g.degree()));
  std::uint64_t nodes = 0;
  try {
    for (unsigned depth = lower; depth <= depth_cap; ++depth) {
      std::vector<Point> prefix;
      if (detail::base_dfs(g, depth, prefix, nodes, budget.max_search_nodes)) {
        // independent witness check, not trusting the search path
        if (g.pointwise_stabilizer(prefix).order() != 1)
          throw InternalCheckFailure("base witness fails the stabilizer check");
        return BaseResult{static_cast<unsigned>(prefix.size()), prefix, true};
      }
    }
  } catch (const BudgetExceeded&) {
    // greedy: repeatedly fix a point in a largest orbit of the stabilizer
    std::vector<Point> witness;
    PermutationGroup k = g;
    while (k.order() > 1) {
      OrbitPartition p = k.orbits();
      Point best = 0;
      std::uint32_t best_size = 0;
      for (std::size_t i = 0; i < p.count(); ++i)
        if (p.sizes[i] > best_size) {
          best_size = p.sizes[i];
          best = p.reps[i];
        }
      witness.push_back(best);
      k = k.point_stabilizer(best);
    }
    return BaseResult{static_cast<unsigned>(witness.size()), witness, false};
  }
  throw InternalCheckFailure("no base found within the depth cap");
}

struct RegularOrbitCount {
  std::uint64_t count = 0;
  Integer stabilizer_order;
  std::vector<Point> orbit_reps;  // minimal point of each regular suborbit
};

// Regular orbits of a subgroup K on the domain, excluding the orbit of
// `base_point` (the trivial suborbit). K is typically a point stabilizer.
inline RegularOrbitCount regular_orbits_of(const PermutationGroup& k, Point base_point) {
  OrbitPartition p = k.orbits();
  RegularOrbitCount out;
  out.stabilizer_order = k.order();
  std::int32_t skip = p.orbit_id[base_point];
  for (std::size_t i = 0; i < p.count(); ++i) {
    if (static_cast<std::int32_t>(i) == skip) continue;
    if (Integer(p.sizes[i]) == out.stabilizer_order) {
      ++out.count;
      out.orbit_reps.push_back(p.reps[i]);
    }
  }
  return out;
}

// r(G): the number of regular suborbits, i.e. orbits of G_0 of length |G_0|.
inline RegularOrbitCount regular_suborbits(const PermutationGroup& g,
                                           const Budget& budget = Budget::defaults()) {
  (void)budget;
  if (!g.is_transitive()) throw IntransitiveInput("regular suborbits need a transitive group");
  return regular_orbits_of(g.point_stabilizer(0), 0);
}

// r(T) for a transitive subgroup t <= g acting on the same domain: regular
// orbits of the socle point stabilizer T_0.
inline RegularOrbitCount regular_suborbits_of_subgroup(const PermutationGroup& t) {
  if (!t.is_transitive()) throw IntransitiveInput("socle factor must be transitive");
  return regular_orbits_of(t.point_stabilizer(0), 0);
}

namespace detail {

// Number of regular K-orbits on Gamma^depth, via the stabilizer recursion:
// f(K, 1) = #regular K-orbits on Gamma, f(K, d) = sum over K-orbit
// representatives w of f(K_w, d-1). Tuples with repeated entries are covered
// because fixed points of K stay in the recursion.
inline std::uint64_t reg_recurse(const PermutationGroup& k, unsigned depth) {
  Integer korder = k.order();
  if (korder == 1) {
    // every tuple extends to a regular orbit
    Integer total = int_pow(Integer(k.degree()), depth);
    if (total > Integer(UINT64_MAX)) throw BudgetExceeded("regular orbit count overflows");
    return static_cast<std::uint64_t>(total);
  }
  OrbitPartition p = k.orbits();
  if (depth == 1) {
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < p.count(); ++i)
      if (Integer(p.sizes[i]) == korder) ++count;
    return count;
  }
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < p.count(); ++i)
    total += reg_recurse(k.point_stabilizer(p.reps[i]), depth - 1);
  return total;
}

}  // namespace detail

// reg(L, m): the number of regular orbits of L on Gamma^m (coordinatewise).
inline std::uint64_t reg_L_m(const PermutationGroup& l, unsigned m,
                             const Budget& budget = Budget::defaults()) {
  (void)budget;
  if (m < 1) throw InvalidInput("reg(L, m) needs m >= 1");
  if (!l.is_transitive()) throw IntransitiveInput("reg(L, m) expects a transitive group");
  if (m == 1) return l.order() == Integer(l.degree()) ? 1 : 0;
  return detail::reg_recurse(l.point_stabilizer(0), m - 1);
}

struct ProbabilityEstimate {
  Rational p_exact;                 // probability a random b-tuple is a base
  std::optional<Rational> q_hat;    // fixed-point-ratio bound on 1 - p
  unsigned b = 0;
};

// P = |J|^b * reg(L,b) / |L|^(b-1) and the prime-order class-sum bound
// Q_hat = sum |x^L| fpr(x)^b. When the classes are not computable within the
// budget, q_hat is omitted.
inline ProbabilityEstimate base_probability(const PermutationGroup& l, unsigned b,
                                            const Budget& budget = Budget::defaults()) {
  if (!l.is_transitive()) throw IntransitiveInput("base probability expects a transitive group");
  std::uint64_t r = reg_L_m(l, b, budget);
  Integer j_order = l.order() / Integer(l.degree());
  ProbabilityEstimate out;
  out.b = b;
  out.p_exact = Rational(int_pow(j_order, b) * r, int_pow(l.order(), b - 1));
  try {
    ConjugacyClasses cc = l.conjugacy_classes(budget.max_classes);
    Rational qhat = 0;
    for (std::size_t i = 0; i < cc.representatives.size(); ++i) {
      const Perm& x = cc.representatives[i];
      if (!is_prime_u64(x.order())) continue;
      std::uint64_t fixed = 0;
      for (Point pt = 0; pt < l.degree(); ++pt) fixed += x[pt] == pt;
      if (fixed == 0) continue;
      Rational fpr(fixed, l.degree());
      Rational fprb = 1;
      for (unsigned e = 0; e < b; ++e) fprb *= fpr;
      qhat += Rational(cc.sizes[i]) * fprb;
    }
    out.q_hat = qhat;
    if (Rational(1) - out.p_exact > qhat)
      throw InternalCheckFailure("union bound violated: 1 - P > Q_hat");
  } catch (const OrderExceedsBound&) {
    out.q_hat.reset();
  }
  return out;
}

}  // namespace prodact
