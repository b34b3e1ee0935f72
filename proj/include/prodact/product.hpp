#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prodact/base_size.hpp"
#include "prodact/constructions.hpp"
#include "prodact/distinguishing.hpp"
#include "prodact/errors.hpp"
#include "prodact/group.hpp"
#include "prodact/numeric.hpp"
#include "prodact/product_action.hpp"

namespace prodact {

// --- the base-size criterion -------------------------------------------

struct BcPrediction {
  unsigned D = 0;
  unsigned predicted_b = 0;
  std::map<unsigned, std::uint64_t> reg_by_m;  // reg(L, m) for each m examined
};

// b(L wr P) <= m iff reg(L, m) >= D(P); returns the least such m.
inline BcPrediction bc_predict(const PermutationGroup& l, const PermutationGroup& p,
                               unsigned m_max = 8, const Budget& budget = Budget::defaults()) {
  BcPrediction out;
  out.D = distinguishing_number(p, budget);
  for (unsigned m = 1; m <= m_max; ++m) {
    std::uint64_t r = reg_L_m(l, m, budget);
    out.reg_by_m[m] = r;
    if (r >= out.D) {
      out.predicted_b = m;
      return out;
    }
  }
  throw BudgetExceeded("no m <= m_max with reg(L, m) >= D(P)");
}

// --- the regular-suborbit formula ----------------------------------------

// r(L wr P) = (1/|P|) sum_{m=D}^{k} m! C(r(L), m) t_m. Integrality is a
// consequence of the counting argument; failure to divide is an internal error.
inline Integer r_wreath_formula(std::uint64_t r_l, std::uint32_t k, const Integer& p_order,
                                unsigned D, const std::map<unsigned, std::uint64_t>& tm) {
  Integer sum = 0;
  for (unsigned m = D; m <= k; ++m) {
    if (m > r_l) break;  // C(r, m) = 0 beyond
    auto it = tm.find(m);
    if (it == tm.end())
      throw InvalidInput("t_" + std::to_string(m) + " required by the formula is missing");
    sum += factorial(m) * binomial(Integer(r_l), m) * Integer(it->second);
  }
  if (sum % p_order != 0)
    throw InternalCheckFailure("regular suborbit sum is not divisible by |P|");
  return sum / p_order;
}

// P = S_k specialization: r(G) = C(r(L), k).
inline Integer r_wreath_symmetric(std::uint64_t r_l, std::uint32_t k) {
  return binomial(Integer(r_l), k);
}

// P = C_k, k prime: r(G) = (r(L)^k - r(L)) / k.
inline Integer r_wreath_cyclic_prime(std::uint64_t r_l, std::uint32_t k) {
  if (!is_prime_u64(k)) throw InvalidInput("cyclic specialization needs prime k");
  Integer rr = int_pow(Integer(r_l), k) - Integer(r_l);
  if (rr % k != 0) throw InternalCheckFailure("cyclic specialization divisibility");
  return rr / k;
}

struct WreathAnalysis {
  std::uint64_t rL = 0;
  unsigned bL = 0;
  std::map<unsigned, std::uint64_t> regL;
  unsigned D = 0;
  std::map<unsigned, std::uint64_t> tm;
  unsigned predicted_b = 0;
  Integer r_wreath;
};

inline WreathAnalysis analyze_wreath(const PermutationGroup& l, const PermutationGroup& p,
                                     const Budget& budget = Budget::defaults()) {
  WreathAnalysis out;
  out.rL = regular_suborbits(l, budget).count;
  DistinguishingProfile prof = distinguishing_profile(p, budget);
  out.D = prof.D;
  out.tm = prof.t;
  out.r_wreath = r_wreath_formula(out.rL, static_cast<std::uint32_t>(p.degree()), p.order(),
                                  out.D, out.tm);
  BcPrediction bc = bc_predict(l, p, 8, budget);
  out.predicted_b = bc.predicted_b;
  out.regL = bc.reg_by_m;
  out.bL = base_size_exact(l, budget).b;
  // the criterion and the counting formula must agree about base-two
  if ((out.r_wreath >= 1) != (out.predicted_b == 2))
    throw InternalCheckFailure("formula and criterion disagree about base-two");
  return out;
}

// --- uniqueness of the regular suborbit ----------------------------------

struct UniqueRegularVerdict {
  bool unique = false;
  std::uint64_t rL = 0;
  unsigned D = 0;
  std::uint64_t tD = 0;
  // When P is primitive: 1..4 for the classified cases (S_k; A_5 on 6;
  // PGammaL_2(8) on 9; AGL_3(2) on 8), 0 when none applies.
  std::optional<int> classified_case;
};

inline UniqueRegularVerdict unique_regular_suborbit_test(const PermutationGroup& l,
                                                         const PermutationGroup& p,
                                                         const Budget& budget = Budget::defaults()) {
  UniqueRegularVerdict out;
  out.rL = regular_suborbits(l, budget).count;
  DistinguishingProfile prof = distinguishing_profile(p, budget);
  out.D = prof.D;
  out.tD = prof.t.at(prof.D);
  out.unique = Integer(out.rL) == Integer(out.D) &&
               Integer(out.tD) * factorial(out.D) == p.order();
  bool primitive = false;
  try {
    primitive = p.is_primitive(budget);
  } catch (const BudgetExceeded&) {
  }
  if (primitive) {
    const std::size_t k = p.degree();
    if (p.order() == factorial(k) && out.D == k)
      out.classified_case = 1;
    else if (k == 6 && p.order() == 60 && out.D == 3)
      out.classified_case = 2;
    else if (k == 9 && p.order() == 1512 && out.D == 3)
      out.classified_case = 3;
    else if (k == 8 && p.order() == 1344 && out.D == 4)
      out.classified_case = 4;
    else
      out.classified_case = 0;
  }
  return out;
}

// --- the coordinatewise base-pair test (pairs on Gamma^2) -----------------

// L-orbit labels on ordered pairs of Gamma, cached once per L. The label of
// (a, b) identifies the L-orbit of the pair; `regular` marks orbits of
// length |L| (equivalently {a, b} is a base for L).
struct PairOrbitLabels {
  std::size_t n = 0;
  std::vector<std::int32_t> label;  // index a * n + b
  std::vector<char> regular;        // per label
};

inline PairOrbitLabels pair_orbit_labels(const PermutationGroup& l,
                                         const Budget& budget = Budget::defaults()) {
  const std::size_t n = l.degree();
  if (n * n > budget.max_points) throw BudgetExceeded("pair label table exceeds budget");
  PairOrbitLabels out;
  out.n = n;
  out.label.assign(n * n, -1);
  std::vector<std::size_t> queue;
  Integer l_order = l.order();
  for (std::size_t seed = 0; seed < n * n; ++seed) {
    if (out.label[seed] >= 0) continue;
    std::int32_t id = static_cast<std::int32_t>(out.regular.size());
    std::uint64_t size = 0;
    queue.clear();
    queue.push_back(seed);
    out.label[seed] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::size_t cur = queue[head];
      Point a = static_cast<Point>(cur / n), b = static_cast<Point>(cur % n);
      ++size;
      for (const Perm& g : l.generators()) {
        std::size_t img = static_cast<std::size_t>(g[a]) * n + g[b];
        if (out.label[img] < 0) {
          out.label[img] = id;
          queue.push_back(img);
        }
      }
    }
    out.regular.push_back(Integer(size) == l_order);
  }
  return out;
}

// Coordinatewise test: {alpha, beta} is a base for L wr P iff every coordinate
// pair is a base for L and the label partition distinguishes P.
inline bool product_base_pair_test(const PairOrbitLabels& labels, const PermutationGroup& p,
                                   const std::vector<Point>& alpha,
                                   const std::vector<Point>& beta,
                                   const Budget& budget = Budget::defaults()) {
  const std::size_t k = p.degree();
  if (alpha.size() != k || beta.size() != k) throw InvalidInput("tuple length must equal k");
  std::vector<std::int32_t> coord_label(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::int32_t lab = labels.label[static_cast<std::size_t>(alpha[i]) * labels.n + beta[i]];
    if (!labels.regular[lab]) return false;
    coord_label[i] = lab;
  }
  // partition of {0..k-1} by equal labels
  std::vector<std::vector<Point>> blocks;
  std::map<std::int32_t, std::size_t> block_of;
  for (Point i = 0; i < k; ++i) {
    auto [it, fresh] = block_of.emplace(coord_label[i], blocks.size());
    if (fresh) blocks.emplace_back();
    blocks[it->second].push_back(i);
  }
  return is_distinguishing(p, SetPartition::from_blocks(static_cast<std::uint32_t>(k), blocks),
                           budget);
}

// --- sufficient condition for b(G) = 2 on general product-type groups -----

struct Base2Certificate {
  enum class Verdict { guaranteed, unknown } verdict = Verdict::unknown;
  unsigned m_used = 0;
  std::optional<std::pair<Point, Point>> witness;  // encoded points of Gamma^k
  std::string reason;
};

namespace detail {

// Distinguishing partitions with exactly D blocks, as block-size-sorted
// masks; calls f with blocks ordered by decreasing size then minimum.
template <typename F>
void for_each_distinguishing_d_partition(const PermutationGroup& p, unsigned D,
                                         const Budget& budget, F&& f) {
  const std::uint32_t k = static_cast<std::uint32_t>(p.degree());
  if (k <= 12) {
    const std::vector<Perm> primes = prime_order_elements(p, budget);
    for_each_partition(k, [&](const std::vector<std::uint32_t>& bid, std::uint32_t m) {
      if (m != D) return;
      for (const Perm& g : primes)
        if (stabilizes_blocks(g, bid)) return;
      std::vector<std::vector<Point>> blocks(m);
      for (Point x = 0; x < k; ++x) blocks[bid[x]].push_back(x);
      std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
      });
      f(blocks);
    });
    return;
  }
  if (D == 2) {
    PowerSetOrbits ps = power_set_regular_orbits(p, budget);
    for (std::uint32_t rep : ps.rep_masks) {
      std::vector<std::vector<Point>> blocks(2);
      for (Point x = 0; x < k; ++x) blocks[rep >> x & 1 ? 0 : 1].push_back(x);
      std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
      });
      f(blocks);
    }
    return;
  }
  throw BudgetExceeded("distinguishing partition enumeration needs k <= 12 (or D = 2)");
}

}  // namespace detail

// Implements the witnessed sufficient criterion: with m minimal such that
// some distinguishing D(P)-partition has leading-union size > tau(G), the
// conditions r(L) >= m and r(T) >= m(|L:T|-1) + D(P) force b(G) = 2, and the
// witness pair is constructed and verified directly.
inline Base2Certificate sufficient_base2_general(const ProductTypeGroup& g,
                                                 const Budget& budget = Budget::defaults()) {
  Base2Certificate out;
  if (!g.tau) {
    out.reason = "no element of (L^k meet G) outside T^k: criterion not applicable";
    return out;
  }
  const std::uint32_t k = g.k;
  const std::uint32_t tau = *g.tau;
  unsigned D = distinguishing_number(g.P, budget);

  // minimal m over distinguishing D-partitions with leading-union > tau;
  // the first partition (canonical order) achieving it is kept
  unsigned best_m = D + 1;
  std::vector<std::vector<Point>> best_blocks;
  detail::for_each_distinguishing_d_partition(g.P, D, budget, [&](const auto& blocks) {
    std::uint32_t prefix = 0;
    for (unsigned i = 0; i < blocks.size(); ++i) {
      prefix += static_cast<std::uint32_t>(blocks[i].size());
      if (prefix > tau) {
        if (i + 1 < best_m) {
          best_m = i + 1;
          best_blocks = blocks;
        }
        return;
      }
    }
  });
  if (best_m > D) {
    out.reason = "no distinguishing D(P)-partition clears tau(G)";
    return out;
  }
  out.m_used = best_m;

  RegularOrbitCount rl = regular_suborbits(g.L.group, budget);
  RegularOrbitCount rt = regular_suborbits_of_subgroup(g.T);
  Integer lt_index = g.L.group.order() / g.T.order();
  if (Integer(rl.count) < best_m ||
      Integer(rt.count) < Integer(best_m) * (lt_index - 1) + D) {
    out.reason = "regular suborbit counts below the criterion thresholds";
    return out;
  }

  // gamma_1..gamma_m in distinct regular L_0-orbits (their T_0-orbits are
  // automatically regular and distinct), extended to D distinct regular
  // T_0-orbits avoiding the chosen L_0-orbits.
  OrbitPartition l_orbits = g.L.group.point_stabilizer(0).orbits();
  std::vector<Point> gammas;
  std::vector<std::int32_t> used_l_orbits;
  for (Point rep : rl.orbit_reps) {
    if (gammas.size() == best_m) break;
    gammas.push_back(rep);
    used_l_orbits.push_back(l_orbits.orbit_id[rep]);
  }
  for (Point rep : rt.orbit_reps) {
    if (gammas.size() == D) break;
    std::int32_t lid = l_orbits.orbit_id[rep];
    if (std::find(used_l_orbits.begin(), used_l_orbits.end(), lid) != used_l_orbits.end())
      continue;
    gammas.push_back(rep);
    used_l_orbits.push_back(lid);
  }
  if (gammas.size() != D) throw InternalCheckFailure("witness point selection failed");

  std::vector<Point> beta(k);
  for (unsigned i = 0; i < D; ++i)
    for (Point j : best_blocks[i]) beta[j] = gammas[i];
  Point alpha_pt = g.space.encode(std::vector<Point>(k, 0));
  Point beta_pt = g.space.encode(beta);
  if (g.ambient.pointwise_stabilizer({alpha_pt, beta_pt}).order() != 1)
    throw InternalCheckFailure("constructed witness pair is not a base");
  out.verdict = Base2Certificate::Verdict::guaranteed;
  out.witness = {alpha_pt, beta_pt};
  return out;
}

// --- structural cross-checks against the classification criteria ---------

struct StructuralCheck {
  std::string name;
  bool applicable = false;
  bool passed = true;
  std::string detail;
};

struct StructuralReport {
  unsigned bL = 0;
  unsigned bG = 0;
  std::uint64_t rL = 0, rT = 0;
  unsigned D = 0;
  std::vector<StructuralCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.applicable && !c.passed) return false;
    return true;
  }
};

inline StructuralReport structural_checks(const ProductTypeGroup& g,
                                          const Budget& budget = Budget::defaults()) {
  StructuralReport rep;
  rep.bL = base_size_exact(g.L.group, budget).b;
  rep.bG = base_size_exact(g.ambient, budget).b;
  rep.rL = regular_suborbits(g.L.group, budget).count;
  rep.rT = regular_suborbits_of_subgroup(g.T).count;
  rep.D = distinguishing_number(g.P, budget);
  Integer c = g.L.group.order() / g.T.order();
  Integer g_order = g.ambient.order();
  Integer twr = int_pow(g.T.order(), g.k) * g.P.order();
  Integer lwr = int_pow(g.L.group.order(), g.k) * g.P.order();
  bool strictly_between = g_order > twr && g_order < lwr;

  auto add = [&](std::string name, bool applicable, bool passed, std::string detail) {
    rep.checks.push_back({std::move(name), applicable, passed, std::move(detail)});
  };

  // Full wreath with soluble stabilizers: b(G) = b(L) when reg(L,b(L)) >= D,
  // else b(L) + 1.
  {
    bool applicable = g.full_wreath;
    bool passed = true;
    std::string detail;
    if (applicable) {
      bool soluble = g.L.group.point_stabilizer(0).is_soluble() && g.P.is_soluble();
      if (!soluble) {
        applicable = false;
        detail = "point stabilizer not soluble";
      } else {
        std::uint64_t reg_b = reg_L_m(g.L.group, rep.bL, budget);
        unsigned expected = reg_b >= rep.D ? rep.bL : rep.bL + 1;
        passed = rep.bG == expected;
        detail = "expected b(G) = " + std::to_string(expected);
      }
    }
    add("wreath-dichotomy", applicable, passed, detail);
  }

  // For T wr P < G < L wr P with b(L) = 2, tau = 0 and b(G) >= 3:
  // |L:T| <= r(T) <= |L:T| + D(P) - 2.
  {
    bool applicable =
        !g.full_wreath && strictly_between && rep.bL == 2 && g.tau == 0u && rep.bG >= 3;
    bool passed = true;
    if (applicable)
      passed = c <= Integer(rep.rT) && Integer(rep.rT) <= c + Integer(rep.D) - 2;
    add("tau0-suborbit-bounds", applicable, passed,
        "|L:T| = " + c.str() + ", r(T) = " + std::to_string(rep.rT));
  }

  // Same hypotheses: condition (dagger) holds for D(P) <= m <= min(k, r(T)).
  {
    bool applicable =
        !g.full_wreath && strictly_between && rep.bL == 2 && g.tau == 0u && rep.bG >= 3;
    bool passed = true;
    std::string detail;
    if (applicable) {
      unsigned hi = std::min<std::uint64_t>(g.k, rep.rT);
      for (unsigned m = rep.D; m <= hi && passed; ++m) {
        passed = check_dagger(g.P, m, budget);
        if (!passed) detail = "(dagger) fails at m = " + std::to_string(m);
      }
    }
    add("tau0-dagger", applicable, passed, detail);
  }

  // With D(P) = 2 additionally: condition (double-dagger).
  {
    bool applicable = !g.full_wreath && strictly_between && rep.bL == 2 && g.tau == 0u &&
                      rep.D == 2 && rep.bG >= 3;
    bool passed = true;
    if (applicable) passed = check_ddagger(g.P, budget);
    add("tau0-ddagger", applicable, passed, "");
  }

  // b(L) = |L:T| = 2, tau = 0, P = S_{r(T)} natural: b(G) >= 3.
  {
    bool applicable = strictly_between && rep.bL == 2 && c == 2 && g.tau == 0u &&
                      Integer(g.k) == Integer(rep.rT) && g.P.order() == factorial(g.k);
    bool passed = !applicable || rep.bG >= 3;
    add("swap-pairing-lower-bound", applicable, passed, "");
  }

  // b(L) >= 3 and |L:T| = 2: b(G) >= 3.
  {
    bool applicable = strictly_between && rep.bL >= 3 && c == 2;
    bool passed = !applicable || rep.bG >= 3;
    add("index-two-lower-bound", applicable, passed, "");
  }

  return rep;
}

}  // namespace prodact
