#include <catch2/catch_amalgamated.hpp>

#include "prodact/base_size.hpp"
#include "prodact/constructions.hpp"
#include "prodact/product_action.hpp"

using namespace prodact;

namespace {

ConstructedGroup pgl2_pairs(std::uint32_t q) {
  return pairs_action(projective_family(ProjectiveFamily::pgl2, q));
}

ConstructedGroup psl2_55() {
  ConstructedGroup g = projective_family(ProjectiveFamily::psl2, 11);
  PermutationGroup n6 = cyclic_normalizer(g.group, 6);
  return apply_coset_action(g, n6, "N(C6)");
}

ConstructedGroup a5_deg6() {
  PermutationGroup a5 = alternating_group(5);
  ConstructedGroup cg{a5, a5, {}, "a:5"};
  PermutationGroup d10 = cyclic_normalizer(a5, 5);
  return apply_coset_action(cg, d10, "N(C5)");
}

}  // namespace

TEST_CASE("base sizes of small fixtures") {
  BaseResult s5 = base_size_exact(symmetric_group(5));
  CHECK(s5.b == 4);  // n - 1
  CHECK(s5.exact);

  BaseResult a5 = base_size_exact(alternating_group(5));
  CHECK(a5.b == 3);

  // witness verified independently of the search
  PermutationGroup g = symmetric_group(6);
  BaseResult r = base_size_exact(g);
  CHECK(r.b == 5);
  CHECK(g.pointwise_stabilizer(r.witness).order() == 1);
}

TEST_CASE("b(PGL2(7) on pairs) = 2") {
  BaseResult r = base_size_exact(pgl2_pairs(7).group);
  CHECK(r.b == 2);
}

TEST_CASE("greedy fallback flags inexact results") {
  Budget b;
  b.max_search_nodes = 1;
  BaseResult r = base_size_exact(symmetric_group(7), b);
  CHECK_FALSE(r.exact);
  CHECK(r.b >= 6);
  PermutationGroup g = symmetric_group(7);
  CHECK(g.pointwise_stabilizer(r.witness).order() == 1);
}

TEST_CASE("regular suborbit counts from the tables") {
  // PGL2(7) on 28 pairs: r(L) = 1, r(T) = 3
  ConstructedGroup p7 = pgl2_pairs(7);
  CHECK(regular_suborbits(p7.group).count == 1);
  CHECK(regular_suborbits_of_subgroup(*p7.socle).count == 3);

  // PGL2(9) on 45 pairs: r(L) = 1, r(T) = 4
  ConstructedGroup p9 = pgl2_pairs(9);
  CHECK(regular_suborbits(p9.group).count == 1);
  CHECK(regular_suborbits_of_subgroup(*p9.socle).count == 4);

  // PSL2(11) of degree 55: r = 2
  CHECK(regular_suborbits(psl2_55().group).count == 2);

  // A5 of degree 10 on the cosets of D6: r = 1
  PermutationGroup a5 = alternating_group(5);
  ConstructedGroup cg{a5, a5, {}, "a:5"};
  ConstructedGroup deg10 = apply_coset_action(cg, cyclic_normalizer(a5, 3), "N(C3)");
  CHECK(deg10.group.degree() == 10);
  CHECK(regular_suborbits(deg10.group).count == 1);
}

TEST_CASE("regular suborbits: partition sanity") {
  ConstructedGroup p7 = pgl2_pairs(7);
  RegularOrbitCount r = regular_suborbits(p7.group);
  CHECK(r.stabilizer_order == 12);
  REQUIRE(r.orbit_reps.size() == 1);
  // each rep's suborbit really has stabilizer length
  PermutationGroup h = p7.group.point_stabilizer(0);
  CHECK(Integer(h.orbit_of(r.orbit_reps[0]).size()) == r.stabilizer_order);
  CHECK_THROWS_AS(regular_suborbits(PermutationGroup(4, {Perm::from_cycles(4, {{0, 1}})})),
                  IntransitiveInput);
}

TEST_CASE("reg(L, m) recursion on pinned fixtures") {
  // A5 natural (J = A4): reg(L,3) = 1
  CHECK(reg_L_m(alternating_group(5), 3) == 1);
  // A5 on 6 points (J = D10): reg(L,3) = 2
  CHECK(reg_L_m(a5_deg6().group, 3) == 2);
  // S5 natural (J = S4): reg(L,4) = 1
  CHECK(reg_L_m(symmetric_group(5), 4) == 1);
  // reg(L,2) = r(L) on fixtures
  ConstructedGroup p7 = pgl2_pairs(7);
  CHECK(reg_L_m(p7.group, 2) == regular_suborbits(p7.group).count);
  ConstructedGroup l55 = psl2_55();
  CHECK(reg_L_m(l55.group, 2) == 2);
}

TEST_CASE("reg(L, m) >= 1 iff m >= b(L)") {
  std::vector<PermutationGroup> fixtures{alternating_group(5), symmetric_group(5),
                                         a5_deg6().group, pgl2_pairs(7).group};
  for (const auto& l : fixtures) {
    unsigned b = base_size_exact(l).b;
    for (unsigned m = std::max(2u, b > 1 ? b - 1 : 1u); m <= b + 1; ++m)
      CHECK((reg_L_m(l, m) >= 1) == (m >= b));
  }
}

TEST_CASE("base probability: exact rational and the Q-hat bound") {
  // A5 on 6 points, b=3: P = 10^3*2/60^2 = 5/9
  ProbabilityEstimate p = base_probability(a5_deg6().group, 3);
  CHECK(p.p_exact == Rational(5, 9));
  REQUIRE(p.q_hat);
  CHECK(Rational(1) - p.p_exact <= *p.q_hat);

  // brute force over all 216 ordered triples
  const PermutationGroup& l = a5_deg6().group;
  std::uint64_t bases = 0;
  for (Point x = 0; x < 6; ++x)
    for (Point y = 0; y < 6; ++y)
      for (Point z = 0; z < 6; ++z)
        if (l.pointwise_stabilizer({x, y, z}).order() == 1) ++bases;
  CHECK(Rational(bases, 216) == p.p_exact);

  // sharply 3-transitive PGL2(7) on 8 points, b=3: P = 42^3/336^2
  ConstructedGroup pgl7 = projective_family(ProjectiveFamily::pgl2, 7);
  ProbabilityEstimate p2 = base_probability(pgl7.group, 3);
  CHECK(p2.p_exact == Rational(Integer(42) * 42 * 42, Integer(336) * 336));
  CHECK(reg_L_m(pgl7.group, 3) == 1);

  // a regular group with b=1 has P = 1
  ProbabilityEstimate p3 = base_probability(cyclic_group(5), 1);
  CHECK(p3.p_exact == 1);
  REQUIRE(p3.q_hat);
  CHECK(*p3.q_hat >= 0);
}

TEST_CASE("P formula equals exhaustive base-pair fraction") {
  for (auto& cg : {pgl2_pairs(7), a5_deg6()}) {
    const PermutationGroup& l = cg.group;
    std::uint64_t n = l.degree();
    // row count for x = 0 is constant over x by transitivity
    std::uint64_t row = 0;
    for (Point y = 0; y < n; ++y)
      if (l.pointwise_stabilizer({0, y}).order() == 1) ++row;
    ProbabilityEstimate p = base_probability(l, 2);
    CHECK(Rational(row * n, n * n) == p.p_exact);
  }
}

TEST_CASE("orbit-stabilizer across fixtures") {
  for (auto& g : {pgl2_pairs(7).group, a5_deg6().group, holomorph_c8()}) {
    for (Point pt = 0; pt < g.degree(); pt += 3)
      CHECK(g.point_stabilizer(pt).order() * Integer(g.orbit_of(pt).size()) == g.order());
  }
}

TEST_CASE("suborbit sizes partition the domain") {
  for (auto& cg : {pgl2_pairs(7), pgl2_pairs(9), psl2_55()}) {
    PermutationGroup h = cg.group.point_stabilizer(0);
    OrbitPartition p = h.orbits();
    std::uint64_t total = 0;
    for (auto s : p.sizes) total += s;
    CHECK(total == cg.group.degree());
    RegularOrbitCount r = regular_suborbits(cg.group);
    CHECK(Integer(r.count) * r.stabilizer_order <= Integer(cg.group.degree()));
  }
}

TEST_CASE("pairs action of L2(q) for even q has a unique regular socle suborbit") {
  ConstructedGroup p8 = pairs_action(projective_family(ProjectiveFamily::psl2, 8));
  CHECK(p8.group.degree() == 36);
  CHECK(regular_suborbits(p8.group).count == 1);
  CHECK(regular_suborbits_of_subgroup(*p8.socle).count == 1);
}
