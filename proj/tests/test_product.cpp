#include <catch2/catch_amalgamated.hpp>

#include "prodact/product.hpp"

using namespace prodact;

namespace {

ConstructedGroup psl2_55() {
  ConstructedGroup g = projective_family(ProjectiveFamily::psl2, 11);
  return apply_coset_action(g, cyclic_normalizer(g.group, 6), "N(C6)");
}

ConstructedGroup pgl2_pairs(std::uint32_t q) {
  return pairs_action(projective_family(ProjectiveFamily::pgl2, q));
}

ConstructedGroup a5_deg6() {
  PermutationGroup a5 = alternating_group(5);
  ConstructedGroup cg{a5, a5, {}, "a:5"};
  return apply_coset_action(cg, cyclic_normalizer(a5, 5), "N(C5)");
}

}  // namespace

TEST_CASE("bc_predict on the worked cases") {
  // r(PSL2(11)/55) = 2 and D(C2) = 2: predicted b = 2
  BcPrediction p1 = bc_predict(psl2_55().group, cyclic_group(2));
  CHECK(p1.D == 2);
  CHECK(p1.predicted_b == 2);

  // r(PGL2(7)/pairs) = 1 < 2: predicted b = 3
  BcPrediction p2 = bc_predict(pgl2_pairs(7).group, cyclic_group(2));
  CHECK(p2.predicted_b == 3);
  CHECK(p2.reg_by_m.at(2) == 1);

  // A5 on 6 points: b(L) = 3, reg(L,3) = 2 >= D(S2) = 2: predicted b = 3
  BcPrediction p3 = bc_predict(a5_deg6().group, symmetric_group(2));
  CHECK(p3.predicted_b == 3);
}

TEST_CASE("wreath formula specializations") {
  // rL = 2, P = S2: C(2, 2) = 1
  CHECK(r_wreath_symmetric(2, 2) == 1);
  // rL = 2, P = C3: (8 - 2)/3 = 2; rL = 3: (27 - 3)/3 = 8
  CHECK(r_wreath_cyclic_prime(2, 3) == 2);
  CHECK(r_wreath_cyclic_prime(3, 3) == 8);
  // rL = 3, P = A5 on 6 points: (1/60) 3! C(3,3) t_3 = 1
  PermutationGroup a5_6 = a5_deg6().group;
  DistinguishingProfile prof = distinguishing_profile(a5_6);
  CHECK(r_wreath_formula(3, 6, a5_6.order(), prof.D, prof.t) == 1);
}

TEST_CASE("specializations agree with the general formula") {
  for (std::uint64_t r : {1ull, 2ull, 3ull, 5ull, 7ull}) {
    for (unsigned k : {2u, 3u}) {
      PermutationGroup sk = symmetric_group(k);
      DistinguishingProfile ps = distinguishing_profile(sk);
      CHECK(r_wreath_formula(r, k, sk.order(), ps.D, ps.t) == r_wreath_symmetric(r, k));
    }
    for (unsigned k : {2u, 3u, 5u}) {
      PermutationGroup ck = cyclic_group(k);
      DistinguishingProfile pc = distinguishing_profile(ck);
      CHECK(r_wreath_formula(r, k, ck.order(), pc.D, pc.t) == r_wreath_cyclic_prime(r, k));
    }
  }
}

TEST_CASE("wreath analysis ties the criteria together") {
  WreathAnalysis wa = analyze_wreath(psl2_55().group, cyclic_group(2));
  CHECK(wa.rL == 2);
  CHECK(wa.D == 2);
  CHECK(wa.predicted_b == 2);
  CHECK(wa.r_wreath == 1);
}

TEST_CASE("unique regular suborbit test") {
  // r(L) = k with P = S_k: unique (classified case 1)
  UniqueRegularVerdict v1 = unique_regular_suborbit_test(psl2_55().group, symmetric_group(2));
  CHECK(v1.unique);
  CHECK(v1.classified_case == 1);

  // r(L) = 3 with P = A5 on 6 points: classified case 2
  PermutationGroup l78 = [] {
    ConstructedGroup g = projective_family(ProjectiveFamily::psl2, 13);
    return apply_coset_action(g, cyclic_normalizer(g.group, 7), "N(C7)").group;
  }();
  CHECK(l78.degree() == 78);
  CHECK(regular_suborbits(l78).count == 3);
  UniqueRegularVerdict v2 = unique_regular_suborbit_test(l78, a5_deg6().group);
  CHECK(v2.unique);
  CHECK(v2.classified_case == 2);

  // r(L) = 3 with P = S3: t_3 = 1 = 6/3!, unique
  UniqueRegularVerdict v3 = unique_regular_suborbit_test(l78, symmetric_group(3));
  CHECK(v3.unique);
  CHECK(v3.tD == 1);

  // r(L) = 2 with P = C2 = S2: r(L) != D(P) would fail; here D = 2 = r, unique
  UniqueRegularVerdict v4 = unique_regular_suborbit_test(psl2_55().group, cyclic_group(2));
  CHECK(v4.unique);

  // not unique: r(L) = 1 < D
  UniqueRegularVerdict v5 = unique_regular_suborbit_test(pgl2_pairs(7).group, cyclic_group(2));
  CHECK_FALSE(v5.unique);
}

TEST_CASE("pair orbit labels and the base-pair test") {
  // D5 on 5 points: two regular suborbits, so base pairs exist for D5 wr C2.
  PermutationGroup d5 = dihedral_group(5);
  PairOrbitLabels labels = pair_orbit_labels(d5);
  PermutationGroup c2 = cyclic_group(2);
  // (0,1) and (0,2) lie in distinct regular D5-orbits on Gamma^2, so the
  // label partition is {{0},{1}} and distinguishes C2
  CHECK(product_base_pair_test(labels, c2, {0, 0}, {1, 2}));
  // alpha = beta: coordinate pairs are not bases
  CHECK_FALSE(product_base_pair_test(labels, c2, {0, 1}, {0, 1}));
  // both coordinates in the same regular orbit: partition has one block
  CHECK_FALSE(product_base_pair_test(labels, c2, {0, 0}, {1, 1}));

  // S3 is 2-transitive, so all off-diagonal pairs share one L-orbit and no
  // pair can be a base for S3 wr S2 (r(L) = 1 < D(S2))
  PairOrbitLabels s3labels = pair_orbit_labels(symmetric_group(3));
  CHECK_FALSE(product_base_pair_test(s3labels, symmetric_group(2), {0, 0}, {1, 2}));
}

TEST_CASE("base-pair test matches two-point stabilizers exhaustively") {
  // S3 wr S2 on 9 points and D5 wr C2 on 25 points
  struct Case {
    PermutationGroup l;
    PermutationGroup p;
  };
  std::vector<Case> cases;
  cases.push_back({symmetric_group(3), symmetric_group(2)});
  cases.push_back({dihedral_group(5), cyclic_group(2)});
  for (auto& c : cases) {
    ConstructedGroup lc{c.l, std::nullopt, {}, "L"};
    ProductTypeGroup w = wreath_product_action(lc, c.p);
    PairOrbitLabels labels = pair_orbit_labels(c.l);
    std::vector<Point> av, bv;
    for (Point a = 0; a < w.space.total; ++a)
      for (Point b = 0; b < w.space.total; ++b) {
        w.space.decode(a, av);
        w.space.decode(b, bv);
        bool lemma = product_base_pair_test(labels, c.p, av, bv);
        bool direct = w.ambient.pointwise_stabilizer({a, b}).order() == 1;
        REQUIRE(lemma == direct);
      }
  }
}

TEST_CASE("formula equals brute-force r(G) at desk scale") {
  // L = PSL2(11)/55 with P = C2 on 3025 points
  ConstructedGroup l55 = psl2_55();
  ProductTypeGroup w = wreath_product_action(l55, cyclic_group(2));
  RegularOrbitCount brute = regular_suborbits(w.ambient);
  WreathAnalysis wa = analyze_wreath(l55.group, cyclic_group(2));
  CHECK(Integer(brute.count) == wa.r_wreath);
  CHECK(brute.count == 1);
}

TEST_CASE("sufficient base-two certificate") {
  // PGL2(13) on the cosets of N(V4) = S4: r(L) = 2, r(T) = 6, |L:T| = 2.
  // For G = <T^2, (a,a), S2>: tau = 0, m = 1; conditions hold, so b(G) = 2
  // with a verified witness.
  ConstructedGroup pgl13 = projective_family(ProjectiveFamily::pgl2, 13);
  PermutationGroup s4sub = klein_normalizer(pgl13.group, &*pgl13.socle);
  CHECK(s4sub.order() == 24);
  ConstructedGroup l91 = apply_coset_action(pgl13, s4sub, "N(V4)");
  CHECK(l91.group.degree() == 91);
  CHECK(regular_suborbits(l91.group).count == 2);
  CHECK(regular_suborbits_of_subgroup(*l91.socle).count == 6);

  Perm a = l91.outer_element("a");
  ProductTypeGroup g = product_type_subgroup(l91, symmetric_group(2), {{{a, a}, Perm(2)}});
  REQUIRE(g.tau == 0);
  Base2Certificate cert = sufficient_base2_general(g);
  CHECK(cert.verdict == Base2Certificate::Verdict::guaranteed);
  CHECK(cert.m_used == 1);
  REQUIRE(cert.witness);
  CHECK(g.ambient.pointwise_stabilizer({cert.witness->first, cert.witness->second}).order() == 1);

  // M10 case: r(T) = 2 = |L:T| fails condition (ii); verdict unknown
  ConstructedGroup m10 = projective_family(ProjectiveFamily::m10, 9);
  ConstructedGroup l36 = apply_coset_action(m10, cyclic_normalizer(m10.group, 5), "N(C5)");
  Perm am = l36.outer_element("a");
  ProductTypeGroup gm = product_type_subgroup(l36, symmetric_group(2), {{{am, am}, Perm(2)}});
  Base2Certificate cm = sufficient_base2_general(gm);
  CHECK(cm.verdict == Base2Certificate::Verdict::unknown);
}

TEST_CASE("guaranteed certificates imply the wreath criterion") {
  // when sufficient_base2_general guarantees b = 2 for the full wreath,
  // bc_predict must predict 2 as well
  ConstructedGroup l55 = psl2_55();
  ProductTypeGroup w = wreath_product_action(l55, symmetric_group(2));
  Base2Certificate cert = sufficient_base2_general(w);
  if (cert.verdict == Base2Certificate::Verdict::guaranteed)
    CHECK(bc_predict(l55.group, symmetric_group(2)).predicted_b == 2);
}

TEST_CASE("structural checks on the M10 diagonal subgroup") {
  ConstructedGroup m10 = projective_family(ProjectiveFamily::m10, 9);
  ConstructedGroup l36 = apply_coset_action(m10, cyclic_normalizer(m10.group, 5), "N(C5)");
  Perm a = l36.outer_element("a");
  ProductTypeGroup g = product_type_subgroup(l36, symmetric_group(2), {{{a, a}, Perm(2)}});
  StructuralReport rep = structural_checks(g);
  CHECK(rep.bL == 2);
  CHECK(rep.bG == 3);
  CHECK(rep.rT == 2);
  CHECK(rep.all_passed());
  // the swap-pairing bound must have fired: P = S_{r(T)}, |L:T| = 2, tau = 0
  bool fired = false;
  for (auto& c : rep.checks)
    if (c.name == "swap-pairing-lower-bound") fired = c.applicable;
  CHECK(fired);
}

TEST_CASE("structural checks on a full wreath") {
  ConstructedGroup p7 = pgl2_pairs(7);
  ProductTypeGroup w = wreath_product_action(p7, cyclic_group(2));
  StructuralReport rep = structural_checks(w);
  CHECK(rep.bL == 2);
  CHECK(rep.bG == 3);  // r(L) = 1 < D(P) = 2
  CHECK(rep.all_passed());
  for (auto& c : rep.checks)
    if (c.name == "wreath-dichotomy") CHECK(c.applicable);
}

TEST_CASE("the suborbit sum is even whenever D(P) >= 2") {
  // each summand m! C(r,m) t_m with m >= 2 already carries an even factor,
  // so r(G) |P| is even: the formula-level Eulerian statement
  for (const char* pd : {"c:2", "s:3", "c:5", "a:4"}) {
    PermutationGroup p =
        pd[0] == 'c' ? cyclic_group(pd[2] - '0')
                     : (pd[0] == 's' ? symmetric_group(pd[2] - '0') : alternating_group(4));
    DistinguishingProfile prof = distinguishing_profile(p);
    if (prof.D < 2) continue;
    for (std::uint64_t r : {2ull, 3ull, 6ull, 9ull}) {
      Integer sum = r_wreath_formula(r, static_cast<std::uint32_t>(p.degree()), p.order(),
                                     prof.D, prof.t) *
                    p.order();
      CHECK(sum % 2 == 0);
    }
  }
}

TEST_CASE("unique regular suborbit: the remaining classified cases") {
  // case 3: P = PGammaL2(8) on 9 points with r(L) = 3
  PermutationGroup l78 = [] {
    ConstructedGroup g = projective_family(ProjectiveFamily::psl2, 13);
    return apply_coset_action(g, cyclic_normalizer(g.group, 7), "N(C7)").group;
  }();
  PermutationGroup p9 = projective_family(ProjectiveFamily::pgammal2, 8).group;
  UniqueRegularVerdict v3 = unique_regular_suborbit_test(l78, p9);
  CHECK(v3.unique);
  CHECK(v3.classified_case == 3);

  // case 4: P = AGL3(2) on 8 points with r(L) = 4 (PSL2(17) of degree 136)
  PermutationGroup l136 = [] {
    ConstructedGroup g = projective_family(ProjectiveFamily::psl2, 17);
    return apply_coset_action(g, cyclic_normalizer(g.group, 9), "N(C9)").group;
  }();
  CHECK(l136.degree() == 136);
  CHECK(regular_suborbits(l136).count == 4);
  UniqueRegularVerdict v4 = unique_regular_suborbit_test(l136, affine_general_linear(3, 2));
  CHECK(v4.unique);
  CHECK(v4.classified_case == 4);
}

TEST_CASE("criterion prediction matches the explicit base size") {
  struct Case {
    ConstructedGroup l;
    PermutationGroup p;
  };
  std::vector<Case> cases;
  cases.push_back({psl2_55(), cyclic_group(2)});
  cases.push_back({pgl2_pairs(7), cyclic_group(2)});
  cases.push_back({{dihedral_group(5), std::nullopt, {}, "d:5"}, cyclic_group(2)});
  cases.push_back({{symmetric_group(3), std::nullopt, {}, "s:3"}, symmetric_group(2)});
  for (auto& c : cases) {
    BcPrediction pred = bc_predict(c.l.group, c.p);
    ProductTypeGroup w = wreath_product_action(c.l, c.p);
    CHECK(pred.predicted_b == base_size_exact(w.ambient).b);
  }
}
