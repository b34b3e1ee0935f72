#include <catch2/catch_amalgamated.hpp>

#include "prodact/product.hpp"
#include "prodact/saxl.hpp"

using namespace prodact;

namespace {

ConstructedGroup psl2_55() {
  ConstructedGroup g = projective_family(ProjectiveFamily::psl2, 11);
  return apply_coset_action(g, cyclic_normalizer(g.group, 6), "N(C6)");
}

ConstructedGroup m10_45() {
  ConstructedGroup m10 = projective_family(ProjectiveFamily::m10, 9);
  PermutationGroup sd16 = cyclic_normalizer(m10.group, 8);
  REQUIRE(sd16.order() == 16);
  return apply_coset_action(m10, sd16, "N(C8)");
}

}  // namespace

TEST_CASE("M10 on 45 points: valency 32, a 2-power") {
  SaxlContext ctx = make_saxl_context(m10_45().group);
  SaxlReport rep = saxl_summary(ctx);
  CHECK(rep.r == 2);
  CHECK(rep.h_order == 16);
  CHECK(rep.valency == 32);
  CHECK((32 & 31) == 0);
  CHECK(rep.eulerian);
}

TEST_CASE("PSL2(11) degree 55: valency 24, Eulerian, diameter 2") {
  SaxlContext ctx = make_saxl_context(psl2_55().group);
  SaxlReport rep = saxl_diameter(ctx);
  CHECK(rep.r == 2);
  CHECK(rep.valency == 24);
  CHECK(rep.eulerian);
  CHECK(rep.connected);
  CHECK(rep.diameter == 2);
}

TEST_CASE("neighborhoods translate correctly") {
  SaxlContext ctx = make_saxl_context(psl2_55().group);
  for (Point v : {Point(0), Point(7), Point(33)}) {
    std::vector<Point> nb = saxl_neighborhood(ctx, v);
    CHECK(nb.size() == 24);
    // spot-check: each neighbor forms a base with v
    for (std::size_t i = 0; i < nb.size(); i += 7)
      CHECK(ctx.g.pointwise_stabilizer({v, nb[i]}).order() == 1);
  }
}

TEST_CASE("complete Saxl graph of a regular prime-order group") {
  SaxlContext ctx = make_saxl_context(cyclic_group(5));
  SaxlReport rep = saxl_diameter(ctx);
  CHECK(rep.r == 4);
  CHECK(rep.h_order == 1);
  CHECK(rep.diameter == 1);
}

TEST_CASE("no Saxl graph when the base size exceeds two") {
  // PGL2(7) on pairs has r(L) = 1 but its wreath square has none;
  // simpler: A5 on 6 points has no regular suborbit (b = 3)
  PermutationGroup a5_6 =
      coset_action(alternating_group(5), cyclic_normalizer(alternating_group(5), 5)).image;
  CHECK_THROWS_AS(make_saxl_context(a5_6), NoSaxlGraph);
}

TEST_CASE("star and star-star on the L2(q) fixtures") {
  SaxlContext c55 = make_saxl_context(psl2_55().group);
  CHECK(check_star(c55));
  CHECK(check_star_star(c55, false));
  CHECK(check_star_star(c55, true));  // brute force agrees

  ConstructedGroup p13 = pairs_action(projective_family(ProjectiveFamily::psl2, 13));
  REQUIRE(p13.group.degree() == 91);
  SaxlContext c91 = make_saxl_context(p13.group);
  CHECK(check_star(c91));
  CHECK(check_star_star(c91, false));
  CHECK(check_star_star(c91, true));

  // star-star implies star implies diameter <= 2
  SaxlReport rep = saxl_diameter(c91);
  CHECK(rep.diameter <= 2u);
}

TEST_CASE("Eulerian for base-two product-type wreath fixtures") {
  // M10/45 wr S2: val = |H| r(G) = 512, even (and a 2-power: the genuine
  // prime-power valency family)
  ConstructedGroup l45 = m10_45();
  ProductTypeGroup w = wreath_product_action(l45, symmetric_group(2));
  SaxlContext ctx = make_saxl_context(w.ambient);
  SaxlReport rep = saxl_summary(ctx);
  CHECK(rep.valency == 512);
  CHECK(rep.eulerian);
  CHECK((512 & 511) == 0);

  // PSL2(11)/55 wr C2: r(G) = 1, valency 288, Eulerian
  ProductTypeGroup w2 = wreath_product_action(psl2_55(), cyclic_group(2));
  SaxlReport rep2 = saxl_summary(make_saxl_context(w2.ambient));
  CHECK(rep2.r == 1);
  CHECK(rep2.valency == 288);
  CHECK(rep2.eulerian);
}

TEST_CASE("pairs orbit atlas for small odd q") {
  PairsOrbitAtlas a11 = psl2_pairs_orbit_atlas(11);
  CHECK(a11.regular_count == 4);  // (11+5)/4
  PairsOrbitAtlas a13 = psl2_pairs_orbit_atlas(13);
  CHECK(a13.regular_count == 5);  // (13+7)/4
  PairsOrbitAtlas a9 = psl2_pairs_orbit_atlas(9);
  CHECK(a9.regular_count == 4);  // (9+7)/4, the PGL2(9) socle check
  PairsOrbitAtlas a7 = psl2_pairs_orbit_atlas(7);
  CHECK(a7.regular_count == 3);
  // exactly two torus-adjacent orbits; the rest carry (s,t) labels
  for (auto* a : {&a11, &a13, &a9, &a7}) {
    std::uint64_t torus = 0, generic = 0;
    for (auto& o : a->orbits) {
      torus += o.torus_adjacent;
      generic += !o.torus_adjacent;
      if (!o.torus_adjacent) CHECK(o.st.has_value());
    }
    CHECK(torus == 2);
    CHECK(torus + generic == a->regular_count);
  }
  CHECK_THROWS_AS(psl2_pairs_orbit_atlas(8), InvalidInput);
}

TEST_CASE("star-star implies star implies diameter at most 2") {
  for (const char* spec : {"psl2:11/cosets:N(C6)", "m10/cosets:N(C8)", "psl2:13/pairs"}) {
    ConstructedGroup g = [&] {
      if (std::string(spec) == "psl2:11/cosets:N(C6)") return psl2_55();
      if (std::string(spec) == "m10/cosets:N(C8)") return m10_45();
      return pairs_action(projective_family(ProjectiveFamily::psl2, 13));
    }();
    SaxlContext ctx = make_saxl_context(g.group);
    bool ss = check_star_star(ctx, false);
    bool st = check_star(ctx);
    SaxlReport rep = saxl_diameter(ctx);
    if (ss) CHECK(st);
    if (st) {
      REQUIRE(rep.diameter);
      CHECK(*rep.diameter <= 2);
    }
  }
}

TEST_CASE("PGL2(7) on 28 pairs: diameter 2") {
  ConstructedGroup p7 = pairs_action(projective_family(ProjectiveFamily::pgl2, 7));
  SaxlReport rep = saxl_diameter(make_saxl_context(p7.group));
  CHECK(rep.diameter == 2);
}
