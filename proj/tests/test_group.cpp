#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "prodact/group.hpp"

using namespace prodact;

namespace {

PermutationGroup sym(std::size_t n) {
  std::vector<Point> cyc(n);
  for (Point i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  return PermutationGroup(n, {Perm::from_cycles(n, {{0, 1}}), Perm::from_images(cyc)});
}

PermutationGroup cyclic(std::size_t n) {
  std::vector<Point> cyc(n);
  for (Point i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  return PermutationGroup(n, {Perm::from_images(cyc)});
}

// PSL2(11) on the 12-point projective line, via x -> x+1 and x -> -1/x.
// Point 0 is infinity, point 1+e is the field element e.
PermutationGroup psl2_11() {
  std::vector<Point> shift(12), weyl(12);
  shift[0] = 0;
  for (Point e = 0; e < 11; ++e) shift[1 + e] = 1 + (e + 1) % 11;
  weyl[0] = 1;
  weyl[1] = 0;
  for (Point e = 1; e < 11; ++e) {
    // -1/e mod 11
    Point inv = 1;
    for (Point x = 1; x < 11; ++x)
      if ((x * e) % 11 == 1) inv = x;
    weyl[1 + e] = 1 + (11 - inv) % 11;
  }
  return PermutationGroup(12, {Perm::from_images(shift), Perm::from_images(weyl)});
}

}  // namespace

TEST_CASE("chain order: standard generators") {
  CHECK(sym(5).order() == 120);
  PermutationGroup c7 = cyclic(7);
  CHECK(c7.order() == 7);
  CHECK_FALSE(c7.contains(Perm::from_cycles(7, {{0, 1}})));
}

TEST_CASE("PSL2(11) order from element enumeration oracle") {
  PermutationGroup g = psl2_11();
  CHECK(g.order() == 660);
  // independent oracle: breadth-first closure over multiplication
  std::set<Perm> elems(g.generators().begin(), g.generators().end());
  elems.insert(Perm(12));
  std::vector<Perm> queue(elems.begin(), elems.end());
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (const Perm& g2 : g.generators()) {
      Perm p = queue[head] * g2;
      if (elems.insert(p).second) queue.push_back(p);
    }
  CHECK(elems.size() == 660);
}

TEST_CASE("chain is deterministic") {
  PermutationGroup a = sym(6), b = sym(6);
  CHECK(a.chain().base() == b.chain().base());
  auto ga = a.chain().strong_generators();
  auto gb = b.chain().strong_generators();
  REQUIRE(ga.size() == gb.size());
  for (std::size_t i = 0; i < ga.size(); ++i) CHECK(ga[i] == gb[i]);
}

TEST_CASE("orbits and transversals") {
  PermutationGroup c3 = PermutationGroup(5, {Perm::from_cycles(5, {{0, 1, 2}})});
  CHECK(c3.orbit_of(0) == std::vector<Point>{0, 1, 2});
  CHECK(c3.orbit_of(4) == std::vector<Point>{4});
  CHECK(PermutationGroup::trivial(6).orbit_of(5) == std::vector<Point>{5});
  for (auto& [pt, wit] : c3.orbit_witnesses(0)) CHECK(wit[0] == pt);
  auto all = c3.all_orbits();
  REQUIRE(all.size() == 3);
  CHECK(all[0] == std::vector<Point>{0, 1, 2});
  CHECK_THROWS_AS(c3.orbit_of(9), InvalidInput);
}

TEST_CASE("point and pointwise stabilizers") {
  PermutationGroup s5 = sym(5);
  CHECK(s5.point_stabilizer(0).order() == 24);
  CHECK(psl2_11().point_stabilizer(3).order() == 55);  // 660/12
  CHECK(s5.pointwise_stabilizer({0, 1, 2, 3}).order() == 1);
  // orbit-stabilizer on every point of a fixture
  PermutationGroup g = psl2_11();
  for (Point p = 0; p < 12; ++p)
    CHECK(g.point_stabilizer(p).order() * Integer(g.orbit_of(p).size()) == g.order());
}

TEST_CASE("setwise stabilizers") {
  PermutationGroup s4 = sym(4);
  CHECK(s4.setwise_stabilizer({0, 1}).order() == 4);
  CHECK(cyclic(4).setwise_stabilizer({0, 2}).order() == 2);
  // filter and backtrack paths agree
  Budget tiny;
  tiny.setwise_filter_bound = 1;  // force backtracking
  PermutationGroup s6 = sym(6);
  for (std::vector<Point> s : {std::vector<Point>{0, 1}, {0, 2, 4}, {1, 5}}) {
    CHECK(s6.setwise_stabilizer(s).order() == s6.setwise_stabilizer(s, tiny).order());
  }
  CHECK(s6.setwise_stabilizer({0, 1, 2}, tiny).order() == 36);
}

TEST_CASE("element enumeration and conjugacy classes") {
  PermutationGroup s3 = sym(3);
  auto elems = s3.elements(1000);
  CHECK(elems.size() == 6);
  std::set<Perm> uniq(elems.begin(), elems.end());
  CHECK(uniq.size() == 6);
  auto cc = s3.conjugacy_classes(1000);
  REQUIRE(cc.sizes.size() == 3);
  CHECK(cc.sizes == std::vector<std::uint64_t>{1, 2, 3});
  CHECK_THROWS_AS(sym(8).elements(100), OrderExceedsBound);
}

TEST_CASE("class sizes sum to order and divide it") {
  for (auto& g : {sym(4), sym(5), psl2_11()}) {
    auto cc = g.conjugacy_classes(100000);
    Integer total = 0;
    for (auto s : cc.sizes) {
      total += s;
      CHECK(g.order() % s == 0);
    }
    CHECK(total == g.order());
  }
}

TEST_CASE("PSL2(7) natural: 168 elements, 6 classes") {
  // x -> x+1 and x -> -1/x on 8 points, infinity = 0
  std::vector<Point> shift(8), weyl(8);
  shift[0] = 0;
  for (Point e = 0; e < 7; ++e) shift[1 + e] = 1 + (e + 1) % 7;
  weyl[0] = 1;
  weyl[1] = 0;
  for (Point e = 1; e < 7; ++e) {
    Point inv = 1;
    for (Point x = 1; x < 7; ++x)
      if ((x * e) % 7 == 1) inv = x;
    weyl[1 + e] = 1 + (7 - inv) % 7;
  }
  PermutationGroup g(8, {Perm::from_images(shift), Perm::from_images(weyl)});
  CHECK(g.order() == 168);
  CHECK(g.conjugacy_classes(1000).sizes.size() == 6);
}

TEST_CASE("transitivity and primitivity") {
  PermutationGroup c4 = cyclic(4);
  CHECK(c4.is_transitive());
  std::vector<Point> block;
  CHECK_FALSE(c4.is_primitive(Budget::defaults(), &block));
  CHECK(block == std::vector<Point>{0, 2});
  CHECK(sym(5).is_primitive());
  CHECK(psl2_11().is_primitive());
  PermutationGroup intrans(5, {Perm::from_cycles(5, {{0, 1}})});
  CHECK_THROWS_AS(intrans.is_primitive(), IntransitiveInput);
}

TEST_CASE("minimal degree") {
  CHECK(sym(6).minimal_degree(1000) == 2);
  CHECK(cyclic(7).minimal_degree(10) == 7);
}

TEST_CASE("membership agrees with enumerated element set") {
  PermutationGroup g = psl2_11();
  auto elems = g.elements(1000);
  std::set<Perm> in(elems.begin(), elems.end());
  // every element sifts; a random outsider does not
  for (std::size_t i = 0; i < elems.size(); i += 37) CHECK(g.contains(elems[i]));
  Perm outsider = Perm::from_cycles(12, {{0, 1}});
  CHECK(g.contains(outsider) == static_cast<bool>(in.count(outsider)));
}

TEST_CASE("solubility") {
  CHECK(sym(4).is_soluble());
  CHECK_FALSE(sym(5).is_soluble());
  CHECK(cyclic(12).is_soluble());
  CHECK_FALSE(psl2_11().is_soluble());
}

TEST_CASE("normal closure") {
  PermutationGroup s4 = sym(4);
  // closure of a double transposition is the Klein four-group
  PermutationGroup v4 = s4.normal_closure({Perm::from_cycles(4, {{0, 1}, {2, 3}})});
  CHECK(v4.order() == 4);
  PermutationGroup a4 = s4.normal_closure({Perm::from_cycles(4, {{0, 1, 2}})});
  CHECK(a4.order() == 12);
}

TEST_CASE("chain with prescribed base supports stabilizer extraction") {
  PermutationGroup g = sym(6);
  auto c = g.chain_with_base({2, 4});
  CHECK(c.base()[0] == 2);
  CHECK(c.base()[1] == 4);
  CHECK(c.order() == 720);
  CHECK(c.order_from(2) == 24);
}

TEST_CASE("known-order randomized build matches deterministic build") {
  PermutationGroup det = sym(7);
  PermutationGroup rnd(7, det.generators(), Integer(5040));
  CHECK(rnd.order() == 5040);
  CHECK(rnd.contains(Perm::from_cycles(7, {{0, 6, 3}})));
  CHECK(rnd.point_stabilizer(0).order() == 720);
}

TEST_CASE("stabilizer generator sets stay small") {
  PermutationGroup s8 = sym(8);
  PermutationGroup stab = s8.setwise_stabilizer({0, 1, 2});  // S3 x S5 of order 720
  CHECK(stab.order() == 720);
  CHECK(stab.generators().size() <= 10);
  PermutationGroup pt = s8.pointwise_stabilizer({0, 1});
  CHECK(pt.order() == 720);
  CHECK(pt.generators().size() <= 10);
}
