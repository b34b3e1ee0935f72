#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "prodact/base_size.hpp"
#include "prodact/descriptor.hpp"
#include "prodact/distinguishing.hpp"
#include "prodact/product.hpp"
#include "prodact/saxl.hpp"

namespace prodact {

// Bundled reproduction manifest: every row re-derives one published quantity
// from scratch and compares. A row returns the empty string on success, a
// mismatch description otherwise.
struct FixtureRow {
  std::string id;
  std::string title;
  bool heavy = false;  // minutes-scale rows (large product actions)
  std::function<std::string(const Budget&)> run;
};

namespace fixture_detail {

template <typename A, typename B>
std::string expect_eq(const std::string& what, const A& got, const B& want) {
  if (Integer(got) == Integer(want)) return "";
  std::ostringstream os;
  os << what << ": got " << got << ", want " << want;
  return os.str();
}

inline std::string expect_true(const std::string& what, bool got) {
  return got ? "" : what + ": expected true";
}

inline std::string cat(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

// r(L) and optionally r(T) for a descriptor.
inline std::string check_regular(const std::string& desc, std::uint64_t want_rl,
                                 std::optional<std::uint64_t> want_rt, const Budget& budget) {
  ConstructedGroup g = parse_group(desc, budget);
  std::string r = expect_eq(desc + " r(L)", regular_suborbits(g.group, budget).count, want_rl);
  if (!r.empty()) return r;
  if (want_rt) {
    if (!g.socle) return desc + ": no socle tracked";
    return expect_eq(desc + " r(T)", regular_suborbits_of_subgroup(*g.socle).count, *want_rt);
  }
  return "";
}

inline std::string check_reg_m(const std::string& desc, unsigned m, std::uint64_t want,
                               const Budget& budget) {
  ConstructedGroup g = parse_group(desc, budget);
  return expect_eq(desc + " reg(L," + std::to_string(m) + ")", reg_L_m(g.group, m, budget), want);
}

inline ProductTypeGroup m10_diag_square(const Budget& budget) {
  ConstructedGroup l36 = parse_group("m10/cosets:N(C5)", budget);
  Perm a = l36.outer_element("a");
  return product_type_subgroup(l36, symmetric_group(2), {{{a, a}, Perm(2)}}, budget);
}

inline ProductTypeGroup pgammal9_pairs_square(const Budget& budget) {
  ConstructedGroup l45 = parse_group("pgammal2:9/pairs", budget);
  Perm a = l45.outer_element("a"), b = l45.outer_element("b");
  return product_type_subgroup(l45, symmetric_group(2),
                               {{{a, a}, Perm(2)}, {{b, b}, Perm(2)}}, budget);
}

inline ProductTypeGroup pgl2_11_cube(bool diagonal, const Budget& budget) {
  ConstructedGroup l55 = parse_group("pgl2:11/cosets:N(V4)", budget);
  Perm a = l55.outer_element("a");
  Perm id(l55.group.degree());
  std::vector<Perm> tuple = diagonal ? std::vector<Perm>{a, a, a} : std::vector<Perm>{a, a, id};
  return product_type_subgroup(l55, symmetric_group(3), {{tuple, Perm(3)}}, budget);
}

}  // namespace fixture_detail

inline std::vector<FixtureRow> fixture_manifest() {
  using namespace fixture_detail;
  std::vector<FixtureRow> rows;
  auto add = [&](std::string id, std::string title, std::function<std::string(const Budget&)> f,
                 bool heavy = false) {
    rows.push_back({std::move(id), std::move(title), heavy, std::move(f)});
  };

  // --- regular suborbit table rows ---------------------------------------
  add("r.pgl2_7_pairs", "PGL2(7) on 28 pairs: r(L)=1, r(T)=3", [](const Budget& b) {
    return check_regular("pgl2:7/pairs", 1, 3, b);
  });
  add("r.pgl2_9_pairs", "PGL2(9) on 45 pairs: r(L)=1, r(T)=4", [](const Budget& b) {
    return check_regular("pgl2:9/pairs", 1, 4, b);
  });
  add("r.pgl2_11_pairs", "PGL2(11) on 66 pairs: r(L)=1, r(T)=4", [](const Budget& b) {
    return check_regular("pgl2:11/pairs", 1, 4, b);
  });
  add("r.pgl2_11_deg55", "PGL2(11) on 55 cosets of S4: r(L)=1, r(T)=3", [](const Budget& b) {
    ConstructedGroup g = parse_group("pgl2:11/cosets:N(V4)", b);
    return cat({expect_eq("degree", g.group.degree(), 55),
                check_regular("pgl2:11/cosets:N(V4)", 1, 3, b)});
  });
  add("r.psl2_11_deg55", "PSL2(11) of degree 55: r=2", [](const Budget& b) {
    ConstructedGroup g = parse_group("psl2:11/cosets:N(C6)", b);
    return cat({expect_eq("degree", g.group.degree(), 55),
                expect_eq("r", regular_suborbits(g.group, b).count, 2)});
  });
  add("r.psl2_13_deg78", "PSL2(13) of degree 78: r=3", [](const Budget& b) {
    ConstructedGroup g = parse_group("psl2:13/cosets:N(C7)", b);
    return cat({expect_eq("degree", g.group.degree(), 78),
                expect_eq("r", regular_suborbits(g.group, b).count, 3)});
  });
  add("r.m10_deg36", "M10 of degree 36 (5:4): r(L)=1, r(T)=2", [](const Budget& b) {
    ConstructedGroup g = parse_group("m10/cosets:N(C5)", b);
    return cat({expect_eq("degree", g.group.degree(), 36),
                check_regular("m10/cosets:N(C5)", 1, 2, b)});
  });
  add("r.m10_deg45", "M10 of degree 45 (SD16): r=2", [](const Budget& b) {
    ConstructedGroup g = parse_group("m10/cosets:N(C8)", b);
    return cat({expect_eq("degree", g.group.degree(), 45),
                expect_eq("r", regular_suborbits(g.group, b).count, 2)});
  });
  add("r.a5_deg10", "A5 of degree 10 (D6 cosets): r=1", [](const Budget& b) {
    ConstructedGroup g = parse_group("a:5/cosets:N(C3)", b);
    return cat({expect_eq("degree", g.group.degree(), 10),
                expect_eq("r", regular_suborbits(g.group, b).count, 1)});
  });

  // --- reg(L, m) table rows ----------------------------------------------
  add("reg.a5_a4", "A5 natural (J=A4): reg(L,3)=1",
      [](const Budget& b) { return check_reg_m("a:5", 3, 1, b); });
  add("reg.a5_d10", "A5 on 6 points (J=D10): reg(L,3)=2",
      [](const Budget& b) { return check_reg_m("a:5@6", 3, 2, b); });
  add("reg.s5_s3xs2", "S5 on 10 points (J=S3xS2): reg(L,3)=4",
      [](const Budget& b) { return check_reg_m("s:5/cosets:stabset(0,1,2)", 3, 4, b); });
  add("reg.s5_f20", "S5 on 6 points (J=5:4): reg(L,3)=1",
      [](const Budget& b) { return check_reg_m("s:5/cosets:N(C5)", 3, 1, b); });
  add("reg.psl2_7_p1", "PSL2(7) on 8 points (J=P1): reg(L,3)=2",
      [](const Budget& b) { return check_reg_m("psl2:7", 3, 2, b); });
  add("reg.pgl2_7_p1", "PGL2(7) on 8 points (J=P1): reg(L,3)=1",
      [](const Budget& b) { return check_reg_m("pgl2:7", 3, 1, b); });
  add("reg.s5_s4", "S5 natural (J=S4): reg(L,4)=1",
      [](const Budget& b) { return check_reg_m("s:5", 4, 1, b); });
  add("reg.pgammal2_8", "PGammaL2(8) on 9 points: reg(L,4)=2",
      [](const Budget& b) { return check_reg_m("pgammal2:8", 4, 2, b); });
  add("reg.pgammal2_16", "PGammaL2(16) on 17 points: reg(L,4)=3",
      [](const Budget& b) { return check_reg_m("pgammal2:16", 4, 3, b); });
  add("reg.pgammal2_9", "PGammaL2(9) on 10 points: reg(L,4)=3",
      [](const Budget& b) { return check_reg_m("pgammal2:9", 4, 3, b); });

  // --- distinguishing data -------------------------------------------------
  add("dist.sym_alt", "D(S_n)=n and D(A_n)=n-1 for n <= 8", [](const Budget& b) {
    for (unsigned n = 2; n <= 8; ++n) {
      if (distinguishing_number(symmetric_group(n), b) != n)
        return "D(S_" + std::to_string(n) + ") != " + std::to_string(n);
      if (n >= 3 && distinguishing_number(alternating_group(n), b) != n - 1)
        return "D(A_" + std::to_string(n) + ") != " + std::to_string(n - 1);
    }
    return std::string{};
  });
  add("dist.a5_6", "A5 on 6 points: D=3, t3=10", [](const Budget& b) {
    ConstructedGroup g = parse_group("a:5@6", b);
    return cat({expect_eq("D", distinguishing_number(g.group, b), 3),
                expect_eq("t3", count_tm(g.group, 3, b), 10)});
  });
  add("dist.pgammal2_8", "PGammaL2(8) on 9 points: D=3, t3=252", [](const Budget& b) {
    ConstructedGroup g = parse_group("pgammal2:8", b);
    return cat({expect_eq("D", distinguishing_number(g.group, b), 3),
                expect_eq("t3", count_tm(g.group, 3, b), 252)});
  });
  add("dist.agl3_2", "AGL3(2) on 8 points: D=4, t4=56", [](const Budget& b) {
    ConstructedGroup g = parse_group("agl:3:2", b);
    return cat({expect_eq("D", distinguishing_number(g.group, b), 4),
                expect_eq("t4", count_tm(g.group, 4, b), 56)});
  });
  add("dist.holc8", "holomorph of C8: t2=16", [](const Budget& b) {
    return expect_eq("t2", count_tm(holomorph_c8(), 2, b), 16);
  });
  add("dist.s2wrc2", "S2 wr C2 on 4 points: D=3", [](const Budget& b) {
    ConstructedGroup g = parse_any_group("wrimp:s:2|c:2", b);
    return expect_eq("D", distinguishing_number(g.group, b), 3);
  });
  add("dist.c5_stirling", "C5: t_m = S(5,m) for m=2..5", [](const Budget& b) {
    PermutationGroup c5 = cyclic_group(5);
    for (unsigned m = 2; m <= 5; ++m)
      if (Integer(count_tm(c5, m, b)) != stirling2(5, m))
        return "t_" + std::to_string(m) + " != S(5," + std::to_string(m) + ")";
    return std::string{};
  });

  // --- wreath formula vs brute force ---------------------------------------
  add("wr.psl2_11_c2", "PSL2(11)/55 wr C2: formula r(G)=1 = brute force", [](const Budget& b) {
    ConstructedGroup l = parse_group("psl2:11/cosets:N(C6)", b);
    WreathAnalysis wa = analyze_wreath(l.group, cyclic_group(2), b);
    ProductTypeGroup w = wreath_product_action(l, cyclic_group(2), b);
    std::uint64_t brute = regular_suborbits(w.ambient, b).count;
    return cat({expect_eq("formula", wa.r_wreath, 1), expect_eq("brute", brute, 1)});
  });
  add("wr.psl2_11_s2", "PSL2(11)/55 wr S2: formula r(G)=1 = brute force", [](const Budget& b) {
    ConstructedGroup l = parse_group("psl2:11/cosets:N(C6)", b);
    WreathAnalysis wa = analyze_wreath(l.group, symmetric_group(2), b);
    ProductTypeGroup w = wreath_product_action(l, symmetric_group(2), b);
    std::uint64_t brute = regular_suborbits(w.ambient, b).count;
    return cat({expect_eq("formula", wa.r_wreath, 1), expect_eq("brute", brute, 1)});
  });
  add(
      "wr.psl2_13_c3", "PSL2(13)/78 wr C3 on 474552 points: formula r(G)=8 = brute force",
      [](const Budget& b) {
        ConstructedGroup l = parse_group("psl2:13/cosets:N(C7)", b);
        WreathAnalysis wa = analyze_wreath(l.group, cyclic_group(3), b);
        std::string r1 = expect_eq("formula", wa.r_wreath, 8);
        if (!r1.empty()) return r1;
        ProductTypeGroup w = wreath_product_action(l, cyclic_group(3), b);
        std::uint64_t brute = regular_suborbits(w.ambient, b).count;
        return cat({expect_eq("brute", brute, 8),
                    expect_eq("cyclic specialization", r_wreath_cyclic_prime(3, 3), 8)});
      },
      /*heavy=*/true);

  // --- base sizes of the named product groups ------------------------------
  add("b.pgl2_7_pairs_wr_c2", "b(PGL2(7)/pairs wr C2) = 3", [](const Budget& b) {
    ConstructedGroup l = parse_group("pgl2:7/pairs", b);
    ProductTypeGroup w = wreath_product_action(l, cyclic_group(2), b);
    BaseResult res = base_size_exact(w.ambient, b);
    return cat({expect_true("exact", res.exact), expect_eq("b", res.b, 3)});
  });
  add("b.m10_diag", "b(<T^2,(a,a),S2> over M10/36) = 3", [](const Budget& b) {
    ProductTypeGroup g = fixture_detail::m10_diag_square(b);
    BaseResult res = base_size_exact(g.ambient, b);
    return cat({expect_true("exact", res.exact), expect_eq("b", res.b, 3)});
  });
  add("b.pgammal9_square", "PGammaL2(9)-pairs square: witness base of size 2", [](const Budget& b) {
    ProductTypeGroup g = fixture_detail::pgammal9_pairs_square(b);
    RegularOrbitCount r = regular_suborbits(g.ambient, b);
    if (r.count < 1) return std::string("no regular suborbit found");
    Point witness = r.orbit_reps.front();
    if (g.ambient.pointwise_stabilizer({0, witness}).order() != 1)
      return std::string("witness pair is not a base");
    BaseResult res = base_size_exact(g.ambient, b);
    return expect_eq("b", res.b, 2);
  });
  add(
      "b.pgl2_11_cube_diag", "b(<T^3,(a,a,a),S3> over PGL2(11)/55) = 3 on 166375 points",
      [](const Budget& b) {
        ProductTypeGroup g = fixture_detail::pgl2_11_cube(true, b);
        BaseResult res = base_size_exact(g.ambient, b);
        return cat({expect_true("exact", res.exact), expect_eq("b", res.b, 3)});
      },
      /*heavy=*/true);
  add(
      "b.pgl2_11_cube_mixed", "b(<T^3,(a,a,1),S3> over PGL2(11)/55) = 3 on 166375 points",
      [](const Budget& b) {
        ProductTypeGroup g = fixture_detail::pgl2_11_cube(false, b);
        BaseResult res = base_size_exact(g.ambient, b);
        return cat({expect_true("exact", res.exact), expect_eq("b", res.b, 3)});
      },
      /*heavy=*/true);

  // --- power-set sweeps ----------------------------------------------------
  add("x.s2_unique", "(2, S2): unique regular orbit on the power set", [](const Budget& b) {
    return expect_eq("count", power_set_regular_orbits(symmetric_group(2), b).regular_on_power_set,
                     1);
  });
  add("x.o4m16", "(16, 2^4:O4^-(2)): 0 regular orbits on X, 2 on the power set, D=2",
      [](const Budget& b) {
        PermutationGroup g = affine_o4_minus_2();
        PowerSetOrbits ps = power_set_regular_orbits(g, b);
        return cat({expect_eq("on X", ps.regular_on_x, 0),
                    expect_eq("on power set", ps.regular_on_power_set, 2),
                    expect_eq("D", distinguishing_number(g, b), 2)});
      });

  // --- Saxl graph rows -------------------------------------------------------
  add("saxl.m10_45", "val(M10/45) = 32, a 2-power", [](const Budget& b) {
    SaxlContext ctx = make_saxl_context(parse_group("m10/cosets:N(C8)", b).group, b);
    SaxlReport rep = saxl_summary(ctx);
    bool two_power = rep.valency > 0 && (rep.valency & (rep.valency - 1)) == 0;
    return cat({expect_eq("valency", rep.valency, 32), expect_true("2-power", two_power)});
  });
  add("saxl.eulerian", "Eulerian for the base-two wreath fixtures", [](const Budget& b) {
    for (const char* spec : {"m10/cosets:N(C8)", "psl2:11/cosets:N(C6)", "psl2:13/pairs"}) {
      ConstructedGroup l = parse_group(spec, b);
      ProductTypeGroup w = wreath_product_action(l, symmetric_group(2), b);
      SaxlReport rep = saxl_summary(make_saxl_context(w.ambient, b));
      if (!rep.eulerian) return std::string(spec) + " wr S2: not Eulerian";
    }
    return std::string{};
  });
  add("saxl.starstar_55", "PSL2(11)/55: (star-star) via double cosets = brute force = true",
      [](const Budget& b) {
        SaxlContext ctx = make_saxl_context(parse_group("psl2:11/cosets:N(C6)", b).group, b);
        bool dc = check_star_star(ctx, false), bf = check_star_star(ctx, true);
        return cat({expect_true("double-coset method", dc), expect_true("brute force", bf),
                    expect_true("agreement", dc == bf)});
      });
  add("saxl.starstar_91", "PSL2(13)/91 pairs: (star-star) via double cosets = brute force = true",
      [](const Budget& b) {
        SaxlContext ctx = make_saxl_context(parse_group("psl2:13/pairs", b).group, b);
        bool dc = check_star_star(ctx, false), bf = check_star_star(ctx, true);
        return cat({expect_true("double-coset method", dc), expect_true("brute force", bf),
                    expect_true("agreement", dc == bf)});
      });
  add("saxl.diameter_55", "PSL2(11)/55: diameter 2", [](const Budget& b) {
    SaxlContext ctx = make_saxl_context(parse_group("psl2:11/cosets:N(C6)", b).group, b);
    SaxlReport rep = saxl_diameter(ctx);
    if (!rep.diameter) return std::string("graph disconnected");
    return expect_eq("diameter", *rep.diameter, 2);
  });
  add("saxl.atlas", "L2(q) pairs atlas: (q+a)/4 regular orbits for q in {7,9,11,13}",
      [](const Budget& b) {
        for (std::uint32_t q : {7u, 9u, 11u, 13u}) {
          PairsOrbitAtlas atlas = psl2_pairs_orbit_atlas(q, b);
          std::uint64_t want = (q + (q % 4 == 1 ? 7 : 5)) / 4;
          if (atlas.regular_count != want)
            return "q=" + std::to_string(q) + ": atlas count mismatch";
        }
        return std::string{};
      });

  return rows;
}

struct FixtureSummary {
  int passed = 0;
  int failed = 0;
  int skipped = 0;
};

inline FixtureSummary run_fixtures(std::ostream& out, const Budget& budget,
                                   const std::string& filter = "", bool include_heavy = true) {
  FixtureSummary sum;
  for (const FixtureRow& row : fixture_manifest()) {
    if (!filter.empty() && row.id.find(filter) == std::string::npos &&
        row.title.find(filter) == std::string::npos)
      continue;
    if (row.heavy && !include_heavy) {
      out << "[SKIP] " << row.id << "  " << row.title << "\n";
      ++sum.skipped;
      continue;
    }
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    try {
      detail = row.run(budget);
    } catch (const Error& e) {
      detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (detail.empty()) {
      out << "[PASS] " << row.id << "  " << row.title << "  (" << ms << " ms)\n";
      ++sum.passed;
    } else {
      out << "[FAIL] " << row.id << "  " << row.title << "  (" << ms << " ms): " << detail
          << "\n";
      ++sum.failed;
    }
  }
  return sum;
}

}  // namespace prodact
