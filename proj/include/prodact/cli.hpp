#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prodact/descriptor.hpp"
#include "prodact/fixtures.hpp"
#include "prodact/group_io.hpp"
#include "prodact/product.hpp"
#include "prodact/saxl.hpp"

namespace prodact {
namespace cli {

using Json = nlohmann::ordered_json;

struct Session {
  Budget budget;
  bool json = false;
  unsigned threads = 1;  // worker cap; current operations run on one thread
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  Json report = Json::object();
  Json results = Json::object();
  Json methods = Json::object();

  void group_info(const std::string& desc, const PermutationGroup& g) {
    Json jg;
    jg["descriptor"] = desc;
    jg["degree"] = g.degree();
    jg["order"] = g.order().str();
    report["group"] = jg;
  }

  void result(const std::string& key, Json value, const std::string& method) {
    results[key] = std::move(value);
    methods[key] = method;
  }

  int finish(std::ostream& out, const std::vector<std::string>& lines) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (json) {
      report["results"] = results;
      report["methods"] = methods;
      report["elapsed_ms"] = ms;
      out << report.dump(2) << "\n";
    } else {
      for (const auto& l : lines) out << l << "\n";
    }
    return 0;
  }
};

inline std::string points_str(const std::vector<Point>& pts) {
  std::string s = "(";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(pts[i]);
  }
  return s + ")";
}

inline std::vector<Perm> parse_extra_tuple(const ConstructedGroup& l, const std::string& spec,
                                           std::size_t k) {
  std::vector<Perm> tuple;
  for (const std::string& sym : detail::split(spec, ',')) {
    if (sym == "1")
      tuple.push_back(Perm(l.group.degree()));
    else if (sym == "a" || sym == "b")
      tuple.push_back(l.outer_element(sym));
    else if (sym == "ab")
      tuple.push_back(l.outer_element("a") * l.outer_element("b"));
    else
      throw InvalidInput("extra tuple symbols are 1, a, b, ab; got '" + sym + "'");
  }
  if (tuple.size() != k)
    throw InvalidInput("extra tuple must have one entry per coordinate (" + std::to_string(k) +
                       ")");
  return tuple;
}

inline int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"prodact: base sizes, regular suborbits, distinguishing partitions and Saxl "
               "graphs of finite permutation groups"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Session s;

  std::uint64_t max_order = s.budget.max_enumerate, max_points = s.budget.max_points;
  app.add_flag("--json", s.json, "machine-readable report");
  app.add_option("--max-order", max_order, "element enumeration budget");
  app.add_option("--max-points", max_points, "explicit product action point budget");
  app.add_option("--threads", s.threads, "worker cap (computations are deterministic)")
      ->check(CLI::PositiveNumber);

  std::string group_desc, l_desc, p_desc, save_path, dot_path, filter;
  unsigned m_arg = 2, m_max = 8, depth_cap = 0;
  bool socle = false, want_diameter = false, want_star = false, want_star_star = false;
  bool want_base = false, want_checks = false, want_cert = false, skip_heavy = false;
  std::vector<std::string> extras;

  CLI::App* c_construct = app.add_subcommand("construct", "build a group and report its shape");
  c_construct->add_option("--group", group_desc)->required();
  c_construct->add_option("--save", save_path, "write the generator file");

  CLI::App* c_info = app.add_subcommand("info", "orbits, transitivity, primitivity");
  c_info->add_option("--group", group_desc)->required();

  CLI::App* c_base = app.add_subcommand("base-size", "exact base size with witness");
  c_base->add_option("--group", group_desc)->required();
  c_base->add_option("--depth-cap", depth_cap);

  CLI::App* c_reg = app.add_subcommand("regular", "regular suborbits r(G) (and r(T))");
  c_reg->add_option("--group", group_desc)->required();
  c_reg->add_flag("--socle", socle, "also count regular socle suborbits");

  CLI::App* c_regm = app.add_subcommand("reg", "reg(L, m): regular orbits on Gamma^m");
  c_regm->add_option("--group", group_desc)->required();
  c_regm->add_option("--m", m_arg)->required();

  CLI::App* c_dist = app.add_subcommand("dist", "distinguishing number (and t_m profile)");
  c_dist->add_option("--group", group_desc)->required();

  CLI::App* c_tm = app.add_subcommand("tm", "number of distinguishing partitions with m parts");
  c_tm->add_option("--group", group_desc)->required();
  c_tm->add_option("--m", m_arg)->required();

  CLI::App* c_wp = app.add_subcommand("wreath-predict", "base size of L wr P by the criterion");
  c_wp->add_option("--L", l_desc)->required();
  c_wp->add_option("--P", p_desc)->required();
  c_wp->add_option("--m-max", m_max);

  CLI::App* c_wv = app.add_subcommand("wreath-verify", "r(L wr P): formula vs brute force");
  c_wv->add_option("--L", l_desc)->required();
  c_wv->add_option("--P", p_desc)->required();

  CLI::App* c_pt = app.add_subcommand("prodtype", "product-type subgroup <T^k, extras, P>");
  c_pt->add_option("--L", l_desc)->required();
  c_pt->add_option("--P", p_desc)->required();
  c_pt->add_option("--extra", extras, "k-tuple over {1,a,b,ab}, e.g. a,a,1 (repeatable)");
  c_pt->add_flag("--base-size", want_base);
  c_pt->add_flag("--checks", want_checks);
  c_pt->add_flag("--cert", want_cert, "run the sufficient base-two criterion");

  CLI::App* c_saxl = app.add_subcommand("saxl", "Saxl graph diagnostics");
  c_saxl->add_option("--group", group_desc)->required();
  c_saxl->add_flag("--diameter", want_diameter);
  c_saxl->add_flag("--star", want_star);
  c_saxl->add_flag("--star-star", want_star_star);
  c_saxl->add_option("--dot", dot_path, "export the graph (degree <= 2000)");

  CLI::App* c_fix = app.add_subcommand("verify-fixtures", "run the bundled reproduction rows");
  c_fix->add_option("--filter", filter);
  c_fix->add_flag("--skip-heavy", skip_heavy, "skip the minutes-scale product actions");

  args.insert(args.begin(), "prodact");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  s.budget.max_enumerate = max_order;
  s.budget.max_points = max_points;

  try {
    std::vector<std::string> lines;

    if (*c_construct) {
      ConstructedGroup g = parse_any_group(group_desc, s.budget);
      s.group_info(group_desc, g.group);
      s.result("degree", g.group.degree(), "construction");
      s.result("order", g.group.order().str(), "stabilizer chain");
      s.result("generators", g.group.generators().size(), "construction");
      lines.push_back(group_desc + ": degree " + std::to_string(g.group.degree()) + ", order " +
                      g.group.order().str() + ", " +
                      std::to_string(g.group.generators().size()) + " generators");
      if (g.socle) {
        s.result("socle_order", g.socle->order().str(), "stabilizer chain");
        lines.push_back("socle order " + g.socle->order().str());
      }
      if (!save_path.empty()) {
        save_group_file(g.group, g.name, save_path);
        lines.push_back("saved to " + save_path);
      }
      return s.finish(out, lines);
    }

    if (*c_info) {
      ConstructedGroup g = parse_any_group(group_desc, s.budget);
      s.group_info(group_desc, g.group);
      bool transitive = g.group.is_transitive();
      s.result("order", g.group.order().str(), "stabilizer chain");
      s.result("transitive", transitive, "orbit closure");
      s.result("orbits", g.group.orbits().count(), "orbit closure");
      lines.push_back(group_desc + ": degree " + std::to_string(g.group.degree()) + ", order " +
                      g.group.order().str());
      lines.push_back(std::string("transitive: ") + (transitive ? "yes" : "no"));
      if (transitive) {
        try {
          bool prim = g.group.is_primitive(s.budget);
          s.result("primitive", prim, "minimal block systems");
          lines.push_back(std::string("primitive: ") + (prim ? "yes" : "no"));
        } catch (const BudgetExceeded&) {
          s.result("primitive", nullptr, "skipped: block search budget");
          lines.push_back("primitive: skipped (degree above block search budget)");
        }
      }
      return s.finish(out, lines);
    }

    if (*c_base) {
      ConstructedGroup g = parse_any_group(group_desc, s.budget);
      s.group_info(group_desc, g.group);
      BaseResult res = base_size_exact(g.group, s.budget, depth_cap);
      s.result("b", res.b, res.exact ? "iterative deepening (exact)" : "greedy upper bound");
      s.result("witness", res.witness, "pointwise stabilizer verified");
      s.result("exact", res.exact, "");
      lines.push_back("b(" + group_desc + ") = " + std::to_string(res.b) +
                      (res.exact ? "" : "  (upper bound: search budget exhausted)"));
      lines.push_back("witness " + points_str(res.witness));
      return s.finish(out, lines);
    }

    if (*c_reg) {
      ConstructedGroup g = parse_group(group_desc, s.budget);
      s.group_info(group_desc, g.group);
      RegularOrbitCount r = regular_suborbits(g.group, s.budget);
      s.result("r", r.count, "point stabilizer orbit partition");
      s.result("stabilizer_order", r.stabilizer_order.str(), "orbit-stabilizer");
      s.result("orbit_reps", r.orbit_reps, "minimal point per regular suborbit");
      lines.push_back("r(" + group_desc + ") = " + std::to_string(r.count) +
                      "   (|H| = " + r.stabilizer_order.str() + ")");
      if (socle) {
        if (!g.socle) throw InvalidInput("no socle tracked for " + group_desc);
        RegularOrbitCount rt = regular_suborbits_of_subgroup(*g.socle);
        s.result("r_socle", rt.count, "socle point stabilizer orbit partition");
        lines.push_back("r(T) = " + std::to_string(rt.count));
      }
      return s.finish(out, lines);
    }

    if (*c_regm) {
      ConstructedGroup g = parse_group(group_desc, s.budget);
      s.group_info(group_desc, g.group);
      std::uint64_t r = reg_L_m(g.group, m_arg, s.budget);
      s.result("reg", r, "stabilizer orbit recursion");
      lines.push_back("reg(" + group_desc + ", " + std::to_string(m_arg) +
                      ") = " + std::to_string(r));
      return s.finish(out, lines);
    }

    if (*c_dist) {
      ConstructedGroup g = parse_group(group_desc, s.budget);
      s.group_info(group_desc, g.group);
      if (g.group.degree() <= 12) {
        DistinguishingProfile prof = distinguishing_profile(g.group, s.budget);
        s.result("D", prof.D, "partition sweep");
        Json t = Json::object();
        for (auto& [m, tm] : prof.t) t[std::to_string(m)] = tm;
        s.result("t", t, "partition sweep");
        s.result("bounds_ok", prof.bounds_ok, "|P|/m! <= t_m <= S(k,m)");
        lines.push_back("D(" + group_desc + ") = " + std::to_string(prof.D));
        std::string ts = "t_m:";
        for (auto& [m, tm] : prof.t)
          if (tm) ts += " t" + std::to_string(m) + "=" + std::to_string(tm);
        lines.push_back(ts);
      } else {
        unsigned d = distinguishing_number(g.group, s.budget);
        s.result("D", d, "power-set mask sweep");
        lines.push_back("D(" + group_desc + ") = " + std::to_string(d));
      }
      return s.finish(out, lines);
    }

    if (*c_tm) {
      ConstructedGroup g = parse_group(group_desc, s.budget);
      s.group_info(group_desc, g.group);
      std::uint64_t tm = count_tm(g.group, m_arg, s.budget);
      s.result("t" + std::to_string(m_arg), tm,
               g.group.degree() <= 12 ? "partition sweep" : "power-set mask sweep");
      lines.push_back("t_" + std::to_string(m_arg) + "(" + group_desc +
                      ") = " + std::to_string(tm));
      return s.finish(out, lines);
    }

    if (*c_wp) {
      ConstructedGroup l = parse_group(l_desc, s.budget);
      ConstructedGroup p = parse_group(p_desc, s.budget);
      s.group_info("wr:" + l_desc + "|" + p_desc,
                   l.group);  // record the base group; ambient may be huge
      BcPrediction bc = bc_predict(l.group, p.group, m_max, s.budget);
      s.result("D", bc.D, "partition sweep");
      Json regs = Json::object();
      for (auto& [m, r] : bc.reg_by_m) regs[std::to_string(m)] = r;
      s.result("reg_by_m", regs, "stabilizer orbit recursion");
      s.result("predicted_b", bc.predicted_b, "least m with reg(L,m) >= D(P)");
      lines.push_back("D(P) = " + std::to_string(bc.D));
      for (auto& [m, r] : bc.reg_by_m)
        lines.push_back("reg(L," + std::to_string(m) + ") = " + std::to_string(r) +
                        (r >= bc.D ? "  >= D: b <= " + std::to_string(m) : "  < D"));
      lines.push_back("predicted b(L wr P) = " + std::to_string(bc.predicted_b));
      if (p.group.degree() <= 12) {
        WreathAnalysis wa = analyze_wreath(l.group, p.group, s.budget);
        s.result("r_wreath", wa.r_wreath.str(), "regular suborbit formula");
        lines.push_back("r(L wr P) = " + wa.r_wreath.str() + " by the formula");
        UniqueRegularVerdict uq = unique_regular_suborbit_test(l.group, p.group, s.budget);
        s.result("unique_regular_suborbit", uq.unique, "r(L) = D(P) and t_D = |P|/D!");
        if (uq.classified_case)
          s.result("classified_case", *uq.classified_case, "primitive-P classification");
      }
      return s.finish(out, lines);
    }

    if (*c_wv) {
      ConstructedGroup l = parse_group(l_desc, s.budget);
      ConstructedGroup p = parse_group(p_desc, s.budget);
      WreathAnalysis wa = analyze_wreath(l.group, p.group, s.budget);
      ProductTypeGroup w = wreath_product_action(l, p.group, s.budget);
      s.group_info("wr:" + l_desc + "|" + p_desc, w.ambient);
      RegularOrbitCount brute = regular_suborbits(w.ambient, s.budget);
      bool match = Integer(brute.count) == wa.r_wreath;
      s.result("r_formula", wa.r_wreath.str(), "regular suborbit formula");
      s.result("r_brute", brute.count, "orbit partition on the explicit action");
      s.result("match", match, "");
      lines.push_back("formula r = " + wa.r_wreath.str() + ", brute r = " +
                      std::to_string(brute.count) + (match ? "  MATCH" : "  MISMATCH"));
      if (!match) throw InternalCheckFailure("formula and brute force disagree");
      return s.finish(out, lines);
    }

    if (*c_pt) {
      ConstructedGroup l = parse_group(l_desc, s.budget);
      ConstructedGroup p = parse_group(p_desc, s.budget);
      std::vector<std::pair<std::vector<Perm>, Perm>> extra_elems;
      for (const std::string& espec : extras)
        extra_elems.emplace_back(parse_extra_tuple(l, espec, p.group.degree()),
                                 Perm(p.group.degree()));
      ProductTypeGroup g = product_type_subgroup(l, p.group, extra_elems, s.budget);
      s.group_info("prodtype:" + l_desc + "|" + p_desc, g.ambient);
      s.result("degree", g.ambient.degree(), "product action");
      s.result("order", g.ambient.order().str(), "socle order times quotient order");
      if (g.tau)
        s.result("tau", *g.tau, "coset symbols in (L/T)^k : P");
      else
        s.result("tau", nullptr, "no element of (L^k meet G) outside T^k");
      s.result("full_wreath", g.full_wreath, "");
      lines.push_back("degree " + std::to_string(g.ambient.degree()) + ", order " +
                      g.ambient.order().str());
      lines.push_back("tau = " + (g.tau ? std::to_string(*g.tau) : std::string("undefined")));
      if (want_cert) {
        Base2Certificate cert = sufficient_base2_general(g, s.budget);
        bool ok = cert.verdict == Base2Certificate::Verdict::guaranteed;
        s.result("base2_certificate", ok ? "guaranteed" : "unknown",
                 ok ? "witness verified" : cert.reason);
        lines.push_back(std::string("base-two certificate: ") + (ok ? "guaranteed" : "unknown"));
        if (cert.witness)
          lines.push_back("witness pair (" + std::to_string(cert.witness->first) + ", " +
                          std::to_string(cert.witness->second) + ")");
      }
      if (want_base) {
        BaseResult res = base_size_exact(g.ambient, s.budget);
        s.result("b", res.b, res.exact ? "iterative deepening (exact)" : "greedy upper bound");
        lines.push_back("b(G) = " + std::to_string(res.b));
      }
      if (want_checks) {
        StructuralReport rep = structural_checks(g, s.budget);
        Json checks = Json::array();
        for (auto& c : rep.checks) {
          Json jc;
          jc["name"] = c.name;
          jc["applicable"] = c.applicable;
          jc["passed"] = c.passed;
          if (!c.detail.empty()) jc["detail"] = c.detail;
          checks.push_back(jc);
          lines.push_back(c.name + ": " +
                          (c.applicable ? (c.passed ? "pass" : "FAIL") : "n/a") +
                          (c.detail.empty() ? "" : "  (" + c.detail + ")"));
        }
        s.result("checks", checks, "classification cross-checks");
        s.result("b", rep.bG, "iterative deepening (exact)");
        lines.push_back("b(G) = " + std::to_string(rep.bG) + ", b(L) = " + std::to_string(rep.bL) +
                        ", r(L) = " + std::to_string(rep.rL) + ", r(T) = " +
                        std::to_string(rep.rT) + ", D(P) = " + std::to_string(rep.D));
        if (!rep.all_passed()) throw InternalCheckFailure("a structural check failed");
      }
      return s.finish(out, lines);
    }

    if (*c_saxl) {
      ConstructedGroup g = parse_any_group(group_desc, s.budget);
      s.group_info(group_desc, g.group);
      SaxlContext ctx = make_saxl_context(g.group, s.budget);
      SaxlReport rep = saxl_summary(ctx);
      if (want_diameter) rep = saxl_diameter(ctx, rep);
      if (want_star) rep.star = check_star(ctx);
      if (want_star_star) {
        bool dc = check_star_star(ctx, false);
        if (g.group.degree() <= 1000 && check_star_star(ctx, true) != dc)
          throw InternalCheckFailure("double-coset and brute-force (star-star) disagree");
        rep.star_star = dc;
      }
      s.result("r", rep.r, "point stabilizer orbit partition");
      s.result("h_order", rep.h_order.str(), "orbit-stabilizer");
      s.result("valency", rep.valency.str(), "r |H|");
      s.result("eulerian", rep.eulerian, "valency parity");
      lines.push_back("r = " + std::to_string(rep.r) + ", |H| = " + rep.h_order.str() +
                      ", valency = " + rep.valency.str() +
                      (rep.eulerian ? "  (Eulerian)" : "  (not Eulerian)"));
      if (want_diameter) {
        if (rep.diameter) {
          s.result("diameter", *rep.diameter, "BFS, vertex-transitive");
          lines.push_back("diameter = " + std::to_string(*rep.diameter));
        } else {
          s.result("diameter", nullptr, "disconnected");
          lines.push_back("diameter = infinity (graph disconnected)");
        }
      }
      if (rep.star) {
        s.result("star", *rep.star, "common neighbor over suborbit representatives");
        lines.push_back(std::string("(star): ") + (*rep.star ? "holds" : "fails"));
      }
      if (rep.star_star) {
        s.result("star_star", *rep.star_star, "double-coset procedure");
        lines.push_back(std::string("(star-star): ") + (*rep.star_star ? "holds" : "fails"));
      }
      if (!dot_path.empty()) {
        if (g.group.degree() > 2000) throw InvalidInput("DOT export supports degree <= 2000");
        std::ofstream dot(dot_path);
        dot << "graph saxl {\n";
        for (Point v = 0; v < g.group.degree(); ++v)
          for (Point w : saxl_neighborhood(ctx, v))
            if (v < w) dot << "  " << v << " -- " << w << ";\n";
        dot << "}\n";
        lines.push_back("graph written to " + dot_path);
      }
      return s.finish(out, lines);
    }

    if (*c_fix) {
      FixtureSummary sum = run_fixtures(out, s.budget, filter, !skip_heavy);
      out << sum.passed << " passed, " << sum.failed << " failed, " << sum.skipped
          << " skipped\n";
      return sum.failed == 0 ? 0 : 1;
    }

    err << "no subcommand selected\n";
    return 1;
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace cli
}  // namespace prodact
