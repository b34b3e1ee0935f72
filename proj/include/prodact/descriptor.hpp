#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prodact/constructions.hpp"
#include "prodact/errors.hpp"
#include "prodact/group_io.hpp"
#include "prodact/product_action.hpp"

namespace prodact {

// Group descriptor grammar (see README):
//   atom      := s:N | a:N | c:N | d:N | psl2:Q | pgl2:Q | psigmal2:Q
//              | pgammal2:Q | m10 | agl:D:P | agammal1:Q | holc8 | o4m16
//              | file:PATH            (consumes the rest of the descriptor)
//   modifier  := /pairs | /cosets:SUB | @N
//   SUB       := N(C<n>) | N(V4) | stab(<pt>) | stabset(<p1>,<p2>,...)
// Wreath products are separate descriptors: wr:<L>|<P> (product action) and
// wrimp:<L>|<P> (imprimitive action).

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

inline std::uint64_t parse_int(const std::string& s, const std::string& what) {
  if (s.empty()) throw InvalidInput("missing integer in " + what);
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw InvalidInput("bad integer '" + s + "' in " + what);
    v = v * 10 + (c - '0');
    if (v > (1ull << 40)) throw InvalidInput("integer out of range in " + what);
  }
  return v;
}

inline ConstructedGroup parse_atom(const std::string& atom, const Budget& budget) {
  (void)budget;
  std::vector<std::string> parts = split(atom, ':');
  const std::string& tag = parts[0];
  auto arg = [&](std::size_t i) -> std::uint64_t {
    if (parts.size() <= i) throw InvalidInput("descriptor '" + atom + "' needs a parameter");
    return parse_int(parts[i], atom);
  };
  if (tag == "s") {
    std::size_t n = arg(1);
    ConstructedGroup out{symmetric_group(n), std::nullopt, {}, atom};
    if (n >= 2) out.outer = {{"a", Perm::from_cycles(n, {{0, 1}})}};
    if (n >= 5) out.socle = alternating_group(n);
    return out;
  }
  if (tag == "a") {
    PermutationGroup g = alternating_group(arg(1));
    ConstructedGroup out{g, std::nullopt, {}, atom};
    if (g.degree() >= 5) out.socle = out.group;
    return out;
  }
  if (tag == "c") return {cyclic_group(arg(1)), std::nullopt, {}, atom};
  if (tag == "d") return {dihedral_group(arg(1)), std::nullopt, {}, atom};
  if (tag == "holc8") return {holomorph_c8(), std::nullopt, {}, atom};
  if (tag == "o4m16") return {affine_o4_minus_2(), std::nullopt, {}, atom};
  if (tag == "agl") return {affine_general_linear(static_cast<std::uint32_t>(arg(1)),
                                                  static_cast<std::uint32_t>(arg(2))),
                            std::nullopt,
                            {},
                            atom};
  if (tag == "agammal1")
    return {affine_gamma_l1(static_cast<std::uint32_t>(arg(1))), std::nullopt, {}, atom};
  if (tag == "psl2") return projective_family(ProjectiveFamily::psl2, arg(1));
  if (tag == "pgl2") return projective_family(ProjectiveFamily::pgl2, arg(1));
  if (tag == "psigmal2") return projective_family(ProjectiveFamily::psigmal2, arg(1));
  if (tag == "pgammal2") return projective_family(ProjectiveFamily::pgammal2, arg(1));
  if (tag == "m10") return projective_family(ProjectiveFamily::m10, 9);
  throw InvalidInput("unknown group family '" + tag + "'");
}

inline PermutationGroup find_subgroup(const ConstructedGroup& g, const std::string& sub,
                                      const Budget& budget) {
  if (sub.rfind("N(C", 0) == 0 && sub.back() == ')') {
    std::uint64_t n = parse_int(sub.substr(3, sub.size() - 4), sub);
    return cyclic_normalizer(g.group, n, budget);
  }
  if (sub == "N(V4)") return klein_normalizer(g.group, g.socle ? &*g.socle : nullptr, budget);
  if (sub.rfind("stabset(", 0) == 0 && sub.back() == ')') {
    std::vector<Point> pts;
    for (const std::string& p : split(sub.substr(8, sub.size() - 9), ','))
      pts.push_back(static_cast<Point>(parse_int(p, sub)));
    return g.group.setwise_stabilizer(pts, budget);
  }
  if (sub.rfind("stab(", 0) == 0 && sub.back() == ')') {
    Point pt = static_cast<Point>(parse_int(sub.substr(5, sub.size() - 6), sub));
    return g.group.point_stabilizer(pt);
  }
  throw InvalidInput("unknown subgroup selector '" + sub + "'");
}

// Deterministic hunt for an index-d subgroup: cyclic normalizers by
// ascending element order, then point stabilizers.
inline PermutationGroup subgroup_of_index(const ConstructedGroup& g, std::uint64_t d,
                                          const Budget& budget) {
  Integer target = g.group.order() / d;
  if (g.group.order() % d != 0) throw InvalidInput("index does not divide the group order");
  std::vector<std::uint64_t> orders;
  g.group.for_each_element(
      [&](const Perm& x) {
        std::uint64_t o = x.order();
        if (o > 1 && std::find(orders.begin(), orders.end(), o) == orders.end())
          orders.push_back(o);
      },
      budget.max_enumerate);
  std::sort(orders.begin(), orders.end());
  for (std::uint64_t n : orders) {
    PermutationGroup h = cyclic_normalizer(g.group, n, budget);
    if (h.order() == target) return h;
  }
  if (Integer(g.group.degree()) == Integer(d)) return g.group.point_stabilizer(0);
  throw InvalidInput("no index-" + std::to_string(d) + " subgroup found by the hunt");
}

}  // namespace detail

inline ConstructedGroup parse_group(const std::string& desc,
                                    const Budget& budget = Budget::defaults()) {
  if (desc.rfind("file:", 0) == 0) {
    GroupFile gf = load_group_file(desc.substr(5));
    return ConstructedGroup{gf.group, std::nullopt, {}, gf.name.empty() ? desc : gf.name};
  }
  std::size_t cut = desc.find_first_of("/@");
  std::string atom = desc.substr(0, cut);
  ConstructedGroup g = detail::parse_atom(atom, budget);
  g.name = atom;
  std::size_t pos = cut;
  while (pos != std::string::npos && pos < desc.size()) {
    char kind = desc[pos];
    std::size_t next = desc.find_first_of("/@", pos + 1);
    std::string mod = desc.substr(pos + 1, next == std::string::npos ? next : next - pos - 1);
    if (kind == '/') {
      if (mod == "pairs") {
        g = pairs_action(g, budget);
      } else if (mod.rfind("cosets:", 0) == 0) {
        std::string sub = mod.substr(7);
        g = apply_coset_action(g, detail::find_subgroup(g, sub, budget), sub, budget);
      } else {
        throw InvalidInput("unknown modifier '/" + mod + "'");
      }
    } else {  // '@'
      std::uint64_t d = detail::parse_int(mod, desc);
      if (Integer(d) != Integer(g.group.degree())) {
        PermutationGroup h = detail::subgroup_of_index(g, d, budget);
        g = apply_coset_action(g, h, "@" + mod, budget);
      }
      g.name += "@" + mod;
    }
    pos = next;
  }
  return g;
}

// wr:<L>|<P> and wrimp:<L>|<P>
struct ParsedWreath {
  ConstructedGroup l;
  PermutationGroup p;
  bool imprimitive = false;
};

inline ParsedWreath parse_wreath(const std::string& desc,
                                 const Budget& budget = Budget::defaults()) {
  bool imp = desc.rfind("wrimp:", 0) == 0;
  bool prod = desc.rfind("wr:", 0) == 0;
  if (!imp && !prod) throw InvalidInput("wreath descriptor must start with wr: or wrimp:");
  std::string body = desc.substr(imp ? 6 : 3);
  std::size_t bar = body.find('|');
  if (bar == std::string::npos) throw InvalidInput("wreath descriptor needs <L>|<P>");
  ConstructedGroup l = parse_group(body.substr(0, bar), budget);
  ConstructedGroup p = parse_group(body.substr(bar + 1), budget);
  return ParsedWreath{std::move(l), std::move(p.group), imp};
}

// Either a plain group or the ambient group of a wreath descriptor.
inline ConstructedGroup parse_any_group(const std::string& desc,
                                        const Budget& budget = Budget::defaults()) {
  if (desc.rfind("wr:", 0) == 0) {
    ParsedWreath w = parse_wreath(desc, budget);
    ProductTypeGroup g = wreath_product_action(w.l, w.p, budget);
    return ConstructedGroup{g.ambient, std::nullopt, {}, desc};
  }
  if (desc.rfind("wrimp:", 0) == 0) {
    ParsedWreath w = parse_wreath(desc, budget);
    return ConstructedGroup{imprimitive_wreath(w.l.group, w.p, budget), std::nullopt, {}, desc};
  }
  return parse_group(desc, budget);
}

}  // namespace prodact
