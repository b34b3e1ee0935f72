#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prodact/constructions.hpp"
#include "prodact/errors.hpp"
#include "prodact/group.hpp"
#include "prodact/numeric.hpp"
#include "prodact/perm.hpp"

namespace prodact {

// The domain Gamma^k with mixed-radix point encoding, coordinate 0 most
// significant.
struct ProductActionSpace {
  std::uint64_t gamma = 0;
  std::uint32_t k = 0;
  std::uint64_t total = 0;

  static ProductActionSpace make(std::uint64_t gamma, std::uint32_t k,
                                 const Budget& budget = Budget::defaults()) {
    if (k < 1 || gamma < 1) throw InvalidInput("product action needs k >= 1 and |Gamma| >= 1");
    ProductActionSpace s{gamma, k, 1};
    for (std::uint32_t i = 0; i < k; ++i) {
      if (s.total > budget.max_points / gamma)
        throw BudgetExceeded("product action point budget exceeded");
      s.total *= gamma;
    }
    return s;
  }

  Point encode(const std::vector<Point>& coords) const {
    std::uint64_t w = 0;
    for (std::uint32_t i = 0; i < k; ++i) w = w * gamma + coords[i];
    return static_cast<Point>(w);
  }

  void decode(Point w, std::vector<Point>& out) const {
    out.resize(k);
    std::uint64_t v = w;
    for (std::uint32_t i = k; i-- > 0;) {
      out[i] = static_cast<Point>(v % gamma);
      v /= gamma;
    }
  }

  std::vector<Point> decode(Point w) const {
    std::vector<Point> out;
    decode(w, out);
    return out;
  }
};

// z acting on one coordinate.
inline Perm lift_base_factor(const ProductActionSpace& s, const Perm& z, std::uint32_t coord) {
  if (z.degree() != s.gamma) throw DegreeMismatch("base factor degree mismatch");
  std::uint64_t stride = 1;
  for (std::uint32_t i = coord + 1; i < s.k; ++i) stride *= s.gamma;
  std::vector<Point> img(s.total);
  for (std::uint64_t w = 0; w < s.total; ++w) {
    Point c = static_cast<Point>((w / stride) % s.gamma);
    std::uint64_t rest = w - static_cast<std::uint64_t>(c) * stride;
    img[w] = static_cast<Point>(rest + static_cast<std::uint64_t>(z[c]) * stride);
  }
  return Perm::from_images(std::move(img));
}

// sigma permuting coordinates: coordinate i moves to slot sigma(i).
inline Perm lift_top(const ProductActionSpace& s, const Perm& sigma) {
  if (sigma.degree() != s.k) throw DegreeMismatch("top group degree mismatch");
  std::vector<Point> img(s.total);
  std::vector<Point> c, d(s.k);
  for (std::uint64_t w = 0; w < s.total; ++w) {
    s.decode(static_cast<Point>(w), c);
    for (std::uint32_t i = 0; i < s.k; ++i) d[sigma[i]] = c[i];
    img[w] = s.encode(d);
  }
  return Perm::from_images(std::move(img));
}

// (z_1,...,z_k)sigma in product action: apply z_i in coordinate i, then
// permute the coordinates by sigma.
inline Perm lift_wreath_element(const ProductActionSpace& s, const std::vector<Perm>& zs,
                                const Perm& sigma) {
  if (zs.size() != s.k) throw InvalidInput("component tuple has wrong length");
  std::vector<Point> img(s.total);
  std::vector<Point> c, d(s.k);
  for (std::uint64_t w = 0; w < s.total; ++w) {
    s.decode(static_cast<Point>(w), c);
    for (std::uint32_t i = 0; i < s.k; ++i) d[sigma[i]] = zs[i][c[i]];
    img[w] = s.encode(d);
  }
  return Perm::from_images(std::move(img));
}

// A group with T^k <= G <= L wr P in product action, together with tau(G):
// the largest number of coordinates lying in T over elements of
// (L^k intersect G) outside T^k; absent when that set is empty.
struct ProductTypeGroup {
  ProductActionSpace space;
  PermutationGroup ambient;
  ConstructedGroup L;
  PermutationGroup T;
  PermutationGroup P;
  std::uint32_t k = 0;
  std::optional<std::uint32_t> tau;
  bool full_wreath = false;
  std::string name;
};

namespace detail {

// Right-coset representatives of T in L, rep[0] = identity.
inline std::vector<Perm> coset_reps(const PermutationGroup& l, const PermutationGroup& t) {
  Integer index = l.order() / t.order();
  std::vector<Perm> reps{Perm(l.degree())}, rep_invs{Perm(l.degree())};
  for (std::size_t head = 0; head < reps.size(); ++head)
    for (const Perm& g : l.generators()) {
      Perm s = reps[head] * g;
      bool known = false;
      for (const Perm& ri : rep_invs)
        if (t.contains(s * ri)) {
          known = true;
          break;
        }
      if (!known) {
        if (Integer(reps.size()) >= index) throw InternalCheckFailure("coset rep overflow");
        rep_invs.push_back(s.inverse());
        reps.push_back(std::move(s));
      }
    }
  if (Integer(reps.size()) != index) throw InternalCheckFailure("coset rep undercount");
  return reps;
}

}  // namespace detail

// G = < T in every coordinate, lifted P, extra elements > acting on Gamma^k.
// `extras` are (k-tuple over L, element of P) pairs; the tuple entries must
// normalize the coordinate layout, i.e. lie in L.
inline ProductTypeGroup product_type_subgroup(
    const ConstructedGroup& l, const PermutationGroup& p,
    const std::vector<std::pair<std::vector<Perm>, Perm>>& extras,
    const Budget& budget = Budget::defaults()) {
  const PermutationGroup& t = l.socle_or_self();
  const std::uint32_t k = static_cast<std::uint32_t>(p.degree());
  ProductActionSpace space = ProductActionSpace::make(l.group.degree(), k, budget);

  // T must be a transitive normal subgroup of L
  if (!t.is_transitive()) throw InvalidInput("socle factor must be transitive");
  for (const Perm& g : l.group.generators())
    for (const Perm& x : t.generators())
      if (!t.contains(g.inverse() * x * g)) throw InvalidInput("socle factor is not normal in L");

  for (const auto& [tuple, sigma] : extras) {
    if (tuple.size() != k || sigma.degree() != k) throw InvalidInput("malformed extra element");
    for (const Perm& z : tuple)
      if (!l.group.contains(z))
        throw InvalidInput("extra element does not normalize the socle layout");
  }

  // Quotient bookkeeping in (L/T)^k : P, realized on k * |L:T| points.
  std::vector<Perm> reps = detail::coset_reps(l.group, t);
  const std::uint32_t c = static_cast<std::uint32_t>(reps.size());
  std::vector<Perm> rep_invs;
  for (const Perm& r : reps) rep_invs.push_back(r.inverse());
  auto coset_of = [&](const Perm& z) -> std::uint32_t {
    for (std::uint32_t j = 0; j < c; ++j)
      if (t.contains(z * rep_invs[j])) return j;
    throw InternalCheckFailure("element escapes its cosets");
  };
  std::vector<std::vector<std::uint32_t>> mult(c, std::vector<std::uint32_t>(c));
  for (std::uint32_t x = 0; x < c; ++x)
    for (std::uint32_t y = 0; y < c; ++y) mult[x][y] = coset_of(reps[x] * reps[y]);

  auto quotient_image = [&](const std::vector<std::uint32_t>& csets, const Perm& sigma) {
    std::vector<Point> img(static_cast<std::size_t>(k) * c);
    for (std::uint32_t i = 0; i < k; ++i)
      for (std::uint32_t x = 0; x < c; ++x)
        img[static_cast<std::size_t>(i) * c + x] =
            static_cast<Point>(static_cast<std::size_t>(sigma[i]) * c + mult[x][csets[i]]);
    return Perm::from_images(std::move(img));
  };

  std::vector<Perm> qgens;
  std::vector<std::uint32_t> trivial_csets(k, 0);
  for (const Perm& sigma : p.generators()) qgens.push_back(quotient_image(trivial_csets, sigma));
  for (const auto& [tuple, sigma] : extras) {
    std::vector<std::uint32_t> cs(k);
    for (std::uint32_t i = 0; i < k; ++i) cs[i] = coset_of(tuple[i]);
    qgens.push_back(quotient_image(cs, sigma));
  }
  PermutationGroup quotient(static_cast<std::size_t>(k) * c, std::move(qgens));
  Integer quotient_order = quotient.order();

  // tau from the quotient: elements with trivial top part and a nontrivial
  // coset vector; count identity-coset coordinates.
  std::optional<std::uint32_t> tau;
  quotient.for_each_element(
      [&](const Perm& qe) {
        bool top_trivial = true;
        std::uint32_t in_t = 0;
        bool nontrivial = false;
        for (std::uint32_t i = 0; i < k; ++i) {
          Point target = qe[static_cast<Point>(static_cast<std::size_t>(i) * c)];
          std::uint32_t si = static_cast<std::uint32_t>(target / c);
          std::uint32_t ci = static_cast<std::uint32_t>(target % c);
          if (si != i) top_trivial = false;
          if (ci == 0)
            ++in_t;
          else
            nontrivial = true;
        }
        if (top_trivial && nontrivial)
          tau = std::max(tau.value_or(0), in_t);
      },
      1'000'000);

  // Ambient generators: componentwise socle generators, lifted P, extras.
  std::vector<Perm> agens;
  for (const Perm& x : t.generators())
    for (std::uint32_t i = 0; i < k; ++i) agens.push_back(lift_base_factor(space, x, i));
  for (const Perm& sigma : p.generators()) agens.push_back(lift_top(space, sigma));
  for (const auto& [tuple, sigma] : extras) agens.push_back(lift_wreath_element(space, tuple, sigma));

  Integer order = int_pow(t.order(), k) * quotient_order;
  ProductTypeGroup out{space,
                       PermutationGroup(space.total, std::move(agens), order),
                       l,
                       t,
                       p,
                       k,
                       tau,
                       order == int_pow(l.group.order(), k) * p.order(),
                       ""};
  return out;
}

// The full wreath product L wr P in product action.
inline ProductTypeGroup wreath_product_action(const ConstructedGroup& l,
                                              const PermutationGroup& p,
                                              const Budget& budget = Budget::defaults()) {
  std::vector<std::pair<std::vector<Perm>, Perm>> extras;
  const std::uint32_t k = static_cast<std::uint32_t>(p.degree());
  // L = <T, outer elements> in each coordinate; put each designated outer
  // element in coordinate 0. If no socle is tracked, treat L itself as T.
  ConstructedGroup base = l;
  if (!base.socle) base.socle = base.group;
  Perm idk(k);
  Integer t_order = base.socle->order();
  if (t_order != base.group.order()) {
    // generate L/T in every coordinate: one extra per L-generator outside T
    for (const Perm& g : base.group.generators()) {
      if (base.socle->contains(g)) continue;
      for (std::uint32_t i = 0; i < k; ++i) {
        std::vector<Perm> tuple(k, Perm(base.group.degree()));
        tuple[i] = g;
        extras.emplace_back(std::move(tuple), idk);
      }
    }
  }
  ProductTypeGroup out = product_type_subgroup(base, p, extras, budget);
  if (out.ambient.order() != int_pow(base.group.order(), k) * p.order())
    throw InternalCheckFailure("wreath product order");
  out.full_wreath = true;
  out.name = "wr:" + l.name;
  // tau(L wr P) = k-1 whenever L != T
  if (t_order != base.group.order() && out.tau != std::make_optional(k - 1))
    throw InternalCheckFailure("tau of a full wreath product must be k-1");
  return out;
}

// The imprimitive action of L wr P on Gamma x {1..k}.
inline PermutationGroup imprimitive_wreath(const PermutationGroup& l, const PermutationGroup& p,
                                           const Budget& budget = Budget::defaults()) {
  const std::size_t gamma = l.degree();
  const std::size_t k = p.degree();
  const std::size_t n = gamma * k;
  if (n > budget.max_points) throw BudgetExceeded("imprimitive wreath domain exceeds budget");
  std::vector<Perm> gens;
  for (const Perm& z : l.generators())
    for (std::size_t blk = 0; blk < k; ++blk) {
      std::vector<Point> img(n);
      for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>(i);
      for (std::size_t g = 0; g < gamma; ++g) img[blk * gamma + g] = static_cast<Point>(blk * gamma + z[g]);
      gens.push_back(Perm::from_images(std::move(img)));
    }
  for (const Perm& sigma : p.generators()) {
    std::vector<Point> img(n);
    for (std::size_t blk = 0; blk < k; ++blk)
      for (std::size_t g = 0; g < gamma; ++g)
        img[blk * gamma + g] = static_cast<Point>(sigma[blk] * gamma + g);
    gens.push_back(Perm::from_images(std::move(img)));
  }
  return PermutationGroup(n, std::move(gens), int_pow(l.order(), k) * p.order());
}

}  // namespace prodact
