#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prodact/errors.hpp"
#include "prodact/gf.hpp"
#include "prodact/group.hpp"
#include "prodact/numeric.hpp"
#include "prodact/perm.hpp"

namespace prodact {

// A group together with what we know about how it was built: the socle
// factor acting on the same domain (when meaningful) and designated outer
// elements, named "a" (diagonal direction) and "b" (field direction) for the
// projective families. Both survive re-actions (cosets, pairs, ...).
struct ConstructedGroup {
  PermutationGroup group;
  std::optional<PermutationGroup> socle;
  std::vector<std::pair<std::string, Perm>> outer;
  std::string name;

  const PermutationGroup& socle_or_self() const { return socle ? *socle : group; }

  const Perm& outer_element(const std::string& key) const {
    for (const auto& [k, g] : outer)
      if (k == key) return g;
    throw InvalidInput("group '" + name + "' has no designated outer element '" + key + "'");
  }
};

// --- elementary families ---------------------------------------------

inline PermutationGroup symmetric_group(std::size_t n) {
  if (n < 1) throw InvalidInput("symmetric group needs n >= 1");
  std::vector<Perm> gens;
  if (n >= 2) {
    std::vector<Point> cyc(n);
    for (Point i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
    gens.push_back(Perm::from_cycles(n, {{0, 1}}));
    gens.push_back(Perm::from_images(cyc));
  }
  return PermutationGroup(n, std::move(gens), factorial(n));
}

inline PermutationGroup alternating_group(std::size_t n) {
  if (n < 1) throw InvalidInput("alternating group needs n >= 1");
  std::vector<Perm> gens;
  for (Point i = 2; i < n; ++i) gens.push_back(Perm::from_cycles(n, {{0, 1, i}}));
  return PermutationGroup(n, std::move(gens), n >= 2 ? factorial(n) / 2 : Integer(1));
}

inline PermutationGroup cyclic_group(std::size_t n) {
  if (n < 1) throw InvalidInput("cyclic group needs n >= 1");
  std::vector<Point> cyc(n);
  for (Point i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  return PermutationGroup(n, {Perm::from_images(cyc)}, Integer(n));
}

inline PermutationGroup dihedral_group(std::size_t n) {
  if (n < 3) throw InvalidInput("dihedral group needs n >= 3 points");
  std::vector<Point> rot(n), refl(n);
  for (Point i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    refl[i] = static_cast<Point>((n - i) % n);
  }
  return PermutationGroup(n, {Perm::from_images(rot), Perm::from_images(refl)}, Integer(2 * n));
}

// Holomorph of C8: all maps x -> ax+b mod 8 with a odd; order 32.
inline PermutationGroup holomorph_c8() {
  std::vector<Point> t(8), m3(8), m5(8);
  for (Point i = 0; i < 8; ++i) {
    t[i] = (i + 1) % 8;
    m3[i] = (3 * i) % 8;
    m5[i] = (5 * i) % 8;
  }
  return PermutationGroup(
      8, {Perm::from_images(t), Perm::from_images(m3), Perm::from_images(m5)}, Integer(32));
}

// AGL_d(p) acting on the p^d vectors, indexed base p.
inline PermutationGroup affine_general_linear(std::uint32_t d, std::uint32_t p) {
  if (d < 1 || !is_prime_u64(p)) throw InvalidInput("AGL_d(p) needs d >= 1 and p prime");
  std::uint64_t n = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    n *= p;
    if (n > (1u << 22)) throw InvalidInput("AGL domain too large");
  }
  auto digits = [&](std::uint64_t v) {
    std::vector<std::uint32_t> c(d);
    for (std::uint32_t i = 0; i < d; ++i) {
      c[i] = v % p;
      v /= p;
    }
    return c;
  };
  auto index = [&](const std::vector<std::uint32_t>& c) {
    std::uint64_t v = 0;
    for (std::uint32_t i = d; i-- > 0;) v = v * p + c[i];
    return static_cast<Point>(v);
  };
  auto map_all = [&](auto&& f) {
    std::vector<Point> img(n);
    for (std::uint64_t v = 0; v < n; ++v) img[v] = index(f(digits(v)));
    return Perm::from_images(img);
  };
  std::vector<Perm> gens;
  gens.push_back(map_all([&](std::vector<std::uint32_t> c) {  // translation by e0
    c[0] = (c[0] + 1) % p;
    return c;
  }));
  std::uint32_t zeta = 1;
  for (std::uint32_t g = 2; g < p; ++g) {  // least primitive root
    std::uint32_t x = g, ord = 1;
    while (x != 1) {
      x = x * g % p;
      ++ord;
    }
    if (ord == p - 1) {
      zeta = g;
      break;
    }
  }
  if (p > 2)
    gens.push_back(map_all([&](std::vector<std::uint32_t> c) {  // diag(zeta, 1, ..., 1)
      c[0] = c[0] * zeta % p;
      return c;
    }));
  if (d >= 2) {
    gens.push_back(map_all([&](std::vector<std::uint32_t> c) {  // transvection e1 -> e1 + e0 dual
      c[0] = (c[0] + c[1]) % p;
      return c;
    }));
    gens.push_back(map_all([&](std::vector<std::uint32_t> c) {  // swap coords 0,1
      std::swap(c[0], c[1]);
      return c;
    }));
    if (d >= 3)
      gens.push_back(map_all([&](std::vector<std::uint32_t> c) {  // cycle coords
        std::rotate(c.begin(), c.begin() + 1, c.end());
        return c;
      }));
  }
  Integer order = int_pow(p, d);
  for (std::uint32_t i = 0; i < d; ++i) order *= int_pow(p, d) - int_pow(p, i);
  return PermutationGroup(n, std::move(gens), order);
}

// AGammaL_1(q) = q:(q-1):f acting on the field.
inline PermutationGroup affine_gamma_l1(std::uint32_t q) {
  GaloisField F(q);
  std::vector<Point> t(q), m(q), fr(q);
  for (Point x = 0; x < q; ++x) {
    t[x] = F.add(x, 1);
    m[x] = F.mul(x, F.generator());
    fr[x] = F.frobenius(x);
  }
  std::vector<Perm> gens{Perm::from_images(t), Perm::from_images(m)};
  if (F.f() > 1) gens.push_back(Perm::from_images(fr));
  return PermutationGroup(q, std::move(gens),
                          Integer(q) * (q - 1) * F.f());
}

// 2^4:O4^-(2) on 16 points: translations of F_2^4 extended by the isometries
// of the minus-type form Q(x) = x0 x1 + x2^2 + x2 x3 + x3^2, found by
// exhaustive search over all invertible binary 4x4 matrices.
inline PermutationGroup affine_o4_minus_2() {
  auto quad = [](unsigned v) -> unsigned {
    unsigned x0 = v & 1, x1 = (v >> 1) & 1, x2 = (v >> 2) & 1, x3 = (v >> 3) & 1;
    return (x0 & x1) ^ x2 ^ (x2 & x3) ^ x3;
  };
  std::vector<Perm> gens;
  gens.push_back(Perm::from_images([&] {
    std::vector<Point> img(16);
    for (Point v = 0; v < 16; ++v) img[v] = v ^ 1u;  // translation by e0
    return img;
  }()));
  StabilizerChain accepted = StabilizerChain::build(16, gens);
  std::size_t isometries = 0;
  for (unsigned m = 0; m < (1u << 16); ++m) {
    // rows of the matrix: images of e0..e3
    unsigned rows[4] = {m & 15u, (m >> 4) & 15u, (m >> 8) & 15u, (m >> 12) & 15u};
    std::vector<Point> img(16);
    bool bijective = true;
    unsigned seen = 0;
    for (unsigned v = 0; v < 16 && bijective; ++v) {
      unsigned w = 0;
      for (unsigned i = 0; i < 4; ++i)
        if (v >> i & 1) w ^= rows[i];
      img[v] = w;
      if (seen >> w & 1) bijective = false;
      seen |= 1u << w;
    }
    if (!bijective) continue;
    bool isometry = true;
    for (unsigned v = 0; v < 16 && isometry; ++v) isometry = quad(img[v]) == quad(v);
    if (!isometry) continue;
    ++isometries;
    Perm g = Perm::from_images(img);
    if (!accepted.contains(g)) {
      gens.push_back(g);
      accepted = StabilizerChain::build(16, gens);
    }
  }
  if (isometries != 120) throw InternalCheckFailure("isometry count of the minus-type form");
  if (accepted.order() != 1920) throw InternalCheckFailure("affine O4^-(2) order");
  return PermutationGroup(16, std::move(gens), Integer(1920));
}

// --- projective families ----------------------------------------------

// Projective line labels: point 0 is infinity, point 1+e is the field
// element e in the pinned field ordering.
class ProjectiveLine {
 public:
  explicit ProjectiveLine(std::uint32_t q) : F_(q) {}

  const GaloisField& field() const { return F_; }
  std::uint32_t degree() const { return F_.q() + 1; }
  static constexpr Point infinity = 0;
  Point of_field(std::uint32_t e) const { return 1 + e; }

  // x -> (ax + b) / (cx + d), ad - bc != 0
  Perm mobius(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) const {
    if (F_.sub(F_.mul(a, d), F_.mul(b, c)) == 0) throw InvalidInput("singular Mobius map");
    std::vector<Point> img(degree());
    img[0] = c == 0 ? 0 : of_field(F_.div(a, c));
    for (std::uint32_t x = 0; x < F_.q(); ++x) {
      std::uint32_t den = F_.add(F_.mul(c, x), d);
      img[of_field(x)] = den == 0 ? 0 : of_field(F_.div(F_.add(F_.mul(a, x), b), den));
    }
    return Perm::from_images(img);
  }

  Perm frobenius() const {
    std::vector<Point> img(degree());
    img[0] = 0;
    for (std::uint32_t x = 0; x < F_.q(); ++x) img[of_field(x)] = of_field(F_.frobenius(x));
    return Perm::from_images(img);
  }

 private:
  GaloisField F_;
};

enum class ProjectiveFamily { psl2, pgl2, psigmal2, pgammal2, m10 };

// A group is k-transitive iff a chain based at (0, 1, ..., k-1) has orbit
// sizes n, n-1, ..., n-k+1 on its first k levels.
inline bool is_k_transitive(const PermutationGroup& g, unsigned k) {
  std::vector<Point> base;
  for (Point i = 0; i < k; ++i) base.push_back(i);
  StabilizerChain c = g.chain_with_base(base);
  for (unsigned i = 0; i < k; ++i)
    if (c.levels()[i].orbit.size() != g.degree() - i) return false;
  return true;
}

inline ConstructedGroup projective_family(ProjectiveFamily fam, std::uint32_t q) {
  if (q < 4 || q > 128) throw InvalidInput("projective families support 4 <= q <= 128");
  if (fam == ProjectiveFamily::m10 && q != 9) throw InvalidInput("M10 requires q = 9");
  ProjectiveLine line(q);
  const GaloisField& F = line.field();
  const std::uint32_t alpha = F.generator();

  std::vector<Perm> psl_gens;
  psl_gens.push_back(line.mobius(1, 1, 0, 1));                       // x -> x+1
  if (F.f() > 1) psl_gens.push_back(line.mobius(1, alpha, 0, 1));    // x -> x+alpha
  psl_gens.push_back(line.mobius(0, F.neg(1), 1, 0));                // x -> -1/x
  psl_gens.push_back(line.mobius(F.mul(alpha, alpha), 0, 0, 1));     // x -> alpha^2 x
  Integer psl_order = Integer(q) * (Integer(q) * q - 1) / (F.p() == 2 ? 1 : 2);
  PermutationGroup psl(line.degree(), psl_gens, psl_order);
  Perm delta = line.mobius(alpha, 0, 0, 1);
  Perm phi = line.frobenius();

  ConstructedGroup out{psl, std::nullopt, {}, ""};
  switch (fam) {
    case ProjectiveFamily::psl2:
      out.name = "psl2:" + std::to_string(q);
      out.socle = psl;
      break;
    case ProjectiveFamily::pgl2: {
      std::vector<Perm> gens = psl_gens;
      gens.push_back(delta);
      out.group = PermutationGroup(line.degree(), std::move(gens),
                                   Integer(q) * (Integer(q) * q - 1));
      out.socle = psl;
      out.outer = {{"a", delta}};
      out.name = "pgl2:" + std::to_string(q);
      break;
    }
    case ProjectiveFamily::psigmal2: {
      std::vector<Perm> gens = psl_gens;
      gens.push_back(phi);
      out.group = PermutationGroup(line.degree(), std::move(gens), psl_order * F.f());
      out.socle = psl;
      out.outer = {{"b", phi}};
      out.name = "psigmal2:" + std::to_string(q);
      break;
    }
    case ProjectiveFamily::pgammal2: {
      std::vector<Perm> gens = psl_gens;
      gens.push_back(delta);
      gens.push_back(phi);
      out.group = PermutationGroup(line.degree(), std::move(gens),
                                   Integer(q) * (Integer(q) * q - 1) * F.f());
      out.socle = psl;
      out.outer = {{"a", delta}, {"b", phi}};
      out.name = "pgammal2:" + std::to_string(q);
      break;
    }
    case ProjectiveFamily::m10: {
      Perm dphi = delta * phi;
      std::vector<Perm> gens = psl_gens;
      gens.push_back(dphi);
      out.group = PermutationGroup(line.degree(), std::move(gens), Integer(720));
      out.socle = psl;
      out.outer = {{"a", dphi}};
      out.name = "m10";
      // Among the three index-2 overgroups of PSL2(9), M10 is the one with an
      // element of order 8 but none of order 10 (PGL2(9) has both, S6 has
      // neither); decidable from the permutation action alone.
      bool has8 = false, has10 = false;
      out.group.for_each_element(
          [&](const Perm& g) {
            std::uint64_t o = g.order();
            has8 = has8 || o == 8;
            has10 = has10 || o == 10;
          },
          1000);
      if (!has8 || has10) throw InternalCheckFailure("M10 element-order profile");
      break;
    }
  }
  return out;
}

// --- deterministic subgroup fixtures ------------------------------------

inline std::optional<Perm> first_element_of_order(const PermutationGroup& g, std::uint64_t n,
                                                  const Budget& budget = Budget::defaults()) {
  std::optional<Perm> found;
  g.for_each_element(
      [&](const Perm& x) {
        if (!found && x.order() == n) found = x;
      },
      budget.max_enumerate);
  return found;
}

// N(<g>) for the first element g of the given order (chain enumeration order).
inline PermutationGroup cyclic_normalizer(const PermutationGroup& g, std::uint64_t n,
                                          const Budget& budget = Budget::defaults()) {
  std::optional<Perm> seed = first_element_of_order(g, n, budget);
  if (!seed) throw InvalidInput("group has no element of order " + std::to_string(n));
  std::vector<Perm> powers;
  Perm x = *seed;
  for (std::uint64_t i = 1; i < n; ++i) {
    powers.push_back(x);
    x = x * *seed;
  }
  auto in_cyclic = [&](const Perm& y) {
    if (y.is_identity()) return true;
    return std::find(powers.begin(), powers.end(), y) != powers.end();
  };
  std::vector<Perm> members;
  std::uint64_t count = 0;
  g.for_each_element(
      [&](const Perm& z) {
        if (in_cyclic(z.inverse() * *seed * z)) {
          ++count;
          if (!z.is_identity()) members.push_back(z);
        }
      },
      budget.max_enumerate);
  return PermutationGroup(g.degree(), std::move(members), Integer(count));
}

// N(V) for the first Klein four-group V; when the socle is given, V is taken
// inside it (this pins S4 = N(V4) in PGL2(11), for example).
inline PermutationGroup klein_normalizer(const PermutationGroup& g,
                                         const PermutationGroup* socle = nullptr,
                                         const Budget& budget = Budget::defaults()) {
  std::vector<Perm> involutions;
  g.for_each_element(
      [&](const Perm& x) {
        if (x.order() == 2 && (!socle || socle->contains(x))) involutions.push_back(x);
      },
      budget.max_enumerate);
  for (std::size_t i = 0; i < involutions.size(); ++i)
    for (std::size_t j = i + 1; j < involutions.size(); ++j) {
      const Perm &x = involutions[i], &y = involutions[j];
      Perm xy = x * y;
      if (xy != y * x || xy.order() != 2) continue;
      std::vector<Perm> v{Perm(g.degree()), x, y, xy};
      auto in_v = [&](const Perm& z) { return std::find(v.begin(), v.end(), z) != v.end(); };
      std::vector<Perm> members;
      std::uint64_t count = 0;
      g.for_each_element(
          [&](const Perm& z) {
            Perm zi = z.inverse();
            if (in_v(zi * x * z) && in_v(zi * y * z)) {
              ++count;
              if (!z.is_identity()) members.push_back(z);
            }
          },
          budget.max_enumerate);
      return PermutationGroup(g.degree(), std::move(members), Integer(count));
    }
  throw InvalidInput("group has no Klein four-subgroup");
}

// --- re-actions ---------------------------------------------------------

// Transitive action of G on the right cosets of H, with the data needed to
// transport arbitrary elements (socle generators, outer elements) into it.
struct CosetAction {
  PermutationGroup image;
  std::vector<Perm> reps;       // reps[0] = identity
  std::vector<Perm> rep_invs;
  std::shared_ptr<const StabilizerChain> h_chain;

  Perm act(const Perm& g) const {
    std::vector<Point> img(reps.size());
    std::vector<char> used(reps.size(), 0);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      Perm t = reps[i] * g;
      bool ok = false;
      for (std::size_t j = 0; j < reps.size(); ++j) {
        if (used[j]) continue;
        if (h_chain->contains(t * rep_invs[j])) {
          img[i] = static_cast<Point>(j);
          used[j] = 1;
          ok = true;
          break;
        }
      }
      if (!ok) throw InvalidInput("element does not act on the coset space");
    }
    return Perm::from_images(img);
  }
};

inline CosetAction coset_action(const PermutationGroup& g, const PermutationGroup& h,
                                const Budget& budget = Budget::defaults()) {
  if (h.degree() != g.degree()) throw DegreeMismatch("subgroup degree mismatch");
  for (const Perm& x : h.generators())
    if (!g.contains(x)) throw NotASubgroup("H is not contained in G");
  Integer index = g.order() / h.order();
  if (g.order() % h.order() != 0) throw InternalCheckFailure("subgroup order does not divide");
  if (index > budget.max_index) throw IndexTooLarge("coset index exceeds budget");
  std::size_t n = static_cast<std::size_t>(index);

  auto h_chain = std::make_shared<StabilizerChain>(
      StabilizerChain::build(h.degree(), h.generators(), ChainOptions{{}, h.order()}));
  std::vector<Perm> reps{Perm(g.degree())}, rep_invs{Perm(g.degree())};
  std::vector<std::vector<Point>> gen_images(g.generators().size());
  for (auto& v : gen_images) v.assign(n, 0);
  for (std::size_t head = 0; head < reps.size(); ++head) {
    for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
      Perm t = reps[head] * g.generators()[gi];
      std::size_t found = reps.size();
      for (std::size_t j = 0; j < reps.size(); ++j)
        if (h_chain->contains(t * rep_invs[j])) {
          found = j;
          break;
        }
      if (found == reps.size()) {
        if (reps.size() >= n) throw InternalCheckFailure("coset enumeration overflow");
        rep_invs.push_back(t.inverse());
        reps.push_back(std::move(t));
      }
      gen_images[gi][head] = static_cast<Point>(found);
    }
  }
  if (reps.size() != n) throw InternalCheckFailure("coset enumeration undercounted");
  std::vector<Perm> igens;
  for (auto& v : gen_images) igens.push_back(Perm::from_images(std::move(v)));
  PermutationGroup image(n, std::move(igens));
  if (image.order() != g.order())
    throw UnfaithfulAction("coset action has a nontrivial kernel");
  return CosetAction{PermutationGroup(image.degree(), image.generators(), g.order()),
                     std::move(reps), std::move(rep_invs), std::move(h_chain)};
}

inline ConstructedGroup apply_coset_action(const ConstructedGroup& src,
                                           const PermutationGroup& h, const std::string& label,
                                           const Budget& budget = Budget::defaults()) {
  CosetAction act = coset_action(src.group, h, budget);
  ConstructedGroup out{act.image, std::nullopt, {}, src.name + "/cosets:" + label};
  if (src.socle) {
    std::vector<Perm> sg;
    for (const Perm& t : src.socle->generators()) sg.push_back(act.act(t));
    out.socle = PermutationGroup(act.image.degree(), std::move(sg), src.socle->order());
    if (out.socle->chain().order() != src.socle->order())
      throw UnfaithfulAction("socle does not act faithfully on the cosets");
  }
  for (const auto& [k, x] : src.outer) out.outer.emplace_back(k, act.act(x));
  return out;
}

// Action on unordered pairs of distinct points.
inline ConstructedGroup pairs_action(const ConstructedGroup& src,
                                     const Budget& budget = Budget::defaults()) {
  std::size_t n = src.group.degree();
  if (n < 2) throw InvalidInput("pairs action needs degree >= 2");
  std::size_t np = n * (n - 1) / 2;
  if (np > budget.max_points) throw BudgetExceeded("pairs domain exceeds budget");
  std::vector<std::vector<Point>> pair_index(n, std::vector<Point>(n, 0));
  {
    Point idx = 0;
    for (Point i = 0; i < n; ++i)
      for (Point j = i + 1; j < n; ++j) {
        pair_index[i][j] = pair_index[j][i] = idx++;
      }
  }
  auto map_perm = [&](const Perm& g) {
    std::vector<Point> img(np);
    for (Point i = 0; i < n; ++i)
      for (Point j = i + 1; j < n; ++j) img[pair_index[i][j]] = pair_index[g[i]][g[j]];
    return Perm::from_images(img);
  };
  std::vector<Perm> gens;
  for (const Perm& g : src.group.generators()) gens.push_back(map_perm(g));
  PermutationGroup image(np, std::move(gens));
  if (image.order() != src.group.order()) throw UnfaithfulAction("pairs action is unfaithful");
  ConstructedGroup out{PermutationGroup(np, image.generators(), src.group.order()),
                       std::nullopt,
                       {},
                       src.name + "/pairs"};
  if (src.socle) {
    std::vector<Perm> sg;
    for (const Perm& t : src.socle->generators()) sg.push_back(map_perm(t));
    out.socle = PermutationGroup(np, std::move(sg), src.socle->order());
    if (out.socle->chain().order() != src.socle->order())
      throw UnfaithfulAction("socle unfaithful on pairs");
  }
  for (const auto& [k, x] : src.outer) out.outer.emplace_back(k, map_perm(x));
  return out;
}

}  // namespace prodact
