#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prodact/constructions.hpp"
#include "prodact/errors.hpp"
#include "prodact/group.hpp"
#include "prodact/numeric.hpp"

namespace prodact {

// Saxl graph: vertices are the domain, edges the base pairs. Neighborhoods
// are unions of regular point-stabilizer orbits; the graph itself is never
// materialized, adjacency comes from translating Sigma(0).
struct SaxlContext {
  PermutationGroup g;
  StabilizerChain chain0;          // chain based at 0
  Integer h_order;
  OrbitPartition suborbits;        // orbits of G_0
  std::vector<char> regular_id;    // per orbit id
  std::vector<Point> sigma0;       // neighbors of 0, sorted
  std::uint64_t r = 0;
};

inline SaxlContext make_saxl_context(const PermutationGroup& g,
                                     const Budget& budget = Budget::defaults()) {
  (void)budget;
  if (!g.is_transitive()) throw IntransitiveInput("Saxl graphs need a transitive group");
  StabilizerChain c0 = g.chain_with_base({0});
  std::vector<Perm> hgens = c0.strong_generators(1);
  Integer h_order = c0.order_from(1);
  OrbitPartition sub = orbit_partition(g.degree(), hgens);
  std::vector<char> reg(sub.count(), 0);
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < sub.count(); ++i) {
    if (sub.orbit_id[0] == static_cast<std::int32_t>(i)) continue;  // trivial suborbit
    if (Integer(sub.sizes[i]) == h_order) {
      reg[i] = 1;
      ++r;
    }
  }
  if (r == 0) throw NoSaxlGraph("the group has no regular suborbit (base size exceeds 2)");
  std::vector<Point> sigma0;
  for (Point x = 0; x < g.degree(); ++x)
    if (reg[sub.orbit_id[x]]) sigma0.push_back(x);
  return SaxlContext{g, std::move(c0), std::move(h_order), std::move(sub), std::move(reg),
                     std::move(sigma0), r};
}

// Sigma(v) = Sigma(0)^{u} for any u with 0^u = v.
inline std::vector<Point> saxl_neighborhood(const SaxlContext& ctx, Point v) {
  Perm u = ctx.chain0.transversal(0, v);
  std::vector<Point> out;
  out.reserve(ctx.sigma0.size());
  for (Point x : ctx.sigma0) out.push_back(u[x]);
  std::sort(out.begin(), out.end());
  return out;
}

struct SaxlReport {
  Integer valency;
  std::uint64_t r = 0;
  Integer h_order;
  bool eulerian = false;
  std::optional<unsigned> diameter;
  bool connected = true;
  std::optional<bool> star;
  std::optional<bool> star_star;
};

inline SaxlReport saxl_summary(const SaxlContext& ctx) {
  SaxlReport rep;
  rep.r = ctx.r;
  rep.h_order = ctx.h_order;
  rep.valency = ctx.h_order * ctx.r;
  if (Integer(ctx.sigma0.size()) != rep.valency)
    throw InternalCheckFailure("neighborhood size disagrees with r |H|");
  rep.eulerian = rep.valency % 2 == 0;
  return rep;
}

namespace detail {

inline std::pair<unsigned, bool> eccentricity(const SaxlContext& ctx, Point start) {
  const std::size_t n = ctx.g.degree();
  std::vector<std::int32_t> dist(n, -1);
  std::vector<Point> queue{start};
  dist[start] = 0;
  unsigned ecc = 0;
  std::size_t reached = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Point v = queue[head];
    Perm u = ctx.chain0.transversal(0, v);
    for (Point s : ctx.sigma0) {
      Point w = u[s];
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        ecc = std::max<unsigned>(ecc, dist[w]);
        queue.push_back(w);
        ++reached;
      }
    }
  }
  return {ecc, reached == n};
}

}  // namespace detail

// BFS from one vertex; vertex-transitivity makes its eccentricity the
// diameter, cross-checked from three seeded sample vertices.
inline SaxlReport saxl_diameter(const SaxlContext& ctx, SaxlReport rep = {}) {
  if (rep.r == 0) rep = saxl_summary(ctx);
  auto [ecc, connected] = detail::eccentricity(ctx, 0);
  rep.connected = connected;
  if (!connected) {
    rep.diameter.reset();
    return rep;
  }
  std::uint64_t state = 0x8a5c95eed1ull;
  for (int s = 0; s < 3; ++s) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    Point seed = static_cast<Point>((state >> 11) % ctx.g.degree());
    auto [e2, c2] = detail::eccentricity(ctx, seed);
    if (!c2 || e2 != ecc)
      throw InternalCheckFailure("eccentricity is not vertex-independent");
  }
  rep.diameter = ecc;
  return rep;
}

// (star): any two vertices have a common neighbor. By transitivity it is
// enough to test beta = 0 against one representative per suborbit.
inline bool check_star(const SaxlContext& ctx) {
  std::vector<char> in_sigma0(ctx.g.degree(), 0);
  for (Point x : ctx.sigma0) in_sigma0[x] = 1;
  for (std::size_t i = 0; i < ctx.suborbits.count(); ++i) {
    Point repr = ctx.suborbits.reps[i];
    Perm u = ctx.chain0.transversal(0, repr);
    bool met = false;
    for (Point s : ctx.sigma0)
      if (in_sigma0[u[s]]) {
        met = true;
        break;
      }
    if (!met) return false;
  }
  return true;
}

// (star star): Sigma(alpha) meets every regular G_beta-orbit. In double-coset
// terms (representatives x of (H,H) cosets, regular-coset representatives y):
// some z in HyH has H meet H^z = H^x meet H^z = 1. Points: for each suborbit
// representative x and each regular suborbit Delta, some gamma in Delta lies
// in Sigma(x). The brute-force variant scans every beta instead of one per
// suborbit.
inline bool check_star_star(const SaxlContext& ctx, bool brute_force = false) {
  const std::size_t n = ctx.g.degree();
  std::vector<Point> betas;
  if (brute_force) {
    for (Point b = 0; b < n; ++b) betas.push_back(b);
  } else {
    betas = ctx.suborbits.reps;
  }
  std::vector<char> hit(ctx.suborbits.count(), 0);
  for (Point b : betas) {
    std::fill(hit.begin(), hit.end(), 0);
    Perm u = ctx.chain0.transversal(0, b);
    for (Point s : ctx.sigma0) hit[ctx.suborbits.orbit_id[u[s]]] = 1;
    for (std::size_t i = 0; i < ctx.suborbits.count(); ++i)
      if (ctx.regular_id[i] && !hit[i]) return false;
  }
  return true;
}

// --- regular suborbit atlas for L2(q) on pairs of projective points -------

// Names the regular orbits of the pair stabilizer: the two orbits meeting
// the pairs through the fixed projective points ("torus-adjacent"), and the
// generic orbits of pairs {u, v} of nonzero field elements, labelled by
// (s, t) with -s t^{-1} a non-square.
struct PairsOrbitAtlas {
  std::uint32_t q = 0;
  std::uint32_t a = 0;  // 7 if q = 1 mod 4, else 5
  std::uint64_t regular_count = 0;
  struct OrbitInfo {
    Point rep = 0;
    std::uint64_t size = 0;
    bool torus_adjacent = false;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> st;  // field elements
  };
  std::vector<OrbitInfo> orbits;
};

inline PairsOrbitAtlas psl2_pairs_orbit_atlas(std::uint32_t q,
                                              const Budget& budget = Budget::defaults()) {
  if (q % 2 == 0 || q < 7 || q > 49) throw InvalidInput("atlas supports odd 7 <= q <= 49");
  ConstructedGroup psl = projective_family(ProjectiveFamily::psl2, q);
  ConstructedGroup onpairs = pairs_action(psl, budget);
  GaloisField F(q);
  const std::size_t npts = q + 1;
  // pair index enumeration matches pairs_action: (i < j) row-major;
  // pair 0 is {0, 1} = {infinity, field 0}, the atlas base point
  std::vector<std::pair<Point, Point>> decode;
  for (Point i = 0; i < npts; ++i)
    for (Point j = i + 1; j < npts; ++j) decode.emplace_back(i, j);

  SaxlContext ctx = make_saxl_context(onpairs.group, budget);
  PairsOrbitAtlas atlas;
  atlas.q = q;
  atlas.a = q % 4 == 1 ? 7 : 5;
  atlas.regular_count = ctx.r;
  for (std::size_t i = 0; i < ctx.suborbits.count(); ++i) {
    if (!ctx.regular_id[i]) continue;
    PairsOrbitAtlas::OrbitInfo info;
    info.rep = ctx.suborbits.reps[i];
    info.size = ctx.suborbits.sizes[i];
    bool touches_fixed = false;
    for (Point x = 0; x < onpairs.group.degree(); ++x) {
      if (ctx.suborbits.orbit_id[x] != static_cast<std::int32_t>(i)) continue;
      auto [pa, pb] = decode[x];
      if (pa <= 1) touches_fixed = true;  // contains infinity or field 0
    }
    info.torus_adjacent = touches_fixed;
    if (!touches_fixed) {
      auto [pa, pb] = decode[info.rep];
      std::uint32_t u = pa - 1, v = pb - 1;  // nonzero field elements
      // every member pair {u, v} of a generic regular orbit has -u v^{-1}
      // (equivalently -uv) a non-square
      for (Point x = 0; x < onpairs.group.degree(); ++x) {
        if (ctx.suborbits.orbit_id[x] != static_cast<std::int32_t>(i)) continue;
        auto [ma, mb] = decode[x];
        std::uint32_t mu = ma - 1, mv = mb - 1;
        if (F.is_square(F.neg(F.mul(mu, mv))))
          throw InternalCheckFailure("generic regular orbit violates the square-class rule");
      }
      info.st = {u, v};
    }
    atlas.orbits.push_back(info);
  }
  std::uint64_t torus = 0;
  for (const auto& o : atlas.orbits) torus += o.torus_adjacent;
  if (torus != 2) throw InternalCheckFailure("expected exactly two torus-adjacent orbits");
  if (atlas.regular_count != (q + atlas.a) / 4)
    throw InternalCheckFailure("regular orbit count disagrees with (q + a)/4");
  return atlas;
}

}  // namespace prodact
