#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "prodact/errors.hpp"
#include "prodact/numeric.hpp"
#include "prodact/perm.hpp"

namespace prodact {

struct ChainOptions {
  // Prescribed initial base points; kept even when their orbits are trivial,
  // so pointwise stabilizers can be read off a level boundary.
  std::vector<Point> base_hint;
  // When the target order is known (wreath products, orbit-stabilizer), the
  // build sifts seeded pseudo-random words until the chain order matches.
  // Termination on product-of-orbit-lengths == order is exact because every
  // inserted element is a word in the input generators.
  std::optional<Integer> known_order;
  // Consecutive fruitless random sifts tolerated before falling back to the
  // deterministic completion pass.
  std::uint32_t random_stall_cap = 512;
  std::uint64_t seed = 0x5eed0f9b97f4a7c5ull;  // fixed: chains are reproducible
};

// Base, strong generators and transversals in Schreier-vector form.
// Base points are chosen smallest-moved-first; construction is deterministic.
class StabilizerChain {
 public:
  struct Level {
    Point base = 0;
    std::vector<std::uint32_t> gen_ids;  // into sgens_: generators fixing all earlier base points
    std::vector<Point> orbit;            // BFS order; orbit[0] == base
    std::vector<std::int32_t> pos;       // degree-sized; index into orbit, -1 outside
    std::vector<std::int32_t> from;      // index into gen_ids of the edge reaching the point
  };

  static StabilizerChain build(std::size_t degree, const std::vector<Perm>& generators,
                               ChainOptions opt = {}) {
    StabilizerChain c;
    c.degree_ = degree;
    for (Point b : opt.base_hint) {
      if (b >= degree) throw InvalidInput("base hint point out of range");
      c.levels_.push_back(Level{b, {}, {}, {}, {}});
      c.rebuild_orbit(c.levels_.size() - 1);
    }
    for (const Perm& g : generators) {
      if (g.degree() != degree) throw DegreeMismatch("generator degree mismatch");
      if (g.is_identity()) continue;
      Perm r = g;
      c.sift_in_place(r, 0);
      if (!r.is_identity()) c.insert_generator(std::move(r));
    }
    bool complete = false;
    if (opt.known_order) {
      if (c.order() > *opt.known_order)
        throw InternalCheckFailure("chain order exceeds the prescribed group order");
      complete = c.randomized_fill(*opt.known_order, opt);
    }
    if (!complete) c.deterministic_completion();
    if (opt.known_order && c.order() != *opt.known_order)
      throw InternalCheckFailure("completed chain order disagrees with the prescribed order");
    return c;
  }

  std::size_t degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }

  std::vector<Point> base() const {
    std::vector<Point> b;
    b.reserve(levels_.size());
    for (const auto& l : levels_) b.push_back(l.base);
    return b;
  }

  Integer order() const { return order_from(0); }

  // Order of the stabilizer of the first `fixed` base points.
  Integer order_from(std::size_t fixed) const {
    Integer o = 1;
    for (std::size_t i = fixed; i < levels_.size(); ++i) o *= levels_[i].orbit.size();
    return o;
  }

  // Residue of g after sifting; `reached` reports how far it got
  // (levels().size() when it passed every level).
  Perm sift(const Perm& g, std::size_t* reached = nullptr) const {
    Perm r = g;
    std::size_t lvl = sift_in_place(r, 0);
    if (reached) *reached = lvl;
    return r;
  }

  bool contains(const Perm& g) const {
    if (g.degree() != degree_) return false;
    std::size_t lvl;
    Perm r = sift(g, &lvl);
    return lvl == levels_.size() && r.is_identity();
  }

  // Witness mapping base of `level` to `to` (which must be in the orbit).
  Perm transversal(std::size_t level, Point to) const {
    const Level& L = levels_[level];
    if (L.pos[to] < 0) throw InvalidInput("point not in level orbit");
    std::vector<std::int32_t> path;  // gen ids from `to` back to base
    Point x = to;
    while (x != L.base) {
      std::int32_t j = L.from[L.pos[x]];
      path.push_back(j);
      x = sgen_invs_[L.gen_ids[j]][x];
    }
    Perm u(degree_), tmp;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      Perm::mul(u, sgens_[L.gen_ids[*it]], tmp);
      std::swap(u, tmp);
    }
    return u;
  }

  // Generators of the stabilizer of the first `fixed` base points.
  std::vector<Perm> strong_generators(std::size_t fixed = 0) const {
    std::vector<Perm> out;
    for (std::size_t i = 0; i < sgens_.size(); ++i)
      if (sgen_level_[i] >= fixed) out.push_back(sgens_[i]);
    return out;
  }

  // Enumerates all elements as transversal products, deterministic order.
  template <typename F>
  void for_each_element(F&& f) const {
    Perm acc(degree_);
    enumerate_rec(0, acc, f);
  }

 private:
  std::size_t degree_ = 0;
  std::vector<Perm> sgens_, sgen_invs_;
  std::vector<std::size_t> sgen_level_;  // deepest level whose base prefix the gen fixes
  std::vector<Level> levels_;

  template <typename F>
  void enumerate_rec(std::size_t level, const Perm& acc, F&& f) const {
    if (level == levels_.size()) {
      f(acc);
      return;
    }
    const Level& L = levels_[level];
    Perm next;
    for (Point w : L.orbit) {
      Perm::mul(transversal(level, w), acc, next);
      enumerate_rec(level + 1, next, f);
    }
  }

  void rebuild_orbit(std::size_t level) {
    Level& L = levels_[level];
    L.pos.assign(degree_, -1);
    L.orbit.clear();
    L.from.clear();
    L.orbit.push_back(L.base);
    L.from.push_back(-1);
    L.pos[L.base] = 0;
    for (std::size_t head = 0; head < L.orbit.size(); ++head) {
      Point x = L.orbit[head];
      for (std::size_t j = 0; j < L.gen_ids.size(); ++j) {
        Point y = sgens_[L.gen_ids[j]][x];
        if (L.pos[y] < 0) {
          L.pos[y] = static_cast<std::int32_t>(L.orbit.size());
          L.orbit.push_back(y);
          L.from.push_back(static_cast<std::int32_t>(j));
        }
      }
    }
  }

  // Multiplies the inverse transversal of `to` into g (on the right).
  void apply_inverse_transversal(std::size_t level, Perm& g, Point to, Perm& tmp) const {
    const Level& L = levels_[level];
    Point x = to;
    while (x != L.base) {
      std::int32_t j = L.from[L.pos[x]];
      const Perm& gi = sgen_invs_[L.gen_ids[j]];
      Perm::mul(g, gi, tmp);
      std::swap(g, tmp);
      x = gi[x];
    }
  }

  // Returns the level where g stuck (base image outside the orbit), or
  // levels_.size() if it passed every level. g becomes the residue.
  std::size_t sift_in_place(Perm& g, std::size_t from_level) const {
    Perm tmp;
    for (std::size_t l = from_level; l < levels_.size(); ++l) {
      Point beta = g[levels_[l].base];
      if (beta == levels_[l].base) continue;
      if (levels_[l].pos[beta] < 0) return l;
      apply_inverse_transversal(l, g, beta, tmp);
    }
    return levels_.size();
  }

  // Stores a nontrivial residue as a strong generator and refreshes the
  // orbits it participates in. Returns the level it was assigned to.
  std::size_t insert_generator(Perm g) {
    std::size_t lvl = 0;
    while (lvl < levels_.size() && g[levels_[lvl].base] == levels_[lvl].base) ++lvl;
    if (lvl == levels_.size()) {
      Point b = g.smallest_moved();
      levels_.push_back(Level{b, {}, {}, {}, {}});
    }
    std::uint32_t id = static_cast<std::uint32_t>(sgens_.size());
    sgen_invs_.push_back(g.inverse());
    sgens_.push_back(std::move(g));
    sgen_level_.push_back(lvl);
    for (std::size_t i = 0; i <= lvl; ++i) levels_[i].gen_ids.push_back(id);
    for (std::size_t i = 0; i <= lvl; ++i) rebuild_orbit(i);
    return lvl;
  }

  bool randomized_fill(const Integer& target, const ChainOptions& opt) {
    if (order() == target) return true;
    if (sgens_.empty()) return false;
    std::vector<Perm> pool(sgens_.begin(), sgens_.end());
    const std::size_t orig = pool.size();
    while (pool.size() < 6) pool.push_back(pool[pool.size() % orig]);
    Perm acc = pool[0], tmp;
    std::uint64_t state = opt.seed;
    auto next = [&state]() {  // splitmix64
      state += 0x9e3779b97f4a7c15ull;
      std::uint64_t z = state;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      return z ^ (z >> 31);
    };
    std::uint32_t stall = 0;
    while (order() < target) {
      std::size_t a = next() % pool.size();
      std::size_t b = next() % pool.size();
      if (a == b) b = (b + 1) % pool.size();
      Perm::mul(pool[a], pool[b], tmp);
      std::swap(pool[a], tmp);
      Perm::mul(acc, pool[a], tmp);
      std::swap(acc, tmp);
      Perm r = acc;
      sift_in_place(r, 0);
      if (!r.is_identity()) {
        insert_generator(std::move(r));
        stall = 0;
      } else if (++stall > opt.random_stall_cap) {
        return false;
      }
    }
    return true;
  }

  // Classic Schreier generator processing, deepest level first.
  void deterministic_completion() {
    std::size_t l = levels_.size();
    while (l > 0) {
      std::size_t inserted = check_level(l - 1);
      if (inserted > levels_.size())
        --l;  // level verified
      else
        l = inserted + 1;  // re-verify from the insertion level downward
    }
  }

  // Returns levels_.size()+1 when every Schreier generator of the level
  // sifts to the identity; otherwise inserts one residue and returns its
  // level (always deeper than `level`).
  std::size_t check_level(std::size_t level) {
    Perm tmp;
    const Level& L = levels_[level];
    for (std::size_t oi = 0; oi < L.orbit.size(); ++oi) {
      Point x = L.orbit[oi];
      for (std::size_t j = 0; j < L.gen_ids.size(); ++j) {
        const Perm& g = sgens_[L.gen_ids[j]];
        Point y = g[x];
        std::int32_t ej = L.from[L.pos[y]];
        if (ej == static_cast<std::int32_t>(j) && sgen_invs_[L.gen_ids[j]][y] == x)
          continue;  // tree edge: Schreier generator is trivial
        Perm h = transversal(level, x);
        Perm::mul(h, g, tmp);
        std::swap(h, tmp);
        apply_inverse_transversal(level, h, y, tmp);
        if (h.is_identity()) continue;
        std::size_t lvl = sift_in_place(h, level + 1);
        if (lvl == levels_.size() && h.is_identity()) continue;
        std::size_t at = insert_generator(std::move(h));
        if (at <= level) throw InternalCheckFailure("Schreier residue landed above its level");
        return at;
      }
    }
    return levels_.size() + 1;
  }
};

}  // namespace prodact
