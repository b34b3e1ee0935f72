#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "prodact/errors.hpp"
#include "prodact/numeric.hpp"
#include "prodact/perm.hpp"
#include "prodact/schreier.hpp"

namespace prodact {

// Orbit partition of the domain under a generator list. Orbits are numbered
// by first appearance scanning points in increasing order, so reps[i] is the
// minimum of orbit i.
struct OrbitPartition {
  std::vector<std::int32_t> orbit_id;  // per point
  std::vector<std::uint32_t> sizes;    // per orbit
  std::vector<Point> reps;             // per orbit, = min element

  std::size_t count() const { return sizes.size(); }
};

inline OrbitPartition orbit_partition(std::size_t degree, const std::vector<Perm>& gens) {
  OrbitPartition p;
  p.orbit_id.assign(degree, -1);
  std::vector<Point> queue;
  for (Point s = 0; s < degree; ++s) {
    if (p.orbit_id[s] >= 0) continue;
    std::int32_t id = static_cast<std::int32_t>(p.sizes.size());
    p.reps.push_back(s);
    p.sizes.push_back(0);
    queue.clear();
    queue.push_back(s);
    p.orbit_id[s] = id;
    std::uint32_t n = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Point x = queue[head];
      ++n;
      for (const Perm& g : gens) {
        Point y = g[x];
        if (p.orbit_id[y] < 0) {
          p.orbit_id[y] = id;
          queue.push_back(y);
        }
      }
    }
    p.sizes.back() = n;
  }
  return p;
}

struct ConjugacyClasses {
  std::vector<Perm> representatives;  // lexicographically minimal members
  std::vector<std::uint64_t> sizes;
};

// Keeps only generators that enlarge the generated group, stopping once the
// target order is reached. Deterministic; intended for small degrees.
inline std::vector<Perm> reduce_generators(std::size_t degree, const std::vector<Perm>& gens,
                                           const Integer& target_order) {
  std::vector<Perm> kept;
  StabilizerChain chain = StabilizerChain::build(degree, kept);
  for (const Perm& g : gens) {
    if (chain.order() == target_order) break;
    if (g.is_identity() || chain.contains(g)) continue;
    kept.push_back(g);
    chain = StabilizerChain::build(degree, kept);
  }
  return kept;
}

// Generators plus a lazily built stabilizer chain. Immutable once the chain
// exists; the chain build itself is single-threaded.
class PermutationGroup {
 public:
  PermutationGroup(std::size_t degree, std::vector<Perm> generators,
                   std::optional<Integer> known_order = std::nullopt)
      : degree_(degree), known_order_(std::move(known_order)) {
    if (degree == 0) throw InvalidInput("degree must be positive");
    gens_.reserve(generators.size());
    for (Perm& g : generators) {
      if (g.degree() != degree) throw DegreeMismatch("generator degree mismatch");
      if (!g.is_identity()) gens_.push_back(std::move(g));
    }
  }

  static PermutationGroup trivial(std::size_t degree) { return PermutationGroup(degree, {}); }

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }

  const StabilizerChain& chain() const {
    if (!chain_) {
      ChainOptions opt;
      opt.known_order = known_order_;
      chain_ = std::make_shared<StabilizerChain>(StabilizerChain::build(degree_, gens_, opt));
    }
    return *chain_;
  }

  // Chain with a prescribed base prefix; does not replace the cached chain.
  StabilizerChain chain_with_base(std::vector<Point> prefix) const {
    ChainOptions opt;
    opt.base_hint = std::move(prefix);
    opt.known_order = order();
    return StabilizerChain::build(degree_, gens_, opt);
  }

  Integer order() const {
    if (known_order_) return *known_order_;
    Integer o = chain().order();
    known_order_ = o;
    return o;
  }

  bool is_trivial() const { return gens_.empty() || order() == 1; }

  bool contains(const Perm& g) const {
    if (g.degree() != degree_) throw DegreeMismatch("membership test across degrees");
    return chain().contains(g);
  }

  // --- orbits ---------------------------------------------------------

  OrbitPartition orbits() const { return orbit_partition(degree_, gens_); }

  std::vector<Point> orbit_of(Point seed) const {
    if (seed >= degree_) throw InvalidInput("orbit seed out of range");
    std::vector<Point> orb;
    std::vector<char> seen(degree_, 0);
    orb.push_back(seed);
    seen[seed] = 1;
    for (std::size_t head = 0; head < orb.size(); ++head)
      for (const Perm& g : gens_) {
        Point y = g[orb[head]];
        if (!seen[y]) {
          seen[y] = 1;
          orb.push_back(y);
        }
      }
    std::sort(orb.begin(), orb.end());
    return orb;
  }

  // Witnesses u with seed^u = point, for every point in the orbit.
  std::vector<std::pair<Point, Perm>> orbit_witnesses(Point seed) const {
    if (seed >= degree_) throw InvalidInput("orbit seed out of range");
    std::vector<std::optional<Perm>> wit(degree_);
    std::vector<Point> orb{seed};
    wit[seed] = Perm(degree_);
    for (std::size_t head = 0; head < orb.size(); ++head)
      for (const Perm& g : gens_) {
        Point y = g[orb[head]];
        if (!wit[y]) {
          wit[y] = *wit[orb[head]] * g;
          orb.push_back(y);
        }
      }
    std::sort(orb.begin(), orb.end());
    std::vector<std::pair<Point, Perm>> out;
    out.reserve(orb.size());
    for (Point x : orb) out.emplace_back(x, std::move(*wit[x]));
    return out;
  }

  std::vector<std::vector<Point>> all_orbits() const {
    OrbitPartition p = orbits();
    std::vector<std::vector<Point>> out(p.count());
    for (Point x = 0; x < degree_; ++x) out[p.orbit_id[x]].push_back(x);
    return out;  // sorted within and ordered by minimum by construction
  }

  bool is_transitive() const {
    return degree_ == 1 || orbit_of(0).size() == degree_;
  }

  // --- stabilizers ----------------------------------------------------

  PermutationGroup pointwise_stabilizer(const std::vector<Point>& points) const {
    StabilizerChain c = chain_with_base(points);
    std::vector<Perm> gens = c.strong_generators(points.size());
    Integer order = c.order_from(points.size());
    // keep generator sets small where rebuilding chains is cheap
    if (degree_ <= 4096 && gens.size() > 8) gens = reduce_generators(degree_, gens, order);
    return PermutationGroup(degree_, std::move(gens), std::move(order));
  }

  PermutationGroup point_stabilizer(Point p) const {
    return pointwise_stabilizer({p});
  }

  PermutationGroup setwise_stabilizer(const std::vector<Point>& set,
                                      const Budget& budget = Budget::defaults()) const {
    std::vector<char> in_set(degree_, 0);
    for (Point p : set) {
      if (p >= degree_) throw InvalidInput("set point out of range");
      in_set[p] = 1;
    }
    auto preserves = [&](const Perm& g) {
      for (Point p : set)
        if (!in_set[g[p]]) return false;
      return true;
    };
    std::vector<Perm> found;
    std::uint64_t count = 0;
    if (order() <= budget.setwise_filter_bound) {
      chain().for_each_element([&](const Perm& g) {
        if (preserves(g)) {
          ++count;
          if (!g.is_identity()) found.push_back(g);
        }
      });
    } else {
      // Backtrack over base images: at each level the image of a base point
      // must land in the set exactly when the base point itself does.
      const StabilizerChain& c = chain();
      std::uint64_t nodes = 0;
      Perm tmp;
      auto rec = [&](auto&& self, std::size_t level, const Perm& tail) -> void {
        if (++nodes > budget.max_search_nodes)
          throw BudgetExceeded("setwise stabilizer search budget exhausted");
        if (level == c.levels().size()) {
          if (preserves(tail)) {
            ++count;
            if (!tail.is_identity()) found.push_back(tail);
          }
          return;
        }
        const auto& L = c.levels()[level];
        bool base_in = in_set[L.base];
        for (Point w : L.orbit) {
          if (static_cast<bool>(in_set[tail[w]]) != base_in) continue;
          Perm child;
          Perm::mul(c.transversal(level, w), tail, child);
          self(self, level + 1, child);
        }
      };
      rec(rec, 0, Perm(degree_));
    }
    if (found.size() > 8) found = reduce_generators(degree_, found, Integer(count));
    return PermutationGroup(degree_, std::move(found), Integer(count));
  }

  // --- element enumeration -------------------------------------------

  template <typename F>
  void for_each_element(F&& f, std::uint64_t bound) const {
    if (order() > bound) throw OrderExceedsBound("group order exceeds enumeration bound");
    chain().for_each_element(std::forward<F>(f));
  }

  std::vector<Perm> elements(std::uint64_t bound) const {
    std::vector<Perm> out;
    for_each_element([&](const Perm& g) { out.push_back(g); }, bound);
    return out;
  }

  ConjugacyClasses conjugacy_classes(std::uint64_t bound) const {
    std::vector<Perm> elems = elements(bound);
    std::unordered_map<Perm, std::uint32_t, PermHash> index;
    index.reserve(elems.size() * 2);
    for (std::uint32_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
    std::vector<char> visited(elems.size(), 0);
    std::vector<Perm> gen_invs;
    for (const Perm& g : gens_) gen_invs.push_back(g.inverse());

    std::vector<std::pair<Perm, std::uint64_t>> classes;
    std::vector<std::uint32_t> queue;
    for (std::uint32_t i = 0; i < elems.size(); ++i) {
      if (visited[i]) continue;
      queue.clear();
      queue.push_back(i);
      visited[i] = 1;
      Perm rep = elems[i];
      std::uint64_t size = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const Perm& x = elems[queue[head]];
        ++size;
        if (x < rep) rep = x;
        for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
          Perm y = gen_invs[gi] * x * gens_[gi];
          std::uint32_t j = index.at(y);
          if (!visited[j]) {
            visited[j] = 1;
            queue.push_back(j);
          }
        }
      }
      classes.emplace_back(std::move(rep), size);
    }
    std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second < b.second;
      return a.first < b.first;
    });
    ConjugacyClasses out;
    for (auto& [rep, size] : classes) {
      out.representatives.push_back(std::move(rep));
      out.sizes.push_back(size);
    }
    return out;
  }

  std::uint64_t minimal_degree(std::uint64_t bound) const {
    std::uint64_t best = degree_ + 1;
    for_each_element(
        [&](const Perm& g) {
          if (g.is_identity()) return;
          best = std::min<std::uint64_t>(best, g.n_moved());
        },
        bound);
    if (best > degree_) throw InvalidInput("minimal degree of the trivial group is undefined");
    return best;
  }

  // --- primitivity ----------------------------------------------------

  // Minimal block containing {a, b}: the finest G-congruence joining them.
  std::vector<Point> minimal_block(Point a, Point b) const {
    std::vector<Point> parent(degree_);
    for (Point i = 0; i < degree_; ++i) parent[i] = i;
    auto find = [&](Point x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    std::vector<Point> pending;
    auto merge = [&](Point x, Point y) {
      Point rx = find(x), ry = find(y);
      if (rx == ry) return;
      if (rx > ry) std::swap(rx, ry);
      parent[ry] = rx;
      pending.push_back(ry);
    };
    merge(a, b);
    for (std::size_t head = 0; head < pending.size(); ++head) {
      Point gamma = pending[head];
      Point lambda = find(gamma);
      for (const Perm& g : gens_) merge(g[gamma], g[lambda]);
    }
    Point root = find(a);
    std::vector<Point> block;
    for (Point i = 0; i < degree_; ++i)
      if (find(i) == root) block.push_back(i);
    return block;
  }

  // Decided by minimal block systems over the pairs {0, b}.
  bool is_primitive(const Budget& budget = Budget::defaults(),
                    std::vector<Point>* witness_block = nullptr) const {
    if (!is_transitive()) throw IntransitiveInput("primitivity is undefined for intransitive groups");
    if (degree_ > budget.max_block_search_degree)
      throw BudgetExceeded("degree exceeds block search budget");
    if (degree_ == 1) return true;
    for (Point b = 1; b < degree_; ++b) {
      std::vector<Point> block = minimal_block(0, b);
      if (block.size() < degree_) {  // proper nontrivial block (size >= 2 by construction)
        if (witness_block) *witness_block = std::move(block);
        return false;
      }
    }
    return true;
  }

  // --- structure ------------------------------------------------------

  PermutationGroup normal_closure(std::vector<Perm> seeds) const {
    std::vector<Perm> closure_gens;
    for (Perm& s : seeds)
      if (!s.is_identity()) closure_gens.push_back(std::move(s));
    std::vector<Perm> gen_invs;
    for (const Perm& g : gens_) gen_invs.push_back(g.inverse());
    StabilizerChain c = StabilizerChain::build(degree_, closure_gens);
    for (std::size_t i = 0; i < closure_gens.size(); ++i) {
      for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
        Perm conj = gen_invs[gi] * closure_gens[i] * gens_[gi];
        if (!c.contains(conj)) {
          closure_gens.push_back(std::move(conj));
          c = StabilizerChain::build(degree_, closure_gens);
        }
      }
    }
    return PermutationGroup(degree_, std::move(closure_gens), c.order());
  }

  PermutationGroup derived_subgroup() const {
    std::vector<Perm> comms;
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = i + 1; j < gens_.size(); ++j) {
        Perm c = gens_[i].inverse() * gens_[j].inverse() * gens_[i] * gens_[j];
        if (!c.is_identity()) comms.push_back(std::move(c));
      }
    return normal_closure(std::move(comms));
  }

  bool is_soluble() const {
    PermutationGroup cur = *this;
    while (true) {
      if (cur.order() == 1) return true;
      PermutationGroup next = cur.derived_subgroup();
      if (next.order() == cur.order()) return false;
      cur = std::move(next);
    }
  }

 private:
  std::size_t degree_;
  std::vector<Perm> gens_;
  mutable std::shared_ptr<StabilizerChain> chain_;
  mutable std::optional<Integer> known_order_;
};

}  // namespace prodact
