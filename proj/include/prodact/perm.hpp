#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "prodact/errors.hpp"
#include "prodact/numeric.hpp"

namespace prodact {

using Point = std::uint32_t;

// A permutation of {0..degree-1} stored as an image array. Composition is
// left-to-right: (p*q)[i] = q[p[i]], matching a right action on points.
class Perm {
 public:
  Perm() = default;

  explicit Perm(std::size_t degree) : img_(degree) {
    std::iota(img_.begin(), img_.end(), Point{0});
  }

  static Perm from_images(std::vector<Point> images) {
    std::vector<char> seen(images.size(), 0);
    for (Point v : images) {
      if (v >= images.size() || seen[v])
        throw MalformedGenerator("image array is not a bijection");
      seen[v] = 1;
    }
    Perm p;
    p.img_ = std::move(images);
    return p;
  }

  // Cycle input uses 0-based points; omitted points are fixed.
  static Perm from_cycles(std::size_t degree,
                          std::initializer_list<std::initializer_list<Point>> cycles) {
    Perm p(degree);
    for (const auto& cyc : cycles) {
      const Point* c = cyc.begin();
      std::size_t len = cyc.size();
      for (std::size_t i = 0; i < len; ++i) {
        Point from = c[i], to = c[(i + 1) % len];
        if (from >= degree || to >= degree)
          throw MalformedGenerator("cycle point out of range");
        p.img_[from] = to;
      }
    }
    return from_images(std::move(p.img_));  // re-validate
  }

  std::size_t degree() const { return img_.size(); }
  Point operator[](Point p) const { return img_[p]; }
  const std::vector<Point>& images() const { return img_; }

  bool is_identity() const {
    for (Point i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  // out = a, then b. Aliasing out with a or b is not allowed.
  static void mul(const Perm& a, const Perm& b, Perm& out) {
    const std::size_t n = a.img_.size();
    if (b.img_.size() != n) throw DegreeMismatch("composing permutations of different degree");
    out.img_.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.img_[i] = b.img_[a.img_[i]];
  }

  Perm operator*(const Perm& rhs) const {
    Perm out;
    mul(*this, rhs, out);
    return out;
  }

  Perm inverse() const {
    Perm out;
    out.img_.resize(img_.size());
    for (Point i = 0; i < img_.size(); ++i) out.img_[img_[i]] = i;
    return out;
  }

  bool operator==(const Perm& rhs) const { return img_ == rhs.img_; }
  bool operator!=(const Perm& rhs) const { return img_ != rhs.img_; }
  bool operator<(const Perm& rhs) const { return img_ < rhs.img_; }

  std::size_t n_moved() const {
    std::size_t c = 0;
    for (Point i = 0; i < img_.size(); ++i) c += img_[i] != i;
    return c;
  }

  // Degree if the permutation is the identity.
  Point smallest_moved() const {
    for (Point i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return i;
    return static_cast<Point>(img_.size());
  }

  std::vector<std::vector<Point>> cycles(bool include_fixed = false) const {
    std::vector<std::vector<Point>> out;
    std::vector<char> seen(img_.size(), 0);
    for (Point i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      std::vector<Point> cyc{i};
      seen[i] = 1;
      for (Point j = img_[i]; j != i; j = img_[j]) {
        seen[j] = 1;
        cyc.push_back(j);
      }
      if (cyc.size() > 1 || include_fixed) out.push_back(std::move(cyc));
    }
    return out;
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const auto& c : cycles()) o = std::lcm(o, static_cast<std::uint64_t>(c.size()));
    return o;
  }

  std::uint64_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (Point v : img_) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }

  std::string cycle_string() const {
    auto cyc = cycles();
    if (cyc.empty()) return "()";
    std::string s;
    for (const auto& c : cyc) {
      s += '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(c[i]);
      }
      s += ')';
    }
    return s;
  }

 private:
  std::vector<Point> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const { return static_cast<std::size_t>(p.hash()); }
};

}  // namespace prodact
