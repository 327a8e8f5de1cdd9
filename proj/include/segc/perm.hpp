#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace segc {

// Permutation of {0, ..., degree-1} stored as its image table.
class Perm {
public:
  using Point = std::uint16_t;

  Perm() = default;
  explicit Perm(std::vector<Point> images);  // validates bijectivity
  static Perm identity(int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  Point operator()(Point x) const { return images_[x]; }
  const std::vector<Point>& images() const { return images_; }

  Perm inverse() const;
  bool is_identity() const;
  long long order() const;

  bool operator==(const Perm& o) const { return images_ == o.images_; }
  bool operator!=(const Perm& o) const { return images_ != o.images_; }
  bool operator<(const Perm& o) const { return images_ < o.images_; }

private:
  std::vector<Point> images_;
};

// Composition: (a * b)(x) = a(b(x)), i.e. b acts first.
Perm operator*(const Perm& a, const Perm& b);

struct PermHash {
  size_t operator()(const Perm& p) const {
    size_t h = 1469598103934665603ull;
    for (auto v : p.images()) {
      h ^= static_cast<size_t>(v) + 0x9e3779b9;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// One-based disjoint-cycle text, e.g. "(1 3 2)" or "()" for the identity.
std::string cycle_string(const Perm& p);

// Parses a generator list in cycle notation: generators separated by commas,
// each one or more juxtaposed cycles over 1-based points (applied left to
// right). Returns the generators padded to the maximal point seen, or to
// min_degree if that is larger.
std::vector<Perm> parse_cycle_generators(const std::string& text, int min_degree = 1);

}  // namespace segc
