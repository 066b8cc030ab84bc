#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace pglatlas {

using Point = std::uint32_t;

/// A permutation of {0, ..., degree-1}, stored as its image list.
///
/// Products read left to right: (a * b)(x) = b(a(x)), i.e. apply a first.
class Perm {
 public:
  Perm() = default;
  /// Throws std::invalid_argument unless `images` is a bijection.
  explicit Perm(std::vector<Point> images);
  Perm(std::initializer_list<Point> images) : Perm(std::vector<Point>(images)) {}

  static Perm identity(std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point x) const { return images_[x]; }
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const;
  Perm inverse() const;
  /// Least n >= 1 with this^n = 1.
  std::uint64_t order() const;

  friend Perm operator*(const Perm& a, const Perm& b);
  bool operator==(const Perm&) const = default;
  auto operator<=>(const Perm&) const = default;

  std::string to_string() const;

 private:
  std::vector<Point> images_;
};

}  // namespace pglatlas
