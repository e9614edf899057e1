#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace selfsim {

using Point = std::uint32_t;

/// A permutation of {0, ..., degree-1} in one-line form.  Products are read
/// left to right: x^(p*q) = (x^p)^q, matching a right action.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::size_t degree);
  /// Validates that `images` is a bijection.
  explicit Perm(std::vector<Point> images);

  /// One-line notation over {1, ..., n}.
  static Perm from_one_line(std::span<const int> one_based);
  static Perm from_one_line(std::string_view text);

  std::size_t degree() const noexcept { return img_.size(); }
  Point operator[](Point x) const noexcept { return img_[x]; }
  const std::vector<Point>& images() const noexcept { return img_; }

  bool is_identity() const noexcept;
  Perm inverse() const;
  /// First moved point, or degree() for the identity.
  Point first_moved() const noexcept;

  /// 1-based one-line notation, e.g. "2 3 1".
  std::string to_string() const;

  friend Perm operator*(const Perm& a, const Perm& b);
  Perm& operator*=(const Perm& b);
  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<Point> img_;
};

/// Order of a permutation as an element (lcm of cycle lengths), saturating at
/// UINT64_MAX.
std::uint64_t element_order(const Perm& p);

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace selfsim
