#include "selfsim/perm.hpp"

#include <numeric>
#include <sstream>

#include "selfsim/errors.hpp"

namespace selfsim {

Perm::Perm(std::size_t degree) : img_(degree) {
  std::iota(img_.begin(), img_.end(), Point{0});
}

Perm::Perm(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point x : img_) {
    if (x >= img_.size() || seen[x])
      fail(ErrorKind::invalid_argument, "images do not form a permutation");
    seen[x] = true;
  }
}

Perm Perm::from_one_line(std::span<const int> one_based) {
  std::vector<Point> img;
  img.reserve(one_based.size());
  for (int x : one_based) {
    if (x < 1) fail(ErrorKind::invalid_argument, "one-line entries are 1-based");
    img.push_back(static_cast<Point>(x - 1));
  }
  return Perm(std::move(img));
}

Perm Perm::from_one_line(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<int> values;
  int x = 0;
  while (in >> x) values.push_back(x);
  if (!in.eof())
    fail(ErrorKind::invalid_argument,
         "cannot parse permutation '" + std::string(text) + "'");
  return from_one_line(values);
}

bool Perm::is_identity() const noexcept {
  for (Point x = 0; x < img_.size(); ++x)
    if (img_[x] != x) return false;
  return true;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(img_.size());
  for (Point x = 0; x < img_.size(); ++x) r.img_[img_[x]] = x;
  return r;
}

Point Perm::first_moved() const noexcept {
  for (Point x = 0; x < img_.size(); ++x)
    if (img_[x] != x) return x;
  return static_cast<Point>(img_.size());
}

std::string Perm::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(img_[i] + 1);
  }
  return out;
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree())
    fail(ErrorKind::shape_mismatch, "permutation degrees differ");
  Perm r;
  r.img_.resize(a.degree());
  for (Point x = 0; x < a.img_.size(); ++x) r.img_[x] = b.img_[a.img_[x]];
  return r;
}

Perm& Perm::operator*=(const Perm& b) {
  if (degree() != b.degree())
    fail(ErrorKind::shape_mismatch, "permutation degrees differ");
  for (auto& x : img_) x = b.img_[x];
  return *this;
}

std::uint64_t element_order(const Perm& p) {
  std::vector<bool> seen(p.degree(), false);
  std::uint64_t order = 1;
  for (Point x = 0; x < p.degree(); ++x) {
    if (seen[x]) continue;
    std::uint64_t len = 0;
    for (Point y = x; !seen[y]; y = p[y]) {
      seen[y] = true;
      ++len;
    }
    std::uint64_t g = std::gcd(order, len);
    if (order / g > UINT64_MAX / len) return UINT64_MAX;
    order = order / g * len;
  }
  return order;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace selfsim
