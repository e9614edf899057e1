#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace selfsim {

using json = nlohmann::ordered_json;

struct MpzLess {
  bool operator()(const mpz_class& a, const mpz_class& b) const { return cmp(a, b) < 0; }
};

/// prime -> exponent; trial division, then Pollard rho for what is left.
std::map<mpz_class, unsigned long, MpzLess> factorize(mpz_class n);

/// "num/den", always with a denominator.
std::string rational_string(const mpq_class& q);
mpq_class parse_rational(const std::string& text);

/// Exact real number sum_p c_p log p with rational c_p over primes p.
class LogQuantity {
 public:
  using Coeffs = std::map<mpz_class, mpq_class, MpzLess>;

  LogQuantity() = default;

  /// log k for an integer k >= 1.
  static LogQuantity log_of(const mpz_class& k);
  /// log q for a rational q > 0.
  static LogQuantity log_of(const mpq_class& q);
  static LogQuantity log_of(unsigned long k) { return log_of(mpz_class(k)); }

  const Coeffs& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }

  LogQuantity& operator+=(const LogQuantity& o);
  LogQuantity& operator-=(const LogQuantity& o);
  LogQuantity& operator*=(const mpq_class& q);
  friend LogQuantity operator+(LogQuantity a, const LogQuantity& b) { return a += b; }
  friend LogQuantity operator-(LogQuantity a, const LogQuantity& b) { return a -= b; }
  friend LogQuantity operator*(LogQuantity a, const mpq_class& q) { return a *= q; }
  friend LogQuantity operator*(const mpq_class& q, LogQuantity a) { return a *= q; }
  LogQuantity operator-() const;
  friend bool operator==(const LogQuantity& a, const LogQuantity& b);

  /// Natural-log value.
  double value() const;
  /// c with *this == c * other, if one exists (other nonzero).
  std::optional<mpq_class> ratio_to(const LogQuantity& other) const;

  /// e.g. "3 log 3 - 2 log 2"; "0" for zero.
  std::string to_string() const;

 private:
  void add(const mpz_class& p, const mpq_class& c);
  Coeffs c_;
};

/// Base used for floating display; natural when `base` is empty.
struct DisplayBase {
  std::optional<unsigned long> base;

  static DisplayBase natural() { return {}; }
  static DisplayBase of(unsigned long b) { return {b}; }
  std::string label() const;
  double in_base(const LogQuantity& x) const;
  /// Exact value in this base when x is a rational multiple of log base.
  std::optional<mpq_class> exact(const LogQuantity& x) const;
};

json to_json(const LogQuantity& x, const DisplayBase& base);
LogQuantity log_quantity_from_json(const json& j);

/// A quotient of two log quantities (e.g. log|G_n| / log|Aut T_n|), exact
/// when the two are proportional.
struct LogRatio {
  LogQuantity num, den;
  std::optional<mpq_class> exact() const { return num.ratio_to(den); }
  double approx() const { return num.value() / den.value(); }
};

json to_json(const LogRatio& r);

/// -sum q log q over the given probabilities, exactly.
LogQuantity shannon_entropy(const std::vector<mpq_class>& measures);

}  // namespace selfsim
