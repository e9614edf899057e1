#include "selfsim/log_quantity.hpp"

#include <cmath>
#include <sstream>

#include "selfsim/errors.hpp"

namespace selfsim {

namespace {

mpz_class rho_factor(const mpz_class& n) {
  // Brent-free Pollard rho; n odd composite.
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    auto step = [&](mpz_class& v) {
      v = v * v + c;
      v %= n;
    };
    while (d == 1) {
      step(x);
      step(y);
      step(y);
      mpz_class diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(mpz_class n, std::map<mpz_class, unsigned long, MpzLess>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  mpz_class d = rho_factor(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

double log_of_mpz(const mpz_class& p) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, p.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace

std::map<mpz_class, unsigned long, MpzLess> factorize(mpz_class n) {
  if (n < 1) fail(ErrorKind::invalid_argument, "factorize expects a positive integer");
  std::map<mpz_class, unsigned long, MpzLess> out;
  for (unsigned long p = 2; p < 10000 && n > 1; ++p) {
    if (p * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[mpz_class(p)];
      n /= p;
    }
  }
  if (n > 1) factor_into(n, out);
  return out;
}

std::string rational_string(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0)
    fail(ErrorKind::invalid_argument, "cannot parse rational '" + text + "'");
  q.canonicalize();
  return q;
}

LogQuantity LogQuantity::log_of(const mpz_class& k) {
  if (k < 1) fail(ErrorKind::invalid_argument, "log of a non-positive integer");
  LogQuantity x;
  for (const auto& [p, e] : factorize(k)) x.add(p, mpq_class(e));
  return x;
}

LogQuantity LogQuantity::log_of(const mpq_class& q) {
  if (q <= 0) fail(ErrorKind::invalid_argument, "log of a non-positive rational");
  return log_of(mpz_class(q.get_num())) - log_of(mpz_class(q.get_den()));
}

void LogQuantity::add(const mpz_class& p, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = c_.try_emplace(p, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

LogQuantity& LogQuantity::operator+=(const LogQuantity& o) {
  for (const auto& [p, c] : o.c_) add(p, c);
  return *this;
}

LogQuantity& LogQuantity::operator-=(const LogQuantity& o) {
  for (const auto& [p, c] : o.c_) add(p, -c);
  return *this;
}

LogQuantity& LogQuantity::operator*=(const mpq_class& q) {
  if (q == 0) {
    c_.clear();
    return *this;
  }
  for (auto& [p, c] : c_) c *= q;
  return *this;
}

LogQuantity LogQuantity::operator-() const {
  LogQuantity r = *this;
  for (auto& [p, c] : r.c_) c = -c;
  return r;
}

bool operator==(const LogQuantity& a, const LogQuantity& b) {
  if (a.c_.size() != b.c_.size()) return false;
  auto i = a.c_.begin();
  auto j = b.c_.begin();
  for (; i != a.c_.end(); ++i, ++j)
    if (i->first != j->first || i->second != j->second) return false;
  return true;
}

double LogQuantity::value() const {
  double v = 0;
  for (const auto& [p, c] : c_) v += c.get_d() * log_of_mpz(p);
  return v;
}

std::optional<mpq_class> LogQuantity::ratio_to(const LogQuantity& other) const {
  if (other.is_zero()) return std::nullopt;
  if (is_zero()) return mpq_class(0);
  if (c_.size() != other.c_.size()) return std::nullopt;
  std::optional<mpq_class> r;
  auto j = other.c_.begin();
  for (auto i = c_.begin(); i != c_.end(); ++i, ++j) {
    if (i->first != j->first) return std::nullopt;
    mpq_class q = i->second / j->second;
    if (r && *r != q) return std::nullopt;
    r = q;
  }
  return r;
}

std::string LogQuantity::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, c] : c_) {
    mpq_class a = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (a != 1) out << a.get_str() << " ";
    out << "log " << p.get_str();
  }
  return out.str();
}

std::string DisplayBase::label() const { return base ? std::to_string(*base) : "e"; }

double DisplayBase::in_base(const LogQuantity& x) const {
  return base ? x.value() / std::log(static_cast<double>(*base)) : x.value();
}

std::optional<mpq_class> DisplayBase::exact(const LogQuantity& x) const {
  if (x.is_zero()) return mpq_class(0);
  if (!base || *base < 2) return std::nullopt;
  return x.ratio_to(LogQuantity::log_of(*base));
}

json to_json(const LogQuantity& x, const DisplayBase& base) {
  json coeffs = json::object();
  for (const auto& [p, c] : x.coeffs()) coeffs[p.get_str()] = rational_string(c);
  json j;
  j["coeffs"] = coeffs;
  j["approx"] = base.in_base(x);
  j["display_base"] = base.base ? json(*base.base) : json("e");
  if (auto e = base.exact(x)) j["exact_in_base"] = rational_string(*e);
  return j;
}

LogQuantity log_quantity_from_json(const json& j) {
  LogQuantity x;
  for (const auto& [p, c] : j.at("coeffs").items()) {
    mpz_class prime(p, 10);
    x += LogQuantity::log_of(prime) * parse_rational(c.get<std::string>());
  }
  return x;
}

json to_json(const LogRatio& r) {
  json j;
  if (auto e = r.exact()) j["exact"] = rational_string(*e);
  else j["exact"] = nullptr;
  j["approx"] = r.approx();
  return j;
}

LogQuantity shannon_entropy(const std::vector<mpq_class>& measures) {
  mpq_class total = 0;
  LogQuantity h;
  for (const auto& q : measures) {
    if (q < 0) fail(ErrorKind::invalid_argument, "negative measure");
    total += q;
    if (q == 0) continue;
    h -= LogQuantity::log_of(q) * q;
  }
  if (total != 1)
    fail(ErrorKind::invalid_argument, "measures sum to " + rational_string(total) + ", not 1");
  return h;
}

}  // namespace selfsim
