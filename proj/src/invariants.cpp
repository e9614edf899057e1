#include "selfsim/invariants.hpp"

#include <cmath>

#include "selfsim/errors.hpp"

namespace selfsim {

namespace {

mpz_class mpz_pow(int base, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return r;
}

mpz_class factorial(int m) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(m));
  return r;
}

json log_list(const std::vector<LogQuantity>& xs, const DisplayBase& base) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(to_json(x, base));
  return a;
}

}  // namespace

LogQuantity r_value(const QuotientTower& tower, int n) {
  if (n < 1) fail(ErrorKind::invalid_argument, "r_n is defined for n >= 1");
  return tower.log_order(n) * mpq_class(tower.arity()) - tower.log_order(n + 1) +
         tower.log_order(1);
}

std::vector<LogQuantity> r_sequence(const QuotientTower& tower, int n_max) {
  std::vector<LogQuantity> r;
  for (int n = 1; n <= n_max - 1; ++n) r.push_back(r_value(tower, n));
  return r;
}

std::vector<LogQuantity> s_sequence(const QuotientTower& tower, int n_max) {
  auto r = r_sequence(tower, n_max);
  std::vector<LogQuantity> s;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) s.push_back(r[i + 1] - r[i]);
  return s;
}

LogQuantity big_f_formula(const QuotientTower& tower, int n, int D) {
  if (D < 1) fail(ErrorKind::invalid_argument, "depth must be at least 1");
  if (n < D)
    fail(ErrorKind::precondition, "F(T, alpha_s^n) = log|G_1| - r_{n+1} needs n >= D (n = " +
                                      std::to_string(n) + ", D = " + std::to_string(D) +
                                      "): below the depth St(n-1) need not be branching");
  return tower.log_order(1) - r_value(tower, n + 1);
}

FInvariantReport f_invariant(const QuotientTower& tower, int n_max) {
  FInvariantReport rep;
  rep.n_max = n_max;
  rep.depth = detect_depth(tower, n_max);
  if (!rep.depth.depth) return rep;
  const int D = *rep.depth.depth;
  rep.status = FInvariantReport::Status::evidence;
  rep.f = tower.log_order(1) - rep.depth.r[D - 1];
  for (int n = D; n + 1 <= n_max - 1; ++n) {
    rep.big_f.emplace_back(n, big_f_formula(tower, n, D));
    rep.big_f_constant = rep.big_f_constant && rep.big_f.back().second == *rep.f;
  }
  return rep;
}

std::string to_string(Ambient a) { return a == Ambient::full ? "full" : "wq"; }

Ambient parse_ambient(const std::string& s) {
  if (s == "full") return Ambient::full;
  if (s == "wq") return Ambient::wq;
  fail(ErrorKind::invalid_argument, "ambient must be 'full' or 'wq', got '" + s + "'");
}

LogQuantity log_ambient_order(int m, int n, Ambient a) {
  const mpq_class vertices((mpz_pow(m, n) - 1) / (m - 1));
  return (a == Ambient::full ? LogQuantity::log_of(factorial(m))
                             : LogQuantity::log_of(mpz_class(m))) *
         vertices;
}

HausdorffReport hausdorff_dimension(const QuotientTower& tower, int n_max, Ambient ambient,
                                    const std::optional<FInvariantReport>& f_in) {
  const int m = tower.arity();
  if (n_max < 1) fail(ErrorKind::invalid_argument, "n_max must be at least 1");
  if (ambient == Ambient::wq && !labels_in_cyclic(tower.spec(), n_max))
    fail(ErrorKind::invalid_argument, tower.spec().name + " is not contained in W_q: some label "
                                      "is not a power of (1 2 ... q)");
  HausdorffReport rep;
  rep.ambient = ambient;
  rep.n_max = n_max;
  for (int n = 1; n <= n_max; ++n)
    rep.dims.push_back({tower.log_order(n), log_ambient_order(m, n, ambient)});
  const FInvariantReport fr = f_in ? *f_in : f_invariant(tower, n_max);
  if (fr.status != FInvariantReport::Status::evidence) return rep;
  const int D = *fr.depth.depth;
  rep.depth = D;
  rep.f = fr.f;
  // lim log|G_n| / m^n = (log|G_D| + f/(m-1)) / m^D, then normalize.
  LogQuantity num = tower.log_order(D) * mpq_class(m - 1) + *fr.f;
  LogQuantity den = (ambient == Ambient::full ? LogQuantity::log_of(factorial(m))
                                              : LogQuantity::log_of(mpz_class(m))) *
                    mpq_class(mpz_pow(m, D));
  rep.limit = LogRatio{num, den};
  const LogRatio& last = rep.dims.back();
  auto a = last.exact(), b = rep.limit->exact();
  if (a && b) {
    rep.tail_deviation_exact = abs(*a - *b);
    rep.tail_deviation = rep.tail_deviation_exact->get_d();
  } else {
    rep.tail_deviation = std::fabs(last.approx() - rep.limit->approx());
  }
  return rep;
}

OrderConditionReport verify_branch_order_condition(const QuotientTower& tower, int D, int n_max) {
  const int m = tower.arity();
  OrderConditionReport rep;
  rep.D = D;
  rep.n_max = n_max;
  for (int n = std::max(D, 1); n < n_max; ++n) {
    rep.checked.push_back(n);
    const mpz_class gp = tower.order(n - 1), g = tower.order(n), gn = tower.order(n + 1);
    bool ok = g % gp == 0;
    if (ok) {
      mpz_class step = g / gp, rhs;
      mpz_pow_ui(rhs.get_mpz_t(), step.get_mpz_t(), static_cast<unsigned long>(m));
      ok = gn == g * rhs;
    }
    if (!ok) {
      rep.pass = false;
      rep.first_failure = n;
      break;
    }
  }
  return rep;
}

RecursionReport verify_order_recursion(const QuotientTower& tower, int D, const LogQuantity& f,
                                       int n_max) {
  const int m = tower.arity();
  RecursionReport rep;
  rep.D = D;
  const LogQuantity gd = tower.log_order(D);
  for (int k = 0; D + k <= n_max; ++k) {
    const mpz_class mk = mpz_pow(m, k);
    mpq_class geom{mpz_class(mk - 1), mpz_class(m - 1)};
    geom.canonicalize();
    RecursionReport::Row row{k, tower.log_order(D + k), gd * mpq_class(mk) + f * geom, false};
    row.equal = row.lhs == row.rhs;
    rep.pass = rep.pass && row.equal;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

json to_json(const DepthReport& r, const DisplayBase& base) {
  json j;
  j["depth"] = r.depth ? json(*r.depth) : json(nullptr);
  j["evidence_level"] = r.n_max;
  j["r"] = log_list(r.r, base);
  json b = json::array();
  for (const auto& c : r.branch_checks) b.push_back(to_json(c));
  j["branch_checks"] = b;
  return j;
}

json to_json(const FInvariantReport& r, const DisplayBase& base) {
  json j;
  const bool ok = r.status == FInvariantReport::Status::evidence;
  j["status"] = ok ? "evidence@" + std::to_string(r.n_max) : std::string("inconclusive");
  j["depth"] = r.depth.depth ? json(*r.depth.depth) : json(nullptr);
  j["f"] = r.f ? to_json(*r.f, base) : json(nullptr);
  json F = json::array();
  for (const auto& [n, v] : r.big_f) F.push_back({{"n", n}, {"F", to_json(v, base)}});
  j["F_formula"] = F;
  j["F_constant"] = r.big_f_constant;
  j["depth_evidence"] = to_json(r.depth, base);
  return j;
}

json to_json(const HausdorffReport& r, const DisplayBase& base) {
  json j;
  j["ambient"] = to_string(r.ambient);
  j["n_max"] = r.n_max;
  json d = json::array();
  for (std::size_t i = 0; i < r.dims.size(); ++i) {
    json e = to_json(r.dims[i]);
    e["n"] = i + 1;
    d.push_back(e);
  }
  j["dims"] = d;
  j["depth"] = r.depth ? json(*r.depth) : json(nullptr);
  j["f"] = r.f ? to_json(*r.f, base) : json(nullptr);
  j["limit"] = r.limit ? to_json(*r.limit) : json(nullptr);
  if (r.tail_deviation_exact) j["tail_deviation_exact"] = rational_string(*r.tail_deviation_exact);
  if (r.tail_deviation) j["tail_deviation"] = *r.tail_deviation;
  return j;
}

json to_json(const OrderConditionReport& r) {
  json j;
  j["D"] = r.D;
  j["n_max"] = r.n_max;
  j["pass"] = r.pass;
  j["checked"] = r.checked;
  j["first_failure"] = r.first_failure ? json(*r.first_failure) : json(nullptr);
  return j;
}

json to_json(const RecursionReport& r, const DisplayBase& base) {
  json j;
  j["D"] = r.D;
  j["pass"] = r.pass;
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"k", row.k},
                    {"log_order", to_json(row.lhs, base)},
                    {"predicted", to_json(row.rhs, base)},
                    {"equal", row.equal}});
  j["rows"] = rows;
  return j;
}

}  // namespace selfsim
