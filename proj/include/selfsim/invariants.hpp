#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selfsim/log_quantity.hpp"
#include "selfsim/quotient.hpp"
#include "selfsim/structure.hpp"

namespace selfsim {

/// r_n = m log|G_n| - log|G_{n+1}| + log|G_1|.
LogQuantity r_value(const QuotientTower& tower, int n);
/// r_1 .. r_{n_max-1}.
std::vector<LogQuantity> r_sequence(const QuotientTower& tower, int n_max);
/// s_n = r_{n+1} - r_n for n = 1 .. n_max-2.
std::vector<LogQuantity> s_sequence(const QuotientTower& tower, int n_max);

/// log|G_1| - r_{n+1}; only valid for n >= D (precondition error otherwise).
LogQuantity big_f_formula(const QuotientTower& tower, int n, int D);

struct FInvariantReport {
  enum class Status { evidence, inconclusive };
  Status status = Status::inconclusive;
  int n_max = 0;
  DepthReport depth;
  std::optional<LogQuantity> f;
  /// F(T, alpha_s^n) from the order formula for D <= n <= n_max-2.
  std::vector<std::pair<int, LogQuantity>> big_f;
  bool big_f_constant = true;
};

/// f = log|G_1| - r_D for the detected depth D; inconclusive when no depth
/// is found up to n_max.
FInvariantReport f_invariant(const QuotientTower& tower, int n_max);

enum class Ambient { full, wq };
std::string to_string(Ambient a);
Ambient parse_ambient(const std::string& s);

/// log|Aut T_n| (full) or log|W_q / St(n)| (wq).
LogQuantity log_ambient_order(int m, int n, Ambient a);

struct HausdorffReport {
  Ambient ambient = Ambient::full;
  int n_max = 0;
  std::vector<LogRatio> dims;  // n = 1 .. n_max
  std::optional<int> depth;
  std::optional<LogQuantity> f;
  std::optional<LogRatio> limit;
  /// |dim_{n_max} - limit|, exact when both sides are rational.
  std::optional<mpq_class> tail_deviation_exact;
  std::optional<double> tail_deviation;
};

/// The f report is recomputed when not supplied.
HausdorffReport hausdorff_dimension(const QuotientTower& tower, int n_max, Ambient ambient,
                                    const std::optional<FInvariantReport>& f = std::nullopt);

struct OrderConditionReport {
  int D = 0, n_max = 0;
  bool pass = true;
  std::optional<int> first_failure;
  std::vector<int> checked;
};

/// |G_{n+1}| = |G_n| (|G_n|/|G_{n-1}|)^m for D <= n < n_max, exact.
OrderConditionReport verify_branch_order_condition(const QuotientTower& tower, int D, int n_max);

struct RecursionReport {
  int D = 0;
  bool pass = true;
  struct Row {
    int k;
    LogQuantity lhs, rhs;
    bool equal;
  };
  std::vector<Row> rows;
};

/// log|G_{D+k}| = m^k log|G_D| + (m^k - 1)/(m - 1) f for D+k <= n_max.
RecursionReport verify_order_recursion(const QuotientTower& tower, int D, const LogQuantity& f,
                                       int n_max);

json to_json(const FInvariantReport& r, const DisplayBase& base);
json to_json(const HausdorffReport& r, const DisplayBase& base);
json to_json(const OrderConditionReport& r);
json to_json(const RecursionReport& r, const DisplayBase& base);
json to_json(const DepthReport& r, const DisplayBase& base);

}  // namespace selfsim
