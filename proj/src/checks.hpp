#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "family.hpp"
#include "partition.hpp"
#include "products.hpp"

namespace ncagm {

inline constexpr double kDefaultCheckTol = 1e-9;

enum class VerdictState { pass, fail, hypotheses_unmet };

const char* verdict_state_name(VerdictState s);

/// Structured outcome of one inequality or identity check. The uniform
/// convention is pass == (margin >= -tol * scale): margin is rhs - lhs for
/// norm inequalities, the smallest eigenvalue of the difference for order
/// inequalities, and -residual for identity checks.
struct CheckVerdict {
  std::string name;
  VerdictState state = VerdictState::pass;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  double tol = kDefaultCheckTol;
  double scale = 1;
  std::map<std::string, double> extras;
  std::string note;
  std::uint64_t digest = 0;

  bool passed() const { return state == VerdictState::pass; }
  nlohmann::json to_json() const;
};

/// FNV-1a accumulator used for input digests in verdicts and reports.
struct Fnv1a {
  std::uint64_t h = 1469598103934665603ULL;
  void bytes(const void* p, std::size_t len);
  void add(double v);
  void add(std::uint64_t v);
  void add(std::int64_t v) { add(static_cast<std::uint64_t>(v)); }
  void add(int v) { add(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
  void add(const std::string& s);
};

std::uint64_t family_digest(const OperatorFamily& fam);

/// C(n,d) = d! n^d (n-d)! / n!, evaluated from the reduced exact fraction.
/// Nonincreasing in n for fixed d; C(d,d) = d^d.
double constant_C(int n, int d);

/// ||P_d||^{1/d} <= d ||P_1|| for positive members. Also records the sharper
/// intermediate bound ||P_d|| <= C(n,d) ||P_1||^d and the d! ||sum x||^d
/// diagnostic. Throws a precondition error naming the first non-PSD member.
CheckVerdict check_norm_agm(const OperatorFamily& fam, int d, double tol = kDefaultCheckTol,
                            const ProductLimits& limits = {});

/// P_d(x) == 1 + sum_k binom(d,k) P_k(a) with a_i = x_i - 1, as a matrix
/// identity; requires sum x_i = n to tolerance 1e-10.
CheckVerdict check_binomial_identity(const OperatorFamily& fam, int d, double tol = 1e-9,
                                     const ProductLimits& limits = {});

/// Order AGM: under the hypotheses sum x_i = n and
/// ||(sum x_i^2)^{1/2}|| <= n/(3d), asserts P_d <= 1 in the Loewner order.
/// Returns a hypotheses-unmet verdict (never pass/fail) when either
/// hypothesis does not hold numerically.
CheckVerdict check_order_agm(const OperatorFamily& fam, int d, double tol = kDefaultCheckTol,
                             const ProductLimits& limits = {});

/// The d = 3 variant: sum x_i = n, n >= 6 and max_i ||x_i - 1|| <= n give
/// P_3 <= 1. Hypothesis-gated like check_order_agm.
CheckVerdict check_order_agm_d3(const OperatorFamily& fam, double tol = kDefaultCheckTol,
                                const ProductLimits& limits = {});

/// Closed form for P_3 on centered input: with a_i = x_i - 1, sum a_i = 0,
///   P_3(x) == 1 - 3/(n(n-1)) sum a_i^2 + 2/(n(n-1)(n-2)) sum a_i^3
/// as a matrix identity.
CheckVerdict check_d3_closed_form(const OperatorFamily& fam, double tol = 1e-10,
                                  const ProductLimits& limits = {});

/// Cross-term order bounds for arbitrary a, b and t > 0:
///   -(a*a + b*b) <= a*b + b*a <= a*a + b*b
///   a b + b* a*  <= t^2 a a* + t^-2 b* b.
/// margin is the least eigenvalue over the three differences.
CheckVerdict check_cross_term(const Matrix& a, const Matrix& b, double t, double tol = kDefaultCheckTol);

/// max_i ||a_i|| <= ||sum a_i^2||^{1/2} <= ||sum x_i^2||^{1/2} with
/// a_i = x_i - 1; requires sum x_i = n to tolerance.
CheckVerdict check_norm_chain(const OperatorFamily& fam, double tol = kDefaultCheckTol);

/// ||[sigma]|| <= ||sum x||^s * (||sum x^2||^{1/2})^{d-s}, s the number of
/// singleton positions of sigma.
CheckVerdict check_partition_norm(const OperatorFamily& fam, const SetPartition& sigma,
                                  double tol = kDefaultCheckTol, const ProductLimits& limits = {});

/// Two-sided envelope for centered families: with sum a_i = 0, x_i = a_i + 1
/// and S = ||sum x_i^2||^{1/2},
///   -c sum a_i^2 <= P_d(a) <= c sum a_i^2,  c = d!/( n...(n-d+1) ) S^{d-2}.
CheckVerdict check_pd_two_sided(const OperatorFamily& centered, int d, double tol = kDefaultCheckTol,
                                const ProductLimits& limits = {});

}  // namespace ncagm
