#pragma once

/**
 * @file bounds.hpp
 * @brief Closed-form upper and lower bounds on the smallest saturating set.
 *
 * Real-valued formulas are evaluated in `long double` (64-bit mantissa on
 * x86-64). The step-product f_q(k) and everything derived from it is exact
 * (arbitrary-precision rationals); comparisons between exact and real values
 * go through a 256-bit binary float with an upward slack of 2^-40.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "satset/errors.hpp"
#include "satset/field.hpp"

namespace satset::bounds {

using Real = long double;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using HighFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<256>>;

/// Upward slack applied before every size <= bound comparison.
inline const Real kSlack = std::ldexp(Real{1}, -40);

inline bool fits_under(Real size, Real bound) { return size <= bound + kSlack; }

// ---- the step product ------------------------------------------------------

/// Unreduced numerator/denominator of f_q(k).
struct ProductParts {
  BigInt num = 1;
  BigInt den = 1;
};

/// prod_{i=2..k} (q(q+1) - i(q-1)) / (q(q+1)), left unreduced.
inline ProductParts fq_parts(std::uint64_t q, std::uint64_t k) {
  const BigInt qq = BigInt(q) * (q + 1);
  ProductParts out;
  for (std::uint64_t i = 2; i <= k; ++i) {
    const BigInt factor = qq - BigInt(i) * (q - 1);
    if (factor <= 0)
      throw NonPositiveFactor("factor i=" + std::to_string(i) + " is not positive for q=" + std::to_string(q));
    out.num *= factor;
    out.den *= qq;
  }
  return out;
}

/// Exact f_q(k); f_q(k) = 1 for k < 2 (empty product).
inline Rational f_q(std::uint64_t q, std::uint64_t k) {
  if (q < 2) throw DomainError("q must be at least 2");
  auto parts = fq_parts(q, k);
  return Rational(parts.num, parts.den);
}

inline HighFloat to_high(const BigInt& num, const BigInt& den) { return HighFloat(num) / HighFloat(den); }

/// Whether f_q(k) < exp(-k^2/(2q+2)); only defined for 2 <= k < q-4.
inline bool fq_exponential_check(std::uint64_t q, std::uint64_t k) {
  if (k < 2) throw DomainError("k must be at least 2");
  if (k + 4 >= q) throw ConditionViolated("estimate needs k < q-4 (q=" + std::to_string(q) + ", k=" + std::to_string(k) + ")");
  const auto parts = fq_parts(q, k);
  const HighFloat rhs = boost::multiprecision::exp(-HighFloat(k * k) / HighFloat(2 * q + 2));
  return to_high(parts.num, parts.den) < rhs;
}

// ---- real-valued formulas --------------------------------------------------

inline void require_log_domain(Real q) {
  if (!(q > 1)) throw DomainError("formula needs q > 1");
}

struct KThreshold {
  std::uint64_t k = 0;
  bool in_domain = true;  // false when xi > q^2; k is then 0
};

/// ceil(sqrt(2(q+1)) * sqrt(ln(q^2/xi))), the step count after which
/// q^2 f_q(k) <= xi.
inline KThreshold k_threshold(std::uint64_t q, Real xi) {
  if (!(xi >= 1)) throw DomainError("xi must be at least 1");
  const Real qr = static_cast<Real>(q);
  if (xi > qr * qr) return {0, false};
  const Real value = std::sqrt(2 * (qr + 1)) * std::sqrt(std::log(qr * qr / xi));
  return {static_cast<std::uint64_t>(std::ceil(value)), true};
}

/// sqrt(2(q+1)) sqrt(ln(q^2/xi)) + xi/2 + 3
inline Real general_bound(Real q, Real xi) {
  require_log_domain(q);
  if (!(xi >= 1) || xi > q * q) throw DomainError("general bound needs 1 <= xi <= q^2");
  return std::sqrt(2 * (q + 1)) * std::sqrt(std::log(q * q / xi)) + xi / 2 + 3;
}

/// sqrt(4q / (3 ln q)), the truncation threshold used for Upsilon.
inline Real xi_star(Real q) {
  require_log_domain(q);
  return std::sqrt(4 * q / (3 * std::log(q)));
}

inline Real upsilon(Real q) {
  require_log_domain(q);
  const Real lq = std::log(q);
  const Real inner = 3 * lq + std::log(lq) + std::log(Real{0.75});
  if (!(inner > 0)) throw DomainError("3 ln q + ln ln q + ln(3/4) is not positive");
  return std::sqrt((q + 1) * inner) + std::sqrt(q / (3 * lq)) + 3;
}

struct ComparisonBounds {
  Real upsilon = 0;
  Real bst = 0;              // 3 sqrt(2) sqrt(q ln q)
  Real bdgmp = 0;            // 2 sqrt((q+1) ln(q+1)) + 2
  Real nagy_finite = 0;      // sqrt(3 q ln q) + sqrt(q)/2 + 2
  Real conjectural_arc = 0;
  std::optional<Real> arc_search;  // computer-search complete arcs, 7 <= q <= 301813
  Real trivial_lower = 0;    // sqrt(2q) + 1, strict lower bound
};

inline Real nagy_finite(Real q) {
  require_log_domain(q);
  return std::sqrt(3 * q * std::log(q)) + std::sqrt(q) / 2 + 2;
}

inline Real trivial_lower(Real q) { return std::sqrt(2 * q) + 1; }

inline ComparisonBounds comparison_bounds(Real q) {
  require_log_domain(q);
  const Real lq = std::log(q);
  ComparisonBounds b;
  b.upsilon = upsilon(q);
  b.bst = 3 * std::sqrt(Real{2}) * std::sqrt(q * lq);
  b.bdgmp = 2 * std::sqrt((q + 1) * std::log(q + 1)) + 2;
  b.nagy_finite = nagy_finite(q);
  b.conjectural_arc = std::sqrt(q) * std::sqrt(3 * lq + std::log(lq) + std::log(Real{3})) + std::sqrt(q / (3 * lq)) + 3;
  if (q >= 7 && q <= 160001)
    b.arc_search = Real{0.998} * std::sqrt(3 * q * lq);
  else if (q > 160001 && q <= 301813)
    b.arc_search = Real{1.05} * std::sqrt(3 * q * lq);
  b.trivial_lower = trivial_lower(q);
  return b;
}

/// Nagy's finite bound minus Upsilon.
inline Real delta(Real q) { return nagy_finite(q) - upsilon(q); }

// ---- algebraic constructions for non-prime q -------------------------------

namespace detail {

inline BigInt ipow(std::uint64_t base, std::uint64_t e) {
  BigInt r = 1;
  for (std::uint64_t j = 0; j < e; ++j) r *= base;
  return r;
}

inline Real to_real(const Rational& r) { return static_cast<Real>(HighFloat(r)); }

inline void require_prime(std::uint64_t p) {
  const auto pp = factor_prime_power(p);
  if (!pp || pp->m != 1) throw BranchInapplicable(std::to_string(p) + " is not prime");
}

}  // namespace detail

/// 2q/p^t + (p^t-1)^2/(p-1) + 1 for q = p^m, m >= 2t.
inline Real giulietti_branch_i(std::uint64_t p, std::uint64_t m, std::uint64_t t) {
  detail::require_prime(p);
  if (t < 1 || m < 2 * t) throw BranchInapplicable("needs m >= 2t with t >= 1");
  const BigInt pt = detail::ipow(p, t);
  const Rational value = Rational(2 * detail::ipow(p, m), pt) + Rational((pt - 1) * (pt - 1), BigInt(p - 1)) + 1;
  return detail::to_real(value);
}

/// Bound for q = p^(3t-1); the cube roots are exact since qp = p^(3t).
inline Real giulietti_branch_ii(std::uint64_t p, std::uint64_t m, std::uint64_t t) {
  detail::require_prime(p);
  if (t < 1 || m != 3 * t - 1) throw BranchInapplicable("needs m = 3t-1 with t >= 1");
  const BigInt cube = detail::ipow(p, 2 * t);  // ((qp)^2)^(1/3)
  const BigInt root = detail::ipow(p, t);      // (qp)^(1/3)
  const Rational value = Rational(2 * cube, BigInt(p)) + Rational(cube - 2 * root + 1, BigInt(p - 1)) + 1;
  return detail::to_real(value);
}

/// Phi(t,p,v) = (v+1)p^(t+1) + (p^t-1)^(2v) / ((p-1)^v (p^(2t+1)-1)^(v-1)) + 2.
inline Real giulietti_phi(std::uint64_t t, std::uint64_t p, std::uint64_t v) {
  detail::require_prime(p);
  if (t < 1 || v < 1 || v > 2 * t + 1) throw BranchInapplicable("needs t >= 1 and 1 <= v <= 2t+1");
  BigInt num = 1, den = 1;
  const BigInt base = detail::ipow(p, t) - 1;
  const BigInt big = detail::ipow(p, 2 * t + 1) - 1;
  for (std::uint64_t j = 0; j < 2 * v; ++j) num *= base;
  for (std::uint64_t j = 0; j < v; ++j) den *= (p - 1);
  for (std::uint64_t j = 0; j + 1 < v; ++j) den *= big;
  const Rational value = Rational(BigInt(v + 1) * detail::ipow(p, t + 1)) + Rational(num, den) + 2;
  return detail::to_real(value);
}

/// min over v = 1..2t+1 of Phi(t,p,v), for q = p^(2t+1).
inline Real giulietti_branch_iii(std::uint64_t p, std::uint64_t m, std::uint64_t t) {
  detail::require_prime(p);
  if (t < 1 || m != 2 * t + 1) throw BranchInapplicable("needs m = 2t+1 with t >= 1");
  Real best = giulietti_phi(t, p, 1);
  for (std::uint64_t v = 2; v <= 2 * t + 1; ++v) best = std::min(best, giulietti_phi(t, p, v));
  return best;
}

struct GiuliettiReport {
  std::optional<Real> branch_i, branch_ii, branch_iii, phi_v;
  std::vector<std::string> inapplicable;
};

/// Every branch evaluated at (p, m, t); phi_v is Phi(t,p,v) when v is in range.
inline GiuliettiReport giulietti_bounds(std::uint64_t p, std::uint64_t m, std::uint64_t t, std::uint64_t v) {
  GiuliettiReport report;
  auto attempt = [&](std::optional<Real>& slot, const char* name, auto&& fn) {
    try {
      slot = fn();
    } catch (const BranchInapplicable& e) {
      report.inapplicable.push_back(std::string(name) + ": " + e.what());
    }
  };
  attempt(report.branch_i, "i", [&] { return giulietti_branch_i(p, m, t); });
  attempt(report.branch_ii, "ii", [&] { return giulietti_branch_ii(p, m, t); });
  attempt(report.branch_iii, "iii", [&] { return giulietti_branch_iii(p, m, t); });
  attempt(report.phi_v, "phi", [&] { return giulietti_phi(t, p, v); });
  return report;
}

/// Best value of any Giulietti branch over every admissible t, if q = p^m, m >= 2.
inline std::optional<Real> giulietti_best(std::uint64_t q) {
  const auto pp = factor_prime_power(q);
  if (!pp || pp->m < 2) return std::nullopt;
  std::optional<Real> best;
  auto take = [&](Real value) { best = best ? std::min(*best, value) : value; };
  for (std::uint64_t t = 1; 2 * t <= pp->m; ++t) take(giulietti_branch_i(pp->p, pp->m, t));
  if ((pp->m + 1) % 3 == 0) take(giulietti_branch_ii(pp->p, pp->m, (pp->m + 1) / 3));
  if (pp->m % 2 == 1) take(giulietti_branch_iii(pp->p, pp->m, (pp->m - 1) / 2));
  return best;
}

// ---- projective spaces -----------------------------------------------------

struct SpaceBounds {
  unsigned N = 0;
  Real q = 0;
  std::optional<Real> even_general;  // Upsilon(q) q^((N-2)/2) + 2 q^((N-4)/2)
  std::optional<Real> even_special;  // N in {8, 12}: two extra terms
  std::optional<Real> odd;           // 2 q^((N-1)/2) + q^((N-3)/2)
  Real trivial_lower = 0;            // sqrt(2) q^((N-1)/2), strict
  std::vector<std::string> violated;

  std::optional<Real> upper() const {
    if (even_general) return even_general;
    if (even_special) return even_special;
    return odd;
  }
};

inline Real space_trivial_lower(unsigned N, Real q) {
  return std::sqrt(Real{2}) * std::pow(q, Real(N - 1) / 2);
}

/// Upper bounds on the smallest saturating set of PG(N,q), N >= 3.
/// Throws BranchInapplicable (listing the failed conditions) if none applies.
inline SpaceBounds space_bounds(unsigned N, std::uint64_t q) {
  SpaceBounds out;
  out.N = N;
  out.q = static_cast<Real>(q);
  const Real qr = out.q;
  if (N < 3) out.violated.push_back("N >= 3");
  if (!is_prime_power(q)) out.violated.push_back("q prime power");
  out.trivial_lower = space_trivial_lower(N, qr);

  if (N % 2 == 0) {
    const unsigned t = (N + 2) / 2;
    const bool special = N == 8 || N == 12;
    const bool general = N >= 4 && !special && (t == 3 || t == 4 || t == 6 || t >= 8);
    if (!special && !general) out.violated.push_back("N = 2t-2 with t in {3,4,6} or t >= 8");
    if (q < 79) out.violated.push_back("q >= 79");
    if (out.violated.empty()) {
      const Real base = upsilon(qr) * std::pow(qr, Real(N - 2) / 2) + 2 * std::pow(qr, Real(N - 4) / 2);
      if (general)
        out.even_general = base;
      else
        out.even_special = base + std::pow(qr, Real(N - 6) / 2) + std::pow(qr, Real(N - 8) / 2);
    }
  } else {
    const unsigned t = (N + 1) / 2;
    if (!(N >= 3 && (t == 2 || t == 3 || t == 5 || t >= 7))) out.violated.push_back("N = 2t-1 with t in {2,3,5} or t >= 7");
    if (q < 7) out.violated.push_back("q >= 7");
    if (q == 9) out.violated.push_back("q != 9");
    if (out.violated.empty()) out.odd = 2 * std::pow(qr, Real(N - 1) / 2) + std::pow(qr, Real(N - 3) / 2);
  }

  if (!out.violated.empty()) {
    std::string msg = "PG(" + std::to_string(N) + "," + std::to_string(q) + ") violates:";
    for (const auto& v : out.violated) msg += " [" + v + "]";
    throw BranchInapplicable(msg);
  }
  return out;
}

// ---- verifiers -------------------------------------------------------------

struct LemmaCheck {
  std::uint64_t k = 0;
  bool applicable = false;  // k < q-4
  bool holds = false;       // q^2 f_q(k) <= xi (+2^-40)
};

/// Checks q^2 f_q(k) <= xi at k = k_threshold(q, xi).
inline LemmaCheck lemma_threshold_check(std::uint64_t q, Real xi) {
  LemmaCheck out;
  const auto kt = k_threshold(q, xi);
  out.k = kt.k;
  out.applicable = kt.in_domain && kt.k + 4 < q;
  if (!out.applicable) return out;
  const auto parts = fq_parts(q, kt.k);
  const HighFloat lhs = HighFloat(parts.num * q * q) / HighFloat(parts.den);
  out.holds = lhs <= HighFloat(xi) + HighFloat(kSlack);
  return out;
}

struct DeltaSample {
  Real q = 0;
  Real delta = 0;
  Real ratio = 0;  // delta / sqrt(q)
};

struct DeltaReport {
  std::vector<DeltaSample> samples;
  bool positive_from_919 = true;
  bool delta_increasing = true;
  bool ratio_increasing = true;
  bool ratio_below_half = true;
  std::optional<Real> first_nonpositive;  // smallest sampled q >= 919 with delta <= 0
};

/// Positivity and monotonicity of delta over an ascending grid.
inline DeltaReport delta_properties(std::span<const Real> grid) {
  DeltaReport r;
  for (Real q : grid) {
    DeltaSample s{q, delta(q), 0};
    s.ratio = s.delta / std::sqrt(q);
    if (q >= 919 && !(s.delta > 0)) {
      r.positive_from_919 = false;
      if (!r.first_nonpositive) r.first_nonpositive = q;
    }
    if (!r.samples.empty()) {
      if (!(s.delta > r.samples.back().delta)) r.delta_increasing = false;
      if (!(s.ratio > r.samples.back().ratio)) r.ratio_increasing = false;
    }
    if (!(s.ratio < 0.5L)) r.ratio_below_half = false;
    r.samples.push_back(s);
  }
  return r;
}

// ---- aggregate report and CSV ----------------------------------------------

struct BoundReport {
  std::uint64_t q = 0;
  Real xi = 0;
  std::uint64_t k_threshold = 0;
  std::map<std::string, Real> values;
  Real delta = 0;
};

inline BoundReport make_bound_report(std::uint64_t q, std::optional<Real> xi = std::nullopt) {
  BoundReport r;
  r.q = q;
  const Real qr = static_cast<Real>(q);
  r.xi = xi.value_or(xi_star(qr));
  r.k_threshold = k_threshold(q, r.xi).k;
  const auto c = comparison_bounds(qr);
  r.values["upsilon"] = c.upsilon;
  r.values["general_phi"] = general_bound(qr, r.xi);
  r.values["nagy"] = c.nagy_finite;
  r.values["bdgmp"] = c.bdgmp;
  r.values["bst"] = c.bst;
  r.values["trivial_lower"] = c.trivial_lower;
  r.values["conjectural_arc"] = c.conjectural_arc;
  if (c.arc_search) r.values["arc_search"] = *c.arc_search;
  if (auto g = giulietti_best(q)) r.values["giulietti"] = *g;
  try {
    r.values["space_N4"] = *space_bounds(4, q).upper();
  } catch (const BranchInapplicable&) {
  }
  r.delta = c.nagy_finite - c.upsilon;
  return r;
}

inline constexpr const char* kCsvHeader = "q,upsilon,nagy,bdgmp,bst,trivial_lower,conjectural_arc,delta,sqrt_q_over_7";

inline void write_csv_row(std::ostream& os, std::uint64_t q) {
  const Real qr = static_cast<Real>(q);
  const auto c = comparison_bounds(qr);
  os << q << ',' << c.upsilon << ',' << c.nagy_finite << ',' << c.bdgmp << ',' << c.bst << ',' << c.trivial_lower
     << ',' << c.conjectural_arc << ',' << (c.nagy_finite - c.upsilon) << ',' << std::sqrt(qr / 7) << '\n';
}

/// One CSV row per q (12 significant digits); header only for an empty list.
inline void bounds_table(std::span<const std::uint32_t> qs, std::ostream& os) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  os << std::setprecision(12);
  os.unsetf(std::ios::floatfield);
  os << kCsvHeader << '\n';
  for (auto q : qs) write_csv_row(os, q);
  if (!os) throw IoError("failed writing bounds table");
  os.flags(flags);
  os.precision(prec);
}

}  // namespace satset::bounds
