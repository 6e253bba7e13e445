#pragma once

/**
 * @file field.hpp
 * @brief Table-driven arithmetic in GF(q), q = p^m.
 *
 * Elements are encoded as integers 0..q-1: the base-p digits of the code are
 * the coefficients of a polynomial over GF(p) (digit j = coefficient of x^j),
 * reduced modulo a fixed monic irreducible polynomial of degree m. The modulus
 * is the smallest such polynomial when its lower coefficients are read as a
 * base-p number with the x^(m-1) coefficient most significant.
 *
 * Multiplication goes through exp/log tables over a primitive element, so the
 * memory cost is O(q) and any q <= 2^16 is supported.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satset/errors.hpp"

namespace satset {

using Element = std::uint32_t;

struct PrimePower {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
};

/// Returns (p, m) with q = p^m, or nullopt if q is not a prime power.
inline std::optional<PrimePower> factor_prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return PrimePower{static_cast<std::uint32_t>(q), 1};
  std::uint32_t m = 0;
  while (q % p == 0) {
    q /= p;
    ++m;
  }
  if (q != 1) return std::nullopt;
  return PrimePower{static_cast<std::uint32_t>(p), m};
}

inline bool is_prime_power(std::uint64_t q) { return factor_prime_power(q).has_value(); }

/// All prime powers in [lo, hi], ascending.
inline std::vector<std::uint32_t> prime_powers_in(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t q = lo < 2 ? 2 : lo; q <= hi; ++q)
    if (is_prime_power(q)) out.push_back(static_cast<std::uint32_t>(q));
  return out;
}

namespace detail {

// Dense polynomials over GF(p), coefficient j of x^j at index j.
using Poly = std::vector<std::uint32_t>;

inline Poly digits_of(std::uint64_t code, std::uint32_t p, std::uint32_t m) {
  Poly out(m, 0);
  for (std::uint32_t j = 0; j < m; ++j) {
    out[j] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return out;
}

inline std::uint64_t code_of(const Poly& digits, std::uint32_t p) {
  std::uint64_t code = 0;
  for (std::size_t j = digits.size(); j-- > 0;) code = code * p + digits[j];
  return code;
}

inline std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
  // Fermat; p < 2^16 so products fit.
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo monic-or-not divisor d (d's leading coeff nonzero).
inline Poly poly_rem(Poly a, const Poly& d, std::uint32_t p) {
  const std::size_t dd = d.size() - 1;
  const std::uint32_t lead_inv = inv_mod_prime(d.back(), p);
  for (std::size_t k = a.size(); k-- > dd;) {
    const std::uint32_t c = static_cast<std::uint32_t>(std::uint64_t(a[k]) * lead_inv % p);
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) {
      const std::size_t idx = k - dd + j;
      a[idx] = static_cast<std::uint32_t>((a[idx] + std::uint64_t(p - c) * d[j]) % p);
    }
  }
  a.resize(dd);
  return a;
}

inline bool is_zero(const Poly& a) {
  for (auto c : a)
    if (c) return false;
  return true;
}

// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t dd = 1; 2 * dd <= deg; ++dd) {
    std::uint64_t count = 1;
    for (std::uint32_t j = 0; j < dd; ++j) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly d = digits_of(low, p, dd);
      d.push_back(1);
      if (is_zero(poly_rem(f, d, p))) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Coefficients (low to high, leading 1 included) of the canonical modulus.
inline std::vector<std::uint32_t> canonical_modulus(std::uint32_t p, std::uint32_t m) {
  std::uint64_t count = 1;
  for (std::uint32_t j = 0; j < m; ++j) count *= p;
  for (std::uint64_t low = 0; low < count; ++low) {
    detail::Poly f = detail::digits_of(low, p, m);
    f.push_back(1);
    if (m == 1 || detail::is_irreducible(f, p)) return f;
  }
  throw Error("no irreducible polynomial found");  // unreachable for prime p
}

class GaloisField {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  explicit GaloisField(std::uint32_t q) : q_(q) {
    const auto pp = factor_prime_power(q);
    if (!pp) throw NotPrimePower(std::to_string(q) + " is not a prime power");
    if (q > kMaxOrder) throw ResourceLimit("field order " + std::to_string(q) + " exceeds 2^16");
    p_ = pp->p;
    m_ = pp->m;
    modulus_ = canonical_modulus(p_, m_);
    build_tables();
  }

  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return m_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  Element primitive_element() const noexcept { return exp_[1]; }

  Element add(Element a, Element b) const {
    if (p_ == 2) return a ^ b;
    if (m_ == 1) {
      const Element s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (!add_.empty()) return add_[std::size_t(a) * q_ + b];
    return add_digits(a, b);
  }

  Element neg(Element a) const { return neg_[a]; }
  Element sub(Element a, Element b) const { return add(a, neg_[b]); }

  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  Element inv(Element a) const {
    if (a == 0) throw DivisionByZero("inverse of 0 in GF(" + std::to_string(q_) + ")");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  Element pow(Element a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[(std::uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
  }

 private:
  Element add_digits(Element a, Element b) const {
    Element out = 0, scale = 1;
    for (std::uint32_t j = 0; j < m_; ++j) {
      const Element d = (a % p_ + b % p_) % p_;
      out += d * scale;
      scale *= p_;
      a /= p_;
      b /= p_;
    }
    return out;
  }

  Element mul_slow(Element a, Element b) const {
    const auto da = detail::digits_of(a, p_, m_);
    const auto db = detail::digits_of(b, p_, m_);
    detail::Poly prod(2 * m_ - 1, 0);
    for (std::uint32_t i = 0; i < m_; ++i)
      for (std::uint32_t j = 0; j < m_; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(da[i]) * db[j]) % p_);
    if (m_ > 1) prod = detail::poly_rem(prod, modulus_, p_);
    return static_cast<Element>(detail::code_of(prod, p_));
  }

  Element pow_slow(Element a, std::uint64_t e) const {
    Element result = 1;
    while (e) {
      if (e & 1) result = mul_slow(result, a);
      a = mul_slow(a, a);
      e >>= 1;
    }
    return result;
  }

  bool is_generator(Element g) const {
    std::uint64_t n = q_ - 1;
    for (std::uint64_t r = 2; r * r <= n; ++r) {
      if (n % r) continue;
      if (pow_slow(g, (q_ - 1) / r) == 1) return false;
      while (n % r == 0) n /= r;
    }
    if (n > 1 && pow_slow(g, (q_ - 1) / n) == 1) return false;
    return true;
  }

  void build_tables() {
    if (p_ != 2 && m_ > 1 && q_ <= 1024) {
      add_.resize(std::size_t(q_) * q_);
      for (Element a = 0; a < q_; ++a)
        for (Element b = 0; b < q_; ++b) add_[std::size_t(a) * q_ + b] = add_digits(a, b);
    }
    neg_.resize(q_);
    for (Element a = 0; a < q_; ++a) {
      Element out = 0, scale = 1, x = a;
      for (std::uint32_t j = 0; j < m_; ++j) {
        const Element d = x % p_;
        out += ((p_ - d) % p_) * scale;
        scale *= p_;
        x /= p_;
      }
      neg_[a] = out;
    }

    Element g = 1;
    if (q_ > 2) {
      for (g = 2; g < q_ && !is_generator(g); ++g) {
      }
    }
    exp_.assign(2 * std::size_t(q_ - 1), 0);
    log_.assign(q_, 0);
    Element x = 1;
    for (std::uint32_t e = 0; e < q_ - 1; ++e) {
      exp_[e] = x;
      exp_[e + q_ - 1] = x;
      log_[x] = e;
      x = mul_slow(x, g);
    }
  }

  std::uint32_t q_, p_ = 0, m_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<Element> add_, neg_, exp_;
  std::vector<std::uint32_t> log_;
};

inline GaloisField make_field(std::uint32_t q) { return GaloisField(q); }

}  // namespace satset
