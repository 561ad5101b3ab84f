#pragma once

#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace z2lp {

// Largest residue level supported by TruncatedDyadic (residues fit in 63 bits).
inline constexpr int kMaxResidueLevel = 62;

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("z2lp: 64-bit integer overflow in multiplication");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("z2lp: 64-bit integer overflow in addition");
  return r;
}

inline std::int64_t checked_pow(std::int64_t base, int exponent) {
  std::int64_t r = 1;
  for (int i = 0; i < exponent; ++i) r = checked_mul(r, base);
  return r;
}

inline std::uint64_t level_size(int level) { return std::uint64_t{1} << level; }

}  // namespace detail

/// p-adic valuation: a non-negative or negative integer, or +infinity for zero.
class Valuation {
 public:
  constexpr Valuation() = default;  // +infinity
  constexpr explicit Valuation(int value) : value_(value), finite_(true) {}

  static constexpr Valuation infinity() { return Valuation{}; }

  constexpr bool is_infinite() const { return !finite_; }
  constexpr int value() const {
    if (!finite_) throw std::logic_error("z2lp: value() of infinite valuation");
    return value_;
  }

  friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (!a.finite_ || !b.finite_) return b.finite_ <=> a.finite_;
    return a.value_ <=> b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Valuation& v) {
    return v.finite_ ? (os << v.value_) : (os << "+inf");
  }

 private:
  int value_ = 0;
  bool finite_ = false;
};

/// Exact rational with 64-bit numerator/denominator. Every operation throws
/// std::overflow_error instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num) : num_(num), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("z2lp: rational with zero denominator");
    if (num == std::numeric_limits<std::int64_t>::min() || den == std::numeric_limits<std::int64_t>::min())
      throw std::overflow_error("z2lp: rational component out of range");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return {detail::checked_add(detail::checked_mul(a.num_, b.den_), detail::checked_mul(b.num_, a.den_)),
            detail::checked_mul(a.den_, b.den_)};
  }
  friend Rational operator-(const Rational& a) { return {-a.num_, a.den_}; }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return {detail::checked_mul(a.num_, b.num_), detail::checked_mul(a.den_, b.den_)};
  }
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num_;
    if (r.den_ != 1) os << '/' << r.den_;
    return os;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Number of times p divides n; +infinity for n == 0.
inline Valuation valuation(std::int64_t n, std::int64_t p = 2) {
  if (!is_prime(p)) throw std::invalid_argument("z2lp: valuation base must be prime");
  if (n == 0) return Valuation::infinity();
  if (p == 2) return Valuation{std::countr_zero(static_cast<std::uint64_t>(n))};
  int r = 0;
  while (n % p == 0) {
    n /= p;
    ++r;
  }
  return Valuation{r};
}

/// gamma(a/b) = gamma(a) - gamma(b).
inline Valuation valuation(const Rational& x, std::int64_t p = 2) {
  if (x.is_zero()) return Valuation::infinity();
  return Valuation{valuation(x.num(), p).value() - valuation(x.den(), p).value()};
}

/// |x|_p = p^{-gamma(x)}, and |0|_p = 0.
inline Rational padic_norm(const Rational& x, std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("z2lp: padic_norm requires a prime p");
  const Valuation v = valuation(x, p);
  if (v.is_infinite()) return Rational{0};
  if (v.value() >= 0) return Rational{1, detail::checked_pow(p, v.value())};
  return Rational{detail::checked_pow(p, -v.value())};
}

/// Valuation of a residue k mod 2^level, clamped to `level` for k == 0: the coset
/// Q_{level,0} contains points of every valuation >= level.
inline int residue_valuation(std::uint64_t k, int level) {
  if (level < 0 || level > kMaxResidueLevel) throw std::out_of_range("z2lp: residue level out of range");
  if (k >= detail::level_size(level)) throw std::out_of_range("z2lp: residue out of range for level");
  return k == 0 ? level : std::countr_zero(k);
}

/// A 2-adic integer known modulo 2^level; stands in for the coset Q_{level,residue}.
class TruncatedDyadic {
 public:
  TruncatedDyadic(std::uint64_t residue, int level) : residue_(residue), level_(level) {
    if (level < 0 || level > kMaxResidueLevel) throw std::out_of_range("z2lp: truncation level out of range");
    if (residue >= detail::level_size(level)) throw std::out_of_range("z2lp: residue not reduced mod 2^level");
  }

  /// Reduces an arbitrary integer (negative allowed) modulo 2^level.
  static TruncatedDyadic reduce(std::int64_t n, int level) {
    if (level < 0 || level > kMaxResidueLevel) throw std::out_of_range("z2lp: truncation level out of range");
    return {static_cast<std::uint64_t>(n) & (detail::level_size(level) - 1), level};
  }

  std::uint64_t residue() const { return residue_; }
  int level() const { return level_; }
  int valuation() const { return residue_valuation(residue_, level_); }

  friend bool operator==(const TruncatedDyadic&, const TruncatedDyadic&) = default;

 private:
  std::uint64_t residue_;
  int level_;
};

/// Binary Hensel digits d_0 ... d_{J-1}, least significant first.
inline std::vector<int> hensel_digits(const TruncatedDyadic& x) {
  std::vector<int> digits(static_cast<std::size_t>(x.level()));
  for (int i = 0; i < x.level(); ++i) digits[static_cast<std::size_t>(i)] = static_cast<int>((x.residue() >> i) & 1U);
  return digits;
}

inline TruncatedDyadic from_digits(std::span<const int> digits) {
  if (digits.size() > static_cast<std::size_t>(kMaxResidueLevel))
    throw std::out_of_range("z2lp: too many digits for a truncated residue");
  std::uint64_t residue = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] != 0 && digits[i] != 1) throw std::invalid_argument("z2lp: Hensel digit outside {0,1}");
    residue |= static_cast<std::uint64_t>(digits[i]) << i;
  }
  return {residue, static_cast<int>(digits.size())};
}

inline void require_same_level(const TruncatedDyadic& a, const TruncatedDyadic& b) {
  if (a.level() != b.level()) throw std::invalid_argument("z2lp: truncation level mismatch");
}

// Carry-propagating addition of Hensel expansions reduces to integer addition mod 2^J.
inline TruncatedDyadic add(const TruncatedDyadic& a, const TruncatedDyadic& b) {
  require_same_level(a, b);
  const std::uint64_t mask = detail::level_size(a.level()) - 1;
  return {(a.residue() + b.residue()) & mask, a.level()};
}

inline TruncatedDyadic negate(const TruncatedDyadic& a) {
  const std::uint64_t mask = detail::level_size(a.level()) - 1;
  return {(~a.residue() + 1) & mask, a.level()};
}

inline TruncatedDyadic subtract(const TruncatedDyadic& a, const TruncatedDyadic& b) { return add(a, negate(b)); }

/// Q_{level,index} = index + 2^level Z_2, a ball of measure 2^{-level}.
struct Coset {
  int level = 0;
  std::uint64_t index = 0;

  Coset(int level_, std::uint64_t index_) : level(level_), index(index_) {
    if (level < 0 || level > kMaxResidueLevel) throw std::out_of_range("z2lp: coset level out of range");
    if (index >= detail::level_size(level)) throw std::out_of_range("z2lp: coset index out of range");
  }

  double measure() const { return std::ldexp(1.0, -level); }

  friend bool operator==(const Coset&, const Coset&) = default;
};

inline bool coset_contains(const Coset& c, const TruncatedDyadic& x) {
  if (c.level > x.level())
    throw std::invalid_argument("z2lp: coset is finer than the point's truncation level");
  const std::uint64_t mask = detail::level_size(c.level) - 1;
  return (x.residue() & mask) == c.index;
}

}  // namespace z2lp
