#pragma once

#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace z2lp {

/**
 * Exact dyadic rational m * 2^e with a 64-bit mantissa.
 *
 * Canonical form: m is odd, or m == 0 and e == 0. Every finite double is a
 * dyadic rational, so sample data converts losslessly. Operations that would
 * need more than 63 mantissa bits throw std::overflow_error; results are never
 * rounded.
 */
class Dyadic {
 public:
  constexpr Dyadic() = default;
  Dyadic(std::int64_t m) { set(m, 0); }  // NOLINT(google-explicit-constructor)
  Dyadic(std::int64_t m, int e) { set(m, e); }

  static Dyadic from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("z2lp: non-finite value has no dyadic form");
    if (x == 0.0) return {};
    int e = 0;
    const double frac = std::frexp(x, &e);  // x = frac * 2^e, 0.5 <= |frac| < 1
    const auto m = static_cast<std::int64_t>(std::ldexp(frac, 53));
    return {m, e - 53};
  }

  std::int64_t mantissa() const { return m_; }
  int exponent() const { return e_; }
  bool is_zero() const { return m_ == 0; }

  /// Nearest double; exact whenever the mantissa fits in 53 bits.
  double to_double() const { return std::ldexp(static_cast<double>(m_), e_); }

  Dyadic times_pow2(int k) const {
    if (m_ == 0) return {};
    Dyadic r;
    r.m_ = m_;
    r.e_ = e_ + k;
    return r;
  }

  friend Dyadic operator-(const Dyadic& a) {
    if (a.m_ == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("z2lp: dyadic negation overflow");
    Dyadic r = a;
    r.m_ = -a.m_;
    return r;
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.m_ == 0) return b;
    if (b.m_ == 0) return a;
    const Dyadic& lo = a.e_ <= b.e_ ? a : b;
    const Dyadic& hi = a.e_ <= b.e_ ? b : a;
    const int shift = hi.e_ - lo.e_;
    if (shift > 63) throw std::overflow_error("z2lp: dyadic exponent gap exceeds mantissa width");
    const __int128 sum = static_cast<__int128>(lo.m_) + (static_cast<__int128>(hi.m_) << shift);
    return from_wide(sum, lo.e_);
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    if (a.m_ == 0 || b.m_ == 0) return {};
    return from_wide(static_cast<__int128>(a.m_) * b.m_, a.e_ + b.e_);
  }

  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    const int sa = sign(a.m_);
    const int sb = sign(b.m_);
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;
    // Same sign: compare magnitudes by bit length first, then aligned mantissas.
    const int la = bit_length(a) + a.e_;
    const int lb = bit_length(b) + b.e_;
    if (la != lb) return sa > 0 ? la <=> lb : lb <=> la;
    const int emin = std::min(a.e_, b.e_);
    const __int128 ma = static_cast<__int128>(a.m_) << (a.e_ - emin);
    const __int128 mb = static_cast<__int128>(b.m_) << (b.e_ - emin);
    return ma <=> mb;
  }

  /// "3/8", "-5", or "7*2^-80" when the denominator does not fit in 64 bits.
  std::string to_string() const {
    std::ostringstream os;
    if (e_ >= 0 && bit_length(*this) + e_ <= 62) {
      os << (m_ << e_);
    } else if (e_ < 0 && e_ > -63) {
      os << m_ << '/' << (std::uint64_t{1} << -e_);
    } else {
      os << m_ << "*2^" << e_;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.to_string(); }

 private:
  static int sign(std::int64_t m) { return (m > 0) - (m < 0); }
  static int bit_length(const Dyadic& d) {
    return 64 - std::countl_zero(static_cast<std::uint64_t>(d.m_ < 0 ? -d.m_ : d.m_));
  }

  static Dyadic from_wide(__int128 m, int e) {
    if (m == 0) return {};
    while ((m & 1) == 0) {
      m >>= 1;
      ++e;
    }
    if (m > std::numeric_limits<std::int64_t>::max() || m < -std::numeric_limits<std::int64_t>::max())
      throw std::overflow_error("z2lp: dyadic mantissa exceeds 63 bits");
    Dyadic r;
    r.m_ = static_cast<std::int64_t>(m);
    r.e_ = e;
    return r;
  }

  void set(std::int64_t m, int e) {
    if (m == 0) {
      m_ = 0;
      e_ = 0;
      return;
    }
    if (m == std::numeric_limits<std::int64_t>::min()) throw std::overflow_error("z2lp: dyadic mantissa out of range");
    const int tz = std::countr_zero(static_cast<std::uint64_t>(m));
    m_ = m >> tz;
    e_ = e + tz;
  }

  std::int64_t m_ = 0;
  int e_ = 0;
};

inline Dyadic abs(const Dyadic& d) { return d < Dyadic{} ? -d : d; }
inline Dyadic ldexp(const Dyadic& d, int k) { return d.times_pow2(k); }
inline bool isfinite(const Dyadic&) { return true; }
inline double to_double(const Dyadic& d) { return d.to_double(); }
inline double to_double(double d) { return d; }

}  // namespace z2lp
