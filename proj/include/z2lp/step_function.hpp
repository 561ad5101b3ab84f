#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "z2lp/dyadic.hpp"
#include "z2lp/padic.hpp"

namespace z2lp {

// Largest resolution level for sampled functions (2^24 samples per function).
inline constexpr int kMaxFunctionLevel = 24;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/**
 * A real function on Z_2 that is constant on each level-J coset Q_{J,k}.
 *
 * samples[k] is the value on Q_{J,k}. Each coset carries Haar measure 2^{-J}.
 * Scalar is double, or Dyadic for exact arithmetic.
 */
template <class Scalar>
class BasicStepFunction {
 public:
  using value_type = Scalar;

  BasicStepFunction() : BasicStepFunction(0, std::vector<Scalar>{Scalar{}}) {}

  BasicStepFunction(int level, std::vector<Scalar> samples) : level_(level), samples_(std::move(samples)) {
    if (level < 0 || level > kMaxFunctionLevel) throw std::out_of_range("z2lp: function level out of range");
    if (samples_.size() != detail::level_size(level))
      throw std::invalid_argument("z2lp: sample count must equal 2^level");
    using std::isfinite;
    for (const Scalar& s : samples_)
      if (!isfinite(s)) throw std::invalid_argument("z2lp: samples must be finite");
  }

  static BasicStepFunction constant(int level, Scalar c) {
    if (level < 0 || level > kMaxFunctionLevel) throw std::out_of_range("z2lp: function level out of range");
    return {level, std::vector<Scalar>(detail::level_size(level), c)};
  }

  /// 1 on Q_{c.level, c.index}, 0 elsewhere, sampled at `level` >= c.level.
  static BasicStepFunction indicator(const Coset& c, int level) {
    if (level < c.level) throw std::invalid_argument("z2lp: indicator level coarser than its coset");
    BasicStepFunction f = constant(level, Scalar{});
    const std::uint64_t mask = detail::level_size(c.level) - 1;
    for (std::uint64_t k = 0; k < f.size(); ++k)
      if ((k & mask) == c.index) f.samples_[k] = Scalar{1};
    return f;
  }

  int level() const { return level_; }
  std::uint64_t size() const { return samples_.size(); }
  std::span<const Scalar> samples() const { return samples_; }
  const Scalar& operator[](std::uint64_t k) const { return samples_[k]; }

  friend bool operator==(const BasicStepFunction&, const BasicStepFunction&) = default;

 private:
  int level_;
  std::vector<Scalar> samples_;
};

using StepFunction = BasicStepFunction<double>;
using ExactStepFunction = BasicStepFunction<Dyadic>;

inline ExactStepFunction to_exact(const StepFunction& f) {
  std::vector<Dyadic> s;
  s.reserve(f.size());
  for (double v : f.samples()) s.push_back(Dyadic::from_double(v));
  return {f.level(), std::move(s)};
}

inline StepFunction to_double(const ExactStepFunction& f) {
  std::vector<double> s;
  s.reserve(f.size());
  for (const Dyadic& v : f.samples()) s.push_back(v.to_double());
  return {f.level(), std::move(s)};
}

template <class Scalar>
Scalar sample_sum(const BasicStepFunction<Scalar>& f) {
  Scalar total{};
  for (const Scalar& s : f.samples()) total += s;
  return total;
}

/// Haar integral with the normalisation |Z_2| = 1.
template <class Scalar>
Scalar integral(const BasicStepFunction<Scalar>& f) {
  using std::ldexp;
  return ldexp(sample_sum(f), -f.level());
}

template <class Scalar>
Scalar l1_norm(const BasicStepFunction<Scalar>& f) {
  using std::abs;
  using std::ldexp;
  Scalar total{};
  for (const Scalar& s : f.samples()) total += abs(s);
  return ldexp(total, -f.level());
}

template <class Scalar>
Scalar l2_norm_squared(const BasicStepFunction<Scalar>& f) {
  using std::ldexp;
  Scalar total{};
  for (const Scalar& s : f.samples()) total += s * s;
  return ldexp(total, -f.level());
}

template <class Scalar>
Scalar linf_norm(const BasicStepFunction<Scalar>& f) {
  using std::abs;
  Scalar best{};
  for (const Scalar& s : f.samples()) best = std::max(best, abs(s));
  return best;
}

/// L^p norm for p in [1, inf]; pass kInfinity for the sup norm.
inline double lp_norm(const StepFunction& f, double p) {
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("z2lp: L^p exponent must satisfy p >= 1");
  if (std::isinf(p)) return linf_norm(f);
  if (p == 1.0) return l1_norm(f);
  if (p == 2.0) return std::sqrt(l2_norm_squared(f));
  // Rescale by the sup norm so |x/M|^p cannot overflow.
  const double m = linf_norm(f);
  if (m == 0.0) return 0.0;
  double total = 0.0;
  for (double s : f.samples()) total += std::pow(std::abs(s) / m, p);
  return m * std::pow(std::ldexp(total, -f.level()), 1.0 / p);
}

/// x -> f(x + y). Adding 2-adic integers mod 2^J is integer addition mod 2^J.
template <class Scalar>
BasicStepFunction<Scalar> translate(const BasicStepFunction<Scalar>& f, const TruncatedDyadic& y) {
  if (y.level() != f.level()) throw std::invalid_argument("z2lp: translation level mismatch");
  const std::uint64_t mask = f.size() - 1;
  std::vector<Scalar> out(f.size());
  for (std::uint64_t k = 0; k < f.size(); ++k) out[k] = f[(k + y.residue()) & mask];
  return {f.level(), std::move(out)};
}

/// Re-samples f on the finer cosets of `level`; values are unchanged pointwise.
template <class Scalar>
BasicStepFunction<Scalar> refine(const BasicStepFunction<Scalar>& f, int level) {
  if (level < f.level()) throw std::invalid_argument("z2lp: cannot refine to a coarser level");
  if (level > kMaxFunctionLevel) throw std::out_of_range("z2lp: function level out of range");
  const std::uint64_t n = detail::level_size(level);
  const std::uint64_t mask = f.size() - 1;
  std::vector<Scalar> out(n);
  for (std::uint64_t k = 0; k < n; ++k) out[k] = f[k & mask];
  return {level, std::move(out)};
}

enum class CombineOp { add, subtract, multiply };

template <class Scalar>
BasicStepFunction<Scalar> pointwise_combine(const BasicStepFunction<Scalar>& f, const BasicStepFunction<Scalar>& g,
                                            CombineOp op) {
  const int level = std::max(f.level(), g.level());
  const BasicStepFunction<Scalar> a = f.level() == level ? f : refine(f, level);
  const BasicStepFunction<Scalar> b = g.level() == level ? g : refine(g, level);
  std::vector<Scalar> out(a.size());
  for (std::uint64_t k = 0; k < a.size(); ++k) {
    switch (op) {
      case CombineOp::add: out[k] = a[k] + b[k]; break;
      case CombineOp::subtract: out[k] = a[k] - b[k]; break;
      case CombineOp::multiply: out[k] = a[k] * b[k]; break;
    }
  }
  return {level, std::move(out)};
}

template <class Scalar>
BasicStepFunction<Scalar> scale(const BasicStepFunction<Scalar>& f, const Scalar& c) {
  std::vector<Scalar> out(f.samples().begin(), f.samples().end());
  for (Scalar& s : out) s = c * s;
  return {f.level(), std::move(out)};
}

template <class Scalar>
BasicStepFunction<Scalar> operator+(const BasicStepFunction<Scalar>& f, const BasicStepFunction<Scalar>& g) {
  return pointwise_combine(f, g, CombineOp::add);
}
template <class Scalar>
BasicStepFunction<Scalar> operator-(const BasicStepFunction<Scalar>& f, const BasicStepFunction<Scalar>& g) {
  return pointwise_combine(f, g, CombineOp::subtract);
}
template <class Scalar>
BasicStepFunction<Scalar> operator*(const BasicStepFunction<Scalar>& f, const BasicStepFunction<Scalar>& g) {
  return pointwise_combine(f, g, CombineOp::multiply);
}
template <class Scalar>
BasicStepFunction<Scalar> operator*(const Scalar& c, const BasicStepFunction<Scalar>& f) {
  return scale(f, c);
}

/// log_2 |x|_2 = -gamma(x), with gamma clamped at the resolution level.
inline StepFunction sample_log_norm(int level) {
  if (level < 1) throw std::invalid_argument("z2lp: sample_log_norm needs level >= 1");
  if (level > kMaxFunctionLevel) throw std::out_of_range("z2lp: function level out of range");
  std::vector<double> s(detail::level_size(level));
  for (std::uint64_t k = 0; k < s.size(); ++k) s[k] = -static_cast<double>(residue_valuation(k, level));
  return {level, std::move(s)};
}

/// Truncated stand-in for 1/|x|_2 = 2^{gamma(x)}; the untruncated function is
/// not integrable on Z_2.
inline StepFunction sample_reciprocal_norm(int level, int cap) {
  if (level < 1) throw std::invalid_argument("z2lp: sample_reciprocal_norm needs level >= 1");
  if (level > kMaxFunctionLevel) throw std::out_of_range("z2lp: function level out of range");
  if (cap < level) throw std::invalid_argument("z2lp: reciprocal-norm cap must be >= level");
  const int clamp = std::min(level, cap);
  std::vector<double> s(detail::level_size(level));
  for (std::uint64_t k = 0; k < s.size(); ++k) {
    const std::uint64_t r = k & (detail::level_size(clamp) - 1);
    s[k] = std::ldexp(1.0, residue_valuation(r, clamp));
  }
  return {level, std::move(s)};
}

}  // namespace z2lp
