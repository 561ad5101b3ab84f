#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "z2lp/littlewood_paley.hpp"
#include "z2lp/step_function.hpp"

namespace z2lp {

enum class NormFamily { lebesgue, sobolev, besov, bv, second_difference };

inline std::string_view to_string(NormFamily f) {
  switch (f) {
    case NormFamily::lebesgue: return "lebesgue";
    case NormFamily::sobolev: return "sobolev";
    case NormFamily::besov: return "besov";
    case NormFamily::bv: return "bv";
    case NormFamily::second_difference: return "second_difference";
  }
  return "unknown";
}

inline std::optional<NormFamily> parse_norm_family(std::string_view name) {
  for (NormFamily f : {NormFamily::lebesgue, NormFamily::sobolev, NormFamily::besov, NormFamily::bv,
                       NormFamily::second_difference})
    if (to_string(f) == name) return f;
  return std::nullopt;
}

/// Which norm to evaluate. `s`, `p`, `q` are ignored by families that do not use them.
struct NormSpec {
  NormFamily family = NormFamily::lebesgue;
  double s = 0.0;
  double p = 2.0;
  double q = kInfinity;
  bool homogeneous = true;

  void validate() const {
    if (!std::isfinite(s)) throw std::invalid_argument("z2lp: smoothness s must be finite");
    switch (family) {
      case NormFamily::lebesgue:
        if (std::isnan(p) || p < 1.0) throw std::invalid_argument("z2lp: lebesgue norm needs p in [1, inf]");
        break;
      case NormFamily::sobolev:
        if (!(p > 1.0) || std::isinf(p)) throw std::invalid_argument("z2lp: sobolev norm needs 1 < p < inf");
        if (!homogeneous && !(s > 0.0))
          throw std::invalid_argument("z2lp: inhomogeneous sobolev norm needs s > 0");
        break;
      case NormFamily::besov:
        if (std::isnan(p) || p < 1.0 || std::isnan(q) || q < 1.0)
          throw std::invalid_argument("z2lp: besov norm needs p, q in [1, inf]");
        break;
      case NormFamily::bv:
      case NormFamily::second_difference: break;
    }
  }
};

struct NormValue {
  double value = 0.0;
  NormSpec spec;
  int level = 0;
};

/// exact: every shift y != 0; dyadic: only y = 2^m (a lower bound, O(J 2^J)).
enum class BvMode { exact, dyadic };

inline constexpr int kDefaultExhaustiveLevelCap = 14;

namespace detail {

inline NormValue checked_value(double v, const NormSpec& spec, int level) {
  if (!std::isfinite(v) || v < 0.0) throw std::domain_error("z2lp: norm value is not a finite non-negative number");
  return {v, spec, level};
}

inline double lp_of_sequence(const std::vector<double>& terms, double q) {
  if (terms.empty()) return 0.0;
  if (std::isinf(q)) return *std::max_element(terms.begin(), terms.end());
  const double m = *std::max_element(terms.begin(), terms.end());
  if (m == 0.0) return 0.0;
  double total = 0.0;
  for (double t : terms) total += std::pow(t / m, q);
  return m * std::pow(total, 1.0 / q);
}

inline void check_exhaustive_cap(int level, int cap) {
  if (level > cap)
    throw std::invalid_argument("z2lp: exhaustive shift scan at level " + std::to_string(level) +
                                " exceeds the resolution cap " + std::to_string(cap));
}

template <class Scalar>
Scalar shifted_difference_l1(const BasicStepFunction<Scalar>& f, std::uint64_t y) {
  using std::abs;
  const std::uint64_t mask = f.size() - 1;
  Scalar total{};
  for (std::uint64_t k = 0; k < f.size(); ++k) total += abs(f[(k + y) & mask] - f[k]);
  return total;
}

template <class Scalar>
Scalar second_difference_l1(const BasicStepFunction<Scalar>& f, std::uint64_t y) {
  using std::abs;
  const std::uint64_t mask = f.size() - 1;
  const std::uint64_t minus_y = (~y + 1) & mask;
  Scalar total{};
  for (std::uint64_t k = 0; k < f.size(); ++k) {
    const Scalar c = f[k];
    total += abs(f[(k + y) & mask] + f[(k + minus_y) & mask] - c - c);
  }
  return total;
}

}  // namespace detail

/// Result of a shift scan: the supremum and the smallest shift attaining it.
template <class Scalar>
struct ShiftScan {
  Scalar value{};
  std::uint64_t shift = 0;
};

/**
 * sup over shifts y != 0 of ||f(. + y) - f||_{L^1} / |y|_2.
 *
 * |y|_2 = 2^{-gamma(y)} with gamma clamped at the level. Ties report the
 * smallest shift. The exact scan costs O(4^J) and is refused above `cap`.
 */
template <class Scalar>
ShiftScan<Scalar> bv_scan(const BasicStepFunction<Scalar>& f, BvMode mode = BvMode::exact,
                          int cap = kDefaultExhaustiveLevelCap) {
  using std::ldexp;
  ShiftScan<Scalar> best;
  const int level = f.level();
  auto consider = [&](std::uint64_t y) {
    const Scalar v = ldexp(detail::shifted_difference_l1(f, y), residue_valuation(y, level) - level);
    if (v > best.value) best = {v, y};
  };
  if (mode == BvMode::dyadic) {
    for (int m = 0; m < level; ++m) consider(detail::level_size(m));
  } else {
    detail::check_exhaustive_cap(level, cap);
    for (std::uint64_t y = 1; y < f.size(); ++y) consider(y);
  }
  return best;
}

/// sup over y != 0 of ||f(. + y) + f(. - y) - 2 f||_{L^1} / |y|_2 (exhaustive).
template <class Scalar>
ShiftScan<Scalar> second_difference_scan(const BasicStepFunction<Scalar>& f, int cap = kDefaultExhaustiveLevelCap) {
  using std::ldexp;
  detail::check_exhaustive_cap(f.level(), cap);
  ShiftScan<Scalar> best;
  for (std::uint64_t y = 1; y < f.size(); ++y) {
    const Scalar v = ldexp(detail::second_difference_l1(f, y), residue_valuation(y, f.level()) - f.level());
    if (v > best.value) best = {v, y};
  }
  return best;
}

inline NormValue bv_seminorm(const StepFunction& f, BvMode mode = BvMode::exact,
                             int cap = kDefaultExhaustiveLevelCap) {
  return detail::checked_value(bv_scan(f, mode, cap).value, NormSpec{.family = NormFamily::bv}, f.level());
}

inline NormValue second_difference_modulus(const StepFunction& f, int cap = kDefaultExhaustiveLevelCap) {
  return detail::checked_value(second_difference_scan(f, cap).value,
                               NormSpec{.family = NormFamily::second_difference}, f.level());
}

/// ||Delta_j f||_{L^p} for j = 0 .. J-1.
inline std::vector<double> block_norms(const LPDecomposition& d, double p) {
  std::vector<double> out;
  out.reserve(d.blocks.size());
  for (const auto& b : d.blocks) out.push_back(lp_norm(b, p));
  return out;
}

inline NormValue besov_norm(const LPDecomposition& d, double s, double q, double p, bool homogeneous) {
  const NormSpec spec{.family = NormFamily::besov, .s = s, .p = p, .q = q, .homogeneous = homogeneous};
  spec.validate();
  std::vector<double> terms = block_norms(d, p);
  for (std::size_t j = 0; j < terms.size(); ++j) terms[j] *= std::exp2(static_cast<double>(j) * s);
  const double head = homogeneous ? 0.0 : std::abs(d.mean);
  return detail::checked_value(head + detail::lp_of_sequence(terms, q), spec, d.level);
}

/// ||S_0 f||_p (inhomogeneous only) + (sum_j 2^{jsq} ||Delta_j f||_p^q)^{1/q}; sup when q = inf.
inline NormValue besov_norm(const StepFunction& f, double s, double q, double p, bool homogeneous) {
  return besov_norm(decompose(f), s, q, p, homogeneous);
}

inline NormValue sobolev_norm(const LPDecomposition& d, double s, double p, bool homogeneous) {
  const NormSpec spec{.family = NormFamily::sobolev, .s = s, .p = p, .homogeneous = homogeneous};
  spec.validate();
  const std::size_t n = detail::level_size(d.level);
  std::vector<double> square(n, 0.0);
  for (std::size_t j = 0; j < d.blocks.size(); ++j) {
    const double w = std::exp2(2.0 * static_cast<double>(j) * s);
    for (std::size_t k = 0; k < n; ++k) square[k] += w * d.blocks[j][k] * d.blocks[j][k];
  }
  for (double& v : square) v = std::sqrt(v);
  const double head = homogeneous ? 0.0 : std::abs(d.mean);
  return detail::checked_value(head + lp_norm(StepFunction{d.level, std::move(square)}, p), spec, d.level);
}

/// ||S_0 f||_p (inhomogeneous only) + || (sum_j 2^{2js} |Delta_j f|^2)^{1/2} ||_p.
inline NormValue sobolev_norm(const StepFunction& f, double s, double p, bool homogeneous) {
  return sobolev_norm(decompose(f), s, p, homogeneous);
}

/**
 * Homogeneous Besov norm sup_j 2^{js} ||Delta_j f||_{L^p} for integer s and
 * p in {1, inf}, evaluated in the scalar type of f (exact for Dyadic).
 */
template <class Scalar>
Scalar besov_sup_norm(const BasicStepFunction<Scalar>& f, int s, double p) {
  using std::ldexp;
  if (p != 1.0 && !std::isinf(p)) throw std::invalid_argument("z2lp: exact besov norm supports p = 1 or p = inf");
  const auto d = decompose(f);
  Scalar best{};
  for (std::size_t j = 0; j < d.blocks.size(); ++j) {
    const Scalar bn = std::isinf(p) ? linf_norm(d.blocks[j]) : l1_norm(d.blocks[j]);
    best = std::max(best, ldexp(bn, static_cast<int>(j) * s));
  }
  return best;
}

inline NormValue evaluate_norm(const StepFunction& f, const NormSpec& spec, BvMode mode = BvMode::exact,
                               int cap = kDefaultExhaustiveLevelCap) {
  spec.validate();
  switch (spec.family) {
    case NormFamily::lebesgue: return detail::checked_value(lp_norm(f, spec.p), spec, f.level());
    case NormFamily::sobolev: return sobolev_norm(f, spec.s, spec.p, spec.homogeneous);
    case NormFamily::besov: return besov_norm(f, spec.s, spec.q, spec.p, spec.homogeneous);
    case NormFamily::bv: return bv_seminorm(f, mode, cap);
    case NormFamily::second_difference: return second_difference_modulus(f, cap);
  }
  throw std::invalid_argument("z2lp: unknown norm family");
}

/// BV seminorm against the homogeneous B^{1,inf}_1 norm; the ratio lies in [2, 4].
struct BvBesovComparison {
  double bv = 0.0;
  double besov = 0.0;
  std::optional<double> ratio;  // empty for constant f
};

inline BvBesovComparison bv_besov_comparison(const StepFunction& f, int cap = kDefaultExhaustiveLevelCap) {
  BvBesovComparison c;
  c.bv = bv_seminorm(f, BvMode::exact, cap).value;
  c.besov = besov_norm(f, 1.0, kInfinity, 1.0, true).value;
  if (c.besov > 0.0) c.ratio = c.bv / c.besov;
  return c;
}

}  // namespace z2lp
