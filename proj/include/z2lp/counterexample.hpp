#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "z2lp/littlewood_paley.hpp"
#include "z2lp/norms.hpp"
#include "z2lp/step_function.hpp"

namespace z2lp {

/// Parameters (alpha, beta, j0, j1) of the block-prescribed family.
struct CounterexampleParams {
  double alpha = 1.0;
  double beta = 1.0;
  int j0 = 0;
  int j1 = 0;

  int level() const { return j1 + 1; }
  double ratio() const { return beta / alpha; }

  /// Throws std::invalid_argument naming the first violated condition.
  void validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("counterexample: alpha must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("counterexample: beta must be positive");
    if (j0 < 0) throw std::invalid_argument("counterexample: j0 must be >= 0");
    if (j1 < j0) throw std::invalid_argument("counterexample: j1 must be >= j0");
    if (level() > kMaxFunctionLevel) throw std::invalid_argument("counterexample: level j1 + 1 exceeds the function level cap");
    if (std::ldexp(1.0, 2 * j0) > ratio())
      throw std::invalid_argument("counterexample: admissibility 2^{2 j0} <= beta / alpha violated");
    for (int j = j0 + 1; j <= j1; ++j) {
      const double n = std::ldexp(ratio(), -j);
      if (n < 1.0 || n != std::floor(n))
        throw std::invalid_argument("counterexample: N_j = (beta / alpha) 2^{-j} is not a positive integer at j = " +
                                    std::to_string(j));
      if (n > std::ldexp(1.0, j))
        throw std::invalid_argument("counterexample: N_j <= 2^j violated at j = " + std::to_string(j));
    }
  }
};

/// N_j = 2^j for j <= j0, (beta / alpha) 2^{-j} for j0 < j <= j1.
inline std::vector<std::uint64_t> block_profile(const CounterexampleParams& params) {
  params.validate();
  std::vector<std::uint64_t> n;
  n.reserve(static_cast<std::size_t>(params.j1) + 1);
  for (int j = 0; j <= params.j1; ++j) {
    if (j <= params.j0)
      n.push_back(std::uint64_t{1} << j);
    else
      n.push_back(static_cast<std::uint64_t>(std::ldexp(params.ratio(), -j)));
  }
  return n;
}

/**
 * The prescribed block g_j: +alpha 2^j on Q_{j+1,k} and -alpha 2^j on the
 * sibling Q_{j+1,k+2^j}, for k < N_j; zero elsewhere. Sampled at `level`.
 *
 * Each +/- pair splits one parent coset Q_{j,k}, so g_j has zero mean on every
 * level-j coset and is exactly the j-th dyadic block of the sum.
 */
template <class Scalar>
BasicStepFunction<Scalar> prescribed_block(const Scalar& alpha, int j, std::uint64_t count, int level) {
  using std::ldexp;
  if (j < 0 || j >= level) throw std::out_of_range("counterexample: block index outside the resolution");
  if (count > (std::uint64_t{1} << j)) throw std::invalid_argument("counterexample: more pairs than parent cosets");
  const Scalar amp = ldexp(alpha, j);
  const std::uint64_t half = std::uint64_t{1} << j;
  const std::uint64_t mask = (half << 1) - 1;
  std::vector<Scalar> out(std::uint64_t{1} << level);
  for (std::uint64_t x = 0; x < out.size(); ++x) {
    const std::uint64_t r = x & mask;
    if (r < count)
      out[x] = amp;
    else if (r >= half && r - half < count)
      out[x] = -amp;
  }
  return {level, std::move(out)};
}

/// f = sum_{j <= j1} g_j at level J = j1 + 1.
template <class Scalar = double>
BasicStepFunction<Scalar> build_counterexample(const CounterexampleParams& params) {
  const auto n = block_profile(params);
  const Scalar alpha = [&] {
    if constexpr (std::is_same_v<Scalar, Dyadic>)
      return Dyadic::from_double(params.alpha);
    else
      return params.alpha;
  }();
  const int level = params.level();
  std::vector<Scalar> sum(std::uint64_t{1} << level);
  for (int j = 0; j <= params.j1; ++j) {
    const auto g = prescribed_block(alpha, j, n[static_cast<std::size_t>(j)], level);
    for (std::uint64_t x = 0; x < sum.size(); ++x) sum[x] += g[x];
  }
  return {level, std::move(sum)};
}

struct CounterexampleNorms {
  double l2_squared = 0.0;
  double besov_pos = 0.0;  // homogeneous B^{1,inf}_1
  double besov_neg = 0.0;  // homogeneous B^{-1,inf}_inf
};

struct CounterexampleReport {
  CounterexampleParams params;
  int level = 0;
  std::vector<std::uint64_t> profile;
  CounterexampleNorms computed;
  double bv = 0.0;
  CounterexampleNorms predicted;
  double ratio = 0.0;  // l2_squared / (bv * besov_neg)
  bool exact_arithmetic = false;
  // Set when exact_arithmetic: computed and predicted agree as dyadic rationals.
  std::optional<bool> exact_match;

  bool consistent(double rel_tol = 1e-12) const {
    auto close = [&](double a, double b) { return std::abs(a - b) <= rel_tol * std::max(std::abs(b), 1.0); };
    if (exact_match.has_value() && !*exact_match) return false;
    return close(computed.l2_squared, predicted.l2_squared) && close(computed.besov_pos, predicted.besov_pos) &&
           close(computed.besov_neg, predicted.besov_neg);
  }
};

/// Closed forms: besov_neg = alpha, besov_pos = beta,
/// l2_squared = alpha beta ((alpha / beta) sum_{j <= j0} 4^j + (j1 - j0)).
inline CounterexampleNorms predicted_norms(const CounterexampleParams& p) {
  p.validate();
  double geometric = 0.0;
  for (int j = 0; j <= p.j0; ++j) geometric += std::ldexp(1.0, 2 * j);
  return {p.alpha * p.beta * ((p.alpha / p.beta) * geometric + (p.j1 - p.j0)), p.beta, p.alpha};
}

struct NormReportOptions {
  BvMode bv_mode = BvMode::exact;
  int bv_cap = kDefaultExhaustiveLevelCap;
  bool exact_arithmetic = false;
};

inline CounterexampleReport norm_report(const CounterexampleParams& params, const NormReportOptions& opts = {}) {
  CounterexampleReport r;
  r.params = params;
  r.profile = block_profile(params);
  r.level = params.level();
  r.predicted = predicted_norms(params);

  if (opts.exact_arithmetic) {
    const auto f = build_counterexample<Dyadic>(params);
    const Dyadic l2 = l2_norm_squared(f);
    const Dyadic bpos = besov_sup_norm(f, 1, 1.0);
    const Dyadic bneg = besov_sup_norm(f, -1, kInfinity);
    const Dyadic bv = bv_scan(f, opts.bv_mode, opts.bv_cap).value;
    r.computed = {l2.to_double(), bpos.to_double(), bneg.to_double()};
    r.bv = bv.to_double();

    const Dyadic a = Dyadic::from_double(params.alpha);
    const Dyadic b = Dyadic::from_double(params.beta);
    Dyadic geometric;
    for (int j = 0; j <= params.j0; ++j) geometric += Dyadic{1, 2 * j};
    const Dyadic l2_pred = a * a * geometric + Dyadic{params.j1 - params.j0} * a * b;
    r.exact_match = l2 == l2_pred && bpos == b && bneg == a;
    r.exact_arithmetic = true;
  } else {
    const auto f = build_counterexample(params);
    const auto d = decompose(f);
    r.computed = {l2_norm_squared(f), besov_norm(d, 1.0, kInfinity, 1.0, true).value,
                  besov_norm(d, -1.0, kInfinity, kInfinity, true).value};
    r.bv = bv_scan(f, opts.bv_mode, opts.bv_cap).value;
  }
  r.ratio = r.computed.l2_squared / (r.bv * r.computed.besov_neg);
  return r;
}

/// The default blow-up family (alpha, beta, j0, j1) = (1, 4^m, m, 2m); N_j = 2^{2m - j} is integral.
inline CounterexampleParams sweep_params(int m) {
  if (m < 0 || m > 30) throw std::out_of_range("sweep: m out of range");
  return {1.0, std::ldexp(1.0, 2 * m), m, 2 * m};
}

struct SweepRow {
  int m = 0;
  CounterexampleParams params;
  int level = 0;
  double l2_squared = 0.0;
  double besov_pos = 0.0;
  double besov_neg = 0.0;
  double bv = 0.0;
  double ratio = 0.0;
};

inline std::vector<SweepRow> blowup_sweep(int m_min, int m_max, const NormReportOptions& opts = {}) {
  if (m_min < 1 || m_max < m_min) throw std::invalid_argument("sweep: need 1 <= m_min <= m_max");
  if (opts.bv_mode == BvMode::exact && 2 * m_max + 1 > opts.bv_cap)
    throw std::invalid_argument("sweep: level 2 m_max + 1 = " + std::to_string(2 * m_max + 1) +
                                " exceeds the exhaustive BV resolution cap " + std::to_string(opts.bv_cap));
  std::vector<SweepRow> rows;
  for (int m = m_min; m <= m_max; ++m) {
    const auto p = sweep_params(m);
    const auto r = norm_report(p, opts);
    rows.push_back({m, p, r.level, r.computed.l2_squared, r.computed.besov_pos, r.computed.besov_neg, r.bv, r.ratio});
  }
  return rows;
}

}  // namespace z2lp
