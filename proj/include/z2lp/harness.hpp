#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "z2lp/littlewood_paley.hpp"
#include "z2lp/norms.hpp"
#include "z2lp/step_function.hpp"

namespace z2lp {

enum class ReportStatus { pass, fail, vacuous };

inline std::string_view to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::pass: return "pass";
    case ReportStatus::fail: return "fail";
    case ReportStatus::vacuous: return "vacuous";
  }
  return "unknown";
}

/// lhs vs rhs of one inequality instance. `bound` is the constant C when one is
/// known; the status is `fail` only when lhs > C rhs.
struct InequalityReport {
  std::string spec;
  std::string function;
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<double> ratio;
  std::optional<double> bound;
  ReportStatus status = ReportStatus::pass;
  std::map<std::string, double> details;
  std::vector<std::string> notes;
};

namespace detail {

inline void finish_report(InequalityReport& r, double rel_slack = 1e-12) {
  if (r.lhs == 0.0 && r.rhs == 0.0) {
    r.ratio.reset();
    r.status = ReportStatus::vacuous;
    return;
  }
  if (r.rhs > 0.0) r.ratio = r.lhs / r.rhs;
  if (r.bound.has_value() && r.lhs > *r.bound * r.rhs * (1.0 + rel_slack))
    r.status = ReportStatus::fail;
  else
    r.status = ReportStatus::pass;
}

inline std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sequence interpolation
// ---------------------------------------------------------------------------

/// ||2^{js} a||_{l^r} <= C ||2^{j s1} a||_{l^{r1}}^theta ||2^{-j beta} a||_{l^{r2}}^{1-theta},
/// with s = theta s1 - (1 - theta) beta.
struct InterpolationSpec {
  double s1 = 1.0;
  double beta = 1.0;
  double theta = 0.5;
  double r = 2.0;
  double r1 = 2.0;
  double r2 = kInfinity;

  double s() const { return theta * s1 - (1.0 - theta) * beta; }

  void validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("interpolation: beta must be positive");
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("interpolation: theta must lie in (0, 1)");
    if (!std::isfinite(s1)) throw std::invalid_argument("interpolation: s1 must be finite");
    if (!(-beta < s() && s() < s1)) throw std::invalid_argument("interpolation: need -beta < s < s1");
    for (double e : {r, r1, r2})
      if (std::isnan(e) || e < 1.0) throw std::invalid_argument("interpolation: exponents must lie in [1, inf]");
  }

  std::string describe() const {
    return "s1=" + detail::fmt_num(s1) + " beta=" + detail::fmt_num(beta) + " theta=" + detail::fmt_num(theta) +
           " s=" + detail::fmt_num(s()) + " r=" + detail::fmt_num(r) + " r1=" + detail::fmt_num(r1) +
           " r2=" + detail::fmt_num(r2);
  }
};

/**
 * Explicit admissible constant from the cut-index argument.
 *
 * With A = ||2^{j s1} a||_{r1}, B = sup_j 2^{-j beta}|a_j| <= ||.||_{r2},
 * a = s + beta and b = s1 - s, split the sum at N = floor(t) where
 * 2^{t (s1 + beta)} = A / B:
 *   head (j <= N): sum 2^{j a r} B^r <= B^r 2^{N a r} / (1 - 2^{-a r})
 *   tail (j > N):  <= A^r 2^{-(N+1) b r} G, G = 1 if r >= r1, else the Holder
 *                  factor (1 - 2^{-b r r1/(r1-r)})^{-(r1-r)/r1}.
 * Both pieces are bounded by (A^theta B^{1-theta})^r, so C^r = head + G.
 * For r = inf the two sups meet at the cut and C = 1.
 */
inline double interpolation_constant(const InterpolationSpec& spec) {
  spec.validate();
  if (std::isinf(spec.r)) return 1.0;
  const double a = spec.s() + spec.beta;
  const double b = spec.s1 - spec.s();
  const double r = spec.r;
  const double head = 1.0 / (1.0 - std::exp2(-a * r));
  double tail = 1.0;
  if (r < spec.r1) {
    if (std::isinf(spec.r1)) {
      tail = 1.0 / (1.0 - std::exp2(-b * r));
    } else {
      const double conj = spec.r1 / (spec.r1 - r);
      tail = std::pow(1.0 - std::exp2(-b * r * conj), -1.0 / conj);
    }
  }
  return std::pow(head + tail, 1.0 / r);
}

namespace detail {

inline double weighted_lr(std::span<const double> a, double weight_exponent, double r) {
  std::vector<double> terms(a.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    terms[j] = std::exp2(static_cast<double>(j) * weight_exponent) * std::abs(a[j]);
  return lp_of_sequence(terms, r);
}

}  // namespace detail

inline InequalityReport sequence_interpolation_check(std::span<const double> a, const InterpolationSpec& spec) {
  spec.validate();
  for (double v : a)
    if (!std::isfinite(v)) throw std::invalid_argument("interpolation: sequence entries must be finite");
  InequalityReport r;
  r.spec = "sequence-interpolation " + spec.describe();
  r.function = "sequence of length " + std::to_string(a.size());
  r.lhs = detail::weighted_lr(a, spec.s(), spec.r);
  const double strong = detail::weighted_lr(a, spec.s1, spec.r1);
  const double weak = detail::weighted_lr(a, -spec.beta, spec.r2);
  r.rhs = std::pow(strong, spec.theta) * std::pow(weak, 1.0 - spec.theta);
  r.bound = interpolation_constant(spec);
  r.details["strong_norm"] = strong;
  r.details["weak_norm"] = weak;
  detail::finish_report(r);
  return r;
}

// ---------------------------------------------------------------------------
// Function-space inequalities
// ---------------------------------------------------------------------------

/// ||f||_{W^{s,q}} against ||f||_{W^{s1,p}}^theta ||f||_{B^{-beta,inf}_inf}^{1-theta}
/// (all homogeneous), theta = p / q, s = theta s1 - (1 - theta) beta.
inline InequalityReport improved_sobolev_report(const StepFunction& f, double p, double q, double s1, double beta) {
  if (!(p > 1.0 && p < q && std::isfinite(q)))
    throw std::invalid_argument("improved sobolev: need 1 < p < q < inf");
  if (!(beta > 0.0)) throw std::invalid_argument("improved sobolev: beta must be positive");
  const double theta = p / q;
  const double s = theta * s1 - (1.0 - theta) * beta;
  if (!(-beta < s && s < s1)) throw std::invalid_argument("improved sobolev: need -beta < s < s1");

  const auto d = decompose(f);
  InequalityReport r;
  r.spec = "improved-sobolev p=" + detail::fmt_num(p) + " q=" + detail::fmt_num(q) + " s1=" + detail::fmt_num(s1) +
           " beta=" + detail::fmt_num(beta) + " theta=" + detail::fmt_num(theta) + " s=" + detail::fmt_num(s);
  r.function = "step function at level " + std::to_string(f.level());
  r.lhs = sobolev_norm(d, s, q, true).value;
  const double strong = sobolev_norm(d, s1, p, true).value;
  const double weak = besov_norm(d, -beta, kInfinity, kInfinity, true).value;
  r.rhs = std::pow(strong, theta) * std::pow(weak, 1.0 - theta);
  r.details["sobolev_s1_p"] = strong;
  r.details["besov_neg_beta"] = weak;
  detail::finish_report(r);
  return r;
}

/// ||f||_2^2 against ||f||_BV ||f||_{B^{-1,inf}_inf}; no constant exists, so this only reports.
inline InequalityReport bv_inequality_report(const StepFunction& f, int cap = kDefaultExhaustiveLevelCap) {
  InequalityReport r;
  r.spec = "bv-inequality";
  r.function = "step function at level " + std::to_string(f.level());
  const double bv = bv_seminorm(f, BvMode::exact, cap).value;
  const double besov_neg = besov_norm(f, -1.0, kInfinity, kInfinity, true).value;
  r.details["bv"] = bv;
  r.details["besov_neg"] = besov_neg;
  r.lhs = l2_norm_squared(f);
  r.rhs = bv * besov_neg;
  if (bv == 0.0 && besov_neg == 0.0) {
    // Constant function: the homogeneous seminorms do not see it.
    r.status = ReportStatus::vacuous;
    r.notes.emplace_back("constant function");
    return r;
  }
  detail::finish_report(r);
  return r;
}

// ---------------------------------------------------------------------------
// Random corpora
// ---------------------------------------------------------------------------

enum class CorpusModel { uniform_samples, random_blocks, sparse_blocks };

inline std::string_view to_string(CorpusModel m) {
  switch (m) {
    case CorpusModel::uniform_samples: return "uniform_samples";
    case CorpusModel::random_blocks: return "random_blocks";
    case CorpusModel::sparse_blocks: return "sparse_blocks";
  }
  return "unknown";
}

inline std::optional<CorpusModel> parse_corpus_model(std::string_view name) {
  for (CorpusModel m : {CorpusModel::uniform_samples, CorpusModel::random_blocks, CorpusModel::sparse_blocks})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

inline constexpr int kMaxCorpusLevel = 20;

namespace detail {

// Uniform in [lo, hi) from the top 53 bits; identical on every standard library.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * std::ldexp(static_cast<double>(rng() >> 11), -53);
}

inline void add_random_block(std::vector<double>& samples, int j, double amplitude, std::mt19937_64& rng) {
  const std::uint64_t half = std::uint64_t{1} << j;
  std::vector<double> v(half);
  for (double& x : v) x = amplitude * uniform(rng, -1.0, 1.0);
  const std::uint64_t mask = (half << 1) - 1;
  for (std::uint64_t k = 0; k < samples.size(); ++k) {
    const std::uint64_t r = k & mask;
    samples[k] += r < half ? v[r] : -v[r - half];
  }
}

}  // namespace detail

/**
 * Deterministic corpus of `count` functions at level J.
 *
 * uniform_samples: i.i.d. samples in [-1, 1).
 * random_blocks:   every block j filled with sibling-antisymmetric values of
 *                  size 2^{-j d}, d drawn in [0, 2) per function.
 * sparse_blocks:   one to three distinct blocks with values in [-1, 1).
 * The block models also draw a random mean; zero_mean subtracts the integral.
 */
inline std::vector<StepFunction> random_corpus(int level, int count, std::uint64_t seed,
                                               CorpusModel model = CorpusModel::uniform_samples,
                                               bool zero_mean = true) {
  if (level < 0 || level > kMaxCorpusLevel)
    throw std::invalid_argument("corpus: level exceeds the corpus cap " + std::to_string(kMaxCorpusLevel));
  if (count < 1) throw std::invalid_argument("corpus: count must be >= 1");
  std::mt19937_64 rng(seed);
  const std::uint64_t n = std::uint64_t{1} << level;
  std::vector<StepFunction> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<double> s(n, 0.0);
    switch (model) {
      case CorpusModel::uniform_samples:
        for (double& x : s) x = detail::uniform(rng, -1.0, 1.0);
        break;
      case CorpusModel::random_blocks: {
        const double decay = detail::uniform(rng, 0.0, 2.0);
        const double mean = detail::uniform(rng, -1.0, 1.0);
        for (double& x : s) x = mean;
        for (int j = 0; j < level; ++j) detail::add_random_block(s, j, std::exp2(-decay * j), rng);
        break;
      }
      case CorpusModel::sparse_blocks: {
        const double mean = detail::uniform(rng, -1.0, 1.0);
        for (double& x : s) x = mean;
        std::vector<int> levels(static_cast<std::size_t>(level));
        for (int j = 0; j < level; ++j) levels[static_cast<std::size_t>(j)] = j;
        const int picks = std::min(level, 1 + static_cast<int>(rng() % 3));
        for (int t = 0; t < picks; ++t) {
          // Partial Fisher-Yates: levels[t] becomes a fresh distinct pick.
          const auto u = static_cast<std::size_t>(t) + static_cast<std::size_t>(rng() % (level - t));
          std::swap(levels[static_cast<std::size_t>(t)], levels[u]);
          detail::add_random_block(s, levels[static_cast<std::size_t>(t)], 1.0, rng);
        }
        break;
      }
    }
    StepFunction f{level, std::move(s)};
    if (zero_mean) {
      const double m = integral(f);
      std::vector<double> z(f.samples().begin(), f.samples().end());
      for (double& x : z) x -= m;
      f = StepFunction{level, std::move(z)};
    }
    out.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Corpus-level checks
// ---------------------------------------------------------------------------

struct SobolevStabilityLevel {
  int level = 0;
  double max_ratio = 0.0;
  int vacuous = 0;
};

struct SobolevStability {
  std::vector<SobolevStabilityLevel> levels;
  double growth = 0.0;  // max_ratio(last) / max_ratio(first) - 1
  bool stable(double limit = 0.25) const { return growth < limit; }
};

/// Max improved-Sobolev ratio per level over a seeded corpus; a J-independent
/// constant means the maximum should not keep growing with resolution.
inline SobolevStability sobolev_corpus_stability(std::span<const int> levels, int count, std::uint64_t seed,
                                                 CorpusModel model, double p, double q, double s1, double beta) {
  if (levels.empty()) throw std::invalid_argument("sobolev stability: no levels given");
  SobolevStability out;
  for (int level : levels) {
    SobolevStabilityLevel row{level, 0.0, 0};
    for (const auto& f : random_corpus(level, count, seed, model)) {
      const auto r = improved_sobolev_report(f, p, q, s1, beta);
      if (r.status == ReportStatus::vacuous) {
        ++row.vacuous;
        continue;
      }
      row.max_ratio = std::max(row.max_ratio, r.ratio.value_or(0.0));
    }
    out.levels.push_back(row);
  }
  const double first = out.levels.front().max_ratio;
  out.growth = first > 0.0 ? out.levels.back().max_ratio / first - 1.0 : 0.0;
  return out;
}

struct BvCorpusCheck {
  int level = 0;
  int count = 0;
  int constant = 0;
  double min_ratio = kInfinity;
  double max_ratio = 0.0;
  int violations = 0;  // ratios outside [2, 4]
};

inline BvCorpusCheck bv_corpus_check(std::span<const StepFunction> corpus, double rel_tol = 1e-12,
                                     int cap = kDefaultExhaustiveLevelCap) {
  BvCorpusCheck out;
  for (const auto& f : corpus) {
    out.level = f.level();
    ++out.count;
    const auto c = bv_besov_comparison(f, cap);
    if (!c.ratio) {
      ++out.constant;
      continue;
    }
    out.min_ratio = std::min(out.min_ratio, *c.ratio);
    out.max_ratio = std::max(out.max_ratio, *c.ratio);
    if (*c.ratio < 2.0 * (1.0 - rel_tol) || *c.ratio > 4.0 * (1.0 + rel_tol)) ++out.violations;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random sequences for the interpolation lemma
// ---------------------------------------------------------------------------

/// Sequences of length 1 .. max_length; entries are zero with probability 1/5,
/// otherwise +-u 2^e with u in [0, 1) and e in [-10, 10).
inline std::vector<std::vector<double>> random_sequences(int count, std::uint64_t seed, int max_length = 32) {
  if (count < 1) throw std::invalid_argument("sequences: count must be >= 1");
  if (max_length < 1) throw std::invalid_argument("sequences: max_length must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const auto n = 1 + static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(max_length));
    std::vector<double> a(n, 0.0);
    for (double& x : a) {
      if (rng() % 5 == 0) continue;
      x = detail::uniform(rng, -1.0, 1.0) * std::exp2(detail::uniform(rng, -10.0, 10.0));
    }
    out.push_back(std::move(a));
  }
  return out;
}

struct InterpolationCorpusCheck {
  int count = 0;
  int vacuous = 0;
  int violations = 0;
  double max_ratio = 0.0;
  double bound = 0.0;
};

inline InterpolationCorpusCheck interpolation_corpus_check(const std::vector<std::vector<double>>& sequences,
                                                           const InterpolationSpec& spec) {
  InterpolationCorpusCheck out;
  out.bound = interpolation_constant(spec);
  for (const auto& a : sequences) {
    const auto r = sequence_interpolation_check(a, spec);
    ++out.count;
    if (r.status == ReportStatus::vacuous) {
      ++out.vacuous;
      continue;
    }
    if (r.status == ReportStatus::fail) ++out.violations;
    out.max_ratio = std::max(out.max_ratio, r.ratio.value_or(0.0));
  }
  return out;
}

}  // namespace z2lp
