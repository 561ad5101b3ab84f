#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "z2lp/step_function.hpp"

namespace z2lp {

namespace detail {

template <class Scalar>
Scalar halve(const Scalar& x) {
  using std::ldexp;
  return ldexp(x, -1);
}

// Averages of f over the level-j cosets Q_{j,r}, r = 0 .. 2^j - 1.
template <class Scalar>
std::vector<Scalar> coset_averages(const BasicStepFunction<Scalar>& f, int j) {
  using std::ldexp;
  std::vector<Scalar> sums(level_size(j));
  const std::uint64_t mask = sums.size() - 1;
  for (std::uint64_t k = 0; k < f.size(); ++k) sums[k & mask] += f[k];
  for (Scalar& s : sums) s = ldexp(s, j - f.level());
  return sums;
}

template <class Scalar>
BasicStepFunction<Scalar> expand(const std::vector<Scalar>& coarse, int level) {
  const std::uint64_t mask = coarse.size() - 1;
  std::vector<Scalar> out(level_size(level));
  for (std::uint64_t k = 0; k < out.size(); ++k) out[k] = coarse[k & mask];
  return {level, std::move(out)};
}

}  // namespace detail

/// Conditional expectation S_j f: the average of f on each coset Q_{j,k}.
template <class Scalar>
BasicStepFunction<Scalar> project(const BasicStepFunction<Scalar>& f, int j) {
  if (j < 0 || j > f.level()) throw std::out_of_range("z2lp: projection level must satisfy 0 <= j <= J");
  if (j == f.level()) return f;
  return detail::expand(detail::coset_averages(f, j), f.level());
}

/// Dyadic block Delta_j f = S_{j+1} f - S_j f, stored at the resolution of f.
template <class Scalar>
BasicStepFunction<Scalar> block(const BasicStepFunction<Scalar>& f, int j) {
  if (j < 0 || j >= f.level()) throw std::out_of_range("z2lp: block index must satisfy 0 <= j < J");
  const std::vector<Scalar> fine = detail::coset_averages(f, j + 1);
  const std::uint64_t half = detail::level_size(j);
  std::vector<Scalar> out(f.size());
  const std::uint64_t mask = fine.size() - 1;
  for (std::uint64_t k = 0; k < f.size(); ++k) {
    const std::uint64_t r = k & mask;
    const std::uint64_t parent = r & (half - 1);
    // S_j is the mean of the two children of Q_{j,parent}.
    const Scalar coarse = detail::halve(fine[parent] + fine[parent + half]);
    out[k] = fine[r] - coarse;
  }
  return {f.level(), std::move(out)};
}

/// S_0 f plus the J non-trivial blocks of a level-J function; blocks beyond J-1 vanish.
template <class Scalar>
struct BasicLPDecomposition {
  int level = 0;
  Scalar mean{};
  std::vector<BasicStepFunction<Scalar>> blocks;
};

using LPDecomposition = BasicLPDecomposition<double>;

template <class Scalar>
BasicLPDecomposition<Scalar> decompose(const BasicStepFunction<Scalar>& f) {
  // levels[j] holds the 2^j coset averages of f at level j, built coarse-ward by pairing siblings.
  std::vector<std::vector<Scalar>> levels(static_cast<std::size_t>(f.level()) + 1);
  levels.back().assign(f.samples().begin(), f.samples().end());
  for (int j = f.level() - 1; j >= 0; --j) {
    const auto& fine = levels[static_cast<std::size_t>(j) + 1];
    auto& coarse = levels[static_cast<std::size_t>(j)];
    const std::uint64_t half = detail::level_size(j);
    coarse.resize(half);
    for (std::uint64_t r = 0; r < half; ++r) coarse[r] = detail::halve(fine[r] + fine[r + half]);
  }

  BasicLPDecomposition<Scalar> d;
  d.level = f.level();
  d.mean = levels[0][0];
  d.blocks.reserve(static_cast<std::size_t>(f.level()));
  for (int j = 0; j < f.level(); ++j) {
    const auto& fine = levels[static_cast<std::size_t>(j) + 1];
    const auto& coarse = levels[static_cast<std::size_t>(j)];
    const std::uint64_t fine_mask = fine.size() - 1;
    const std::uint64_t coarse_mask = coarse.size() - 1;
    std::vector<Scalar> out(f.size());
    for (std::uint64_t k = 0; k < f.size(); ++k) out[k] = fine[k & fine_mask] - coarse[k & coarse_mask];
    d.blocks.emplace_back(f.level(), std::move(out));
  }
  return d;
}

template <class Scalar>
BasicStepFunction<Scalar> reconstruct(const BasicLPDecomposition<Scalar>& d) {
  std::vector<Scalar> out(detail::level_size(d.level), d.mean);
  for (const auto& b : d.blocks) {
    if (b.level() != d.level) throw std::invalid_argument("z2lp: block resolution differs from decomposition level");
    for (std::uint64_t k = 0; k < out.size(); ++k) out[k] += b[k];
  }
  return {d.level, std::move(out)};
}

/// Checks S_j f(x) = (S_{j+1} f(x) + S_{j+1} f(x + 2^j)) / 2 at every sample,
/// to `rel_tol` relative to the sup norm of f (exact comparison for Dyadic).
template <class Scalar>
bool sibling_identity_check(const BasicStepFunction<Scalar>& f, int j, double rel_tol = 1e-12) {
  if (j < 0 || j >= f.level()) throw std::out_of_range("z2lp: sibling identity needs 0 <= j < J");
  const auto coarse = project(f, j);
  const auto fine = project(f, j + 1);
  const auto shifted = translate(fine, TruncatedDyadic{detail::level_size(j), f.level()});
  const double tol = rel_tol * to_double(linf_norm(f));
  for (std::uint64_t k = 0; k < f.size(); ++k) {
    const Scalar rhs = detail::halve(fine[k] + shifted[k]);
    if (std::abs(to_double(coarse[k] - rhs)) > tol) return false;
    if constexpr (!std::is_same_v<Scalar, double>) {
      if (coarse[k] != rhs) return false;
    }
  }
  return true;
}

template <class Scalar>
struct ParsevalReport {
  Scalar lhs{};  // ||f||_2^2
  Scalar rhs{};  // mean^2 + sum_j ||Delta_j f||_2^2
};

template <class Scalar>
ParsevalReport<Scalar> parseval_check(const BasicStepFunction<Scalar>& f) {
  const auto d = decompose(f);
  ParsevalReport<Scalar> r;
  r.lhs = l2_norm_squared(f);
  r.rhs = d.mean * d.mean;
  for (const auto& b : d.blocks) r.rhs += l2_norm_squared(b);
  return r;
}

}  // namespace z2lp
