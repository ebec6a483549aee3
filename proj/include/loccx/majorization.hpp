#pragma once

#include <cstddef>
#include <optional>

#include "loccx/spectra.hpp"

namespace loccx {

/// Slack on every partial-sum comparison. Spectra coming out of an SVD carry
/// noise around 1e-13, and the k = n condition is an equality.
inline constexpr double kPartialSumTolerance = 1e-10;

struct ConvertibilityVerdict {
  /// alpha -> beta is possible with certainty by LOCC.
  bool deterministic = false;
  /// First k (1-based) whose leading partial sum of alpha exceeds that of beta.
  std::optional<std::size_t> failing_index;
  /// min_k (sum_{i<=k} beta_i - sum_{i<=k} alpha_i).
  double margin = 0.0;
};

/// Checks alpha < beta (alpha is majorized by beta), the condition for
/// deterministic conversion of a state with spectrum alpha into one with beta.
ConvertibilityVerdict majorizes(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta);

/// True iff the tail sums of alpha dominate p times those of beta,
/// E_l(alpha) >= p E_l(beta) for every l. The largest such p is the optimal
/// conclusive conversion probability. Comparisons use (p - 1e-10) in place of p.
/// Throws RangeError for p outside [0, 1].
bool weak_submajorizes(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta, double p);

/// Maximal probability of converting alpha into beta exactly:
/// min over l of E_l(alpha) / E_l(beta).
///
/// Indices with E_l(beta) = 0 impose nothing. An index with E_l(beta) > 0 but
/// E_l(alpha) = 0 means beta has more nonzero coefficients and the answer is 0.
double conclusive_probability(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta);

} // namespace loccx
