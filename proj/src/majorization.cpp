#include "loccx/majorization.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "loccx/error.hpp"

namespace loccx {

ConvertibilityVerdict majorizes(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta) {
  const auto [a, b] = pad_to_common(alpha, beta);
  ConvertibilityVerdict verdict;
  verdict.margin = std::numeric_limits<double>::infinity();
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sum_a += a[k];
    sum_b += b[k];
    const double gap = sum_b - sum_a;
    verdict.margin = std::min(verdict.margin, gap);
    if (gap < -kPartialSumTolerance && !verdict.failing_index)
      verdict.failing_index = k + 1;
  }
  verdict.deterministic = verdict.margin >= -kPartialSumTolerance;
  return verdict;
}

bool weak_submajorizes(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw RangeError("weight p = " + std::to_string(p) + " outside [0, 1]");
  const auto [a, b] = pad_to_common(alpha, beta);
  const MonotoneProfile ea = monotones(a);
  const MonotoneProfile eb = monotones(b);
  // The slack scales with the tail so that it shifts the accepted weight by at
  // most kPartialSumTolerance, however small the tail.
  for (std::size_t l = 0; l < ea.size(); ++l)
    if (ea[l] < (p - kPartialSumTolerance) * eb[l])
      return false;
  return true;
}

double conclusive_probability(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta) {
  const auto [a, b] = pad_to_common(alpha, beta);
  const MonotoneProfile ea = monotones(a);
  const MonotoneProfile eb = monotones(b);
  // l = 1 contributes 1/1 by normalization; skip it so rounding in the
  // accumulated tail cannot pull an exact conversion just below 1.
  double p = 1.0;
  for (std::size_t l = 1; l < ea.size(); ++l) {
    if (eb[l] <= 0.0)
      continue;
    if (ea[l] <= 0.0)
      return 0.0;
    p = std::min(p, ea[l] / eb[l]);
  }
  return std::clamp(p, 0.0, 1.0);
}

} // namespace loccx
