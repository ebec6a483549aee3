#include "loccx/faithful.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loccx/error.hpp"

namespace loccx {

namespace {

constexpr double kRatioTieTolerance = 1e-12;

struct PaddedPair {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::size_t length = 0; // common padded length, >= alpha.size()
};

// Truncates both spectra to the effective dimension max(rank(alpha), rank(beta)).
PaddedPair effective_pair(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta) {
  if (beta.rank() == 0)
    throw ValidationError("target spectrum is all zero");
  const auto [a, b] = pad_to_common(alpha, beta);
  const std::size_t n = std::max(a.rank(), b.rank());
  PaddedPair out;
  out.length = a.size();
  out.alpha.assign(a.values().begin(), a.values().begin() + static_cast<std::ptrdiff_t>(n));
  out.beta.assign(b.values().begin(), b.values().begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

Staircase staircase_of(const PaddedPair& pair) {
  const std::size_t n = pair.alpha.size();
  Staircase stairs;
  stairs.dimension = n;

  std::vector<double> num(n), den(n);
  std::size_t end = n; // 0-based exclusive end of the remaining range
  while (end > 0) {
    double acc_a = 0.0, acc_b = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t l = end; l-- > 0;) {
      acc_a += pair.alpha[l];
      acc_b += pair.beta[l];
      num[l] = acc_a;
      den[l] = acc_b;
      if (acc_b > 0.0)
        best = std::min(best, acc_a / acc_b);
    }
    const double cutoff = best + kRatioTieTolerance * std::max(1.0, std::abs(best));
    std::size_t chosen = end;
    for (std::size_t l = 0; l < end; ++l) {
      if (den[l] > 0.0 && num[l] / den[l] <= cutoff) {
        chosen = l;
        break;
      }
    }
    // den[0] > 0 whenever the range still contains a nonzero beta entry, and
    // beta_1 > 0 guarantees that for every range that reaches index 1.
    if (chosen == end)
      throw ValidationError("staircase construction found no admissible index");
    stairs.segments.push_back({chosen + 1, num[chosen] / den[chosen], num[chosen], den[chosen]});
    end = chosen;
  }
  return stairs;
}

std::vector<double> scaled_target(const PaddedPair& pair, const Staircase& stairs) {
  std::vector<double> gamma(pair.length, 0.0);
  std::size_t end = stairs.dimension;
  for (const auto& seg : stairs.segments) {
    for (std::size_t i = seg.first - 1; i < end; ++i)
      gamma[i] = seg.ratio * pair.beta[i];
    end = seg.first - 1;
  }
  return gamma;
}

} // namespace

Staircase build_staircase(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta) {
  return staircase_of(effective_pair(alpha, beta));
}

SchmidtSpectrum optimal_state(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta) {
  const PaddedPair pair = effective_pair(alpha, beta);
  return SchmidtSpectrum(scaled_target(pair, staircase_of(pair)));
}

TransformReport optimal_fidelity(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta) {
  const PaddedPair pair = effective_pair(alpha, beta);
  TransformReport report;
  report.staircase = staircase_of(pair);
  report.xi = SchmidtSpectrum(scaled_target(pair, report.staircase));
  report.deterministic = majorizes(alpha, beta).deterministic;
  if (report.deterministic) {
    report.f_opt = 1.0;
  } else {
    double overlap = 0.0;
    for (const auto& seg : report.staircase.segments)
      overlap += std::sqrt(seg.source_mass * seg.target_mass);
    report.f_opt = std::clamp(overlap * overlap, 0.0, 1.0);
  }
  report.trace_distance = trace_distance_from_fidelity(report.f_opt);
  report.conclusive_p = conclusive_probability(alpha, beta);
  return report;
}

} // namespace loccx
