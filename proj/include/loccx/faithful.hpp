#pragma once

#include <cstddef>
#include <vector>

#include "loccx/majorization.hpp"
#include "loccx/spectra.hpp"

namespace loccx {

/// One step of the staircase. Indices are 1-based, matching the usual
/// labelling of Schmidt coefficients; the segment covers [first, end) where
/// `end` is the `first` of the previous segment (n + 1 for the first one).
struct StaircaseSegment {
  std::size_t first = 1;   ///< l_j
  double ratio = 0.0;      ///< r_j = source_mass / target_mass
  double source_mass = 0.0; ///< A_j, weight of alpha on the segment
  double target_mass = 0.0; ///< B_j, weight of beta on the segment
};

/// Segments ordered as constructed: the first one reaches the last index n and
/// the final one starts at index 1. Ratios increase strictly along the list.
struct Staircase {
  std::vector<StaircaseSegment> segments;
  /// Effective dimension: the larger Schmidt rank of alpha and beta.
  std::size_t dimension = 0;
};

/// Everything known about the most faithful deterministic conversion alpha -> beta.
struct TransformReport {
  double f_opt = 0.0;
  SchmidtSpectrum xi = SchmidtSpectrum::product();
  double trace_distance = 0.0;
  double conclusive_p = 0.0;
  bool deterministic = false;
  Staircase staircase;
};

/// Builds the staircase by repeated minimization of tail-sum ratios.
///
/// The first segment starts at the smallest l minimizing E_l(alpha) / E_l(beta)
/// over [1, n]. Each following one starts at the smallest l minimizing
/// (E_l(alpha) - E_{l_j}(alpha)) / (E_l(beta) - E_{l_j}(beta)) over [1, l_j - 1].
/// Indices with a vanishing denominator are skipped. Ratios within a relative
/// 1e-12 of the minimum count as ties and resolve to the smaller index.
Staircase build_staircase(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta);

/// The closest state to beta reachable from alpha with certainty:
/// gamma_i = r_j beta_i on segment j. Padded to the common length of the inputs.
SchmidtSpectrum optimal_state(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta);

/// Optimal fidelity F = (sum_j sqrt(A_j B_j))^2 together with the target state,
/// the staircase and the conclusive probability. When alpha is majorized by
/// beta the fidelity is exactly 1.
TransformReport optimal_fidelity(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta);

} // namespace loccx
