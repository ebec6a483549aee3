#pragma once

#include <cstddef>
#include <optional>

#include "loccx/faithful.hpp"
#include "loccx/spectra.hpp"

namespace loccx {

// Concentration and teleportation. `n` is the dimension of the target
// maximally entangled state and defaults to the length of alpha; it must be at
// least the Schmidt rank of alpha (DimensionError otherwise).

/// Best fidelity with the n-state: (sum_i sqrt(alpha_i))^2 / n.
double concentration_fidelity(const SchmidtSpectrum& alpha, std::optional<std::size_t> n = {});

/// Robustness of entanglement of a pure state, n F_max - 1.
double robustness_of_entanglement(const SchmidtSpectrum& alpha,
                                  std::optional<std::size_t> n = {});

/// Optimal teleportation fidelity through the state, (n F_max + 1) / (n + 1).
double teleportation_fidelity(const SchmidtSpectrum& alpha, std::optional<std::size_t> n = {});

struct DilutionResult {
  double fidelity = 0.0;
  SchmidtSpectrum xi = SchmidtSpectrum::product();
};

/// Most faithful approximation of beta from an m-state: the normalized
/// projection of beta onto its m largest coefficients. Throws RangeError if m == 0.
DilutionResult dilution_fidelity(std::size_t m, const SchmidtSpectrum& beta);

struct CatalysisReport {
  bool convertible_bare = false;
  bool convertible_with_catalyst = false;
  /// T(psi -> phi) - T(psi (x) eta -> phi (x) eta).
  double delta_t = 0.0;
  /// Largest noise distance T(rho, psi (x) eta) that still leaves a catalytic gain.
  double noise_threshold = 0.0;
  double trace_distance_bare = 0.0;
  double trace_distance_catalyzed = 0.0;
};

CatalysisReport catalysis_check(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta,
                                const SchmidtSpectrum& eta);

/// Bounds on T(rho -> phi) for a noisy input rho at trace distance epsilon from psi.
struct RobustnessInterval {
  double lower = 0.0;
  double upper = 0.0;
};

/// [max(0, T - epsilon), min(2, T + epsilon)] with T the optimal trace distance
/// of alpha -> beta. Throws RangeError for epsilon outside [0, 2].
RobustnessInterval robustness_interval(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta,
                                       double epsilon);

/// True when noise of size epsilon on psi (x) eta provably keeps the
/// catalyzed conversion strictly better than the bare one, i.e. the upper
/// bound of the catalyzed robustness interval lies below T(psi -> phi).
bool catalysis_survives_noise(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta,
                              const SchmidtSpectrum& eta, double epsilon);

/// min(F(a -> b), F(b -> a)).
double nonlocal_fidelity(const SchmidtSpectrum& a, const SchmidtSpectrum& b);

/// 2 sqrt(1 - F_nl); a metric on Schmidt spectra.
double nonlocal_trace_distance(const SchmidtSpectrum& a, const SchmidtSpectrum& b);

} // namespace loccx
