#include "loccx/applications.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "loccx/error.hpp"
#include "loccx/majorization.hpp"

namespace loccx {

namespace {

std::size_t target_dimension(const SchmidtSpectrum& alpha, std::optional<std::size_t> n) {
  const std::size_t dim = n.value_or(alpha.size());
  if (dim < alpha.rank())
    throw DimensionError("n-state dimension " + std::to_string(dim) +
                         " is below the Schmidt rank " + std::to_string(alpha.rank()));
  return dim;
}

double root_sum_squared(const SchmidtSpectrum& alpha) {
  double s = 0.0;
  for (double p : alpha.probs()) s += std::sqrt(p);
  return s * s;
}

} // namespace

double concentration_fidelity(const SchmidtSpectrum& alpha, std::optional<std::size_t> n) {
  const auto dim = static_cast<double>(target_dimension(alpha, n));
  return std::min(1.0, root_sum_squared(alpha) / dim);
}

double robustness_of_entanglement(const SchmidtSpectrum& alpha, std::optional<std::size_t> n) {
  const auto dim = static_cast<double>(target_dimension(alpha, n));
  return std::max(0.0, dim * concentration_fidelity(alpha, n) - 1.0);
}

double teleportation_fidelity(const SchmidtSpectrum& alpha, std::optional<std::size_t> n) {
  const auto dim = static_cast<double>(target_dimension(alpha, n));
  return (dim * concentration_fidelity(alpha, n) + 1.0) / (dim + 1.0);
}

DilutionResult dilution_fidelity(std::size_t m, const SchmidtSpectrum& beta) {
  if (m == 0)
    throw RangeError("dilution needs an m-state with m >= 1");
  if (m >= beta.rank())
    return {1.0, beta};
  double kept = 0.0;
  for (std::size_t i = 0; i < m; ++i) kept += beta[i];
  std::vector<double> xi(beta.size(), 0.0);
  for (std::size_t i = 0; i < m; ++i) xi[i] = beta[i] / kept;
  return {kept, SchmidtSpectrum(std::move(xi))};
}

CatalysisReport catalysis_check(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta,
                                const SchmidtSpectrum& eta) {
  const SchmidtSpectrum alpha_cat = tensor(alpha, eta);
  const SchmidtSpectrum beta_cat = tensor(beta, eta);
  CatalysisReport r;
  r.convertible_bare = majorizes(alpha, beta).deterministic;
  r.convertible_with_catalyst = majorizes(alpha_cat, beta_cat).deterministic;
  r.trace_distance_bare = optimal_fidelity(alpha, beta).trace_distance;
  r.trace_distance_catalyzed = optimal_fidelity(alpha_cat, beta_cat).trace_distance;
  r.delta_t = r.trace_distance_bare - r.trace_distance_catalyzed;
  r.noise_threshold = r.delta_t;
  return r;
}

RobustnessInterval robustness_interval(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta,
                                       double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 2.0))
    throw RangeError("noise distance " + std::to_string(epsilon) + " outside [0, 2]");
  const double t = optimal_fidelity(alpha, beta).trace_distance;
  return {std::max(0.0, t - epsilon), std::min(2.0, t + epsilon)};
}

bool catalysis_survives_noise(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta,
                              const SchmidtSpectrum& eta, double epsilon) {
  const RobustnessInterval noisy = robustness_interval(tensor(alpha, eta), tensor(beta, eta), epsilon);
  return noisy.upper < optimal_fidelity(alpha, beta).trace_distance;
}

double nonlocal_fidelity(const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
  return std::min(optimal_fidelity(a, b).f_opt, optimal_fidelity(b, a).f_opt);
}

double nonlocal_trace_distance(const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
  return trace_distance_from_fidelity(nonlocal_fidelity(a, b));
}

} // namespace loccx
