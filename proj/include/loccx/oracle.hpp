#pragma once

// Brute-force checks that do not go through the staircase construction.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "loccx/spectra.hpp"

namespace loccx::oracle {

inline constexpr std::uint64_t kDefaultGridBudget = 10'000'000;

/// Simplex grid with spacing `step`, which is rounded so that 1/step is an
/// integer. A dimension of 0 means "common length of the inputs".
struct GridSpec {
  std::size_t dimension = 0;
  double step = 0.01;
  std::uint64_t budget = kDefaultGridBudget;
};

/// Number of nonincreasing grid points in n dimensions with 1/step = parts,
/// i.e. partitions of `parts` into at most n pieces. Saturates at UINT64_MAX.
std::uint64_t sorted_grid_size(std::size_t n, std::uint64_t parts);

/// max (sum_i sqrt(g_i beta_i))^2 over sorted grid points g with alpha < g.
/// A lower bound on the optimal fidelity that tightens as the step shrinks.
/// Throws ResourceError when the grid exceeds the budget and RangeError for a
/// step outside (0, 1].
double grid_max_fidelity(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta,
                         const GridSpec& grid);

struct UnitaryPair {
  Eigen::MatrixXcd u;
  Eigen::MatrixXcd v;
};

bool is_unitary(const Eigen::MatrixXcd& m, double tol = 1e-10);

/// QR of a complex Gaussian matrix with the phases of R's diagonal removed.
Eigen::MatrixXcd random_unitary(std::size_t n, std::mt19937_64& rng);

/// |<tau| (U (x) V) |omega>|^2.
double local_unitary_overlap(const BipartiteState& tau, const BipartiteState& omega,
                             const UnitaryPair& pair);

/// Local unitaries that rotate the Schmidt basis of omega onto that of tau,
/// with coefficients matched in decreasing order.
UnitaryPair aligning_pair(const BipartiteState& tau, const BipartiteState& omega);

struct OverlapSampling {
  std::size_t trials = 10'000;
  std::uint64_t seed = 0;
  /// Also evaluate the aligning pair (the identity pair is always evaluated).
  bool inject_aligning = false;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Largest overlap over `trials` random unitary pairs. Trials are split into
/// fixed-size chunks whose generators are seeded from (seed, chunk index), so
/// the result does not depend on the thread count.
double sample_unitary_overlap(const BipartiteState& tau, const BipartiteState& omega,
                              const OverlapSampling& opts);

/// Outcome states gamma_k with probabilities p_k of a deterministic LOCC branch.
struct Ensemble {
  std::vector<double> weights;
  std::vector<SchmidtSpectrum> outcomes;
};

/// sum_k p_k E_l(gamma_k) <= E_l(alpha) for every l: the monotones do not
/// increase on average.
bool is_feasible(const Ensemble& ensemble, const SchmidtSpectrum& alpha, double tol = 1e-12);

/// sum_k p_k (sum_i sqrt(gamma_k,i beta_i))^2.
double ensemble_fidelity(const Ensemble& ensemble, const SchmidtSpectrum& beta);

/// Draws 1 to max_branches random outcomes and pulls them toward the product
/// state just enough for the average monotones to fit under alpha's.
Ensemble random_feasible_ensemble(const SchmidtSpectrum& alpha, std::mt19937_64& rng,
                                  std::size_t max_branches = 4);

/// Average fidelities to beta of `count` feasible ensembles. Entry 0 is always
/// the do-nothing ensemble {1, alpha}.
std::vector<double> sample_feasible_ensembles(const SchmidtSpectrum& alpha,
                                              const SchmidtSpectrum& beta, std::size_t count,
                                              std::uint64_t seed);

/// Uniform sample from the probability simplex in n dimensions, sorted. With
/// `allow_rank_deficient`, a random number of trailing entries is zeroed in
/// about one draw out of four.
SchmidtSpectrum random_spectrum(std::size_t n, std::mt19937_64& rng,
                                bool allow_rank_deficient = false);

/// Normalized complex Gaussian amplitude matrix.
BipartiteState random_state(std::size_t n, std::mt19937_64& rng);

} // namespace loccx::oracle
