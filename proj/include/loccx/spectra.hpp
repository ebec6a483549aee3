#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace loccx {

/// Squared Schmidt coefficients of a bipartite pure state, sorted nonincreasing
/// and summing to one.
///
/// Construction sorts unsorted input (recording that it did so), clamps
/// rounding-level negatives to zero and renormalizes when the sum is within
/// `kRenormalizeTolerance` of one. Anything further off is rejected. Every
/// quantity computed from a spectrum depends only on the multiset of its
/// entries, so the order among equal entries is irrelevant.
class SchmidtSpectrum {
public:
  static constexpr double kRenormalizeTolerance = 1e-6;
  static constexpr double kNegativeTolerance = 1e-12;

  /// Throws ValidationError for empty, negative, non-finite or unnormalized input.
  explicit SchmidtSpectrum(std::vector<double> probs);
  SchmidtSpectrum(std::initializer_list<double> probs)
      : SchmidtSpectrum(std::vector<double>(probs)) {}

  /// Maximally entangled n-state.
  static SchmidtSpectrum uniform(std::size_t n);
  /// Product state, padded with zeros to length n.
  static SchmidtSpectrum product(std::size_t n = 1);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }
  const std::vector<double>& values() const noexcept { return probs_; }

  /// Number of strictly positive entries (the Schmidt rank).
  std::size_t rank() const noexcept;
  /// True when the input had to be sorted on construction.
  bool reordered() const noexcept { return reordered_; }

  /// Copy with zeros appended up to length n. Throws DimensionError if n is
  /// smaller than the rank; trailing zeros beyond n are dropped.
  SchmidtSpectrum padded(std::size_t n) const;

  friend bool operator==(const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
    return a.probs_ == b.probs_;
  }

private:
  std::vector<double> probs_;
  bool reordered_ = false;
};

/// Tail sums E_l = sum_{i >= l} p_i of a spectrum, stored zero-based:
/// tails[0] = 1 and tails.back() = p_n.
struct MonotoneProfile {
  std::vector<double> tails;

  std::size_t size() const noexcept { return tails.size(); }
  double operator[](std::size_t l) const { return tails[l]; }
};

/// Pure state on an n x n system given by its amplitude matrix in a product basis.
class BipartiteState {
public:
  static constexpr double kNormTolerance = 1e-6;

  /// Throws DimensionError if the matrix is not square or empty and
  /// ValidationError if its Frobenius norm is off by more than kNormTolerance.
  /// Accepted states are rescaled to unit norm.
  explicit BipartiteState(Eigen::MatrixXcd amplitudes);

  /// Schmidt-diagonal state with the given squared coefficients.
  static BipartiteState diagonal(const SchmidtSpectrum& spectrum);

  const Eigen::MatrixXcd& amplitudes() const noexcept { return amplitudes_; }
  std::size_t dims() const noexcept { return static_cast<std::size_t>(amplitudes_.rows()); }

private:
  Eigen::MatrixXcd amplitudes_;
};

/// Squared singular values of the amplitude matrix.
SchmidtSpectrum schmidt_spectrum(const BipartiteState& state);

MonotoneProfile monotones(const SchmidtSpectrum& s);

/// Pads both spectra with zeros to their common length.
std::pair<SchmidtSpectrum, SchmidtSpectrum> pad_to_common(const SchmidtSpectrum& a,
                                                          const SchmidtSpectrum& b);

/// Largest overlap |<tau|(U (x) V)|omega>|^2 over local unitaries, reached when
/// the Schmidt bases are aligned: (sum_i sqrt(tau_i omega_i))^2.
double aligned_fidelity(const SchmidtSpectrum& tau, const SchmidtSpectrum& omega);

/// Spectrum of the product state a (x) b.
SchmidtSpectrum tensor(const SchmidtSpectrum& a, const SchmidtSpectrum& b);

/// Trace distance 2 sqrt(1 - f) between pure states with fidelity f.
/// Throws RangeError for f outside [0, 1] by more than 1e-12.
double trace_distance_from_fidelity(double f);

} // namespace loccx
