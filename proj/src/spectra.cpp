#include "loccx/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "loccx/error.hpp"

namespace loccx {

namespace {

// Sums below this distance from one are left untouched so that directly
// entered spectra keep their exact values.
constexpr double kExactSumSlack = 1e-14;

} // namespace

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty())
    throw ValidationError("spectrum is empty");
  for (double& p : probs_) {
    if (!std::isfinite(p))
      throw ValidationError("spectrum has a non-finite entry");
    if (p < 0.0) {
      if (p < -kNegativeTolerance)
        throw ValidationError("spectrum has a negative entry: " + std::to_string(p));
      p = 0.0;
    }
  }
  const double sum = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(sum - 1.0) > kRenormalizeTolerance)
    throw ValidationError("spectrum is not normalized (sum = " + std::to_string(sum) + ")");
  if (std::abs(sum - 1.0) > kExactSumSlack)
    for (double& p : probs_) p /= sum;
  if (!std::is_sorted(probs_.begin(), probs_.end(), std::greater<>())) {
    std::stable_sort(probs_.begin(), probs_.end(), std::greater<>());
    reordered_ = true;
  }
}

SchmidtSpectrum SchmidtSpectrum::uniform(std::size_t n) {
  if (n == 0)
    throw DimensionError("uniform spectrum needs n >= 1");
  return SchmidtSpectrum(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

SchmidtSpectrum SchmidtSpectrum::product(std::size_t n) {
  if (n == 0)
    throw DimensionError("product spectrum needs n >= 1");
  std::vector<double> p(n, 0.0);
  p[0] = 1.0;
  return SchmidtSpectrum(std::move(p));
}

std::size_t SchmidtSpectrum::rank() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(probs_.begin(), probs_.end(), [](double p) { return p > 0.0; }));
}

SchmidtSpectrum SchmidtSpectrum::padded(std::size_t n) const {
  if (n < rank())
    throw DimensionError("cannot pad a rank-" + std::to_string(rank()) + " spectrum to length " +
                         std::to_string(n));
  SchmidtSpectrum out = *this;
  out.probs_.resize(n, 0.0);
  return out;
}

BipartiteState::BipartiteState(Eigen::MatrixXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.rows() == 0 || amplitudes_.rows() != amplitudes_.cols())
    throw DimensionError("amplitude matrix must be square and non-empty, got " +
                         std::to_string(amplitudes_.rows()) + "x" +
                         std::to_string(amplitudes_.cols()));
  if (!amplitudes_.allFinite())
    throw ValidationError("amplitude matrix has non-finite entries");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTolerance)
    throw ValidationError("state is not normalized (norm = " + std::to_string(norm) + ")");
  amplitudes_ /= norm;
}

BipartiteState BipartiteState::diagonal(const SchmidtSpectrum& spectrum) {
  const auto n = static_cast<Eigen::Index>(spectrum.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    m(i, i) = std::sqrt(spectrum[static_cast<std::size_t>(i)]);
  return BipartiteState(std::move(m));
}

SchmidtSpectrum schmidt_spectrum(const BipartiteState& state) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(state.amplitudes());
  const Eigen::VectorXd& sv = svd.singularValues();
  std::vector<double> probs(static_cast<std::size_t>(sv.size()));
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    probs[static_cast<std::size_t>(i)] = sv(i) * sv(i);
  return SchmidtSpectrum(std::move(probs));
}

MonotoneProfile monotones(const SchmidtSpectrum& s) {
  MonotoneProfile m;
  m.tails.resize(s.size());
  // Accumulate from the end so that zero tails come out exactly zero.
  double acc = 0.0;
  for (std::size_t i = s.size(); i-- > 0;) {
    acc += s[i];
    m.tails[i] = acc;
  }
  return m;
}

std::pair<SchmidtSpectrum, SchmidtSpectrum> pad_to_common(const SchmidtSpectrum& a,
                                                          const SchmidtSpectrum& b) {
  const std::size_t n = std::max(a.size(), b.size());
  return {a.padded(n), b.padded(n)};
}

double aligned_fidelity(const SchmidtSpectrum& tau, const SchmidtSpectrum& omega) {
  const std::size_t n = std::min(tau.size(), omega.size());
  double overlap = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    overlap += std::sqrt(tau[i] * omega[i]);
  return std::clamp(overlap * overlap, 0.0, 1.0);
}

SchmidtSpectrum tensor(const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
  std::vector<double> out;
  out.reserve(a.size() * b.size());
  for (double x : a.probs())
    for (double y : b.probs())
      out.push_back(x * y);
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return SchmidtSpectrum(std::move(out));
}

double trace_distance_from_fidelity(double f) {
  constexpr double tol = 1e-12;
  if (!(f >= -tol && f <= 1.0 + tol))
    throw RangeError("fidelity " + std::to_string(f) + " outside [0, 1]");
  return 2.0 * std::sqrt(1.0 - std::clamp(f, 0.0, 1.0));
}

} // namespace loccx
