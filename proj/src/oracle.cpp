#include "loccx/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "loccx/error.hpp"

namespace loccx::oracle {

namespace {

constexpr std::size_t kTrialsPerChunk = 256;
// Slack on the ordering and fit checks between consecutive grid coordinates,
// which are differences of prefix sums and carry rounding.
constexpr double kConeSlack = 1e-14;

unsigned resolve_threads(unsigned requested, std::size_t work_items) {
  unsigned t = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work_items, 1)));
}

// Runs body(i) for i in [0, count) on `threads` workers with a static stride.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) body(i);
    });
  for (auto& th : pool) th.join();
}

std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

// Enumerates sorted candidates through their prefix sums S_k. Each S_k is either
// a lattice value j / parts or alpha's own prefix sum A_k, so points on the
// boundary of the majorization cone are reachable even when A_k is off-lattice.
// Feasibility S_k >= A_k is then an exact comparison.
struct GridSearch {
  std::size_t n;
  double parts;
  std::vector<double> alpha_prefix; // A_k, exactly 1 once alpha's tail is zero
  std::vector<double> sqrt_beta;

  template <class Visit>
  void candidates(std::size_t pos, double prev, double cap, Visit visit) const {
    const double lo = std::max(alpha_prefix[pos], prev);
    const double hi = std::min(1.0, prev + cap);
    const auto first = static_cast<std::int64_t>(std::ceil(lo * parts));
    const auto last = static_cast<std::int64_t>(std::floor(hi * parts + 1e-9));
    bool snapped = false;
    for (std::int64_t j = last; j >= first; --j) {
      const double s = std::min(1.0, static_cast<double>(j) / parts);
      if (s < alpha_prefix[pos])
        continue;
      snapped = snapped || s == alpha_prefix[pos];
      visit(s);
    }
    if (!snapped && alpha_prefix[pos] >= prev && alpha_prefix[pos] <= hi)
      visit(alpha_prefix[pos]);
  }

  // Best sqrt-overlap over completions of the prefix ending at S_{pos-1} = prev.
  double search(std::size_t pos, double prev, double cap, double partial) const {
    if (pos + 1 == n) {
      const double g = 1.0 - prev;
      if (g < 0.0 || g > cap + kConeSlack)
        return -1.0;
      return partial + std::sqrt(g) * sqrt_beta[pos];
    }
    const double slots = static_cast<double>(n - pos - 1);
    double best = -1.0;
    candidates(pos, prev, cap, [&](double s) {
      const double g = s - prev;
      if (g > cap + kConeSlack || 1.0 - s > slots * g + kConeSlack)
        return;
      best = std::max(best, search(pos + 1, s, g, partial + std::sqrt(g) * sqrt_beta[pos]));
    });
    return best;
  }
};

} // namespace

std::uint64_t sorted_grid_size(std::size_t n, std::uint64_t parts) {
  // count[m] over partitions of m into parts of size <= k, k = 1..n; conjugation
  // makes that equal to partitions into at most n parts.
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> count(parts + 1, 0);
  count[0] = 1;
  for (std::size_t k = 1; k <= n; ++k)
    for (std::uint64_t m = k; m <= parts; ++m)
      count[m] = (count[m] > kMax - count[m - k]) ? kMax : count[m] + count[m - k];
  return count[parts];
}

double grid_max_fidelity(const SchmidtSpectrum& alpha, const SchmidtSpectrum& beta,
                         const GridSpec& grid) {
  if (!(grid.step > 0.0 && grid.step <= 1.0))
    throw RangeError("grid step " + std::to_string(grid.step) + " outside (0, 1]");
  const auto [a, b] = pad_to_common(alpha, beta);
  const std::size_t n = grid.dimension == 0 ? a.size() : grid.dimension;
  const SchmidtSpectrum ap = a.padded(n);
  const SchmidtSpectrum bp = b.padded(n);

  const auto parts = static_cast<std::uint64_t>(std::llround(1.0 / grid.step));
  const std::uint64_t points = sorted_grid_size(n, parts);
  if (points > grid.budget)
    throw ResourceError("grid has " + std::to_string(points) + " points, budget is " +
                        std::to_string(grid.budget));

  GridSearch gs{n, static_cast<double>(parts), {}, {}};
  const MonotoneProfile tails = monotones(ap);
  for (std::size_t i = 0; i < n; ++i) {
    gs.alpha_prefix.push_back(i + 1 < n ? 1.0 - tails[i + 1] : 1.0);
    gs.sqrt_beta.push_back(std::sqrt(bp[i]));
  }

  if (n == 1)
    return std::clamp(gs.search(0, 0.0, 1.0, 0.0), 0.0, 1.0);

  // Fan out over the first prefix sum; max-reduction keeps the merge deterministic.
  std::vector<double> leads;
  gs.candidates(0, 0.0, 1.0, [&](double s) { leads.push_back(s); });
  std::vector<double> best_by_lead(leads.size(), -1.0);
  parallel_for(leads.size(), resolve_threads(0, leads.size()), [&](std::size_t i) {
    const double s = leads[i];
    if (1.0 - s > static_cast<double>(n - 1) * s + kConeSlack)
      return;
    best_by_lead[i] = gs.search(1, s, s, std::sqrt(s) * gs.sqrt_beta[0]);
  });
  const double best = *std::max_element(best_by_lead.begin(), best_by_lead.end());
  // The point (1, 0, ..., 0) always majorizes alpha, so best >= 0.
  return std::clamp(best * best, 0.0, 1.0);
}

bool is_unitary(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols())
    return false;
  const auto id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return (m.adjoint() * m - id).cwiseAbs().maxCoeff() <= tol;
}

Eigen::MatrixXcd random_unitary(std::size_t n, std::mt19937_64& rng) {
  const auto dim = static_cast<Eigen::Index>(n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i)
      g(i, j) = {gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const std::complex<double> d = r(i, i);
    const double mag = std::abs(d);
    if (mag > 0.0)
      q.col(i) *= d / mag;
  }
  return q;
}

double local_unitary_overlap(const BipartiteState& tau, const BipartiteState& omega,
                             const UnitaryPair& pair) {
  if (tau.dims() != omega.dims())
    throw DimensionError("states have different local dimensions");
  // (U (x) V)|omega> has amplitude matrix U W V^T.
  const Eigen::MatrixXcd moved = pair.u * omega.amplitudes() * pair.v.transpose();
  const std::complex<double> amp = (tau.amplitudes().conjugate().cwiseProduct(moved)).sum();
  return std::norm(amp);
}

UnitaryPair aligning_pair(const BipartiteState& tau, const BipartiteState& omega) {
  if (tau.dims() != omega.dims())
    throw DimensionError("states have different local dimensions");
  constexpr int opts = Eigen::ComputeFullU | Eigen::ComputeFullV;
  Eigen::JacobiSVD<Eigen::MatrixXcd> st(tau.amplitudes(), opts);
  Eigen::JacobiSVD<Eigen::MatrixXcd> sw(omega.amplitudes(), opts);
  UnitaryPair p;
  p.u = st.matrixU() * sw.matrixU().adjoint();
  p.v = st.matrixV().conjugate() * sw.matrixV().transpose();
  return p;
}

double sample_unitary_overlap(const BipartiteState& tau, const BipartiteState& omega,
                              const OverlapSampling& opts) {
  if (tau.dims() != omega.dims())
    throw DimensionError("states have different local dimensions");
  const std::size_t n = tau.dims();
  const auto id = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n),
                                             static_cast<Eigen::Index>(n));
  double best = local_unitary_overlap(tau, omega, {id, id});
  if (opts.inject_aligning)
    best = std::max(best, local_unitary_overlap(tau, omega, aligning_pair(tau, omega)));

  const std::size_t chunks = (opts.trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
  std::vector<double> chunk_best(chunks, 0.0);
  parallel_for(chunks, resolve_threads(opts.threads, chunks), [&](std::size_t c) {
    std::mt19937_64 rng = chunk_rng(opts.seed, c);
    const std::size_t begin = c * kTrialsPerChunk;
    const std::size_t end = std::min(opts.trials, begin + kTrialsPerChunk);
    double local = 0.0;
    for (std::size_t t = begin; t < end; ++t) {
      UnitaryPair pair{random_unitary(n, rng), random_unitary(n, rng)};
      local = std::max(local, local_unitary_overlap(tau, omega, pair));
    }
    chunk_best[c] = local;
  });
  for (double v : chunk_best) best = std::max(best, v);
  return best;
}

bool is_feasible(const Ensemble& ensemble, const SchmidtSpectrum& alpha, double tol) {
  if (ensemble.weights.size() != ensemble.outcomes.size() || ensemble.weights.empty())
    return false;
  double total = 0.0;
  for (double w : ensemble.weights) {
    if (w < 0.0)
      return false;
    total += w;
  }
  if (std::abs(total - 1.0) > tol)
    return false;
  std::size_t n = alpha.size();
  for (const auto& g : ensemble.outcomes) n = std::max(n, g.size());
  const MonotoneProfile ea = monotones(alpha.padded(n));
  std::vector<double> avg(n, 0.0);
  for (std::size_t k = 0; k < ensemble.outcomes.size(); ++k) {
    const MonotoneProfile eg = monotones(ensemble.outcomes[k].padded(n));
    for (std::size_t l = 0; l < n; ++l) avg[l] += ensemble.weights[k] * eg[l];
  }
  for (std::size_t l = 0; l < n; ++l)
    if (avg[l] > ea[l] + tol)
      return false;
  return true;
}

double ensemble_fidelity(const Ensemble& ensemble, const SchmidtSpectrum& beta) {
  double f = 0.0;
  for (std::size_t k = 0; k < ensemble.outcomes.size(); ++k)
    f += ensemble.weights[k] * aligned_fidelity(ensemble.outcomes[k], beta);
  return f;
}

Ensemble random_feasible_ensemble(const SchmidtSpectrum& alpha, std::mt19937_64& rng,
                                  std::size_t max_branches) {
  const std::size_t n = alpha.size();
  std::uniform_int_distribution<std::size_t> branch_count(1, std::max<std::size_t>(1, max_branches));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);

  const std::size_t k = branch_count(rng);
  Ensemble e;
  double total = 0.0;
  for (std::size_t b = 0; b < k; ++b) {
    const double w = expo(rng);
    e.weights.push_back(w);
    total += w;
  }
  for (double& w : e.weights) w /= total;

  std::vector<std::vector<double>> raw;
  for (std::size_t b = 0; b < k; ++b)
    raw.push_back(random_spectrum(n, rng, true).values());

  // Average tail sums of the raw branches; mixing every branch with the
  // product state by weight t scales all tails beyond the first by t.
  const MonotoneProfile ea = monotones(alpha);
  std::vector<double> avg(n, 0.0);
  for (std::size_t b = 0; b < k; ++b) {
    const MonotoneProfile eg = monotones(SchmidtSpectrum(raw[b]));
    for (std::size_t l = 0; l < n; ++l) avg[l] += e.weights[b] * eg[l];
  }
  double t_max = 1.0;
  for (std::size_t l = 1; l < n; ++l)
    if (avg[l] > 0.0)
      t_max = std::min(t_max, ea[l] / avg[l]);
  // Half the draws sit on the boundary of the feasible set.
  const double t = unit(rng) < 0.5 ? t_max : t_max * unit(rng);

  for (auto& g : raw) {
    for (double& p : g) p *= t;
    g[0] += 1.0 - t;
    e.outcomes.emplace_back(std::move(g));
  }
  return e;
}

std::vector<double> sample_feasible_ensembles(const SchmidtSpectrum& alpha,
                                              const SchmidtSpectrum& beta, std::size_t count,
                                              std::uint64_t seed) {
  const auto [a, b] = pad_to_common(alpha, beta);
  std::vector<double> out;
  out.reserve(count);
  if (count == 0)
    return out;
  out.push_back(aligned_fidelity(a, b));
  std::mt19937_64 rng = chunk_rng(seed, 0);
  while (out.size() < count)
    out.push_back(ensemble_fidelity(random_feasible_ensemble(a, rng), b));
  return out;
}

SchmidtSpectrum random_spectrum(std::size_t n, std::mt19937_64& rng, bool allow_rank_deficient) {
  if (n == 0)
    throw DimensionError("random spectrum needs n >= 1");
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(n);
  for (double& x : p) x = expo(rng);
  if (allow_rank_deficient && n > 1) {
    std::uniform_int_distribution<int> quarter(0, 3);
    if (quarter(rng) == 0) {
      std::uniform_int_distribution<std::size_t> keep(1, n - 1);
      std::sort(p.begin(), p.end(), std::greater<>());
      std::fill(p.begin() + static_cast<std::ptrdiff_t>(keep(rng)), p.end(), 0.0);
    }
  }
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  std::sort(p.begin(), p.end(), std::greater<>());
  return SchmidtSpectrum(std::move(p));
}

BipartiteState random_state(std::size_t n, std::mt19937_64& rng) {
  const auto dim = static_cast<Eigen::Index>(n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i)
      m(i, j) = {gauss(rng), gauss(rng)};
  m /= m.norm();
  return BipartiteState(std::move(m));
}

} // namespace loccx::oracle
