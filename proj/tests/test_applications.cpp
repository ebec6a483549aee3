#include <doctest.h>

#include <cmath>
#include <random>

#include "loccx/applications.hpp"
#include "loccx/error.hpp"
#include "loccx/oracle.hpp"

using namespace loccx;

namespace {

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Direct evaluation: (sum sqrt(alpha_i))^2 / n.
double fmax_direct(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (double p : a) s += std::sqrt(p);
  return s * s / static_cast<double>(n);
}

} // namespace

TEST_CASE("concentration, robustness, teleportation") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto u = SchmidtSpectrum::uniform(n);
    CHECK(near(concentration_fidelity(u), 1.0, 1e-12));
    CHECK(near(robustness_of_entanglement(u), static_cast<double>(n) - 1.0, 1e-12));
    CHECK(near(teleportation_fidelity(u), 1.0, 1e-12));
  }
  const SchmidtSpectrum prod{1.0, 0.0};
  CHECK(near(concentration_fidelity(prod), 0.5, 1e-15));
  CHECK(near(robustness_of_entanglement(prod), 0.0, 1e-15));
  CHECK(near(teleportation_fidelity(prod), 2.0 / 3.0, 1e-15));
  CHECK(near(concentration_fidelity(SchmidtSpectrum{1.0}, 2), 0.5, 1e-15));

  const SchmidtSpectrum a{0.5, 0.3, 0.2};
  const double fmax = fmax_direct(a.values(), 3);
  CHECK(near(concentration_fidelity(a), fmax, 1e-15));
  CHECK(near(concentration_fidelity(a), 0.96565, 5e-6));
  CHECK(near(concentration_fidelity(a), optimal_fidelity(a, SchmidtSpectrum::uniform(3)).f_opt, 1e-12));
  CHECK(near(robustness_of_entanglement(a), 3.0 * fmax - 1.0, 1e-14));
  CHECK(near(robustness_of_entanglement(a), 1.89694, 2e-5));
  CHECK(near(teleportation_fidelity(a), (3.0 * fmax + 1.0) / 4.0, 1e-14));
  CHECK(near(teleportation_fidelity(a), 0.97424, 5e-6));

  CHECK_THROWS_AS(concentration_fidelity(a, 2), DimensionError);
}

TEST_CASE("F_max does not increase under deterministic conversion") {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto a = oracle::random_spectrum(4, rng);
    const auto b = oracle::random_spectrum(4, rng);
    if (!majorizes(a, b).deterministic)
      continue;
    ++checked;
    CHECK(concentration_fidelity(b) <= concentration_fidelity(a) + 1e-10);
  }
  CHECK(checked > 10);
}

TEST_CASE("dilution") {
  const SchmidtSpectrum b{0.6, 0.3, 0.1};
  auto d = dilution_fidelity(2, b);
  CHECK(near(d.fidelity, 0.9, 1e-15));
  REQUIRE(d.xi.size() == 3);
  CHECK(near(d.xi[0], 2.0 / 3.0, 1e-15));
  CHECK(near(d.xi[1], 1.0 / 3.0, 1e-15));
  CHECK(d.xi[2] == 0.0);

  d = dilution_fidelity(3, b);
  CHECK(d.fidelity == 1.0);
  CHECK(d.xi == b);
  d = dilution_fidelity(7, b);
  CHECK(d.fidelity == 1.0);

  d = dilution_fidelity(1, b);
  CHECK(near(d.fidelity, 0.6, 1e-15));
  CHECK(d.xi[0] == 1.0);

  CHECK_THROWS_AS(dilution_fidelity(0, b), RangeError);
}

TEST_CASE("dilution agrees with the general construction") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 100; ++i) {
    const auto b = oracle::random_spectrum(6, rng, true);
    for (std::size_t m = 1; m <= 7; ++m) {
      const auto d = dilution_fidelity(m, b);
      const auto r = optimal_fidelity(SchmidtSpectrum::uniform(m), b);
      CHECK(near(d.fidelity, r.f_opt, 1e-12));
      const auto xi = r.xi.padded(std::max(r.xi.size(), d.xi.size()));
      const auto dx = d.xi.padded(xi.size());
      for (std::size_t k = 0; k < xi.size(); ++k) CHECK(near(xi[k], dx[k], 1e-12));
    }
  }
}

TEST_CASE("catalysis") {
  SUBCASE("trivial catalyst changes nothing") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
      const auto a = oracle::random_spectrum(3, rng);
      const auto b = oracle::random_spectrum(3, rng);
      const auto r = catalysis_check(a, b, SchmidtSpectrum{1.0});
      CHECK(r.delta_t == 0.0);
      CHECK(r.noise_threshold == 0.0);
      CHECK(r.convertible_bare == r.convertible_with_catalyst);
    }
  }
  SUBCASE("canonical instance") {
    const SchmidtSpectrum a{0.4, 0.4, 0.1, 0.1};
    const SchmidtSpectrum b{0.5, 0.25, 0.25, 0.0};
    const SchmidtSpectrum eta{0.6, 0.4};
    const auto r = catalysis_check(a, b, eta);
    CHECK_FALSE(r.convertible_bare);
    CHECK(r.convertible_with_catalyst);
    CHECK(r.trace_distance_catalyzed == 0.0);
    CHECK(r.delta_t > 0.0);
    CHECK(near(r.delta_t, optimal_fidelity(a, b).trace_distance, 1e-15));
    CHECK(r.delta_t <= 2.0);
    CHECK(catalysis_survives_noise(a, b, eta, 0.5 * r.delta_t));
    CHECK_FALSE(catalysis_survives_noise(a, b, eta, r.delta_t));
  }
  SUBCASE("nothing to catalyze") {
    const auto r = catalysis_check(SchmidtSpectrum{0.4, 0.4, 0.2}, SchmidtSpectrum{0.7, 0.2, 0.1},
                                   SchmidtSpectrum{0.6, 0.4});
    CHECK(r.convertible_bare);
    CHECK(r.delta_t == 0.0);
  }
}

TEST_CASE("robustness interval") {
  const SchmidtSpectrum a{0.8, 0.2};
  const auto bell = SchmidtSpectrum::uniform(2);
  const double t = 2.0 * std::sqrt(0.1);

  auto iv = robustness_interval(a, bell, 0.0);
  CHECK(near(iv.lower, t, 1e-12));
  CHECK(iv.lower == iv.upper);

  iv = robustness_interval(bell, SchmidtSpectrum{0.9, 0.1}, 0.1);
  CHECK(iv.lower == 0.0);
  CHECK(near(iv.upper, 0.1, 1e-15));

  iv = robustness_interval(a, bell, 0.2);
  CHECK(near(iv.lower, t - 0.2, 1e-12));
  CHECK(near(iv.upper, t + 0.2, 1e-12));
  CHECK(near(iv.lower, 0.4325, 1e-4));
  CHECK(near(iv.upper, 0.8325, 1e-4));

  iv = robustness_interval(SchmidtSpectrum{1.0}, bell, 2.0);
  CHECK(iv.upper == 2.0);

  CHECK_THROWS_AS(robustness_interval(a, bell, -0.1), RangeError);
  CHECK_THROWS_AS(robustness_interval(a, bell, 2.5), RangeError);
}

TEST_CASE("non-local fidelity and distance") {
  const SchmidtSpectrum prod{1.0, 0.0};
  const auto bell = SchmidtSpectrum::uniform(2);
  const SchmidtSpectrum a{0.8, 0.2};

  CHECK(nonlocal_fidelity(a, a) == 1.0);
  CHECK(nonlocal_trace_distance(a, a) == 0.0);
  CHECK(near(optimal_fidelity(prod, bell).f_opt, 0.5, 1e-15));
  CHECK(optimal_fidelity(bell, prod).f_opt == 1.0);
  CHECK(near(nonlocal_fidelity(prod, bell), 0.5, 1e-15));
  CHECK(near(nonlocal_trace_distance(prod, bell), 2.0 * std::sqrt(0.5), 1e-12));
  CHECK(near(nonlocal_fidelity(a, bell), 0.9, 1e-12));
}

TEST_CASE("non-local trace distance is a metric") {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int i = 0; i < 100; ++i) {
    const auto x = oracle::random_spectrum(dim(rng), rng, true);
    const auto y = oracle::random_spectrum(dim(rng), rng, true);
    const auto z = oracle::random_spectrum(dim(rng), rng, true);
    const double xy = nonlocal_trace_distance(x, y);
    const double yz = nonlocal_trace_distance(y, z);
    const double xz = nonlocal_trace_distance(x, z);
    CHECK(near(xy, nonlocal_trace_distance(y, x), 1e-12));
    CHECK(nonlocal_trace_distance(x, x) <= 1e-10);
    CHECK((xy <= 1e-10) == (x.padded(4) == y.padded(4)));
    CHECK(xy + yz - xz >= -1e-9);
  }
}
