#include <doctest.h>

#include <cmath>
#include <random>

#include "loccx/error.hpp"
#include "loccx/majorization.hpp"
#include "loccx/oracle.hpp"

using namespace loccx;

namespace {

// Largest p in [0, 1] accepted by weak_submajorizes, by bisection.
double bisect_weight(const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
  if (weak_submajorizes(a, b, 1.0))
    return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (weak_submajorizes(a, b, mid) ? lo : hi) = mid;
  }
  return lo;
}

} // namespace

TEST_CASE("majorizes") {
  const auto bell = SchmidtSpectrum::uniform(2);
  const SchmidtSpectrum prod{1.0, 0.0};

  auto v = majorizes(bell, prod);
  CHECK(v.deterministic);
  CHECK_FALSE(v.failing_index);

  v = majorizes(prod, bell);
  CHECK_FALSE(v.deterministic);
  REQUIRE(v.failing_index);
  CHECK(*v.failing_index == 1);
  CHECK(v.margin == doctest::Approx(-0.5));

  // Partial sums 0.4, 0.8, 0.9 against 0.5, 0.75, 1.0: the second one fails.
  v = majorizes(SchmidtSpectrum{0.4, 0.4, 0.1, 0.1}, SchmidtSpectrum{0.5, 0.25, 0.25, 0.0});
  CHECK_FALSE(v.deterministic);
  REQUIRE(v.failing_index);
  CHECK(*v.failing_index == 2);
  CHECK(v.margin == doctest::Approx(-0.05));

  // Equality at k = n must not be misread as a violation.
  CHECK(majorizes(SchmidtSpectrum{0.7, 0.2, 0.1}, SchmidtSpectrum{0.7, 0.2, 0.1}).deterministic);
  // Unequal lengths pad with zeros.
  CHECK(majorizes(SchmidtSpectrum{0.5, 0.5}, SchmidtSpectrum{1.0}).deterministic);
  CHECK_FALSE(majorizes(SchmidtSpectrum{1.0}, SchmidtSpectrum{0.5, 0.5}).deterministic);
}

TEST_CASE("weak_submajorizes") {
  const SchmidtSpectrum a{0.4, 0.4, 0.2};
  const SchmidtSpectrum b{0.7, 0.2, 0.1};
  REQUIRE(majorizes(a, b).deterministic);
  CHECK(weak_submajorizes(a, b, 1.0));

  CHECK_FALSE(weak_submajorizes(SchmidtSpectrum{1.0, 0.0}, SchmidtSpectrum::uniform(2), 0.5));
  CHECK(weak_submajorizes(SchmidtSpectrum{1.0, 0.0}, SchmidtSpectrum::uniform(2), 0.0));

  // Tail ratios are (1, 0.9, 2): every weight up to 0.9 is accepted.
  const SchmidtSpectrum x{0.55, 0.25, 0.2};
  const SchmidtSpectrum y{0.5, 0.4, 0.1};
  CHECK(weak_submajorizes(x, y, 0.9));
  CHECK(weak_submajorizes(x, y, 0.89));
  CHECK_FALSE(weak_submajorizes(x, y, 0.91));

  CHECK_THROWS_AS(weak_submajorizes(x, y, 1.5), RangeError);
  CHECK_THROWS_AS(weak_submajorizes(x, y, -0.1), RangeError);
}

TEST_CASE("conclusive_probability") {
  const SchmidtSpectrum a{0.6, 0.3, 0.1};
  CHECK(conclusive_probability(a, a) == 1.0);
  CHECK(conclusive_probability(SchmidtSpectrum{0.8, 0.2}, SchmidtSpectrum::uniform(2)) ==
        doctest::Approx(0.4).epsilon(1e-14));
  CHECK(conclusive_probability(SchmidtSpectrum{0.55, 0.25, 0.2}, SchmidtSpectrum{0.5, 0.4, 0.1}) ==
        doctest::Approx(0.9).epsilon(1e-14));
  // Fewer nonzero coefficients than the target: impossible.
  CHECK(conclusive_probability(SchmidtSpectrum{0.5, 0.5, 0.0}, SchmidtSpectrum{0.6, 0.3, 0.1}) ==
        0.0);
  // Target with fewer coefficients: vanishing tails are skipped.
  CHECK(conclusive_probability(SchmidtSpectrum{0.5, 0.3, 0.2}, SchmidtSpectrum{0.9, 0.1}) == 1.0);
}

TEST_CASE("conclusive probability properties") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = dim(rng);
    const auto a = oracle::random_spectrum(n, rng, true);
    const auto b = oracle::random_spectrum(n, rng, true);
    const double p = conclusive_probability(a, b);
    CHECK((p == 1.0) == majorizes(a, b).deterministic);
    CHECK(std::abs(p - bisect_weight(a, b)) <= 1e-9);
  }
}

TEST_CASE("sharing a Bell pair does not lower the conclusive probability") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> dim(1, 3);
  const auto bell = SchmidtSpectrum::uniform(2);
  for (int i = 0; i < 300; ++i) {
    const auto a = oracle::random_spectrum(dim(rng), rng, true);
    const auto b = oracle::random_spectrum(dim(rng), rng, true);
    CHECK(conclusive_probability(tensor(a, bell), tensor(b, bell)) >=
          conclusive_probability(a, b) - 1e-10);
  }
}
