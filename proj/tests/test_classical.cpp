#include <cmath>
#include <doctest.h>

#include "focklab/classical.hpp"
#include "focklab/errors.hpp"

using namespace focklab;

TEST_CASE("gaussian noise entropies are exact") {
  const NoiseDensity n = gaussian_noise(0.7);
  CHECK_NOTHROW(validate_noise(n));
  const double expected = 0.5 * std::log(2.0 * M_PI * M_E * 0.7);
  CHECK(differential_entropy(n).value == doctest::Approx(expected).epsilon(1e-9));
  CHECK(std::abs(delta_classical(n).value) < 1e-9);
  // additive Gaussian noise saturates the Shannon capacity
  CHECK(mutual_information_gaussian_input(n, 1.3).value ==
        doctest::Approx(0.5 * std::log(1.0 + 1.3 / 0.7)).epsilon(1e-7));
}

TEST_CASE("uniform noise closed forms") {
  const NoiseDensity n = uniform_noise(1.0);
  CHECK_NOTHROW(validate_noise(n));
  CHECK(differential_entropy(n).value ==
        doctest::Approx(1.242453324894000).epsilon(1e-8));
  CHECK(delta_classical(n).value ==
        doctest::Approx(0.176485208310673).epsilon(1e-6));
}

TEST_CASE("laplace noise closed forms") {
  const NoiseDensity n = laplace_noise(1.0);
  CHECK_NOTHROW(validate_noise(n));
  CHECK(differential_entropy(n).value ==
        doctest::Approx(1.346573590279973).epsilon(1e-7));
  CHECK(delta_classical(n).value ==
        doctest::Approx(0.072364942924700).epsilon(1e-5));
}

TEST_CASE("scaling shifts both entropies by ln s") {
  const NoiseDensity base = uniform_noise(1.0);
  const NoiseDensity scaled = scaled_noise(base, 2.0);
  CHECK(scaled.variance == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_NOTHROW(validate_noise(scaled));
  CHECK(differential_entropy(scaled).value ==
        doctest::Approx(differential_entropy(base).value + std::log(2.0))
            .epsilon(1e-8));
  CHECK(std::abs(delta_classical(scaled).value - delta_classical(base).value) <
        1e-6);
}

TEST_CASE("gaussian mixtures are recentred and sandwiched") {
  RVec w(2), mu(2), var(2);
  w << 0.3, 0.7;
  mu << -1.0, 2.0;
  var << 0.5, 1.5;
  const NoiseDensity n = gaussian_mixture_noise(w, mu, var);
  CHECK_NOTHROW(validate_noise(n));
  // recentred: weighted mean zero; variance includes the mean spread
  const double mbar = 0.3 * -1.0 + 0.7 * 2.0;
  const double expected_var =
      0.3 * (0.5 + std::pow(-1.0 - mbar, 2)) + 0.7 * (1.5 + std::pow(2.0 - mbar, 2));
  CHECK(n.variance == doctest::Approx(expected_var).epsilon(1e-10));

  const Quad d = delta_classical(n);
  CHECK(d.value > 0.0);

  const double E = 2.0;
  const double c_g = classical_capacity_gaussian(E / n.variance);
  const Quad mi = mutual_information_gaussian_input(n, E);
  CHECK(mi.value >= c_g - 1e-7);
  CHECK(mi.value <= c_g + d.value + 1e-7);
}

TEST_CASE("degenerate noise configurations are rejected") {
  CHECK_THROWS_AS(uniform_noise(-1.0), DomainError);
  CHECK_THROWS_AS(gaussian_noise(0.0), DomainError);
  CHECK_THROWS_AS(laplace_noise(-0.5), DomainError);
  RVec w(2), mu(2), var(2);
  w << 0.5, 0.5;
  mu << 0.0, 0.0;
  var << 1.0, -1.0;
  CHECK_THROWS_AS(gaussian_mixture_noise(w, mu, var), DomainError);
}

TEST_CASE("validation catches a broken density") {
  NoiseDensity n = gaussian_noise(1.0);
  const auto good = n.pdf;
  n.pdf = [good](double x) { return 0.9 * good(x); };
  CHECK_THROWS_AS(validate_noise(n), InvalidStateError);
}
