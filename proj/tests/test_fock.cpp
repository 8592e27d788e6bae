#include <cmath>
#include <doctest.h>

#include "focklab/fock.hpp"

using namespace focklab;

namespace {

double poisson_tail(double lambda, int cutoff) {
  double kept = 0.0;
  for (int n = 0; n <= cutoff; ++n)
    kept += std::exp(-lambda + n * std::log(lambda) - std::lgamma(n + 1.0));
  return 1.0 - kept;
}

}  // namespace

TEST_CASE("coherent state follows the Poisson law") {
  const Complex alpha(1.2, 0.3);
  const FockState psi = make_coherent(alpha, 40);
  CHECK(psi.amps.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(psi.norm_deficit < 1e-12);
  CHECK(mean_photon(psi) == doctest::Approx(std::norm(alpha)).epsilon(1e-10));

  const DensityOperator rho = to_density(psi);
  const Complex a = expect_a(rho);
  CHECK(std::abs(a - alpha) < 1e-9);
  CHECK(std::abs(expect_a2(rho) - alpha * alpha) < 1e-9);

  // |c_n|^2 against the Poisson weights, and the phase against alpha^n.
  for (int n = 0; n <= 6; ++n) {
    const double w = std::exp(-std::norm(alpha) + n * std::log(std::norm(alpha)) -
                              std::lgamma(n + 1.0));
    CHECK(std::norm(psi.amps(n)) == doctest::Approx(w).epsilon(1e-10));
    const Complex expected_phase = std::pow(alpha, n) / std::abs(std::pow(alpha, n));
    if (n > 0)
      CHECK(std::abs(psi.amps(n) / std::abs(psi.amps(n)) - expected_phase *
                     (psi.amps(0) / std::abs(psi.amps(0)))) < 1e-10);
  }
}

TEST_CASE("coherent truncation records the Poisson tail") {
  // tail of Poisson(0.81) beyond 6 is ~2e-5, inside the 1e-4 guard
  const FockState psi = make_coherent(0.9, 6);
  CHECK(psi.amps.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(psi.norm_deficit ==
        doctest::Approx(poisson_tail(0.81, 6)).epsilon(1e-8));
  CHECK_THROWS_AS(make_coherent(2.0, 8), TruncationError);
  CHECK_THROWS_AS(make_coherent(3.0, 2), TruncationError);
}

TEST_CASE("thermal state is geometric with the tail recorded") {
  const double nbar = 0.8;
  const DensityOperator rho = make_thermal(nbar, 30);
  CHECK(rho.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  const double q = nbar / (1.0 + nbar);
  CHECK(rho.trace_deficit == doctest::Approx(std::pow(q, 31)).epsilon(1e-8));
  for (int n = 0; n + 1 <= 10; ++n)
    CHECK(rho.matrix(n + 1, n + 1).real() / rho.matrix(n, n).real() ==
          doctest::Approx(q).epsilon(1e-12));
  CHECK(mean_photon(rho) == doctest::Approx(nbar).epsilon(1e-6));
  CHECK_NOTHROW(check_density(rho));
}

TEST_CASE("check_density rejects broken matrices") {
  DensityOperator rho;
  rho.matrix = Mat::Zero(2, 2);
  rho.matrix(0, 0) = 1.0;
  rho.matrix(0, 1) = Complex(0.0, 0.2);  // not Hermitian
  CHECK_THROWS_AS(check_density(rho), InvalidStateError);

  rho.matrix = Mat::Zero(2, 2);
  rho.matrix(0, 0) = 1.5;
  rho.matrix(1, 1) = -0.5;  // negative eigenvalue
  CHECK_THROWS_AS(check_density(rho), InvalidStateError);

  rho.matrix = Mat::Zero(2, 2);
  rho.matrix(0, 0) = 0.6;
  rho.matrix(1, 1) = 0.6;  // trace 1.2
  CHECK_THROWS_AS(check_density(rho), InvalidStateError);
}

TEST_CASE("coherent overlaps match the closed form") {
  const Complex alpha(0.7, 0.0), beta(0.2, 0.4);
  const FockState a = make_coherent(alpha, 40);
  const FockState b = make_coherent(beta, 40);
  const double expected = std::exp(-std::norm(alpha - beta));
  CHECK(std::norm(overlap(a, b)) == doctest::Approx(expected).epsilon(1e-10));
  CHECK(fidelity_pure(to_density(a), b) ==
        doctest::Approx(expected).epsilon(1e-10));
  CHECK(purity(to_density(a)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trace distance separates orthogonal states") {
  const DensityOperator r0 = to_density(make_fock(0, 3));
  const DensityOperator r1 = to_density(make_fock(1, 3));
  CHECK(trace_distance(r0, r1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trace_distance(r0, r0) < 1e-14);
  const DensityOperator th = make_thermal(0.4, 3);
  CHECK(trace_distance(th, r0) == doctest::Approx(trace_distance(r0, th))
            .epsilon(1e-12));
  // one-sided bound against the diagonal difference
  CHECK(trace_distance(th, r0) <= 1.0 + 1e-12);
}

TEST_CASE("first and second moments") {
  const Complex alpha(0.8, -0.3);
  const PhaseSpaceMoments mc = moments(make_coherent(alpha, 40));
  CHECK(mc.mean(0) == doctest::Approx(std::sqrt(2.0) * alpha.real()).epsilon(1e-9));
  CHECK(mc.mean(1) == doctest::Approx(std::sqrt(2.0) * alpha.imag()).epsilon(1e-9));
  CHECK((mc.cov - 0.5 * Eigen::Matrix2d::Identity()).norm() < 1e-9);

  const PhaseSpaceMoments mt = moments(make_thermal(0.6, 40));
  CHECK(mt.mean.norm() < 1e-12);
  CHECK((mt.cov - (0.6 + 0.5) * Eigen::Matrix2d::Identity()).norm() < 1e-7);

  const PhaseSpaceMoments mf = moments(make_fock(2, 5));
  CHECK(mf.cov.trace() == doctest::Approx(1.0 + 2.0 * 2.0).epsilon(1e-12));
}

TEST_CASE("tensor and partial traces are inverse") {
  const DensityOperator a = make_thermal(0.5, 6);
  const DensityOperator b = to_density(make_coherent(0.6, 6));
  const TwoModeDensity ab = tensor(a, b);
  CHECK((partial_trace_second(ab).matrix - a.matrix).norm() < 1e-13);
  CHECK((partial_trace_first(ab).matrix - b.matrix).norm() < 1e-13);
}

TEST_CASE("resizing renormalizes and records the cut") {
  const FockState psi = make_coherent(1.0, 30);
  const FockState cut = psi.resized(5);
  CHECK(cut.amps.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cut.norm_deficit ==
        doctest::Approx(poisson_tail(1.0, 5)).epsilon(1e-6));
  const FockState grown = cut.resized(12);
  CHECK(grown.dim() == 13);
  CHECK(grown.amps.tail(7).norm() == 0.0);
  CHECK(grown.norm_deficit == cut.norm_deficit);

  const DensityOperator rho = make_thermal(0.7, 20).resized(4);
  CHECK(rho.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho.trace_deficit ==
        doctest::Approx(std::pow(0.7 / 1.7, 5)).epsilon(1e-6));
}

TEST_CASE("phase-free distance ignores a global phase") {
  const FockState psi = make_coherent(Complex(0.5, 0.5), 20);
  const Vec shifted = std::exp(Complex(0, 0.7)) * psi.amps;
  CHECK(phase_free_distance(psi.amps, shifted) < 1e-12);
  const FockState other = make_coherent(Complex(0.5, -0.5), 20);
  CHECK(phase_free_distance(psi.amps, other.amps) > 0.1);
}

TEST_CASE("spectrum clipping policy") {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1.0 + 1e-11;
  m(1, 1) = -1e-11;
  const RVec spec = density_spectrum(density_from_matrix(m, 0.0));
  CHECK(spec(0) == 0.0);
  CHECK(spec(1) == doctest::Approx(1.0).epsilon(1e-9));

  m(1, 1) = -1e-9;
  CHECK_THROWS_AS(density_spectrum(density_from_matrix(m, 0.0)),
                  InvalidStateError);
}

TEST_CASE("annihilation matrix ladder identities") {
  const Mat a = annihilation_matrix(6);
  for (int n = 1; n <= 6; ++n)
    CHECK(std::abs(a(n - 1, n) - std::sqrt(double(n))) < 1e-15);
  const Mat num = a.adjoint() * a;
  for (int n = 0; n <= 5; ++n)
    CHECK(num(n, n).real() == doctest::Approx(double(n)).epsilon(1e-14));
  // a a† - a† a = 1 except in the last row/column where the cutoff bites
  const Mat comm = a * a.adjoint() - a.adjoint() * a;
  for (int n = 0; n <= 5; ++n)
    CHECK(comm(n, n).real() == doctest::Approx(1.0).epsilon(1e-14));
}
