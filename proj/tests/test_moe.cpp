#include <cmath>
#include <doctest.h>
#include <numbers>

#include "focklab/capacity.hpp"
#include "focklab/entropy.hpp"
#include "focklab/moe.hpp"
#include "focklab/rng.hpp"

using namespace focklab;

namespace {

constexpr double kPi = std::numbers::pi;

Environment cat03() {
  Vec amps = Vec::Zero(4);
  amps(0) = 1.0 / std::sqrt(2.0);
  amps(3) = 1.0 / std::sqrt(2.0);
  return Environment::pure(amps);
}

MoeParams small_budget() {
  MoeParams p;
  p.n_fock = 8;
  p.n_init = 30;
  p.n_loop = 12;
  p.n_it = 150;
  p.seed = 97;
  return p;
}

}  // namespace

TEST_CASE("haar draws are normalized and seed-determined") {
  Rng rng1(5), rng2(5), rng3(6);
  const FockState a = haar_random_state(10, rng1);
  const FockState b = haar_random_state(10, rng2);
  const FockState c = haar_random_state(10, rng3);
  CHECK(a.amps.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((a.amps - b.amps).norm() == 0.0);
  CHECK((a.amps - c.amps).norm() > 1e-3);
}

TEST_CASE("search is deterministic and the trace is greedy") {
  const ChannelSpec spec = ChannelSpec::attenuator(0.5, Environment::fock(1));
  const MoeParams p = small_budget();
  const MoeReport r1 = minimize_output_entropy(spec, p);
  const MoeReport r2 = minimize_output_entropy(spec, p);

  CHECK(r1.best_entropy == r2.best_entropy);
  CHECK((r1.best_state.amps - r2.best_state.amps).norm() == 0.0);
  REQUIRE(r1.trace.size() == r2.trace.size());

  REQUIRE(!r1.trace.empty());
  for (std::size_t i = 1; i < r1.trace.size(); ++i) {
    CHECK(r1.trace[i].entropy < r1.trace[i - 1].entropy);
    CHECK(r1.trace[i].iteration > r1.trace[i - 1].iteration);
  }
  CHECK(r1.trace.back().entropy == r1.best_entropy);
}

TEST_CASE("single-photon attenuator search approaches the vacuum output") {
  const ChannelSpec spec = ChannelSpec::attenuator(0.5, Environment::fock(1));
  const MoeReport rep = minimize_output_entropy(spec, small_budget());
  const double vacuum = vacuum_output_entropy(spec);
  CHECK(vacuum == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(rep.best_entropy >= vacuum - 1e-9);
  CHECK(rep.best_entropy <= vacuum + 0.06);
  CHECK(rep.coherent_fidelity > 0.75);
  CHECK(rep.coherent_fidelity <= 1.0 + 1e-12);

  // the report carries the zero-mean representative of the displacement
  // orbit, whatever point the walk actually parked at
  Complex mean = 0.0;
  for (int n = 1; n < rep.best_state.dim(); ++n)
    mean += std::conj(rep.best_state.amps(n - 1)) * std::sqrt(double(n)) *
            rep.best_state.amps(n);
  CHECK(std::abs(mean) <= 1e-8);
}

TEST_CASE("symmetric restriction pins the support and the symmetry") {
  const ChannelSpec spec = ChannelSpec::attenuator(0.5, cat03());
  MoeParams p = small_budget();
  p.n_fock = 9;
  const MoeReport rep = minimize_symmetric(spec, 3, 0, p);

  for (int n = 0; n <= rep.best_state.cutoff(); ++n) {
    if (n % 3 != 0) CHECK(std::abs(rep.best_state.amps(n)) == 0.0);
    CHECK(std::abs(rep.best_state.amps(n).imag()) == 0.0);
  }
  bool saw_rotation = false;
  for (const auto& [g, res] : rep.symmetry_residuals) {
    if (g.kind == Symmetry::Kind::Rotation &&
        std::abs(g.theta - 2.0 * kPi / 3.0) < 1e-12) {
      saw_rotation = true;
      CHECK(res < 1e-7);
    }
  }
  CHECK(saw_rotation);

  CHECK_THROWS_AS(minimize_symmetric(spec, 0, 0, p), DomainError);
  CHECK_THROWS_AS(minimize_symmetric(spec, 3, 3, p), DomainError);
  CHECK_THROWS_AS(minimize_symmetric(spec, 3, 12, p), DomainError);
}

TEST_CASE("restarts pick the minimum with the lowest index") {
  const ChannelSpec spec = ChannelSpec::attenuator(0.5, Environment::fock(1));
  MoeParams p = small_budget();
  p.n_init = 10;
  p.n_loop = 4;
  p.n_it = 40;

  const MoeReport joint = minimize_with_restarts(spec, p, 3);
  double best = std::numeric_limits<double>::infinity();
  int win = 0;
  for (int r = 0; r < 3; ++r) {
    MoeParams task = p;
    task.seed = derive_seed(p.seed, static_cast<std::uint64_t>(r));
    const MoeReport rep = minimize_output_entropy(spec, task);
    if (rep.best_entropy < best) {
      best = rep.best_entropy;
      win = r;
    }
  }
  CHECK(joint.best_entropy == best);
  CHECK(joint.restart_index == win);
  CHECK_THROWS_AS(minimize_with_restarts(spec, p, 0), DomainError);
}

TEST_CASE("environment symmetry detection") {
  const auto cat = environment_symmetries(cat03(), 6);
  REQUIRE(cat.size() == 5);
  int rotations = 0, reflections = 0;
  for (const Symmetry& g : cat)
    (g.kind == Symmetry::Kind::Rotation ? rotations : reflections) += 1;
  CHECK(rotations == 2);
  CHECK(reflections == 3);
  CHECK(cat[0].theta == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-12));

  const auto th = environment_symmetries(Environment::thermal(0.5), 20);
  REQUIRE(th.size() == 3);
  CHECK(th[0].kind == Symmetry::Kind::Rotation);
  CHECK(th[2].kind == Symmetry::Kind::Reflection);
}

TEST_CASE("coherent fidelity recovers displacement and Fock limits") {
  const Complex alpha(0.7, -0.2);
  const auto [fid, found] = coherent_fidelity(make_coherent(alpha, 25));
  CHECK(fid >= 1.0 - 1e-6);
  CHECK(std::abs(found - alpha) < 1e-3);

  const auto [fid1, found1] = coherent_fidelity(make_fock(1, 20));
  CHECK(fid1 == doctest::Approx(std::exp(-1.0)).epsilon(1e-3));
  CHECK(std::abs(found1) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("squeezed scan on the pure loss channel prefers the vacuum") {
  const ChannelSpec spec = ChannelSpec::attenuator(0.5, Environment::fock(0));
  const RVec thetas = RVec::LinSpaced(5, 0.0, kPi / 3.0);
  const RVec rs = RVec::LinSpaced(9, 0.0, 0.8);
  const SqueezedScanResult res = squeezed_state_scan(spec, thetas, rs, 40);

  CHECK(res.r_min == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(res.s_min < 1e-8);
  CHECK(res.refined);
  REQUIRE(res.table.size() == 45);

  // the r = 0 column is theta-independent
  double first = -1.0;
  for (const SqueezedScanPoint& pt : res.table) {
    if (pt.r != 0.0) continue;
    if (first < 0.0)
      first = pt.s_out;
    else
      CHECK(pt.s_out == doctest::Approx(first).epsilon(1e-12));
  }

  CHECK_THROWS_AS(squeezed_state_scan(spec, RVec(), rs, 40), DomainError);
  CHECK_THROWS_AS(squeezed_state_scan(spec, thetas, rs, 0), DomainError);
}

TEST_CASE("budget validation") {
  const ChannelSpec spec = ChannelSpec::attenuator(0.5, Environment::fock(1));
  MoeParams p = small_budget();
  p.n_init = 0;
  CHECK_THROWS_AS(minimize_output_entropy(spec, p), DomainError);
  p = small_budget();
  p.delta0 = 0.0;
  CHECK_THROWS_AS(minimize_output_entropy(spec, p), DomainError);
}
