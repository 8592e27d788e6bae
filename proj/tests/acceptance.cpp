// Acceptance gate: ten criteria, one [PASS]/[FAIL] line each. A criterion
// fails on an assertion miss, an exception, or an exceeded time budget.
// The process exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "focklab/capacity.hpp"
#include "focklab/channel.hpp"
#include "focklab/classical.hpp"
#include "focklab/entropy.hpp"
#include "focklab/fock.hpp"
#include "focklab/gaussian.hpp"
#include "focklab/moe.hpp"
#include "focklab/rng.hpp"
#include "focklab/wigner.hpp"

using namespace focklab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

Environment cat03_env() {
  Vec amps = Vec::Zero(4);
  amps(0) = 1.0 / std::sqrt(2.0);
  amps(3) = 1.0 / std::sqrt(2.0);
  return Environment::pure(amps);
}

double trace_norm_between(const DensityOperator& a, const DensityOperator& b) {
  return 2.0 * trace_distance(a, b);
}

RVec descending_spectrum(const DensityOperator& rho) {
  RVec s = density_spectrum(rho);
  std::sort(s.data(), s.data() + s.size(), std::greater<double>());
  return s;
}

DensityOperator mixture(const std::vector<FockState>& states,
                        const std::vector<double>& weights) {
  int cutoff = 0;
  for (const FockState& s : states) cutoff = std::max(cutoff, s.cutoff());
  const int dim = cutoff + 1;
  Mat m = Mat::Zero(dim, dim);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Vec v = states[i].resized(cutoff).amps;
    m += weights[i] * (v * v.adjoint());
  }
  DensityOperator rho;
  rho.matrix = std::move(m);
  return rho;
}

// ---- criterion 1 -----------------------------------------------------------

Outcome criterion_interference() {
  const ChannelSpec spec = ChannelSpec::attenuator(0.5, Environment::fock(1));

  const DensityOperator out0 = apply_channel(spec, make_fock(0, 0));
  const DensityOperator out1 = apply_channel(spec, make_fock(1, 1));

  DensityOperator want0, want1;
  want0.matrix = Mat::Zero(2, 2);
  want0.matrix(0, 0) = 0.5;
  want0.matrix(1, 1) = 0.5;
  want1.matrix = Mat::Zero(3, 3);
  want1.matrix(0, 0) = 0.5;
  want1.matrix(2, 2) = 0.5;

  const double err = std::max(trace_norm_between(out0, want0),
                              trace_norm_between(out1, want1));

  double eig_err = 0.0;
  for (const DensityOperator* out : {&out0, &out1}) {
    const RVec s = descending_spectrum(*out);
    eig_err = std::max(eig_err, std::abs(s(0) - 0.5));
    eig_err = std::max(eig_err, std::abs(s(1) - 0.5));
    for (int i = 2; i < s.size(); ++i) eig_err = std::max(eig_err, s(i));
  }

  const bool ok = err <= 1e-10 && eig_err <= 1e-10;
  return {ok, fmt("trace-norm err %.2e, eigenvalue err %.2e vs {1/2, 1/2}", err,
                  eig_err)};
}

// ---- criterion 2 -----------------------------------------------------------

Outcome criterion_capacity_closed_forms() {
  const double cap = capacity_gaussian(0.5, 1.0, 2.0);
  const double cap_exact = 3.0 * std::log(3.0) - 4.0 * std::log(2.0);
  const double gv = g_function(0.5);
  const double gv_exact = 1.5 * std::log(3.0) - std::log(2.0);

  const double d1 = std::abs(cap - cap_exact);
  const double d2 = std::abs(gv - gv_exact);
  const bool ok = d1 <= 1e-9 && d2 <= 1e-9;
  return {ok, fmt("capacity(1/2,1,2)=%.9f (err %.1e), g(1/2)=%.9f (err %.1e)",
                  cap, d1, gv, d2)};
}

// ---- criterion 3 -----------------------------------------------------------

Outcome criterion_interval_width_point_and_sweep() {
  const double exact = g_function(0.5) - std::log(2.0);
  const DeltaMaxResult point =
      delta_max(ChannelSpec::attenuator(0.5, Environment::fock(1)));
  const double point_err = std::abs(point.value - exact);

  bool ok = point_err <= 1e-6;
  std::string note;

  double min_delta = 1e300;
  for (int n = 1; n <= 3; ++n) {
    double prev = 1e300;
    for (int i = 0; i < 19; ++i) {
      const double eta = 0.05 + 0.05 * i;
      const double d =
          delta_max(ChannelSpec::attenuator(eta, Environment::fock(n))).value;
      min_delta = std::min(min_delta, d);
      if (d < 0.0) ok = false;
      if (eta >= 0.85 - 1e-12) {
        if (d >= prev) {
          ok = false;
          note = fmt("; width not shrinking toward eta=1 at n=%d", n);
        }
        prev = d;
      } else {
        prev = 1e300;
      }
    }
  }
  const double probe =
      delta_max(ChannelSpec::attenuator(0.999, Environment::fock(1))).value;
  if (probe > 1e-4) ok = false;

  return {ok, fmt("point err %.2e, sweep min width %.2e, width(0.999)=%.1e%s",
                  point_err, min_delta, probe, note.c_str())};
}

// ---- criterion 4 -----------------------------------------------------------

Outcome criterion_capacity_interval_sandwich() {
  const ChannelSpec spec = ChannelSpec::attenuator(0.5, Environment::fock(1));
  const DeltaMaxResult width = delta_max(spec);

  bool ok = true;
  std::string note;

  double prev_lower = -1e300;
  double width_dev = 0.0, lower0 = 0.0;
  for (int i = 0; i < 41; ++i) {
    const double nu = 0.25 * i;
    const CapacityInterval ci = capacity_interval(spec, nu);
    if (i == 0) lower0 = ci.c_gaussian;
    if (ci.c_gaussian < prev_lower - 1e-12) ok = false;
    prev_lower = ci.c_gaussian;
    width_dev = std::max(width_dev, std::abs(ci.delta - width.value));
    if (std::abs(ci.upper - ci.c_gaussian - ci.delta) > 1e-12) ok = false;
  }
  if (std::abs(lower0) > 1e-12) ok = false;
  if (width_dev > 1e-9) ok = false;

  double worst_margin = 1e300;
  for (const double nu : {1.0, 2.0, 5.0}) {
    const CapacityInterval ci = capacity_interval(spec, nu);
    const HolevoEstimate est = holevo_coherent_ensemble(spec, nu, 12);
    const double tol = std::max(est.error, 1e-6);
    const double margin = std::min(est.value - (ci.c_gaussian - tol),
                                   (ci.upper + tol) - est.value);
    worst_margin = std::min(worst_margin, margin);
    if (margin < 0.0) {
      ok = false;
      note = fmt("; chi=%.6f outside [%.6f, %.6f] at nu=%g", est.value,
                 ci.c_gaussian, ci.upper, nu);
    }
  }

  return {ok, fmt("lower(0)=%.1e, width dev %.1e, worst chi margin %.2e%s",
                  lower0, width_dev, worst_margin, note.c_str())};
}

// ---- criterion 5 -----------------------------------------------------------

Outcome criterion_squeezed_scan() {
  const ChannelSpec spec = ChannelSpec::attenuator(0.5, cat03_env());
  const RVec thetas = RVec::LinSpaced(25, 0.0, kPi / 3.0);
  const RVec rs = RVec::LinSpaced(50, 0.0, 1.0);
  const SqueezedScanResult res = squeezed_state_scan(spec, thetas, rs, 50);

  const bool ok = std::abs(res.s_min - 0.9333) <= 1e-3 &&
                  std::abs(res.r_min - 0.515) <= 0.01;
  return {ok,
          fmt("min S_out=%.5f at r=%.4f, theta=%.4f; reference angles "
              "disagree with each other: |theta-pi/6|=%.4f, |theta-pi/3|=%.4f",
              res.s_min, res.r_min, res.theta_min,
              std::abs(res.theta_min - kPi / 6.0),
              std::abs(res.theta_min - kPi / 3.0))};
}

// ---- criterion 6 -----------------------------------------------------------

Outcome criterion_moe_search() {
  const ChannelSpec spec = ChannelSpec::attenuator(0.5, cat03_env());
  const MoeReport rep = minimize_with_restarts(spec, MoeParams{}, 8);

  bool ok = rep.best_entropy <= 0.88;

  const std::vector<Symmetry> required{
      Symmetry::rotation_by(2.0 * kPi / 3.0),
      Symmetry::rotation_by(4.0 * kPi / 3.0), Symmetry::reflection_about(0.0),
      Symmetry::reflection_about(2.0 * kPi / 3.0),
      Symmetry::reflection_about(4.0 * kPi / 3.0)};
  double max_res = 0.0;
  for (const Symmetry& want : required) {
    bool found = false;
    for (const auto& [g, res] : rep.symmetry_residuals) {
      if (g.kind == want.kind && std::abs(g.theta - want.theta) < 1e-9) {
        found = true;
        max_res = std::max(max_res, res);
        if (res > 0.05) ok = false;
      }
    }
    if (!found) ok = false;
  }

  return {ok, fmt("best entropy %.4f (target <= 0.88, restart %d), max "
                  "symmetry residual %.3f (target <= 0.05)",
                  rep.best_entropy, rep.restart_index, max_res)};
}

// ---- criterion 7 -----------------------------------------------------------

Outcome criterion_coherent_optimality_evidence() {
  bool ok = true;
  double worst_fid = 1.0, worst_excess = -1e300;
  for (const double eta : {0.3, 0.5, 0.7}) {
    for (const int n : {1, 2}) {
      const ChannelSpec spec =
          ChannelSpec::attenuator(eta, Environment::fock(n));
      const MoeReport rep = minimize_output_entropy(spec, MoeParams{});
      const double vac = vacuum_output_entropy(spec);
      const double excess = rep.best_entropy - vac;
      worst_fid = std::min(worst_fid, rep.coherent_fidelity);
      worst_excess = std::max(worst_excess, excess);
      if (rep.coherent_fidelity < 0.99 || excess > 0.005) ok = false;
    }
  }
  return {ok, fmt("6 channels: min coherent fidelity %.4f (>= 0.99), max "
                  "entropy excess over vacuum %.2e (<= 5e-3)",
                  worst_fid, worst_excess)};
}

// ---- criterion 8 -----------------------------------------------------------

Environment random_environment(Rng& rng, bool allow_pure) {
  const int pick = static_cast<int>(rng.raw() % (allow_pure ? 3 : 2));
  switch (pick) {
    case 0:
      return Environment::fock(static_cast<int>(rng.raw() % 4));
    case 1:
      return Environment::thermal(rng.uniform() * 1.0);
    default: {
      const int c = 1 + static_cast<int>(rng.raw() % 3);
      Vec amps(c + 1);
      for (int i = 0; i <= c; ++i) amps(i) = rng.complex_normal();
      amps /= amps.norm();
      return Environment::pure(amps);
    }
  }
}

Outcome criterion_property_suite() {
  Rng rng(20260814u);
  bool ok = true;
  std::ostringstream worst;

  // beam-splitter block unitarity
  double w_bs = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double eta = 0.02 + 0.96 * rng.uniform();
    const int total = 1 + static_cast<int>(rng.raw() % 14);
    const RMat b = beam_splitter(eta, total).block(total);
    const double r =
        (b.transpose() * b - RMat::Identity(b.rows(), b.cols()))
            .cwiseAbs()
            .maxCoeff();
    w_bs = std::max(w_bs, r);
  }
  if (w_bs > 1e-12) ok = false;

  // first/second moment mixing law
  double w_mix = 0.0;
  for (int i = 0; i < 100; ++i) {
    const FockState a = haar_random_state(6, rng);
    const FockState b = haar_random_state(6, rng);
    const double w = rng.uniform();
    const DensityOperator rho = mixture({a, b}, {w, 1.0 - w});

    ChannelSpec spec =
        i % 2 == 0
            ? ChannelSpec::attenuator(0.1 + 0.85 * rng.uniform(),
                                      random_environment(rng, true))
            : ChannelSpec::amplifier(1.05 + 0.55 * rng.uniform(),
                                     random_environment(rng, false));
    spec.config.output_tail_tol = 1e-10;

    const PhaseSpaceMoments pred = output_moments(spec, moments(rho));
    const PhaseSpaceMoments got = moments(apply_channel(spec, rho));
    const double r = std::max((pred.mean - got.mean).cwiseAbs().maxCoeff(),
                              (pred.cov - got.cov).cwiseAbs().maxCoeff());
    w_mix = std::max(w_mix, r);
  }
  if (w_mix > 1e-6) ok = false;

  // rotation covariance for symmetric environments
  double w_cov = 0.0;
  for (int i = 0; i < 100; ++i) {
    Environment env = Environment::fock(0);
    double theta = 2.0 * kPi * rng.uniform();
    switch (rng.raw() % 3) {
      case 0:
        env = Environment::fock(static_cast<int>(rng.raw() % 4));
        break;
      case 1:
        env = Environment::thermal(rng.uniform());
        break;
      default: {
        const int m = 2 + static_cast<int>(rng.raw() % 3);
        Vec amps = Vec::Zero(m + 1);
        amps(0) = 1.0;
        amps(m) = std::exp(Complex(0.0, 2.0 * kPi * rng.uniform()));
        amps /= amps.norm();
        env = Environment::pure(amps);
        theta = 2.0 * kPi / m;
        break;
      }
    }
    ChannelSpec spec =
        i % 4 == 3 ? ChannelSpec::amplifier(1.0 + 0.5 * rng.uniform(), env)
                   : ChannelSpec::attenuator(0.1 + 0.85 * rng.uniform(), env);
    spec.config.output_tail_tol = 1e-12;

    const DensityOperator probe = to_density(haar_random_state(5, rng));
    const CovarianceCheckResult res =
        covariance_check(spec, Symmetry::rotation_by(theta), probe);
    if (!res.env_symmetric) ok = false;
    w_cov = std::max(w_cov, res.channel_residual);
  }
  if (w_cov > 1e-8) ok = false;

  // displacement covariance
  double w_disp = 0.0;
  for (int i = 0; i < 100; ++i) {
    const bool amp = i % 3 == 2;
    ChannelSpec spec =
        amp ? ChannelSpec::amplifier(1.05 + 0.25 * rng.uniform(),
                                     random_environment(rng, false))
            : ChannelSpec::attenuator(0.1 + 0.85 * rng.uniform(),
                                      random_environment(rng, true));
    spec.config.output_tail_tol = 1e-12;

    const int support = amp ? 3 : 4;
    const FockState psi = haar_random_state(support, rng).resized(24);
    const double amp_mag = (amp ? 0.5 : 0.6) * rng.uniform();
    const Complex alpha =
        amp_mag * std::exp(Complex(0.0, 2.0 * kPi * rng.uniform()));

    const FockState displaced = apply(displacement(alpha, 24), psi);
    const DensityOperator lhs = apply_channel(spec, displaced);

    const DensityOperator out = apply_channel(spec, psi);
    const double scale = amp ? std::sqrt(spec.gain) : std::sqrt(spec.eta);
    const DensityOperator rhs =
        apply(displacement(scale * alpha, out.dim() - 1), out);

    w_disp = std::max(w_disp, trace_norm_between(lhs, rhs));
  }
  if (w_disp > 1e-6) ok = false;

  // thermal-state extremality of the entropy
  double w_ext = -1e300;
  for (int i = 0; i < 100; ++i) {
    const FockState a = haar_random_state(9, rng);
    const FockState b = haar_random_state(9, rng);
    const FockState c = haar_random_state(9, rng);
    double w1 = rng.uniform_pos(), w2 = rng.uniform_pos(),
           w3 = rng.uniform_pos();
    const double tot = w1 + w2 + w3;
    const DensityOperator rho =
        mixture({a, b, c}, {w1 / tot, w2 / tot, w3 / tot});
    const double slack =
        von_neumann_entropy(rho) - g_function(mean_photon(rho));
    w_ext = std::max(w_ext, slack);
  }
  if (w_ext > 1e-8) ok = false;

  // interval width nonnegativity
  double w_delta = 1e300;
  for (int i = 0; i < 100; ++i) {
    ChannelSpec spec =
        i % 3 == 2 ? ChannelSpec::amplifier(1.0 + 0.6 * rng.uniform(),
                                            random_environment(rng, false))
                   : ChannelSpec::attenuator(0.1 + 0.85 * rng.uniform(),
                                             random_environment(rng, true));
    spec.config.output_tail_tol = 1e-10;
    w_delta = std::min(w_delta, delta_max(spec).value);
  }
  if (w_delta < -1e-8) ok = false;

  // transmittance eta <-> 1-eta spectral duality
  double w_dual = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double eta = 0.05 + 0.9 * rng.uniform();
    Vec env_amps(1 + static_cast<int>(rng.raw() % 4));
    for (int k = 0; k < env_amps.size(); ++k)
      env_amps(k) = rng.complex_normal();
    env_amps /= env_amps.norm();
    const Environment env = Environment::pure(env_amps);
    const FockState psi = haar_random_state(
        1 + static_cast<int>(rng.raw() % 5), rng);
    const FockState flipped = apply(rotation(kPi, psi.cutoff()), psi);

    const RVec sa = descending_spectrum(
        apply_channel(ChannelSpec::attenuator(eta, env), psi));
    const RVec sb = descending_spectrum(
        apply_channel(ChannelSpec::attenuator(1.0 - eta, env), flipped));
    const int n = static_cast<int>(std::max(sa.size(), sb.size()));
    RVec pa = RVec::Zero(n), pb = RVec::Zero(n);
    pa.head(sa.size()) = sa;
    pb.head(sb.size()) = sb;
    w_dual = std::max(w_dual, (pa - pb).cwiseAbs().maxCoeff());
  }
  if (w_dual > 1e-8) ok = false;

  return {ok,
          fmt("7x100 instances; worst: unitarity %.1e, mixing %.1e, rot-cov "
              "%.1e, disp-cov %.1e, extremality %+.1e, width %+.1e, duality "
              "%.1e",
              w_bs, w_mix, w_cov, w_disp, w_ext, w_delta, w_dual)};
}

// ---- criterion 9 -----------------------------------------------------------

Outcome criterion_classical_interval() {
  const double exact = 0.5 * std::log(kPi * std::exp(1.0) / 6.0);
  const Quad d_uniform = delta_classical(uniform_noise(1.0));
  const Quad d_gauss = delta_classical(gaussian_noise(1.0));

  bool ok = std::abs(d_uniform.value - exact) <= 1e-4 &&
            std::abs(d_gauss.value) <= 1e-6;

  Rng rng(7u);
  double worst_margin = 1e300;
  for (int i = 0; i < 20; ++i) {
    const int k = 2 + static_cast<int>(rng.raw() % 2);
    RVec w(k), mu(k), var(k);
    for (int j = 0; j < k; ++j) {
      w(j) = rng.uniform_pos();
      mu(j) = 3.0 * rng.uniform() - 1.5;
      var(j) = 0.3 + 1.7 * rng.uniform();
    }
    w /= w.sum();
    const NoiseDensity noise = gaussian_mixture_noise(w, mu, var);
    const double energy = 0.5 + 2.5 * rng.uniform();

    const double c_g = classical_capacity_gaussian(energy / noise.variance);
    const Quad info = mutual_information_gaussian_input(noise, energy);
    const Quad d_cl = delta_classical(noise);
    const double tol = std::max({info.error, d_cl.error, 1e-7});

    const double margin =
        std::min(info.value - c_g + tol, c_g + d_cl.value - info.value + tol);
    worst_margin = std::min(worst_margin, margin);
    if (margin < 0.0) ok = false;
  }

  return {ok, fmt("uniform width err %.2e, gaussian width %.1e, worst "
                  "sandwich margin %.2e over 20 mixtures",
                  std::abs(d_uniform.value - exact), d_gauss.value,
                  worst_margin)};
}

// ---- criterion 10 ----------------------------------------------------------

Outcome criterion_wigner() {
  const double w0 = wigner_point(to_density(make_fock(0, 0)), 0.0, 0.0);
  const double w1 = wigner_point(to_density(make_fock(1, 1)), 0.0, 0.0);
  const double e0 = std::abs(w0 - 1.0 / kPi);
  const double e1 = std::abs(w1 + 1.0 / kPi);

  Vec amps = Vec::Zero(4);
  amps(0) = amps(3) = 1.0 / std::sqrt(2.0);
  FockState cat;
  cat.amps = amps;
  const DensityOperator rho = to_density(cat);

  double sym_dev = 0.0;
  for (const double r : {0.5, 1.0, 1.6, 2.3}) {
    for (int k = 0; k < 16; ++k) {
      const double phi = 2.0 * kPi * k / 16.0;
      const double a = wigner_point(rho, r * std::cos(phi), r * std::sin(phi));
      const double b = wigner_point(rho, r * std::cos(phi + 2.0 * kPi / 3.0),
                                    r * std::sin(phi + 2.0 * kPi / 3.0));
      sym_dev = std::max(sym_dev, std::abs(a - b));
    }
  }

  const bool ok = e0 <= 1e-6 && e1 <= 1e-6 && sym_dev <= 1e-3;
  return {ok, fmt("W_vac(0,0) err %.1e, W_1(0,0) err %.1e, 3-fold asymmetry "
                  "%.1e",
                  e0, e1, sym_dev)};
}

// ---- harness ---------------------------------------------------------------

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0: no stated bound
  std::function<Outcome()> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "single-photon interference identities", 1.0,
       criterion_interference},
      {2, "Gaussian capacity closed forms", 0.0,
       criterion_capacity_closed_forms},
      {3, "interval width point value and sweep", 30.0,
       criterion_interval_width_point_and_sweep},
      {4, "capacity interval sandwich", 300.0,
       criterion_capacity_interval_sandwich},
      {5, "squeezed-state scan minimum", 120.0, criterion_squeezed_scan},
      {6, "minimum-output-entropy search", 900.0, criterion_moe_search},
      {7, "coherent-input optimality evidence", 0.0,
       criterion_coherent_optimality_evidence},
      {8, "randomized property suite", 0.0, criterion_property_suite},
      {9, "classical additive-noise interval", 60.0,
       criterion_classical_interval},
      {10, "Wigner identities and symmetry", 10.0, criterion_wigner},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out = {false, fmt("exception: %s", e.what())};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::string timing = fmt("%.2fs", elapsed);
    if (c.budget_s > 0.0) {
      timing += fmt(" of %.0fs budget", c.budget_s);
      if (elapsed >= c.budget_s) out.ok = false;
    }
    if (!out.ok) ++failures;
    std::printf("[%s] %2d: %s (%s; %s)\n", out.ok ? "PASS" : "FAIL", c.id,
                c.name, out.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/10 criteria passed\n",
              static_cast<int>(criteria.size()) - failures);
  return failures;
}
