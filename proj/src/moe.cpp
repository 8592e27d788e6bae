#include "focklab/moe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "focklab/entropy.hpp"
#include "focklab/gaussian.hpp"
#include "focklab/parallel.hpp"
#include "focklab/rng.hpp"

namespace focklab {
namespace {

void check_params(const MoeParams& p) {
  if (p.n_fock < 1 || p.n_init < 1 || p.n_loop < 1 || p.n_it < 1)
    throw DomainError("moe: all budget counts must be >= 1");
  if (!(p.delta0 > 0.0)) throw DomainError("moe: delta0 must be > 0");
}

double output_entropy(const Channel& ch, const FockState& psi) {
  return von_neumann_entropy(ch.apply(psi));
}

Complex mean_lowering(const FockState& psi) {
  Complex m = 0.0;
  for (int n = 1; n < psi.dim(); ++n)
    m += std::conj(psi.amps(n - 1)) * std::sqrt(static_cast<double>(n)) *
         psi.amps(n);
  return m;
}

// Output entropy is exactly flat along input displacements (covariance maps
// D(α) on the input to D(√η α) on the output), so every optimum carries a
// continuum of displaced twins and the search parks at an arbitrary one.
// Report the zero-mean representative of that orbit; symmetry residuals are
// only meaningful there. Keeps the raw state whenever the flat move is not
// flat numerically (truncation) or the padded channel apply fails.
FockState center_displacement(const Channel& ch, const FockState& state,
                              double f_best) {
  const Complex alpha = mean_lowering(state);
  if (std::abs(alpha) <= 1e-9) return state;
  const int pad =
      state.cutoff() + 12 +
      static_cast<int>(std::ceil(4.0 * (std::abs(alpha) + std::norm(alpha))));
  try {
    const FockState centered =
        apply(displacement(-alpha, pad), state.resized(pad));
    if (std::abs(output_entropy(ch, centered) - f_best) > 1e-6) return state;
    int last = 0;
    for (int n = 0; n < centered.dim(); ++n)
      if (std::abs(centered.amps(n)) > 1e-12) last = n;
    return centered.resized(last);
  } catch (const std::exception&) {
    return state;
  }
}

// Shared greedy descent over an abstract coefficient space; the embedding
// maps coefficients to the physical state.
template <typename VecT, typename DrawF, typename EmbedF>
MoeReport descend(const Channel& ch, const MoeParams& params, int dim,
                  DrawF&& draw, EmbedF&& embed) {
  Rng rng(params.seed);
  MoeReport report;
  report.params = params;
  report.channel = ch.spec();

  VecT best = draw(rng, dim);
  FockState best_state = embed(best);
  double f_best = output_entropy(ch, best_state);
  long iteration = 0;
  report.trace.push_back({iteration, f_best});
  for (int i = 1; i < params.n_init; ++i) {
    ++iteration;
    const VecT cand = draw(rng, dim);
    const FockState state = embed(cand);
    const double f = output_entropy(ch, state);
    if (f < f_best) {
      best = cand;
      best_state = state;
      f_best = f;
      report.trace.push_back({iteration, f});
    }
  }
  double delta = params.delta0;
  for (int loop = 0; loop < params.n_loop; ++loop) {
    for (int it = 0; it < params.n_it; ++it) {
      ++iteration;
      const VecT rand = draw(rng, dim);
      VecT test = best + delta * rand;
      const double norm = std::sqrt(test.squaredNorm());
      if (norm <= 0.0) continue;
      test /= norm;
      const FockState state = embed(test);
      const double f = output_entropy(ch, state);
      if (f < f_best) {
        best = test;
        best_state = state;
        f_best = f;
        report.trace.push_back({iteration, f});
      }
    }
    delta *= 0.5;
  }
  report.best_state = center_displacement(ch, best_state, f_best);
  report.best_entropy = f_best;
  const auto [fid, alpha] = coherent_fidelity(report.best_state);
  report.coherent_fidelity = fid;
  report.coherent_alpha = alpha;
  report.symmetry_residuals = symmetry_residuals(
      report.best_state,
      environment_symmetries(ch.spec().environment, ch.env_cutoff()));
  return report;
}

}  // namespace

FockState haar_random_state(int cutoff, Rng& rng) {
  if (cutoff < 0) throw DomainError("haar_random_state: cutoff must be >= 0");
  Vec amps(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) amps(n) = rng.complex_normal();
  return state_from_amplitudes(std::move(amps));
}

MoeReport minimize_output_entropy(const ChannelSpec& spec,
                                  const MoeParams& params) {
  check_params(params);
  const Channel ch(spec);
  const int dim = params.n_fock + 1;
  auto draw = [](Rng& rng, int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
    v /= std::sqrt(v.squaredNorm());
    return v;
  };
  auto embed = [](const Vec& v) { return state_from_amplitudes(v); };
  return descend<Vec>(ch, params, dim, draw, embed);
}

MoeReport minimize_symmetric(const ChannelSpec& spec, int m, int p,
                             const MoeParams& params) {
  check_params(params);
  if (m < 1) throw DomainError("minimize_symmetric: m must be >= 1");
  if (p < 0 || p >= m)
    throw DomainError("minimize_symmetric: offset p must be in [0, m)");
  if (p > params.n_fock)
    throw DomainError("minimize_symmetric: ray {m·k+p} is empty below the "
                      "cutoff");
  const int count = (params.n_fock - p) / m + 1;
  const Channel ch(spec);
  const int n_fock = params.n_fock;
  auto draw = [](Rng& rng, int n) {
    RVec v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.normal();
    v /= std::sqrt(v.squaredNorm());
    return v;
  };
  auto embed = [m, p, n_fock](const RVec& c) {
    Vec amps = Vec::Zero(n_fock + 1);
    for (int k = 0; k < c.size(); ++k) amps(m * k + p) = c(k);
    return state_from_amplitudes(std::move(amps));
  };
  return descend<RVec>(ch, params, count, draw, embed);
}

MoeReport minimize_with_restarts(const ChannelSpec& spec,
                                 const MoeParams& params, int restarts) {
  if (restarts < 1)
    throw DomainError("minimize_with_restarts: restarts must be >= 1");
  std::vector<MoeReport> runs(static_cast<std::size_t>(restarts));
  parallel_for(restarts, [&](int r) {
    MoeParams task = params;
    task.seed = derive_seed(params.seed, static_cast<std::uint64_t>(r));
    runs[static_cast<std::size_t>(r)] = minimize_output_entropy(spec, task);
  });
  int win = 0;
  for (int r = 1; r < restarts; ++r)
    if (runs[static_cast<std::size_t>(r)].best_entropy <
        runs[static_cast<std::size_t>(win)].best_entropy)
      win = r;
  MoeReport best = std::move(runs[static_cast<std::size_t>(win)]);
  best.restart_index = win;
  return best;
}

std::vector<std::pair<Symmetry, double>> symmetry_residuals(
    const FockState& state, const std::vector<Symmetry>& symmetries) {
  std::vector<std::pair<Symmetry, double>> out;
  out.reserve(symmetries.size());
  for (const Symmetry& g : symmetries)
    out.emplace_back(g, symmetry_residual(g, state));
  return out;
}

std::vector<Symmetry> environment_symmetries(const Environment& env,
                                             int cutoff, int max_fold) {
  std::vector<Symmetry> out;
  if (env.number_diagonal()) {
    out.push_back(Symmetry::rotation_by(M_PI / 2.0));
    out.push_back(Symmetry::rotation_by(M_PI));
    out.push_back(Symmetry::reflection_about(0.0));
    return out;
  }
  const DensityOperator rho = env.realize(cutoff);
  int fold = 1;
  for (int m = max_fold; m >= 2; --m) {
    if (symmetry_residual(Symmetry::rotation_by(2.0 * M_PI / m), rho) <=
        1e-8) {
      fold = m;
      break;
    }
  }
  double axis = 0.0;
  bool have_axis = false;
  for (int k = 0; k < 4 * fold && !have_axis; ++k) {
    const double theta = k * M_PI / (4.0 * fold);
    if (symmetry_residual(Symmetry::reflection_about(theta), rho) <= 1e-8) {
      axis = theta;
      have_axis = true;
    }
  }
  for (int k = 1; k < fold; ++k)
    out.push_back(Symmetry::rotation_by(2.0 * M_PI * k / fold));
  if (have_axis)
    for (int k = 0; k < fold; ++k)
      out.push_back(Symmetry::reflection_about(axis + 2.0 * M_PI * k / fold));
  return out;
}

std::pair<double, Complex> coherent_fidelity(const FockState& state) {
  const int cutoff = state.cutoff();
  auto fid = [&state, cutoff](Complex alpha) {
    // |<alpha|psi>|² without the truncation-tail renormalization, so the
    // value never exceeds the honest overlap
    const double a2 = std::norm(alpha);
    Complex amp = std::exp(-0.5 * a2);
    Complex ov = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
      ov += std::conj(amp) * state.amps(n);
      amp *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    return std::norm(ov);
  };
  Complex alpha = mean_lowering(state);
  double best = fid(alpha);
  double step = 0.25;
  while (step > 1e-7) {
    bool moved = false;
    for (const Complex d : {Complex(step, 0.0), Complex(-step, 0.0),
                            Complex(0.0, step), Complex(0.0, -step)}) {
      const double f = fid(alpha + d);
      if (f > best) {
        best = f;
        alpha += d;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return {best, alpha};
}

SqueezedScanResult squeezed_state_scan(const ChannelSpec& spec,
                                       const RVec& thetas, const RVec& rs,
                                       int cutoff, bool refine) {
  if (thetas.size() == 0 || rs.size() == 0)
    throw DomainError("squeezed_state_scan: empty grid");
  if (cutoff < 1) throw DomainError("squeezed_state_scan: cutoff must be >= 1");
  const Channel ch(spec);
  auto s_out = [&ch, cutoff](double theta, double r) {
    const FockState in = rotate(squeezed_vacuum(r, cutoff), theta);
    return von_neumann_entropy(ch.apply(in));
  };
  SqueezedScanResult res;
  const int nt = static_cast<int>(thetas.size());
  const int nr = static_cast<int>(rs.size());
  res.table.resize(static_cast<std::size_t>(nt * nr));
  parallel_for(nt * nr, [&](int idx) {
    const int i = idx / nr, j = idx % nr;
    res.table[static_cast<std::size_t>(idx)] = {thetas(i), rs(j),
                                                s_out(thetas(i), rs(j))};
  });
  int win = 0;
  for (int idx = 1; idx < nt * nr; ++idx)
    if (res.table[static_cast<std::size_t>(idx)].s_out <
        res.table[static_cast<std::size_t>(win)].s_out)
      win = idx;
  const SqueezedScanPoint& w = res.table[static_cast<std::size_t>(win)];
  res.theta_min = w.theta;
  res.r_min = w.r;
  res.s_min_grid = w.s_out;
  res.s_min = w.s_out;
  if (refine && nr >= 2) {
    const int j = win % nr;
    const double lo = rs(std::max(0, j - 1));
    const double hi = rs(std::min(nr - 1, j + 1));
    // golden-section in r at the winning theta
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = s_out(res.theta_min, c), fd = s_out(res.theta_min, d);
    for (int i = 0; i < 60 && (b - a) > 1e-10; ++i) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = s_out(res.theta_min, c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = s_out(res.theta_min, d);
      }
    }
    const double r_star = 0.5 * (a + b);
    const double f_star = s_out(res.theta_min, r_star);
    if (f_star < res.s_min) {
      res.r_min = r_star;
      res.s_min = f_star;
    }
    res.refined = true;
  }
  return res;
}

}  // namespace focklab
