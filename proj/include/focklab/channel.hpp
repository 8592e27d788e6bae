#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "focklab/fock.hpp"
#include "focklab/gaussian.hpp"
#include "focklab/symmetry.hpp"

namespace focklab {

// Single-mode environment state fed into the ancilla port. All constructors
// produce zero-mean states in the Fock basis; realize() materialises the
// density matrix at a concrete cutoff and reports the truncated tail.
struct Environment {
  enum class Kind { Fock, Thermal, Diagonal, Pure, Mixed };

  Kind kind = Kind::Fock;
  int fock_n = 0;
  double thermal_nbar = 0.0;
  RVec diag_p;
  Vec pure_amps;
  Mat mixed_rho;

  static Environment fock(int n);
  static Environment thermal(double nbar);
  static Environment diagonal(RVec populations);
  static Environment pure(Vec amplitudes);
  static Environment mixed(Mat rho);

  // True when the state is diagonal in the number basis (hence invariant
  // under every rotation, and the channel is phase covariant).
  bool number_diagonal() const;

  // Smallest cutoff that keeps the tail below tail_tol (thermal states get a
  // geometric-tail bound; finite states return their natural dimension).
  int default_cutoff(double tail_tol = 1e-9) const;

  DensityOperator realize(int cutoff) const;
};

struct ChannelConfig {
  int env_cutoff = -1;       // -1: Environment::default_cutoff()
  int output_cap = 256;      // hard ceiling for the amplifier output cutoff
  double output_tail_tol = 1e-6;
  double max_input_deficit = kMaxInputDeficit;
  bool allow_deficit = false;  // skip the input-deficit guard
};

struct ChannelSpec {
  enum class Kind { Attenuator, Amplifier };

  Kind kind = Kind::Attenuator;
  double eta = 1.0;   // attenuator transmittance, 0 < eta <= 1
  double gain = 1.0;  // amplifier gain, gain >= 1
  Environment environment;
  ChannelConfig config;

  static ChannelSpec attenuator(double eta, Environment env,
                                ChannelConfig cfg = {});
  static ChannelSpec amplifier(double gain, Environment env,
                               ChannelConfig cfg = {});
  double parameter() const {
    return kind == Kind::Attenuator ? eta : gain;
  }
};

// M[ρ] = Tr_b[ U (ρ ⊗ σ) U† ] with U the beam splitter (attenuator) or the
// two-mode squeezer (amplifier). Attenuator outputs are exact at cutoff
// N_in + N_env; amplifier outputs grow until the escaped tail is below
// output_tail_tol (TruncationError past output_cap).
class Channel {
 public:
  explicit Channel(ChannelSpec spec);

  const ChannelSpec& spec() const { return spec_; }
  bool phase_covariant() const { return env_diag_basis_; }
  int env_cutoff() const { return env_cutoff_; }
  const DensityOperator& env_density() const { return env_rho_; }
  double env_mean_photon() const { return env_nbar_; }

  // Attenuator: the exact output cutoff. Amplifier: the initial estimate the
  // adaptive loop starts from.
  int output_cutoff_for(int input_cutoff) const;

  DensityOperator apply(const FockState& psi) const;
  DensityOperator apply(const DensityOperator& rho) const;

  // Kraus family {B_{q,k}} with Σ B†B = 1 on the input space (exact for the
  // attenuator; amplifier completeness holds up to the escaped tail). The
  // flattened index runs over environment eigenvectors q and detected photon
  // number k. Amplifier callers pass the output cutoff explicitly.
  std::vector<Mat> kraus_operators(int input_cutoff) const;
  std::vector<Mat> kraus_operators(int input_cutoff, int output_cutoff) const;

 private:
  struct EnvVec {
    double weight = 0.0;
    Vec amps;   // eigenvector in the number basis
    int lo = 0; // first / last nonzero index
    int hi = 0;
  };
  struct BsBlocks {
    int max_total = -1;
    std::vector<RMat> blocks;
  };

  std::shared_ptr<const BsBlocks> bs_blocks(int max_total) const;
  void accumulate_attenuator(const Vec& amps, int lo, int hi, double weight,
                             const BsBlocks& bs, Mat& acc) const;
  Mat run_attenuator(const std::vector<std::pair<Vec, double>>& inputs,
                     int n_in) const;
  Mat run_amplifier(const std::vector<std::pair<Vec, double>>& inputs,
                    int n_in, int n_out, double& escaped) const;
  DensityOperator apply_decomposed(
      const std::vector<std::pair<Vec, double>>& inputs, int n_in,
      double input_deficit) const;

  ChannelSpec spec_;
  int env_cutoff_ = 0;
  DensityOperator env_rho_;
  std::vector<EnvVec> env_vecs_;
  double env_nbar_ = 0.0;
  bool env_diag_basis_ = false;

  mutable std::mutex cache_mutex_;
  mutable std::shared_ptr<const BsBlocks> bs_cache_;
};

DensityOperator apply_channel(const ChannelSpec& spec, const DensityOperator& rho);
DensityOperator apply_channel(const ChannelSpec& spec, const FockState& psi);

// First/second moment map of the channel: mean scales with √η (or √G), the
// covariance picks up the environment term, (1-η)·Σ_env for the attenuator
// and (G-1)·Z Σ_env Z for the amplifier.
PhaseSpaceMoments output_moments(const ChannelSpec& spec,
                                 const PhaseSpaceMoments& in);

// Thermal channel with the same first/second moment map. Requires the
// environment to have ⟨a⟩ = ⟨a²⟩ = 0 (covariance ∝ identity); otherwise
// DomainError, with the squeezing angle/strength that would normalise it.
ChannelSpec gaussian_equivalent(const ChannelSpec& spec);

struct CovarianceCheckResult {
  Symmetry symmetry;
  double env_residual = 0.0;      // ‖GσG† - σ‖₁ on the environment
  bool env_symmetric = false;     // env_residual ≤ 1e-8
  double channel_residual = 0.0;  // ‖M[GρG†] - G M[ρ] G†‖₁ on a probe
};

// Verifies M ∘ G = G ∘ M on a probe state for a claimed symmetry of the
// environment. For rotations on the amplifier the ancilla counter-rotates;
// both cases reduce to environment invariance, which is what is reported.
CovarianceCheckResult covariance_check(const ChannelSpec& spec,
                                       const Symmetry& g,
                                       const DensityOperator& probe);

struct EnvNormalForm {
  double rotation = 0.0;   // apply R(-rotation) ...
  double squeeze = 0.0;    // ... then S(-squeeze) to reach cov ∝ identity
  bool already_normal = false;
};

EnvNormalForm environment_normal_form(const Environment& env, int cutoff);

}  // namespace focklab
