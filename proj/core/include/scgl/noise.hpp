#pragma once

#include <complex>
#include <span>
#include <vector>

#include "scgl/config.hpp"
#include "scgl/field.hpp"
#include "scgl/rng.hpp"

namespace scgl {

// Exactly sampled stochastic-convolution increment over one step:
// modes[k] ~ sqrt(q_k) int e^{(t_end - s)A} dW_k(s), with Re and Im independent
// N(0, variance_conv(k, dt)). sigma is applied by the integrator.
struct ConvIncrement {
  int N = 0;
  double dt = 0.0;
  std::vector<Complex> modes;  // mode order mode_min(N) .. mode_max(N)

  const Complex& mode(long k) const { return modes[static_cast<std::size_t>(k - mode_min(N))]; }
  Complex& mode(long k) { return modes[static_cast<std::size_t>(k - mode_min(N))]; }
};

// Plain projected Brownian increment: Re, Im ~ independent N(0, q_k dt).
struct BrownianIncrement {
  int N = 0;
  double dt = 0.0;
  std::vector<Complex> modes;

  const Complex& mode(long k) const { return modes[static_cast<std::size_t>(k - mode_min(N))]; }
  Complex& mode(long k) { return modes[static_cast<std::size_t>(k - mode_min(N))]; }
};

// Per-component variance of the convolution increment:
// q_k (1 - e^{-2 lambda_k dt}) / (2 lambda_k) for k != 0, q_k dt for k = 0.
// The rotation by nu leaves the law isotropic, so nu does not enter.
double variance_conv(long k, double dt, const NoiseSpec& spec);

ConvIncrement sample_conv_increment(RngStream& rng, int N, double dt, const NoiseSpec& spec);
BrownianIncrement sample_brownian_increment(RngStream& rng, int N, double dt, const NoiseSpec& spec);

// Aggregates four consecutive fine increments at (2N, dt/4) into the exact
// coarse increment at (N, dt):
//   I_k = sum_j e^{-(1+i nu) lambda_k (3-j) dt/4} I_k^(j),
// restricted to the coarse mode set. Pure algebra, no new randomness.
ConvIncrement couple_down(std::span<const ConvIncrement> fine, const ModelParams& params);

// Brownian analogue: plain sums on the coarse mode set.
BrownianIncrement couple_down(std::span<const BrownianIncrement> fine);

// Refinement-coupled increment hierarchy. Level 0 is the coarsest
// (N_0 = base_N, dt_0 = base_dt); level l+1 has 2 N_l modes and dt_l / 4.
// Only the finest level is sampled; coarser levels are derived with
// couple_down, so every level rides one Brownian path. advance() generates
// the block belonging to one coarsest-level step: 4^l increments at level l.
class NoiseHierarchy {
public:
  enum class Kind { Conv, Brownian };

  struct Level {
    int N;
    double dt;
  };

  NoiseHierarchy(Kind kind, int base_N, double base_dt, int levels, NoiseSpec spec,
                 ModelParams params, RngStream stream);

  int levels() const { return static_cast<int>(levels_.size()); }
  Level level(int l) const { return levels_.at(static_cast<std::size_t>(l)); }
  Kind kind() const { return kind_; }

  void advance();

  // Increments of the current block; valid after advance().
  std::span<const ConvIncrement> conv_block(int l) const;
  std::span<const BrownianIncrement> brownian_block(int l) const;

private:
  Kind kind_;
  std::vector<Level> levels_;
  NoiseSpec spec_;
  ModelParams params_;
  RngStream stream_;
  std::vector<std::vector<ConvIncrement>> conv_;
  std::vector<std::vector<BrownianIncrement>> brownian_;
};

}  // namespace scgl
