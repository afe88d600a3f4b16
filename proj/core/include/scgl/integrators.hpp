#pragma once

#include <vector>

#include "scgl/config.hpp"
#include "scgl/field.hpp"
#include "scgl/noise.hpp"

namespace scgl {

// Abort threshold on the L2 norm; far above the physical scale sqrt(R) so it
// flags genuine blow-up rather than rough dynamics.
inline constexpr double kBlowupThreshold = 1e12;

struct SolverState {
  SpectralField field;
  long step_index = 0;
  double t = 0.0;
};

struct Snapshot {
  long step_index;
  SpectralField field;
};

struct StepDiagnostics {
  long step;
  double t;
  double l2;
  double l4;
};

struct Trajectory {
  RunConfig config;
  std::vector<Snapshot> snapshots;
  std::vector<StepDiagnostics> diagnostics;
};

SpectralField initial_field(const RunConfig& cfg);

// Shared deterministic sub-step of ESM and ExpSM: the exact nonlinear flow
// evaluated pointwise on the grid and transformed back (implicit projection,
// aliased by default; cfg.dealias switches to 2x zero-padded evaluation).
SpectralField flow_substep(const SpectralField& f, const RunConfig& cfg);

// One step of the exact-splitting method:
// U <- e^{dt A} P_N Phi_dt(U) + sigma * I, with I the exactly sampled
// stochastic-convolution increment.
SolverState esm_step(const SolverState& state, const ConvIncrement& inc, const RunConfig& cfg);

// Exponential splitting variant: the Brownian increment is propagated by the
// semigroup instead of being sampled through it:
// U <- e^{dt A} P_N Phi_dt(U) + sigma e^{dt A} dW.
SolverState expsm_step(const SolverState& state, const BrownianIncrement& inc,
                       const RunConfig& cfg);

// Tamed accelerated exponential Euler step:
// U <- e^{dt A} U + (1 + dt ||Psi_0(U)||)^{-1} (int_0^dt e^{sA} ds) P_N Psi_0(U) + sigma * I.
SolverState tam_step(const SolverState& state, const ConvIncrement& inc, const RunConfig& cfg);

// Per-step increment source for a trajectory; implementations must be
// deterministic functions of their construction state.
class IncrementProvider {
public:
  virtual ~IncrementProvider() = default;
  virtual ConvIncrement next_conv() = 0;
  virtual BrownianIncrement next_brownian() = 0;
};

// Samples fresh increments at (N, dt) from one stream.
class FreshNoiseProvider : public IncrementProvider {
public:
  FreshNoiseProvider(RngStream stream, int N, double dt, NoiseSpec spec);

  ConvIncrement next_conv() override;
  BrownianIncrement next_brownian() override;

private:
  RngStream stream_;
  int N_;
  double dt_;
  NoiseSpec spec_;
};

// Runs the configured method for M = T/dt steps from the configured initial
// data, recording snapshots every record_every steps (plus step 0 and M) and
// per-step L2/L4 diagnostics. Throws DiagnosticBlowup past kBlowupThreshold.
Trajectory run(const RunConfig& cfg, IncrementProvider& noise);

}  // namespace scgl
