#include "scgl/integrators.hpp"

#include <cmath>
#include <utility>

#include "scgl/flow.hpp"
#include "scgl/semigroup.hpp"

namespace scgl {
namespace {

void check_increment(int inc_N, double inc_dt, const RunConfig& cfg) {
  if (inc_N < cfg.N)
    throw ResolutionMismatch("increment resolution " + std::to_string(inc_N) +
                             " is below the run resolution " + std::to_string(cfg.N));
  if (std::abs(inc_dt - cfg.dt) > 1e-12 * cfg.dt)
    throw ResolutionMismatch("increment step does not match the run step");
}

template <typename Inc>
void add_scaled_modes(SpectralField& f, const Inc& inc, double sigma) {
  if (sigma == 0.0) return;
  for (long k = f.k_min(); k <= f.k_max(); ++k) f.mode(k) += sigma * inc.mode(k);
}

SolverState advanced(const SolverState& state, SpectralField field, double dt) {
  const long m = state.step_index + 1;
  return SolverState{std::move(field), m, static_cast<double>(m) * dt};
}

}  // namespace

SpectralField initial_field(const RunConfig& cfg) {
  SpectralField f(cfg.N);
  switch (cfg.init.kind) {
    case InitSpec::Kind::Zero:
      break;
    case InitSpec::Kind::Constant:
      f.mode(0) = cfg.init.value;
      break;
    case InitSpec::Kind::PlaneWave:
      f.mode(cfg.init.mode) = Complex{cfg.init.amplitude, 0.0};
      break;
  }
  return f;
}

SpectralField flow_substep(const SpectralField& f, const RunConfig& cfg) {
  const FlowParams p{cfg.model.R, cfg.model.mu};
  if (!cfg.dealias) {
    GridField g = apply_flow(to_grid(f), cfg.dt, p);
    return to_coeffs(g);
  }
  GridField g = apply_flow(to_grid(pad(f, 2 * cfg.N)), cfg.dt, p);
  return project(to_coeffs(g), cfg.N);
}

SolverState esm_step(const SolverState& state, const ConvIncrement& inc, const RunConfig& cfg) {
  check_increment(inc.N, inc.dt, cfg);
  SpectralField f = semigroup_apply(flow_substep(state.field, cfg), cfg.dt, cfg.model);
  add_scaled_modes(f, inc, cfg.model.sigma);
  return advanced(state, std::move(f), cfg.dt);
}

SolverState expsm_step(const SolverState& state, const BrownianIncrement& inc,
                       const RunConfig& cfg) {
  check_increment(inc.N, inc.dt, cfg);
  SpectralField f = semigroup_apply(flow_substep(state.field, cfg), cfg.dt, cfg.model);
  if (cfg.model.sigma != 0.0)
    for (long k = f.k_min(); k <= f.k_max(); ++k)
      f.mode(k) += cfg.model.sigma * semigroup_multiplier(k, cfg.dt, cfg.model.nu) * inc.mode(k);
  return advanced(state, std::move(f), cfg.dt);
}

SolverState tam_step(const SolverState& state, const ConvIncrement& inc, const RunConfig& cfg) {
  check_increment(inc.N, inc.dt, cfg);
  const FlowParams p{cfg.model.R, cfg.model.mu};

  SpectralField drift(cfg.N);
  if (!cfg.dealias) {
    drift = to_coeffs(apply_psi0(to_grid(state.field), p));
  } else {
    drift = project(to_coeffs(apply_psi0(to_grid(pad(state.field, 2 * cfg.N)), p)), cfg.N);
  }

  const double taming = 1.0 / (1.0 + cfg.dt * norm_l2(drift));
  SpectralField f = semigroup_apply(state.field, cfg.dt, cfg.model) +
                    taming * semigroup_integral_apply(drift, cfg.dt, cfg.model);
  add_scaled_modes(f, inc, cfg.model.sigma);
  return advanced(state, std::move(f), cfg.dt);
}

FreshNoiseProvider::FreshNoiseProvider(RngStream stream, int N, double dt, NoiseSpec spec)
    : stream_(stream), N_(N), dt_(dt), spec_(std::move(spec)) {}

ConvIncrement FreshNoiseProvider::next_conv() {
  return sample_conv_increment(stream_, N_, dt_, spec_);
}

BrownianIncrement FreshNoiseProvider::next_brownian() {
  return sample_brownian_increment(stream_, N_, dt_, spec_);
}

Trajectory run(const RunConfig& cfg, IncrementProvider& noise) {
  Trajectory traj;
  traj.config = cfg;

  SolverState state{initial_field(cfg), 0, 0.0};
  const long M = cfg.steps();

  auto record_diagnostics = [&](const SolverState& s) {
    traj.diagnostics.push_back(
        StepDiagnostics{s.step_index, s.t, norm_l2(s.field), norm_l4(to_grid(s.field))});
  };

  traj.snapshots.push_back(Snapshot{0, state.field});
  record_diagnostics(state);

  for (long m = 0; m < M; ++m) {
    switch (cfg.method) {
      case Method::Esm:
        state = esm_step(state, noise.next_conv(), cfg);
        break;
      case Method::ExpSm:
        state = expsm_step(state, noise.next_brownian(), cfg);
        break;
      case Method::Tam:
        state = tam_step(state, noise.next_conv(), cfg);
        break;
    }
    record_diagnostics(state);
    const double l2 = traj.diagnostics.back().l2;
    if (!(l2 <= kBlowupThreshold)) throw DiagnosticBlowup(state.step_index, l2);
    if (state.step_index % cfg.record_every == 0 || state.step_index == M)
      traj.snapshots.push_back(Snapshot{state.step_index, state.field});
  }
  return traj;
}

}  // namespace scgl
