#pragma once

#include <cmath>
#include <complex>

#include "scgl/field.hpp"

namespace scgl {

// Parameters consumed by the pointwise nonlinear maps.
struct FlowParams {
  double R = 1.0;  // > 0
  double mu = 0.0;

  // alpha(dt) = (e^{2 R dt} - 1)/R, the gain factor inside the flow map;
  // expm1 keeps small steps exact.
  double alpha(double dt) const { return std::expm1(2.0 * R * dt) / R; }
};

// Drift of the pointwise ODE: Psi_0(z) = R z - (1+i mu)|z|^2 z.
Complex psi0(Complex z, const FlowParams& p);

// Exact time-dt flow of z' = R z - (1+i mu)|z|^2 z; Phi_0 = identity.
Complex phi_flow(Complex z, double dt, const FlowParams& p);

// Increment map Psi_dt(z) = (Phi_dt(z) - z)/dt, with Psi_0 as the dt = 0 limit.
Complex psi_dt(Complex z, double dt, const FlowParams& p);

// phi_flow applied to every grid sample independently.
GridField apply_flow(const GridField& g, double dt, const FlowParams& p);

// psi0 applied to every grid sample independently.
GridField apply_psi0(const GridField& g, const FlowParams& p);

}  // namespace scgl
