#include "scgl/flow.hpp"

#include <cassert>
#include <cmath>

namespace scgl {
namespace {

// Below this step the direct (Phi - z)/dt difference loses precision and
// psi_dt switches to a second-order Taylor expansion about dt = 0.
constexpr double kPsiTaylorThreshold = 1e-8;

}  // namespace

Complex psi0(Complex z, const FlowParams& p) {
  return p.R * z - Complex{1.0, p.mu} * std::norm(z) * z;
}

Complex phi_flow(Complex z, double dt, const FlowParams& p) {
  if (dt == 0.0) return z;
  const double rho = std::norm(z);
  if (rho == 0.0) return z;

  // With s = 2 R dt, w = |z|^2 / R, and D = w + (1-w) e^{-s} the flow is
  //   Phi_dt(z) = D^{-1/2} exp(-i (mu/2) ln(1 + alpha(dt)|z|^2)) z,
  //   ln(1 + alpha(dt)|z|^2) = s + ln D,  alpha(dt) = (e^{2 R dt} - 1)/R.
  // D is assembled from non-negative terms, so the radicand never cancels or
  // overflows even at large R dt.
  const double s = 2.0 * p.R * dt;
  const double w = rho / p.R;
  const double em = std::exp(-s);
  const double one_minus_em = -std::expm1(-s);
  const double D = w * one_minus_em + em;
  assert(D > 0.0);
  const double log_arg = s + std::log(D);
  return z * std::polar(1.0 / std::sqrt(D), -0.5 * p.mu * log_arg);
}

Complex psi_dt(Complex z, double dt, const FlowParams& p) {
  if (dt == 0.0) return psi0(z, p);
  if (dt < kPsiTaylorThreshold) {
    // Psi_dt(z) = z (g(dt) - g(0))/dt with g(0) = 1, g'(0) = R - (1+i mu)|z|^2,
    // g''(0) = (R - (1+i mu)|z|^2)^2 + 2 (1+i mu)|z|^2 (|z|^2 - R).
    const double rho = std::norm(z);
    const Complex one_imu{1.0, p.mu};
    const Complex gp = p.R - one_imu * rho;
    const Complex gpp = gp * gp + 2.0 * one_imu * rho * (rho - p.R);
    return psi0(z, p) + 0.5 * dt * gpp * z;
  }
  return (phi_flow(z, dt, p) - z) / dt;
}

GridField apply_flow(const GridField& g, double dt, const FlowParams& p) {
  GridField out(g.N);
  for (std::size_t j = 0; j < g.values.size(); ++j) out.values[j] = phi_flow(g.values[j], dt, p);
  return out;
}

GridField apply_psi0(const GridField& g, const FlowParams& p) {
  GridField out(g.N);
  for (std::size_t j = 0; j < g.values.size(); ++j) out.values[j] = psi0(g.values[j], p);
  return out;
}

}  // namespace scgl
