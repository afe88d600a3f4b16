#include "scgl/selfcheck.hpp"

#include <cmath>
#include <sstream>

#include "scgl/field.hpp"
#include "scgl/flow.hpp"
#include "scgl/noise.hpp"
#include "scgl/rng.hpp"
#include "scgl/semigroup.hpp"

namespace scgl {
namespace {

constexpr int kVarianceDraws = 20000;  // reduced Monte-Carlo depth for fast validation

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(6);
  out << x;
  return out.str();
}

CheckResult check_flow_bounds(const RunConfig& cfg) {
  const FlowParams p{cfg.model.R, cfg.model.mu};
  RngStream rng(7, 1);
  const double sqrtR = std::sqrt(p.R);
  int violations = 0;
  double worst = 0.0;
  for (int i = 0; i < 4000; ++i) {
    const double mag = std::pow(10.0, -6.0 + 9.0 * rng.next_uniform());
    const double arg = 2.0 * M_PI * rng.next_uniform();
    const Complex z = std::polar(mag, arg);
    const double dt = (i % 5 == 0) ? 0.0 : rng.next_uniform() * 0.999;
    const double phi_mag = std::abs(phi_flow(z, dt, p));
    const double growth_gap = phi_mag - std::exp(p.R * dt) * mag;
    worst = std::max(worst, growth_gap);
    if (growth_gap > 1e-12) ++violations;
    if (mag >= sqrtR && phi_mag > mag + 1e-12) ++violations;
    if (std::abs(mag * mag - p.R) < 1e-9 * p.R && std::abs(phi_mag - mag) > 1e-12 * mag)
      ++violations;
  }
  // Exactly on the invariant circle.
  for (int i = 0; i < 50; ++i) {
    const Complex z = std::polar(sqrtR, 2.0 * M_PI * rng.next_uniform());
    const double dt = rng.next_uniform() * 0.999;
    if (std::abs(std::abs(phi_flow(z, dt, p)) - sqrtR) > 1e-12 * sqrtR) ++violations;
  }
  return {"flow-bounds", violations == 0,
          violations == 0 ? "growth/contraction/fixed-circle hold (worst gap " + fmt(worst) + ")"
                          : std::to_string(violations) + " violations"};
}

CheckResult check_sampler_variance(const RunConfig& cfg) {
  RngStream rng(11, 2);
  std::ostringstream detail;
  bool pass = true;
  for (long k : {0L, 1L, 7L}) {
    if (k > mode_max(cfg.N)) continue;
    const double want = variance_conv(k, cfg.dt, cfg.noise);
    double sum_re = 0.0, sum_im = 0.0;
    const double sd = std::sqrt(want);
    for (int i = 0; i < kVarianceDraws; ++i) {
      const double re = sd * rng.next_normal();
      const double im = sd * rng.next_normal();
      sum_re += re * re;
      sum_im += im * im;
    }
    const double var_re = sum_re / kVarianceDraws;
    const double var_im = sum_im / kVarianceDraws;
    if (std::abs(var_re - want) > 0.05 * want || std::abs(var_im - want) > 0.05 * want) {
      pass = false;
      detail << "k=" << k << " off (re " << fmt(var_re) << ", im " << fmt(var_im) << ", want "
             << fmt(want) << "); ";
    }
  }
  return {"sampler-variance", pass, pass ? "empirical variances within 5%" : detail.str()};
}

CheckResult check_coupling_identity(const RunConfig& cfg) {
  const double dt_f = cfg.dt / 4.0;
  bool pass = true;
  std::ostringstream detail;
  for (long k : {1L, 2L, 5L, 9L}) {
    if (k > mode_max(cfg.N / 2)) continue;
    const double lam = laplacian_eigenvalue(k);
    double agg = 0.0;
    for (int j = 0; j < 4; ++j)
      agg += std::exp(-2.0 * lam * (3 - j) * dt_f) * variance_conv(k, dt_f, cfg.noise);
    const double want = variance_conv(k, cfg.dt, cfg.noise);
    if (std::abs(agg - want) > 1e-12 * want) {
      pass = false;
      detail << "k=" << k << " identity gap " << fmt(std::abs(agg - want) / want) << "; ";
    }
  }

  // Deterministic aggregation against direct evaluation.
  const int N_f = std::max(4, cfg.N);
  std::vector<ConvIncrement> fine(4);
  for (auto& inc : fine)
    inc = ConvIncrement{N_f, dt_f, std::vector<Complex>(static_cast<std::size_t>(N_f),
                                                        Complex{1.0, 0.0})};
  const ConvIncrement coarse = couple_down(fine, cfg.model);
  for (long k : {0L, 1L}) {
    Complex want{0.0, 0.0};
    for (int j = 0; j < 4; ++j) want += semigroup_multiplier(k, (3 - j) * dt_f, cfg.model.nu);
    if (std::abs(coarse.mode(k) - want) > 1e-15 * std::max(1.0, std::abs(want))) {
      pass = false;
      detail << "aggregation mismatch at k=" << k << "; ";
    }
  }
  return {"coupling-identity", pass, pass ? "variance identity and aggregation exact" : detail.str()};
}

CheckResult check_parseval(const RunConfig& cfg) {
  RngStream rng(13, 3);
  bool pass = true;
  double worst = 0.0;
  for (int rep = 0; rep < 8; ++rep) {
    SpectralField f(cfg.N);
    for (Complex& c : f.coeffs) c = Complex{rng.next_normal(), rng.next_normal()};
    const double spectral = norm_l2(f);
    const double grid = norm_l2(to_grid(f));
    const double gap = std::abs(spectral - grid) / spectral;
    worst = std::max(worst, gap);
    if (gap > 1e-12) pass = false;
  }
  return {"parseval", pass, "max relative gap " + fmt(worst)};
}

CheckResult check_semigroup_law(const RunConfig& cfg) {
  RngStream rng(17, 4);
  bool pass = true;
  double worst = 0.0;
  for (int rep = 0; rep < 8; ++rep) {
    SpectralField f(cfg.N);
    for (Complex& c : f.coeffs) c = Complex{rng.next_normal(), rng.next_normal()};
    const double s = 0.3 * rng.next_uniform();
    const double t = 0.3 * rng.next_uniform();
    const SpectralField two = semigroup_apply(semigroup_apply(f, s, cfg.model), t, cfg.model);
    const SpectralField one = semigroup_apply(f, s + t, cfg.model);
    const double gap = norm_l2(two - one) / std::max(1e-300, norm_l2(one));
    worst = std::max(worst, gap);
    if (gap > 1e-12) pass = false;
  }
  return {"semigroup-law", pass, "max relative gap " + fmt(worst)};
}

}  // namespace

std::vector<CheckResult> run_selfcheck(const RunConfig& cfg) {
  std::vector<CheckResult> results;
  results.push_back(check_flow_bounds(cfg));
  results.push_back(check_sampler_variance(cfg));
  results.push_back(check_coupling_identity(cfg));
  results.push_back(check_parseval(cfg));
  results.push_back(check_semigroup_law(cfg));
  return results;
}

}  // namespace scgl
