#include "scgl/semigroup.hpp"

#include <cmath>

namespace scgl {

double laplacian_eigenvalue(long k) {
  const double kk = static_cast<double>(k);
  return 4.0 * M_PI * M_PI * kk * kk;
}

Complex semigroup_multiplier(long k, double t, double nu) {
  const double lam = laplacian_eigenvalue(k);
  // exp underflows to 0 for strongly damped modes, which is the right limit.
  return std::polar(std::exp(-lam * t), -nu * lam * t);
}

Complex semigroup_integral_multiplier(long k, double t, double nu) {
  if (k == 0) return Complex{t, 0.0};
  const Complex w = Complex{1.0, nu} * laplacian_eigenvalue(k);
  const Complex wt = w * t;
  if (std::abs(wt) < 1e-3) {
    // (1 - e^{-wt})/w = t (1 - wt/2 + (wt)^2/6 - (wt)^3/24 + ...), avoiding
    // the cancellation of the direct difference.
    return t * (1.0 - wt / 2.0 + wt * wt / 6.0 - wt * wt * wt / 24.0);
  }
  const Complex em = std::polar(std::exp(-wt.real()), -wt.imag());
  return (1.0 - em) / w;
}

SpectralField semigroup_apply(const SpectralField& f, double t, const ModelParams& params) {
  SpectralField out(f.N);
  for (long k = f.k_min(); k <= f.k_max(); ++k)
    out.mode(k) = semigroup_multiplier(k, t, params.nu) * f.mode(k);
  return out;
}

SpectralField semigroup_integral_apply(const SpectralField& f, double t,
                                       const ModelParams& params) {
  SpectralField out(f.N);
  for (long k = f.k_min(); k <= f.k_max(); ++k)
    out.mode(k) = semigroup_integral_multiplier(k, t, params.nu) * f.mode(k);
  return out;
}

}  // namespace scgl
