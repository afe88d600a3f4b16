#pragma once

#include <complex>

#include "scgl/config.hpp"
#include "scgl/field.hpp"

namespace scgl {

// Eigenvalue of -Laplace on the unit torus: lambda_k = (2 pi k)^2.
double laplacian_eigenvalue(long k);

// Fourier multiplier of e^{tA}, A = (1+i nu) Laplace: e^{-(1+i nu) lambda_k t}.
Complex semigroup_multiplier(long k, double t, double nu);

// Fourier multiplier of int_0^t e^{sA} ds:
// (1 - e^{-(1+i nu) lambda_k t}) / ((1+i nu) lambda_k) for k != 0, and t for k = 0.
Complex semigroup_integral_multiplier(long k, double t, double nu);

SpectralField semigroup_apply(const SpectralField& f, double t, const ModelParams& params);
SpectralField semigroup_integral_apply(const SpectralField& f, double t, const ModelParams& params);

}  // namespace scgl
