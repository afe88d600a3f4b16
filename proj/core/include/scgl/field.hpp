#pragma once

#include <complex>
#include <vector>

#include "scgl/errors.hpp"

namespace scgl {

using Complex = std::complex<double>;

// Lowest retained mode at resolution N: -floor(N/2) for odd N,
// -floor(N/2)+1 for even N; the highest is always floor(N/2).
long mode_min(int N);
long mode_max(int N);

// Fourier coefficients a_k of a function on the unit torus, stored in mode
// order k = mode_min(N) .. mode_max(N) against the basis phi_k(x) = e^{i 2 pi k x}.
struct SpectralField {
  int N = 0;
  std::vector<Complex> coeffs;

  explicit SpectralField(int N_ = 0);

  long k_min() const { return mode_min(N); }
  long k_max() const { return mode_max(N); }
  bool has_mode(long k) const { return k >= k_min() && k <= k_max(); }

  Complex& mode(long k) { return coeffs[static_cast<std::size_t>(k - k_min())]; }
  const Complex& mode(long k) const { return coeffs[static_cast<std::size_t>(k - k_min())]; }

  // NaN/Inf scan; fields are not checked per write.
  bool finite() const;
};

// Complex samples u(x_j) at the uniform grid x_j = j/N, j = 0..N-1.
struct GridField {
  int N = 0;
  std::vector<Complex> values;

  explicit GridField(int N_ = 0);
};

// a_k = (1/N) sum_j values[j] e^{-i 2 pi k x_j}; exact inverse of to_grid.
SpectralField to_coeffs(const GridField& g);

// values[j] = sum_k coeffs[k] e^{i 2 pi k x_j}.
GridField to_grid(const SpectralField& f);

// Truncation to the mode set of N_target <= f.N.
SpectralField project(const SpectralField& f, int N_target);

// Zero-extension to the mode set of N_target >= f.N.
SpectralField pad(const SpectralField& f, int N_target);

double norm_l2(const SpectralField& f);
double norm_sobolev(const SpectralField& f, double alpha);  // (sum (1+lambda_k)^alpha |a_k|^2)^{1/2}
double norm_l2(const GridField& g);                         // ((1/N) sum |v_j|^2)^{1/2}
double norm_l4(const GridField& g);                         // ((1/N) sum |v_j|^4)^{1/4}

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& f);

}  // namespace scgl
