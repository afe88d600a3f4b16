#include "scgl/field.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace scgl {
namespace {

// FFTW planning is not thread-safe and FFTW_MEASURE is not deterministic, so
// plans are cached per (N, sign) under a lock and created with FFTW_ESTIMATE.
// FFTW_UNALIGNED keeps the new-array execute valid for plain vector storage.
class PlanCache {
public:
  fftw_plan get(int N, int sign) {
    std::scoped_lock lock(mutex_);
    auto key = std::make_pair(N, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<Complex> in(static_cast<std::size_t>(N));
    std::vector<Complex> out(static_cast<std::size_t>(N));
    fftw_plan p = fftw_plan_dft_1d(N, reinterpret_cast<fftw_complex*>(in.data()),
                                   reinterpret_cast<fftw_complex*>(out.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void run_fft(int N, int sign, const std::vector<Complex>& in, std::vector<Complex>& out) {
  fftw_plan p = plan_cache().get(N, sign);
  out.resize(static_cast<std::size_t>(N));
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

// FFT bin of mode k at resolution N.
std::size_t bin_of_mode(long k, int N) {
  long b = k % N;
  if (b < 0) b += N;
  return static_cast<std::size_t>(b);
}

}  // namespace

long mode_min(int N) { return (N % 2 == 0) ? -(N / 2) + 1 : -(N / 2); }
long mode_max(int N) { return N / 2; }

SpectralField::SpectralField(int N_) : N(N_), coeffs(static_cast<std::size_t>(N_)) {}

bool SpectralField::finite() const {
  for (const Complex& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

GridField::GridField(int N_) : N(N_), values(static_cast<std::size_t>(N_)) {}

SpectralField to_coeffs(const GridField& g) {
  SpectralField f(g.N);
  std::vector<Complex> bins;
  run_fft(g.N, FFTW_FORWARD, g.values, bins);
  const double scale = 1.0 / g.N;
  const long k0 = f.k_min();
  for (int i = 0; i < f.N; ++i)
    f.coeffs[static_cast<std::size_t>(i)] = scale * bins[bin_of_mode(k0 + i, g.N)];
  return f;
}

GridField to_grid(const SpectralField& f) {
  std::vector<Complex> bins(static_cast<std::size_t>(f.N), Complex{0.0, 0.0});
  const long k0 = f.k_min();
  for (int i = 0; i < f.N; ++i)
    bins[bin_of_mode(k0 + i, f.N)] = f.coeffs[static_cast<std::size_t>(i)];
  GridField g(f.N);
  run_fft(f.N, FFTW_BACKWARD, bins, g.values);
  return g;
}

SpectralField project(const SpectralField& f, int N_target) {
  if (N_target > f.N)
    throw InvalidResolution("project: target resolution " + std::to_string(N_target) +
                            " exceeds field resolution " + std::to_string(f.N));
  SpectralField out(N_target);
  for (long k = out.k_min(); k <= out.k_max(); ++k) out.mode(k) = f.mode(k);
  return out;
}

SpectralField pad(const SpectralField& f, int N_target) {
  if (N_target < f.N)
    throw InvalidResolution("pad: target resolution " + std::to_string(N_target) +
                            " is below field resolution " + std::to_string(f.N));
  SpectralField out(N_target);
  for (long k = f.k_min(); k <= f.k_max(); ++k) out.mode(k) = f.mode(k);
  return out;
}

double norm_l2(const SpectralField& f) {
  double s = 0.0;
  for (const Complex& c : f.coeffs) s += std::norm(c);
  return std::sqrt(s);
}

double norm_sobolev(const SpectralField& f, double alpha) {
  double s = 0.0;
  const long k0 = f.k_min();
  for (int i = 0; i < f.N; ++i) {
    const double lam = 4.0 * M_PI * M_PI * static_cast<double>(k0 + i) * static_cast<double>(k0 + i);
    s += std::pow(1.0 + lam, alpha) * std::norm(f.coeffs[static_cast<std::size_t>(i)]);
  }
  return std::sqrt(s);
}

double norm_l2(const GridField& g) {
  double s = 0.0;
  for (const Complex& v : g.values) s += std::norm(v);
  return std::sqrt(s / g.N);
}

double norm_l4(const GridField& g) {
  double s = 0.0;
  for (const Complex& v : g.values) {
    const double a = std::norm(v);
    s += a * a;
  }
  return std::pow(s / g.N, 0.25);
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  if (a.N != b.N) throw ResolutionMismatch("field addition requires equal resolutions");
  SpectralField out(a.N);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = a.coeffs[i] + b.coeffs[i];
  return out;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  if (a.N != b.N) throw ResolutionMismatch("field subtraction requires equal resolutions");
  SpectralField out(a.N);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = a.coeffs[i] - b.coeffs[i];
  return out;
}

SpectralField operator*(double s, const SpectralField& f) {
  SpectralField out(f.N);
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = s * f.coeffs[i];
  return out;
}

}  // namespace scgl
