#include "scgl/noise.hpp"

#include <cmath>

#include "scgl/semigroup.hpp"

namespace scgl {

double variance_conv(long k, double dt, const NoiseSpec& spec) {
  const double qk = qk_value(spec, k);
  if (k == 0) return qk * dt;
  const double lam = laplacian_eigenvalue(k);
  return qk * (-std::expm1(-2.0 * lam * dt)) / (2.0 * lam);
}

ConvIncrement sample_conv_increment(RngStream& rng, int N, double dt, const NoiseSpec& spec) {
  ConvIncrement inc{N, dt, std::vector<Complex>(static_cast<std::size_t>(N))};
  const long k0 = mode_min(N);
  for (int i = 0; i < N; ++i) {
    const double sd = std::sqrt(variance_conv(k0 + i, dt, spec));
    const double re = sd * rng.next_normal();
    const double im = sd * rng.next_normal();
    inc.modes[static_cast<std::size_t>(i)] = Complex{re, im};
  }
  return inc;
}

BrownianIncrement sample_brownian_increment(RngStream& rng, int N, double dt,
                                            const NoiseSpec& spec) {
  BrownianIncrement inc{N, dt, std::vector<Complex>(static_cast<std::size_t>(N))};
  const long k0 = mode_min(N);
  for (int i = 0; i < N; ++i) {
    const double sd = std::sqrt(qk_value(spec, k0 + i) * dt);
    const double re = sd * rng.next_normal();
    const double im = sd * rng.next_normal();
    inc.modes[static_cast<std::size_t>(i)] = Complex{re, im};
  }
  return inc;
}

namespace {

template <typename Inc>
void check_fine_block(std::span<const Inc> fine) {
  if (fine.size() != 4) throw ShapeMismatch("couple_down expects exactly 4 fine increments");
  const int N_f = fine[0].N;
  const double dt_f = fine[0].dt;
  if (N_f % 2 != 0)
    throw ShapeMismatch("couple_down requires an even fine resolution (got " +
                        std::to_string(N_f) + ")");
  for (const Inc& inc : fine) {
    if (inc.N != N_f || inc.dt != dt_f)
      throw ShapeMismatch("couple_down requires four increments of one (N, dt)");
    if (inc.modes.size() != static_cast<std::size_t>(N_f))
      throw ShapeMismatch("couple_down: increment mode count does not match its resolution");
  }
}

}  // namespace

ConvIncrement couple_down(std::span<const ConvIncrement> fine, const ModelParams& params) {
  check_fine_block(fine);
  const int N = fine[0].N / 2;
  const double dt_f = fine[0].dt;
  ConvIncrement coarse{N, 4.0 * dt_f, std::vector<Complex>(static_cast<std::size_t>(N))};
  for (long k = mode_min(N); k <= mode_max(N); ++k) {
    Complex acc{0.0, 0.0};
    for (int j = 0; j < 4; ++j)
      acc += semigroup_multiplier(k, (3 - j) * dt_f, params.nu) * fine[static_cast<std::size_t>(j)].mode(k);
    coarse.mode(k) = acc;
  }
  return coarse;
}

BrownianIncrement couple_down(std::span<const BrownianIncrement> fine) {
  check_fine_block(fine);
  const int N = fine[0].N / 2;
  BrownianIncrement coarse{N, 4.0 * fine[0].dt, std::vector<Complex>(static_cast<std::size_t>(N))};
  for (long k = mode_min(N); k <= mode_max(N); ++k) {
    Complex acc{0.0, 0.0};
    for (int j = 0; j < 4; ++j) acc += fine[static_cast<std::size_t>(j)].mode(k);
    coarse.mode(k) = acc;
  }
  return coarse;
}

NoiseHierarchy::NoiseHierarchy(Kind kind, int base_N, double base_dt, int levels, NoiseSpec spec,
                               ModelParams params, RngStream stream)
    : kind_(kind), spec_(std::move(spec)), params_(params), stream_(stream) {
  if (levels < 1) throw ShapeMismatch("NoiseHierarchy requires at least one level");
  int N = base_N;
  double dt = base_dt;
  for (int l = 0; l < levels; ++l) {
    levels_.push_back(Level{N, dt});
    N *= 2;
    dt /= 4.0;
  }
  conv_.resize(static_cast<std::size_t>(levels));
  brownian_.resize(static_cast<std::size_t>(levels));
}

void NoiseHierarchy::advance() {
  const int L = levels();
  const Level finest = levels_.back();
  std::size_t count = 1;
  for (int l = 0; l < L - 1; ++l) count *= 4;

  if (kind_ == Kind::Conv) {
    auto& fine = conv_[static_cast<std::size_t>(L - 1)];
    fine.clear();
    for (std::size_t i = 0; i < count; ++i)
      fine.push_back(sample_conv_increment(stream_, finest.N, finest.dt, spec_));
    for (int l = L - 2; l >= 0; --l) {
      const auto& below = conv_[static_cast<std::size_t>(l + 1)];
      auto& here = conv_[static_cast<std::size_t>(l)];
      here.clear();
      for (std::size_t i = 0; i + 3 < below.size(); i += 4)
        here.push_back(couple_down(std::span<const ConvIncrement>(&below[i], 4), params_));
    }
  } else {
    auto& fine = brownian_[static_cast<std::size_t>(L - 1)];
    fine.clear();
    for (std::size_t i = 0; i < count; ++i)
      fine.push_back(sample_brownian_increment(stream_, finest.N, finest.dt, spec_));
    for (int l = L - 2; l >= 0; --l) {
      const auto& below = brownian_[static_cast<std::size_t>(l + 1)];
      auto& here = brownian_[static_cast<std::size_t>(l)];
      here.clear();
      for (std::size_t i = 0; i + 3 < below.size(); i += 4)
        here.push_back(couple_down(std::span<const BrownianIncrement>(&below[i], 4)));
    }
  }
}

std::span<const ConvIncrement> NoiseHierarchy::conv_block(int l) const {
  if (kind_ != Kind::Conv) throw ShapeMismatch("hierarchy holds Brownian increments");
  return conv_.at(static_cast<std::size_t>(l));
}

std::span<const BrownianIncrement> NoiseHierarchy::brownian_block(int l) const {
  if (kind_ != Kind::Brownian) throw ShapeMismatch("hierarchy holds convolution increments");
  return brownian_.at(static_cast<std::size_t>(l));
}

}  // namespace scgl
