#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scgl/errors.hpp"

namespace scgl {

// Physical parameters of du = [(1+i nu) Lap u + R u - (1+i mu)|u|^2 u] dt + sigma dW
// on the unit torus.
struct ModelParams {
  double R = 1.0;      // linear gain, > 0
  double mu = 0.0;     // nonlinear dispersion
  double nu = 0.0;     // linear dispersion
  double sigma = 0.0;  // noise amplitude, >= 0
  double T = 1.0;      // final time, > 0

  // The convergence theory assumes |nu| <= sqrt(3); runs outside the range are
  // permitted but flagged in reports.
  bool nu_in_theory_range() const { return std::abs(nu) <= std::sqrt(3.0); }
};

enum class NoiseKind { Regular, White, Custom };

// Per-mode variance rule q_k of the driving complex noise.
//   Regular: q_0 = 1, q_k = |k|^(-1-2 eps)   (spatial regularity r = 0)
//   White:   q_k = 1 for all k               (r = -1/2)
//   Custom:  explicit mode -> q_k map
struct NoiseSpec {
  NoiseKind kind = NoiseKind::Regular;
  double r = 0.0;
  double epsilon = 5e-4;  // must lie in (0, 3/2)
  std::map<long, double> custom_qk;
};

double qk_value(const NoiseSpec& spec, long k);

enum class Method { Esm, ExpSm, Tam };

std::string method_name(Method m);
Method parse_method(const std::string& name);

// Initial condition. The reference experiments use Zero; PlaneWave and
// Constant exist for deterministic validation runs.
struct InitSpec {
  enum class Kind { Zero, Constant, PlaneWave };
  Kind kind = Kind::Zero;
  std::complex<double> value{0.0, 0.0};  // Constant
  long mode = 1;                         // PlaneWave
  double amplitude = 1.0;                // PlaneWave
};

struct RunConfig {
  ModelParams model;
  NoiseSpec noise;
  int N = 64;           // retained Fourier modes
  double dt = 1e-3;     // time step, in (0, 1)
  std::uint64_t seed = 0;
  Method method = Method::Esm;
  int record_every = 1;
  InitSpec init;
  bool dealias = false;  // evaluate the nonlinearity on a 2x zero-padded grid

  // Number of steps M = T/dt (validated to be integral).
  long steps() const { return std::lround(model.T / dt); }
};

// Flat key=value document; this map is the canonical exchange format between
// config files, CLI overrides, and run manifests.
using KeyValueMap = std::map<std::string, std::string>;

// Reads a flat key=value file ('#' comments) or a run-manifest JSON (detected
// by a leading '{'), whose "config" object holds the same keys.
KeyValueMap load_key_values(const std::string& path);

KeyValueMap default_key_values();

// Applies `key=value` override strings on top of `kv` (malformed -> ParseError).
void apply_overrides(KeyValueMap& kv, const std::vector<std::string>& overrides);

RunConfig parse_run_config(const KeyValueMap& kv);

// File + SCGLE_SEED environment override + explicit overrides, validated.
// Precedence: file < SCGLE_SEED < overrides.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

// Throws ValidationError naming the offending field and bound.
void validate(const RunConfig& cfg);

// Canonical flat form; parse_run_config(to_key_values(c)) reproduces c exactly.
KeyValueMap to_key_values(const RunConfig& cfg);

}  // namespace scgl
