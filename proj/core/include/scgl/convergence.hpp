#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scgl/config.hpp"

namespace scgl {

// Resolution ladder: level l runs (N_l, dt_l) against its own (2 N_l, dt_l/4)
// refinement on a shared noise path. Under parabolic scaling dt_l = c / N_l^2,
// so dt_{l+1} = dt_l / 4 automatically.
struct LadderSpec {
  int base_N = 64;
  int levels = 4;
  int samples = 20;  // Monte-Carlo samples per level
  bool parabolic = true;
  double c = 1.0;  // N^2 dt = c
};

struct LevelResult {
  int level = 0;
  int N = 0;
  double dt = 0.0;
  double rmse = 0.0;            // full fine-space difference (coarse state zero-padded)
  double stderr_rmse = 0.0;
  double rmse_projected = 0.0;  // difference restricted to the coarse mode set
  double tail_rms = 0.0;        // RMS of the fine solution's modes above the coarse cutoff
  int failures = 0;             // blow-up-flagged samples, excluded from the RMSE
  bool under_sampled = false;   // stderr/rmse >= 0.5
  bool valid = true;            // false when failures exceed 10% of the samples
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of log-space fit residuals
};

struct ConvergenceReport {
  Method method = Method::Esm;
  std::string setting_label;
  std::vector<LevelResult> levels;
  SlopeFit vs_dt;  // log rmse against log dt
  SlopeFit vs_N;   // log rmse against log N
  std::uint64_t seed = 0;
  bool nu_in_theory_range = true;
  double noise_r = 0.0;
  bool noise_in_theory_range = true;  // r >= 0
};

struct PairResult {
  double rmse = 0.0;            // || fine - pad(coarse) || in the fine space
  double stderr_rmse = 0.0;
  double rmse_projected = 0.0;  // || project(fine) - coarse || on the coarse mode set
  double tail_rms = 0.0;        // the gap between the two: fine modes above the cutoff
  int failures = 0;
  std::vector<double> squared_errors;  // per surviving sample, in sample order
};

// Monte-Carlo RMSE between the end-time solutions of cfg and its
// (2N, dt/4) refinement on one shared noise path. The difference is taken in
// the fine space (coarse state zero-padded), matching the reference
// experiments; the projected difference and the fine tail are reported
// alongside. Sample j consumes stream (cfg.seed, stream_base + j): results do
// not depend on the thread count. coupled = false breaks the shared path
// (used to check the variance reduction of coupling).
PairResult rmse_pair(const RunConfig& cfg, int samples, int threads,
                     std::uint64_t stream_base = 0, bool coupled = true);

ConvergenceReport run_ladder(const LadderSpec& spec, const RunConfig& cfg_template,
                             Method method, int threads);

// Ordinary least squares of ln y against ln x. Points must be positive;
// throws DegeneratePoints when all x coincide.
SlopeFit fit_slope(std::span<const std::pair<double, double>> points);

// Fixed-shape pairwise summation; the documented reduction order that makes
// Monte-Carlo aggregates independent of scheduling.
double pairwise_sum(std::span<const double> xs);

LadderSpec parse_ladder(const KeyValueMap& kv);
void ladder_to_key_values(const LadderSpec& spec, KeyValueMap& kv);

std::string setting_label(const ModelParams& p);

}  // namespace scgl
