#include "scgl/convergence.hpp"

#include <cmath>
#include <cstdlib>

#include "scgl/field.hpp"
#include "scgl/integrators.hpp"
#include "scgl/noise.hpp"
#include "scgl/parallel.hpp"

namespace scgl {
namespace {

// Stream-id layout: sample j of level l draws from (l+1) << 32 | j; the
// decoupled-path variant of a sample adds kDecoupledOffset for its coarse run.
constexpr std::uint64_t kLevelShift = 32;
constexpr std::uint64_t kDecoupledOffset = 1ull << 62;

struct SampleOutcome {
  bool failed = false;
  double proj_sq = 0.0;  // squared difference on the coarse mode set
  double tail_sq = 0.0;  // squared fine content above the coarse cutoff
};

RunConfig refine(const RunConfig& coarse) {
  RunConfig fine = coarse;
  fine.N = 2 * coarse.N;
  fine.dt = coarse.dt / 4.0;
  if (fine.init.kind == InitSpec::Kind::PlaneWave) fine.init.mode = coarse.init.mode;
  return fine;
}

SolverState step_once(const SolverState& state, Method method, const ConvIncrement& conv,
                      const BrownianIncrement& brown, const RunConfig& cfg) {
  switch (method) {
    case Method::Esm:
      return esm_step(state, conv, cfg);
    case Method::ExpSm:
      return expsm_step(state, brown, cfg);
    case Method::Tam:
      return tam_step(state, conv, cfg);
  }
  throw Error("unreachable method");
}

// Advances the coarse/fine pair through one shared path; the four fine
// increments of every coarse step are aggregated with couple_down for the
// coarse update, so the coarse run sees the exact coarse-increment law.
SampleOutcome run_pair_sample(const RunConfig& coarse_cfg, const RunConfig& fine_cfg,
                              std::uint64_t stream_id, bool coupled) {
  const bool brownian = coarse_cfg.method == Method::ExpSm;
  RngStream fine_stream(coarse_cfg.seed, stream_id);
  RngStream coarse_stream(coarse_cfg.seed, stream_id + kDecoupledOffset);

  SolverState coarse{initial_field(coarse_cfg), 0, 0.0};
  SolverState fine{initial_field(fine_cfg), 0, 0.0};
  const long M = coarse_cfg.steps();

  SampleOutcome out;
  try {
    for (long m = 0; m < M; ++m) {
      ConvIncrement coarse_conv;
      BrownianIncrement coarse_brown;
      if (brownian) {
        std::array<BrownianIncrement, 4> block;
        for (int j = 0; j < 4; ++j) {
          block[static_cast<std::size_t>(j)] =
              sample_brownian_increment(fine_stream, fine_cfg.N, fine_cfg.dt, fine_cfg.noise);
          fine = expsm_step(fine, block[static_cast<std::size_t>(j)], fine_cfg);
          if (!(norm_l2(fine.field) <= kBlowupThreshold))
            throw DiagnosticBlowup(fine.step_index, norm_l2(fine.field));
        }
        coarse_brown = coupled ? couple_down(std::span<const BrownianIncrement>(block))
                               : sample_brownian_increment(coarse_stream, coarse_cfg.N,
                                                           coarse_cfg.dt, coarse_cfg.noise);
      } else {
        std::array<ConvIncrement, 4> block;
        for (int j = 0; j < 4; ++j) {
          block[static_cast<std::size_t>(j)] =
              sample_conv_increment(fine_stream, fine_cfg.N, fine_cfg.dt, fine_cfg.noise);
          fine = step_once(fine, fine_cfg.method, block[static_cast<std::size_t>(j)],
                           coarse_brown, fine_cfg);
          if (!(norm_l2(fine.field) <= kBlowupThreshold))
            throw DiagnosticBlowup(fine.step_index, norm_l2(fine.field));
        }
        coarse_conv = coupled
                          ? couple_down(std::span<const ConvIncrement>(block), coarse_cfg.model)
                          : sample_conv_increment(coarse_stream, coarse_cfg.N, coarse_cfg.dt,
                                                  coarse_cfg.noise);
      }
      coarse = step_once(coarse, coarse_cfg.method, coarse_conv, coarse_brown, coarse_cfg);
      if (!(norm_l2(coarse.field) <= kBlowupThreshold))
        throw DiagnosticBlowup(coarse.step_index, norm_l2(coarse.field));
    }
  } catch (const DiagnosticBlowup&) {
    out.failed = true;
    return out;
  }

  const SpectralField diff = project(fine.field, coarse_cfg.N) - coarse.field;
  const double e = norm_l2(diff);
  out.proj_sq = e * e;
  const double fine_total = norm_l2(fine.field);
  const double fine_kept = norm_l2(project(fine.field, coarse_cfg.N));
  out.tail_sq = std::max(0.0, fine_total * fine_total - fine_kept * fine_kept);
  return out;
}

PairResult aggregate(std::span<const SampleOutcome> outcomes) {
  PairResult res;
  std::vector<double> sq;
  std::vector<double> proj;
  std::vector<double> tails;
  for (const SampleOutcome& o : outcomes) {
    if (o.failed) {
      ++res.failures;
      continue;
    }
    // The fine-space squared difference splits exactly into the part on the
    // coarse mode set and the fine-only tail.
    sq.push_back(o.proj_sq + o.tail_sq);
    proj.push_back(o.proj_sq);
    tails.push_back(o.tail_sq);
  }
  res.squared_errors = sq;
  if (sq.empty()) return res;

  const double n = static_cast<double>(sq.size());
  const double mean_sq = pairwise_sum(sq) / n;
  res.rmse = std::sqrt(mean_sq);
  res.rmse_projected = std::sqrt(pairwise_sum(proj) / n);
  res.tail_rms = std::sqrt(pairwise_sum(tails) / n);

  if (sq.size() > 1 && mean_sq > 0.0) {
    std::vector<double> dev(sq.size());
    for (std::size_t i = 0; i < sq.size(); ++i) {
      const double d = sq[i] - mean_sq;
      dev[i] = d * d;
    }
    const double var_sq = pairwise_sum(dev) / (n - 1.0);
    // Standard error of the mean squared error, pushed through the square root.
    res.stderr_rmse = std::sqrt(var_sq / n) / (2.0 * res.rmse);
  }
  return res;
}

}  // namespace

double pairwise_sum(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  if (xs.size() == 1) return xs[0];
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

PairResult rmse_pair(const RunConfig& cfg, int samples, int threads, std::uint64_t stream_base,
                     bool coupled) {
  const RunConfig fine_cfg = refine(cfg);
  std::vector<SampleOutcome> outcomes(static_cast<std::size_t>(samples));
  parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t j) {
    outcomes[j] = run_pair_sample(cfg, fine_cfg, stream_base + j, coupled);
  });
  return aggregate(outcomes);
}

SlopeFit fit_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2)
    throw InsufficientLevels("slope fit requires at least 2 points, got " +
                             std::to_string(points.size()));
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(points.size());
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0))
      throw DegeneratePoints("slope fit requires strictly positive coordinates");
    const double lx = std::log(x);
    const double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-14 * std::max(1.0, n * sxx))
    throw DegeneratePoints("slope fit is degenerate: all abscissae coincide");
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double rss = 0.0;
  for (const auto& [x, y] : points) {
    const double r = std::log(y) - (fit.intercept + fit.slope * std::log(x));
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

std::string setting_label(const ModelParams& p) {
  if (p.mu == 1.0 && p.nu == 1.0) return "stable";
  if (p.mu == -3.0 && p.nu == 3.0) return "defect-turbulence";
  return "custom";
}

LadderSpec parse_ladder(const KeyValueMap& kv) {
  LadderSpec spec;
  auto get = [&kv](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (const auto* v = get("ladder.base_n")) spec.base_N = std::atoi(v->c_str());
  if (const auto* v = get("ladder.levels")) spec.levels = std::atoi(v->c_str());
  if (const auto* v = get("ladder.samples")) spec.samples = std::atoi(v->c_str());
  if (const auto* v = get("ladder.parabolic")) spec.parabolic = (*v == "true" || *v == "1");
  if (const auto* v = get("ladder.c")) spec.c = std::strtod(v->c_str(), nullptr);
  if (spec.base_N < 2) throw ValidationError("ladder.base_n must be >= 2");
  if (spec.levels < 2) throw InsufficientLevels("ladder.levels must be >= 2");
  if (spec.samples < 1) throw ValidationError("ladder.samples must be >= 1");
  if (!(spec.c > 0.0)) throw ValidationError("ladder.c must be > 0");
  return spec;
}

void ladder_to_key_values(const LadderSpec& spec, KeyValueMap& kv) {
  kv["ladder.base_n"] = std::to_string(spec.base_N);
  kv["ladder.levels"] = std::to_string(spec.levels);
  kv["ladder.samples"] = std::to_string(spec.samples);
  kv["ladder.parabolic"] = spec.parabolic ? "true" : "false";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", spec.c);
  kv["ladder.c"] = buf;
}

ConvergenceReport run_ladder(const LadderSpec& spec, const RunConfig& cfg_template, Method method,
                             int threads) {
  if (spec.levels < 2) throw InsufficientLevels("a convergence ladder needs at least 2 levels");

  ConvergenceReport report;
  report.method = method;
  report.setting_label = setting_label(cfg_template.model);
  report.seed = cfg_template.seed;
  report.nu_in_theory_range = cfg_template.model.nu_in_theory_range();
  report.noise_r = cfg_template.noise.r;
  report.noise_in_theory_range = cfg_template.noise.r >= 0.0;

  for (int l = 0; l < spec.levels; ++l) {
    RunConfig cfg = cfg_template;
    cfg.method = method;
    cfg.N = spec.base_N << l;
    cfg.dt = spec.parabolic ? spec.c / (static_cast<double>(cfg.N) * static_cast<double>(cfg.N))
                            : cfg_template.dt / std::pow(4.0, l);
    validate(cfg);

    const std::uint64_t base = static_cast<std::uint64_t>(l + 1) << kLevelShift;
    const PairResult pair = rmse_pair(cfg, spec.samples, threads, base, true);

    LevelResult lr;
    lr.level = l;
    lr.N = cfg.N;
    lr.dt = cfg.dt;
    lr.rmse = pair.rmse;
    lr.stderr_rmse = pair.stderr_rmse;
    lr.rmse_projected = pair.rmse_projected;
    lr.tail_rms = pair.tail_rms;
    lr.failures = pair.failures;
    lr.under_sampled = pair.rmse > 0.0 && pair.stderr_rmse / pair.rmse >= 0.5;
    lr.valid = pair.failures * 10 <= spec.samples;  // > 10% failures invalidates the level
    report.levels.push_back(lr);
  }

  std::vector<std::pair<double, double>> pts_dt, pts_N;
  for (const LevelResult& lr : report.levels) {
    if (!lr.valid || !(lr.rmse > 0.0)) continue;
    pts_dt.emplace_back(lr.dt, lr.rmse);
    pts_N.emplace_back(static_cast<double>(lr.N), lr.rmse);
  }
  if (pts_dt.size() >= 2) {
    report.vs_dt = fit_slope(pts_dt);
    report.vs_N = fit_slope(pts_N);
  }
  return report;
}

}  // namespace scgl
