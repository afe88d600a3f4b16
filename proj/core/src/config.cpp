#include "scgl/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "scgl/field.hpp"

namespace scgl {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double parse_double(const KeyValueMap& kv, const std::string& key, double fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  const std::string v = trim(it->second);
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ParseError("key '" + key + "': cannot parse '" + v + "' as a real number");
  return x;
}

long parse_long(const KeyValueMap& kv, const std::string& key, long fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  const std::string v = trim(it->second);
  char* end = nullptr;
  long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ParseError("key '" + key + "': cannot parse '" + v + "' as an integer");
  return x;
}

std::uint64_t parse_u64(const KeyValueMap& kv, const std::string& key, std::uint64_t fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  const std::string v = trim(it->second);
  char* end = nullptr;
  unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ParseError("key '" + key + "': cannot parse '" + v + "' as an unsigned integer");
  return static_cast<std::uint64_t>(x);
}

bool parse_bool(const KeyValueMap& kv, const std::string& key, bool fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  const std::string v = lower(trim(it->second));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ParseError("key '" + key + "': cannot parse '" + it->second + "' as a boolean");
}

std::string format_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

KeyValueMap kv_from_manifest_json(const std::string& text, const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.contains("config") || !j["config"].is_object())
    throw ParseError(path + ": manifest JSON lacks a \"config\" object");
  KeyValueMap kv;
  for (auto& [key, value] : j["config"].items()) {
    if (value.is_string())
      kv[key] = value.get<std::string>();
    else
      kv[key] = value.dump();
  }
  return kv;
}

}  // namespace

double qk_value(const NoiseSpec& spec, long k) {
  switch (spec.kind) {
    case NoiseKind::Regular:
      if (k == 0) return 1.0;
      return std::pow(static_cast<double>(std::labs(k)), -1.0 - 2.0 * spec.epsilon);
    case NoiseKind::White:
      return 1.0;
    case NoiseKind::Custom: {
      auto it = spec.custom_qk.find(k);
      if (it == spec.custom_qk.end())
        throw MissingMode("custom q_k map lacks mode k=" + std::to_string(k));
      return it->second;
    }
  }
  throw Error("unreachable noise kind");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Esm:
      return "esm";
    case Method::ExpSm:
      return "expsm";
    case Method::Tam:
      return "tam";
  }
  throw Error("unreachable method");
}

Method parse_method(const std::string& name) {
  const std::string v = lower(trim(name));
  if (v == "esm") return Method::Esm;
  if (v == "expsm") return Method::ExpSm;
  if (v == "tam") return Method::Tam;
  throw ParseError("unknown method '" + name + "' (expected esm, expsm, or tam)");
}

KeyValueMap load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();

  // Manifests are JSON documents carrying the same flat keys under "config".
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return kv_from_manifest_json(text, path);
    break;
  }

  KeyValueMap kv;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw ParseError(path + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = value;
  }
  return kv;
}

KeyValueMap default_key_values() {
  RunConfig cfg;
  cfg.model.R = 4096.0;
  cfg.model.mu = 1.0;
  cfg.model.nu = 1.0;
  cfg.model.sigma = 64.0;
  cfg.model.T = 0.000244140625;  // 2^-12
  cfg.noise.kind = NoiseKind::Regular;
  cfg.noise.r = 0.0;
  cfg.noise.epsilon = 5e-4;
  cfg.N = 128;
  cfg.dt = 0.0000152587890625;  // 2^-16
  cfg.seed = 20240901;
  cfg.method = Method::Esm;
  cfg.record_every = 1;
  return to_key_values(cfg);
}

void apply_overrides(KeyValueMap& kv, const std::vector<std::string>& overrides) {
  for (const std::string& o : overrides) {
    const std::size_t eq = o.find('=');
    if (eq == std::string::npos)
      throw ParseError("override '" + o + "' is not of the form key=value");
    const std::string key = trim(o.substr(0, eq));
    if (key.empty()) throw ParseError("override '" + o + "' has an empty key");
    kv[key] = trim(o.substr(eq + 1));
  }
}

namespace {

// Typos in key names are errors, not silently ignored settings.
void check_known_keys(const KeyValueMap& kv) {
  static const std::set<std::string> known{
      "model.R",        "model.mu",        "model.nu",       "model.sigma",
      "model.T",        "noise.kind",      "noise.r",        "noise.epsilon",
      "run.N",          "run.dt",          "run.seed",       "run.method",
      "run.record_every", "run.dealias",   "init.kind",      "init.re",
      "init.im",        "init.mode",       "init.amplitude", "ladder.base_n",
      "ladder.levels",  "ladder.samples",  "ladder.parabolic", "ladder.c"};
  for (const auto& [key, value] : kv) {
    if (known.count(key) != 0) continue;
    if (key.rfind("noise.qk.", 0) == 0) continue;
    throw ParseError("unknown configuration key '" + key + "'");
  }
}

}  // namespace

RunConfig parse_run_config(const KeyValueMap& kv) {
  check_known_keys(kv);
  RunConfig cfg;
  cfg.model.R = parse_double(kv, "model.R", cfg.model.R);
  cfg.model.mu = parse_double(kv, "model.mu", cfg.model.mu);
  cfg.model.nu = parse_double(kv, "model.nu", cfg.model.nu);
  cfg.model.sigma = parse_double(kv, "model.sigma", cfg.model.sigma);
  cfg.model.T = parse_double(kv, "model.T", cfg.model.T);

  if (auto it = kv.find("noise.kind"); it != kv.end()) {
    const std::string v = lower(trim(it->second));
    if (v == "regular")
      cfg.noise.kind = NoiseKind::Regular;
    else if (v == "white")
      cfg.noise.kind = NoiseKind::White;
    else if (v == "custom")
      cfg.noise.kind = NoiseKind::Custom;
    else
      throw ParseError("noise.kind: unknown value '" + it->second + "'");
  }
  cfg.noise.r = parse_double(kv, "noise.r", cfg.noise.kind == NoiseKind::White ? -0.5 : 0.0);
  cfg.noise.epsilon = parse_double(kv, "noise.epsilon", cfg.noise.epsilon);
  for (const auto& [key, value] : kv) {
    if (key.rfind("noise.qk.", 0) != 0) continue;
    const std::string mode_str = key.substr(9);
    char* end = nullptr;
    long k = std::strtol(mode_str.c_str(), &end, 10);
    if (end == mode_str.c_str() || *end != '\0')
      throw ParseError("key '" + key + "': bad mode index");
    KeyValueMap one{{key, value}};
    cfg.noise.custom_qk[k] = parse_double(one, key, 0.0);
  }
  if (cfg.noise.kind == NoiseKind::White) cfg.noise.r = -0.5;

  cfg.N = static_cast<int>(parse_long(kv, "run.N", cfg.N));
  cfg.dt = parse_double(kv, "run.dt", cfg.dt);
  cfg.seed = parse_u64(kv, "run.seed", cfg.seed);
  if (auto it = kv.find("run.method"); it != kv.end()) cfg.method = parse_method(it->second);
  cfg.record_every = static_cast<int>(parse_long(kv, "run.record_every", cfg.record_every));
  cfg.dealias = parse_bool(kv, "run.dealias", cfg.dealias);

  if (auto it = kv.find("init.kind"); it != kv.end()) {
    const std::string v = lower(trim(it->second));
    if (v == "zero")
      cfg.init.kind = InitSpec::Kind::Zero;
    else if (v == "constant")
      cfg.init.kind = InitSpec::Kind::Constant;
    else if (v == "plane_wave")
      cfg.init.kind = InitSpec::Kind::PlaneWave;
    else
      throw ParseError("init.kind: unknown value '" + it->second + "'");
  }
  cfg.init.value = Complex(parse_double(kv, "init.re", cfg.init.value.real()),
                           parse_double(kv, "init.im", cfg.init.value.imag()));
  cfg.init.mode = parse_long(kv, "init.mode", cfg.init.mode);
  cfg.init.amplitude = parse_double(kv, "init.amplitude", cfg.init.amplitude);

  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  KeyValueMap kv = load_key_values(path);
  if (const char* env_seed = std::getenv("SCGLE_SEED"); env_seed != nullptr)
    kv["run.seed"] = env_seed;
  apply_overrides(kv, overrides);
  return parse_run_config(kv);
}

void validate(const RunConfig& cfg) {
  if (!(cfg.model.R > 0.0)) throw ValidationError("model.R must be > 0");
  if (!(cfg.model.T > 0.0)) throw ValidationError("model.T must be > 0");
  if (!(cfg.model.sigma >= 0.0)) throw ValidationError("model.sigma must be >= 0");
  if (!(cfg.dt > 0.0)) throw ValidationError("run.dt must be > 0");
  if (!(cfg.dt < 1.0)) throw ValidationError("run.dt must be < 1");
  if (cfg.N < 1) throw ValidationError("run.N must be >= 1");
  if (cfg.record_every < 1) throw ValidationError("run.record_every must be >= 1");

  const double m_real = cfg.model.T / cfg.dt;
  const double m_round = std::round(m_real);
  if (m_round < 1.0 || std::abs(m_real - m_round) > 1e-9 * m_real)
    throw ValidationError("model.T / run.dt = " + format_num(m_real) +
                          " is not an integral step count (relative tolerance 1e-9)");

  if (!(cfg.noise.epsilon > 0.0 && cfg.noise.epsilon < 1.5))
    throw ValidationError("noise.epsilon must lie in (0, 3/2)");
  if (cfg.noise.kind == NoiseKind::Regular && cfg.noise.r != 0.0)
    throw ValidationError("noise.r must be 0 for regular noise");
  if (cfg.noise.kind == NoiseKind::Custom) {
    if (cfg.noise.custom_qk.empty())
      throw ValidationError("custom noise requires at least one noise.qk.<k> entry");
    for (const auto& [k, q] : cfg.noise.custom_qk)
      if (!(q > 0.0))
        throw ValidationError("noise.qk." + std::to_string(k) + " must be > 0");
  }

  if (cfg.init.kind == InitSpec::Kind::PlaneWave) {
    if (cfg.init.mode < mode_min(cfg.N) || cfg.init.mode > mode_max(cfg.N))
      throw ValidationError("init.mode " + std::to_string(cfg.init.mode) +
                            " lies outside the retained mode set of run.N");
  }
}

KeyValueMap to_key_values(const RunConfig& cfg) {
  KeyValueMap kv;
  kv["model.R"] = format_num(cfg.model.R);
  kv["model.mu"] = format_num(cfg.model.mu);
  kv["model.nu"] = format_num(cfg.model.nu);
  kv["model.sigma"] = format_num(cfg.model.sigma);
  kv["model.T"] = format_num(cfg.model.T);
  switch (cfg.noise.kind) {
    case NoiseKind::Regular:
      kv["noise.kind"] = "regular";
      break;
    case NoiseKind::White:
      kv["noise.kind"] = "white";
      break;
    case NoiseKind::Custom:
      kv["noise.kind"] = "custom";
      break;
  }
  kv["noise.r"] = format_num(cfg.noise.r);
  kv["noise.epsilon"] = format_num(cfg.noise.epsilon);
  for (const auto& [k, q] : cfg.noise.custom_qk)
    kv["noise.qk." + std::to_string(k)] = format_num(q);
  kv["run.N"] = std::to_string(cfg.N);
  kv["run.dt"] = format_num(cfg.dt);
  kv["run.seed"] = std::to_string(cfg.seed);
  kv["run.method"] = method_name(cfg.method);
  kv["run.record_every"] = std::to_string(cfg.record_every);
  kv["run.dealias"] = cfg.dealias ? "true" : "false";
  switch (cfg.init.kind) {
    case InitSpec::Kind::Zero:
      kv["init.kind"] = "zero";
      break;
    case InitSpec::Kind::Constant:
      kv["init.kind"] = "constant";
      kv["init.re"] = format_num(cfg.init.value.real());
      kv["init.im"] = format_num(cfg.init.value.imag());
      break;
    case InitSpec::Kind::PlaneWave:
      kv["init.kind"] = "plane_wave";
      kv["init.mode"] = std::to_string(cfg.init.mode);
      kv["init.amplitude"] = format_num(cfg.init.amplitude);
      break;
  }
  return kv;
}

}  // namespace scgl
