#include "scgl/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace scgl {

static_assert(std::endian::native == std::endian::little,
              "field serialization assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'S', 'C', 'G', 'L'};

template <typename T>
void write_raw(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T read_raw(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw IoError("unexpected end of field record");
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // Prefer the shortest representation that still round-trips.
  for (int prec = 1; prec <= 16; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, x);
    double back = 0.0;
    std::sscanf(shorter, "%lf", &back);
    if (back == x) return shorter;
  }
  return buf;
}

void write_field(std::ostream& out, const SpectralField& f) {
  out.write(kMagic, sizeof kMagic);
  write_raw(out, kFieldFormatVersion);
  write_raw(out, static_cast<std::uint32_t>(f.N));
  for (const Complex& c : f.coeffs) {
    write_raw(out, c.real());
    write_raw(out, c.imag());
  }
  if (!out) throw IoError("failed writing field record");
}

SpectralField read_field(std::istream& in) {
  char magic[4];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw IoError("not a field record: bad magic");
  const auto version = read_raw<std::uint16_t>(in);
  if (version != kFieldFormatVersion)
    throw IoError("unsupported field record version " + std::to_string(version));
  const auto n = read_raw<std::uint32_t>(in);
  SpectralField f(static_cast<int>(n));
  for (Complex& c : f.coeffs) {
    const double re = read_raw<double>(in);
    const double im = read_raw<double>(in);
    c = Complex{re, im};
  }
  return f;
}

void write_field_file(const std::string& path, const SpectralField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_field(out, f);
}

SpectralField read_field_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_field(in);
}

void write_field_csv(std::ostream& out, const SpectralField& f) {
  out << "k,re,im\n";
  for (long k = f.k_min(); k <= f.k_max(); ++k)
    out << k << ',' << format_double(f.mode(k).real()) << ',' << format_double(f.mode(k).imag())
        << '\n';
}

void write_diagnostics_csv(std::ostream& out, const Trajectory& traj) {
  out << "step,t,l2,l4\n";
  for (const StepDiagnostics& d : traj.diagnostics)
    out << d.step << ',' << format_double(d.t) << ',' << format_double(d.l2) << ','
        << format_double(d.l4) << '\n';
}

void write_report_csv(std::ostream& out, const ConvergenceReport& report) {
  out << "level,N,dt,rmse,stderr,failures\n";
  for (const LevelResult& lr : report.levels)
    out << lr.level << ',' << lr.N << ',' << format_double(lr.dt) << ',' << format_double(lr.rmse)
        << ',' << format_double(lr.stderr_rmse) << ',' << lr.failures << '\n';
}

std::string report_summary_json(const ConvergenceReport& report) {
  nlohmann::ordered_json j;
  j["method"] = method_name(report.method);
  j["setting"] = report.setting_label;
  j["seed"] = report.seed;
  j["slope"] = report.vs_dt.slope;
  j["intercept"] = report.vs_dt.intercept;
  j["residual"] = report.vs_dt.residual;
  j["alpha_hat"] = -report.vs_N.slope;
  j["beta_hat"] = report.vs_dt.slope;
  j["flags"]["nu_in_theory_range"] = report.nu_in_theory_range;
  j["flags"]["noise_r"] = report.noise_r;
  j["flags"]["noise_in_theory_range"] = report.noise_in_theory_range;
  j["levels"] = nlohmann::ordered_json::array();
  for (const LevelResult& lr : report.levels) {
    nlohmann::ordered_json lv;
    lv["level"] = lr.level;
    lv["N"] = lr.N;
    lv["dt"] = lr.dt;
    lv["rmse"] = lr.rmse;
    lv["stderr"] = lr.stderr_rmse;
    lv["rmse_projected"] = lr.rmse_projected;
    lv["tail_rms"] = lr.tail_rms;
    lv["failures"] = lr.failures;
    lv["under_sampled"] = lr.under_sampled;
    lv["valid"] = lr.valid;
    j["levels"].push_back(lv);
  }
  return j.dump(2) + "\n";
}

std::string report_gnuplot_script(const std::string& csv_name) {
  std::ostringstream out;
  out << "set logscale xy\n"
      << "set datafile separator ','\n"
      << "set xlabel 'dt'\n"
      << "set ylabel 'rmse'\n"
      << "set key left top\n"
      << "plot '" << csv_name << "' every ::1 using 3:4:5 with yerrorlines title 'rmse'\n";
  return out.str();
}

std::string content_fingerprint(const std::string& content) {
  // FNV-1a, 64 bit.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : content) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace scgl
