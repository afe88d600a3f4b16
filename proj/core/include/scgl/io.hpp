#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "scgl/convergence.hpp"
#include "scgl/field.hpp"
#include "scgl/integrators.hpp"

namespace scgl {

// Binary field record: magic "SCGL", version u16, N u32, then N little-endian
// complex-double pairs in mode order mode_min(N) .. mode_max(N).
inline constexpr std::uint16_t kFieldFormatVersion = 1;

void write_field(std::ostream& out, const SpectralField& f);
SpectralField read_field(std::istream& in);
void write_field_file(const std::string& path, const SpectralField& f);
SpectralField read_field_file(const std::string& path);

// CSV export with columns k, re, im.
void write_field_csv(std::ostream& out, const SpectralField& f);

void write_diagnostics_csv(std::ostream& out, const Trajectory& traj);

// Report CSV columns: level, N, dt, rmse, stderr, failures.
void write_report_csv(std::ostream& out, const ConvergenceReport& report);

std::string report_summary_json(const ConvergenceReport& report);

// gnuplot companion for log-log inspection of a report CSV.
std::string report_gnuplot_script(const std::string& csv_name);

// Shortest decimal form that round-trips a double (%.17g trimmed).
std::string format_double(double x);

// FNV-1a 64-bit content fingerprint, hex-encoded.
std::string content_fingerprint(const std::string& content);

}  // namespace scgl
