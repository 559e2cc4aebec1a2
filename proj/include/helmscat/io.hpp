#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "helmscat/inversion.hpp"
#include "helmscat/medium.hpp"

namespace helmscat {

// All writers below are atomic: content goes to a temporary file in the
// target directory which is then renamed over the destination, so readers
// never observe a half-written file.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

// Trace CSV: header "omega,re,im", one row per band midpoint, every value
// printed with 17 significant digits (lossless double round trip).
void write_trace_csv(const std::filesystem::path& path, const ComplexTrace& trace);

// Sidecar JSON describing a trace CSV: role, band, geometry and ambient
// speed.  Conventionally stored next to the CSV with extension .json.
void write_trace_sidecar(const std::filesystem::path& path, const ComplexTrace& trace,
                         const AcquisitionGeometry& geometry, double c0);

struct LoadedTrace {
    ComplexTrace trace;
    AcquisitionGeometry geometry{};
    double c0 = 0.0;
};

// Read a trace CSV plus its sidecar (csv path with extension swapped to
// .json).  Validates the sample count against the sidecar band.
LoadedTrace read_trace(const std::filesystem::path& csv_path);

struct LoadedProfile {
    WaveSpeedProfile profile;
    double x0 = 0.0;
};

// Profile JSON: either the explicit form
//   { "c0": number, "x0": number, "jumps": [[x, c], ...] }
// or a preset
//   { "preset": "constant" | "linear" | "smooth-bump" | "staircase",
//     "params": { ... } }
// (see README for the per-preset parameters; the smooth presets carry their
// own discretization step and layer count).
LoadedProfile read_profile_json(const std::filesystem::path& path);
LoadedProfile profile_from_json_text(const std::string& text);
void write_profile_json(const std::filesystem::path& path,
                        const WaveSpeedProfile& profile, double x0);

// Reconstruction report JSON: recovered profile, layer description,
// intermediate sequences and diagnostics.
void write_report_json(const std::filesystem::path& path, const ReconstructionReport& report,
                       double x0);

// Step-plot-ready staircase CSV with header "x,c": two rows per jump (left
// and right value) plus a short tail after the last jump.
void write_staircase_csv(const std::filesystem::path& path,
                         const WaveSpeedProfile& profile, double x0);

} // namespace helmscat
