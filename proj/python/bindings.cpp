#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>
#include <vector>

#include "helmscat/forward.hpp"
#include "helmscat/inversion.hpp"
#include "helmscat/medium.hpp"
#include "helmscat/version.hpp"

namespace py = pybind11;
using namespace helmscat;

namespace {

WaveSpeedProfile make_profile(double c0, const std::vector<std::pair<double, double>>& jumps) {
    std::vector<Jump> js;
    js.reserve(jumps.size());
    for (const auto& [x, c] : jumps)
        js.push_back({x, c});
    return WaveSpeedProfile(c0, std::move(js));
}

std::vector<std::pair<double, double>> profile_jumps(const WaveSpeedProfile& p) {
    std::vector<std::pair<double, double>> out;
    out.reserve(p.jumps().size());
    for (const Jump& j : p.jumps())
        out.emplace_back(j.x, j.c);
    return out;
}

const char* role_string(TraceRole role) {
    return role == TraceRole::MeasuredData ? "measured-d" : "reflection-R";
}

} // namespace

// ValidationError derives std::invalid_argument and InversionError derives
// std::runtime_error, so the default translation already raises ValueError
// and RuntimeError on the Python side.
PYBIND11_MODULE(_core, m) {
    m.doc() = "Forward and inverse scattering for the 1D Helmholtz equation with "
              "piecewise-constant wave speed";
    m.attr("__version__") = kVersion;

    py::class_<WaveSpeedProfile>(m, "WaveSpeedProfile",
                                 "Piecewise-constant wave speed: ambient speed c0 left of "
                                 "every jump, then (position, speed) jumps in increasing x")
        .def(py::init(&make_profile), py::arg("c0"),
             py::arg("jumps") = std::vector<std::pair<double, double>>{})
        .def_property_readonly("c0", &WaveSpeedProfile::c0)
        .def_property_readonly("jumps", &profile_jumps)
        .def("at", &WaveSpeedProfile::at, py::arg("x"),
             "Speed at position x (left-continuous at jumps)")
        .def("__repr__", [](const WaveSpeedProfile& p) {
            return "WaveSpeedProfile(c0=" + std::to_string(p.c0()) + ", jumps=" +
                   std::to_string(p.jumps().size()) + ")";
        });

    py::class_<FrequencyBand>(m, "FrequencyBand",
                              "Open frequency interval sampled at N midpoints")
        .def(py::init<double, double, std::size_t>(), py::arg("omega_min"),
             py::arg("omega_max"), py::arg("n"))
        .def_property_readonly("omega_min", &FrequencyBand::omega_min)
        .def_property_readonly("omega_max", &FrequencyBand::omega_max)
        .def("__len__", &FrequencyBand::size)
        .def("omega", &FrequencyBand::omega, py::arg("k"), "k-th midpoint frequency")
        .def("omegas", [](const FrequencyBand& b) {
            std::vector<double> out(b.size());
            for (std::size_t k = 0; k < b.size(); ++k)
                out[k] = b.omega(k);
            return out;
        });

    py::class_<ComplexTrace>(m, "ComplexTrace",
                             "Complex samples over a frequency band with a role tag")
        .def_readonly("band", &ComplexTrace::band)
        .def_readonly("values", &ComplexTrace::values)
        .def_property_readonly(
            "role", [](const ComplexTrace& t) { return role_string(t.role); })
        .def("__len__", [](const ComplexTrace& t) { return t.values.size(); });

    py::class_<ReconstructionDiagnostics>(m, "ReconstructionDiagnostics")
        .def_readonly("max_imag_r", &ReconstructionDiagnostics::max_imag_r)
        .def_readonly("clamp_count", &ReconstructionDiagnostics::clamp_count)
        .def_readonly("schur_sum", &ReconstructionDiagnostics::schur_sum)
        .def_readonly("period", &ReconstructionDiagnostics::period)
        .def_readonly("band_shift", &ReconstructionDiagnostics::band_shift);

    py::class_<ReconstructionReport>(m, "ReconstructionReport")
        .def_readonly("profile", &ReconstructionReport::profile)
        .def_readonly("reflectivities", &ReconstructionReport::reflectivities)
        .def_readonly("delta0", &ReconstructionReport::delta0)
        .def_readonly("alpha", &ReconstructionReport::alpha)
        .def_readonly("moments", &ReconstructionReport::moments)
        .def_readonly("diagnostics", &ReconstructionReport::diagnostics);

    m.def(
        "synth_trace",
        [](const WaveSpeedProfile& profile, double x0, double x_star,
           const FrequencyBand& band) {
            return synth_trace(profile, AcquisitionGeometry{x0, x_star}, band);
        },
        py::arg("profile"), py::arg("x0"), py::arg("x_star"), py::arg("band"),
        "Measured data d(omega) at the receiver for every band midpoint");

    m.def("add_noise", &add_noise, py::arg("trace"), py::arg("level"), py::arg("seed"),
          "Seeded complex Gaussian noise at `level` times the RMS of the trace");

    m.def(
        "data_to_reflection",
        [](const ComplexTrace& trace, double x0, double x_star, double c0) {
            return data_to_reflection(trace, AcquisitionGeometry{x0, x_star}, c0);
        },
        py::arg("trace"), py::arg("x0"), py::arg("x_star"), py::arg("c0"),
        "Strip the source factor and direct arrival: measured d -> reflection R");

    m.def(
        "reflection_response",
        [](const WaveSpeedProfile& profile, double x0, double omega) {
            return reflection_response(profile_to_layers(profile, x0), omega);
        },
        py::arg("profile"), py::arg("x0"), py::arg("omega"),
        "Reflection coefficient R(omega) of the medium right of the source");

    m.def(
        "field_at",
        [](const WaveSpeedProfile& profile, double x0, double omega, double x) {
            return field_at(profile, x0, omega, x);
        },
        py::arg("profile"), py::arg("x0"), py::arg("omega"), py::arg("x"),
        "Field u(x, omega) for a point source at x0");

    m.def(
        "field_on_grid",
        [](const WaveSpeedProfile& profile, double x0, double omega,
           const std::vector<double>& xs) {
            return field_on_grid(profile, x0, omega, xs);
        },
        py::arg("profile"), py::arg("x0"), py::arg("omega"), py::arg("xs"));

    m.def(
        "invert",
        [](const ComplexTrace& data, double x0, double x_star, double c0, std::size_t n,
           std::optional<double> period, double band_shift) {
            InversionConfig config;
            config.n = n;
            config.period = period;
            config.band_shift = band_shift;
            return invert(data, AcquisitionGeometry{x0, x_star}, c0, config);
        },
        py::arg("data"), py::arg("x0"), py::arg("x_star"), py::arg("c0"), py::arg("n"),
        py::arg("period") = std::nullopt, py::arg("band_shift") = 0.0,
        "Reconstruct an n-layer equal-travel-time wave speed from measured data");

    m.def("layer_strip", &layer_strip, py::arg("reflection"), py::arg("delta0"),
          py::arg("n"),
          "Reference reconstruction: peel one interface at a time from R(omega)");

    m.def(
        "schur_bound",
        [](const std::vector<double>& rs) {
            return schur_bound(std::span<const double>(rs.data(), rs.size()));
        },
        py::arg("reflectivities"), "tanh(sum(atanh(|r_j|))), the sup-norm bound on R");

    m.def("detect_period", &detect_period, py::arg("trace"),
          "Smallest shift under which the trace repeats, if any");
}
