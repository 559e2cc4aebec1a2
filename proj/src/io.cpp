#include "helmscat/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "helmscat/errors.hpp"

namespace helmscat {

namespace {

using nlohmann::json;

// 17 significant digits: enough for a lossless double round trip.
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string role_name(TraceRole role) {
    return role == TraceRole::MeasuredData ? "measured-d" : "reflection-R";
}

TraceRole role_from_name(const std::string& name) {
    if (name == "measured-d")
        return TraceRole::MeasuredData;
    if (name == "reflection-R")
        return TraceRole::Reflection;
    throw ValidationError("unknown trace role '" + name + "'");
}

json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ValidationError(what + ": not valid JSON");
    return j;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double require_number(const json& j, const char* key, const std::string& what) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ValidationError(what + ": missing numeric field '" + key + "'");
    return j.at(key).get<double>();
}

} // namespace

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    // Unique sibling temp file, renamed into place once fully written.
    static std::mt19937_64 rng(std::random_device{}());
    fs::path tmp = path;
    tmp += ".tmp" + std::to_string(rng());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ValidationError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out)
            throw ValidationError("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_trace_csv(const std::filesystem::path& path, const ComplexTrace& trace) {
    std::string out = "omega,re,im\n";
    for (std::size_t k = 0; k < trace.values.size(); ++k) {
        out += fmt17(trace.band.omega(k));
        out += ',';
        out += fmt17(trace.values[k].real());
        out += ',';
        out += fmt17(trace.values[k].imag());
        out += '\n';
    }
    write_text_atomic(path, out);
}

void write_trace_sidecar(const std::filesystem::path& path, const ComplexTrace& trace,
                         const AcquisitionGeometry& geometry, double c0) {
    json j;
    j["role"] = role_name(trace.role);
    j["omega_min"] = trace.band.omega_min();
    j["omega_max"] = trace.band.omega_max();
    j["N"] = trace.band.size();
    j["geometry"] = {{"x0", geometry.x0}, {"x_star", geometry.x_star}};
    j["c0"] = c0;
    write_text_atomic(path, j.dump(2) + "\n");
}

LoadedTrace read_trace(const std::filesystem::path& csv_path) {
    std::filesystem::path sidecar = csv_path;
    sidecar.replace_extension(".json");
    const json meta = parse_json(slurp(sidecar), "trace sidecar " + sidecar.string());

    const double omega_min = require_number(meta, "omega_min", "trace sidecar");
    const double omega_max = require_number(meta, "omega_max", "trace sidecar");
    if (!meta.contains("N") || !meta.at("N").is_number_unsigned())
        throw ValidationError("trace sidecar: missing sample count 'N'");
    const auto n = meta.at("N").get<std::size_t>();
    if (!meta.contains("role") || !meta.at("role").is_string())
        throw ValidationError("trace sidecar: missing 'role'");
    if (!meta.contains("geometry"))
        throw ValidationError("trace sidecar: missing 'geometry'");
    const json& g = meta.at("geometry");

    FrequencyBand band(omega_min, omega_max, n);

    std::istringstream csv(slurp(csv_path));
    std::string line;
    if (!std::getline(csv, line) || line.rfind("omega,re,im", 0) != 0)
        throw ValidationError("trace CSV " + csv_path.string() +
                              ": expected header 'omega,re,im'");
    std::vector<Complex> values;
    values.reserve(n);
    std::size_t row = 0;
    while (std::getline(csv, line)) {
        if (line.empty())
            continue;
        double omega = 0.0, re = 0.0, im = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &omega, &re, &im) != 3)
            throw ValidationError("trace CSV: malformed row '" + line + "'");
        if (row >= n)
            throw ValidationError("trace CSV holds more rows than the sidecar sample count");
        const double expect = band.omega(row);
        if (std::abs(omega - expect) > 1e-9 * std::max(1.0, std::abs(expect)))
            throw ValidationError("trace CSV frequency column disagrees with the sidecar band");
        values.emplace_back(re, im);
        ++row;
    }

    LoadedTrace out{ComplexTrace(band, std::move(values), role_from_name(meta.at("role"))),
                    AcquisitionGeometry{require_number(g, "x0", "trace sidecar geometry"),
                                        require_number(g, "x_star", "trace sidecar geometry")},
                    require_number(meta, "c0", "trace sidecar")};
    return out;
}

namespace {

LoadedProfile profile_from_preset(const json& j) {
    const std::string preset = j.at("preset").get<std::string>();
    if (!j.contains("params") || !j.at("params").is_object())
        throw ValidationError("preset profile: missing 'params' object");
    const json& p = j.at("params");
    const double x0 = p.contains("x0") ? require_number(p, "x0", "preset params") : 0.0;

    if (preset == "constant") {
        const double c = require_number(p, "c", "constant preset");
        return {WaveSpeedProfile(c), x0};
    }
    if (preset == "staircase") {
        const double c0 = require_number(p, "c0", "staircase preset");
        const double x_start = require_number(p, "x_start", "staircase preset");
        const double dx = require_number(p, "dx", "staircase preset");
        if (!j.at("params").contains("speeds") || !p.at("speeds").is_array())
            throw ValidationError("staircase preset: missing 'speeds' array");
        std::vector<Jump> jumps;
        double x = x_start;
        for (const auto& s : p.at("speeds")) {
            if (!s.is_number())
                throw ValidationError("staircase preset: speeds must be numbers");
            jumps.push_back({x, s.get<double>()});
            x += dx;
        }
        return {WaveSpeedProfile(c0, std::move(jumps)), x0};
    }

    // The smooth presets carry their own equal-travel-time discretization.
    const double delta0 = require_number(p, "delta0", preset + " preset");
    if (!p.contains("n") || !p.at("n").is_number_unsigned())
        throw ValidationError(preset + " preset: missing layer count 'n'");
    const auto n = p.at("n").get<std::size_t>();
    if (preset == "linear") {
        const double a = require_number(p, "a", "linear preset");
        const double b = require_number(p, "b", "linear preset");
        return {discretize_speed([a, b](double x) { return a + b * x; }, x0, delta0, n), x0};
    }
    if (preset == "smooth-bump") {
        const double base = require_number(p, "base", "smooth-bump preset");
        const double amp = require_number(p, "amp", "smooth-bump preset");
        const double center = require_number(p, "center", "smooth-bump preset");
        const double width = require_number(p, "width", "smooth-bump preset");
        if (!(width > 0.0))
            throw ValidationError("smooth-bump preset: width must be positive");
        auto c = [base, amp, center, width](double x) {
            return base + amp * std::exp(-(x - center) * (x - center) / width);
        };
        return {discretize_speed(c, x0, delta0, n), x0};
    }
    throw ValidationError("unknown profile preset '" + preset + "'");
}

} // namespace

LoadedProfile profile_from_json_text(const std::string& text) {
    const json j = parse_json(text, "profile");
    if (!j.is_object())
        throw ValidationError("profile: expected a JSON object");
    if (j.contains("preset"))
        return profile_from_preset(j);

    const double c0 = require_number(j, "c0", "profile");
    const double x0 = j.contains("x0") ? require_number(j, "x0", "profile") : 0.0;
    std::vector<Jump> jumps;
    if (j.contains("jumps")) {
        if (!j.at("jumps").is_array())
            throw ValidationError("profile: 'jumps' must be an array of [x, c] pairs");
        for (const auto& e : j.at("jumps")) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw ValidationError("profile: 'jumps' entries must be [x, c] pairs");
            jumps.push_back({e[0].get<double>(), e[1].get<double>()});
        }
    }
    return {WaveSpeedProfile(c0, std::move(jumps)), x0};
}

LoadedProfile read_profile_json(const std::filesystem::path& path) {
    try {
        return profile_from_json_text(slurp(path));
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void write_profile_json(const std::filesystem::path& path,
                        const WaveSpeedProfile& profile, double x0) {
    json j;
    j["c0"] = profile.c0();
    j["x0"] = x0;
    json jumps = json::array();
    for (const Jump& jmp : profile.jumps())
        jumps.push_back({jmp.x, jmp.c});
    j["jumps"] = std::move(jumps);
    write_text_atomic(path, j.dump(2) + "\n");
}

void write_report_json(const std::filesystem::path& path, const ReconstructionReport& report,
                       double x0) {
    json j;
    j["c0"] = report.profile.c0();
    j["x0"] = x0;
    j["n"] = report.reflectivities.size();
    j["delta0"] = report.delta0;
    json jumps = json::array();
    for (const Jump& jmp : report.profile.jumps())
        jumps.push_back({jmp.x, jmp.c});
    j["jumps"] = std::move(jumps);
    j["reflectivities"] = report.reflectivities;
    auto complex_pairs = [](const std::vector<Complex>& v) {
        json arr = json::array();
        for (const Complex& c : v)
            arr.push_back({c.real(), c.imag()});
        return arr;
    };
    j["alpha"] = complex_pairs(report.alpha);
    j["moments"] = complex_pairs(report.moments);
    j["diagnostics"] = {{"max_imag_r", report.diagnostics.max_imag_r},
                        {"clamp_count", report.diagnostics.clamp_count},
                        {"schur_sum", report.diagnostics.schur_sum},
                        {"period", report.diagnostics.period},
                        {"band_shift", report.diagnostics.band_shift}};
    write_text_atomic(path, j.dump(2) + "\n");
}

void write_staircase_csv(const std::filesystem::path& path,
                         const WaveSpeedProfile& profile, double x0) {
    std::string out = "x,c\n";
    auto row = [&out](double x, double c) {
        out += fmt17(x);
        out += ',';
        out += fmt17(c);
        out += '\n';
    };
    row(x0, profile.c0());
    double c_prev = profile.c0();
    for (const Jump& j : profile.jumps()) {
        row(j.x, c_prev); // left value, then right value: plot-ready steps
        row(j.x, j.c);
        c_prev = j.c;
    }
    const double last_x = profile.jumps().empty() ? x0 : profile.jumps().back().x;
    const double tail = std::max(1e-3, 0.05 * (last_x - x0));
    row(last_x + tail, c_prev);
    write_text_atomic(path, out);
}

} // namespace helmscat
