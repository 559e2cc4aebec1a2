#include "helmscat/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "helmscat/errors.hpp"
#include "helmscat/forward.hpp"
#include "helmscat/inversion.hpp"
#include "helmscat/io.hpp"
#include "helmscat/medium.hpp"
#include "helmscat/scenarios.hpp"
#include "helmscat/version.hpp"

namespace helmscat {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInversion = 3;

std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CommonOpts {
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool quiet = false;
};

class Run {
  public:
    Run(const CommonOpts& common, std::string command)
        : common_(common), command_(std::move(command)),
          start_(std::chrono::steady_clock::now()) {}

    const CommonOpts& common() const { return common_; }
    fs::path out(const std::string& name) const { return fs::path(common_.out_dir) / name; }

    void note_input(const fs::path& p) { inputs_.push_back(p.string()); }
    void note_output(const fs::path& p) { outputs_.push_back(p.string()); }
    json& params() { return params_; }

    void info(const std::string& line) const {
        if (!common_.quiet)
            std::cout << line << "\n";
    }

    // Every command records what it did; the manifest is written last so its
    // presence implies the listed outputs are complete.
    void write_manifest() const {
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        json doc;
        doc["command"] = command_;
        doc["version"] = kVersion;
        doc["seed"] = common_.seed;
        doc["params"] = params_;
        doc["inputs"] = inputs_;
        doc["outputs"] = outputs_;
        doc["duration_sec"] = elapsed;
        write_text_atomic(out(command_ + "_manifest.json"), doc.dump(2) + "\n");
    }

  private:
    CommonOpts common_;
    std::string command_;
    std::chrono::steady_clock::time_point start_;
    json params_ = json::object();
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
};

struct GeometrySetup {
    WaveSpeedProfile profile;
    AcquisitionGeometry geometry;
};

// Resolve source/receiver against a loaded profile: flags override the
// profile's stored x0; the receiver defaults to the midpoint between the
// source and the first jump and must stay left of that jump.
GeometrySetup resolve_geometry(const LoadedProfile& loaded, std::optional<double> x0_flag,
                               std::optional<double> xstar_flag) {
    const double x0 = x0_flag.value_or(loaded.x0);
    const double xstar = xstar_flag.value_or(midpoint_receiver(loaded.profile, x0));
    if (!(xstar > x0))
        throw ValidationError("receiver x_star must lie right of the source x0");
    if (!loaded.profile.jumps().empty() && !(xstar < loaded.profile.jumps().front().x))
        throw ValidationError("receiver x_star must lie left of the first jump");
    return {loaded.profile, AcquisitionGeometry{x0, xstar}};
}

struct SynthOpts {
    std::string profile_path;
    std::optional<double> x0;
    std::optional<double> xstar;
    double omega_min = 0.0;
    double omega_max = 0.0;
    std::size_t samples = 5000;
    double noise = 0.0;
};

int cmd_synth(const SynthOpts& opt, const CommonOpts& common) {
    Run run(common, "synth");
    run.params() = {{"profile", opt.profile_path}, {"omega_min", opt.omega_min},
                    {"omega_max", opt.omega_max},  {"samples", opt.samples},
                    {"noise", opt.noise}};

    const LoadedProfile loaded = read_profile_json(opt.profile_path);
    run.note_input(opt.profile_path);
    const GeometrySetup setup = resolve_geometry(loaded, opt.x0, opt.xstar);
    run.params()["x0"] = setup.geometry.x0;
    run.params()["x_star"] = setup.geometry.x_star;

    const FrequencyBand band(opt.omega_min, opt.omega_max, opt.samples);
    const ComplexTrace trace = synth_trace(setup.profile, setup.geometry, band);

    const fs::path csv = run.out("trace.csv");
    const fs::path sidecar = run.out("trace.json");
    write_trace_csv(csv, trace);
    write_trace_sidecar(sidecar, trace, setup.geometry, setup.profile.c0());
    run.note_output(csv);
    run.note_output(sidecar);
    run.info("wrote " + csv.string() + " (" + std::to_string(band.size()) + " samples)");

    if (opt.noise > 0.0) {
        const ComplexTrace noisy = add_noise(trace, opt.noise, common.seed);
        const fs::path ncsv = run.out("trace_noisy.csv");
        const fs::path nsidecar = run.out("trace_noisy.json");
        write_trace_csv(ncsv, noisy);
        write_trace_sidecar(nsidecar, noisy, setup.geometry, setup.profile.c0());
        run.note_output(ncsv);
        run.note_output(nsidecar);
        char detail[96];
        std::snprintf(detail, sizeof(detail), " (noise %g, seed %llu)", opt.noise,
                      static_cast<unsigned long long>(common.seed));
        run.info("wrote " + ncsv.string() + detail);
    }

    run.write_manifest();
    return kExitOk;
}

struct InvertOpts {
    std::string trace_path;
    std::size_t n = 1;
    std::optional<double> period;
    double shift = 0.0;
    std::optional<std::string> truth_path;
};

int cmd_invert(const InvertOpts& opt, const CommonOpts& common) {
    Run run(common, "invert");
    run.params() = {{"trace", opt.trace_path}, {"n", opt.n}, {"shift", opt.shift}};
    if (opt.period)
        run.params()["period"] = *opt.period;

    const LoadedTrace loaded = read_trace(opt.trace_path);
    run.note_input(opt.trace_path);

    InversionConfig config;
    config.n = opt.n;
    config.period = opt.period;
    config.band_shift = opt.shift;
    const ReconstructionReport report =
        invert(loaded.trace, loaded.geometry, loaded.c0, config);

    const fs::path report_path = run.out("report.json");
    const fs::path stair_path = run.out("staircase.csv");
    write_report_json(report_path, report, loaded.geometry.x0);
    write_staircase_csv(stair_path, report.profile, loaded.geometry.x0);
    run.note_output(report_path);
    run.note_output(stair_path);
    run.info("recovered " + std::to_string(report.reflectivities.size()) +
             " layers, period " + num17(report.diagnostics.period) + ", clamped " +
             std::to_string(report.diagnostics.clamp_count));

    if (opt.truth_path) {
        const LoadedProfile truth = read_profile_json(*opt.truth_path);
        run.note_input(*opt.truth_path);
        const double err =
            relative_l2_error(truth.profile, report.profile, loaded.geometry.x0,
                              report.profile.jumps().back().x);
        run.params()["rel_error"] = err;
        // The error figure is the point of --truth; print it even under --quiet.
        std::cout << "relative L2 error = " << num17(err) << "\n";
    }

    run.write_manifest();
    return kExitOk;
}

struct RoundtripOpts {
    std::string profile_path;
    std::optional<double> x0;
    std::optional<double> xstar;
    double omega_min = 0.0;
    double omega_max = 0.0;
    std::size_t samples = 5000;
    double noise = 0.0;
    std::size_t n = 1;
    std::optional<double> period;
    double shift = 0.0;
};

int cmd_roundtrip(const RoundtripOpts& opt, const CommonOpts& common) {
    Run run(common, "roundtrip");
    run.params() = {{"profile", opt.profile_path}, {"omega_min", opt.omega_min},
                    {"omega_max", opt.omega_max},  {"samples", opt.samples},
                    {"noise", opt.noise},          {"n", opt.n},
                    {"shift", opt.shift}};
    if (opt.period)
        run.params()["period"] = *opt.period;

    const LoadedProfile loaded = read_profile_json(opt.profile_path);
    run.note_input(opt.profile_path);
    const GeometrySetup setup = resolve_geometry(loaded, opt.x0, opt.xstar);
    run.params()["x0"] = setup.geometry.x0;
    run.params()["x_star"] = setup.geometry.x_star;

    const FrequencyBand band(opt.omega_min, opt.omega_max, opt.samples);
    ComplexTrace trace = synth_trace(setup.profile, setup.geometry, band);
    if (opt.noise > 0.0)
        trace = add_noise(trace, opt.noise, common.seed);

    const fs::path csv = run.out("trace.csv");
    const fs::path sidecar = run.out("trace.json");
    write_trace_csv(csv, trace);
    write_trace_sidecar(sidecar, trace, setup.geometry, setup.profile.c0());
    run.note_output(csv);
    run.note_output(sidecar);

    InversionConfig config;
    config.n = opt.n;
    config.period = opt.period;
    config.band_shift = opt.shift;
    const ReconstructionReport report =
        invert(trace, setup.geometry, setup.profile.c0(), config);

    const fs::path report_path = run.out("report.json");
    const fs::path stair_path = run.out("staircase.csv");
    write_report_json(report_path, report, setup.geometry.x0);
    write_staircase_csv(stair_path, report.profile, setup.geometry.x0);
    run.note_output(report_path);
    run.note_output(stair_path);

    const double err = relative_l2_error(setup.profile, report.profile, setup.geometry.x0,
                                         report.profile.jumps().back().x);
    run.params()["rel_error"] = err;
    std::cout << "relative L2 error = " << num17(err) << "\n";

    run.write_manifest();
    return kExitOk;
}

struct FieldOpts {
    std::string profile_path;
    std::optional<double> x0;
    double omega = 0.0;
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t points = 1001;
};

int cmd_field(const FieldOpts& opt, const CommonOpts& common) {
    Run run(common, "field");
    run.params() = {{"profile", opt.profile_path}, {"omega", opt.omega},
                    {"x_min", opt.x_min},          {"x_max", opt.x_max},
                    {"points", opt.points}};

    if (opt.omega == 0.0)
        throw ValidationError("omega must be nonzero");
    if (!(opt.x_max > opt.x_min))
        throw ValidationError("x grid needs x_max > x_min");
    if (opt.points < 2)
        throw ValidationError("x grid needs at least two points");

    const LoadedProfile loaded = read_profile_json(opt.profile_path);
    run.note_input(opt.profile_path);
    const double x0 = opt.x0.value_or(loaded.x0);
    run.params()["x0"] = x0;

    std::vector<double> xs(opt.points);
    for (std::size_t i = 0; i < opt.points; ++i)
        xs[i] = opt.x_min + (opt.x_max - opt.x_min) * static_cast<double>(i) /
                                static_cast<double>(opt.points - 1);
    const std::vector<Complex> u = field_on_grid(loaded.profile, x0, opt.omega, xs);

    std::string body = "x,re,im\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        body += num17(xs[i]) + "," + num17(u[i].real()) + "," + num17(u[i].imag()) + "\n";
    const fs::path csv = run.out("field.csv");
    write_text_atomic(csv, body);
    run.note_output(csv);
    run.info("wrote " + csv.string() + " (" + std::to_string(xs.size()) + " points)");

    run.write_manifest();
    return kExitOk;
}

struct BenchOpts {
    std::string scenario;
    double noise = 0.1;
};

int cmd_bench(const BenchOpts& opt, const CommonOpts& common) {
    Run run(common, "bench");
    run.params() = {{"scenario", opt.scenario}, {"noise", opt.noise}};

    std::vector<BenchScenario> scenarios;
    if (opt.scenario == "equal" || opt.scenario == "all")
        scenarios.push_back(equal_scenario());
    if (opt.scenario == "irregular" || opt.scenario == "all")
        scenarios.push_back(irregular_scenario());
    if (opt.scenario == "continuous" || opt.scenario == "all")
        scenarios.push_back(continuous_scenario());
    if (scenarios.empty())
        throw ValidationError("unknown scenario '" + opt.scenario +
                              "' (expected equal, irregular, continuous or all)");

    std::string body = "scenario,noise,omega_min,omega_max,layers,rel_error,seconds\n";
    auto emit = [&](const BenchScenario& sc, unsigned doublings, double noise) {
        const BenchResult res = run_scenario(sc, doublings, noise, common.seed);
        body += sc.name + "," + num17(noise) + "," + num17(res.omega_min) + "," +
                num17(res.omega_max) + "," + std::to_string(res.layers) + "," +
                num17(res.rel_error) + "," + num17(res.seconds) + "\n";
        char line[160];
        std::snprintf(line, sizeof(line), "%-10s noise=%-4g n=%-6zu err=%-12.4e %.2fs",
                      sc.name.c_str(), noise, res.layers, res.rel_error, res.seconds);
        run.info(line);
    };

    for (const BenchScenario& sc : scenarios) {
        // The continuous scenario carries a bandwidth ladder: each doubling
        // of the band halves the layer width, so its error trend downward is
        // part of the benchmark.  Staircase scenarios are exact at the base
        // band already.
        const unsigned clean_steps = sc.name == "continuous" ? 4 : 1;
        for (unsigned k = 0; k < clean_steps; ++k)
            emit(sc, k, 0.0);
        if (opt.noise > 0.0)
            emit(sc, 0, opt.noise);
    }

    const fs::path csv = run.out("bench.csv");
    write_text_atomic(csv, body);
    run.note_output(csv);
    run.info("wrote " + csv.string());

    run.write_manifest();
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"1D Helmholtz layered-medium scattering: synthesize single-receiver "
                 "frequency sweeps and reconstruct wave speeds from them"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(kVersion));

    CommonOpts common;
    app.add_option("--out", common.out_dir, "Directory for output files")
        ->capture_default_str();
    app.add_option("--seed", common.seed, "RNG seed for noise")->capture_default_str();
    app.add_flag("--quiet", common.quiet, "Suppress progress output");

    SynthOpts synth;
    CLI::App* synth_cmd =
        app.add_subcommand("synth", "Synthesize a measured trace from a profile");
    synth_cmd->add_option("--profile", synth.profile_path, "Wave-speed profile JSON")
        ->required();
    synth_cmd->add_option("--x0", synth.x0, "Source position (default: profile's x0)");
    synth_cmd->add_option("--xstar", synth.xstar,
                          "Receiver position (default: midpoint of source and first jump)");
    synth_cmd->add_option("--omega-min", synth.omega_min, "Band lower edge")->required();
    synth_cmd->add_option("--omega-max", synth.omega_max, "Band upper edge")->required();
    synth_cmd->add_option("--samples", synth.samples, "Frequency sample count")
        ->capture_default_str();
    synth_cmd->add_option("--noise", synth.noise,
                          "Also write a noisy copy at this relative level");

    InvertOpts invert_opts;
    CLI::App* invert_cmd =
        app.add_subcommand("invert", "Reconstruct a wave speed from a measured trace");
    invert_cmd->add_option("--trace", invert_opts.trace_path, "Trace CSV (sidecar JSON beside it)")
        ->required();
    invert_cmd->add_option("--n", invert_opts.n, "Number of layers to recover")->required();
    invert_cmd->add_option("--period", invert_opts.period,
                           "Reflection-response period (default: detected, else band width)");
    invert_cmd->add_option("--shift", invert_opts.shift,
                           "Drop this much band from the lower edge before inverting");
    invert_cmd->add_option("--truth", invert_opts.truth_path,
                           "Ground-truth profile JSON; prints the relative L2 error");

    RoundtripOpts rt;
    CLI::App* rt_cmd = app.add_subcommand(
        "roundtrip", "Synthesize, invert, and compare against the input profile");
    rt_cmd->add_option("--profile", rt.profile_path, "Wave-speed profile JSON")->required();
    rt_cmd->add_option("--x0", rt.x0, "Source position (default: profile's x0)");
    rt_cmd->add_option("--xstar", rt.xstar,
                       "Receiver position (default: midpoint of source and first jump)");
    rt_cmd->add_option("--omega-min", rt.omega_min, "Band lower edge")->required();
    rt_cmd->add_option("--omega-max", rt.omega_max, "Band upper edge")->required();
    rt_cmd->add_option("--samples", rt.samples, "Frequency sample count")
        ->capture_default_str();
    rt_cmd->add_option("--noise", rt.noise, "Relative noise level before inverting");
    rt_cmd->add_option("--n", rt.n, "Number of layers to recover")->required();
    rt_cmd->add_option("--period", rt.period,
                       "Reflection-response period (default: detected, else band width)");
    rt_cmd->add_option("--shift", rt.shift,
                       "Drop this much band from the lower edge before inverting");

    FieldOpts field;
    CLI::App* field_cmd =
        app.add_subcommand("field", "Evaluate the field u(x, omega) on an x grid");
    field_cmd->add_option("--profile", field.profile_path, "Wave-speed profile JSON")
        ->required();
    field_cmd->add_option("--x0", field.x0, "Source position (default: profile's x0)");
    field_cmd->add_option("--omega", field.omega, "Angular frequency (nonzero)")->required();
    field_cmd->add_option("--x-min", field.x_min, "Grid start")->required();
    field_cmd->add_option("--x-max", field.x_max, "Grid end")->required();
    field_cmd->add_option("--points", field.points, "Grid size")->capture_default_str();

    BenchOpts bench;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Run the built-in benchmark scenarios");
    bench_cmd->add_option("scenario", bench.scenario, "equal | irregular | continuous | all")
        ->required();
    bench_cmd->add_option("--noise", bench.noise, "Noise level for the noisy rows (0 skips)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (synth_cmd->parsed())
            return cmd_synth(synth, common);
        if (invert_cmd->parsed())
            return cmd_invert(invert_opts, common);
        if (rt_cmd->parsed())
            return cmd_roundtrip(rt, common);
        if (field_cmd->parsed())
            return cmd_field(field, common);
        if (bench_cmd->parsed())
            return cmd_bench(bench, common);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const InversionError& e) {
        std::cerr << "inversion failed: " << e.what() << "\n";
        return kExitInversion;
    }
    return kExitOk;
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("helmscat");
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

} // namespace helmscat
