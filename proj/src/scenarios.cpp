#include "helmscat/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "helmscat/errors.hpp"
#include "helmscat/forward.hpp"
#include "helmscat/inversion.hpp"

namespace helmscat {

namespace {

// Engine-defined uniforms only: distribution classes may differ between
// standard libraries, and the benchmark media must never change.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1p-53; // [0, 1)
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

} // namespace

BenchScenario equal_scenario() {
    std::mt19937_64 rng(0x65717531); // fixed: the benchmark medium is part of the contract
    const double delta0 = 2.0;
    std::vector<Layer> layers;
    layers.reserve(15);
    for (int j = 0; j < 15; ++j)
        layers.push_back({delta0, uniform(rng, -0.5, 0.5)});
    const LayerSequence seq(0.0, 0.5, std::move(layers));
    return BenchScenario{"equal",  layers_to_profile(seq), 0.0, std::numbers::pi / delta0,
                         15,       5000,                   400.0};
}

BenchScenario irregular_scenario() {
    std::mt19937_64 rng(0x69727231);
    const double grid = 0.0105;  // travel-time cell, pi / period
    const std::size_t cells = 48;
    const std::size_t jumps = 40;

    // 40 distinct cells from 1..48, the last cell always a jump so the
    // medium fills the full reconstruction depth.  The reflectivity range
    // keeps the cumulative attenuation mild enough that 10% measurement
    // noise degrades the reconstruction gracefully rather than pushing deep
    // interfaces past |r| = 1.
    std::vector<std::size_t> pool(cells - 1);
    for (std::size_t i = 0; i < pool.size(); ++i)
        pool[i] = i + 1;
    for (std::size_t i = pool.size(); i-- > 1;)
        std::swap(pool[i], pool[static_cast<std::size_t>(uniform01(rng) *
                                                         static_cast<double>(i + 1))]);
    std::vector<std::size_t> chosen(pool.begin(),
                                    pool.begin() + static_cast<std::ptrdiff_t>(jumps - 1));
    chosen.push_back(cells);
    std::sort(chosen.begin(), chosen.end());

    std::vector<Layer> layers;
    layers.reserve(jumps);
    std::size_t prev = 0;
    for (std::size_t cell : chosen) {
        layers.push_back({static_cast<double>(cell - prev) * grid, uniform(rng, -0.12, 0.12)});
        prev = cell;
    }
    const LayerSequence seq(0.0, 1.0, std::move(layers));
    return BenchScenario{"irregular", layers_to_profile(seq), 0.0, std::numbers::pi / grid,
                         cells,       5000,                   400.0};
}

BenchScenario continuous_scenario() {
    // Gentle bump over ambient speed 2; the fine staircase step 0.0013 is
    // incommensurate with every reconstruction grid pi / (2^k * period), so
    // the inversion genuinely approximates rather than round-trips.
    auto c = [](double x) { return 2.0 + 0.5 * std::exp(-(x - 25.0) * (x - 25.0) / 60.0); };
    const double fine = 0.0013;
    const double depth = 1000 * 0.03; // travel time covered by the base reconstruction
    const auto n_true = static_cast<std::size_t>(std::ceil((depth + 0.8) / fine));
    return BenchScenario{"continuous", discretize_speed(c, 0.0, fine, n_true),
                         0.0,          std::numbers::pi / 0.03,
                         1000,         5000,
                         400.0};
}

double midpoint_receiver(const WaveSpeedProfile& profile, double x0) {
    if (profile.jumps().empty())
        return x0 + profile.c0(); // no interface: one travel-time unit out
    return 0.5 * (x0 + profile.jumps().front().x);
}

double relative_l2_error(const WaveSpeedProfile& reference, const WaveSpeedProfile& test,
                         double x_lo, double x_hi, std::size_t grid_points) {
    if (!(x_hi > x_lo))
        throw ValidationError("relative_l2_error needs a nonempty interval");
    if (grid_points < 2)
        throw ValidationError("relative_l2_error needs at least two grid points");
    double num = 0.0;
    double den = 0.0;
    // Sample cell midpoints, not cell edges: an edge can land exactly on a
    // staircase breakpoint, where the half-open speed lookup would charge a
    // full jump for a position mismatch of one ulp.
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double x = x_lo + (x_hi - x_lo) * (static_cast<double>(i) + 0.5) /
                                    static_cast<double>(grid_points);
        const double cr = reference.at(x);
        const double ct = test.at(x);
        num += (ct - cr) * (ct - cr);
        den += cr * cr;
    }
    return std::sqrt(num / den);
}

BenchResult run_scenario(const BenchScenario& scenario, unsigned period_doublings,
                         double noise_level, std::uint64_t seed) {
    const double scale = std::ldexp(1.0, static_cast<int>(period_doublings));
    const double p = scenario.period * scale;
    const auto n = static_cast<std::size_t>(
        std::llround(static_cast<double>(scenario.layers) * scale));
    // Keep at least 3 samples per recovered layer when the ladder outgrows
    // the base sample count (alias guard needs 2).
    const std::size_t samples = std::max(scenario.samples, 3 * n);

    const double center = noise_level > 0.0 ? scenario.noisy_center : 0.0;
    const FrequencyBand band(center - 0.5 * p, center + 0.5 * p, samples);
    const AcquisitionGeometry geometry{scenario.x0,
                                       midpoint_receiver(scenario.profile, scenario.x0)};

    const auto t0 = std::chrono::steady_clock::now();
    ComplexTrace data = synth_trace(scenario.profile, geometry, band);
    if (noise_level > 0.0)
        data = add_noise(data, noise_level, seed);

    InversionConfig config;
    config.n = n;
    config.period = p;
    const ReconstructionReport report =
        invert(data, geometry, scenario.profile.c0(), config);
    const auto t1 = std::chrono::steady_clock::now();

    BenchResult out;
    out.omega_min = band.omega_min();
    out.omega_max = band.omega_max();
    out.layers = n;
    out.rel_error = relative_l2_error(scenario.profile, report.profile, scenario.x0,
                                      report.profile.jumps().back().x);
    out.seconds = std::chrono::duration<double>(t1 - t0).count();
    return out;
}

} // namespace helmscat
