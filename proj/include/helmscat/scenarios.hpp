#pragma once

#include <cstdint>
#include <string>

#include "helmscat/medium.hpp"

namespace helmscat {

// A self-contained benchmark setup: a ground-truth medium plus the
// acquisition and reconstruction parameters that exercise it.  Shared by
// the `bench` subcommand and the acceptance suite so both always speak
// about the same media.
struct BenchScenario {
    std::string name;
    WaveSpeedProfile profile;  // ground truth
    double x0 = 0.0;           // source position
    double period = 0.0;       // base period p; clean band is (-p/2, p/2)
    std::size_t layers = 0;    // reconstruction layer count n at the base period
    std::size_t samples = 0;   // frequency samples N at the base period
    double noisy_center = 0.0; // noisy acquisitions use (center - p/2, center + p/2)
};

// 15 equal travel-time layers (delta0 = 2) with seeded reflectivities in
// [-0.5, 0.5] over ambient speed 1/2; period pi/2.
BenchScenario equal_scenario();

// 40 seeded jumps placed irregularly on a travel-time grid of step 0.0105
// (48 cells) over ambient speed 1; period pi/0.0105.
BenchScenario irregular_scenario();

// Smooth bump c(x) = 2 + 0.5 * exp(-(x - 25)^2 / 60) sampled into a fine
// equal-travel-time staircase (step 0.0013, incommensurate with every
// reconstruction grid); base period pi/0.03 with 1000 layers.
BenchScenario continuous_scenario();

// Receiver position used throughout: the midpoint between the source and
// the first jump.
double midpoint_receiver(const WaveSpeedProfile& profile, double x0);

// Relative L2 distance between two speed profiles over a uniform grid on
// [x_lo, x_hi] (cell midpoints): ||c_test - c_ref|| / ||c_ref||.
double relative_l2_error(const WaveSpeedProfile& reference, const WaveSpeedProfile& test,
                         double x_lo, double x_hi, std::size_t grid_points = 20001);

// One synthesize-invert round trip of a scenario.  `period_doublings`
// scales the band width by 2^k with the layer count scaled to keep the
// covered travel time fixed (samples grow as needed to stay alias-free);
// `noise_level` > 0 moves the band to the scenario's noisy center and
// perturbs the trace with the given seed.  Returns the relative L2 error
// over the reconstruction depth.
struct BenchResult {
    double omega_min = 0.0;
    double omega_max = 0.0;
    std::size_t layers = 0;
    double rel_error = 0.0;
    double seconds = 0.0;
};

BenchResult run_scenario(const BenchScenario& scenario, unsigned period_doublings,
                         double noise_level, std::uint64_t seed);

} // namespace helmscat
