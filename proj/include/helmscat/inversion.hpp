#pragma once

#include <functional>
#include <optional>
#include <span>

#include "helmscat/medium.hpp"

namespace helmscat {

// Knobs of the direct reconstruction.  `n` is the number of equal
// travel-time layers to recover.  `period` overrides period selection; when
// absent the period is detected from the trace and falls back to the band
// width.  `band_shift` discards the leading part of the recorded band and
// runs the analysis on the sub-band starting `band_shift` above omega_min.
struct InversionConfig {
    std::size_t n = 1;
    std::optional<double> period{};
    double band_shift = 0.0;
    // Reflectivities are clamped into (-1 + clamp_eps, 1 - clamp_eps) before
    // the speed map's atanh; clamps are counted in the diagnostics.
    double clamp_eps = 1e-12;
    // Recovered reflectivities are replaced by their real parts; imaginary
    // parts above imag_tol are flagged (max recorded in the diagnostics).
    double imag_tol = 1e-6;
};

struct ReconstructionDiagnostics {
    double max_imag_r = 0.0;     // largest |Im r_j| seen before realification
    std::size_t clamp_count = 0; // reflectivities clamped away from +-1
    double schur_sum = 0.0;      // sum_j atanh |r_j| after realification
    double period = 0.0;         // period actually used
    double band_shift = 0.0;     // sub-band offset actually used
};

// Everything the reconstruction produces: the recovered staircase, the raw
// equal-travel-time layer description it was built from, and the
// intermediate sequences for inspection.
struct ReconstructionReport {
    WaveSpeedProfile profile;
    std::vector<double> reflectivities; // r_1..r_n, realified and clamped
    double delta0 = 0.0;                // common travel time pi / period
    std::vector<Complex> alpha;         // Fourier coefficients alpha_1..alpha_n
    std::vector<Complex> moments;       // m_0..m_n
    ReconstructionDiagnostics diagnostics;
};

// Fourier coefficients of a reflection trace against the period p:
//   alpha_j = (1/p) * integral over one period of R(omega) e^{-2 i j pi omega / p},
// computed as the midpoint Riemann sum over the leading sub-band of width p
// (all samples when the band width equals p, where the sum enjoys exact
// discrete orthogonality).  Throws BandError when the band is narrower than
// p or the sub-band holds fewer than 2n samples (aliasing guard).
std::vector<Complex> fourier_alpha(const ComplexTrace& reflection, double period, std::size_t n);

// Verblunsky/reflection coefficients from moments via the orthogonal
// polynomial recursion (nu are the ascending coefficients of the current
// monic polynomial):
//   r_{j+1} = sum_i conj(nu_i m_{i+1}) / sum_i nu_i m_{j-i},
//   nu <- (0, nu_0..nu_j) - conj(r_{j+1}) * (conj(nu_j)..conj(nu_0), 0).
// Needs m_0..m_n; throws DegenerateMeasureError when a denominator falls
// below 1e-14 * |m_0|.  Returned values are raw (complex, unclamped).
std::vector<Complex> moments_to_reflectivities(std::span<const Complex> m, std::size_t n);

// The full direct reconstruction from a measured trace:
// data_to_reflection, period selection, fourier_alpha, alpha_to_moments,
// moments_to_reflectivities, realify/clamp, and the closed-form speed map
//   c_j = c0 exp(2 sum_{i<=j} atanh r_i),  x_j = x0 + (pi/p) sum_{i<=j} c_{i-1}.
// The recovered staircase covers travel time n * pi / p below x0.
ReconstructionReport invert(const ComplexTrace& data, const AcquisitionGeometry& geometry,
                            double c0, const InversionConfig& config);

// Peel equal travel-time layers off a reflection trace one at a time:
// extract r_j as the first Fourier coefficient over one period, then apply
// the inverse interface automorphism samplewise,
//   R <- conj(z) * (R - r_j z) / (1 - r_j conj(z) R),   z = e^{2 i omega delta0}.
// Quadratic in n versus the linear-in-moments fast path; kept as an
// independent cross-check.  Returns r_1..r_n (realified).
std::vector<double> layer_strip(const ComplexTrace& reflection, double delta0, std::size_t n);

struct FirstArrival {
    double delta1 = 0.0; // travel time to the first interface
    Complex r1{};        // its reflectivity (the mean itself)
};

// First-arrival estimate from the almost-periodic structure of R: scan the
// candidate grid for the smallest lambda whose windowed mean
//   (1 / 2L) * integral_{-L}^{L} R(omega) e^{-i lambda omega} d omega
// has magnitude >= threshold, refine lambda to the local maximizer of the
// mean magnitude, and report delta1 = lambda/2 with r1 the mean there.
// Returns nullopt when every candidate stays below the threshold.
std::optional<FirstArrival> estimate_first_arrival(const std::function<Complex(double)>& R,
                                                   double half_window,
                                                   std::span<const double> lambda_grid,
                                                   double threshold,
                                                   std::size_t quadrature_points = 1 << 16);

// Smallest sample-aligned shift y for which the trace agrees with itself,
// i.e. mean |R(omega) - R(omega + y)|^2 <= 1e-8 * mean |R|^2 at a local
// minimum.  Only shifts up to half the band width are candidates (the trace
// must cover two periods).  Returns nullopt when nothing qualifies; an
// exactly constant trace degenerately returns the one-sample shift.
std::optional<double> detect_period(const ComplexTrace& reflection);

} // namespace helmscat
