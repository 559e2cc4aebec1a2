#pragma once

// Shared helpers for the unit-test binaries: engine-defined random media,
// circle-quadrature Taylor-coefficient oracles, and small numeric checks.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "helmscat/medium.hpp"
#include "helmscat/opuc.hpp"

namespace testutil {

using helmscat::Complex;

// Uniform draws defined purely by the engine output so every toolchain sees
// the same sequence for the same seed.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1p-53; // [0, 1)
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// n layers of common travel time delta0 with reflectivities in [-rmax, rmax].
inline helmscat::LayerSequence random_equal_layers(std::mt19937_64& rng, std::size_t n,
                                                   double delta0, double rmax,
                                                   double x0 = 0.0, double c0 = 1.0) {
    std::vector<helmscat::Layer> layers(n);
    for (auto& l : layers)
        l = {delta0, uniform(rng, -rmax, rmax)};
    return helmscat::LayerSequence(x0, c0, std::move(layers));
}

// n layers with independent travel times in [dlo, dhi].
inline helmscat::LayerSequence random_layers(std::mt19937_64& rng, std::size_t n,
                                             double dlo, double dhi, double rmax,
                                             double x0 = 0.0, double c0 = 1.0) {
    std::vector<helmscat::Layer> layers(n);
    for (auto& l : layers)
        l = {uniform(rng, dlo, dhi), uniform(rng, -rmax, rmax)};
    return helmscat::LayerSequence(x0, c0, std::move(layers));
}

// j-th Taylor coefficient of a function analytic on the closed unit disk by
// trapezoidal quadrature on the circle (spectrally accurate):
//   a_j = (1 / 2 pi) * integral f(e^{i t}) e^{-i j t} dt.
template <typename F>
Complex circle_coefficient(F&& f, int j, std::size_t nodes = std::size_t{1} << 14) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = 0; k < nodes; ++k) {
        const double t =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(nodes);
        acc += f(std::polar(1.0, t)) * std::polar(1.0, -static_cast<double>(j) * t);
    }
    return acc / static_cast<double>(nodes);
}

// Taylor coefficients a_1..a_n of g for reflectivities r, computed without
// touching the inversion code path (independent oracle).  The polynomial
// pair is built once; each quadrature node then costs two evaluations plus
// one phase rotation per coefficient.
inline std::vector<Complex> g_taylor(std::span<const Complex> r, std::size_t n,
                                     std::size_t nodes = std::size_t{1} << 14) {
    const helmscat::SzegoPolynomials sz = helmscat::szego_polynomials(r);
    const helmscat::Poly phis = helmscat::dual(sz.phi.back());
    const helmscat::Poly psis = helmscat::dual(sz.psi.back());
    std::vector<Complex> out(n, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < nodes; ++k) {
        const double t =
            2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(nodes);
        const Complex z = std::polar(1.0, t);
        const Complex pv = helmscat::poly_eval(phis, z);
        const Complex qv = helmscat::poly_eval(psis, z);
        const Complex g = (qv - pv) / (qv + pv);
        const Complex w = std::polar(1.0, -t);
        Complex phase(1.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            phase *= w;
            out[j] += g * phase;
        }
    }
    for (Complex& a : out)
        a /= static_cast<double>(nodes);
    return out;
}

// Coefficient of z1^{k1} z2^{k2} of a function on the 2-torus by the tensor
// trapezoidal rule.
template <typename F>
Complex torus_coefficient2(F&& f, int k1, int k2, std::size_t nodes = 256) {
    Complex acc(0.0, 0.0);
    for (std::size_t a = 0; a < nodes; ++a) {
        const double ta =
            2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(nodes);
        for (std::size_t b = 0; b < nodes; ++b) {
            const double tb =
                2.0 * std::numbers::pi * static_cast<double>(b) / static_cast<double>(nodes);
            acc += f(std::polar(1.0, ta), std::polar(1.0, tb)) *
                   std::polar(1.0, -k1 * ta - k2 * tb);
        }
    }
    return acc / static_cast<double>(nodes * nodes);
}

inline double dist(Complex a, Complex b) { return std::abs(a - b); }

inline double max_dist(std::span<const Complex> a, std::span<const Complex> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace testutil
