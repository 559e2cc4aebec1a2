#pragma once

#include <cstdint>
#include <span>

#include "helmscat/medium.hpp"

namespace helmscat {

// 2x2 complex matrix, row-major.
struct Mat2 {
    Complex m11, m12, m21, m22;
};

Mat2 operator*(const Mat2& a, const Mat2& b);

// Disk automorphism attached to an invertible matrix:
//   v -> (m11 * v + m12) / (m21 * v + m22).
// Throws ValidationError on a pole (zero denominator).
Complex mobius_apply(const Mat2& m, Complex v);

// One-interface transfer matrix  [ z  r*z ; conj(r)  1 ]  with z on the
// unit circle.  The scalar overload uses z = exp(2i * omega * delta).
Mat2 transfer_matrix(Complex r, Complex z);
Mat2 transfer_matrix(double r, double delta, double omega);

// Reflection coefficient of the layered half-space at frequency omega:
// the composition of the per-interface automorphisms applied to 0,
// evaluated as the right-to-left fold
//   v <- z_j * (v + r_j) / (1 + r_j * v),   j = n..1,  v = 0.
// |R| is bounded by schur_bound of the reflectivities, strictly below 1.
Complex reflection_response(const LayerSequence& seq, double omega);

// The same fold with arbitrary Verblunsky-type parameters |r_j| < 1 and
// independent points z_j on the closed unit polydisk:
//   v <- z_j * (v + r_j) / (1 + conj(r_j) * v).
// This is the multivariate function whose diagonal restriction along
// z_j = exp(2i * omega * delta_j) reproduces reflection_response.
Complex eval_f(std::span<const Complex> r, std::span<const Complex> z);

// tanh(sum_j atanh |r_j|): a uniform bound on |R| over all frequencies,
// strictly below 1.  Throws ValidationError if any |r_j| >= 1.
double schur_bound(std::span<const double> r);
double schur_bound(std::span<const Complex> r);

// Up/down-going amplitudes of the frequency-domain response to a point
// source at x0: in layer j the field is
//   u(x) = a[j] * exp(-i*k_j*(x - x_j)) + b[j] * exp(+i*k_j*(x - x_j)),
// k_j = omega / c_j, with layer 0 referenced to x0 instead of x_1.
// a.back() == 0 (nothing incoming from the right).
struct FieldAmplitudes {
    std::vector<Complex> a;
    std::vector<Complex> b;
};

// Solve the one-source transmission problem at one frequency.  The source
// normalization fixes b[0] = -k_0 / (2i); amplitudes are propagated
// interface by interface so no intermediate product can overflow.
// Throws ValidationError for omega == 0 or x0 on/right of the first jump.
FieldAmplitudes field_amplitudes(const WaveSpeedProfile& profile, double x0, double omega);

// Field value at a single point (left tail, interior layers, or transmitted
// tail), continuous across interfaces.
Complex field_at(const WaveSpeedProfile& profile, double x0, double omega, double x);

// Field on a grid of positions at one frequency; amplitudes are computed once.
std::vector<Complex> field_on_grid(const WaveSpeedProfile& profile, double x0,
                                   double omega, std::span<const double> xs);

// Synthesize the single-receiver measurement d(omega_k) = u(x_star, omega_k)
// on every band midpoint.  Equivalent closed form used here:
//   d = (i*omega / (2*c0)) * exp(-i*theta) * (R(omega) + exp(2i*theta)),
// theta = omega * (x_star - x0) / c0, which field_at reproduces to
// round-off.  Validates the acquisition geometry against the profile.
ComplexTrace synth_trace(const WaveSpeedProfile& profile,
                         const AcquisitionGeometry& geometry,
                         const FrequencyBand& band);

// Add independent complex Gaussian noise to every sample: each of the real
// and imaginary parts gets std = level * RMS(trace) / sqrt(2).  The draw is
// fully determined by `seed` (hand-rolled Box-Muller, so the sequence does
// not depend on the C++ standard library in use).
ComplexTrace add_noise(const ComplexTrace& trace, double level, std::uint64_t seed);

// Strip the source factor and the direct arrival off a measured trace:
//   R(omega) = -(2i*c0/omega) * exp(i*theta) * d(omega) - exp(2i*theta).
// Pure per-sample map; the output role is Reflection.
ComplexTrace data_to_reflection(const ComplexTrace& trace,
                                const AcquisitionGeometry& geometry, double c0);

// Exact inverse of data_to_reflection (useful for tests and for turning a
// synthetic reflection coefficient back into a measurement).
ComplexTrace reflection_to_data(const ComplexTrace& trace,
                                const AcquisitionGeometry& geometry, double c0);

} // namespace helmscat
