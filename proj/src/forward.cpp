#include "helmscat/forward.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "helmscat/errors.hpp"

namespace helmscat {

namespace {

// e^{i*theta} without going through a complex exponential.
Complex unit_phase(double theta) { return std::polar(1.0, theta); }

void check_receiver(const AcquisitionGeometry& geometry) {
    if (!std::isfinite(geometry.x0) || !std::isfinite(geometry.x_star))
        throw ValidationError("acquisition positions must be finite");
    if (!(geometry.x0 < geometry.x_star))
        throw ValidationError("receiver must lie strictly right of the source");
}

} // namespace

Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

Complex mobius_apply(const Mat2& m, Complex v) {
    const Complex den = m.m21 * v + m.m22;
    if (den == Complex(0.0, 0.0))
        throw ValidationError("mobius_apply: argument is a pole of the transformation");
    return (m.m11 * v + m.m12) / den;
}

Mat2 transfer_matrix(Complex r, Complex z) {
    return {z, r * z, std::conj(r), Complex(1.0, 0.0)};
}

Mat2 transfer_matrix(double r, double delta, double omega) {
    return transfer_matrix(Complex(r, 0.0), unit_phase(2.0 * omega * delta));
}

Complex reflection_response(const LayerSequence& seq, double omega) {
    const auto& layers = seq.layers();
    Complex v(0.0, 0.0);
    Complex z(1.0, 0.0);
    double cached_delta = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t j = layers.size(); j-- > 0;) {
        const Layer& l = layers[j];
        if (l.delta != cached_delta) { // equal travel times share one phase factor
            z = unit_phase(2.0 * omega * l.delta);
            cached_delta = l.delta;
        }
        v = z * (v + l.r) / (1.0 + l.r * v);
    }
    return v;
}

Complex eval_f(std::span<const Complex> r, std::span<const Complex> z) {
    if (r.size() != z.size())
        throw ValidationError("eval_f needs one circle point per coefficient");
    Complex v(0.0, 0.0);
    for (std::size_t j = r.size(); j-- > 0;) {
        if (!(std::abs(r[j]) < 1.0))
            throw ValidationError("eval_f coefficients must lie in the open unit disk");
        if (std::abs(z[j]) > 1.0 + 1e-12)
            throw ValidationError("eval_f points must lie in the closed unit disk");
        v = z[j] * (v + r[j]) / (1.0 + std::conj(r[j]) * v);
    }
    return v;
}

double schur_bound(std::span<const double> r) {
    double s = 0.0;
    for (double rj : r) {
        if (!(std::abs(rj) < 1.0))
            throw ValidationError("schur_bound needs reflectivities in (-1, 1)");
        s += std::atanh(std::abs(rj));
    }
    return std::tanh(s);
}

double schur_bound(std::span<const Complex> r) {
    double s = 0.0;
    for (const Complex& rj : r) {
        const double a = std::abs(rj);
        if (!(a < 1.0))
            throw ValidationError("schur_bound needs coefficients in the open unit disk");
        s += std::atanh(a);
    }
    return std::tanh(s);
}

FieldAmplitudes field_amplitudes(const WaveSpeedProfile& profile, double x0, double omega) {
    if (omega == 0.0 || !std::isfinite(omega))
        throw ValidationError("field amplitudes need a nonzero finite frequency");
    const LayerSequence seq = profile_to_layers(profile, x0);
    const auto& layers = seq.layers();
    const std::size_t n = layers.size();

    // Ratios a[j]/b[j] are the partial reflection folds of the tail medium;
    // they stay inside the unit disk, so propagating b alone is stable.
    std::vector<Complex> v(n + 1);
    v[n] = Complex(0.0, 0.0);
    Complex z(1.0, 0.0);
    double cached_delta = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t j = n; j-- > 0;) {
        const Layer& l = layers[j];
        if (l.delta != cached_delta) {
            z = unit_phase(2.0 * omega * l.delta);
            cached_delta = l.delta;
        }
        v[j] = z * (v[j + 1] + l.r) / (1.0 + l.r * v[j + 1]);
    }

    // Speeds per layer: c[0] = c0 ambient, c[j] right of interface j.
    FieldAmplitudes amp;
    amp.a.resize(n + 1);
    amp.b.resize(n + 1);
    amp.b[0] = Complex(0.0, omega / (2.0 * profile.c0())); // source strength -k_0/(2i)
    amp.a[0] = v[0] * amp.b[0];
    double c_prev = profile.c0();
    for (std::size_t j = 1; j <= n; ++j) {
        const double c_cur = profile.jumps()[j - 1].c;
        // Interface relation: b_{j-1} = e^{-i w delta_j} (c_j + c_{j-1}) / (2 c_j)
        //                               * (1 + r_j a_j / b_j) * b_j.
        const Complex step = unit_phase(-omega * layers[j - 1].delta) *
                             ((c_cur + c_prev) / (2.0 * c_cur)) *
                             (1.0 + layers[j - 1].r * v[j]);
        amp.b[j] = amp.b[j - 1] / step;
        amp.a[j] = v[j] * amp.b[j];
        c_prev = c_cur;
    }
    amp.a[n] = Complex(0.0, 0.0); // radiation condition: nothing incoming from the right
    return amp;
}

namespace {

Complex field_value(const WaveSpeedProfile& profile, double x0, double omega,
                    const FieldAmplitudes& amp, double x) {
    const auto& jumps = profile.jumps();
    const std::size_t n = jumps.size();
    const double k0 = omega / profile.c0();
    if (x <= x0) // left tail: purely left-going
        return (amp.a[0] + amp.b[0]) * unit_phase(-k0 * (x - x0));
    if (n == 0 || x <= jumps[0].x)
        return amp.a[0] * unit_phase(-k0 * (x - x0)) + amp.b[0] * unit_phase(k0 * (x - x0));
    // Largest j >= 1 with x_j < x; beyond the last interface a[n] = 0 leaves
    // only the transmitted wave.
    std::size_t j = n;
    while (j > 1 && !(jumps[j - 1].x < x))
        --j;
    const double kj = omega / jumps[j - 1].c;
    const double xr = jumps[j - 1].x;
    return amp.a[j] * unit_phase(-kj * (x - xr)) + amp.b[j] * unit_phase(kj * (x - xr));
}

} // namespace

Complex field_at(const WaveSpeedProfile& profile, double x0, double omega, double x) {
    return field_value(profile, x0, omega, field_amplitudes(profile, x0, omega), x);
}

std::vector<Complex> field_on_grid(const WaveSpeedProfile& profile, double x0,
                                   double omega, std::span<const double> xs) {
    const FieldAmplitudes amp = field_amplitudes(profile, x0, omega);
    std::vector<Complex> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        out[i] = field_value(profile, x0, omega, amp, xs[i]);
    return out;
}

ComplexTrace synth_trace(const WaveSpeedProfile& profile,
                         const AcquisitionGeometry& geometry,
                         const FrequencyBand& band) {
    check_receiver(geometry);
    if (!profile.jumps().empty() && !(geometry.x_star < profile.jumps().front().x))
        throw ValidationError("receiver must lie strictly left of the first jump");
    const LayerSequence seq = profile_to_layers(profile, geometry.x0);

    const double c0 = profile.c0();
    const double lag = (geometry.x_star - geometry.x0) / c0;
    std::vector<Complex> values(band.size());
    for (std::size_t k = 0; k < band.size(); ++k) {
        const double omega = band.omega(k);
        const Complex ph = unit_phase(omega * lag);
        const Complex r = reflection_response(seq, omega);
        values[k] = Complex(0.0, omega / (2.0 * c0)) * std::conj(ph) * (r + ph * ph);
    }
    return ComplexTrace(band, std::move(values), TraceRole::MeasuredData);
}

ComplexTrace add_noise(const ComplexTrace& trace, double level, std::uint64_t seed) {
    if (level < 0.0 || !std::isfinite(level))
        throw ValidationError("noise level must be nonnegative and finite");
    if (level == 0.0)
        return trace;

    double sumsq = 0.0;
    for (const Complex& v : trace.values)
        sumsq += std::norm(v);
    const double rms = std::sqrt(sumsq / static_cast<double>(trace.values.size()));
    const double sigma = level * rms / std::numbers::sqrt2;

    // Box-Muller on top of the engine keeps the sample sequence identical
    // across standard libraries for a given seed.
    std::mt19937_64 rng(seed);
    auto uniform01 = [&rng]() { // uniform on (0, 1], never 0
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
    };
    std::vector<Complex> values(trace.values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double radius = std::sqrt(-2.0 * std::log(uniform01()));
        const double angle = 2.0 * std::numbers::pi * uniform01();
        values[k] = trace.values[k] +
                    sigma * Complex(radius * std::cos(angle), radius * std::sin(angle));
    }
    return ComplexTrace(trace.band, std::move(values), trace.role);
}

ComplexTrace data_to_reflection(const ComplexTrace& trace,
                                const AcquisitionGeometry& geometry, double c0) {
    check_receiver(geometry);
    if (!(c0 > 0.0) || !std::isfinite(c0))
        throw ValidationError("ambient speed must be positive and finite");
    const double lag = (geometry.x_star - geometry.x0) / c0;
    std::vector<Complex> values(trace.values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double omega = trace.band.omega(k);
        const Complex ph = unit_phase(omega * lag);
        values[k] = Complex(0.0, -2.0 * c0 / omega) * ph * trace.values[k] - ph * ph;
    }
    return ComplexTrace(trace.band, std::move(values), TraceRole::Reflection);
}

ComplexTrace reflection_to_data(const ComplexTrace& trace,
                                const AcquisitionGeometry& geometry, double c0) {
    check_receiver(geometry);
    if (!(c0 > 0.0) || !std::isfinite(c0))
        throw ValidationError("ambient speed must be positive and finite");
    const double lag = (geometry.x_star - geometry.x0) / c0;
    std::vector<Complex> values(trace.values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double omega = trace.band.omega(k);
        const Complex ph = unit_phase(omega * lag);
        values[k] = Complex(0.0, omega / (2.0 * c0)) * std::conj(ph) *
                    (trace.values[k] + ph * ph);
    }
    return ComplexTrace(trace.band, std::move(values), TraceRole::MeasuredData);
}

} // namespace helmscat
