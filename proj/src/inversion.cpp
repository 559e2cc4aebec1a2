#include "helmscat/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "helmscat/errors.hpp"
#include "helmscat/forward.hpp"
#include "helmscat/opuc.hpp"

namespace helmscat {

namespace {

constexpr double kDegenerateScale = 1e-14;   // Step-3 denominator cutoff, relative to |m_0|
constexpr double kPeriodMatchTol = 1e-8;     // detect_period: D / RMS^2 acceptance
constexpr double kStripClampEps = 1e-12;     // layer_strip keeps r inside (-1, 1)

// Number of leading samples that make up one period, i.e. the sub-band of
// width `period` the Fourier sums run over.
std::size_t period_sample_count(const FrequencyBand& band, double period, std::size_t n) {
    if (!(period > 0.0) || !std::isfinite(period))
        throw ValidationError("period must be positive and finite");
    const double ratio = period / band.step();
    if (ratio > static_cast<double>(band.size()) + 0.5)
        throw BandError("trace band is narrower than one period");
    const auto m = static_cast<std::size_t>(std::llround(ratio));
    if (m < 1)
        throw BandError("period is below the frequency sample spacing");
    if (m < 2 * n)
        throw BandError("fewer than 2n samples per period (alias risk); lower the layer "
                        "count or record a denser band");
    return m;
}

} // namespace

std::vector<Complex> fourier_alpha(const ComplexTrace& reflection, double period,
                                   std::size_t n) {
    if (reflection.role != TraceRole::Reflection)
        throw ValidationError("fourier_alpha expects a reflection trace");
    if (n == 0)
        throw ValidationError("fourier_alpha needs at least one coefficient");
    const std::size_t m = period_sample_count(reflection.band, period, n);

    // alpha_j = (1/p) integral R(omega) e^{-2 i j pi omega / p} d omega as a
    // midpoint sum; the phase factors are successive powers of one rotation
    // per sample, so each sample costs n multiplications, not n exponentials.
    std::vector<Complex> alpha(n, Complex(0.0, 0.0));
    const double h = reflection.band.step();
    for (std::size_t k = 0; k < m; ++k) {
        const double omega = reflection.band.omega(k);
        const Complex w = std::polar(1.0, -2.0 * std::numbers::pi * omega / period);
        Complex phase(1.0, 0.0);
        const Complex value = reflection.values[k];
        for (std::size_t j = 0; j < n; ++j) {
            phase *= w;
            alpha[j] += value * phase;
        }
    }
    const double scale = h / period;
    for (Complex& a : alpha)
        a *= scale;
    return alpha;
}

std::vector<Complex> moments_to_reflectivities(std::span<const Complex> m, std::size_t n) {
    if (n == 0)
        throw ValidationError("moments_to_reflectivities needs at least one layer");
    if (m.size() < n + 1)
        throw ValidationError("moments_to_reflectivities needs moments m_0..m_n");
    const double threshold = kDegenerateScale * std::abs(m[0]);
    if (!(std::abs(m[0]) > 0.0))
        throw DegenerateMeasureError("zeroth moment vanishes");

    // nu holds the ascending coefficients of the current monic orthogonal
    // polynomial; it grows by one entry per recovered coefficient.
    std::vector<Complex> nu{Complex(1.0, 0.0)};
    std::vector<Complex> r;
    r.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        Complex num(0.0, 0.0);
        Complex den(0.0, 0.0);
        for (std::size_t i = 0; i <= j; ++i) {
            num += std::conj(nu[i] * m[i + 1]);
            den += nu[i] * m[j - i];
        }
        if (std::abs(den) < threshold)
            throw DegenerateMeasureError(
                "orthogonal polynomial norm collapsed at step " + std::to_string(j + 1) +
                "; the trace is inconsistent with a nondegenerate measure");
        const Complex rj = num / den;
        r.push_back(rj);

        std::vector<Complex> next(j + 2, Complex(0.0, 0.0));
        for (std::size_t i = 0; i <= j; ++i) {
            next[i + 1] += nu[i];
            next[i] -= std::conj(rj) * std::conj(nu[j - i]);
        }
        nu = std::move(next);
    }
    return r;
}

ReconstructionReport invert(const ComplexTrace& data, const AcquisitionGeometry& geometry,
                            double c0, const InversionConfig& config) {
    if (data.role != TraceRole::MeasuredData)
        throw ValidationError("invert expects a measured trace (role measured-d)");
    if (config.n == 0)
        throw ValidationError("invert needs at least one layer to recover");
    if (!(config.clamp_eps > 0.0) || !(config.clamp_eps < 0.5))
        throw ValidationError("clamp_eps must lie in (0, 0.5)");
    if (config.band_shift < 0.0 || !std::isfinite(config.band_shift))
        throw ValidationError("band shift must be nonnegative and finite");
    if (config.period && (!(*config.period > 0.0) || !std::isfinite(*config.period)))
        throw ValidationError("period override must be positive and finite");

    ComplexTrace reflection = data_to_reflection(data, geometry, c0);

    // Optional sub-band selection: drop whole samples so the midpoint grid
    // structure survives.
    const double h = reflection.band.step();
    if (config.band_shift / h > static_cast<double>(reflection.band.size()))
        throw BandError("band shift consumes the entire trace");
    const auto skip = static_cast<std::size_t>(std::llround(config.band_shift / h));
    if (skip > 0) {
        if (skip >= reflection.band.size())
            throw BandError("band shift consumes the entire trace");
        const FrequencyBand sub(reflection.band.omega_min() + static_cast<double>(skip) * h,
                                reflection.band.omega_max(), reflection.band.size() - skip);
        std::vector<Complex> vals(reflection.values.begin() + static_cast<std::ptrdiff_t>(skip),
                                  reflection.values.end());
        reflection = ComplexTrace(sub, std::move(vals), TraceRole::Reflection);
    }

    // Period: explicit override, else detection, else the recorded width.
    double period = 0.0;
    if (config.period)
        period = *config.period;
    else if (auto detected = detect_period(reflection))
        period = *detected;
    else
        period = reflection.band.width();

    ReconstructionReport report{
        WaveSpeedProfile(c0), {}, std::numbers::pi / period, {}, {}, {}};
    report.diagnostics.period = period;
    report.diagnostics.band_shift = static_cast<double>(skip) * h;

    report.alpha = fourier_alpha(reflection, period, config.n);
    report.moments = alpha_to_moments(report.alpha);
    const std::vector<Complex> raw = moments_to_reflectivities(report.moments, config.n);

    report.reflectivities.reserve(raw.size());
    const double r_max = 1.0 - config.clamp_eps;
    for (const Complex& rj : raw) {
        report.diagnostics.max_imag_r =
            std::max(report.diagnostics.max_imag_r, std::abs(rj.imag()));
        double rr = rj.real();
        if (rr > r_max || rr < -r_max) {
            rr = std::clamp(rr, -r_max, r_max);
            ++report.diagnostics.clamp_count;
        }
        report.reflectivities.push_back(rr);
        report.diagnostics.schur_sum += std::atanh(std::abs(rr));
    }

    std::vector<Layer> layers;
    layers.reserve(report.reflectivities.size());
    for (double rr : report.reflectivities)
        layers.push_back({report.delta0, rr});
    report.profile = layers_to_profile(LayerSequence(geometry.x0, c0, std::move(layers)));
    return report;
}

std::vector<double> layer_strip(const ComplexTrace& reflection, double delta0, std::size_t n) {
    if (reflection.role != TraceRole::Reflection)
        throw ValidationError("layer_strip expects a reflection trace");
    if (!(delta0 > 0.0) || !std::isfinite(delta0))
        throw ValidationError("layer_strip needs a positive common travel time");
    if (n == 0)
        return {}; // zero strips: nothing extracted, input untouched

    const double period = std::numbers::pi / delta0;
    ComplexTrace work = reflection;
    std::vector<double> r;
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Complex a1 = fourier_alpha(work, period, 1)[0];
        double ri = std::clamp(a1.real(), -1.0 + kStripClampEps, 1.0 - kStripClampEps);
        r.push_back(ri);
        // Undo the outermost interface samplewise:
        //   R <- conj(z) (R - r z) / (1 - r conj(z) R),  z = e^{2 i omega delta0}.
        for (std::size_t k = 0; k < work.values.size(); ++k) {
            const Complex z = std::polar(1.0, 2.0 * work.band.omega(k) * delta0);
            const Complex den = 1.0 - ri * std::conj(z) * work.values[k];
            if (std::abs(den) < 1e-300)
                throw InversionError("layer stripping hit a pole of the inverse interface map");
            work.values[k] = std::conj(z) * (work.values[k] - ri * z) / den;
        }
    }
    return r;
}

std::optional<FirstArrival> estimate_first_arrival(const std::function<Complex(double)>& R,
                                                   double half_window,
                                                   std::span<const double> lambda_grid,
                                                   double threshold,
                                                   std::size_t quadrature_points) {
    if (!R)
        throw ValidationError("estimate_first_arrival needs a reflection function");
    if (!(half_window > 0.0) || !std::isfinite(half_window))
        throw ValidationError("estimate_first_arrival needs a positive window half-width");
    if (lambda_grid.empty())
        throw ValidationError("estimate_first_arrival needs a nonempty candidate grid");
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        if (!(lambda_grid[i] > 0.0) ||
            (i > 0 && !(lambda_grid[i] > lambda_grid[i - 1])))
            throw ValidationError("candidate frequencies must be positive and ascending");
    }
    if (!(threshold > 0.0))
        throw ValidationError("detection threshold must be positive");
    if (quadrature_points < 2)
        throw ValidationError("estimate_first_arrival needs at least two quadrature points");

    // Midpoint samples of R over [-L, L], reused for every candidate.
    const std::size_t K = quadrature_points;
    const double step = 2.0 * half_window / static_cast<double>(K);
    std::vector<double> omegas(K);
    std::vector<Complex> samples(K);
    for (std::size_t k = 0; k < K; ++k) {
        omegas[k] = -half_window + (static_cast<double>(k) + 0.5) * step;
        samples[k] = R(omegas[k]);
    }
    auto mean_at = [&](double lambda) {
        Complex acc(0.0, 0.0);
        for (std::size_t k = 0; k < K; ++k)
            acc += samples[k] * std::polar(1.0, -lambda * omegas[k]);
        return acc / static_cast<double>(K);
    };

    // First candidate whose windowed mean clears the threshold...
    std::size_t hit = lambda_grid.size();
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        if (std::abs(mean_at(lambda_grid[i])) >= threshold) {
            hit = i;
            break;
        }
    }
    if (hit == lambda_grid.size())
        return std::nullopt;

    // ...then polish: the finite window turns each arrival into a peak of
    // width ~ 1/L, and a sidelobe of the true peak may trip the threshold one
    // grid node early.  Maximize |mean| over the surrounding bracket.
    const double left = hit > 0 ? lambda_grid[hit - 1] : lambda_grid[hit] / 2.0;
    const double right = hit + 1 < lambda_grid.size()
                             ? lambda_grid[hit + 1]
                             : lambda_grid[hit] + (lambda_grid[hit] - left);
    double best_lambda = lambda_grid[hit];
    Complex best_mean = mean_at(best_lambda);
    const std::size_t refine = 512;
    for (std::size_t i = 0; i <= refine; ++i) {
        const double lam = left + (right - left) * static_cast<double>(i) /
                                      static_cast<double>(refine);
        const Complex mv = mean_at(lam);
        if (std::abs(mv) > std::abs(best_mean)) {
            best_mean = mv;
            best_lambda = lam;
        }
    }
    return FirstArrival{best_lambda / 2.0, best_mean};
}

std::optional<double> detect_period(const ComplexTrace& reflection) {
    const std::size_t n = reflection.band.size();
    if (n < 4)
        return std::nullopt;

    double rms2 = 0.0;
    for (const Complex& v : reflection.values)
        rms2 += std::norm(v);
    rms2 /= static_cast<double>(n);

    // Mean squared mismatch of the trace against itself shifted by k samples;
    // shifts beyond half the band cannot be confirmed by two periods.
    const std::size_t k_max = n / 2;
    std::vector<double> d(k_max + 1, 0.0);
    for (std::size_t k = 1; k <= k_max; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j + k < n; ++j)
            acc += std::norm(reflection.values[j] - reflection.values[j + k]);
        d[k] = acc / static_cast<double>(n - k);
    }

    const double tol = kPeriodMatchTol * rms2;
    for (std::size_t k = 1; k <= k_max; ++k) {
        if (d[k] > tol)
            continue;
        const bool left_ok = (k == 1) || d[k] <= d[k - 1];
        const bool right_ok = (k == k_max) || d[k] <= d[k + 1];
        if (left_ok && right_ok)
            return static_cast<double>(k) * reflection.band.step();
    }
    return std::nullopt;
}

} // namespace helmscat
