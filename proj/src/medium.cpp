#include "helmscat/medium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "helmscat/errors.hpp"

namespace helmscat {

WaveSpeedProfile::WaveSpeedProfile(double c0, std::vector<Jump> jumps)
    : c0_(c0), jumps_(std::move(jumps)) {
    if (!(c0_ > 0.0) || !std::isfinite(c0_))
        throw ValidationError("wave speed c0 must be positive and finite");
    double prev_x = -std::numeric_limits<double>::infinity();
    for (const Jump& j : jumps_) {
        if (!std::isfinite(j.x))
            throw ValidationError("jump position must be finite");
        if (!(j.x > prev_x))
            throw ValidationError("jump positions must be strictly increasing");
        if (!(j.c > 0.0) || !std::isfinite(j.c))
            throw ValidationError("wave speed at jump " + std::to_string(j.x) +
                                  " must be positive and finite");
        prev_x = j.x;
    }
}

double WaveSpeedProfile::at(double x) const {
    // Half-open convention: the value at a jump position belongs to the
    // layer on the left.  Positions are sorted, so binary search.
    auto it = std::lower_bound(jumps_.begin(), jumps_.end(), x,
                               [](const Jump& j, double v) { return j.x < v; });
    if (it == jumps_.begin())
        return c0_;
    return std::prev(it)->c;
}

LayerSequence::LayerSequence(double x0, double c0, std::vector<Layer> layers)
    : x0_(x0), c0_(c0), layers_(std::move(layers)) {
    if (!std::isfinite(x0_))
        throw ValidationError("layer sequence anchor x0 must be finite");
    if (!(c0_ > 0.0) || !std::isfinite(c0_))
        throw ValidationError("layer sequence ambient speed must be positive and finite");
    for (std::size_t j = 0; j < layers_.size(); ++j) {
        if (!(layers_[j].delta > 0.0) || !std::isfinite(layers_[j].delta))
            throw ValidationError("travel time of layer " + std::to_string(j + 1) +
                                  " must be positive and finite");
        if (!(std::abs(layers_[j].r) < 1.0))
            throw ValidationError("reflectivity of interface " + std::to_string(j + 1) +
                                  " must lie in (-1, 1)");
    }
}

std::vector<double> LayerSequence::travel_times() const {
    std::vector<double> out(layers_.size());
    std::transform(layers_.begin(), layers_.end(), out.begin(),
                   [](const Layer& l) { return l.delta; });
    return out;
}

std::vector<double> LayerSequence::reflectivities() const {
    std::vector<double> out(layers_.size());
    std::transform(layers_.begin(), layers_.end(), out.begin(),
                   [](const Layer& l) { return l.r; });
    return out;
}

FrequencyBand::FrequencyBand(double omega_min, double omega_max, std::size_t n)
    : omega_min_(omega_min), omega_max_(omega_max), n_(n) {
    if (!std::isfinite(omega_min_) || !std::isfinite(omega_max_))
        throw ValidationError("frequency band endpoints must be finite");
    if (!(omega_min_ < omega_max_))
        throw ValidationError("frequency band requires omega_min < omega_max");
    if (n_ == 0)
        throw ValidationError("frequency band requires at least one sample");
    // omega = 0 is a removable singularity of the wave problem but a genuine
    // division by zero in the data transform; keep it off the grid.
    if (omega_min_ < 0.0 && omega_max_ > 0.0) {
        for (std::size_t k = 0; k < n_; ++k) {
            if (omega(k) == 0.0)
                throw ValidationError("frequency grid midpoint falls exactly on omega = 0; "
                                      "shift the band or change the sample count");
        }
    }
}

std::vector<double> FrequencyBand::omegas() const {
    std::vector<double> out(n_);
    for (std::size_t k = 0; k < n_; ++k)
        out[k] = omega(k);
    return out;
}

ComplexTrace::ComplexTrace(FrequencyBand band_, std::vector<Complex> values_, TraceRole role_)
    : band(band_), values(std::move(values_)), role(role_) {
    if (values.size() != band.size())
        throw ValidationError("trace needs exactly one value per band midpoint");
}

LayerSequence profile_to_layers(const WaveSpeedProfile& profile, double x0) {
    if (!std::isfinite(x0))
        throw ValidationError("source position must be finite");
    if (!profile.jumps().empty() && !(x0 < profile.jumps().front().x))
        throw ValidationError("source position must lie strictly left of the first jump");

    std::vector<Layer> layers;
    layers.reserve(profile.jump_count());
    double prev_x = x0;
    double prev_c = profile.c0();
    for (const Jump& j : profile.jumps()) {
        layers.push_back({(j.x - prev_x) / prev_c, (j.c - prev_c) / (j.c + prev_c)});
        prev_x = j.x;
        prev_c = j.c;
    }
    return LayerSequence(x0, profile.c0(), std::move(layers));
}

WaveSpeedProfile layers_to_profile(const LayerSequence& seq) {
    std::vector<Jump> jumps;
    jumps.reserve(seq.size());
    double x = seq.x0();
    double s = 0.0; // log speed ratio, saturated so extreme (e.g. clamped-to-
                    // +-1) reflectivity runs yield huge-but-finite speeds and
                    // strictly increasing positions instead of overflow
    constexpr double kMaxLogRatio = 330.0;
    for (const Layer& l : seq.layers()) {
        const double step =
            seq.c0() * std::exp(std::clamp(s, -kMaxLogRatio, kMaxLogRatio)) * l.delta;
        // A positive step can still underflow against a large accumulated x;
        // fall back to the smallest representable strict increase.
        x = x + step > x ? x + step
                         : std::nextafter(x, std::numeric_limits<double>::infinity());
        s += 2.0 * std::atanh(l.r);
        jumps.push_back({x, seq.c0() * std::exp(std::clamp(s, -kMaxLogRatio, kMaxLogRatio))});
    }
    return WaveSpeedProfile(seq.c0(), std::move(jumps));
}

LayerSequence minimal_layers(const LayerSequence& seq) {
    std::vector<Layer> out;
    out.reserve(seq.size());
    double pending = 0.0; // travel time accumulated across r = 0 interfaces
    for (const Layer& l : seq.layers()) {
        pending += l.delta;
        if (l.r != 0.0) {
            out.push_back({pending, l.r});
            pending = 0.0;
        }
    }
    // A trailing run of zero reflectivities carries no jump at all.
    return LayerSequence(seq.x0(), seq.c0(), std::move(out));
}

WaveSpeedProfile discretize_speed(const std::function<double(double)>& c,
                                  double x0, double delta0, std::size_t n) {
    if (!c)
        throw ValidationError("discretize_speed needs a speed function");
    if (!(delta0 > 0.0) || !std::isfinite(delta0))
        throw ValidationError("discretization travel-time step must be positive and finite");

    const double c_at = c(x0);
    if (!(c_at > 0.0) || !std::isfinite(c_at))
        throw ValidationError("speed function must be positive and finite at x0");

    std::vector<Jump> jumps;
    jumps.reserve(n);
    double x = x0;
    double speed = c_at;
    for (std::size_t j = 0; j < n; ++j) {
        x += speed * delta0; // left-endpoint sampling: each cell keeps the speed at its left end
        speed = c(x);
        if (!(speed > 0.0) || !std::isfinite(speed))
            throw ValidationError("speed function must stay positive and finite on the "
                                  "discretization range");
        jumps.push_back({x, speed});
    }
    return WaveSpeedProfile(c_at, std::move(jumps));
}

} // namespace helmscat
