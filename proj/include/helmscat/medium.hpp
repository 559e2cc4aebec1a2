#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace helmscat {

using Complex = std::complex<double>;

// One discontinuity of a piecewise-constant wave speed: the speed becomes
// `c` immediately to the right of position `x`.
struct Jump {
    double x;
    double c;
};

// Piecewise-constant wave speed on the line.  The speed equals c0 up to and
// including the first jump position, and jumps[j].c on the half-open
// interval (jumps[j].x, jumps[j+1].x].  Speeds are strictly positive and
// jump positions strictly increasing.
class WaveSpeedProfile {
public:
    explicit WaveSpeedProfile(double c0, std::vector<Jump> jumps = {});

    double c0() const { return c0_; }
    const std::vector<Jump>& jumps() const { return jumps_; }
    std::size_t jump_count() const { return jumps_.size(); }

    // Evaluate c(x) with the half-open convention above: at a jump position
    // the value of the layer to the LEFT is returned.
    double at(double x) const;

private:
    double c0_;
    std::vector<Jump> jumps_;
};

// One layer in travel-time coordinates: `delta` is the one-way travel time
// across the layer, `r` the reflectivity of the interface at its right end.
// delta > 0 and |r| < 1.
struct Layer {
    double delta;
    double r;
};

// A medium described by travel times and interface reflectivities, anchored
// at the source position x0 where the ambient speed is c0.  This is the
// coordinate system every transfer-matrix computation works in.
class LayerSequence {
public:
    LayerSequence(double x0, double c0, std::vector<Layer> layers = {});

    double x0() const { return x0_; }
    double c0() const { return c0_; }
    const std::vector<Layer>& layers() const { return layers_; }
    std::size_t size() const { return layers_.size(); }

    std::vector<double> travel_times() const;
    std::vector<double> reflectivities() const;

private:
    double x0_;
    double c0_;
    std::vector<Layer> layers_;
};

// Source position x0 and receiver position x_star of a single-point
// acquisition.  Valid when x0 < x_star and (if the medium has jumps)
// x_star lies strictly left of the first jump.
struct AcquisitionGeometry {
    double x0;
    double x_star;
};

// Uniform frequency grid of N midpoints on (omega_min, omega_max):
// omega_k = omega_min + (k + 1/2) * (omega_max - omega_min) / N.
// Construction rejects empty bands and any grid with a midpoint at
// exactly omega = 0 (the data-to-reflection transform divides by omega).
class FrequencyBand {
public:
    FrequencyBand(double omega_min, double omega_max, std::size_t n);

    double omega_min() const { return omega_min_; }
    double omega_max() const { return omega_max_; }
    std::size_t size() const { return n_; }

    double width() const { return omega_max_ - omega_min_; }
    double step() const { return width() / static_cast<double>(n_); }
    double omega(std::size_t k) const {
        return omega_min_ + (static_cast<double>(k) + 0.5) * step();
    }
    std::vector<double> omegas() const;

    bool operator==(const FrequencyBand& other) const = default;

private:
    double omega_min_;
    double omega_max_;
    std::size_t n_;
};

// What a trace contains: the measured response d(omega) at the receiver, or
// the derived reflection coefficient R(omega).
enum class TraceRole { MeasuredData, Reflection };

// Complex samples on a frequency band, one value per grid midpoint.
struct ComplexTrace {
    ComplexTrace(FrequencyBand band_, std::vector<Complex> values_, TraceRole role_);

    FrequencyBand band;
    std::vector<Complex> values;
    TraceRole role;
};

// Convert a profile plus source position into travel-time layers:
//   delta_j = (x_j - x_{j-1}) / c_{j-1},   r_j = (c_j - c_{j-1}) / (c_j + c_{j-1}),
// with x_0 := x0.  Requires x0 strictly left of the first jump.
LayerSequence profile_to_layers(const WaveSpeedProfile& profile, double x0);

// Inverse of profile_to_layers:
//   c_j = c0 * exp(2 * sum_{i<=j} atanh r_i),   x_j = x0 + sum_{i<=j} c_{i-1} * delta_i.
WaveSpeedProfile layers_to_profile(const LayerSequence& seq);

// Drop interfaces with r_j = 0 by accumulating their travel time into the
// following interface; a trailing run of zero reflectivities is dropped
// entirely.  The result describes the same wave speed function.
LayerSequence minimal_layers(const LayerSequence& seq);

// Sample a (typically continuous) wave speed into an equal-travel-time
// staircase with left-endpoint sampling:
//   x_{j+1} = x_j + c(x_j) * delta0,   speed c(x_j) on (x_j, x_{j+1}].
// Produces n jumps at x_1..x_n; n = 0 yields the constant profile c(x0).
WaveSpeedProfile discretize_speed(const std::function<double(double)>& c,
                                  double x0, double delta0, std::size_t n);

} // namespace helmscat
