#pragma once

#include <vector>

#include "pmulab/estimator.hpp"
#include "pmulab/response.hpp"

namespace pmulab {

struct OscillationEstimate {
    Channel channel = Channel::Magnitude;
    double fm_est = 0.0;      // Hz
    double A_meas = 0.0;      // channel units (p.u. or rad)
    double phi_meas = 0.0;    // rad, (-pi, pi]
    double dc_offset = 0.0;
    double residual_rms = 0.0;
    std::size_t frames_used = 0;
};

struct RecoveredOscillation {
    double A_rec = 0.0;
    double phi_rec = 0.0;
    ComplexGain gain_used;
};

/// Magnitude or unwrapped angle of every frame.
std::vector<double> channel_signal(const PhasorStream& stream, Channel channel);

/// Successive-difference unwrapping with a pi threshold.
std::vector<double> unwrap(std::vector<double> angles);

/// Dominant oscillation frequency of the mean-removed channel signal.
double estimate_fm(const PhasorStream& stream, Channel channel);
double estimate_fm(const std::vector<double>& signal, double fps);

struct FitOptions {
    /// Drop frames within one window length of either end of the stream.
    bool trim_edges = true;
};

/// Least-squares fit of s(t) = A*sin(2*pi*fm*t + phi) + c over frame timestamps.
OscillationEstimate fit_sinusoid(const PhasorStream& stream, Channel channel, double fm,
                                 const FitOptions& options = {});
OscillationEstimate fit_sinusoid(const std::vector<double>& times, const std::vector<double>& signal, double fm);

inline constexpr double kDefaultGainFloor = 1e-3;

/// Undoes the window gain: A_rec = sqrt(2)*A/G, phi_rec = phi - theta.
RecoveredOscillation recover(const OscillationEstimate& est, const WindowSpec& window, double fs,
                             double gain_floor = kDefaultGainFloor);

} // namespace pmulab
