#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "pmulab/estimator.hpp"
#include "pmulab/signal.hpp"

namespace pmulab {

enum class GainClass { DC, Null, Regular };

std::string to_string(GainClass c);

/// Complex gain of the L-sample window average at normalized frequency lambda.
struct ComplexGain {
    double lambda = 0.0;  // rad/sample
    Complex value;
    double magnitude = 0.0;  // G
    double angle = 0.0;      // theta, principal value in (-pi, pi]
    GainClass classification = GainClass::Regular;
};

inline constexpr double kNullSinThreshold = 1e-12;
inline constexpr double kNullDenominatorFloor = 1e-9;

/// Closed-form Dirichlet-kernel evaluation of the window gain.
ComplexGain h1(double lambda, std::size_t length);

/// Literal (sqrt(2)/L) * sum_n exp(j*lambda*n). Reference for h1().
Complex h1_bruteforce(double lambda, std::size_t length);

/// Oscillation frequencies in (0, f_max] cancelled by an L-sample window.
std::vector<double> comb_nulls(std::size_t length, double fs, double f_max);

struct BasebandTerm {
    double lambda;  // rad/sample, the term is coefficient * exp(j*lambda*p)
    Complex coefficient;
};

/// Demodulated signal as a DC term plus five rotating exponentials:
/// -2*w0, +Om, -Om, -2*w0 - Om, -2*w0 + Om (in that order).
struct BasebandDecomposition {
    Complex dc;  // y-domain DC coefficient, sqrt(2)/2 * V * exp(j*phi0)
    std::vector<BasebandTerm> terms;

    /// Phasor-domain DC, V * exp(j*phi0), i.e. dc scaled by h1(0).
    Complex c0() const;
    Complex evaluate(double p) const;
};

/// Phase modulation uses the first-order small-angle expansion.
BasebandDecomposition decompose_baseband(const WaveformSpec& w, const ModulationSpec& m);

enum class Channel { Magnitude, Angle };

std::string to_string(Channel c);
Channel parse_channel(const std::string& text);
Channel channel_for(ModulationKind kind);

struct PredictedOscillation {
    Channel channel = Channel::Magnitude;
    double amplitude = 0.0;  // p.u. RMS (Magnitude) or rad (Angle)
    double phase = 0.0;      // rad, (-pi, pi]
    double fm = 0.0;
    ComplexGain gain;
};

/// Oscillation that the window is expected to leave in the phasor stream,
/// referenced to left-edge frame indices.
PredictedOscillation predict_oscillation(const WaveformSpec& w, const ModulationSpec& m, const WindowSpec& window);

struct ResponseRow {
    double fm_hz;
    int h;
    std::size_t length;
    ComplexGain gain;
};

/// h1 evaluated at 2*pi*fm/fs for every (fm, h) pair, grouped by h.
std::vector<ResponseRow> response_curve(const std::vector<int>& h_list, double fs, int n_per_cycle,
                                        const std::vector<double>& f_grid);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);
/// Wraps an angle given in degrees to [0, 360).
double wrap_degrees_360(double deg);

double rad_to_deg(double rad);
double deg_to_rad(double deg);

} // namespace pmulab
