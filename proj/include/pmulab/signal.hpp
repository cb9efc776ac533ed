#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pmulab {

/// Carrier parameters of a single-phase sampled waveform.
struct WaveformSpec {
    double v_rms = 1.0;           // per-unit RMS magnitude
    double f0 = 60.0;             // carrier frequency, Hz
    double fs = 960.0;            // sampling rate, Hz
    double phi0 = 0.0;            // initial carrier phase, rad
    std::size_t duration = 3840;  // number of samples

    /// Throws ValidationError unless fs > 2*f0 and fs/f0 is a positive integer.
    void validate() const;

    /// fs/f0 as an integer; calls validate().
    int samples_per_cycle() const;

    double omega0() const;  // rad/sample
};

enum class ModulationKind { None, Magnitude, Phase };

std::string to_string(ModulationKind kind);
ModulationKind parse_modulation_kind(const std::string& text);

/// Sinusoidal oscillation applied to the carrier magnitude or phase.
struct ModulationSpec {
    ModulationKind kind = ModulationKind::None;
    double index = 0.0;  // alpha (Magnitude) or beta in rad (Phase)
    double fm = 0.0;     // Hz
    double phim = 0.0;   // rad

    void validate() const;

    /// Non-empty when a phase index exceeds the small-angle range of the
    /// linearized response model (beta >= 0.1 rad).
    std::optional<std::string> warning() const;

    double omega_m(double fs) const;  // rad/sample
};

inline constexpr double kSmallAngleLimit = 0.1;

struct Waveform {
    std::vector<double> samples;
    double fs = 0.0;
    std::int64_t start_index = 0;
};

/// Evaluates the modulated carrier at p = 0 .. duration-1.
Waveform synthesize(const WaveformSpec& w, const ModulationSpec& m);

} // namespace pmulab
