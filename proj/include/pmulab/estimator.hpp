#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pmulab/signal.hpp"

namespace pmulab {

using Complex = std::complex<double>;

/// Ordered key=value provenance carried alongside a phasor stream.
using Metadata = std::vector<std::pair<std::string, std::string>>;

enum class TimestampConvention { LeftEdge, Center };

std::string to_string(TimestampConvention ts);
TimestampConvention parse_timestamp_convention(const std::string& text);

/// Rectangular DFT window of h carrier cycles. The analysed bin is k = h,
/// which puts the bin frequency exactly on the carrier.
struct WindowSpec {
    int h = 1;
    int n_per_cycle = 16;
    TimestampConvention timestamp = TimestampConvention::LeftEdge;

    void validate() const;
    std::size_t length() const { return static_cast<std::size_t>(h) * static_cast<std::size_t>(n_per_cycle); }
    int bin() const { return h; }
};

/// Linear-phase FIR applied to the demodulated sequence before decimation.
struct FilterSpec {
    std::vector<double> taps;
    double cutoff_hz = 0.0;

    double group_delay() const { return (static_cast<double>(taps.size()) - 1.0) / 2.0; }
    /// Complex response at normalized angular frequency omega (rad/sample).
    Complex response(double omega) const;
    double dc_gain() const;
};

struct ReportingSpec {
    double fps = 60.0;
    std::optional<FilterSpec> antialias;
    std::size_t decimation_phase = 0;  // sample offset of the first reported frame

    /// fs/fps; throws ValidationError if it is not a positive integer.
    std::size_t decimation(double fs) const;
};

struct PhasorFrame {
    std::int64_t index = 0;  // left-edge sample index m of the window
    double timestamp_s = 0.0;
    Complex value;
};

struct PhasorStream {
    std::vector<PhasorFrame> frames;
    double fps = 0.0;
    double fs = 0.0;
    WindowSpec window;
    Metadata metadata;
};

/// y[p] = x[p] * exp(-j*omega0*p) with omega0 = 2*pi/N.
std::vector<Complex> demodulate(const Waveform& x, const WindowSpec& w);

/// Single-expression windowed DFT at bin k = h for the window starting at m.
Complex windowed_dft(const Waveform& x, const WindowSpec& w, std::size_t m);

/// (sqrt(2)/L) * sum of y[m .. m+L-1].
Complex window_average(std::span<const Complex> y, std::size_t m, std::size_t length);

/// Runs demodulation, optional anti-alias filtering, window averaging and
/// decimation. Frames whose window would run past the end are dropped.
PhasorStream estimate_phasors(const Waveform& x, const WindowSpec& w, const ReportingSpec& r);

/// Metadata describing the estimator configuration.
Metadata describe(const WindowSpec& w, const ReportingSpec& r);

// antialias.cpp

struct AntialiasDesign {
    double passband_fraction = 0.4;    // of fps
    double stopband_fraction = 0.5;    // of fps
    double max_passband_ripple = 1e-3;
    double min_stopband_db = 60.0;
    std::size_t max_taps = 4095;
};

/// Low-pass FIR for decimating from fs to fps. Returns a single unit tap when
/// fps == fs. Throws ValidationError naming the required length when the
/// design cannot meet its targets within max_taps.
FilterSpec design_antialias(double fps, double fs, const AntialiasDesign& design = {});

struct FilterCheck {
    double passband_ripple;  // max | |H| - 1 | over the passband
    double stopband_db;      // min attenuation over the stopband
};

FilterCheck check_filter(const FilterSpec& f, double fps, double fs, const AntialiasDesign& design = {});

/// Causal convolution; output[p] uses input[p - taps + 1 .. p], zero before 0.
std::vector<Complex> apply_fir(const FilterSpec& f, std::span<const Complex> y);

} // namespace pmulab
