#include "pmulab/estimator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pmulab/error.hpp"

namespace pmulab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(-j*2*pi*q/period) with q reduced modulo the period first.
Complex unit_rotation(std::size_t q, std::size_t period)
{
    return std::polar(1.0, -kTwoPi * static_cast<double>(q % period) / static_cast<double>(period));
}

} // namespace

std::string to_string(TimestampConvention ts)
{
    return ts == TimestampConvention::LeftEdge ? "left" : "center";
}

TimestampConvention parse_timestamp_convention(const std::string& text)
{
    if (text == "left")
        return TimestampConvention::LeftEdge;
    if (text == "center")
        return TimestampConvention::Center;
    throw ValidationError("unknown timestamp convention '" + text + "' (expected left or center)");
}

void WindowSpec::validate() const
{
    if (h < 1)
        throw ValidationError("window length h must be a positive number of cycles");
    if (n_per_cycle < 1)
        throw ValidationError("samples per cycle must be positive");
}

Complex FilterSpec::response(double omega) const
{
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < taps.size(); ++i)
        acc += taps[i] * std::polar(1.0, -omega * static_cast<double>(i));
    return acc;
}

double FilterSpec::dc_gain() const
{
    double acc = 0.0;
    for (double t : taps)
        acc += t;
    return acc;
}

std::size_t ReportingSpec::decimation(double fs) const
{
    if (!(fps > 0.0) || fps > fs)
        throw ValidationError("reporting rate must be in (0, fs]");
    const double d = fs / fps;
    const double r = std::round(d);
    if (std::abs(d - r) > 1e-9 * d) {
        std::ostringstream msg;
        msg << "fs=" << fs << " is not an integer multiple of fps=" << fps;
        throw ValidationError(msg.str());
    }
    return static_cast<std::size_t>(r);
}

std::vector<Complex> demodulate(const Waveform& x, const WindowSpec& w)
{
    w.validate();
    const auto n = static_cast<std::size_t>(w.n_per_cycle);
    std::vector<Complex> y(x.samples.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const auto p = static_cast<std::size_t>(x.start_index) + i;
        y[i] = x.samples[i] * unit_rotation(p, n);
    }
    return y;
}

Complex windowed_dft(const Waveform& x, const WindowSpec& w, std::size_t m)
{
    w.validate();
    const std::size_t len = w.length();
    if (m + len > x.samples.size())
        throw ValidationError("window runs past the end of the signal");
    const auto k = static_cast<std::size_t>(w.bin());
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < len; ++n) {
        const auto p = static_cast<std::size_t>(x.start_index) + m + n;
        acc += x.samples[m + n] * unit_rotation(k * p, len);
    }
    return std::sqrt(2.0) / static_cast<double>(len) * acc;
}

Complex window_average(std::span<const Complex> y, std::size_t m, std::size_t length)
{
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < length; ++n)
        acc += y[m + n];
    return std::sqrt(2.0) / static_cast<double>(length) * acc;
}

PhasorStream estimate_phasors(const Waveform& x, const WindowSpec& w, const ReportingSpec& r)
{
    w.validate();
    const std::size_t len = w.length();
    const std::size_t stride = r.decimation(x.fs);
    if (x.samples.size() < len) {
        std::ostringstream msg;
        msg << "signal has " << x.samples.size() << " samples, shorter than one " << len << "-sample window";
        throw ValidationError(msg.str());
    }

    std::vector<Complex> y = demodulate(x, w);
    std::size_t first_valid = 0;
    double delay = 0.0;
    if (r.antialias && r.antialias->taps.size() > 1) {
        y = apply_fir(*r.antialias, y);
        first_valid = r.antialias->taps.size() - 1;
        delay = r.antialias->group_delay();
    }

    PhasorStream out;
    out.fps = r.fps;
    out.fs = x.fs;
    out.window = w;
    out.metadata = describe(w, r);

    if (y.size() < first_valid + len)
        throw ValidationError("signal too short for the anti-alias filter plus one window");

    // frame grid m = phase + j*stride, skipping frames inside the filter warm-up
    std::size_t m = r.decimation_phase;
    while (m < first_valid)
        m += stride;

    const double centre_offset =
        w.timestamp == TimestampConvention::Center ? (static_cast<double>(len) - 1.0) / 2.0 : 0.0;
    for (; m + len <= y.size(); m += stride) {
        PhasorFrame f;
        f.index = static_cast<std::int64_t>(m) + x.start_index;
        f.timestamp_s = (static_cast<double>(f.index) - delay + centre_offset) / x.fs;
        f.value = window_average(y, m, len);
        out.frames.push_back(f);
    }
    return out;
}

Metadata describe(const WindowSpec& w, const ReportingSpec& r)
{
    auto num = [](double v) {
        std::ostringstream s;
        s.precision(17);
        s << v;
        return s.str();
    };
    Metadata meta{
        {"h", std::to_string(w.h)},
        {"n_per_cycle", std::to_string(w.n_per_cycle)},
        {"window_length", std::to_string(w.length())},
        {"bin", std::to_string(w.bin())},
        {"timestamp", to_string(w.timestamp)},
        {"fps", num(r.fps)},
        {"decimation_phase", std::to_string(r.decimation_phase)},
        {"antialias", r.antialias ? "on" : "off"},
    };
    if (r.antialias) {
        meta.emplace_back("antialias_taps", std::to_string(r.antialias->taps.size()));
        meta.emplace_back("antialias_cutoff_hz", num(r.antialias->cutoff_hz));
        meta.emplace_back("antialias_group_delay", num(r.antialias->group_delay()));
    }
    return meta;
}

} // namespace pmulab
