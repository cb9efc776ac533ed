#include "pmulab/signal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pmulab/error.hpp"

namespace pmulab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_positive_integer(double v, long long& out)
{
    const double r = std::round(v);
    if (r < 1.0 || std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(v)))
        return false;
    out = static_cast<long long>(r);
    return true;
}

} // namespace

void WaveformSpec::validate() const
{
    if (!(v_rms > 0.0) || !std::isfinite(v_rms))
        throw ValidationError("v_rms must be positive and finite");
    if (!(f0 > 0.0) || !std::isfinite(f0))
        throw ValidationError("carrier frequency f0 must be positive");
    if (!(fs > 2.0 * f0)) {
        std::ostringstream msg;
        msg << "Nyquist violation: fs=" << fs << " Hz must exceed 2*f0=" << 2.0 * f0 << " Hz";
        throw ValidationError(msg.str());
    }
    long long n = 0;
    if (!is_positive_integer(fs / f0, n)) {
        std::ostringstream msg;
        msg << "fs/f0=" << fs / f0 << " is not an integer number of samples per cycle";
        throw ValidationError(msg.str());
    }
    if (!std::isfinite(phi0))
        throw ValidationError("phi0 must be finite");
}

int WaveformSpec::samples_per_cycle() const
{
    validate();
    return static_cast<int>(std::llround(fs / f0));
}

double WaveformSpec::omega0() const
{
    return kTwoPi / samples_per_cycle();
}

std::string to_string(ModulationKind kind)
{
    switch (kind) {
    case ModulationKind::None: return "none";
    case ModulationKind::Magnitude: return "magnitude";
    case ModulationKind::Phase: return "phase";
    }
    return "none";
}

ModulationKind parse_modulation_kind(const std::string& text)
{
    if (text == "none")
        return ModulationKind::None;
    if (text == "magnitude" || text == "mag")
        return ModulationKind::Magnitude;
    if (text == "phase")
        return ModulationKind::Phase;
    throw ValidationError("unknown modulation kind '" + text + "' (expected none, magnitude or phase)");
}

void ModulationSpec::validate() const
{
    if (kind == ModulationKind::None)
        return;
    if (!(index >= 0.0) || !std::isfinite(index))
        throw ValidationError("modulation index must be >= 0");
    if (!(fm >= 0.0) || !std::isfinite(fm))
        throw ValidationError("oscillation frequency fm must be >= 0");
    if (!std::isfinite(phim))
        throw ValidationError("phim must be finite");
}

std::optional<std::string> ModulationSpec::warning() const
{
    if (kind == ModulationKind::Phase && index >= kSmallAngleLimit) {
        std::ostringstream msg;
        msg << "phase-modulation index " << index
            << " rad >= 0.1 rad: the linearized response prediction exceeds its 0.5% error bound";
        return msg.str();
    }
    return std::nullopt;
}

double ModulationSpec::omega_m(double fs) const
{
    return kTwoPi * fm / fs;
}

Waveform synthesize(const WaveformSpec& w, const ModulationSpec& m)
{
    w.validate();
    m.validate();

    const int n = w.samples_per_cycle();
    const double peak = std::sqrt(2.0) * w.v_rms;
    const double om = m.omega_m(w.fs);

    Waveform out;
    out.fs = w.fs;
    out.start_index = 0;
    out.samples.resize(w.duration);

    for (std::size_t p = 0; p < w.duration; ++p) {
        // carrier angle reduced per cycle so long records stay exactly periodic
        const double carrier = kTwoPi * static_cast<double>(p % static_cast<std::size_t>(n)) / n + w.phi0;
        const double osc = std::sin(om * static_cast<double>(p) + m.phim);
        double v = 0.0;
        switch (m.kind) {
        case ModulationKind::None:
            v = peak * std::cos(carrier);
            break;
        case ModulationKind::Magnitude:
            v = peak * (1.0 + m.index * osc) * std::cos(carrier);
            break;
        case ModulationKind::Phase:
            v = peak * std::cos(carrier + m.index * osc);
            break;
        }
        out.samples[p] = v;
    }
    return out;
}

} // namespace pmulab
