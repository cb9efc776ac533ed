#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pmulab/error.hpp"
#include "pmulab/estimator.hpp"

namespace pmulab {

namespace {

constexpr double kPi = std::numbers::pi;

double kaiser_beta(double atten_db)
{
    if (atten_db > 50.0)
        return 0.1102 * (atten_db - 8.7);
    if (atten_db >= 21.0)
        return 0.5842 * std::pow(atten_db - 21.0, 0.4) + 0.07886 * (atten_db - 21.0);
    return 0.0;
}

std::vector<double> kaiser_lowpass(std::size_t ntaps, double cutoff_norm, double beta)
{
    // cutoff_norm in cycles/sample
    std::vector<double> taps(ntaps);
    const std::size_t centre = (ntaps - 1) / 2;
    const double i0_beta = std::cyl_bessel_i(0.0, beta);
    for (std::size_t i = 0; i <= centre; ++i) {
        const double k = static_cast<double>(i) - static_cast<double>(centre);
        const double ideal = k == 0.0 ? 2.0 * cutoff_norm : std::sin(2.0 * kPi * cutoff_norm * k) / (kPi * k);
        const double r = k / static_cast<double>(centre);
        const double win = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / i0_beta;
        taps[i] = ideal * win;
        taps[ntaps - 1 - i] = taps[i];
    }
    double sum = 0.0;
    for (double t : taps)
        sum += t;
    for (double& t : taps)
        t /= sum;
    return taps;
}

std::size_t make_odd(std::size_t n)
{
    return n % 2 == 0 ? n + 1 : n;
}

} // namespace

FilterCheck check_filter(const FilterSpec& f, double fps, double fs, const AntialiasDesign& design)
{
    constexpr int kGrid = 2048;
    FilterCheck out{0.0, 1e300};
    const double pass_edge = design.passband_fraction * fps;
    const double stop_edge = design.stopband_fraction * fps;
    for (int i = 0; i <= kGrid; ++i) {
        const double f_hz = pass_edge * i / kGrid;
        const double g = std::abs(f.response(2.0 * kPi * f_hz / fs));
        out.passband_ripple = std::max(out.passband_ripple, std::abs(g - 1.0));
    }
    if (stop_edge < fs / 2.0) {
        for (int i = 0; i <= kGrid; ++i) {
            const double f_hz = stop_edge + (fs / 2.0 - stop_edge) * i / kGrid;
            const double g = std::abs(f.response(2.0 * kPi * f_hz / fs));
            out.stopband_db = std::min(out.stopband_db, -20.0 * std::log10(std::max(g, 1e-300)));
        }
    }
    return out;
}

FilterSpec design_antialias(double fps, double fs, const AntialiasDesign& design)
{
    ReportingSpec{fps, std::nullopt, 0}.decimation(fs);

    FilterSpec out;
    if (fps == fs) {
        out.taps = {1.0};
        out.cutoff_hz = fs / 2.0;
        return out;
    }

    const double pass_edge = design.passband_fraction * fps;
    const double stop_edge = design.stopband_fraction * fps;
    const double cutoff = 0.5 * (pass_edge + stop_edge);
    const double transition = 2.0 * kPi * (stop_edge - pass_edge) / fs;
    const double ripple_db = -20.0 * std::log10(design.max_passband_ripple);
    const double atten = std::max(design.min_stopband_db, ripple_db) + 6.0;
    const double beta = kaiser_beta(atten);

    std::size_t ntaps = make_odd(static_cast<std::size_t>(std::ceil((atten - 8.0) / (2.285 * transition))) + 1);
    out.cutoff_hz = cutoff;

    for (; ntaps <= design.max_taps; ntaps += 2) {
        out.taps = kaiser_lowpass(ntaps, cutoff / fs, beta);
        const FilterCheck c = check_filter(out, fps, fs, design);
        if (c.passband_ripple < design.max_passband_ripple && c.stopband_db >= design.min_stopband_db)
            return out;
    }

    std::ostringstream msg;
    msg << "anti-alias filter for fps=" << fps << ", fs=" << fs << " requires at least " << ntaps
        << " taps, exceeding the budget of " << design.max_taps;
    throw ValidationError(msg.str());
}

std::vector<Complex> apply_fir(const FilterSpec& f, std::span<const Complex> y)
{
    std::vector<Complex> out(y.size());
    const std::size_t nt = f.taps.size();
    for (std::size_t p = 0; p < y.size(); ++p) {
        Complex acc{0.0, 0.0};
        const std::size_t kmax = std::min(nt, p + 1);
        for (std::size_t k = 0; k < kmax; ++k)
            acc += f.taps[k] * y[p - k];
        out[p] = acc;
    }
    return out;
}

} // namespace pmulab
