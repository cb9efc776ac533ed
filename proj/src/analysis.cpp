#include "pmulab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <fftw3.h>

#include "pmulab/error.hpp"

namespace pmulab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

// Magnitude of the DTFT of s at fractional bin position `bin` (n-point grid).
double dtft_magnitude(const std::vector<double>& s, double bin)
{
    const double n = static_cast<double>(s.size());
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < s.size(); ++i)
        acc += s[i] * std::polar(1.0, -kTwoPi * bin * static_cast<double>(i) / n);
    return std::abs(acc);
}

std::vector<double> spectrum_magnitude(const std::vector<double>& s)
{
    const int n = static_cast<int>(s.size());
    std::vector<double> in(s);
    std::vector<fftw_complex> out(static_cast<std::size_t>(n / 2 + 1));
    fftw_plan plan = fftw_plan_dft_r2c_1d(n, in.data(), out.data(), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    std::vector<double> mag(out.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        mag[k] = std::hypot(out[k][0], out[k][1]);
    return mag;
}

double parabolic_offset(double a, double b, double c)
{
    const double denom = a - 2.0 * b + c;
    if (denom == 0.0)
        return 0.0;
    return std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
}

} // namespace

std::vector<double> unwrap(std::vector<double> angles)
{
    if (angles.empty())
        return angles;
    double prev = angles[0];
    double offset = 0.0;
    for (std::size_t i = 1; i < angles.size(); ++i) {
        const double raw = angles[i];
        const double d = raw - prev;
        if (std::abs(d) > kPi)
            offset -= kTwoPi * std::round(d / kTwoPi);
        prev = raw;
        angles[i] = raw + offset;
    }
    return angles;
}

std::vector<double> channel_signal(const PhasorStream& stream, Channel channel)
{
    std::vector<double> s(stream.frames.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Complex v = stream.frames[i].value;
        s[i] = channel == Channel::Magnitude ? std::abs(v) : std::arg(v);
    }
    if (channel == Channel::Angle)
        s = unwrap(std::move(s));
    return s;
}

double estimate_fm(const std::vector<double>& signal, double fps)
{
    const std::size_t n = signal.size();
    if (n < 8)
        throw AnalysisError("too few frames for spectral frequency estimation");

    double mean = 0.0;
    for (double v : signal)
        mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> s(signal);
    for (double& v : s)
        v -= mean;

    const std::vector<double> mag = spectrum_magnitude(s);
    const std::size_t last = (n - 1) / 2;  // highest bin strictly below fps/2
    std::size_t peak = 1;
    for (std::size_t k = 2; k <= last; ++k)
        if (mag[k] > mag[peak])
            peak = k;

    std::vector<double> sorted(mag.begin() + 1, mag.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double peak_amplitude = 2.0 * mag[peak] / static_cast<double>(n);
    if (peak_amplitude <= 1e-9 * std::max(1.0, std::abs(mean)) || mag[peak] <= 4.0 * median)
        throw AnalysisError("no oscillation detected");

    // refine on an 8x finer DTFT grid around the coarse peak, then fit a parabola
    constexpr int kFine = 8;
    double best_bin = static_cast<double>(peak);
    double best = -1.0;
    std::vector<std::pair<double, double>> fine;
    for (int i = -kFine; i <= kFine; ++i) {
        const double b = static_cast<double>(peak) + static_cast<double>(i) / kFine;
        if (b <= 0.0 || b >= static_cast<double>(n) / 2.0)
            continue;
        fine.emplace_back(b, dtft_magnitude(s, b));
    }
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < fine.size(); ++i)
        if (fine[i].second > best) {
            best = fine[i].second;
            best_i = i;
        }
    best_bin = fine[best_i].first;
    if (best_i > 0 && best_i + 1 < fine.size())
        best_bin += parabolic_offset(fine[best_i - 1].second, fine[best_i].second, fine[best_i + 1].second) / kFine;

    const double f = best_bin * fps / static_cast<double>(n);
    if (static_cast<double>(n) / fps < 2.0 / f)
        throw AnalysisError("stream shorter than two periods of the detected oscillation");
    return f;
}

double estimate_fm(const PhasorStream& stream, Channel channel)
{
    return estimate_fm(channel_signal(stream, channel), stream.fps);
}

OscillationEstimate fit_sinusoid(const std::vector<double>& times, const std::vector<double>& signal, double fm)
{
    if (times.size() != signal.size())
        throw ValidationError("time and signal lengths differ");
    if (!(fm > 0.0))
        throw AnalysisError("rank-deficient fit: oscillation frequency must be positive");
    const auto n = static_cast<Eigen::Index>(signal.size());
    if (n < 3)
        throw AnalysisError("need at least three frames to fit a sinusoid");

    Eigen::MatrixXd basis(n, 3);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double arg = kTwoPi * fm * times[static_cast<std::size_t>(i)];
        basis(i, 0) = std::sin(arg);
        basis(i, 1) = std::cos(arg);
        basis(i, 2) = 1.0;
        rhs(i) = signal[static_cast<std::size_t>(i)];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
    qr.setThreshold(1e-9);
    if (qr.rank() < 3) {
        std::ostringstream msg;
        msg << "rank-deficient fit: fm=" << fm << " Hz aliases to DC at this frame rate";
        throw AnalysisError(msg.str());
    }
    const Eigen::Vector3d coef = qr.solve(rhs);
    const Eigen::VectorXd resid = rhs - basis * coef;

    OscillationEstimate est;
    est.fm_est = fm;
    est.A_meas = std::hypot(coef(0), coef(1));
    est.phi_meas = wrap_angle(std::atan2(coef(1), coef(0)));
    est.dc_offset = coef(2);
    est.residual_rms = std::sqrt(resid.squaredNorm() / static_cast<double>(n));
    est.frames_used = static_cast<std::size_t>(n);
    return est;
}

OscillationEstimate fit_sinusoid(const PhasorStream& stream, Channel channel, double fm, const FitOptions& options)
{
    if (stream.frames.empty())
        throw AnalysisError("empty phasor stream");
    const std::vector<double> full = channel_signal(stream, channel);

    const auto margin = static_cast<std::int64_t>(stream.window.length());
    const std::int64_t lo = stream.frames.front().index + margin;
    const std::int64_t hi = stream.frames.back().index - margin;

    std::vector<double> t;
    std::vector<double> s;
    for (std::size_t i = 0; i < full.size(); ++i) {
        const auto idx = stream.frames[i].index;
        if (options.trim_edges && (idx < lo || idx > hi))
            continue;
        t.push_back(stream.frames[i].timestamp_s);
        s.push_back(full[i]);
    }
    if (s.size() < 3)
        throw AnalysisError("too few frames left after edge trimming");

    OscillationEstimate est = fit_sinusoid(t, s, fm);
    est.channel = channel;
    return est;
}

RecoveredOscillation recover(const OscillationEstimate& est, const WindowSpec& window, double fs, double gain_floor)
{
    window.validate();
    RecoveredOscillation out;
    out.gain_used = h1(kTwoPi * est.fm_est / fs, window.length());
    if (out.gain_used.classification == GainClass::Null) {
        std::ostringstream msg;
        msg << "unrecoverable: oscillation at comb-null frequency (fm=" << est.fm_est << " Hz, L="
            << window.length() << ")";
        throw UnrecoverableError(msg.str());
    }
    if (out.gain_used.magnitude < gain_floor) {
        std::ostringstream msg;
        msg << "ill-conditioned recovery: window gain " << out.gain_used.magnitude << " below floor " << gain_floor;
        throw UnrecoverableError(msg.str());
    }
    out.A_rec = std::sqrt(2.0) * est.A_meas / out.gain_used.magnitude;
    out.phi_rec = wrap_angle(est.phi_meas - out.gain_used.angle);
    return out;
}

} // namespace pmulab
