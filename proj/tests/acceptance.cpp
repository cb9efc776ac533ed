// Acceptance suite: one PASS/FAIL line per criterion; exit code is the number
// of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pmulab/analysis.hpp"
#include "pmulab/estimator.hpp"
#include "pmulab/response.hpp"
#include "pmulab/signal.hpp"

using namespace pmulab;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);
constexpr double kFs = 960.0;
constexpr int kN = 16;
constexpr double kFm = 20.0;
constexpr double kAlpha = 0.01;
constexpr double kBetaRad = 0.02;
const int kWindows[4] = {1, 2, 4, 8};

// Published comparison at fm = 20 Hz (60 fps columns, then the 240 fps h=8 column).
const double kMagTheory[4] = {0.008276, 0.004138, 0.002069, 0.001034};
const double kMagMeas60[4] = {0.008045, 0.004016, 0.002011, 0.001004};
const double kMagThetaMeas60[4] = {52.09, 112.45, 52.10, 112.45};
const double kPhaTheoryDeg[4] = {0.9483, 0.4742, 0.2371, 0.1185};
const double kPhaMeas60Deg[4] = {0.9673, 0.4846, 0.2421, 0.1211};
const double kPhaThetaMeas60[4] = {59.82, 120.18, 59.82, 120.18};
const double kThetaTheory[4] = {56.25, 116.25, 56.25, 116.25};
constexpr double kMag240 = 0.001034;
constexpr double kPha240Deg = 0.1185;
constexpr double kTheta240 = 116.25;

double deg(double rad) { return rad * 180.0 / kPi; }

double angle_diff_deg(double a, double b)
{
    double d = std::remainder(a - b, 360.0);
    return d <= -180.0 ? d + 360.0 : d;
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [miss: " << what << "]";
        }
    }
};

WaveformSpec waveform(double duration_s = 4.0, double phi0 = 0.0)
{
    WaveformSpec w;
    w.fs = kFs;
    w.phi0 = phi0;
    w.duration = static_cast<std::size_t>(std::llround(duration_s * kFs));
    return w;
}

OscillationEstimate measure(ModulationKind kind, double index, double fm, int h, double fps, double duration_s = 4.0,
                            double phi0 = 0.0, double phim = 0.0, std::size_t decimation_phase = 0,
                            bool antialias = false, TimestampConvention ts = TimestampConvention::LeftEdge)
{
    const WaveformSpec w = waveform(duration_s, phi0);
    const ModulationSpec m{kind, index, fm, phim};
    ReportingSpec r{fps, std::nullopt, decimation_phase};
    if (antialias)
        r.antialias = design_antialias(fps, kFs);
    const PhasorStream s = estimate_phasors(synthesize(w, m), WindowSpec{h, kN, ts}, r);
    return fit_sinusoid(s, channel_for(kind), fm);
}

void criterion_1(Outcome& o)
{
    for (int i = 0; i < 4; ++i) {
        const auto p = predict_oscillation(waveform(), ModulationSpec{ModulationKind::Magnitude, kAlpha, kFm, 0.0},
                                           WindowSpec{kWindows[i], kN});
        const double theta = wrap_degrees_360(deg(p.gain.angle));
        o.detail << " h=" << kWindows[i] << ":" << p.amplitude << "/" << theta;
        o.require(std::abs(p.amplitude - kMagTheory[i]) <= 5e-7, "A h=" + std::to_string(kWindows[i]));
        o.require(std::abs(angle_diff_deg(theta, kThetaTheory[i])) <= 0.005, "theta h=" + std::to_string(kWindows[i]));
    }
}

void criterion_2(Outcome& o)
{
    for (int i = 0; i < 4; ++i) {
        const auto p = predict_oscillation(waveform(), ModulationSpec{ModulationKind::Phase, kBetaRad, kFm, 0.0},
                                           WindowSpec{kWindows[i], kN});
        const double a = deg(p.amplitude);
        const double theta = wrap_degrees_360(deg(p.gain.angle));
        o.detail << " h=" << kWindows[i] << ":" << a << "deg/" << theta;
        o.require(std::abs(a - kPhaTheoryDeg[i]) <= 5e-4, "A h=" + std::to_string(kWindows[i]));
        o.require(std::abs(angle_diff_deg(theta, kThetaTheory[i])) <= 0.005, "theta h=" + std::to_string(kWindows[i]));
    }
}

void criterion_3(Outcome& o)
{
    const auto mag = measure(ModulationKind::Magnitude, kAlpha, kFm, 8, 240.0);
    const auto pha = measure(ModulationKind::Phase, kBetaRad, kFm, 8, 240.0);
    const double mag_theta = wrap_degrees_360(deg(mag.phi_meas));
    const double pha_theta = wrap_degrees_360(deg(pha.phi_meas));
    o.detail << " mag " << mag.A_meas << "/" << mag_theta << "  phase " << deg(pha.A_meas) << "deg/" << pha_theta;
    o.require(std::abs(mag.A_meas / kMag240 - 1.0) <= 0.002, "magnitude amplitude");
    o.require(std::abs(deg(pha.A_meas) / kPha240Deg - 1.0) <= 0.002, "phase amplitude");
    o.require(std::abs(angle_diff_deg(mag_theta, kTheta240)) <= 0.05, "magnitude theta");
    o.require(std::abs(angle_diff_deg(pha_theta, kTheta240)) <= 0.05, "phase theta");
}

void criterion_4(Outcome& o)
{
    double worst_a = 0.0;
    double worst_t = 0.0;
    for (int i = 0; i < 4; ++i) {
        const int h = kWindows[i];
        const auto mag = measure(ModulationKind::Magnitude, kAlpha, kFm, h, 60.0);
        const auto pha = measure(ModulationKind::Phase, kBetaRad, kFm, h, 60.0);
        const double ea = std::abs(mag.A_meas / kMagMeas60[i] - 1.0);
        const double eb = std::abs(deg(pha.A_meas) / kPhaMeas60Deg[i] - 1.0);
        const double ta = std::abs(angle_diff_deg(deg(mag.phi_meas), kMagThetaMeas60[i]));
        const double tb = std::abs(angle_diff_deg(deg(pha.phi_meas), kPhaThetaMeas60[i]));
        worst_a = std::max({worst_a, ea, eb});
        worst_t = std::max({worst_t, ta, tb});
        o.require(ea <= 0.01, "magnitude A h=" + std::to_string(h));
        o.require(eb <= 0.01, "phase A h=" + std::to_string(h));
        o.require(ta <= 1.5, "magnitude theta h=" + std::to_string(h));
        o.require(tb <= 1.5, "phase theta h=" + std::to_string(h));
    }
    o.detail << " worst A rel err " << worst_a << ", worst theta err " << worst_t << " deg";

    // sensitivity of the aliased phase offset to the unstated parameters
    double lo = 1e9, hi = -1e9;
    for (double phi0 : {0.0, kPi / 6.0, kPi / 3.0})
        for (double phim : {0.0, kPi / 4.0})
            for (std::size_t dp : {0u, 4u, 8u}) {
                const auto e = measure(ModulationKind::Magnitude, kAlpha, kFm, 1, 60.0, 4.0, phi0, phim, dp);
                const double theta = angle_diff_deg(deg(e.phi_meas - phim), 0.0);
                lo = std::min(lo, theta);
                hi = std::max(hi, theta);
            }
    o.detail << "; h=1 magnitude theta_meas spans [" << lo << ", " << hi
             << "] deg over phi0, phim and decimation phase";
}

void criterion_5(Outcome& o)
{
    for (auto kind : {ModulationKind::Magnitude, ModulationKind::Phase}) {
        const double index = kind == ModulationKind::Magnitude ? kAlpha : kBetaRad;
        for (int h : kWindows) {
            const auto e = measure(kind, index, 15.0, h, 60.0);
            o.detail << " " << (kind == ModulationKind::Magnitude ? "m" : "p") << h << ":" << e.A_meas;
            if (h >= 4)
                o.require(e.A_meas < 1e-6, "suppression h=" + std::to_string(h));
            else
                o.require(e.A_meas > 0.1 * index, "visible h=" + std::to_string(h));
        }
    }
}

void criterion_6(Outcome& o)
{
    for (auto kind : {ModulationKind::Magnitude, ModulationKind::Phase}) {
        const double index = kind == ModulationKind::Magnitude ? kAlpha : kBetaRad;
        std::vector<double> amps;
        for (int h : kWindows)
            amps.push_back(measure(kind, index, 0.1, h, 60.0, 10.0).A_meas);
        const auto [mn, mx] = std::minmax_element(amps.begin(), amps.end());
        const double spread = (*mx - *mn) / *mx;
        double worst = 0.0;
        for (double a : amps)
            worst = std::max(worst, std::abs(a / index - 1.0));
        o.detail << " " << to_string(kind) << " spread " << spread << " vs unwindowed " << worst;
        o.require(spread <= 0.002, to_string(kind) + " spread");
        o.require(worst <= 0.002, to_string(kind) + " unwindowed");
    }
}

void random_pairs(const std::function<void(double, int)>& visit)
{
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> lam(-kPi, kPi);
    std::uniform_real_distribution<double> tiny(-1e-9, 1e-9);
    std::uniform_int_distribution<int> len(4, 256);
    for (int i = 0; i < 10000; ++i) {
        double l = i % 10 == 0 ? tiny(rng) : lam(rng);
        if (l == -kPi)
            l = kPi;
        visit(l, len(rng));
    }
}

void criterion_7(Outcome& o)
{
    double worst = 0.0;
    random_pairs([&](double l, int L) { worst = std::max(worst, std::abs(h1(l, L).value - h1_bruteforce(l, L))); });
    o.detail << " max |closed - summed| = " << worst;
    o.require(worst <= 1e-12, "agreement");
}

void criterion_8(Outcome& o)
{
    double worst = 0.0;
    random_pairs([&](double l, int L) {
        worst = std::max(worst, std::abs(h1(-l, L).value - std::conj(h1(l, L).value)));
    });
    o.detail << " max |h1(-l) - conj h1(l)| = " << worst;
    o.require(worst <= 1e-14, "symmetry");
}

void criterion_9(Outcome& o)
{
    const double phim = kPi / 6.0;
    int cells = 0, skipped = 0;
    double worst_a = 0.0, worst_p = 0.0;
    for (double fm : {0.1, 1.0, 5.0, 10.0, 20.0, 25.0}) {
        for (int h : kWindows) {
            if (h1(2.0 * kPi * fm / kFs, static_cast<std::size_t>(h * kN)).classification == GainClass::Null) {
                ++skipped;
                continue;
            }
            for (auto kind : {ModulationKind::Magnitude, ModulationKind::Phase}) {
                const double index = kind == ModulationKind::Magnitude ? kAlpha : kBetaRad;
                const double duration = std::max(4.0, 10.0 / fm);
                const auto est = measure(kind, index, fm, h, 240.0, duration, 0.0, phim);
                const auto rec = recover(est, WindowSpec{h, kN}, kFs);
                const double ea = std::abs(rec.A_rec / index - 1.0);
                const double ep = std::abs(deg(wrap_angle(rec.phi_rec - phim)));
                worst_a = std::max(worst_a, ea);
                worst_p = std::max(worst_p, ep);
                ++cells;
                std::ostringstream tag;
                tag << to_string(kind) << " fm=" << fm << " h=" << h;
                o.require(ea <= 0.01, tag.str() + " amplitude");
                o.require(ep <= 1.0, tag.str() + " phase");
            }
        }
    }
    o.detail << " " << cells << " cells (" << skipped << " null cells skipped), worst A err " << worst_a
             << ", worst phase err " << worst_p << " deg";
}

void criterion_10(Outcome& o)
{
    const double beta = 0.09;
    const WaveformSpec w = waveform(4.0, 0.4);
    const ModulationSpec m{ModulationKind::Phase, beta, kFm, 0.3};
    const auto y = demodulate(synthesize(w, m), WindowSpec{1, kN});
    const auto d = decompose_baseband(w, m);
    double worst = 0.0;
    for (std::size_t p = 0; p < y.size(); ++p)
        worst = std::max(worst, std::abs(y[p] - d.evaluate(static_cast<double>(p))));
    const double rel = worst / (kSqrt2 * w.v_rms);
    o.detail << " max relative error " << rel;
    o.require(rel <= 0.005, "linearization bound");
}

void criterion_11(Outcome& o)
{
    const int h = 4;
    const double phim = 0.25;
    const auto left = measure(ModulationKind::Magnitude, kAlpha, kFm, h, 240.0, 4.0, 0.0, phim, 0, false,
                              TimestampConvention::LeftEdge);
    const auto centre = measure(ModulationKind::Magnitude, kAlpha, kFm, h, 240.0, 4.0, 0.0, phim, 0, false,
                                TimestampConvention::Center);
    const double shift = deg(2.0 * kPi * kFm / kFs * (h * kN - 1) / 2.0);
    const double measured = deg(left.phi_meas - centre.phi_meas);
    const double err = std::abs(angle_diff_deg(measured, shift));
    o.detail << " left - center = " << wrap_degrees_360(measured) << " deg, expected " << wrap_degrees_360(shift)
             << " deg; center phase - phim = " << wrap_degrees_360(deg(centre.phi_meas - phim)) << " deg";
    o.require(err <= 0.05, "phase shift");
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        void (*run)(Outcome&);
    };
    const Criterion criteria[] = {
        {"1  theory amplitudes/phases, magnitude modulation", criterion_1},
        {"2  theory amplitudes/phases, phase modulation", criterion_2},
        {"3  full pipeline at 240 fps (h=8)", criterion_3},
        {"4  full pipeline at 60 fps", criterion_4},
        {"5  comb-null suppression at 15 Hz", criterion_5},
        {"6  low-frequency transparency at 0.1 Hz", criterion_6},
        {"7  closed-form vs summed window gain", criterion_7},
        {"8  conjugate symmetry of window gain", criterion_8},
        {"9  recovery round trip", criterion_9},
        {"10 small-angle linearization bound", criterion_10},
        {"11 timestamp-convention phase shift", criterion_11},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        o.detail.precision(7);
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " exception: " << e.what();
        }
        std::printf("[%s] %s:%s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.str().c_str());
        if (!o.pass)
            ++failed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed;
}
