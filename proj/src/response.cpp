#include "pmulab/response.hpp"

#include <cmath>
#include <numbers>

#include "pmulab/error.hpp"

namespace pmulab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
const double kSqrt2 = std::sqrt(2.0);

} // namespace

double wrap_angle(double a)
{
    double r = std::remainder(a, kTwoPi);  // [-pi, pi]
    if (r <= -kPi)
        r += kTwoPi;
    return r;
}

double wrap_degrees_360(double deg)
{
    double r = std::fmod(deg, 360.0);
    if (r < 0.0)
        r += 360.0;
    if (r >= 360.0)
        r -= 360.0;
    return r;
}

double rad_to_deg(double rad) { return rad * 180.0 / kPi; }
double deg_to_rad(double deg) { return deg * kPi / 180.0; }

std::string to_string(GainClass c)
{
    switch (c) {
    case GainClass::DC: return "dc";
    case GainClass::Null: return "null";
    case GainClass::Regular: return "regular";
    }
    return "regular";
}

ComplexGain h1(double lambda, std::size_t length)
{
    if (length == 0)
        throw ValidationError("window length must be >= 1");

    const double l = static_cast<double>(length);
    const double reduced = std::remainder(lambda, kTwoPi);
    ComplexGain g;
    g.lambda = lambda;

    if (reduced == 0.0) {
        g.value = {kSqrt2, 0.0};
        g.magnitude = kSqrt2;
        g.angle = 0.0;
        g.classification = GainClass::DC;
        return g;
    }

    const double num = std::sin(l * reduced / 2.0);
    const double den = std::sin(reduced / 2.0);
    const double linear_phase = reduced * (l - 1.0) / 2.0;

    if (std::abs(num) < kNullSinThreshold && std::abs(den) >= kNullDenominatorFloor) {
        g.value = {0.0, 0.0};
        g.magnitude = 0.0;
        g.angle = wrap_angle(linear_phase);
        g.classification = GainClass::Null;
        return g;
    }

    // the sign of the real kernel supplies the pi flip through std::arg
    const double kernel = kSqrt2 / l * num / den;
    g.value = kernel * std::polar(1.0, linear_phase);
    g.magnitude = std::abs(kernel);
    g.angle = wrap_angle(std::arg(g.value));
    g.classification = GainClass::Regular;
    return g;
}

Complex h1_bruteforce(double lambda, std::size_t length)
{
    Complex acc{0.0, 0.0};
    for (std::size_t n = 0; n < length; ++n)
        acc += std::polar(1.0, lambda * static_cast<double>(n));
    return kSqrt2 / static_cast<double>(length) * acc;
}

std::vector<double> comb_nulls(std::size_t length, double fs, double f_max)
{
    if (length == 0)
        throw ValidationError("window length must be >= 1");
    if (!(f_max < fs / 2.0))
        throw ValidationError("f_max must be below fs/2");
    std::vector<double> out;
    const double spacing = fs / static_cast<double>(length);
    const double tol = 1e-9 * spacing;
    for (std::size_t q = 1;; ++q) {
        const double f = static_cast<double>(q) * spacing;
        if (f > f_max + tol)
            break;
        if (q % length != 0)
            out.push_back(f);
    }
    return out;
}

Complex BasebandDecomposition::c0() const
{
    return kSqrt2 * dc;
}

Complex BasebandDecomposition::evaluate(double p) const
{
    Complex acc = dc;
    for (const auto& t : terms)
        acc += t.coefficient * std::polar(1.0, t.lambda * p);
    return acc;
}

BasebandDecomposition decompose_baseband(const WaveformSpec& w, const ModulationSpec& m)
{
    w.validate();
    m.validate();
    if (m.kind == ModulationKind::None)
        throw ValidationError("baseband decomposition needs a modulated signal");

    const double v = w.v_rms;
    const double w0 = w.omega0();
    const double om = m.omega_m(w.fs);
    const double phi0 = w.phi0;
    const double phim = m.phim;
    const Complex j{0.0, 1.0};

    BasebandDecomposition d;
    d.dc = kSqrt2 * v / 2.0 * std::polar(1.0, phi0);

    // k scales the four modulation terms. Both kinds share the in-band pair;
    // the image pair changes sign for phase modulation because the image
    // carries exp(-j*beta*sin) rather than exp(+j*beta*sin).
    Complex k;
    double image_sign = 1.0;
    if (m.kind == ModulationKind::Magnitude) {
        k = kSqrt2 * v * m.index / (4.0 * j);
    } else {
        k = kSqrt2 * v * m.index / 4.0;
        image_sign = -1.0;
    }

    d.terms = {
        {-2.0 * w0, kSqrt2 * v / 2.0 * std::polar(1.0, -phi0)},
        {om, k * std::polar(1.0, phi0 + phim)},
        {-om, -k * std::polar(1.0, phi0 - phim)},
        {-2.0 * w0 - om, -image_sign * k * std::polar(1.0, -(phi0 + phim))},
        {-2.0 * w0 + om, image_sign * k * std::polar(1.0, -(phi0 - phim))},
    };
    return d;
}

std::string to_string(Channel c)
{
    return c == Channel::Magnitude ? "magnitude" : "angle";
}

Channel parse_channel(const std::string& text)
{
    if (text == "magnitude" || text == "mag")
        return Channel::Magnitude;
    if (text == "angle" || text == "phase")
        return Channel::Angle;
    throw ValidationError("unknown channel '" + text + "' (expected magnitude or angle)");
}

Channel channel_for(ModulationKind kind)
{
    if (kind == ModulationKind::None)
        throw ValidationError("an unmodulated signal has no oscillation channel");
    return kind == ModulationKind::Magnitude ? Channel::Magnitude : Channel::Angle;
}

PredictedOscillation predict_oscillation(const WaveformSpec& w, const ModulationSpec& m, const WindowSpec& window)
{
    w.validate();
    m.validate();
    window.validate();

    PredictedOscillation out;
    out.channel = channel_for(m.kind);
    out.fm = m.fm;
    out.gain = h1(m.omega_m(w.fs), window.length());

    const double g = out.gain.magnitude;
    if (m.kind == ModulationKind::Magnitude)
        out.amplitude = g * kSqrt2 * w.v_rms * m.index / 2.0;
    else
        out.amplitude = g * kSqrt2 * m.index / 2.0;
    out.phase = wrap_angle(m.phim + out.gain.angle);
    return out;
}

std::vector<ResponseRow> response_curve(const std::vector<int>& h_list, double fs, int n_per_cycle,
                                        const std::vector<double>& f_grid)
{
    std::vector<ResponseRow> rows;
    rows.reserve(h_list.size() * f_grid.size());
    for (int h : h_list) {
        const WindowSpec w{h, n_per_cycle};
        w.validate();
        for (double fm : f_grid) {
            if (!(fm > 0.0 && fm < fs / 2.0))
                throw ValidationError("response grid must lie inside (0, fs/2)");
            rows.push_back({fm, h, w.length(), h1(kTwoPi * fm / fs, w.length())});
        }
    }
    return rows;
}

} // namespace pmulab
