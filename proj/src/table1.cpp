#include "pmulab/table1.hpp"

#include <cmath>

#include "pmulab/analysis.hpp"
#include "pmulab/response.hpp"

namespace pmulab {

const std::vector<Table1Reference>& table1_reference()
{
    using K = ModulationKind;
    static const std::vector<Table1Reference> rows{
        {K::Magnitude, "h=1", 1, 60.0, 0.008276, 0.008045, 56.25, 52.09},
        {K::Magnitude, "h=2", 2, 60.0, 0.004138, 0.004016, 116.25, 112.45},
        {K::Magnitude, "h=4", 4, 60.0, 0.002069, 0.002011, 56.25, 52.10},
        {K::Magnitude, "h=8", 8, 60.0, 0.001034, 0.001004, 116.25, 112.45},
        {K::Magnitude, "h=8*", 8, 240.0, 0.001034, 0.001034, 116.25, 116.26},
        {K::Phase, "h=1", 1, 60.0, 0.9483, 0.9673, 56.25, 59.82},
        {K::Phase, "h=2", 2, 60.0, 0.4742, 0.4846, 116.25, 120.18},
        {K::Phase, "h=4", 4, 60.0, 0.2371, 0.2421, 56.25, 59.82},
        {K::Phase, "h=8", 8, 60.0, 0.1185, 0.1211, 116.25, 120.18},
        {K::Phase, "h=8*", 8, 240.0, 0.1185, 0.1185, 116.25, 116.27},
    };
    return rows;
}

Table1Tolerance table1_tolerance(const Table1Reference& ref)
{
    Table1Tolerance t{};
    t.theory_amplitude = ref.kind == ModulationKind::Magnitude ? 5e-7 : 5e-4;
    t.theory_angle_deg = 0.005;
    if (ref.fps == 240.0) {
        t.measured_amplitude = 0.002;
        t.measured_angle_deg = 0.05;
    } else {
        t.measured_amplitude = 0.01;
        t.measured_angle_deg = 1.5;
    }
    return t;
}

double angle_difference_deg(double a, double b)
{
    double d = std::remainder(a - b, 360.0);
    if (d <= -180.0)
        d += 360.0;
    return d;
}

std::vector<Table1Cell> reproduce_table1(const Table1Config& cfg)
{
    std::vector<Table1Cell> cells;
    for (const auto& ref : table1_reference()) {
        ModulationSpec mod;
        mod.kind = ref.kind;
        mod.index = ref.kind == ModulationKind::Magnitude ? cfg.alpha : cfg.beta_rad;
        mod.fm = cfg.fm;
        mod.phim = cfg.phim;

        WindowSpec window{ref.h, cfg.waveform.samples_per_cycle(), TimestampConvention::LeftEdge};
        ReportingSpec reporting{ref.fps, std::nullopt, cfg.decimation_phase};

        const double unit = ref.kind == ModulationKind::Magnitude ? 1.0 : rad_to_deg(1.0);
        const PredictedOscillation pred = predict_oscillation(cfg.waveform, mod, window);
        const PhasorStream stream = estimate_phasors(synthesize(cfg.waveform, mod), window, reporting);
        const OscillationEstimate est = fit_sinusoid(stream, channel_for(mod.kind), mod.fm);

        Table1Cell c;
        c.published = ref;
        c.tolerance = table1_tolerance(ref);
        c.A_theory = pred.amplitude * unit;
        c.theta_theory = wrap_degrees_360(rad_to_deg(pred.gain.angle));
        c.A_meas = est.A_meas * unit;
        c.theta_meas = wrap_degrees_360(rad_to_deg(est.phi_meas - mod.phim));

        c.A_theory_ok = std::abs(c.A_theory - ref.A_theory) <= c.tolerance.theory_amplitude;
        c.theta_theory_ok = std::abs(angle_difference_deg(c.theta_theory, ref.theta_theory)) <= c.tolerance.theory_angle_deg;
        c.A_meas_ok = std::abs(c.A_meas - ref.A_meas) <= c.tolerance.measured_amplitude * ref.A_meas;
        c.theta_meas_ok = std::abs(angle_difference_deg(c.theta_meas, ref.theta_meas)) <= c.tolerance.measured_angle_deg;
        cells.push_back(c);
    }
    return cells;
}

} // namespace pmulab
