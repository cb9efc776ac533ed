#pragma once

#include <string>
#include <vector>

#include "pmulab/estimator.hpp"
#include "pmulab/signal.hpp"

namespace pmulab {

/// Published comparison at fm = 20 Hz, fs = 960 Hz, V = 1 p.u.
/// Magnitude-modulation amplitudes are RMS p.u.; phase-modulation
/// amplitudes and every angle are in degrees.
struct Table1Reference {
    ModulationKind kind;
    const char* column;  // "h=1" .. "h=8", "h=8*" (240 fps)
    int h;
    double fps;
    double A_theory;
    double A_meas;
    double theta_theory;
    double theta_meas;
};

const std::vector<Table1Reference>& table1_reference();

struct Table1Tolerance {
    double theory_amplitude;     // absolute, in the channel's table units
    double theory_angle_deg;
    double measured_amplitude;   // relative
    double measured_angle_deg;
};

/// Acceptance thresholds for one cell of the table.
Table1Tolerance table1_tolerance(const Table1Reference& ref);

struct Table1Config {
    WaveformSpec waveform;  // defaults: 1 p.u., 60 Hz, 960 Hz, 4 s
    double alpha = 0.01;
    double beta_rad = 0.02;
    double fm = 20.0;
    double phim = 0.0;
    std::size_t decimation_phase = 0;
};

struct Table1Cell {
    Table1Reference published;
    Table1Tolerance tolerance;
    double A_theory = 0.0;
    double A_meas = 0.0;
    double theta_theory = 0.0;  // degrees in [0, 360)
    double theta_meas = 0.0;
    bool A_theory_ok = false;
    bool theta_theory_ok = false;
    bool A_meas_ok = false;
    bool theta_meas_ok = false;

    bool ok() const { return A_theory_ok && theta_theory_ok && A_meas_ok && theta_meas_ok; }
};

/// Runs prediction and the full synthesize/estimate/fit pipeline per cell.
std::vector<Table1Cell> reproduce_table1(const Table1Config& cfg = {});

/// Signed difference a - b in degrees, wrapped to (-180, 180].
double angle_difference_deg(double a, double b);

} // namespace pmulab
