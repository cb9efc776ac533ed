#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pmulab/analysis.hpp"
#include "pmulab/estimator.hpp"
#include "pmulab/response.hpp"
#include "pmulab/signal.hpp"

namespace pmulab {

inline constexpr int kDefaultDigits = 17;

/// Shortest fixed-width rendering used by every CSV writer.
std::string format_number(double v, int digits);

void write_waveform_csv(std::ostream& out, const Waveform& w, int digits = kDefaultDigits);
Waveform read_waveform_csv(std::istream& in);

void write_phasor_csv(std::ostream& out, const PhasorStream& s, int digits = kDefaultDigits);
/// Frames only; fps, fs and window come from the sidecar.
std::vector<PhasorFrame> read_phasor_csv(std::istream& in);

void write_response_csv(std::ostream& out, const std::vector<ResponseRow>& rows, int digits = kDefaultDigits);

struct AnalysisRow {
    OscillationEstimate estimate;
    bool recoverable = false;
    RecoveredOscillation recovered;  // gain_used is filled even when unrecoverable
};

/// Angle-channel amplitudes are written in degrees, like every CLI angle.
void write_analysis_csv(std::ostream& out, const std::vector<AnalysisRow>& rows, int digits = kDefaultDigits);

void write_metadata(std::ostream& out, const Metadata& meta);
Metadata read_metadata(std::istream& in);
std::string lookup(const Metadata& meta, const std::string& key);

Metadata describe(const WaveformSpec& w, const ModulationSpec& m);

/// foo.csv -> foo.meta
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

} // namespace pmulab
