#include "pmulab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "pmulab/error.hpp"

namespace pmulab {

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ','))
        out.push_back(cell);
    return out;
}

double to_double(const std::string& s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ValidationError("malformed number '" + s + "'");
    }
    if (used != s.size() && s.find_first_not_of(" \r", used) != std::string::npos)
        throw ValidationError("malformed number '" + s + "'");
    return v;
}

void expect_header(std::istream& in, const std::string& header)
{
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("empty CSV input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != header)
        throw ValidationError("unexpected CSV header '" + line + "', expected '" + header + "'");
}

} // namespace

std::string format_number(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

void write_waveform_csv(std::ostream& out, const Waveform& w, int digits)
{
    out << "sample_index,time_s,value\n";
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
        const auto p = w.start_index + static_cast<std::int64_t>(i);
        out << p << ',' << format_number(static_cast<double>(p) / w.fs, digits) << ','
            << format_number(w.samples[i], digits) << '\n';
    }
}

Waveform read_waveform_csv(std::istream& in)
{
    expect_header(in, "sample_index,time_s,value");
    Waveform w;
    std::string line;
    std::int64_t expected = 0;
    std::vector<double> times;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r")
            continue;
        const auto cells = split(line);
        if (cells.size() != 3)
            throw ValidationError("waveform row needs 3 columns: '" + line + "'");
        const auto p = static_cast<std::int64_t>(to_double(cells[0]));
        if (w.samples.empty())
            w.start_index = expected = p;
        if (p != expected)
            throw ValidationError("waveform sample indices must be consecutive");
        ++expected;
        if (times.size() < 2)
            times.push_back(to_double(cells[1]));
        const double v = to_double(cells[2]);
        if (!std::isfinite(v))
            throw ValidationError("waveform contains a non-finite sample");
        w.samples.push_back(v);
    }
    if (times.size() == 2 && times[1] > times[0]) {
        const double fs = 1.0 / (times[1] - times[0]);
        const double r = std::round(fs);
        w.fs = std::abs(fs - r) <= 1e-6 * r ? r : fs;
    }
    return w;
}

void write_phasor_csv(std::ostream& out, const PhasorStream& s, int digits)
{
    out << "frame_index,timestamp_s,mag_rms,angle_rad,real,imag\n";
    for (const auto& f : s.frames) {
        out << f.index << ',' << format_number(f.timestamp_s, digits) << ',' << format_number(std::abs(f.value), digits)
            << ',' << format_number(wrap_angle(std::arg(f.value)), digits) << ','
            << format_number(f.value.real(), digits) << ',' << format_number(f.value.imag(), digits) << '\n';
    }
}

std::vector<PhasorFrame> read_phasor_csv(std::istream& in)
{
    expect_header(in, "frame_index,timestamp_s,mag_rms,angle_rad,real,imag");
    std::vector<PhasorFrame> frames;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r")
            continue;
        const auto cells = split(line);
        if (cells.size() != 6)
            throw ValidationError("phasor row needs 6 columns: '" + line + "'");
        PhasorFrame f;
        f.index = static_cast<std::int64_t>(to_double(cells[0]));
        f.timestamp_s = to_double(cells[1]);
        f.value = {to_double(cells[4]), to_double(cells[5])};
        frames.push_back(f);
    }
    return frames;
}

void write_response_csv(std::ostream& out, const std::vector<ResponseRow>& rows, int digits)
{
    out << "fm_hz,h,L,G,theta_deg,classification\n";
    for (const auto& r : rows) {
        out << format_number(r.fm_hz, digits) << ',' << r.h << ',' << r.length << ','
            << format_number(r.gain.magnitude, digits) << ','
            << format_number(wrap_degrees_360(rad_to_deg(r.gain.angle)), digits) << ','
            << to_string(r.gain.classification) << '\n';
    }
}

void write_analysis_csv(std::ostream& out, const std::vector<AnalysisRow>& rows, int digits)
{
    out << "channel,fm_hz,A_meas,phi_meas_deg,A_rec,phi_rec_deg,G,theta_deg,residual_rms,recoverable\n";
    for (const auto& r : rows) {
        const auto& e = r.estimate;
        const double scale = e.channel == Channel::Angle ? rad_to_deg(1.0) : 1.0;
        out << to_string(e.channel) << ',' << format_number(e.fm_est, digits) << ','
            << format_number(e.A_meas * scale, digits) << ','
            << format_number(wrap_degrees_360(rad_to_deg(e.phi_meas)), digits) << ',';
        if (r.recoverable)
            out << format_number(r.recovered.A_rec * scale, digits) << ','
                << format_number(wrap_degrees_360(rad_to_deg(r.recovered.phi_rec)), digits) << ',';
        else
            out << "nan,nan,";
        out << format_number(r.recovered.gain_used.magnitude, digits) << ','
            << format_number(wrap_degrees_360(rad_to_deg(r.recovered.gain_used.angle)), digits) << ','
            << format_number(e.residual_rms * scale, digits) << ',' << (r.recoverable ? "true" : "false") << '\n';
    }
}

void write_metadata(std::ostream& out, const Metadata& meta)
{
    for (const auto& [k, v] : meta)
        out << k << '=' << v << '\n';
}

Metadata read_metadata(std::istream& in)
{
    Metadata meta;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line.front() == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("metadata line without '=': '" + line + "'");
        meta.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return meta;
}

std::string lookup(const Metadata& meta, const std::string& key)
{
    for (const auto& [k, v] : meta)
        if (k == key)
            return v;
    throw ValidationError("metadata is missing key '" + key + "'");
}

Metadata describe(const WaveformSpec& w, const ModulationSpec& m)
{
    auto num = [](double v) { return format_number(v, 17); };
    return {
        {"v_rms", num(w.v_rms)},
        {"f0", num(w.f0)},
        {"fs", num(w.fs)},
        {"phi0_rad", num(w.phi0)},
        {"duration_samples", std::to_string(w.duration)},
        {"kind", to_string(m.kind)},
        {"index", num(m.index)},
        {"fm", num(m.fm)},
        {"phim_rad", num(m.phim)},
    };
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv)
{
    auto p = csv;
    p.replace_extension(".meta");
    return p;
}

} // namespace pmulab
