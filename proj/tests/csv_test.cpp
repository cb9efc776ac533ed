#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "pmulab/csv.hpp"
#include "pmulab/error.hpp"

using namespace pmulab;

namespace {

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l))
        out.push_back(l);
    return out;
}

} // namespace

TEST(FormatNumber, Digits)
{
    EXPECT_EQ(format_number(0.1, 17), "0.10000000000000001");
    EXPECT_EQ(format_number(0.1, 15), "0.1");
    EXPECT_EQ(format_number(1.0 / 3.0, 4), "0.3333");
}

TEST(WaveformCsv, HeaderAndTimeColumn)
{
    WaveformSpec spec;
    spec.duration = 20;
    const Waveform w = synthesize(spec, ModulationSpec{});
    std::ostringstream out;
    write_waveform_csv(out, w);
    const auto lines = lines_of(out.str());
    ASSERT_EQ(lines.size(), 21u);
    EXPECT_EQ(lines[0], "sample_index,time_s,value");
    EXPECT_EQ(lines[1].substr(0, 4), "0,0,");
    EXPECT_EQ(lines[4].substr(0, 2), "3,");
    EXPECT_NE(lines[4].find(format_number(3.0 / 960.0, 17)), std::string::npos);
}

TEST(WaveformCsv, RoundTripIsLossless)
{
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g(0.0, 3.0);
    Waveform w;
    w.fs = 960.0;
    w.start_index = 0;
    for (int i = 0; i < 500; ++i)
        w.samples.push_back(g(rng));
    std::stringstream io;
    write_waveform_csv(io, w);
    const Waveform r = read_waveform_csv(io);
    EXPECT_EQ(r.samples, w.samples);
    EXPECT_EQ(r.fs, 960.0);
}

TEST(WaveformCsv, RejectsBadInput)
{
    std::istringstream wrong_header("a,b,c\n0,0,1\n");
    EXPECT_THROW(read_waveform_csv(wrong_header), ValidationError);
    std::istringstream gap("sample_index,time_s,value\n0,0,1\n2,0.002,1\n");
    EXPECT_THROW(read_waveform_csv(gap), ValidationError);
    std::istringstream junk("sample_index,time_s,value\n0,0,abc\n");
    EXPECT_THROW(read_waveform_csv(junk), ValidationError);
    std::istringstream nan("sample_index,time_s,value\n0,0,nan\n");
    EXPECT_THROW(read_waveform_csv(nan), ValidationError);
}

TEST(PhasorCsv, SchemaAndAngleRange)
{
    PhasorStream s;
    s.frames = {{0, 0.0, std::polar(1.0, std::numbers::pi)}, {16, 1.0 / 60.0, std::polar(2.0, -0.5)}};
    std::ostringstream out;
    write_phasor_csv(out, s);
    const auto lines = lines_of(out.str());
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[0], "frame_index,timestamp_s,mag_rms,angle_rad,real,imag");

    std::istringstream in(out.str());
    const auto frames = read_phasor_csv(in);
    ASSERT_EQ(frames.size(), 2u);
    EXPECT_EQ(frames[1].index, 16);
    EXPECT_EQ(frames[1].value, s.frames[1].value);
    // angle column for a value on the negative real axis is +pi, not -pi
    std::istringstream row(lines[1]);
    std::string cell;
    for (int i = 0; i < 4; ++i)
        std::getline(row, cell, ',');
    EXPECT_GT(std::stod(cell), 0.0);
}

TEST(ResponseCsv, Schema)
{
    const auto rows = response_curve({4}, 960.0, 16, {15.0, 20.0});
    std::ostringstream out;
    write_response_csv(out, rows, 10);
    const auto lines = lines_of(out.str());
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[0], "fm_hz,h,L,G,theta_deg,classification");
    EXPECT_EQ(lines[1].substr(0, 8), "15,4,64,");
    EXPECT_NE(lines[1].find(",null"), std::string::npos);
    EXPECT_NE(lines[2].find("56.25"), std::string::npos);
    EXPECT_NE(lines[2].find(",regular"), std::string::npos);
}

TEST(AnalysisCsv, Schema)
{
    AnalysisRow row;
    row.estimate.channel = Channel::Angle;
    row.estimate.fm_est = 20.0;
    row.estimate.A_meas = 0.01;
    row.recoverable = false;
    row.recovered.gain_used = h1(2.0 * std::numbers::pi * 15.0 / 960.0, 64);
    std::ostringstream out;
    write_analysis_csv(out, {row}, 6);
    const auto lines = lines_of(out.str());
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[0], "channel,fm_hz,A_meas,phi_meas_deg,A_rec,phi_rec_deg,G,theta_deg,residual_rms,recoverable");
    EXPECT_EQ(lines[1].substr(0, 20), "angle,20,0.572958,0,");
    EXPECT_NE(lines[1].find("nan,nan"), std::string::npos);
    EXPECT_EQ(lines[1].substr(lines[1].size() - 5), "false");
}

TEST(Metadata, RoundTripAndLookup)
{
    const Metadata meta = describe(WaveformSpec{}, ModulationSpec{ModulationKind::Phase, 0.02, 20.0, 0.0});
    std::stringstream io;
    write_metadata(io, meta);
    const Metadata back = read_metadata(io);
    EXPECT_EQ(back, meta);
    EXPECT_EQ(lookup(back, "kind"), "phase");
    EXPECT_EQ(lookup(back, "fs"), "960");
    EXPECT_THROW(lookup(back, "missing"), ValidationError);
    std::istringstream bad("novalue\n");
    EXPECT_THROW(read_metadata(bad), ValidationError);
}

TEST(Metadata, SidecarPath)
{
    EXPECT_EQ(sidecar_path("out/phasors.csv"), std::filesystem::path("out/phasors.meta"));
    EXPECT_EQ(sidecar_path("x"), std::filesystem::path("x.meta"));
}
