#include "pmulab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pmulab/analysis.hpp"
#include "pmulab/csv.hpp"
#include "pmulab/error.hpp"
#include "pmulab/estimator.hpp"
#include "pmulab/response.hpp"
#include "pmulab/signal.hpp"
#include "pmulab/table1.hpp"

namespace pmulab::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitAnalysis = 2;
constexpr int kExitReproduceFailed = 3;

struct SignalOptions {
    double vrms = 1.0;
    double f0 = 60.0;
    double fs = 960.0;
    double phi0_deg = 0.0;
    std::string kind = "none";
    std::optional<double> index;
    std::optional<double> alpha;
    std::optional<double> beta_deg;
    double fm = 0.0;
    double phim_deg = 0.0;
    double duration_s = 4.0;

    void add_to(CLI::App& app)
    {
        app.add_option("--vrms", vrms, "RMS magnitude (p.u.)")->capture_default_str();
        app.add_option("--f0", f0, "carrier frequency (Hz)")->capture_default_str();
        app.add_option("--fs", fs, "sampling rate (Hz)")->capture_default_str();
        app.add_option("--phi0", phi0_deg, "initial carrier phase (deg)")->capture_default_str();
        app.add_option("--kind", kind, "modulation: none, magnitude or phase")
            ->check(CLI::IsMember({"none", "magnitude", "phase"}))
            ->capture_default_str();
        app.add_option("--index", index, "modulation index: alpha for magnitude, beta in degrees for phase");
        app.add_option("--alpha", alpha, "magnitude-modulation index (alias of --index)");
        app.add_option("--beta", beta_deg, "phase-modulation index in degrees (alias of --index)");
        app.add_option("--fm", fm, "oscillation frequency (Hz)");
        app.add_option("--phim", phim_deg, "initial oscillation phase (deg)")->capture_default_str();
        app.add_option("--duration", duration_s, "record length (s)")->capture_default_str();
    }

    WaveformSpec waveform() const
    {
        WaveformSpec w;
        w.v_rms = vrms;
        w.f0 = f0;
        w.fs = fs;
        w.phi0 = deg_to_rad(phi0_deg);
        if (!(duration_s > 0.0))
            throw ValidationError("duration must be positive");
        w.duration = static_cast<std::size_t>(std::llround(duration_s * fs));
        w.validate();
        return w;
    }

    ModulationSpec modulation() const
    {
        ModulationSpec m;
        m.kind = parse_modulation_kind(kind);
        const int given = (index ? 1 : 0) + (alpha ? 1 : 0) + (beta_deg ? 1 : 0);
        if (given > 1)
            throw ValidationError("give the modulation index once (--index, --alpha or --beta)");
        if (alpha && m.kind == ModulationKind::Phase)
            throw ValidationError("--alpha applies to magnitude modulation; use --beta for phase");
        if (beta_deg && m.kind == ModulationKind::Magnitude)
            throw ValidationError("--beta applies to phase modulation; use --alpha for magnitude");
        double raw = index.value_or(alpha.value_or(beta_deg.value_or(0.0)));
        m.index = m.kind == ModulationKind::Phase ? deg_to_rad(raw) : raw;
        m.fm = fm;
        m.phim = deg_to_rad(phim_deg);
        if (m.kind != ModulationKind::None && !(fm > 0.0) && m.index != 0.0)
            throw ValidationError("--fm must be positive for a modulated signal");
        m.validate();
        return m;
    }
};

struct EstimatorOptions {
    int h = 1;
    double fps = 60.0;
    bool antialias = false;
    std::string timestamp = "left";
    std::size_t decimation_phase = 0;

    void add_to(CLI::App& app)
    {
        app.add_option("--h", h, "window length in cycles")->capture_default_str();
        app.add_option("--fps", fps, "reporting rate (frames/s)")->capture_default_str();
        app.add_flag("--antialias", antialias, "low-pass the demodulated signal before decimation");
        app.add_option("--timestamp", timestamp, "frame timestamp convention")
            ->check(CLI::IsMember({"left", "center"}))
            ->capture_default_str();
        app.add_option("--decimation-phase", decimation_phase, "sample index of the first frame")
            ->capture_default_str();
    }

    WindowSpec window(int n_per_cycle) const
    {
        WindowSpec w{h, n_per_cycle, parse_timestamp_convention(timestamp)};
        w.validate();
        return w;
    }

    ReportingSpec reporting(double fs) const
    {
        ReportingSpec r{fps, std::nullopt, decimation_phase};
        r.decimation(fs);
        if (antialias)
            r.antialias = design_antialias(fps, fs);
        return r;
    }
};

void write_output(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body,
                  const std::optional<Metadata>& meta)
{
    if (path.empty() || path == "-") {
        body(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    body(file);
    if (!file)
        throw std::runtime_error("failed writing '" + path + "'");
    if (meta) {
        std::ofstream side(sidecar_path(path), std::ios::binary);
        if (!side)
            throw std::runtime_error("cannot write metadata sidecar for '" + path + "'");
        write_metadata(side, *meta);
    }
}

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    return in;
}

std::optional<Metadata> read_sidecar(const std::string& csv_path)
{
    std::ifstream in(sidecar_path(csv_path), std::ios::binary);
    if (!in)
        return std::nullopt;
    return read_metadata(in);
}

void warn_if_needed(const ModulationSpec& m, std::ostream& err)
{
    if (auto w = m.warning())
        err << "warning: " << *w << '\n';
}

double meta_number(const Metadata& meta, const std::string& key)
{
    const std::string v = lookup(meta, key);
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        throw ValidationError("metadata key '" + key + "' is not numeric: '" + v + "'");
    }
}

struct Pipeline {
    PhasorStream stream;
    std::optional<ModulationSpec> modulation;
};

// Synthesizes and estimates from flags.
Pipeline run_pipeline(const SignalOptions& sig, const EstimatorOptions& est, std::ostream& err)
{
    const WaveformSpec w = sig.waveform();
    const ModulationSpec m = sig.modulation();
    warn_if_needed(m, err);
    const WindowSpec window = est.window(w.samples_per_cycle());
    const ReportingSpec reporting = est.reporting(w.fs);
    Pipeline p{estimate_phasors(synthesize(w, m), window, reporting), m};
    Metadata meta = describe(w, m);
    meta.insert(meta.end(), p.stream.metadata.begin(), p.stream.metadata.end());
    p.stream.metadata = std::move(meta);
    return p;
}

PhasorStream load_stream(const std::string& path)
{
    auto meta = read_sidecar(path);
    if (!meta)
        throw ValidationError("phasor file '" + path + "' has no .meta sidecar");
    auto in = open_input(path);
    PhasorStream s;
    s.frames = read_phasor_csv(in);
    s.fs = meta_number(*meta, "fs");
    s.fps = meta_number(*meta, "fps");
    s.window.h = static_cast<int>(meta_number(*meta, "h"));
    s.window.n_per_cycle = static_cast<int>(meta_number(*meta, "n_per_cycle"));
    s.window.timestamp = parse_timestamp_convention(lookup(*meta, "timestamp"));
    s.window.validate();
    s.metadata = *meta;
    return s;
}

int cmd_synth(const SignalOptions& sig, const std::string& out_path, std::ostream& out, std::ostream& err)
{
    const WaveformSpec w = sig.waveform();
    const ModulationSpec m = sig.modulation();
    warn_if_needed(m, err);
    const Waveform wave = synthesize(w, m);
    const int digits = precision_digits();
    write_output(out_path, out, [&](std::ostream& o) { write_waveform_csv(o, wave, digits); }, describe(w, m));
    return kExitOk;
}

int cmd_estimate(const SignalOptions& sig, const EstimatorOptions& est, const std::string& in_path,
                 const std::string& out_path, std::ostream& out, std::ostream& err)
{
    PhasorStream stream;
    if (in_path.empty()) {
        stream = run_pipeline(sig, est, err).stream;
    } else {
        auto in = open_input(in_path);
        Waveform wave = read_waveform_csv(in);
        Metadata meta;
        double f0 = sig.f0;
        if (auto side = read_sidecar(in_path)) {
            meta = *side;
            f0 = meta_number(meta, "f0");
            if (wave.fs == 0.0)
                wave.fs = meta_number(meta, "fs");
        }
        if (wave.fs == 0.0)
            wave.fs = sig.fs;
        WaveformSpec carrier;
        carrier.f0 = f0;
        carrier.fs = wave.fs;
        const WindowSpec window = est.window(carrier.samples_per_cycle());
        stream = estimate_phasors(wave, window, est.reporting(wave.fs));
        if (meta.empty()) {
            meta = {{"fs", format_number(wave.fs, 17)}, {"f0", format_number(f0, 17)}};
        }
        meta.emplace_back("source", in_path);
        meta.insert(meta.end(), stream.metadata.begin(), stream.metadata.end());
        stream.metadata = std::move(meta);
    }
    const int digits = precision_digits();
    write_output(out_path, out, [&](std::ostream& o) { write_phasor_csv(o, stream, digits); }, stream.metadata);
    return kExitOk;
}

int cmd_response(double fs, double f0, const std::vector<int>& hs, double fmin, double fmax, double fstep,
                 const std::string& out_path, std::ostream& out)
{
    WaveformSpec carrier;
    carrier.f0 = f0;
    carrier.fs = fs;
    const int n = carrier.samples_per_cycle();
    if (!(fstep > 0.0) || !(fmax >= fmin))
        throw ValidationError("response grid needs fstep > 0 and fmax >= fmin");
    const auto count = static_cast<std::size_t>(std::floor((fmax - fmin) / fstep + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = fmin + static_cast<double>(i) * fstep;
    const auto rows = response_curve(hs, fs, n, grid);
    const int digits = precision_digits();
    Metadata meta{{"fs", format_number(fs, 17)}, {"f0", format_number(f0, 17)}, {"n_per_cycle", std::to_string(n)},
                  {"fmin", format_number(fmin, 17)}, {"fmax", format_number(fmax, 17)},
                  {"fstep", format_number(fstep, 17)}};
    write_output(out_path, out, [&](std::ostream& o) { write_response_csv(o, rows, digits); }, meta);
    return kExitOk;
}

AnalysisRow analyze_stream(const PhasorStream& stream, Channel channel, std::optional<double> fm, bool trim,
                           double gain_floor, std::ostream& err)
{
    const double f = fm ? *fm : estimate_fm(stream, channel);
    AnalysisRow row;
    row.estimate = fit_sinusoid(stream, channel, f, FitOptions{trim});
    try {
        row.recovered = recover(row.estimate, stream.window, stream.fs, gain_floor);
        row.recoverable = true;
    } catch (const UnrecoverableError& e) {
        err << "warning: " << e.what() << '\n';
        row.recovered.gain_used = h1(2.0 * std::numbers::pi * f / stream.fs, stream.window.length());
        row.recoverable = false;
    }
    return row;
}

void print_table1(std::ostream& out, const std::vector<Table1Cell>& cells)
{
    auto section = [&](ModulationKind kind, const char* title) {
        out << title << '\n';
        out << std::left << std::setw(14) << "" << std::right;
        std::vector<const Table1Cell*> sel;
        for (const auto& c : cells)
            if (c.published.kind == kind)
                sel.push_back(&c);
        for (const auto* c : sel)
            out << std::setw(24) << c->published.column;
        out << '\n';
        auto line = [&](const char* label, auto computed, auto published, auto ok, int prec) {
            out << std::left << std::setw(14) << label << std::right;
            for (const auto* c : sel) {
                std::ostringstream cell;
                cell << std::fixed << std::setprecision(prec) << computed(*c) << " (" << published(*c) << ")"
                     << (ok(*c) ? " ok" : " FAIL");
                out << std::setw(24) << cell.str();
            }
            out << '\n';
        };
        const int aprec = kind == ModulationKind::Magnitude ? 6 : 4;
        line("A_theory", [](const Table1Cell& c) { return c.A_theory; },
             [](const Table1Cell& c) { return c.published.A_theory; }, [](const Table1Cell& c) { return c.A_theory_ok; },
             aprec);
        line("A_meas", [](const Table1Cell& c) { return c.A_meas; },
             [](const Table1Cell& c) { return c.published.A_meas; }, [](const Table1Cell& c) { return c.A_meas_ok; },
             aprec);
        line("theta_theory", [](const Table1Cell& c) { return c.theta_theory; },
             [](const Table1Cell& c) { return c.published.theta_theory; },
             [](const Table1Cell& c) { return c.theta_theory_ok; }, 2);
        line("theta_meas", [](const Table1Cell& c) { return c.theta_meas; },
             [](const Table1Cell& c) { return c.published.theta_meas; },
             [](const Table1Cell& c) { return c.theta_meas_ok; }, 2);
    };
    section(ModulationKind::Magnitude, "(1) magnitude modulation, amplitude in RMS p.u., phase in degrees");
    out << '\n';
    section(ModulationKind::Phase, "(2) phase modulation, amplitude and phase in degrees");
    out << "\nvalues are computed (published); h=8* uses 240 fps, other columns 60 fps\n";
}

void write_table1_csv(std::ostream& out, const std::vector<Table1Cell>& cells, int digits)
{
    out << "modulation,column,h,fps,quantity,computed,published,abs_error,tolerance,tolerance_kind,pass\n";
    for (const auto& c : cells) {
        auto row = [&](const char* q, double computed, double published, double tol, const char* tol_kind,
                       bool ok, bool angle) {
            const double e = angle ? std::abs(angle_difference_deg(computed, published)) : std::abs(computed - published);
            out << to_string(c.published.kind) << ',' << c.published.column << ',' << c.published.h << ','
                << format_number(c.published.fps, digits) << ',' << q << ',' << format_number(computed, digits) << ','
                << format_number(published, digits) << ',' << format_number(e, digits) << ','
                << format_number(tol, digits) << ',' << tol_kind << ',' << (ok ? "true" : "false") << '\n';
        };
        row("A_theory", c.A_theory, c.published.A_theory, c.tolerance.theory_amplitude, "absolute", c.A_theory_ok, false);
        row("A_meas", c.A_meas, c.published.A_meas, c.tolerance.measured_amplitude, "relative", c.A_meas_ok, false);
        row("theta_theory_deg", c.theta_theory, c.published.theta_theory, c.tolerance.theory_angle_deg, "absolute",
            c.theta_theory_ok, true);
        row("theta_meas_deg", c.theta_meas, c.published.theta_meas, c.tolerance.measured_angle_deg, "absolute",
            c.theta_meas_ok, true);
    }
}

} // namespace

int precision_digits()
{
    const char* env = std::getenv("PMULAB_PRECISION_DIGITS");
    if (!env || !*env)
        return kDefaultDigits;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 17)
        throw ValidationError("PMULAB_PRECISION_DIGITS must be an integer in [1, 17]");
    return static_cast<int>(v);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"pmulab: windowed-DFT phasor estimation laboratory"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help and exit");  // -h would collide with --h

    std::string out_path;
    std::string in_path;

    SignalOptions synth_sig;
    auto* synth = app.add_subcommand("synth", "write a sampled modulated waveform as CSV");
    synth_sig.add_to(*synth);
    synth->add_option("--out", out_path, "output CSV (stdout when omitted)");

    SignalOptions est_sig;
    EstimatorOptions est_opts;
    auto* estimate = app.add_subcommand("estimate", "windowed-DFT phasor estimation");
    est_sig.add_to(*estimate);
    est_opts.add_to(*estimate);
    estimate->add_option("--in", in_path, "waveform CSV (synthesized from flags when omitted)");
    estimate->add_option("--out", out_path, "output phasor CSV (stdout when omitted)");

    double resp_fs = 960.0;
    double resp_f0 = 60.0;
    std::vector<int> resp_h{1, 2, 4, 8};
    double fmin = 0.1;
    double fmax = 30.0;
    double fstep = 0.1;
    auto* response = app.add_subcommand("response", "window gain table over an oscillation-frequency grid");
    response->add_option("--fs", resp_fs, "sampling rate (Hz)")->capture_default_str();
    response->add_option("--f0", resp_f0, "carrier frequency (Hz)")->capture_default_str();
    response->add_option("--h", resp_h, "window lengths in cycles")->delimiter(',')->capture_default_str();
    response->add_option("--fmin", fmin, "first grid frequency (Hz)")->capture_default_str();
    response->add_option("--fmax", fmax, "last grid frequency (Hz)")->capture_default_str();
    response->add_option("--fstep", fstep, "grid step (Hz)")->capture_default_str();
    response->add_option("--out", out_path, "output CSV (stdout when omitted)");

    SignalOptions an_sig;
    EstimatorOptions an_est;
    std::string an_channel;
    bool estimate_freq = false;
    bool no_trim = false;
    double gain_floor = kDefaultGainFloor;
    auto* analyze = app.add_subcommand("analyze", "fit the oscillation in a phasor stream and undo the window gain");
    an_sig.add_to(*analyze);
    an_est.add_to(*analyze);
    analyze->add_option("--in", in_path, "phasor CSV with .meta sidecar (pipeline from flags when omitted)");
    analyze->add_option("--channel", an_channel, "magnitude or angle (default follows --kind)")
        ->check(CLI::IsMember({"magnitude", "angle"}));
    analyze->add_flag("--estimate-fm", estimate_freq, "locate fm spectrally instead of using --fm");
    analyze->add_flag("--no-trim", no_trim, "keep frames within one window of the stream ends");
    analyze->add_option("--gain-floor", gain_floor, "smallest window gain accepted for recovery")
        ->capture_default_str();
    analyze->add_option("--out", out_path, "output analysis CSV (stdout when omitted)");

    std::string rec_channel = "magnitude";
    double rec_fm = 0.0;
    double rec_amp = 0.0;
    double rec_phi_deg = 0.0;
    int rec_h = 1;
    double rec_fs = 960.0;
    double rec_f0 = 60.0;
    double rec_floor = kDefaultGainFloor;
    auto* recover_cmd = app.add_subcommand("recover", "undo the window gain for a measured oscillation");
    recover_cmd->add_option("--channel", rec_channel, "magnitude or angle")
        ->check(CLI::IsMember({"magnitude", "angle"}))
        ->capture_default_str();
    recover_cmd->add_option("--fm", rec_fm, "oscillation frequency (Hz)")->required();
    recover_cmd->add_option("--a-meas", rec_amp, "measured amplitude (p.u., or degrees for angle)")->required();
    recover_cmd->add_option("--phi-meas", rec_phi_deg, "measured phase (deg)")->required();
    recover_cmd->add_option("--h", rec_h, "window length in cycles")->capture_default_str();
    recover_cmd->add_option("--fs", rec_fs, "sampling rate (Hz)")->capture_default_str();
    recover_cmd->add_option("--f0", rec_f0, "carrier frequency (Hz)")->capture_default_str();
    recover_cmd->add_option("--gain-floor", rec_floor, "smallest window gain accepted")->capture_default_str();
    recover_cmd->add_option("--out", out_path, "output CSV (stdout when omitted)");

    Table1Config t1;
    double t1_phi0_deg = 0.0;
    double t1_phim_deg = 0.0;
    double t1_beta_deg = rad_to_deg(t1.beta_rad);
    auto* reproduce = app.add_subcommand("reproduce", "reproduce published results");
    reproduce->require_subcommand(1);
    auto* table1 = reproduce->add_subcommand("table1", "amplitude/phase comparison at fm = 20 Hz");
    table1->add_option("--phi0", t1_phi0_deg, "initial carrier phase (deg)")->capture_default_str();
    table1->add_option("--phim", t1_phim_deg, "initial oscillation phase (deg)")->capture_default_str();
    table1->add_option("--alpha", t1.alpha, "magnitude-modulation index")->capture_default_str();
    table1->add_option("--beta", t1_beta_deg, "phase-modulation index (deg)")->capture_default_str();
    table1->add_option("--decimation-phase", t1.decimation_phase, "sample index of the first frame")
        ->capture_default_str();
    table1->add_option("--out", out_path, "machine-readable CSV");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*synth)
            return cmd_synth(synth_sig, out_path, out, err);
        if (*estimate)
            return cmd_estimate(est_sig, est_opts, in_path, out_path, out, err);
        if (*response)
            return cmd_response(resp_fs, resp_f0, resp_h, fmin, fmax, fstep, out_path, out);
        if (*analyze) {
            PhasorStream stream;
            std::optional<ModulationSpec> mod;
            if (in_path.empty()) {
                auto p = run_pipeline(an_sig, an_est, err);
                stream = std::move(p.stream);
                mod = p.modulation;
            } else {
                stream = load_stream(in_path);
            }
            Channel channel;
            if (!an_channel.empty())
                channel = parse_channel(an_channel);
            else if (mod)
                channel = channel_for(mod->kind);
            else
                channel = channel_for(parse_modulation_kind(lookup(stream.metadata, "kind")));
            std::optional<double> fm;
            if (!estimate_freq && analyze->count("--fm") > 0)
                fm = an_sig.fm;
            const AnalysisRow row = analyze_stream(stream, channel, fm, !no_trim, gain_floor, err);
            const int digits = precision_digits();
            Metadata meta = stream.metadata;
            meta.emplace_back("channel", to_string(channel));
            meta.emplace_back("fm_mode", fm ? "known" : "estimated");
            meta.emplace_back("trim_edges", no_trim ? "false" : "true");
            meta.emplace_back("gain_floor", format_number(gain_floor, 17));
            write_output(out_path, out, [&](std::ostream& o) { write_analysis_csv(o, {row}, digits); }, meta);
            return kExitOk;
        }
        if (*recover_cmd) {
            WaveformSpec carrier;
            carrier.f0 = rec_f0;
            carrier.fs = rec_fs;
            const WindowSpec window{rec_h, carrier.samples_per_cycle()};
            AnalysisRow row;
            row.estimate.channel = parse_channel(rec_channel);
            row.estimate.fm_est = rec_fm;
            row.estimate.A_meas = row.estimate.channel == Channel::Angle ? deg_to_rad(rec_amp) : rec_amp;
            row.estimate.phi_meas = wrap_angle(deg_to_rad(rec_phi_deg));
            row.recovered = recover(row.estimate, window, rec_fs, rec_floor);
            row.recoverable = true;
            const int digits = precision_digits();
            write_output(out_path, out, [&](std::ostream& o) { write_analysis_csv(o, {row}, digits); }, std::nullopt);
            return kExitOk;
        }
        if (*table1) {
            t1.waveform.phi0 = deg_to_rad(t1_phi0_deg);
            t1.phim = deg_to_rad(t1_phim_deg);
            t1.beta_rad = deg_to_rad(t1_beta_deg);
            const auto cells = reproduce_table1(t1);
            print_table1(out, cells);
            const bool all_ok = std::all_of(cells.begin(), cells.end(), [](const Table1Cell& c) { return c.ok(); });
            if (!out_path.empty()) {
                const int digits = precision_digits();
                Metadata meta = describe(t1.waveform, ModulationSpec{ModulationKind::None, 0.0, t1.fm, t1.phim});
                std::erase_if(meta, [](const auto& kv) { return kv.first == "kind" || kv.first == "index"; });
                meta.emplace_back("alpha", format_number(t1.alpha, 17));
                meta.emplace_back("beta_rad", format_number(t1.beta_rad, 17));
                meta.emplace_back("decimation_phase", std::to_string(t1.decimation_phase));
                meta.emplace_back("timestamp", "left");
                meta.emplace_back("antialias", "off");
                write_output(out_path, out, [&](std::ostream& o) { write_table1_csv(o, cells, digits); }, meta);
            }
            out << (all_ok ? "all cells within tolerance\n" : "some cells outside tolerance\n");
            return all_ok ? kExitOk : kExitReproduceFailed;
        }
    } catch (const UnrecoverableError& e) {
        err << "error: " << e.what() << '\n';
        return kExitAnalysis;
    } catch (const AnalysisError& e) {
        err << "error: " << e.what() << '\n';
        return kExitAnalysis;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}

} // namespace pmulab::cli
