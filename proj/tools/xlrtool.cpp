// xlrtool: computes the piXel Loss Rate indicator from raw video pairs (fr),
// predicts it from packet traces alone (nr), and carries the supporting
// pipeline: ingest, channel, oracle, eval, sweep.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "xlr/channel.hpp"
#include "xlr/errors.hpp"
#include "xlr/fr_metric.hpp"
#include "xlr/ingest.hpp"
#include "xlr/manifest.hpp"
#include "xlr/nr_estimator.hpp"
#include "xlr/oracle.hpp"
#include "xlr/rng.hpp"
#include "xlr/series.hpp"
#include "xlr/stats.hpp"
#include "xlr/trace_io.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

struct GlobalOptions {
    std::uint64_t seed = 1;
    unsigned jobs = 0;  // 0 = hardware default
    std::string output;
};

std::string require_output(const GlobalOptions& g) {
    if (g.output.empty()) throw CLI::ValidationError("--output", "an output path is required");
    return g.output;
}

void sort_series_display_order(xlr::XlrSeries& series, const xlr::StreamTrace& trace) {
    std::map<int, int> display_of;
    for (const xlr::FrameMeta& f : trace.frames) display_of[f.decode_index] = f.display_index;
    std::stable_sort(series.per_frame.begin(), series.per_frame.end(),
                     [&display_of](const xlr::FrameXlr& a, const xlr::FrameXlr& b) {
                         return display_of[a.decode_index] < display_of[b.decode_index];
                     });
}

xlr::PacketizationModel parse_pack(const std::string& text) {
    xlr::PacketizationModel pack;
    if (text == "ts188") {
        pack.mode = xlr::PackMode::TS188;
    } else if (text.rfind("mtu:", 0) == 0) {
        pack.mode = xlr::PackMode::FIXED_MTU;
        pack.mtu_octets = std::stoull(text.substr(4));
    } else {
        throw xlr::ValidationError("packetization model must be mtu:<octets> or ts188, got '" + text + "'");
    }
    return pack;
}

// ---------------------------------------------------------------------------
// fr
// ---------------------------------------------------------------------------

struct FrArgs {
    std::string orig, dist;
    int width = 0, height = 0;
    std::string mode = "exact";
    int q = 16;
    std::string layout = "y";
    std::string psnr_out;
};

int run_fr(const FrArgs& a, const GlobalOptions& g) {
    const std::string output = require_output(g);
    const xlr::RawLayout layout = a.layout == "yuv420p" ? xlr::RawLayout::Yuv420p : xlr::RawLayout::LumaOnly;
    xlr::FrComparisonConfig config;
    config.mode = a.mode == "threshold" ? xlr::FrMode::THRESHOLD : xlr::FrMode::EXACT;
    config.threshold_q = a.q;

    xlr::RawLumaReader orig(a.orig, a.width, a.height, layout);
    xlr::RawLumaReader dist(a.dist, a.width, a.height, layout);
    const xlr::XlrSeries series = xlr::xlr_sequence(orig, dist, config);
    xlr::save_series_csv(series, output);

    if (!a.psnr_out.empty()) {
        xlr::RawLumaReader orig2(a.orig, a.width, a.height, layout);
        xlr::RawLumaReader dist2(a.dist, a.width, a.height, layout);
        std::ofstream out(a.psnr_out, std::ios::binary);
        if (!out) throw xlr::IoError("cannot write PSNR CSV: " + a.psnr_out);
        out << "decode_index,psnr_db\n";
        int index = 0;
        for (;;) {
            auto o = orig2.next();
            auto d = dist2.next();
            if (!o || !d) break;
            const double psnr = xlr::psnr_frame(*o, *d);
            out << index++ << ',';
            if (std::isinf(psnr))
                out << "inf\n";  // identical frames; never a float infinity in output
            else
                out << psnr << '\n';
        }
    }

    xlr::RunManifest manifest;
    manifest.subcommand = "fr";
    manifest.parameters = {{"orig", a.orig},
                           {"dist", a.dist},
                           {"width", std::to_string(a.width)},
                           {"height", std::to_string(a.height)},
                           {"mode", a.mode},
                           {"q", std::to_string(a.q)},
                           {"layout", a.layout}};
    if (!a.psnr_out.empty()) manifest.parameters["psnr_out"] = a.psnr_out;
    manifest.input_digests = {{a.orig, xlr::file_digest_hex(a.orig)}, {a.dist, xlr::file_digest_hex(a.dist)}};
    xlr::write_manifest(manifest, output);
    std::cout << "fr: " << series.per_frame.size() << " frames, mxlr " << series.mxlr << ", msxlr " << series.msxlr
              << " -> " << output << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

struct IngestArgs {
    std::string input;
    std::string structure = "ipp";
    int period = 25;
    std::string pack = "mtu:1400";
};

int run_ingest(const IngestArgs& a, const GlobalOptions& g) {
    const std::string output = require_output(g);
    const auto kind = xlr::structure_kind_from_string(a.structure);
    if (!kind || *kind == xlr::StructureKind::CUSTOM)
        throw xlr::ValidationError("--structure must be one of ipp, ibbp, hier");
    const std::vector<std::uint8_t> stream = xlr::read_binary_file(a.input);
    const xlr::IngestResult result =
        xlr::build_trace(stream, xlr::make_structure(*kind, a.period), parse_pack(a.pack));
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';
    xlr::save_trace(result.trace, output);

    xlr::RunManifest manifest;
    manifest.subcommand = "ingest";
    manifest.parameters = {{"input", a.input},
                           {"structure", a.structure},
                           {"period", std::to_string(a.period)},
                           {"pack", a.pack}};
    manifest.input_digests = {{a.input, xlr::file_digest_hex(a.input)}};
    xlr::write_manifest(manifest, output);
    std::cout << "ingest: " << result.trace.frames.size() << " frames, " << result.trace.packets.size()
              << " packets, " << result.warnings.size() << " warnings -> " << output << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// channel
// ---------------------------------------------------------------------------

struct ChannelArgs {
    std::string input;
    double plr = 0.01;
    double burst = 2.0;
    bool compose = false;
};

int run_channel(const ChannelArgs& a, const GlobalOptions& g) {
    const std::string output = require_output(g);
    const xlr::StreamTrace trace = xlr::load_trace(a.input);
    xlr::GilbertParams params{a.plr, a.burst, g.seed};
    const xlr::StreamTrace lossy = xlr::apply_channel(trace, params, a.compose);
    xlr::save_trace(lossy, output);

    std::size_t lost = 0;
    for (const auto& p : lossy.packets) lost += p.lost ? 1 : 0;

    xlr::RunManifest manifest;
    manifest.subcommand = "channel";
    manifest.parameters = {{"input", a.input},
                           {"plr", std::to_string(a.plr)},
                           {"burst_len", std::to_string(a.burst)},
                           {"compose", a.compose ? "1" : "0"}};
    manifest.input_digests = {{a.input, xlr::file_digest_hex(a.input)}};
    manifest.rng_seed = g.seed;
    manifest.rng_algorithm = std::string(xlr::SplitMix64::kAlgorithmName);
    xlr::write_manifest(manifest, output);
    std::cout << "channel: " << lost << "/" << lossy.packets.size() << " packets lost -> " << output << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// nr / oracle
// ---------------------------------------------------------------------------

struct NrArgs {
    std::string input;
    bool display_order = false;
};

int run_nr(const NrArgs& a, const GlobalOptions& g) {
    const std::string output = require_output(g);
    const xlr::StreamTrace trace = xlr::load_trace(a.input);
    xlr::XlrSeries series = xlr::estimate_xlr(trace);
    if (a.display_order) sort_series_display_order(series, trace);
    xlr::save_series_csv(series, output);

    xlr::RunManifest manifest;
    manifest.subcommand = "nr";
    manifest.parameters = {{"input", a.input}, {"display_order", a.display_order ? "1" : "0"}};
    manifest.input_digests = {{a.input, xlr::file_digest_hex(a.input)}};
    xlr::write_manifest(manifest, output);
    std::cout << "nr: " << series.per_frame.size() << " frames, mxlr " << series.mxlr << ", msxlr " << series.msxlr
              << " -> " << output << '\n';
    return 0;
}

struct OracleArgs {
    std::string input;
    int width = 0, height = 0;
    double heal = 0.0, grow = 0.0;
    bool display_order = false;
    std::string dump_masks;
};

int run_oracle(const OracleArgs& a, const GlobalOptions& g) {
    const std::string output = require_output(g);
    const xlr::StreamTrace trace = xlr::load_trace(a.input);

    xlr::MaskSink sink;
    if (!a.dump_masks.empty()) {
        std::filesystem::create_directories(a.dump_masks);
        const std::filesystem::path dir = a.dump_masks;
        sink = [dir](const xlr::LossMask& mask) {
            char name[32];
            std::snprintf(name, sizeof(name), "mask_%06d.pgm", mask.decode_index);
            xlr::write_mask_pgm(mask.grid, dir / name);
        };
    }

    xlr::XlrSeries series;
    const bool drifting = a.heal > 0.0 || a.grow > 0.0;
    if (drifting) {
        xlr::DriftConfig drift{a.heal, a.grow, g.seed};
        series = xlr::simulate_drift(trace, a.width, a.height, drift, sink);
    } else {
        series = xlr::simulate_exact(trace, a.width, a.height, sink);
    }
    if (a.display_order) sort_series_display_order(series, trace);
    xlr::save_series_csv(series, output);

    xlr::RunManifest manifest;
    manifest.subcommand = "oracle";
    manifest.parameters = {{"input", a.input},
                           {"width", std::to_string(a.width)},
                           {"height", std::to_string(a.height)},
                           {"heal", std::to_string(a.heal)},
                           {"grow", std::to_string(a.grow)},
                           {"display_order", a.display_order ? "1" : "0"}};
    manifest.input_digests = {{a.input, xlr::file_digest_hex(a.input)}};
    if (drifting) {
        manifest.rng_seed = g.seed;
        manifest.rng_algorithm = std::string(xlr::SplitMix64::kAlgorithmName);
    }
    xlr::write_manifest(manifest, output);
    std::cout << "oracle: " << series.per_frame.size() << " frames, mxlr " << series.mxlr << ", msxlr "
              << series.msxlr << " -> " << output << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalArgs {
    std::string real, est;
    std::string sequence = "-";
    std::string structure = "-";
    double plr = 0.0;
};

int run_eval(const EvalArgs& a, const GlobalOptions& g) {
    const xlr::XlrSeries real = xlr::load_series_csv(a.real, xlr::Provenance::FR);
    const xlr::XlrSeries est = xlr::load_series_csv(a.est, xlr::Provenance::NR);
    const xlr::PairReport report = xlr::evaluate_pair(real, est);
    std::cout << xlr::format_report_text(report);
    if (!g.output.empty()) {
        std::ofstream out(g.output, std::ios::binary);
        if (!out) throw xlr::IoError("cannot write report CSV: " + g.output);
        out << xlr::report_csv_header() << '\n'
            << xlr::format_report_csv_row(a.sequence, a.structure, a.plr, report) << '\n';
        xlr::RunManifest manifest;
        manifest.subcommand = "eval";
        manifest.parameters = {{"real", a.real}, {"est", a.est}};
        manifest.input_digests = {{a.real, xlr::file_digest_hex(a.real)}, {a.est, xlr::file_digest_hex(a.est)}};
        xlr::write_manifest(manifest, g.output);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepConfig {
    struct Source {
        std::string name;
        std::string path;
        bool is_stream = false;
    };
    std::vector<Source> sources;
    std::vector<xlr::StructureKind> structures;
    std::vector<double> plrs;
    int seeds = 1;
    int period = 25;
    xlr::PacketizationModel pack;
    int width = 320, height = 180;
    double burst = 2.0;
    double heal = 0.0, grow = 0.0;
};

SweepConfig parse_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw xlr::IoError("cannot open sweep config: " + path);
    SweepConfig config;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& why) {
        throw xlr::ValidationError(path + ":" + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string key;
        fields >> key;
        if (key == "trace" || key == "stream") {
            SweepConfig::Source src;
            src.is_stream = (key == "stream");
            if (!(fields >> src.name >> src.path)) fail(key + " needs <name> <path>");
            config.sources.push_back(std::move(src));
        } else if (key == "structure") {
            std::string s;
            while (fields >> s) {
                const auto kind = xlr::structure_kind_from_string(s);
                if (!kind || *kind == xlr::StructureKind::CUSTOM) fail("unknown structure '" + s + "'");
                config.structures.push_back(*kind);
            }
        } else if (key == "plr") {
            double v;
            while (fields >> v) config.plrs.push_back(v);
        } else if (key == "seeds") {
            if (!(fields >> config.seeds)) fail("seeds needs a count");
        } else if (key == "period") {
            if (!(fields >> config.period)) fail("period needs a value");
        } else if (key == "pack") {
            std::string s;
            if (!(fields >> s)) fail("pack needs a model");
            config.pack = parse_pack(s);
        } else if (key == "width") {
            if (!(fields >> config.width)) fail("width needs a value");
        } else if (key == "height") {
            if (!(fields >> config.height)) fail("height needs a value");
        } else if (key == "burst") {
            if (!(fields >> config.burst)) fail("burst needs a value");
        } else if (key == "heal") {
            if (!(fields >> config.heal)) fail("heal needs a value");
        } else if (key == "grow") {
            if (!(fields >> config.grow)) fail("grow needs a value");
        } else {
            fail("unknown config key '" + key + "'");
        }
    }
    if (config.sources.empty()) {
        ++line_no;
        fail("config lists no trace/stream sources");
    }
    if (config.plrs.empty()) config.plrs.assign(xlr::kPresetPlrs.begin(), xlr::kPresetPlrs.end());
    return config;
}

struct SweepCell {
    std::string sequence;
    std::string structure;
    double plr = 0.0;
    int seed_index = 0;
    xlr::StreamTrace clean;
};

int run_sweep(const std::string& config_path, const GlobalOptions& g) {
    const std::string output = require_output(g);
    const SweepConfig config = parse_sweep_config(config_path);

    // Expand sources into clean traces, then cells over plr x seed.
    std::vector<SweepCell> cells;
    for (const SweepConfig::Source& src : config.sources) {
        std::vector<std::pair<std::string, xlr::StreamTrace>> bases;
        if (src.is_stream) {
            if (config.structures.empty())
                throw xlr::ValidationError("sweep config has stream sources but no structure list");
            const std::vector<std::uint8_t> bytes = xlr::read_binary_file(src.path);
            for (const xlr::StructureKind kind : config.structures) {
                xlr::IngestResult r = xlr::build_trace(bytes, xlr::make_structure(kind, config.period), config.pack);
                bases.emplace_back(xlr::to_string(kind), std::move(r.trace));
            }
        } else {
            xlr::StreamTrace t = xlr::load_trace(src.path);
            const std::string label = t.structure ? xlr::to_string(t.structure->kind) : "trace";
            bases.emplace_back(label, std::move(t));
        }
        for (auto& [label, trace] : bases)
            for (double plr : config.plrs)
                for (int s = 0; s < config.seeds; ++s) cells.push_back({src.name, label, plr, s, trace});
    }

    struct CellResult {
        bool ok = false;
        std::string error;
        xlr::PairReport report;
    };
    std::vector<CellResult> results(cells.size());

    auto run_cell = [&](std::size_t i) {
        const SweepCell& cell = cells[i];
        CellResult& result = results[i];
        try {
            std::ostringstream key;
            key << cell.sequence << '/' << cell.structure << '/' << cell.plr << '/' << cell.seed_index;
            xlr::GilbertParams params{cell.plr, config.burst, xlr::derive_seed(g.seed, key.str())};
            const xlr::StreamTrace lossy = xlr::apply_channel(cell.clean, params);
            const xlr::XlrSeries estimated = xlr::estimate_xlr(lossy);
            xlr::XlrSeries real;
            if (config.heal > 0.0 || config.grow > 0.0) {
                xlr::DriftConfig drift{config.heal, config.grow, xlr::derive_seed(g.seed, key.str() + "/drift")};
                real = xlr::simulate_drift(lossy, config.width, config.height, drift);
            } else {
                real = xlr::simulate_exact(lossy, config.width, config.height);
            }
            result.report = xlr::evaluate_pair(real, estimated);
            result.ok = true;
        } catch (const std::exception& e) {
            result.error = e.what();
        }
    };

    const unsigned jobs = g.jobs ? g.jobs : std::max(1u, std::thread::hardware_concurrency());
    if (jobs <= 1 || cells.size() <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < std::min<std::size_t>(jobs, cells.size()); ++w)
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) run_cell(i);
            });
        for (std::thread& t : workers) t.join();
    }

    std::ofstream out(output, std::ios::binary);
    if (!out) throw xlr::IoError("cannot write sweep report: " + output);
    out << xlr::report_csv_header() << ",seed\n";
    std::vector<double> real_mxlr, est_mxlr, real_msxlr, est_msxlr;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const SweepCell& cell = cells[i];
        const CellResult& result = results[i];
        if (!result.ok) {
            out << "# error," << cell.sequence << ',' << cell.structure << ',' << cell.plr << ',' << cell.seed_index
                << ',' << result.error << '\n';
            ++failures;
            continue;
        }
        out << xlr::format_report_csv_row(cell.sequence, cell.structure, cell.plr, result.report) << ','
            << cell.seed_index << '\n';
        real_mxlr.push_back(result.report.real_mxlr);
        est_mxlr.push_back(result.report.est_mxlr);
        real_msxlr.push_back(result.report.real_msxlr);
        est_msxlr.push_back(result.report.est_msxlr);
    }
    // Correlation of the pooled scores across all cells (the bottom-row view).
    if (real_mxlr.size() >= 2) {
        try {
            out << "pcc_mxlr," << xlr::pcc(real_mxlr, est_mxlr) << '\n';
            out << "pcc_msxlr," << xlr::pcc(real_msxlr, est_msxlr) << '\n';
        } catch (const xlr::ValidationError&) {
            out << "# aggregate pcc undefined (zero variance)\n";
        }
    }

    xlr::RunManifest manifest;
    manifest.subcommand = "sweep";
    manifest.parameters = {{"config", config_path},
                           {"jobs", std::to_string(jobs)},
                           {"cells", std::to_string(cells.size())},
                           {"failures", std::to_string(failures)}};
    manifest.input_digests = {{config_path, xlr::file_digest_hex(config_path)}};
    manifest.rng_seed = g.seed;
    manifest.rng_algorithm = std::string(xlr::SplitMix64::kAlgorithmName);
    xlr::write_manifest(manifest, output);
    std::cout << "sweep: " << (cells.size() - failures) << "/" << cells.size() << " cells -> " << output << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"XLR toolkit: full-reference pixel loss rate and its no-reference trace-based estimate"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--seed", global.seed, "Master RNG seed")->capture_default_str();
    app.add_option("--jobs", global.jobs, "Worker threads for sweep (0 = auto)");
    app.add_option("--output,-o", global.output, "Output file path");

    FrArgs fr;
    CLI::App* cmd_fr = app.add_subcommand("fr", "Full-reference XLR between two raw luma streams");
    cmd_fr->add_option("--orig", fr.orig, "Pristine raw video")->required();
    cmd_fr->add_option("--dist", fr.dist, "Impaired raw video")->required();
    cmd_fr->add_option("--width", fr.width, "Frame width in pixels")->required();
    cmd_fr->add_option("--height", fr.height, "Frame height in pixels")->required();
    cmd_fr->add_option("--mode", fr.mode, "exact | threshold")->check(CLI::IsMember({"exact", "threshold"}));
    cmd_fr->add_option("--q", fr.q, "Threshold Q (threshold mode)")->capture_default_str();
    cmd_fr->add_option("--layout", fr.layout, "y | yuv420p")->check(CLI::IsMember({"y", "yuv420p"}));
    cmd_fr->add_option("--psnr-out", fr.psnr_out, "Also write a per-frame PSNR CSV");

    IngestArgs ingest;
    CLI::App* cmd_ingest = app.add_subcommand("ingest", "Build a packet trace from an H.264 Annex-B stream");
    cmd_ingest->add_option("--input,-i", ingest.input, "Elementary stream file")->required();
    cmd_ingest->add_option("--structure", ingest.structure, "ipp | ibbp | hier")
        ->check(CLI::IsMember({"ipp", "ibbp", "hier"}));
    cmd_ingest->add_option("--period", ingest.period, "Frames per IDR window")->capture_default_str();
    cmd_ingest->add_option("--pack", ingest.pack, "mtu:<octets> | ts188")->capture_default_str();

    ChannelArgs channel;
    CLI::App* cmd_channel = app.add_subcommand("channel", "Mark packets lost through a simplified Gilbert channel");
    cmd_channel->add_option("--input,-i", channel.input, "Clean trace file")->required();
    cmd_channel->add_option("--plr", channel.plr, "Target packet loss rate")->capture_default_str();
    cmd_channel->add_option("--burst-len", channel.burst, "Mean burst length")->capture_default_str();
    cmd_channel->add_flag("--compose", channel.compose, "OR the new losses onto existing ones");

    NrArgs nr;
    CLI::App* cmd_nr = app.add_subcommand("nr", "No-reference XLR estimate from a trace");
    cmd_nr->add_option("--input,-i", nr.input, "Trace file")->required();
    cmd_nr->add_flag("--display-order", nr.display_order, "Sort output rows by display index");

    OracleArgs oracle;
    CLI::App* cmd_oracle = app.add_subcommand("oracle", "Pixel-propagation simulation ground truth");
    cmd_oracle->add_option("--input,-i", oracle.input, "Trace file")->required();
    cmd_oracle->add_option("--width", oracle.width, "Frame width in pixels")->required();
    cmd_oracle->add_option("--height", oracle.height, "Frame height in pixels")->required();
    cmd_oracle->add_option("--heal", oracle.heal, "Drift heal rate per hop");
    cmd_oracle->add_option("--grow", oracle.grow, "Drift grow rate per hop");
    cmd_oracle->add_flag("--display-order", oracle.display_order, "Sort output rows by display index");
    cmd_oracle->add_option("--dump-masks", oracle.dump_masks, "Directory for per-frame PGM mask dumps");

    EvalArgs eval;
    CLI::App* cmd_eval = app.add_subcommand("eval", "Compare a real and an estimated series");
    cmd_eval->add_option("--real", eval.real, "Reference series CSV")->required();
    cmd_eval->add_option("--est", eval.est, "Estimated series CSV")->required();
    cmd_eval->add_option("--sequence", eval.sequence, "Label for the report row");
    cmd_eval->add_option("--structure", eval.structure, "Label for the report row");
    cmd_eval->add_option("--plr", eval.plr, "Label for the report row");

    std::string sweep_config;
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "Run the full grid from a config file");
    cmd_sweep->add_option("--config,-c", sweep_config, "Sweep config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_fr->parsed()) return run_fr(fr, global);
        if (cmd_ingest->parsed()) return run_ingest(ingest, global);
        if (cmd_channel->parsed()) return run_channel(channel, global);
        if (cmd_nr->parsed()) return run_nr(nr, global);
        if (cmd_oracle->parsed()) return run_oracle(oracle, global);
        if (cmd_eval->parsed()) return run_eval(eval, global);
        if (cmd_sweep->parsed()) return run_sweep(sweep_config, global);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const xlr::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const xlr::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
