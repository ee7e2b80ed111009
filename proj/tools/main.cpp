// qpt: paired-transform short convolution and edge detection from the
// command line.
//
// Subcommands: dpt (transform a vector), edge (per-channel images of a PGM),
// measure-sim (sampling simulations), verify (self checks), bench (fast vs
// naive transform timing).
//
// Exit codes: 0 success, 2 bad flags or malformed/mis-sized input,
// 3 filesystem trouble, 4 verification failed. QPT_LOG={off,error,warn,
// info,debug} controls diagnostics on stderr (default warn); it is the only
// environment variable consulted.

#include <CLI11.hpp>

#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qpt/qpt.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitIo = 3;
constexpr int kExitVerify = 4;

enum class LogLevel { off = 0, error = 1, warn = 2, info = 3, debug = 4 };

LogLevel log_threshold() {
    static const LogLevel lvl = [] {
        const char* env = std::getenv("QPT_LOG");
        const std::string v = env ? env : "warn";
        if (v == "off") return LogLevel::off;
        if (v == "error") return LogLevel::error;
        if (v == "info") return LogLevel::info;
        if (v == "debug") return LogLevel::debug;
        return LogLevel::warn;
    }();
    return lvl;
}

void logmsg(LogLevel lvl, const std::string& msg) {
    if (lvl <= log_threshold() && lvl != LogLevel::off) std::cerr << "[qpt] " << msg << "\n";
}

// Locale-independent shortest round-trip formatting.
std::string fmt(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

std::string join(const std::vector<double>& v, const char* sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += fmt(v[i]);
    }
    return s;
}

std::vector<double> parse_vector(std::istream& in, const std::string& name) {
    std::vector<double> v;
    std::string tok;
    while (in >> tok) {
        double d = 0;
        const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
        if (ec != std::errc{} || p != tok.data() + tok.size())
            throw qpt::parse_error("bad number '" + tok + "' in " + name);
        v.push_back(d);
    }
    if (v.empty()) throw qpt::parse_error(name + " contains no numbers");
    return v;
}

// Reads a whitespace-separated vector from a file, or stdin for "-".
std::vector<double> read_vector(const std::string& spec) {
    if (spec == "-") return parse_vector(std::cin, "stdin");
    std::ifstream in(spec);
    if (!in) throw qpt::io_error("cannot open '" + spec + "' for reading");
    return parse_vector(in, "'" + spec + "'");
}

const qpt::ConvolutionScheme& scheme_by_name(const std::string& name) {
    const qpt::ConvolutionScheme* s = qpt::find_scheme(name);
    if (!s) {
        std::string known;
        for (const auto& k : qpt::all_schemes()) known += std::string(" ") + k.name;
        throw qpt::parse_error("unknown scheme '" + name + "' (known:" + known + ")");
    }
    return *s;
}

std::string path_stem(const std::string& p) {
    const std::string stem = fs::path(p).stem().string();
    return stem.empty() ? "out" : stem;
}

void ensure_outdir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw qpt::io_error("cannot create output directory '" + dir.string() + "': " +
                                ec.message());
}

std::vector<std::size_t> parse_channel_list(const std::string& csv, std::size_t block) {
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t v = 0;
        const auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || p != item.data() + item.size())
            throw qpt::parse_error("bad channel index '" + item + "'");
        if (v >= block)
            throw qpt::parse_error("channel " + item + " out of range (scheme has " +
                                   std::to_string(block) + ")");
        out.push_back(v);
    }
    if (out.empty()) throw qpt::parse_error("empty channel list");
    return out;
}

std::string mask_str(const std::array<int, 5>& mask) {
    std::string s;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(mask[i]);
    }
    return s;
}

// ---------------------------------------------------------------- dpt ----

struct DptOpts {
    std::string input;
    std::string outdir;
};

int cmd_dpt(const DptOpts& o) {
    const std::vector<double> x = read_vector(o.input);
    const std::vector<double> spec = qpt::dpt_forward(x);
    const std::vector<double> uspec = qpt::dpt_forward_unitary(x);
    std::cout << "paired:  " << join(spec) << "\n";
    std::cout << "unitary: " << join(uspec) << "\n";
    if (!o.outdir.empty()) {
        ensure_outdir(o.outdir);
        const fs::path file = fs::path(o.outdir) / (path_stem(o.input) + ".spectrum.csv");
        std::ofstream out(file);
        if (!out) throw qpt::io_error("cannot open '" + file.string() + "' for writing");
        out << "index,input,paired,unitary\n";
        for (std::size_t i = 0; i < x.size(); ++i)
            out << i << "," << fmt(x[i]) << "," << fmt(spec[i]) << "," << fmt(uspec[i]) << "\n";
        if (!out) throw qpt::io_error("write to '" + file.string() + "' failed");
        std::cout << file.string() << "\n";
    }
    return kExitOk;
}

// --------------------------------------------------------------- edge ----

struct EdgeOpts {
    std::string image;
    std::string scheme = "s8-c";
    std::string channels;  // empty = all
    std::string norm = "affine";
    std::string outdir = ".";
    bool pad = false;
    bool list = false;
};

int cmd_list_schemes() {
    std::cout << "scheme\tqubits\tchannel\tname\tkind\tmask[-2..+2]\tscale\n";
    for (const auto& s : qpt::all_schemes())
        for (const auto& ch : s.channels)
            std::cout << s.name << "\t" << s.qubits << "\t" << ch.index << "\t" << ch.name << "\t"
                      << qpt::to_string(ch.kind) << "\t" << mask_str(ch.mask) << "\t"
                      << ch.scale.str() << "\n";
    return kExitOk;
}

// Loads a PGM and makes its rows power-of-two long, by padding when allowed.
qpt::GrayImage load_row_ready(const std::string& path, bool pad, std::size_t& orig_width) {
    qpt::GrayImage img = qpt::load_pgm(path);
    orig_width = img.width;
    if (img.width >= 4 && qpt::is_power_of_two(img.width)) return img;
    if (!pad)
        throw qpt::invalid_size_error("row length " + std::to_string(img.width) +
                                      " is not a power of two >= 4; rerun with --pad");
    img = qpt::pad_width_to_power_of_two(img);
    logmsg(LogLevel::info, "padded rows from " + std::to_string(orig_width) + " to " +
                               std::to_string(img.width) + " samples");
    return img;
}

int cmd_edge(const EdgeOpts& o) {
    if (o.list) return cmd_list_schemes();
    if (o.image.empty()) throw qpt::parse_error("edge needs --image (or --list-schemes)");
    const qpt::ConvolutionScheme& s = scheme_by_name(o.scheme);
    qpt::DisplayPolicy policy;
    if (o.norm == "affine")
        policy = qpt::DisplayPolicy::affine;
    else if (o.norm == "abs")
        policy = qpt::DisplayPolicy::abs;
    else
        throw qpt::parse_error("--norm must be 'affine' or 'abs', got '" + o.norm + "'");

    std::size_t orig_width = 0;
    const qpt::GrayImage img = load_row_ready(o.image, o.pad, orig_width);
    const bool padded = img.width != orig_width;

    std::vector<std::size_t> selected;
    if (o.channels.empty())
        for (const auto& ch : s.channels) selected.push_back(ch.index);
    else
        selected = parse_channel_list(o.channels, s.block_size());

    const qpt::ChannelImageSet set = qpt::process_rows(img, s);
    ensure_outdir(o.outdir);
    const std::string stem = path_stem(o.image);

    const fs::path manifest_path = fs::path(o.outdir) / (stem + ".manifest.tsv");
    std::ofstream manifest(manifest_path);
    if (!manifest) throw qpt::io_error("cannot open '" + manifest_path.string() + "'");
    manifest << "# scheme\t" << s.name << "\n";
    manifest << "channel\tname\tkind\tmask[-2..+2]\tscale\tmin\tmax\tfile\n";

    for (const std::size_t k : selected) {
        const qpt::ChannelSpec& ch = s.channels[k];
        qpt::GrayImage plane =
            padded ? qpt::crop(set.channels[k], orig_width, img.height) : set.channels[k];
        const qpt::DisplayStats st = qpt::image_stats(plane);
        const fs::path file = fs::path(o.outdir) / (stem + ".c" + std::to_string(k) + ".pgm");
        qpt::save_pgm(file, qpt::to_display(plane, policy));
        manifest << k << "\t" << ch.name << "\t" << qpt::to_string(ch.kind) << "\t"
                 << mask_str(ch.mask) << "\t" << ch.scale.str() << "\t" << fmt(st.min) << "\t"
                 << fmt(st.max) << "\t" << file.filename().string() << "\n";
        std::cout << file.string() << "\n";
    }
    if (!manifest) throw qpt::io_error("write to '" + manifest_path.string() + "' failed");
    manifest.close();
    std::cout << manifest_path.string() << "\n";
    return kExitOk;
}

// --------------------------------------------------------- measure-sim ----

struct MeasureOpts {
    std::string image;
    std::string signal;
    std::string amplitudes;
    std::string scheme = "s8-c";
    std::string mode;  // image: weighted|uniform; signal: psi|standard
    std::uint64_t shots = 10000;
    std::uint64_t seed = qpt::default_seed;
    std::string outdir;
    bool pad = false;
};

void write_histogram(const std::map<std::size_t, std::uint64_t>& hist, std::ostream& out) {
    out << "outcome,count\n";
    for (const auto& [outcome, count] : hist) out << outcome << "," << count << "\n";
}

int cmd_measure(const MeasureOpts& o) {
    const int sources = int(!o.image.empty()) + int(!o.signal.empty()) + int(!o.amplitudes.empty());
    if (sources != 1)
        throw qpt::parse_error("measure-sim needs exactly one of --image, --signal, --amplitudes");

    if (!o.image.empty()) {
        const qpt::ConvolutionScheme& s = scheme_by_name(o.scheme);
        qpt::SelectionMode mode;
        if (o.mode.empty() || o.mode == "weighted")
            mode = qpt::SelectionMode::weighted;
        else if (o.mode == "uniform")
            mode = qpt::SelectionMode::uniform;
        else
            throw qpt::parse_error("--mode for images is 'weighted' or 'uniform', got '" +
                                   o.mode + "'");
        std::size_t orig_width = 0;
        const qpt::GrayImage img = load_row_ready(o.image, o.pad, orig_width);
        qpt::GrayImage measured = qpt::simulate_measured_image(img, s, mode, o.seed);
        if (measured.width != orig_width) measured = qpt::crop(measured, orig_width, img.height);
        const fs::path dir = o.outdir.empty() ? fs::path(".") : fs::path(o.outdir);
        ensure_outdir(dir);
        const fs::path file = dir / (path_stem(o.image) + ".measured.pgm");
        qpt::save_pgm(file, measured);
        std::cout << file.string() << "\n";
        return kExitOk;
    }

    std::map<std::size_t, std::uint64_t> hist;
    std::string stem;
    if (!o.signal.empty()) {
        const qpt::ConvolutionScheme& s = scheme_by_name(o.scheme);
        qpt::PrepMode mode;
        if (o.mode.empty() || o.mode == "psi")
            mode = qpt::PrepMode::psi;
        else if (o.mode == "standard")
            mode = qpt::PrepMode::standard;
        else
            throw qpt::parse_error("--mode for signals is 'psi' or 'standard', got '" + o.mode +
                                   "'");
        const std::vector<double> f = read_vector(o.signal);
        qpt::PreparedSuperposition prep = qpt::prepare_superposition(s, f, mode);
        if (!prep.zero_windows.empty()) {
            std::string pts;
            for (std::size_t p : prep.zero_windows) pts += " " + std::to_string(p);
            logmsg(LogLevel::info, "zero-norm windows at points:" + pts);
        }
        const qpt::QuantumState st =
            qpt::apply_transform_suffix(std::move(prep.state), s.qubits);
        hist = qpt::measure(st, o.shots, o.seed);
        stem = path_stem(o.signal);
    } else {
        const std::vector<double> a = read_vector(o.amplitudes);
        if (!qpt::is_power_of_two(a.size()) || a.size() < 2)
            throw qpt::invalid_size_error("amplitude count must be a power of two >= 2, got " +
                                          std::to_string(a.size()));
        const qpt::QuantumState st =
            qpt::QuantumState::from_amplitudes(qpt::log2_exact(a.size()), a);
        hist = qpt::measure(st, o.shots, o.seed);
        stem = path_stem(o.amplitudes);
    }

    if (o.outdir.empty()) {
        write_histogram(hist, std::cout);
    } else {
        ensure_outdir(o.outdir);
        const fs::path file = fs::path(o.outdir) / (stem + ".histogram.csv");
        std::ofstream out(file);
        if (!out) throw qpt::io_error("cannot open '" + file.string() + "' for writing");
        write_histogram(hist, out);
        if (!out) throw qpt::io_error("write to '" + file.string() + "' failed");
        std::cout << file.string() << "\n";
    }
    return kExitOk;
}

// -------------------------------------------------------------- verify ----

int cmd_verify(std::uint64_t seed) {
    qpt::VerifyOptions opt;
    opt.seed = seed;
    return qpt::run_verification(std::cout, opt) ? kExitOk : kExitVerify;
}

// --------------------------------------------------------------- bench ----

struct BenchOpts {
    std::size_t min = 4;
    std::size_t max = 4096;
    std::uint64_t seed = qpt::default_seed;
};

volatile double bench_sink = 0.0;

int cmd_bench(const BenchOpts& o) {
    using clock = std::chrono::steady_clock;
    if (o.min < 2 || !qpt::is_power_of_two(o.min) || !qpt::is_power_of_two(o.max) ||
        o.max < o.min)
        throw qpt::parse_error("--min/--max must be powers of two with min <= max");
    std::cout << "N\tfast_us\tnaive_us\tspeedup\tadds\t2N-2\n";
    std::mt19937_64 rng(o.seed);
    for (std::size_t n = o.min; n <= o.max; n *= 2) {
        std::vector<double> x(n);
        for (double& v : x) v = double(long(rng() % 199) - 99);

        std::vector<qpt::counting_scalar> cx(x.begin(), x.end());
        qpt::counting_scalar::reset();
        (void)qpt::dpt_forward(cx);
        const std::uint64_t adds = qpt::counting_scalar::additions;

        auto time_loop = [](auto&& body) {
            // Repeat until ~20 ms so small sizes get a stable average.
            std::size_t iters = 0;
            const auto start = clock::now();
            std::chrono::nanoseconds elapsed{0};
            do {
                body();
                ++iters;
                elapsed = clock::now() - start;
            } while (elapsed < std::chrono::milliseconds(20));
            return double(elapsed.count()) / 1000.0 / double(iters);  // us per call
        };

        const double fast_us = time_loop([&] { bench_sink = qpt::dpt_forward(x)[n - 1]; });

        const qpt::PairedMatrix m = qpt::dpt_matrix(n);  // built once, applied many times
        std::vector<double> out(n);
        const double naive_us = time_loop([&] {
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const int e = m.rows[i][j];
                    if (e == 1)
                        acc += x[j];
                    else if (e == -1)
                        acc -= x[j];
                }
                out[i] = acc;
            }
            bench_sink = out[n - 1];
        });

        char row[160];
        std::snprintf(row, sizeof(row), "%zu\t%.3f\t%.3f\t%.1fx\t%llu\t%zu", n, fast_us, naive_us,
                      naive_us / fast_us, static_cast<unsigned long long>(adds), 2 * n - 2);
        std::cout << row << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"paired-transform short convolution and edge detection toolkit"};
    app.require_subcommand(1);

    DptOpts dpt_opts;
    CLI::App* dpt_cmd = app.add_subcommand("dpt", "transform a vector (file or '-' for stdin)");
    dpt_cmd->add_option("input", dpt_opts.input, "vector file, whitespace-separated numbers")
        ->required();
    dpt_cmd->add_option("-o,--outdir", dpt_opts.outdir, "also write <stem>.spectrum.csv here");

    EdgeOpts edge_opts;
    CLI::App* edge_cmd = app.add_subcommand("edge", "write per-channel images of a PGM");
    edge_cmd->add_option("--image", edge_opts.image, "input PGM (P5 or P2, 8-bit)");
    edge_cmd->add_option("--scheme", edge_opts.scheme, "convolution scheme")
        ->capture_default_str();
    edge_cmd->add_option("--channels", edge_opts.channels, "comma-separated channel indices");
    edge_cmd->add_option("--norm", edge_opts.norm, "display normalization: affine|abs")
        ->capture_default_str();
    edge_cmd->add_option("-o,--outdir", edge_opts.outdir, "output directory")
        ->capture_default_str();
    edge_cmd->add_flag("--pad", edge_opts.pad, "zero-pad rows to the next power of two");
    edge_cmd->add_flag("--list-schemes", edge_opts.list, "dump the scheme/channel catalog");

    MeasureOpts meas_opts;
    CLI::App* meas_cmd = app.add_subcommand("measure-sim", "sampling simulations");
    meas_cmd->add_option("--image", meas_opts.image, "PGM: per-pixel channel measurement image");
    meas_cmd->add_option("--signal", meas_opts.signal,
                         "vector: prepare + transform + measure, histogram CSV");
    meas_cmd->add_option("--amplitudes", meas_opts.amplitudes,
                         "vector: measure it directly as a state, histogram CSV");
    meas_cmd->add_option("--scheme", meas_opts.scheme, "convolution scheme")
        ->capture_default_str();
    meas_cmd->add_option("--mode", meas_opts.mode,
                         "weighted|uniform for --image, psi|standard for --signal");
    meas_cmd->add_option("--shots", meas_opts.shots, "number of samples")->capture_default_str();
    meas_cmd->add_option("--seed", meas_opts.seed, "RNG seed")->capture_default_str();
    meas_cmd->add_option("-o,--outdir", meas_opts.outdir,
                         "write outputs here (histograms default to stdout)");
    meas_cmd->add_flag("--pad", meas_opts.pad, "zero-pad rows to the next power of two");

    std::uint64_t verify_seed = qpt::default_seed;
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the self-check battery");
    verify_cmd->add_option("--seed", verify_seed, "RNG seed")->capture_default_str();

    BenchOpts bench_opts;
    CLI::App* bench_cmd = app.add_subcommand("bench", "time fast vs naive transform");
    bench_cmd->add_option("--min", bench_opts.min, "smallest size")->capture_default_str();
    bench_cmd->add_option("--max", bench_opts.max, "largest size")->capture_default_str();
    bench_cmd->add_option("--seed", bench_opts.seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitParse;
    }

    try {
        if (dpt_cmd->parsed()) return cmd_dpt(dpt_opts);
        if (edge_cmd->parsed()) return cmd_edge(edge_opts);
        if (meas_cmd->parsed()) return cmd_measure(meas_opts);
        if (verify_cmd->parsed()) return cmd_verify(verify_seed);
        if (bench_cmd->parsed()) return cmd_bench(bench_opts);
    } catch (const qpt::io_error& e) {
        logmsg(LogLevel::error, e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        logmsg(LogLevel::error, e.what());
        return kExitParse;
    }
    return kExitOk;
}
