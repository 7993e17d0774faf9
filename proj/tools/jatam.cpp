// jatam: enumerate tile-set search spaces, run GA sweeps, render shapes and
// compute shape hashes.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "jatam/assembly.hpp"
#include "jatam/checkpoint.hpp"
#include "jatam/enumerate.hpp"
#include "jatam/evolve.hpp"
#include "jatam/histogram.hpp"
#include "jatam/shape.hpp"
#include "jatam/stats.hpp"

using json = nlohmann::ordered_json;
using namespace jatam;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string hex32(std::uint32_t v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08" PRIx32, v);
    return buf;
}

// Options shared by subcommands that need a search space.
struct SpaceOptions {
    unsigned tiles = 2;
    unsigned labels = 8;
    std::string mask_preset;
    std::vector<unsigned> inert_tiles;
};

struct ClassifyOptions {
    int grid = 19;
    int k = 8;
    std::string contact = "permissive";
    bool rot_invariant = false;
};

void to_json(json& j, const SpaceOptions& o) {
    j = {{"tiles", o.tiles}, {"labels", o.labels}, {"mask_preset", o.mask_preset}, {"inert_tiles", o.inert_tiles}};
}
void from_json(const json& j, SpaceOptions& o) {
    o.tiles = j.value("tiles", o.tiles);
    o.labels = j.value("labels", o.labels);
    o.mask_preset = j.value("mask_preset", o.mask_preset);
    o.inert_tiles = j.value("inert_tiles", o.inert_tiles);
}
void to_json(json& j, const ClassifyOptions& o) {
    j = {{"grid", o.grid}, {"k", o.k}, {"contact", o.contact}, {"rot_invariant", o.rot_invariant}};
}
void from_json(const json& j, ClassifyOptions& o) {
    o.grid = j.value("grid", o.grid);
    o.k = j.value("k", o.k);
    o.contact = j.value("contact", o.contact);
    o.rot_invariant = j.value("rot_invariant", o.rot_invariant);
}

void add_space_options(CLI::App* cmd, SpaceOptions& o) {
    cmd->add_option("--tiles", o.tiles, "Tile types per set")->capture_default_str();
    cmd->add_option("--labels", o.labels, "Bonding labels (power of two)")->capture_default_str();
    cmd->add_option("--mask-preset", o.mask_preset, "Named masked space")->check(CLI::IsMember({"", "s32_3_8"}));
    cmd->add_option("--inert-tile", o.inert_tiles, "Hold every label of this tile at 0 (repeatable)");
}

void add_classify_options(CLI::App* cmd, ClassifyOptions& o) {
    cmd->add_option("--grid", o.grid, "Assembly grid dimension (odd)")->capture_default_str();
    cmd->add_option("--k", o.k, "Assembly runs per tile set")->capture_default_str();
    cmd->add_option("--contact", o.contact, "Contact rule")
        ->check(CLI::IsMember({"permissive", "strict"}))
        ->capture_default_str();
    cmd->add_flag("--rot-invariant", o.rot_invariant, "Compare shapes up to rotation");
}

SearchSpace make_space(const SpaceOptions& o) {
    std::vector<FixedBit> fixed;
    unsigned tiles = o.tiles, labels = o.labels;
    if (o.mask_preset == "s32_3_8") {
        const SearchSpace preset = SearchSpace::s32_3_8();
        tiles = preset.tile_count();
        labels = preset.label_count();
        fixed = preset.fixed_bits();
    }
    const SearchSpace plain(tiles, labels);
    const std::size_t width = 4 * plain.bits_per_label();
    for (unsigned t : o.inert_tiles) {
        if (t >= tiles)
            throw UsageError("--inert-tile " + std::to_string(t) + " is not a tile of the space");
        for (std::size_t p = t * width; p < (t + 1) * width; ++p)
            if (std::none_of(fixed.begin(), fixed.end(), [&](const FixedBit& f) { return f.position == p; }))
                fixed.push_back({p, false});
    }
    return SearchSpace(tiles, labels, std::move(fixed));
}

ClassifyParams make_classify(const ClassifyOptions& o) {
    ClassifyParams p;
    p.assembly.grid_dim = o.grid;
    p.assembly.contact = o.contact == "strict" ? ContactRule::kStrict : ContactRule::kPermissive;
    p.redundancy = o.k;
    p.rotation_invariant = o.rot_invariant;
    return p;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream os(path, mode);
    if (!os)
        throw std::runtime_error("cannot write " + path);
    return os;
}

// Finds --config FILE before CLI11 runs, so explicit flags override it.
std::optional<json> preload_config(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") {
            std::ifstream is(argv[i + 1]);
            if (!is)
                throw UsageError(std::string("cannot read config ") + argv[i + 1]);
            json j = json::parse(is);
            return j.contains("config") ? j["config"] : j;
        }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// enumerate

struct EnumerateOptions {
    SpaceOptions space;
    ClassifyOptions classify;
    std::uint64_t seed = 1;
    int workers = 0;
    std::uint64_t batch_size = 1u << 16;
    std::uint64_t stride = 1;
    std::string out = "histogram.csv";
    std::string summary;
    std::string checkpoint;
    std::uint64_t checkpoint_every = 64;
    std::string resume;
    bool quiet = false;
};

json config_json(const EnumerateOptions& o) {
    return {{"command", "enumerate"}, {"space", o.space},           {"classify", o.classify},
            {"seed", o.seed},         {"batch_size", o.batch_size}, {"stride", o.stride}};
}

void apply_config(const json& j, EnumerateOptions& o) {
    if (j.value("command", "enumerate") != "enumerate")
        throw UsageError("config was written by a different subcommand");
    o.space = j.value("space", o.space);
    o.classify = j.value("classify", o.classify);
    o.seed = j.value("seed", o.seed);
    o.batch_size = j.value("batch_size", o.batch_size);
    o.stride = j.value("stride", o.stride);
}

json totals_json(const Histogram& h) {
    return {{"deterministic", h.count(ClassKind::kDeterministic)},
            {"trivial_nondet", h.count(ClassKind::kTrivialNondet)},
            {"steric_nondet", h.count(ClassKind::kStericNondet)},
            {"unbound", h.count(ClassKind::kUnbound)}};
}

int run_enumerate(EnumerateOptions& o) {
    const auto t0 = std::chrono::steady_clock::now();
    EnumerationState state{make_space(o.space), {}, 0, {}};
    state.params.classify = make_classify(o.classify);
    state.params.seed = o.seed;
    state.params.workers = o.workers;
    state.params.batch_size = o.batch_size;
    state.params.stride = o.stride;

    if (!o.resume.empty()) {
        EnumerationState saved = load_checkpoint(o.resume);
        if (!(saved.space == state.space) || saved.params.seed != o.seed ||
            saved.params.batch_size != o.batch_size || saved.params.stride != o.stride ||
            saved.params.classify.redundancy != o.classify.k ||
            saved.params.classify.assembly.grid_dim != o.classify.grid ||
            saved.params.classify.assembly.contact != state.params.classify.assembly.contact ||
            saved.params.classify.rotation_invariant != o.classify.rot_invariant)
            throw UsageError("checkpoint " + o.resume + " was written with different parameters");
        saved.params.workers = o.workers;
        state = std::move(saved);
        if (o.checkpoint.empty())
            o.checkpoint = o.resume;
    }

    EnumerationHooks hooks;
    hooks.checkpoint_path = o.checkpoint;
    hooks.checkpoint_every = o.checkpoint_every;
    if (!o.quiet)
        hooks.progress = [](std::uint64_t done, std::uint64_t total) {
            std::fprintf(stderr, "\rbatches %" PRIu64 " / %" PRIu64, done, total);
            if (done == total)
                std::fputc('\n', stderr);
        };
    run_enumeration(state, hooks);

    const Histogram& h = state.histogram;
    const std::uint64_t visited = item_count(state.space, state.params);
    if (h.total() != visited)
        throw std::runtime_error("histogram totals do not match the number of genomes visited");
    {
        auto os = open_out(o.out);
        write_csv(os, h, state.space, visited);
    }

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto unbound = h.count(ClassKind::kUnbound);
    json summary = {
        {"config", config_json(o)},
        {"cardinality", state.space.cardinality()},
        {"visited", visited},
        {"totals", totals_json(h)},
        {"shapes", h.shapes().size()},
        {"deterministic_shapes", h.deterministic_shape_count()},
        {"hash_collisions", h.collisions()},
        {"steric_unbound_ratio",
         unbound ? json(static_cast<double>(h.count(ClassKind::kStericNondet)) / static_cast<double>(unbound))
                 : json(nullptr)},
        {"runtime_seconds", seconds},
    };
    const std::string summary_path =
        o.summary.empty() ? std::filesystem::path(o.out).replace_extension(".json").string() : o.summary;
    auto os = open_out(summary_path);
    os << summary.dump(2) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// ga

struct GaOptions {
    std::string landscape = "fujiyama";
    std::size_t pop = 512;
    std::size_t length = 32;
    std::vector<double> mu_l;
    int runs = 100;
    int cutoff = 20000;
    std::size_t bootstrap = 10000;
    std::size_t bootstrap_size = 100;
    double target = 25.0;
    double share = 0.5;
    std::string reproduction = "asexual";
    std::uint64_t seed = 1;
    int workers = 0;
    std::string out = "sweep.json";
    std::string trace_dir;
};

json config_json(const GaOptions& o) {
    return {{"command", "ga"},
            {"landscape", o.landscape},
            {"pop", o.pop},
            {"length", o.length},
            {"muL", o.mu_l},
            {"runs", o.runs},
            {"cutoff", o.cutoff},
            {"bootstrap", o.bootstrap},
            {"bootstrap_size", o.bootstrap_size},
            {"target", o.target},
            {"share", o.share},
            {"reproduction", o.reproduction},
            {"seed", o.seed}};
}

void apply_config(const json& j, GaOptions& o) {
    if (j.value("command", "ga") != "ga")
        throw UsageError("config was written by a different subcommand");
    o.landscape = j.value("landscape", o.landscape);
    o.pop = j.value("pop", o.pop);
    o.length = j.value("length", o.length);
    o.mu_l = j.value("muL", o.mu_l);
    o.runs = j.value("runs", o.runs);
    o.cutoff = j.value("cutoff", o.cutoff);
    o.bootstrap = j.value("bootstrap", o.bootstrap);
    o.bootstrap_size = j.value("bootstrap_size", o.bootstrap_size);
    o.target = j.value("target", o.target);
    o.share = j.value("share", o.share);
    o.reproduction = j.value("reproduction", o.reproduction);
    o.seed = j.value("seed", o.seed);
}

json time_json(const TimeSummary& t) {
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    return {{"median", opt(t.median)}, {"ci_lo", opt(t.ci_lo)}, {"ci_hi", opt(t.ci_hi)}, {"censored", t.censored}};
}

int run_ga_sweep(GaOptions& o) {
    if (o.mu_l.empty())
        throw UsageError("give at least one --muL value");
    for (double m : o.mu_l)
        if (!(m >= 0.0))
            throw UsageError("--muL values must be non-negative");
    if (o.runs < 1)
        throw UsageError("--runs must be >= 1");
    if (o.landscape != "fujiyama")
        throw UsageError("unknown landscape " + o.landscape);

    json points = json::array();
    for (std::size_t mi = 0; mi < o.mu_l.size(); ++mi) {
        std::vector<std::optional<int>> discovery, adaptation;
        for (int r = 0; r < o.runs; ++r) {
            GAConfig cfg;
            cfg.population = o.pop;
            cfg.genome_length = o.length;
            cfg.mu_l = o.mu_l[mi];
            cfg.reproduction = o.reproduction == "single-point" ? Reproduction::kSinglePoint
                               : o.reproduction == "uniform"    ? Reproduction::kUniform
                                                                : Reproduction::kAsexual;
            cfg.cutoff = o.cutoff;
            cfg.target_fitness = o.target;
            cfg.adaptation_share = o.share;
            cfg.seed = derive_seed(o.seed, mi, static_cast<std::uint64_t>(r));
            cfg.workers = o.workers;
            const RunRecord rec = run_ga(cfg, fujiyama_fitness);
            discovery.push_back(rec.discovery);
            adaptation.push_back(rec.adaptation);
            if (!o.trace_dir.empty()) {
                std::filesystem::create_directories(o.trace_dir);
                char name[96];
                std::snprintf(name, sizeof name, "muL_%g_run_%03d.csv", o.mu_l[mi], r);
                auto os = open_out((std::filesystem::path(o.trace_dir) / name).string());
                os << "generation,best,mean,count_at_target\n";
                for (std::size_t g = 0; g < rec.trace.size(); ++g)
                    os << g << ',' << rec.trace[g].best << ',' << rec.trace[g].mean << ','
                       << rec.trace[g].count_at_target << '\n';
            }
        }
        SplitMix64 boot(derive_seed(o.seed, mi, 0xb0075eedULL));
        const auto d = summarize_times(discovery, o.bootstrap_size, o.bootstrap, boot);
        const auto a = summarize_times(adaptation, o.bootstrap_size, o.bootstrap, boot);
        points.push_back({{"muL", o.mu_l[mi]}, {"runs", o.runs}, {"discovery", time_json(d)},
                          {"adaptation", time_json(a)}});
    }
    auto os = open_out(o.out);
    os << json{{"config", config_json(o)}, {"sweep", points}}.dump(2) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// render

struct RenderOptions {
    SpaceOptions space;
    ClassifyOptions classify;
    std::string genome;
    std::string from_histogram;
    std::size_t top = 10;
    std::string format = "ascii";
    std::uint64_t seed = 1;
    bool k_given = false;
    std::string out;
};

struct Rendered {
    std::string genome;
    std::string annotation;
    CroppedShape shape;
};

Rendered render_genome(const std::string& text, const SearchSpace& s, const RenderOptions& o) {
    const Genome g = Genome::parse(text);
    if (g.size() != s.bit_length())
        throw UsageError("genome " + text + " does not belong to the given space");
    ClassifyParams p = make_classify(o.classify);
    if (!o.k_given)
        p.redundancy = 1;
    Assembler a(decode_tileset(g, s), s.label_count(), p.assembly);
    const Classification c = classify_tileset(a, p, genome_stream_key(o.seed, 0));

    Rendered r{g.to_string(), to_string(c.kind), {}};
    if (c.has_shape()) {
        r.shape = c.shape;
        r.annotation += " " + hex32(c.hash);
    } else {
        // Show how far the first run got.
        SplitMix64 rng(derive_seed(genome_stream_key(o.seed, 0), 0));
        a.run(rng);
        r.shape = a.cropped();
        r.annotation += " partial";
    }
    if (o.k_given)
        r.annotation += " k=" + std::to_string(p.redundancy);
    return r;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

void write_svg(std::ostream& os, const std::vector<Rendered>& items) {
    constexpr int cell = 16, pad = 8, label = 18, gap = 24;
    int width = 0, height = pad;
    for (const auto& r : items) {
        width = std::max(width, std::max(r.shape.width * cell, 8 * static_cast<int>(r.annotation.size() / 2)));
        height += label + r.shape.height * cell + gap;
    }
    width += 2 * pad;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
       << "\">\n";
    int y = pad;
    for (const auto& r : items) {
        os << "  <text x=\"" << pad << "\" y=\"" << y + 12 << "\" font-family=\"monospace\" font-size=\"11\">"
           << escape_xml(r.genome + " " + r.annotation) << "</text>\n";
        y += label;
        for (int cy = 0; cy < r.shape.height; ++cy)
            for (int cx = 0; cx < r.shape.width; ++cx)
                if (r.shape.occupied(cx, cy))
                    os << "  <rect x=\"" << pad + cx * cell << "\" y=\"" << y + cy * cell << "\" width=\"" << cell
                       << "\" height=\"" << cell << "\" fill=\"#4a6fa5\" stroke=\"#1d2d44\"/>\n";
        y += r.shape.height * cell + gap;
    }
    os << "</svg>\n";
}

int run_render(RenderOptions& o) {
    if (o.genome.empty() == o.from_histogram.empty())
        throw UsageError("give exactly one of --genome or --from-histogram");
    const SearchSpace s = make_space(o.space);
    std::vector<Rendered> items;
    if (!o.genome.empty()) {
        items.push_back(render_genome(o.genome, s, o));
    } else {
        std::ifstream is(o.from_histogram);
        if (!is)
            throw UsageError("cannot read " + o.from_histogram);
        auto rows = read_csv(is);
        std::stable_sort(rows.begin(), rows.end(),
                         [](const CsvRow& a, const CsvRow& b) { return a.det_count > b.det_count; });
        for (std::size_t i = 0; i < rows.size() && i < o.top; ++i) {
            Rendered r = render_genome(rows[i].representative_genome, s, o);
            char freq[48];
            std::snprintf(freq, sizeof freq, " rank=%zu frequency=%.4e", i + 1, rows[i].frequency);
            r.annotation = hex32(rows[i].hash) + freq;
            items.push_back(std::move(r));
        }
    }

    std::ostringstream text;
    if (o.format == "svg") {
        write_svg(text, items);
    } else {
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i)
                text << '\n';
            text << items[i].genome << ' ' << items[i].annotation << '\n' << render_ascii(items[i].shape);
        }
    }
    if (o.out.empty()) {
        std::cout << text.str();
    } else {
        auto os = open_out(o.out);
        os << text.str();
    }
    return 0;
}

// ---------------------------------------------------------------------------
// hash

int run_hash(const std::string& bytes, bool bytes_given, const std::string& shape_file, bool rot_invariant) {
    if (bytes_given == !shape_file.empty())
        throw UsageError("give exactly one of --bytes or --shape");
    if (bytes_given) {
        std::string hex = bytes;
        if (hex.rfind("0x", 0) == 0 || hex.rfind("0X", 0) == 0)
            hex = hex.substr(2);
        if (hex.size() % 2)
            throw UsageError("--bytes needs an even number of hex digits");
        std::vector<std::uint8_t> data;
        for (std::size_t i = 0; i < hex.size(); i += 2) {
            unsigned v = 0;
            if (std::sscanf(hex.c_str() + i, "%2x", &v) != 1 || !std::isxdigit(static_cast<unsigned char>(hex[i])) ||
                !std::isxdigit(static_cast<unsigned char>(hex[i + 1])))
                throw UsageError("bad hex in --bytes");
            data.push_back(static_cast<std::uint8_t>(v));
        }
        std::cout << hex32(oat_hash(data)) << '\n';
        return 0;
    }
    std::ifstream is(shape_file);
    if (!is)
        throw UsageError("cannot read " + shape_file);
    std::stringstream ss;
    ss << is.rdbuf();
    const CroppedShape s = parse_ascii(ss.str());
    std::cout << hex32(rot_invariant ? rotation_invariant_hash(s) : shape_hash(s)) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tile self-assembly enumeration and genetic algorithm toolkit"};
    app.require_subcommand(1);
    std::string config_path;

    EnumerateOptions eo;
    auto* enumerate = app.add_subcommand("enumerate", "Classify every genome of a search space");
    add_space_options(enumerate, eo.space);
    add_classify_options(enumerate, eo.classify);
    enumerate->add_option("--seed", eo.seed)->capture_default_str();
    enumerate->add_option("--workers", eo.workers, "Worker threads (0: all cores)")->capture_default_str();
    enumerate->add_option("--batch-size", eo.batch_size)->capture_default_str()->check(CLI::PositiveNumber);
    enumerate->add_option("--stride", eo.stride, "Classify one random genome per block of this many")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    enumerate->add_option("--out", eo.out, "Histogram CSV")->capture_default_str();
    enumerate->add_option("--summary", eo.summary, "Summary JSON (default: --out with .json)");
    enumerate->add_option("--checkpoint", eo.checkpoint, "Checkpoint file written during the run");
    enumerate->add_option("--checkpoint-every", eo.checkpoint_every, "Batches between checkpoints")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    enumerate->add_option("--resume", eo.resume, "Continue from a checkpoint");
    enumerate->add_flag("--quiet", eo.quiet, "No progress output");
    enumerate->add_option("--config", config_path, "Reuse the config echoed in a summary JSON");

    GaOptions go;
    auto* ga = app.add_subcommand("ga", "Sweep a genetic algorithm over mutation rates");
    ga->add_option("--landscape", go.landscape)->capture_default_str();
    ga->add_option("--pop", go.pop)->capture_default_str();
    ga->add_option("--length", go.length, "Genome length in bits")->capture_default_str();
    ga->add_option("--muL", go.mu_l, "Expected flips per genome per generation (repeatable)");
    ga->add_option("--muL-grid", go.mu_l, "Comma separated muL values")->delimiter(',');
    ga->add_option("--runs", go.runs)->capture_default_str();
    ga->add_option("--cutoff", go.cutoff, "Generation cutoff")->capture_default_str();
    ga->add_option("--bootstrap", go.bootstrap, "Bootstrap resamples")->capture_default_str();
    ga->add_option("--bootstrap-size", go.bootstrap_size, "Bootstrap sample size")->capture_default_str();
    ga->add_option("--target", go.target, "Fitness target")->capture_default_str();
    ga->add_option("--share", go.share, "Population share for adaptation")->capture_default_str();
    ga->add_option("--reproduction", go.reproduction)
        ->check(CLI::IsMember({"asexual", "single-point", "uniform"}))
        ->capture_default_str();
    ga->add_option("--seed", go.seed)->capture_default_str();
    ga->add_option("--workers", go.workers)->capture_default_str();
    ga->add_option("--out", go.out, "Sweep JSON")->capture_default_str();
    ga->add_option("--trace-dir", go.trace_dir, "Write one generation trace CSV per run here");
    ga->add_option("--config", config_path, "Reuse the config echoed in a sweep JSON");

    RenderOptions ro;
    auto* render = app.add_subcommand("render", "Draw assembled shapes as ASCII or SVG");
    add_space_options(render, ro.space);
    add_classify_options(render, ro.classify);
    render->add_option("--genome", ro.genome, "Genome as 0x<hex>/<bits>");
    render->add_option("--from-histogram", ro.from_histogram, "Histogram CSV to draw from");
    render->add_option("--top", ro.top, "Number of most frequent shapes")->capture_default_str();
    render->add_option("--format", ro.format)->check(CLI::IsMember({"ascii", "svg"}))->capture_default_str();
    render->add_option("--seed", ro.seed)->capture_default_str();
    render->add_option("--out", ro.out, "Output file (default: stdout)");

    std::string hash_bytes, hash_shape;
    bool hash_rot = false;
    auto* hash = app.add_subcommand("hash", "One-at-a-time hash of bytes or of an ASCII shape");
    auto* bytes_opt = hash->add_option("--bytes", hash_bytes, "Hex bytes, may be empty")->expected(0, 1);
    hash->add_option("--shape", hash_shape, "File with a '#'/'.' drawing");
    hash->add_flag("--rot-invariant", hash_rot);

    try {
        if (auto cfg = preload_config(argc, argv)) {
            const std::string cmd = cfg->value("command", "");
            if (cmd == "enumerate")
                apply_config(*cfg, eo);
            else if (cmd == "ga")
                apply_config(*cfg, go);
            else
                throw UsageError("config has no known command");
        }
        app.parse(argc, argv);
        if (*enumerate)
            return run_enumerate(eo);
        if (*ga)
            return run_ga_sweep(go);
        if (*render) {
            ro.k_given = render->count("--k") > 0;
            return run_render(ro);
        }
        return run_hash(hash_bytes, bytes_opt->count() > 0, hash_shape, hash_rot);
    } catch (const CLI::ParseError& e) {
        // --help and --version exit 0; anything else is a usage error.
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
