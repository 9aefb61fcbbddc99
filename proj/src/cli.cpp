#include "wm3d/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "wm3d/attacks.hpp"
#include "wm3d/error.hpp"
#include "wm3d/extract.hpp"
#include "wm3d/metrics.hpp"
#include "wm3d/pipeline.hpp"

namespace wm3d {

namespace {

struct EmbedArgs {
    std::string in;
    std::string wm;
    std::string key_out;
    std::string out;
    double alpha = 0.1;
    std::uint64_t seed1 = 1;
    std::uint64_t seed2 = 2;
    std::uint64_t seed3 = 3;
    double select_fraction = 1.0;
    double shot_threshold = kDefaultShotThreshold;
    std::string shots;
    std::string band = "LH3";
    std::string offset = "0,0";
};

struct ExtractArgs {
    std::string in;
    std::string key;
    std::string out;
    std::string ref;
};

struct AttackArgs {
    std::string in;
    std::string out;
    std::string type;
    std::string original;
    int quality = 75;
    double sigma = 2.0;
    std::uint64_t seed = 0;
};

struct BenchArgs {
    std::string in;
    std::string wm;
    std::string alphas = "0.1";
    std::string attacks = "none,drop,average,swap,compress:75,noise:2";
    std::uint64_t seed1 = 1;
    std::uint64_t seed2 = 2;
    std::uint64_t seed3 = 3;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, sep)) {
        if (!item.empty()) {
            parts.push_back(item);
        }
    }
    return parts;
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception&) {
        throw UsageError("bad " + what + " '" + text + "'");
    }
}

EmbedOptions embed_options(const EmbedArgs& a, const VideoClip& clip) {
    EmbedOptions opt;
    opt.prep = {a.seed1, a.seed2};
    opt.seed3 = a.seed3;
    opt.params.alpha = a.alpha;
    try {
        opt.params.band = parse_band(a.band);
    } catch (const FormatError& e) {
        throw UsageError(e.what());
    }
    const auto parts = split(a.offset, ',');
    if (parts.size() != 2) {
        throw UsageError("--offset expects R,C");
    }
    opt.params.region_row0 = static_cast<int>(parse_double(parts[0], "offset row"));
    opt.params.region_col0 = static_cast<int>(parse_double(parts[1], "offset column"));
    opt.shot_threshold = a.shot_threshold;
    opt.select_fraction = a.select_fraction;
    if (!a.shots.empty()) {
        opt.manual_shots = parse_shot_ranges(a.shots, static_cast<int>(clip.frame_count()));
    }
    return opt;
}

int cmd_embed(const EmbedArgs& a, std::ostream& out, std::ostream& err) {
    const VideoClip clip = load_clip(a.in);
    const WatermarkImage wm = read_pgm_file(a.wm);
    const EmbedResult res = embed_clip(clip, wm, embed_options(a, clip));
    for (const auto& rec : res.key.records) {
        const auto s = static_cast<std::size_t>(rec.shot_index);
        err << "shot " << rec.shot_index << " [" << res.key.shots.shot_begin(s) << ","
            << res.key.shots.shot_end(s) << ") watermarked\n";
    }
    save_clip(res.watermarked, a.out);
    write_key_file(res.key, a.key_out);
    const auto report = psnr_clip(clip, res.watermarked);
    out << "shots=" << res.key.shots.shot_count() << " selected=" << res.key.records.size()
        << " psnr_mean=" << format_metric(report.psnr_mean) << '\n';
    return kExitOk;
}

int cmd_extract(const ExtractArgs& a, std::ostream& out, std::ostream& err) {
    const KeyBundle key = read_key_file(a.key);
    const VideoClip clip = load_clip(a.in);
    std::optional<WatermarkImage> ref;
    if (!a.ref.empty()) {
        ref = read_pgm_file(a.ref);
    }
    const ExtractionResult res = extract_clip(clip, key, ref);
    for (const auto& shot : res.shots) {
        if (shot.length_mismatch) {
            err << "warning: shot " << shot.shot_index << " length mismatch, padded by replication\n";
        }
        if (shot.nc) {
            out << "shot " << shot.shot_index << " nc=" << format_metric(*shot.nc) << '\n';
        }
    }
    if (res.aggregate_nc) {
        out << "aggregate nc=" << format_metric(*res.aggregate_nc) << '\n';
    }
    write_pgm_file(res.aggregate, a.out);
    return kExitOk;
}

int cmd_attack(const AttackArgs& a, std::ostream&, std::ostream&) {
    AttackSpec spec;
    spec.kind = parse_attack_kind(a.type);
    spec.quality = a.quality;
    spec.sigma = a.sigma;
    spec.seed = a.seed;
    const VideoClip clip = load_clip(a.in);
    std::optional<VideoClip> original;
    if (spec.kind == AttackKind::Drop) {
        if (a.original.empty()) {
            throw UsageError("--original is required for the drop attack");
        }
        original = load_clip(a.original);
    }
    save_clip(apply_attack(clip, spec, original ? &*original : nullptr), a.out);
    return kExitOk;
}

struct BenchAttack {
    std::string name;
    std::string parameter;
    std::optional<AttackSpec> spec;
};

BenchAttack parse_bench_attack(const std::string& item) {
    const auto colon = item.find(':');
    const std::string name = item.substr(0, colon);
    const std::string param = colon == std::string::npos ? "" : item.substr(colon + 1);
    if (name == "none") {
        return {name, "-", std::nullopt};
    }
    AttackSpec spec;
    spec.kind = parse_attack_kind(name);
    std::string shown = "-";
    if (spec.kind == AttackKind::Compress) {
        spec.quality = param.empty() ? 75 : static_cast<int>(parse_double(param, "quality"));
        shown = std::to_string(spec.quality);
    } else if (spec.kind == AttackKind::Noise) {
        spec.sigma = param.empty() ? 2.0 : parse_double(param, "sigma");
        shown = format_metric(spec.sigma);
    }
    return {name, shown, spec};
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream&) {
    const VideoClip clip = load_clip(a.in);
    const WatermarkImage wm = read_pgm_file(a.wm);
    std::vector<double> alphas;
    for (const auto& s : split(a.alphas, ',')) {
        alphas.push_back(parse_double(s, "alpha"));
    }
    std::vector<BenchAttack> attacks;
    for (const auto& s : split(a.attacks, ',')) {
        attacks.push_back(parse_bench_attack(s));
    }
    out << "alpha,attack,parameter,nc,psnr_mean\n";
    for (double alpha : alphas) {
        EmbedOptions opt;
        opt.prep = {a.seed1, a.seed2};
        opt.seed3 = a.seed3;
        opt.params.alpha = alpha;
        const EmbedResult res = embed_clip(clip, wm, opt);
        for (const auto& atk : attacks) {
            const VideoClip received = atk.spec ? apply_attack(res.watermarked, *atk.spec, &clip) : res.watermarked;
            const auto ext = extract_clip(received, res.key, wm);
            const auto report = psnr_clip(clip, received);
            out << format_metric(alpha) << ',' << atk.name << ',' << atk.parameter << ','
                << format_metric(*ext.aggregate_nc) << ',' << format_metric(report.psnr_mean) << '\n';
        }
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Blind 3-D wavelet video watermarking"};
    app.require_subcommand(1);

    EmbedArgs embed;
    auto* c_embed = app.add_subcommand("embed", "Embed a grayscale watermark into a video");
    c_embed->add_option("--in", embed.in, "Input video (.y4m or PGM directory)")->required();
    c_embed->add_option("--wm", embed.wm, "Watermark image (binary PGM)")->required();
    c_embed->add_option("--key-out", embed.key_out, "Key file to write")->required();
    c_embed->add_option("--out", embed.out, "Watermarked video (.y4m or PGM directory)")->required();
    c_embed->add_option("--alpha", embed.alpha, "Embedding strength");
    c_embed->add_option("--seed1", embed.seed1, "Permutation key");
    c_embed->add_option("--seed2", embed.seed2, "Disorder key");
    c_embed->add_option("--seed3", embed.seed3, "Shot selection key");
    c_embed->add_option("--select-fraction", embed.select_fraction, "Fraction of eligible shots to mark");
    c_embed->add_option("--shot-threshold", embed.shot_threshold, "Histogram cut threshold");
    c_embed->add_option("--shots", embed.shots, "Manual shot ranges a:b,c:d");
    c_embed->add_option("--band", embed.band, "Level-3 subband (LH3, HL3, HH3, LL3)");
    c_embed->add_option("--offset", embed.offset, "Watermark offset inside the subband R,C");

    ExtractArgs extract;
    auto* c_extract = app.add_subcommand("extract", "Blindly extract the watermark using a key file");
    c_extract->add_option("--in", extract.in, "Received video")->required();
    c_extract->add_option("--key", extract.key, "Key file")->required();
    c_extract->add_option("--out", extract.out, "Extracted watermark (PGM)")->required();
    c_extract->add_option("--ref", extract.ref, "Reference watermark for NC");

    AttackArgs attack;
    auto* c_attack = app.add_subcommand("attack", "Apply a frame-level attack");
    c_attack->add_option("--in", attack.in, "Input video")->required();
    c_attack->add_option("--out", attack.out, "Output video")->required();
    c_attack->add_option("--type", attack.type, "drop|average|swap|compress|noise")->required();
    c_attack->add_option("--original", attack.original, "Original video (drop attack)");
    c_attack->add_option("--quality", attack.quality, "Compression quality 1..100");
    c_attack->add_option("--sigma", attack.sigma, "Noise standard deviation");
    c_attack->add_option("--seed", attack.seed, "Noise seed");

    std::string psnr_a;
    std::string psnr_b;
    bool per_frame = false;
    auto* c_psnr = app.add_subcommand("psnr", "Mean PSNR between two videos");
    c_psnr->add_option("a", psnr_a)->required();
    c_psnr->add_option("b", psnr_b)->required();
    c_psnr->add_flag("--per-frame", per_frame, "Print one value per frame before the mean");

    std::string nc_a;
    std::string nc_b;
    auto* c_nc = app.add_subcommand("nc", "Normalized correlation of two watermark images");
    c_nc->add_option("reference", nc_a)->required();
    c_nc->add_option("extracted", nc_b)->required();

    std::string shots_in;
    double shots_threshold = kDefaultShotThreshold;
    auto* c_shots = app.add_subcommand("shots", "Print detected shot boundaries");
    c_shots->add_option("--in", shots_in)->required();
    c_shots->add_option("--threshold", shots_threshold);

    BenchArgs bench;
    auto* c_bench = app.add_subcommand("bench", "Robustness table as CSV");
    c_bench->add_option("--in", bench.in)->required();
    c_bench->add_option("--wm", bench.wm)->required();
    c_bench->add_option("--alphas", bench.alphas, "Comma-separated alpha values");
    c_bench->add_option("--attacks", bench.attacks, "e.g. none,drop,average,swap,compress:75,noise:2");
    c_bench->add_option("--seed1", bench.seed1);
    c_bench->add_option("--seed2", bench.seed2);
    c_bench->add_option("--seed3", bench.seed3);

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("wm3d");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) {
        argv.push_back(s.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (c_embed->parsed()) return cmd_embed(embed, out, err);
        if (c_extract->parsed()) return cmd_extract(extract, out, err);
        if (c_attack->parsed()) return cmd_attack(attack, out, err);
        if (c_bench->parsed()) return cmd_bench(bench, out, err);
        if (c_psnr->parsed()) {
            const auto report = psnr_clip(load_clip(psnr_a), load_clip(psnr_b));
            if (per_frame) {
                for (double p : report.psnr_per_frame) {
                    out << format_metric(p) << '\n';
                }
            }
            out << format_metric(report.psnr_mean) << '\n';
            return kExitOk;
        }
        if (c_nc->parsed()) {
            out << format_metric(nc(read_pgm_file(nc_a), read_pgm_file(nc_b))) << '\n';
            return kExitOk;
        }
        if (c_shots->parsed()) {
            const auto shots = detect_shots(load_clip(shots_in), shots_threshold);
            for (std::size_t i = 0; i < shots.boundaries.size(); ++i) {
                out << (i ? "," : "") << shots.boundaries[i];
            }
            out << '\n';
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << '\n';
        return kExitGeometry;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace wm3d
