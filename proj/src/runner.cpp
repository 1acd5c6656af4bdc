#include "saltex/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "saltex/image_io.hpp"
#include "saltex/metrics.hpp"
#include "saltex/pipeline.hpp"

namespace saltex {

namespace {

namespace fs = std::filesystem;

const std::array<std::string, 4> kImageExts = {".png", ".jpg", ".jpeg", ".bmp"};

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return std::find(kImageExts.begin(), kImageExts.end(), ext) != kImageExts.end();
}

std::vector<fs::path> list_images(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && is_image_file(entry.path())) files.push_back(entry.path());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    return files;
}

fs::path find_mate(const fs::path& dir, const std::string& stem) {
    for (const std::string& ext : kImageExts) {
        const fs::path candidate = dir / (stem + ext);
        if (fs::exists(candidate)) return candidate;
    }
    return {};
}

/// The saved PNG is the artifact of record, so scoring happens on its
/// 8-bit quantization rather than the in-memory doubles.
SaliencyMap quantized_view(const SaliencyMap& map) {
    SaliencyMap q = map;
    for (double& v : q.values)
        v = static_cast<double>(std::clamp<long>(std::lround(255.0 * v), 0, 255)) / 255.0;
    return q;
}

std::string format_value(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(6) << v;
    return out.str();
}

void write_reports(const fs::path& dir, const std::vector<std::string>& names,
                   const std::vector<ImageEval>& evals) {
    {
        std::ofstream out(dir / "per_image.csv");
        out << "image,mae,best_f,best_tau\n";
        for (std::size_t i = 0; i < evals.size(); ++i)
            out << names[i] << ',' << format_value(evals[i].mae) << ','
                << format_value(evals[i].best_f) << ',' << evals[i].best_tau << '\n';
    }
    const EvalReport report = aggregate(evals);
    {
        std::ofstream out(dir / "curves.csv");
        out << "tau,precision,recall,f_beta\n";
        for (int tau = 0; tau < kThresholds; ++tau)
            out << tau << ',' << format_value(report.precision[tau]) << ','
                << format_value(report.recall[tau]) << ',' << format_value(report.f_curve[tau])
                << '\n';
    }
    {
        std::ofstream out(dir / "aggregate.csv");
        out << "images,mean_mae,mean_best_f\n";
        out << report.images << ',' << format_value(report.mean_mae) << ','
            << format_value(report.mean_best_f) << '\n';
    }
    std::cout << "evaluated " << report.images << " pairs: mean_mae="
              << format_value(report.mean_mae)
              << " mean_best_f=" << format_value(report.mean_best_f) << '\n';
}

struct ImageOutcome {
    bool ok = false;
    bool evaluated = false;
    std::string warning;
    ImageEval eval;
};

int pool_size(int workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

/// Runs job(i) for i in [0, count) on `workers` threads. Each worker trims
/// its OpenMP team so the two parallelism levels do not multiply.
template <class Job>
void parallel_images(std::size_t count, int workers, Job job) {
    int w = pool_size(workers);
    if (count > 0 && static_cast<std::size_t>(w) > count) w = static_cast<int>(count);
    const int omp_per_worker = std::max(1, pool_size(0) / w);
    std::atomic<std::size_t> next{0};
    auto body = [&] {
#ifdef _OPENMP
        omp_set_num_threads(omp_per_worker);
#else
        (void)omp_per_worker;
#endif
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) job(i);
    };
    if (w == 1) {
        body();
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (int t = 0; t < w; ++t) threads.emplace_back(body);
    for (std::thread& t : threads) t.join();
}

} // namespace

int run(const RunConfig& cfg) {
    if (!fs::is_directory(cfg.input_dir)) {
        std::cerr << "error: input is not a readable directory: " << cfg.input_dir.string()
                  << '\n';
        return 1;
    }
    const bool with_gt = !cfg.gt_dir.empty();
    if (with_gt && !fs::is_directory(cfg.gt_dir)) {
        std::cerr << "error: gt is not a readable directory: " << cfg.gt_dir.string() << '\n';
        return 1;
    }
    if (cfg.superpixels < 1 || cfg.neighbors < 1 || cfg.radius < 1 || cfg.bins < 1 ||
        cfg.workers < 0 || cfg.spaces.empty()) {
        std::cerr << "error: invalid configuration\n";
        return 1;
    }

    const std::vector<fs::path> inputs = list_images(cfg.input_dir);
    if (inputs.empty()) {
        std::cerr << "error: no images in " << cfg.input_dir.string() << '\n';
        return 1;
    }

    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec || !fs::is_directory(cfg.output_dir)) {
        std::cerr << "error: cannot create output directory: " << cfg.output_dir.string() << '\n';
        return 1;
    }

    // Duplicate stems would race on the same artifact names.
    std::set<std::string> stems;
    std::vector<bool> duplicate(inputs.size(), false);
    for (std::size_t i = 0; i < inputs.size(); ++i)
        duplicate[i] = !stems.insert(inputs[i].stem().string()).second;

    PipelineConfig pipeline_cfg;
    pipeline_cfg.spaces = cfg.spaces;
    pipeline_cfg.superpixels = cfg.superpixels;
    pipeline_cfg.neighborhood = {cfg.neighbors, cfg.radius};
    pipeline_cfg.bins = cfg.bins;
    const std::vector<ColorSpace> spaces = canonical_spaces(cfg.spaces);

    std::vector<ImageOutcome> outcomes(inputs.size());
    parallel_images(inputs.size(), cfg.workers, [&](std::size_t i) {
        ImageOutcome& out = outcomes[i];
        const std::string name = inputs[i].filename().string();
        const std::string stem = inputs[i].stem().string();
        if (duplicate[i]) {
            out.warning = "skipped " + name + ": duplicate basename";
            return;
        }
        try {
            const RasterU8 img = load_image(inputs[i]);
            const PipelineResult result = run_pipeline(img, pipeline_cfg);
            save_saliency(result.fused, cfg.output_dir / (stem + ".png"));
            if (cfg.emit_space_maps)
                for (std::size_t s = 0; s < spaces.size(); ++s)
                    save_saliency(result.space_maps[s],
                                  cfg.output_dir /
                                      (stem + "_" + std::string(to_string(spaces[s])) + ".png"));
            if (cfg.emit_superpixels)
                save_raster(boundary_overlay(img, result.labeling),
                            cfg.output_dir / (stem + "_superpixels.png"));
            if (cfg.emit_features)
                for (ColorSpace s : spaces)
                    write_feature_csv(
                        build_feature_field(convert(img, s), result.labeling,
                                            pipeline_cfg.neighborhood, pipeline_cfg.bins),
                        cfg.output_dir /
                            (stem + "_" + std::string(to_string(s)) + "_features.csv"));
            out.ok = true;

            if (!with_gt) return;
            const fs::path gt_path = find_mate(cfg.gt_dir, stem);
            if (gt_path.empty()) {
                out.warning = "skipped evaluation of " + name + ": no ground truth";
                return;
            }
            const GroundTruth gt = load_ground_truth(gt_path);
            out.eval = evaluate(quantized_view(result.fused), gt);
            out.evaluated = true;
        } catch (const std::exception& e) {
            out.warning = "skipped " + name + ": " + e.what();
        }
    });

    bool partial = false;
    std::size_t processed = 0;
    for (const ImageOutcome& out : outcomes) {
        if (!out.warning.empty()) {
            std::cerr << "warning: " << out.warning << '\n';
            partial = true;
        }
        processed += out.ok;
    }
    if (processed == 0) {
        std::cerr << "error: no image could be processed\n";
        return 1;
    }
    std::cout << "processed " << processed << " of " << inputs.size() << " images\n";

    if (with_gt) {
        std::vector<std::string> names;
        std::vector<ImageEval> evals;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            if (!outcomes[i].evaluated) continue;
            names.push_back(inputs[i].filename().string());
            evals.push_back(outcomes[i].eval);
        }
        if (evals.empty()) {
            std::cerr << "warning: nothing to evaluate\n";
            partial = true;
        } else {
            write_reports(cfg.output_dir, names, evals);
        }
    }
    return partial ? 2 : 0;
}

int eval_only(const std::filesystem::path& maps_dir, const std::filesystem::path& gt_dir,
              const std::filesystem::path& report_dir) {
    if (!fs::is_directory(maps_dir)) {
        std::cerr << "error: input is not a readable directory: " << maps_dir.string() << '\n';
        return 1;
    }
    if (!fs::is_directory(gt_dir)) {
        std::cerr << "error: gt is not a readable directory: " << gt_dir.string() << '\n';
        return 1;
    }
    std::error_code ec;
    fs::create_directories(report_dir, ec);
    if (ec || !fs::is_directory(report_dir)) {
        std::cerr << "error: cannot create output directory: " << report_dir.string() << '\n';
        return 1;
    }

    const std::vector<fs::path> maps = list_images(maps_dir);
    bool partial = false;
    std::vector<std::string> names;
    std::vector<ImageEval> evals;
    for (const fs::path& map_path : maps) {
        const fs::path gt_path = find_mate(gt_dir, map_path.stem().string());
        if (gt_path.empty()) {
            std::cerr << "warning: skipped " << map_path.filename().string()
                      << ": no ground truth\n";
            partial = true;
            continue;
        }
        try {
            const SaliencyMap map = load_saliency(map_path);
            const GroundTruth gt = load_ground_truth(gt_path);
            names.push_back(map_path.filename().string());
            evals.push_back(evaluate(map, gt));
        } catch (const std::exception& e) {
            std::cerr << "warning: skipped " << map_path.filename().string() << ": " << e.what()
                      << '\n';
            partial = true;
        }
    }
    if (evals.empty()) {
        std::cerr << "error: no map/ground-truth pairs to score\n";
        return 1;
    }
    write_reports(report_dir, names, evals);
    return partial ? 2 : 0;
}

} // namespace saltex
