#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "saltex/color_space.hpp"
#include "saltex/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Texture-based salient-object detection over image directories"};
    app.require_subcommand(1);

    saltex::RunConfig cfg;
    std::string input, gt, output;
    std::vector<std::string> space_tags;

    CLI::App* run_cmd = app.add_subcommand("run", "Compute saliency maps for a directory");
    run_cmd->add_option("--input", input, "Directory of input images")->required();
    run_cmd->add_option("--gt", gt, "Directory of ground-truth masks (enables evaluation)");
    run_cmd->add_option("--output", output, "Directory for maps and reports")->required();
    run_cmd->add_option("--superpixels", cfg.superpixels, "Superpixel count K")
        ->capture_default_str();
    run_cmd
        ->add_option("--spaces", space_tags,
                     "Color spaces to fuse, subset of rgb,hsl,luv,cmy (default all)")
        ->delimiter(',');
    run_cmd->add_option("--neighbors", cfg.neighbors, "Sampling points P")->capture_default_str();
    run_cmd->add_option("--radius", cfg.radius, "Sampling radius R")->capture_default_str();
    run_cmd->add_option("--bins", cfg.bins, "Histogram bins B per pair")->capture_default_str();
    run_cmd->add_option("--workers", cfg.workers, "Worker threads, 0 = all cores")
        ->capture_default_str();
    run_cmd->add_flag("--emit-space-maps", cfg.emit_space_maps, "Also write per-space maps");
    run_cmd->add_flag("--emit-superpixels", cfg.emit_superpixels,
                      "Also write superpixel boundary overlays");
    run_cmd->add_flag("--emit-features", cfg.emit_features, "Also dump feature CSVs");

    CLI::App* eval_cmd = app.add_subcommand("eval", "Score existing maps against ground truth");
    eval_cmd->add_option("--input", input, "Directory of saliency maps")->required();
    eval_cmd->add_option("--gt", gt, "Directory of ground-truth masks")->required();
    eval_cmd->add_option("--output", output, "Directory for report CSVs")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) {
            if (!space_tags.empty()) cfg.spaces = saltex::parse_spaces(space_tags);
            cfg.input_dir = input;
            cfg.gt_dir = gt;
            cfg.output_dir = output;
            return saltex::run(cfg);
        }
        return saltex::eval_only(input, gt, output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
