#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "keps/parallel.hpp"

using namespace keps::cli;

int main(int argc, char** argv) {
    CLI::App app{"keps - compressible k-epsilon solver and verification tool"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    int threads = 1;
    app.add_option("--config", config_path, "path to the run configuration")->required();
    app.add_option("--output", output_dir, "override output.dir");
    app.add_option("--threads", threads, "worker threads (affects speed, never results)");

    auto* validate = app.add_subcommand("validate", "check the initial data hypotheses");
    auto* run = app.add_subcommand("run", "picard-iterate to the nonlinear solution");
    auto* decay = app.add_subcommand("decay", "homogeneous decay against the closed form");
    auto* mms = app.add_subcommand("mms", "manufactured-solution order verification");
    auto* estimate = app.add_subcommand("estimate", "constants ladder and existence time");
    for (auto* sub : {validate, run, decay, mms, estimate}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help/error text
        return code == 0 ? 0 : 2;
    }

    keps::set_threads(threads);

    try {
        RunConfig cfg = load_config_file(config_path);
        if (!output_dir.empty()) cfg.out_dir = output_dir;
        if (validate->parsed()) return cmd_validate(cfg, std::cout);
        if (run->parsed()) return cmd_run(cfg, std::cout);
        if (decay->parsed()) return cmd_decay(cfg, std::cout);
        if (mms->parsed()) return cmd_mms(cfg, std::cout);
        if (estimate->parsed()) return cmd_estimate(cfg, std::cout);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.full_message() << "\n";
        return 2;
    } catch (const keps::Error& e) {
        std::cerr << "error: " << e.full_message() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
