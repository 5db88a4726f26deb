#include <cstdio>
#include <memory>
#include <string>

#include "cli.hpp"
#include "hetlab/sweep.hpp"

namespace hetlab::cli {

void setup_sweep(CLI::App& app, int& exit_code) {
    struct Opts {
        SweepConfig cfg;
        int grid = 512;
        int jobs = 0;
        std::string out = "sweep";
    };
    auto opts = std::make_shared<Opts>();

    CLI::App* cmd = app.add_subcommand(
        "sweep",
        "classify a (c_A, c_B) grid at fixed (e_A, e_B) and write the region "
        "map as <out>.csv, <out>.ppm and <out>.config");
    cmd->add_option("--ca-min", opts->cfg.ca_lo, "lower c_A edge")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--ca-max", opts->cfg.ca_hi, "upper c_A edge")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--cb-min", opts->cfg.cb_lo, "lower c_B edge")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--cb-max", opts->cfg.cb_hi, "upper c_B edge")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--ea", opts->cfg.e_a, "escape rate e_A")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--eb", opts->cfg.e_b, "escape rate e_B")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--grid", opts->grid, "grid resolution (grid x grid pixels)")
        ->check(CLI::Range(2, 8192))->capture_default_str();
    cmd->add_option("--jobs", opts->jobs, "worker threads (0 = OpenMP default)")
        ->envname("HETLAB_JOBS")->check(CLI::Range(0, 1024));
    cmd->add_option("--out", opts->out, "output prefix")->capture_default_str();
    add_config_flag(cmd);

    cmd->callback([opts, cmd, &exit_code] {
        opts->cfg.nx = opts->cfg.ny = opts->grid;
        const SweepResult res = run_sweep(opts->cfg, opts->jobs);
        write_sweep_csv(opts->out + ".csv", res);
        write_sweep_pixmap(opts->out + ".ppm", res);
        emit(opts->out + ".config", cmd->config_to_str(true, false));

        long hist[8] = {0};
        for (std::uint8_t c : res.codes) ++hist[c & 7];
        static const char* names[8] = {
            "all c.u.",     "rock-to-paper f.a.s.", "rock-to-paper e.a.s.",
            "star",         "rock-scissors-paper",  "four-node",
            "marginal",     "conflict"};
        std::printf("sweep %dx%d, c_A in [%g, %g], c_B in [%g, %g], e_A=%g, e_B=%g\n",
                    opts->cfg.nx, opts->cfg.ny, opts->cfg.ca_lo, opts->cfg.ca_hi,
                    opts->cfg.cb_lo, opts->cfg.cb_hi, opts->cfg.e_a, opts->cfg.e_b);
        for (int c = 0; c < 8; ++c)
            if (hist[c]) std::printf("  code %d  %-22s %ld\n", c, names[c], hist[c]);
        std::printf("wrote %s.csv %s.ppm %s.config\n", opts->out.c_str(),
                    opts->out.c_str(), opts->out.c_str());
        // conflict pixels mean the two pipelines disagreed somewhere
        exit_code = hist[7] == 0 ? 0 : 1;
    });
}

}  // namespace hetlab::cli
