#include <omp.h>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hetlab/network.hpp"
#include "hetlab/report_json.hpp"
#include "hetlab/simulate.hpp"

namespace hetlab::cli {

namespace {

// "rsp", "four-node+r2", ... -> cycle instance
CycleSpec parse_cycle(const std::string& name) {
    std::string base = name;
    int rot = 0;
    const std::size_t plus = name.find("+r");
    if (plus != std::string::npos) {
        base = name.substr(0, plus);
        try {
            rot = std::stoi(name.substr(plus + 2));
        } catch (const std::exception&) {
            throw std::runtime_error("bad rotation suffix in cycle name: " + name);
        }
    }
    for (int f = 0; f < 4; ++f) {
        const auto fam = static_cast<CycleFamily>(f);
        if (cycle_family_name(fam) == base) return rotated_cycle(fam, rot);
    }
    throw std::runtime_error(
        "unknown cycle \"" + name +
        "\" (expected rock-to-paper, star, rsp or four-node, optionally +rK)");
}

}  // namespace

void setup_simulate(CLI::App& app, int& exit_code) {
    (void)exit_code;  // simulate reports through its outputs; errors throw
    struct Opts {
        GameParameters p{1.0, 1.0, 1.0, 0.8};
        std::vector<double> x0;
        std::string tube;
        bool network = false;
        int n = 100;
        double delta = 0.05;
        double eta = 0.05;
        double tmax = 1e4;
        std::uint64_t seed = 1;
        int jobs = 0;
        std::string out;
    };
    auto opts = std::make_shared<Opts>();

    CLI::App* cmd = app.add_subcommand(
        "simulate",
        "integrate the flow directly: single trajectories (--x0), "
        "delta-tube shadowing studies (--tube), or the interior "
        "attraction test (--network-test)");
    add_param_flags(cmd, &opts->p, true);
    cmd->add_option("--x0", opts->x0,
                    "initial point, five comma-separated coordinates")
        ->delimiter(',');
    cmd->add_option("--tube", opts->tube,
                    "sample a delta-tube around this cycle and report which "
                    "cycle each trajectory shadows");
    cmd->add_flag("--network-test", opts->network,
                  "integrate interior samples and report the fraction "
                  "approaching the network");
    cmd->add_option("-n,--samples", opts->n, "number of samples")
        ->check(CLI::Range(1, 100000))->capture_default_str();
    cmd->add_option("--delta", opts->delta, "tube radius / shadowing distance")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--eta", opts->eta, "node-ball radius for itineraries")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--tmax", opts->tmax, "integration horizon")
        ->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--seed", opts->seed, "sampling seed")->capture_default_str();
    cmd->add_option("--jobs", opts->jobs, "worker threads (0 = OpenMP default)")
        ->envname("HETLAB_JOBS")->check(CLI::Range(0, 1024));
    cmd->add_option("--out", opts->out, "output path (trajectory CSV / JSON report)");

    cmd->callback([opts] {
        const int modes = int(!opts->x0.empty()) + int(!opts->tube.empty()) +
                          int(opts->network);
        if (modes != 1)
            throw CLI::ValidationError(
                "simulate", "choose exactly one of --x0, --tube, --network-test");
        if (opts->jobs > 0) omp_set_num_threads(opts->jobs);

        if (!opts->x0.empty()) {
            if (opts->x0.size() != 5)
                throw std::runtime_error("x0 must have exactly 5 coordinates");
            Point5 x0;
            for (int i = 0; i < 5; ++i) {
                if (opts->x0[i] < 0)
                    throw std::runtime_error("x0 coordinates must be nonnegative");
                x0[i] = opts->x0[i];
            }
            IntegrateOptions iopt;
            iopt.t_max = opts->tmax;
            iopt.max_step = default_max_step(opts->p);
            const Trajectory traj = integrate(rspls_system(opts->p), x0, iopt);
            if (opts->out.empty()) {
                std::fputs("t,x1,x2,x3,x4,x5\n", stdout);
                for (std::size_t k = 0; k < traj.t.size(); ++k)
                    std::printf("%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", traj.t[k],
                                traj.x[k][0], traj.x[k][1], traj.x[k][2],
                                traj.x[k][3], traj.x[k][4]);
            } else {
                write_trajectory_csv(opts->out, traj);
                emit("", itinerary_json(extract_itinerary(traj, opts->eta)) + "\n");
            }
            return;
        }

        if (!opts->tube.empty()) {
            const CycleSpec cycle = parse_cycle(opts->tube);
            const TubeStudy study = tube_study(opts->p, cycle, opts->n, opts->delta,
                                               opts->eta, opts->seed);
            emit(opts->out, tube_study_json(study) + "\n");
            return;
        }

        const NetworkAttraction na =
            network_attraction_test(opts->p, opts->n, opts->seed);
        emit(opts->out, network_attraction_json(na) + "\n");
    });
}

}  // namespace hetlab::cli
