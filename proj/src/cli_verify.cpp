#include <memory>
#include <optional>

#include "cli.hpp"
#include "hetlab/report_json.hpp"
#include "hetlab/verify.hpp"

namespace hetlab::cli {

void setup_verify(CLI::App& app, int& exit_code) {
    struct Opts {
        int random = 1000;
        std::uint64_t seed = 7;
        GameParameters p{1.0, 1.0, 1.0, 0.8};
        std::string corrupt;
        std::string out;
        bool json = false;
    };
    auto opts = std::make_shared<Opts>();

    CLI::App* cmd = app.add_subcommand(
        "verify",
        "check the closed-form layer against the multiplication oracle and "
        "the documented table corrections (exit 1 on any failure)");
    cmd->add_option("--random", opts->random, "number of random parameter draws")
        ->check(CLI::Range(1, 1000000))->capture_default_str();
    cmd->add_option("--seed", opts->seed, "seed for the draws")->capture_default_str();
    add_param_flags(cmd, &opts->p, false);
    cmd->add_option("--corrupt", opts->corrupt,
                    "perturb this closed form before comparison (negative control, "
                    "e.g. \"M^(1)\")");
    cmd->add_flag("--json", opts->json, "emit the report as JSON instead of text");
    cmd->add_option("--out", opts->out, "write the report here instead of stdout");

    cmd->callback([opts, cmd, &exit_code] {
        std::optional<GameParameters> at;
        const bool ca_given = cmd->count("--ca") > 0;
        const bool cb_given = cmd->count("--cb") > 0;
        if (ca_given != cb_given)
            throw CLI::ValidationError("verify",
                                       "give both --ca and --cb for point mode");
        if (ca_given) at = opts->p;
        const VerifyReport rep =
            run_verification(opts->random, opts->seed, opts->corrupt, at);
        emit(opts->out, opts->json ? verify_report_json(rep) + "\n"
                                   : verify_report_text(rep));
        exit_code = rep.all_pass() ? 0 : 1;
    });
}

}  // namespace hetlab::cli
