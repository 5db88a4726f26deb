#include <cstdio>
#include <memory>
#include <stdexcept>

#include "cli.hpp"
#include "hetlab/report_json.hpp"
#include "hetlab/stability.hpp"
#include "hetlab/sweep.hpp"

namespace hetlab::cli {

namespace {

void apply_config(CLI::App* cmd, const std::string& path) {
    for (const auto& [key, value] : read_key_value_config(path)) {
        CLI::Option* op = cmd->get_option_no_throw("--" + key);
        if (op == nullptr || key == "config")
            throw CLI::ConfigError(path + ": unknown key '" + key + "'");
        if (op->count() > 0) continue;  // set explicitly, the file loses
        op->add_result(value);
        op->run_callback();
    }
}

}  // namespace

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fwrite(text.data(), 1, text.size(), f);
    if (std::fclose(f) != 0) throw std::runtime_error("write failed: " + path);
}

void add_param_flags(CLI::App* cmd, GameParameters* p, bool require_c) {
    auto* ca = cmd->add_option("--ca", p->c_a, "attack rate c_A (next neighbour)")
                   ->check(CLI::PositiveNumber);
    auto* cb = cmd->add_option("--cb", p->c_b, "attack rate c_B (third neighbour)")
                   ->check(CLI::PositiveNumber);
    cmd->add_option("--ea", p->e_a, "escape rate e_A (previous neighbour)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--eb", p->e_b, "escape rate e_B (second-previous neighbour)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    if (require_c) {
        ca->required();
        cb->required();
    }
    add_config_flag(cmd);
}

void add_config_flag(CLI::App* cmd) {
    // CLI11 never consults a subcommand's own config file during a normal
    // parse (_process_config_file only runs on the root app), so the file is
    // loaded from the option's callback instead.  Option callbacks fire
    // before required-option checks, and options the file fills have their
    // callbacks run here because the deferred-callback pass may already be
    // past them.
    cmd->add_option(
           "--config",
           [cmd](const CLI::results_t& res) {
               apply_config(cmd, res.front());
               return true;
           },
           "key=value file mirroring the long flags; flags override")
        ->configurable(false)
        ->type_name("FILE")
        ->expected(1);
}

void setup_classify(CLI::App& app, int& exit_code) {
    struct Opts {
        GameParameters p{1.0, 1.0, 1.0, 0.8};
        std::string out;
    };

    {
        auto opts = std::make_shared<Opts>();
        CLI::App* cmd = app.add_subcommand(
            "classify",
            "classify all four elementary cycles at one parameter point "
            "(exit 1 when the generic and closed-form pipelines disagree)");
        add_param_flags(cmd, &opts->p, true);
        cmd->add_option("--out", opts->out, "write the JSON report here instead of stdout");
        cmd->callback([opts, &exit_code] {
            bool agree = true;
            emit(opts->out, classify_json(opts->p, 2, &agree) + "\n");
            exit_code = agree ? 0 : 1;
        });
    }

    {
        auto opts = std::make_shared<Opts>();
        CLI::App* cmd = app.add_subcommand(
            "indices", "generic stability indices for all twelve elementary cycles");
        add_param_flags(cmd, &opts->p, true);
        cmd->add_option("--out", opts->out, "write the JSON report here instead of stdout");
        cmd->callback([opts] { emit(opts->out, indices_json(opts->p) + "\n"); });
    }
}

}  // namespace hetlab::cli
