#pragma once
// Wiring between CLI11 and the library.  Each setup_* registers one or two
// subcommands on the root app; handlers communicate their exit status
// through the shared exit_code so main can return it after parse.

#include <string>

#include "CLI11.hpp"

#include "hetlab/model.hpp"

namespace hetlab::cli {

void setup_classify(CLI::App& app, int& exit_code);  // classify + indices
void setup_sweep(CLI::App& app, int& exit_code);
void setup_verify(CLI::App& app, int& exit_code);
void setup_simulate(CLI::App& app, int& exit_code);

// Adds --ca --cb --ea --eb bound to p (e_A, e_B keep their defaults when
// omitted) plus a --config key=value file whose entries are overridden by
// explicit flags.
void add_param_flags(CLI::App* cmd, GameParameters* p, bool require_c);

// Registers --config on cmd.  The file holds key=value lines whose keys are
// the long flag names without the dashes; entries fill only options that were
// not given on the command line or through the environment, so flags always
// win.  Applied while option callbacks run, i.e. before required-option
// checks, which lets a config file satisfy a required flag.
void add_config_flag(CLI::App* cmd);

// Writes text to path, or to stdout when path is empty.
void emit(const std::string& path, const std::string& text);

}  // namespace hetlab::cli
