#include <exception>
#include <iostream>

#include "CLI11.hpp"

#include "cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "Stability laboratory for the heteroclinic network of the "
        "rock-scissors-paper-lizard-Spock Lotka-Volterra system:\n"
        "analytic classification of the four elementary cycles (c.u. / f.a.s. "
        "/ e.a.s.), local stability indices, parameter-plane sweeps,\n"
        "self-verification of the closed-form layer, and direct ODE "
        "simulation."};
    app.require_subcommand(1);

    int exit_code = 0;
    hetlab::cli::setup_classify(app, exit_code);
    hetlab::cli::setup_sweep(app, exit_code);
    hetlab::cli::setup_verify(app, exit_code);
    hetlab::cli::setup_simulate(app, exit_code);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
