#include "fockidx/io/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace fockidx::io;

    CLI::App app{"Kernel calculus, CPD semigroups and index of the time-ordered Fock system"};
    std::string command;
    std::string config;
    std::string out = ".";
    app.add_option("command", command, "one of: kernel semigroup gram inner unitalg membership "
                                       "witness approx index selftest")
        ->required()
        ->check(CLI::IsMember(command_names()));
    app.add_option("--config", config, "JSON experiment configuration")->required();
    app.add_option("--out", out, "output directory for reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }
    return run_cli(*parse_command(command), config, out, std::cout, std::cerr);
}
