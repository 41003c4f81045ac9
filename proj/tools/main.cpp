#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    infosell::cli::RunConfig config;
    if (auto code = infosell::cli::parse_args(argc, argv, config)) return *code;
    return infosell::cli::run(config, std::cerr);
}
