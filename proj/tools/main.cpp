// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 revscope contributors

#include <iostream>

#include "revscope/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return revscope::cli::run(args, std::cout, std::cerr);
}
