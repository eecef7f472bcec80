// SPDX-License-Identifier: Apache-2.0
#include "supercong/cli.hpp"

int main(int argc, char** argv) { return supercong::cli::main(argc, argv); }
