#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tricert {

/// CLI entry point (subcommands: gen, certify, lemma-check).
/// Exit codes: 0 ok/certified, 1 refuted, 2 bad arguments, 3 I/O or format
/// error, 4 inconclusive, 5 input not a manifold complex.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace tricert
