#pragma once

/**
 * @file cli.hpp
 * @brief Batch front-end: parse input files, dispatch to the engines, emit
 *        machine-readable reports with scripted-verification exit codes.
 *
 * Exit codes: 0 success, 1 validation/parse error, 2 internal-consistency
 * audit failure (a certified bound contradicted by an example), 3 I/O error.
 */

#include <iosfwd>
#include <string>
#include <vector>

namespace fibslope {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fibslope
