#pragma once

// Command-line front end. Kept in the library so tests can drive commands
// in-process.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "robustrate/engine.hpp"
#include "robustrate/rating.hpp"

namespace robustrate::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInputError = 1,
    kNotConverged = 2,
    kInternalError = 3,
};

struct RunConfig {
    double alpha = 2.0;
    double epsilon = 1e-9;
    std::size_t max_iters = 200;
    double p_exponent = 2.0;
    std::size_t levels = 10;
    std::uint64_t seed = 1;
    ScoreMethod score_method = ScoreMethod::weighted;

    void validate() const;
    EngineParams engine_params() const;
};

/// 17 significant digits, enough to read back the identical double.
std::string format_number(double v);

/// Runs one command line (argv[0] is the program name). Data goes to `out`
/// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace robustrate::cli
