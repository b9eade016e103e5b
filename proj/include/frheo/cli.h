#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace frheo::cli {

/// Exit codes: 0 success, 1 numerical, file or format failure, 2 usage error
/// (bad flags or parameters violating a model invariant). Failures print one
/// line "frheo: <CODE>: <message>" on the error stream.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

/// Sample grid for `respond`: log spacing is geometric between tmin and tmax.
std::vector<double> make_grid(double tmin, double tmax, int points, bool log_spacing);

}  // namespace frheo::cli
