#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dqwall/grid.hpp"
#include "dqwall/report.hpp"
#include "dqwall/star.hpp"

namespace dqwall::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline const std::vector<std::string> kCommands = {
    "wigner", "residual-naive", "residual-dp", "residual-kw",
    "equivalence", "purestate", "wall-limit", "dynamics"};

struct RunConfig {
    std::string command;
    double E = 1.0;
    PhaseGrid grid = PhaseGrid::desk_default();
    std::vector<double> alphas;
    std::filesystem::path output_dir = "dqwall-out";
    std::string format = "csv";  // csv | json
    Extrapolation epsilon_rule = Extrapolation::richardson2;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "nx,np,xmin,xmax,pmin,pmax".
PhaseGrid parse_grid(const std::string& text);
std::vector<double> parse_list(const std::string& text);
Extrapolation parse_epsilon_rule(const std::string& text);

/// Throws UsageError on an invalid configuration.
void validate(const RunConfig& cfg);

/// Runs one study, prints one line per check to `out`, writes artifacts, and
/// returns the exit status.
int run(const RunConfig& cfg, std::ostream& out);

/// Parses argv and runs; usage problems go to `err` with exit status 2.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dqwall::cli
