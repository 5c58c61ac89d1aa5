#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "envelopes/envelopes.hpp"

namespace envelopes::cli {

inline constexpr int kMinGrid = 16;
inline constexpr int kMaxGrid = 4096;
inline constexpr int kMinTSamples = 100;
inline constexpr int kMaxTSamples = 1000000;

struct CustomFamily {
    std::string x_c, y_c, r;
    double s1 = 0.0, s2 = 1.0;
    Constants constants;
};

struct RunConfig {
    std::string command;

    // family
    std::string preset;  // tprime | line | horocycle, empty for custom
    double m = 1.0;
    double r = 0.5;
    double k = 1.0;
    std::optional<CustomFamily> custom;
    std::optional<Matrix2> matrix;   // numrange
    std::string expression;          // parse-check

    // output
    std::string out;
    std::string svg;

    // resolution
    int n = 1200;             // oracle cells per side
    int t_samples = 4000;     // oracle parameter samples
    int rows = 1000;          // envelope rows, numrange samples = 100 * rows
    std::optional<BBox> bbox;

    std::uint64_t seed = 1;
};

/// Reads the JSON document {command, family, output, resolution, seed}.
RunConfig config_from_json(const std::string& text);
RunConfig load_config(const std::string& path);

/// Throws envelopes::Error when the command is unknown or a resolution is out of bounds.
void validate(const RunConfig& cfg);

/// Executes one command. Returns the process exit status; on failure a single
/// JSON error line is written to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line entry point (argument parsing, config merging, run).
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitExpression = 3;
inline constexpr int kExitNumerical = 4;
inline constexpr int kExitIo = 5;

}  // namespace envelopes::cli
