#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace uc::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kResource = 3 };

struct Cell {
    std::string params;
    std::string check;
    bool pass = false;
    std::string message;
    double elapsed_ms = 0;
};

struct VerificationReport {
    std::string suite;
    std::vector<Cell> cells;
    bool pass() const;
};

struct Options {
    bool json = false;
    std::uint64_t max_rank = 1000000;
    std::uint64_t seed = 1;
};

inline const std::vector<std::string> kSuites{"skew", "central", "extension", "hilbert", "cartier", "inertia", "twist"};

// Runs one suite (or "all") at (p, n). Suites that need n >= 1 are left out
// of "all" when n = 0. Library errors propagate.
VerificationReport run_suite(std::uint32_t p, int n, const std::string &suite, const Options &opts);

// Full command line (without the program name). Returns the exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace uc::cli
