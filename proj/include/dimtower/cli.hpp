#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "dimtower/factor.hpp"
#include "dimtower/localorder.hpp"

namespace dimtower::cli {

enum class Format
{
    Json,
    Csv,
    Table,
};

struct OutputConfig
{
    Format format = Format::Table;
    std::uint64_t factor_limit = default_trial_bound;
    int precision_R = default_precision;
    int parallel_jobs = 1;
};

/// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

/// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int run(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace dimtower::cli
