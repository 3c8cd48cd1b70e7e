#pragma once
//
// Named verification suites. Every check runs inside its own guard, so an
// exception becomes a report with status "error" rather than aborting.
//

#include <cstdint>
#include <string_view>
#include <vector>

#include "diskops/report.hpp"

namespace diskops {

struct Config {
    std::size_t truncation = 256;
    double tol = 1e-8;
    std::size_t quad_nodes = 4096;
    std::uint64_t seed = 0;
    OutputFormat output = OutputFormat::text;

    // std::invalid_argument unless truncation >= 16 and quad_nodes is a power of two >= 256
    void validate() const;
};

enum class Suite { kernels, constants, isometries, blaschke, pick, composition, all };

Suite suite_from_string(std::string_view s);
std::string_view to_string(Suite s);

// Reports sorted by check_id. Each suite draws from its own generator seeded
// by (config.seed, suite), so a suite gives the same values alone or in "all".
std::vector<VerificationReport> run_suite(Suite suite, const Config& config);

// true iff no report is fail or error
bool all_ok(const std::vector<VerificationReport>& reports);

} // namespace diskops
