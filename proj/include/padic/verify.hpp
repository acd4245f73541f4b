#pragma once

// Seeded property-verification harness: runs every module's invariant suite
// against one map and aggregates a deterministic report. Sample randomness is
// derived from (seed, property, index), so reports are byte-identical across
// runs and thread counts.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "padic/dynamics.hpp"

namespace padic {

struct VerifyOptions {
    std::uint64_t seed = 7;
    long samples = 200;
    long threads = 1; // additionally capped by PADIC_GREENS_THREADS
    long green_depth = 8;
    long nonexpansion_horizon = 10;
    long classify_horizon = 20;
};

// Worst margin of a suite: the least slack any sample left before violating
// its inequality. Valuation gaps and log-coefficient gaps stay exact.
using Margin = std::variant<std::monostate, long, mpq_class, double>;

struct PropertyResult {
    std::string name;
    long samples_tested = 0;
    long failures = 0;
    Margin worst_margin;
    std::string first_failure;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    long samples = 0;
    nlohmann::json map;
    std::vector<PropertyResult> properties;

    long failures_total() const;
    bool ok() const { return failures_total() == 0; }
    nlohmann::json to_json() const;
};

// Applies the PADIC_GREENS_THREADS cap to a requested worker count.
long effective_threads(long requested);

VerifyReport run_verify(const HomogeneousMap& f, const VerifyOptions& opts);

} // namespace padic
