#ifndef BLOCH_SUITE_HPP
#define BLOCH_SUITE_HPP

#include "bloch/field.hpp"
#include "bloch/rng.hpp"

#include <json.hpp>
#include <string>
#include <vector>

namespace bloch {

struct RunConfig {
    Backend backend = Backend::tower;
    uint64_t seed = 0;
    int samples = 20;
    int pool_depth = 3;
    int tower_depth = kDefaultTowerDepthCap;
    int workers = 0;  // 0 = hardware concurrency
};

/// One verified statement. PROVED/NOT_FOUND concern certificate searches,
/// CHECKED/REFUTED exhaustive property checks, SKIPPED backend mismatches.
struct SuiteEntry {
    std::string label;
    std::string status;  // PROVED | REFUTED | CHECKED | NOT_FOUND | SKIPPED
    double elapsed_ms = 0;
    std::vector<std::string> certificates;  // labels of the certified claims
    std::string detail;
};

struct SuiteReport {
    RunConfig config;
    std::vector<SuiteEntry> entries;

    bool ok() const;
};

/// Runs every suite item (concurrently up to config.workers) and assembles a
/// deterministic report for a fixed seed.
SuiteReport run_suite(const RunConfig& config);

/// Deterministic serialization: timing is deliberately omitted so equal seeds
/// give byte-identical reports.
nlohmann::json report_to_json(const SuiteReport& report);
std::string report_to_text(const SuiteReport& report);

/// Shared sample streams so suite runs and acceptance runs replay the same
/// certificate fixtures.
std::vector<TowerElement> positive_samples(SplitMix64& rng, int count);
std::vector<TowerElement> negative_samples(SplitMix64& rng, int count);

}  // namespace bloch

#endif
