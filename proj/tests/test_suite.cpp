#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bloch/suite.hpp"

#include <set>

using namespace bloch;

TEST_CASE("default run is green and covers every statement exactly once") {
    RunConfig config;
    SuiteReport report = run_suite(config);
    CHECK(report.ok());
    std::set<std::string> labels;
    for (const auto& e : report.entries) {
        CHECK((e.status == "PROVED" || e.status == "CHECKED"));
        CHECK(labels.insert(e.label).second);
        if (e.status == "PROVED") CHECK_FALSE(e.certificates.empty());
    }
    CHECK(labels.size() == 9);
    CHECK(std::is_sorted(report.entries.begin(), report.entries.end(),
                         [](const SuiteEntry& a, const SuiteEntry& b) { return a.label < b.label; }));

    SUBCASE("equal seeds give byte-identical json") {
        SuiteReport again = run_suite(config);
        CHECK(report_to_json(report).dump() == report_to_json(again).dump());
    }
}

TEST_CASE("rational backend skips the tower-only item") {
    RunConfig config;
    config.backend = Backend::rational;
    config.samples = 2;
    SuiteReport report = run_suite(config);
    CHECK(report.ok());
    int skipped = 0;
    for (const auto& e : report.entries)
        if (e.status == "SKIPPED") {
            ++skipped;
            CHECK(e.label.rfind("4 ", 0) == 0);
        }
    CHECK(skipped == 1);
    CHECK(report_to_json(report)["backend"] == "rational");
}

TEST_CASE("report serialization carries config and entries") {
    RunConfig config;
    config.samples = 1;
    config.seed = 7;
    config.workers = 2;
    SuiteReport report = run_suite(config);
    auto j = report_to_json(report);
    CHECK(j["version"] == 1);
    CHECK(j["seed"] == 7);
    CHECK(j["samples"] == 1);
    CHECK(j["entries"].size() == 9);
    for (const auto& e : j["entries"]) CHECK_FALSE(e["status"].get<std::string>().empty());
    CHECK(report_to_text(report).find("suite: all green") != std::string::npos);
}
