#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fairalloc/instance.hpp"
#include "fairalloc/instance_io.hpp"
#include "fairalloc/solver.hpp"

namespace fairalloc {

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string instance_digest(const Instance& inst) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(instance_to_json(inst).dump())));
    return std::string(buf);
}

struct RunReport {
    std::string instance_digest;
    std::string epsilon;
    std::int64_t T_star = 0;
    std::int64_t min_value = 0;
    std::int64_t upper_bound = 0;
    std::vector<DecideRecord> probes;
    int max_height = 0;
    int height_limit = 0;
    double wall_ms = 0.0;
};

inline RunReport make_report(const Instance& inst, const Approximation& approx,
                             const SolveResult& result, double wall_ms) {
    RunReport report;
    report.instance_digest = instance_digest(inst);
    report.epsilon = approx.str();
    report.T_star = result.T_star;
    report.min_value = result.allocation.value;
    report.upper_bound = result.upper_bound;
    report.probes = result.probes;
    report.max_height = result.max_height;
    report.height_limit = distance_bound(inst.n_players(), approx);
    report.wall_ms = wall_ms;
    return report;
}

inline nlohmann::json report_to_json(const RunReport& report) {
    nlohmann::json probes = nlohmann::json::array();
    for (const auto& p : report.probes) {
        probes.push_back({{"T", p.T},
                          {"outcome", p.success ? "success" : "fail"},
                          {"iterations", p.iterations},
                          {"max_height", p.max_height}});
    }
    return nlohmann::json{{"instance_digest", report.instance_digest},
                          {"epsilon", report.epsilon},
                          {"T_star", report.T_star},
                          {"min_value", report.min_value},
                          {"upper_bound", report.upper_bound},
                          {"probes", std::move(probes)},
                          {"max_height", report.max_height},
                          {"height_limit", report.height_limit},
                          {"wall_ms", report.wall_ms}};
}

} // namespace fairalloc
