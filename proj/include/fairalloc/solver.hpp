#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <thread>
#include <variant>
#include <vector>

#include "fairalloc/certificate.hpp"
#include "fairalloc/edge.hpp"
#include "fairalloc/engine.hpp"
#include "fairalloc/errors.hpp"
#include "fairalloc/instance.hpp"
#include "fairalloc/tree.hpp"

namespace fairalloc {

struct DecideStats {
    std::int64_t iterations = 0; // main-loop iterations summed over extend calls
    int extend_calls = 0;
    int max_height = 0;
};

struct StalledSummary {
    int root = -1;
    Signature signature;
    int observed_height = 0;
    int limit = 0;
};

struct DecideSuccess {
    Allocation allocation;
    DecideStats stats;
};

struct DecideFail {
    DualCertificate certificate;
    StalledSummary summary;
    DecideStats stats;
};

using DecisionOutcome = std::variant<DecideSuccess, DecideFail>;

inline bool decide_succeeded(const DecisionOutcome& outcome) {
    return std::holds_alternative<DecideSuccess>(outcome);
}

// Can every player be given a bundle worth at least T/alpha when T is the
// guessed optimum? Runs the matching extension from scratch up to |P| times;
// the first stall yields a dual certificate against CLP(T).
inline DecisionOutcome decide(const Instance& inst, std::int64_t T, const Approximation& approx,
                              const EngineOptions& options = {}) {
    if (T < 0) throw Malformed("T", "negative target");
    DecideStats stats;
    if (T == 0) return DecideSuccess{Allocation::empty(inst), stats};

    Matching matching(inst);
    for (int step = 0; step < inst.n_players(); ++step) {
        ExtendStats extend_stats;
        auto result = extend_matching(inst, matching, T, approx, options, &extend_stats);
        stats.iterations += extend_stats.iterations;
        stats.max_height = std::max(stats.max_height, extend_stats.max_height);
        stats.extend_calls += 1;
        if (options.validate && !matching.valid(inst, T, approx))
            throw InvariantBreach("decide: matching invalid after extend");
        if (auto* stalled = std::get_if<Stalled>(&result)) {
            DecideFail fail{
                build_dual_certificate(stalled->tree, inst, T, approx, stalled->limit),
                StalledSummary{stalled->tree.root(), signature_of(stalled->tree),
                               stalled->tree.observed_height(), stalled->limit},
                stats};
            return fail;
        }
        if (matching.size() != step + 1)
            throw InvariantBreach("decide: extend did not grow the matching by one");
    }

    Allocation alloc = Allocation::empty(inst);
    for (int p = 0; p < inst.n_players(); ++p) {
        const auto& e = matching.edge_of(p);
        if (!e) throw InvariantBreach("decide: unmatched player after full run");
        alloc.bundles[p] = e->bundle;
    }
    alloc.recompute_value(inst);
    return DecideSuccess{std::move(alloc), stats};
}

// True iff bundles are pairwise disjoint, eligibility-respecting, and every
// bundle value reaches T/alpha under exact comparison.
inline bool verify_allocation(const Instance& inst, const Allocation& alloc, std::int64_t T,
                              const Approximation& approx) {
    if (static_cast<int>(alloc.bundles.size()) != inst.n_players()) return false;
    std::vector<char> used(inst.n_resources(), 0);
    for (int p = 0; p < inst.n_players(); ++p) {
        for (int r : alloc.bundles[p]) {
            if (r < 0 || r >= inst.n_resources()) return false;
            if (!inst.is_eligible(p, r)) return false;
            if (used[r]) return false;
            used[r] = 1;
        }
        if (!meets_threshold(bundle_value(inst, p, alloc.bundles[p]), T, approx)) return false;
    }
    return true;
}

struct DecideRecord {
    std::int64_t T = 0;
    bool success = false;
    std::int64_t iterations = 0;
    int max_height = 0;
};

struct SolveResult {
    std::int64_t T_star = 0;
    Allocation allocation;
    std::vector<DecideRecord> probes; // in binary-search order
    int max_height = 0;
    std::int64_t upper_bound = 0;
};

struct SolveOptions {
    EngineOptions engine;
    bool sweep = false; // precompute all candidate T concurrently, then replay
    int jobs = 1;
};

// Binary search over T in [0, floor(sum v / |P|)]: lo is the largest probed
// success (0 succeeds trivially), hi the smallest probed failure (upper+1
// counts as a virtual failure). Any failure at T proves the optimum is below
// T, so the search needs no monotonicity from decide: at the end T_star = lo
// and the allocation's minimum value is at least T_OPT/alpha.
inline SolveResult solve(const Instance& inst, const Approximation& approx,
                         const SolveOptions& options = {}) {
    if (inst.n_players() < 1) throw Malformed("players", "need at least one player");

    const std::int64_t upper = inst.total_value() / inst.n_players();

    // Sweep mode: decide is pure in (instance, T, epsilon), so all candidate
    // probes can run concurrently and the replayed search is identical to
    // the sequential one.
    std::vector<std::optional<DecisionOutcome>> cache;
    if (options.sweep && upper >= 1) {
        cache.resize(static_cast<std::size_t>(upper) + 1);
        std::atomic<std::int64_t> next{1};
        int jobs = std::max(1, options.jobs);
        auto worker = [&] {
            while (true) {
                std::int64_t t = next.fetch_add(1);
                if (t > upper) return;
                cache[static_cast<std::size_t>(t)] = decide(inst, t, approx, options.engine);
            }
        };
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(jobs));
        for (int i = 0; i < jobs; ++i) threads.emplace_back(worker);
        for (auto& th : threads) th.join();
    }

    SolveResult result;
    result.upper_bound = upper;
    result.allocation = Allocation::empty(inst);

    std::int64_t lo = 0;
    std::int64_t hi = upper + 1;
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        DecisionOutcome outcome =
            options.sweep ? std::move(*cache[static_cast<std::size_t>(mid)])
                          : decide(inst, mid, approx, options.engine);
        DecideRecord record;
        record.T = mid;
        if (auto* success = std::get_if<DecideSuccess>(&outcome)) {
            record.success = true;
            record.iterations = success->stats.iterations;
            record.max_height = success->stats.max_height;
            lo = mid;
            result.allocation = std::move(success->allocation);
        } else {
            auto& fail = std::get<DecideFail>(outcome);
            record.success = false;
            record.iterations = fail.stats.iterations;
            record.max_height = fail.stats.max_height;
            hi = mid;
        }
        result.max_height = std::max(result.max_height, record.max_height);
        result.probes.push_back(record);
    }
    result.T_star = lo;
    return result;
}

} // namespace fairalloc
