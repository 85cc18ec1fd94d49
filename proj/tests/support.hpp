// Shared fixtures and independent brute-force oracles for the test suites.
// Everything here is deliberately simple and separate from the library's
// implementation paths so it can serve as ground truth.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "fairalloc/fairalloc.hpp"

namespace testsupport {

using namespace fairalloc;

inline Instance make_instance(std::vector<std::string> players,
                              std::vector<std::pair<std::string, std::int64_t>> resources,
                              std::map<std::string, std::vector<std::string>> elig) {
    std::vector<std::string> resource_names;
    std::vector<std::int64_t> values;
    std::map<std::string, int> rindex;
    for (auto& [name, value] : resources) {
        rindex[name] = static_cast<int>(resource_names.size());
        resource_names.push_back(name);
        values.push_back(value);
    }
    std::vector<std::vector<int>> eligibility(players.size());
    for (std::size_t p = 0; p < players.size(); ++p) {
        auto it = elig.find(players[p]);
        if (it == elig.end()) continue;
        for (const auto& rname : it->second) eligibility[p].push_back(rindex.at(rname));
    }
    return Instance(std::move(players), std::move(resource_names), std::move(values),
                    std::move(eligibility));
}

// players {p1,p2}; resources {r1:10, r2:6, r3:5}; eligibility p1:{r1},
// p2:{r1,r2,r3}. Optimum 10 (r1 -> p1; r2,r3 -> p2).
inline Instance make_IA() {
    return make_instance({"p1", "p2"}, {{"r1", 10}, {"r2", 6}, {"r3", 5}},
                         {{"p1", {"r1"}}, {"p2", {"r1", "r2", "r3"}}});
}

// players {p1,p2}; one resource r1:10 wanted by both. Optimum 0.
inline Instance make_IB() {
    return make_instance({"p1", "p2"}, {{"r1", 10}}, {{"p1", {"r1"}}, {"p2", {"r1"}}});
}

// one player, resources {3,4}, full eligibility. Optimum 7.
inline Instance make_IC() {
    return make_instance({"p1"}, {{"r1", 3}, {"r2", 4}}, {{"p1", {"r1", "r2"}}});
}

// Exhaustive optimum: every resource goes to an eligible player or to
// nobody. Exponential; only for small instances.
inline std::int64_t exact_opt_naive(const Instance& inst) {
    std::vector<std::int64_t> load(inst.n_players(), 0);
    std::int64_t best = 0;
    std::function<void(int)> rec = [&](int r) {
        if (r == inst.n_resources()) {
            std::int64_t low = std::numeric_limits<std::int64_t>::max();
            for (std::int64_t v : load) low = std::min(low, v);
            best = std::max(best, low);
            return;
        }
        rec(r + 1); // nobody
        for (int p = 0; p < inst.n_players(); ++p) {
            if (!inst.is_eligible(p, r)) continue;
            load[p] += inst.value(r);
            rec(r + 1);
            load[p] -= inst.value(r);
        }
    };
    rec(0);
    return best;
}

struct AddableCandidate {
    Edge edge;
    int distance;
};

// Every addable edge within the limit, by brute force: all free eligible fat
// singletons plus all minimal subsets of free eligible thin resources.
inline std::vector<AddableCandidate> enumerate_addable(const AlternatingTree& tree,
                                                       const Instance& inst, std::int64_t T,
                                                       const Approximation& approx, int limit) {
    std::vector<AddableCandidate> out;
    auto players = tree.players_with_distance();
    std::sort(players.begin(), players.end());
    players.erase(std::unique(players.begin(), players.end()), players.end());

    for (const auto& [pdist, p] : players) {
        std::vector<int> free_thin;
        for (int r : inst.eligible(p)) {
            if (tree.resource_in_tree(r)) continue;
            if (classify_resource(inst.value(r), T, approx) == ResourceKind::Fat) {
                if (pdist <= limit) out.push_back({Edge{p, {r}, EdgeKind::Fat}, pdist});
            } else {
                free_thin.push_back(r);
            }
        }
        if (pdist + 1 > limit || free_thin.size() > 20) continue;
        for (std::uint32_t mask = 1; mask < (1u << free_thin.size()); ++mask) {
            std::int64_t sum = 0;
            std::vector<int> bundle;
            for (std::size_t i = 0; i < free_thin.size(); ++i) {
                if (mask & (1u << i)) {
                    sum += inst.value(free_thin[i]);
                    bundle.push_back(free_thin[i]);
                }
            }
            if (!meets_threshold(sum, T, approx)) continue;
            bool minimal = true;
            for (int r : bundle) {
                if (meets_threshold(sum - inst.value(r), T, approx)) {
                    minimal = false;
                    break;
                }
            }
            if (minimal) out.push_back({Edge{p, bundle, EdgeKind::Thin}, pdist + 1});
        }
    }
    return out;
}

// Figure-style regression fixture: the root owns two thin resources whose
// only edge is blocked by two matched thin edges; one blocked player has a
// free fat resource (distance 2), the other only free thin resources
// (distance 3).
inline Instance make_fig1_instance() {
    return make_instance(
        {"p0", "q1", "q2"},
        {{"t1", 1}, {"t2", 1}, {"t3", 1}, {"t4", 1}, {"f1", 2}, {"t5", 1}, {"t6", 1}},
        {{"p0", {"t1", "t2"}},
         {"q1", {"t1", "t3", "f1"}},
         {"q2", {"t2", "t4", "t5", "t6"}}});
}

// Deeper fixture: the tree must grow two thin layers before a fat edge at
// distance 4 appears; its collapse chain stops at the root's edge and prunes
// the deeper branch.
inline Instance make_deep_instance() {
    return make_instance({"z", "p", "q", "s", "u"},
                         {{"a", 1},
                          {"b", 1},
                          {"c", 1},
                          {"d", 1},
                          {"e", 1},
                          {"g", 1},
                          {"h", 1},
                          {"i", 1},
                          {"j", 1},
                          {"k", 1},
                          {"f", 2}},
                         {{"z", {"a", "b"}},
                          {"p", {"a", "c", "e", "g"}},
                          {"q", {"b", "d", "i", "j"}},
                          {"s", {"e", "h", "f"}},
                          {"u", {"i", "k"}}});
}

inline Edge make_edge(const Instance& inst, const std::string& player,
                      std::vector<std::string> resources, EdgeKind kind) {
    Edge e;
    e.player = *inst.player_index(player);
    for (const auto& r : resources) e.bundle.push_back(*inst.resource_index(r));
    std::sort(e.bundle.begin(), e.bundle.end());
    e.kind = kind;
    return e;
}

inline std::vector<int> resource_indices(const Instance& inst, std::vector<std::string> names) {
    std::vector<int> out;
    for (const auto& n : names) out.push_back(*inst.resource_index(n));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace testsupport
