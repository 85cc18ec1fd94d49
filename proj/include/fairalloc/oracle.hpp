#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fairalloc/errors.hpp"
#include "fairalloc/instance.hpp"

namespace fairalloc {

inline constexpr int kOracleMaxResources = 14;
inline constexpr int kOracleMaxPlayers = 5;

// Exact optimum: the maximum over all assignments of resources to players
// (or to nobody) of the minimum player bundle value. Computed by a
// subset-sum layer per player:
//   g_t[S] = max over bundles B ⊆ S of min(value_t(B), g_{t-1}[S \ B])
// which is equivalent to enumerating all |P|^|R| assignments.
inline std::int64_t exact_opt(const Instance& inst, int max_resources = kOracleMaxResources,
                              int max_players = kOracleMaxPlayers) {
    if (inst.n_players() < 1) throw Malformed("players", "need at least one player");
    if (inst.n_resources() > max_resources)
        throw TooLarge("exact_opt: " + std::to_string(inst.n_resources()) +
                       " resources exceeds guard " + std::to_string(max_resources));
    if (inst.n_players() > max_players)
        throw TooLarge("exact_opt: " + std::to_string(inst.n_players()) +
                       " players exceeds guard " + std::to_string(max_players));

    const int n = inst.n_resources();
    const std::size_t full = std::size_t{1} << n;

    // value of every bundle for the current player
    std::vector<std::int64_t> val(full);
    std::vector<std::int64_t> prev(full, std::numeric_limits<std::int64_t>::max());
    std::vector<std::int64_t> cur(full);

    for (int p = 0; p < inst.n_players(); ++p) {
        val[0] = 0;
        for (std::size_t mask = 1; mask < full; ++mask) {
            int low = std::countr_zero(mask);
            val[mask] = val[mask & (mask - 1)] +
                        (inst.is_eligible(p, low) ? inst.value(low) : 0);
        }
        for (std::size_t mask = 0; mask < full; ++mask) {
            std::int64_t best = 0;
            std::size_t sub = mask;
            while (true) {
                best = std::max(best, std::min(val[sub], prev[mask ^ sub]));
                if (sub == 0) break;
                sub = (sub - 1) & mask;
            }
            cur[mask] = best;
        }
        std::swap(prev, cur);
    }
    return prev[full - 1];
}

} // namespace fairalloc
