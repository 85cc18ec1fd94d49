#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "fairalloc/errors.hpp"
#include "fairalloc/instance.hpp"

namespace fairalloc {

// Unbiased draw in [0, n) from the raw mt19937_64 stream. The engine's
// output sequence is fixed by the standard, and rejection sampling avoids
// std::uniform_int_distribution, whose mapping is implementation-defined.
// Together this makes generation byte-reproducible across platforms.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bounded(std::uint64_t n) {
        if (n == 0) throw InvariantBreach("bounded(0)");
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

private:
    std::mt19937_64 engine_;
};

// Deterministic function of all parameters. Values are uniform in
// [1, max_value]; each (player, resource) pair is eligible independently
// with probability density_num/density_den; afterwards every resource with
// no eligible player is repaired onto a uniformly drawn player.
//
// Draw order is fixed: resource values first, then the eligibility matrix
// player-major, then repairs in resource order.
inline Instance generate_instance(std::uint64_t seed, int n_players, int n_resources,
                                  std::int64_t max_value, std::int64_t density_num,
                                  std::int64_t density_den) {
    if (n_players < 1) throw Malformed("players", "need at least one player");
    if (n_resources < 0) throw Malformed("resources", "negative resource count");
    if (max_value < 1) throw Malformed("max_value", "must be at least 1");
    if (density_num <= 0 || density_den <= 0 || density_num > density_den)
        throw Malformed("density", "density must be a rational in (0, 1]");
    if (max_value > kMaxValueSum / std::max(n_resources, 1))
        throw Malformed("max_value", "total value would exceed the precision bound");

    DeterministicRng rng(seed);

    std::vector<std::int64_t> values(n_resources);
    for (int r = 0; r < n_resources; ++r)
        values[r] = 1 + static_cast<std::int64_t>(rng.bounded(static_cast<std::uint64_t>(max_value)));

    std::vector<std::vector<int>> eligibility(n_players);
    std::vector<char> covered(n_resources, 0);
    for (int p = 0; p < n_players; ++p) {
        for (int r = 0; r < n_resources; ++r) {
            if (rng.bounded(static_cast<std::uint64_t>(density_den)) <
                static_cast<std::uint64_t>(density_num)) {
                eligibility[p].push_back(r);
                covered[r] = 1;
            }
        }
    }
    for (int r = 0; r < n_resources; ++r) {
        if (!covered[r]) {
            int p = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n_players)));
            eligibility[p].push_back(r);
        }
    }

    std::vector<std::string> player_names(n_players);
    for (int p = 0; p < n_players; ++p) player_names[p] = "p" + std::to_string(p);
    std::vector<std::string> resource_names(n_resources);
    for (int r = 0; r < n_resources; ++r) resource_names[r] = "r" + std::to_string(r);

    return Instance(std::move(player_names), std::move(resource_names), std::move(values),
                    std::move(eligibility));
}

} // namespace fairalloc
