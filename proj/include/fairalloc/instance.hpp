#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fairalloc/arith.hpp"
#include "fairalloc/errors.hpp"

namespace fairalloc {

// Keeps every intermediate product (value * alpha_num, T * alpha_den, bundle
// sums) far inside 128-bit range even at the largest accepted epsilon
// denominator.
inline constexpr std::int64_t kMaxValueSum = std::int64_t{1} << 60;
inline constexpr std::int64_t kMaxEpsilonDen = 1'000'000'000;

// Approximation target 1/alpha with alpha = 4 + epsilon, epsilon = p/q.
// Carried as exact integer pairs; no floating point anywhere.
class Approximation {
public:
    // Unvalidated: alpha is well defined for any epsilon > 0. The (0,1]
    // range demanded from user input is enforced in parse()/make().
    Approximation(std::int64_t eps_num, std::int64_t eps_den)
        : eps_num_(eps_num), eps_den_(eps_den) {
        if (eps_num_ <= 0 || eps_den_ <= 0)
            throw Malformed("epsilon", "epsilon must be positive");
        std::int64_t g = std::gcd(eps_num_, eps_den_);
        eps_num_ /= g;
        eps_den_ /= g;
    }

    // Input boundary: 0 < p/q <= 1 and a denominator cap so products stay
    // checked-safe.
    static Approximation make(std::int64_t p, std::int64_t q) {
        if (p <= 0 || q <= 0) throw Malformed("epsilon", "epsilon must be positive");
        if (p > q) throw Malformed("epsilon", "epsilon must be at most 1");
        if (q > kMaxEpsilonDen) throw Malformed("epsilon", "denominator too large");
        return Approximation(p, q);
    }

    static Approximation parse(const std::string& text) {
        auto slash = text.find('/');
        std::int64_t p = 0, q = 1;
        try {
            if (slash == std::string::npos) {
                p = std::stoll(text);
            } else {
                p = std::stoll(text.substr(0, slash));
                q = std::stoll(text.substr(slash + 1));
            }
        } catch (const std::exception&) {
            throw Malformed("epsilon", "cannot parse '" + text + "' as p/q");
        }
        return make(p, q);
    }

    std::int64_t eps_num() const { return eps_num_; }
    std::int64_t eps_den() const { return eps_den_; }
    // alpha = 4 + p/q = (4q + p) / q
    std::int64_t alpha_num() const { return 4 * eps_den_ + eps_num_; }
    std::int64_t alpha_den() const { return eps_den_; }

    std::string str() const {
        return std::to_string(eps_num_) + "/" + std::to_string(eps_den_);
    }

    bool operator==(const Approximation& o) const {
        return eps_num_ == o.eps_num_ && eps_den_ == o.eps_den_;
    }

private:
    std::int64_t eps_num_;
    std::int64_t eps_den_;
};

// value >= T/alpha, decided by exact cross-multiplication:
// value * (4q + p) >= T * q.
inline bool meets_threshold(std::int64_t value, std::int64_t T, const Approximation& approx) {
    return cmp_products(value, approx.alpha_num(), T, approx.alpha_den()) >= 0;
}

enum class ResourceKind { Fat, Thin };

inline ResourceKind classify_resource(std::int64_t value, std::int64_t T,
                                      const Approximation& approx) {
    return meets_threshold(value, T, approx) ? ResourceKind::Fat : ResourceKind::Thin;
}

// Restricted instance: resource j is worth v_j to every player that lists it
// and 0 to everyone else. Players and resources are dense indices 0..n-1;
// names are kept only for I/O.
class Instance {
public:
    Instance() = default;
    Instance(std::vector<std::string> player_names, std::vector<std::string> resource_names,
             std::vector<std::int64_t> values, std::vector<std::vector<int>> eligibility)
        : player_names_(std::move(player_names)),
          resource_names_(std::move(resource_names)),
          values_(std::move(values)),
          eligibility_(std::move(eligibility)) {
        rebuild_index();
    }

    int n_players() const { return static_cast<int>(player_names_.size()); }
    int n_resources() const { return static_cast<int>(resource_names_.size()); }

    const std::vector<std::string>& player_names() const { return player_names_; }
    const std::vector<std::string>& resource_names() const { return resource_names_; }
    const std::vector<std::int64_t>& values() const { return values_; }
    std::int64_t value(int resource) const { return values_[resource]; }

    // Sorted ascending by resource index.
    const std::vector<int>& eligible(int player) const { return eligibility_[player]; }

    bool is_eligible(int player, int resource) const {
        return eligible_bit_[static_cast<std::size_t>(player) * n_resources() + resource] != 0;
    }

    std::optional<int> player_index(const std::string& name) const {
        auto it = player_index_.find(name);
        if (it == player_index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<int> resource_index(const std::string& name) const {
        auto it = resource_index_.find(name);
        if (it == resource_index_.end()) return std::nullopt;
        return it->second;
    }

    std::int64_t total_value() const {
        std::int64_t sum = 0;
        for (std::int64_t v : values_) sum = checked_add(sum, v);
        return sum;
    }

private:
    void rebuild_index() {
        player_index_.clear();
        resource_index_.clear();
        for (int i = 0; i < n_players(); ++i) player_index_.emplace(player_names_[i], i);
        for (int j = 0; j < n_resources(); ++j) resource_index_.emplace(resource_names_[j], j);
        eligible_bit_.assign(static_cast<std::size_t>(n_players()) * n_resources(), 0);
        for (int i = 0; i < n_players(); ++i) {
            std::sort(eligibility_[i].begin(), eligibility_[i].end());
            eligibility_[i].erase(std::unique(eligibility_[i].begin(), eligibility_[i].end()),
                                  eligibility_[i].end());
            for (int j : eligibility_[i])
                eligible_bit_[static_cast<std::size_t>(i) * n_resources() + j] = 1;
        }
    }

    std::vector<std::string> player_names_;
    std::vector<std::string> resource_names_;
    std::vector<std::int64_t> values_;
    std::vector<std::vector<int>> eligibility_;
    std::vector<char> eligible_bit_;
    std::unordered_map<std::string, int> player_index_;
    std::unordered_map<std::string, int> resource_index_;
};

// f_i(bundle): sum of v_j over eligible members; ineligible members add 0.
inline std::int64_t bundle_value(const Instance& inst, int player, std::span<const int> bundle) {
    std::int64_t sum = 0;
    for (int r : bundle)
        if (inst.is_eligible(player, r)) sum = checked_add(sum, inst.value(r));
    return sum;
}

inline std::int64_t bundle_value(const Instance& inst, int player, const std::vector<int>& bundle) {
    return bundle_value(inst, player, std::span<const int>(bundle));
}

// One bundle per player, pairwise resource-disjoint. `value` is the
// objective: the minimum bundle value over all players.
struct Allocation {
    std::vector<std::vector<int>> bundles; // per player, sorted resource indices
    std::int64_t value = 0;

    static Allocation empty(const Instance& inst) {
        Allocation a;
        a.bundles.assign(inst.n_players(), {});
        a.value = 0;
        return a;
    }

    void recompute_value(const Instance& inst) {
        value = 0;
        bool first = true;
        for (int p = 0; p < inst.n_players(); ++p) {
            std::int64_t v = bundle_value(inst, p, bundles[p]);
            if (first || v < value) value = v;
            first = false;
        }
        if (first) value = 0;
    }
};

} // namespace fairalloc
