#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "fairalloc/errors.hpp"
#include "fairalloc/instance.hpp"

namespace fairalloc {

enum class EdgeKind { Fat, Thin };

// Hyperedge {player} ∪ bundle. A fat edge holds exactly one fat resource; a
// thin edge holds only thin resources and is minimal: its value reaches
// T/alpha but dropping any member falls below.
struct Edge {
    int player = -1;
    std::vector<int> bundle; // sorted ascending
    EdgeKind kind = EdgeKind::Fat;

    bool operator==(const Edge& o) const {
        return player == o.player && kind == o.kind && bundle == o.bundle;
    }
};

inline bool bundles_intersect(const std::vector<int>& a, const std::vector<int>& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else return true;
    }
    return false;
}

// bundle_value >= T/alpha, every member eligible, kind consistent with the
// member classification, and minimality: removing any member drops the sum
// below T/alpha.
inline bool edge_is_valid(const Instance& inst, const Edge& e, std::int64_t T,
                          const Approximation& approx) {
    if (e.player < 0 || e.player >= inst.n_players()) return false;
    if (e.bundle.empty()) return false;
    if (!std::is_sorted(e.bundle.begin(), e.bundle.end())) return false;
    if (std::adjacent_find(e.bundle.begin(), e.bundle.end()) != e.bundle.end()) return false;
    for (int r : e.bundle) {
        if (r < 0 || r >= inst.n_resources()) return false;
        if (!inst.is_eligible(e.player, r)) return false;
        bool fat = classify_resource(inst.value(r), T, approx) == ResourceKind::Fat;
        if (e.kind == EdgeKind::Fat && !fat) return false;
        if (e.kind == EdgeKind::Thin && fat) return false;
    }
    if (e.kind == EdgeKind::Fat && e.bundle.size() != 1) return false;
    std::int64_t total = bundle_value(inst, e.player, e.bundle);
    if (!meets_threshold(total, T, approx)) return false;
    for (int r : e.bundle)
        if (meets_threshold(total - inst.value(r), T, approx)) return false;
    return true;
}

// Resource-disjoint edge set with at most one edge per player. Also keeps a
// resource -> owning player map for O(|bundle|) blocker lookups.
class Matching {
public:
    explicit Matching(const Instance& inst)
        : by_player_(inst.n_players()), owner_(inst.n_resources(), -1) {}

    int size() const { return size_; }
    bool is_matched(int player) const { return by_player_[player].has_value(); }
    const std::optional<Edge>& edge_of(int player) const { return by_player_[player]; }
    // -1 when the resource is free.
    int owner_of(int resource) const { return owner_[resource]; }

    void add(const Edge& e) {
        if (by_player_[e.player])
            throw InvariantBreach("matching: player already matched");
        for (int r : e.bundle) {
            if (owner_[r] != -1) throw InvariantBreach("matching: resource already owned");
            owner_[r] = e.player;
        }
        by_player_[e.player] = e;
        ++size_;
    }

    Edge remove(int player) {
        if (!by_player_[player]) throw InvariantBreach("matching: player not matched");
        Edge e = std::move(*by_player_[player]);
        by_player_[player].reset();
        for (int r : e.bundle) owner_[r] = -1;
        --size_;
        return e;
    }

    int n_players() const { return static_cast<int>(by_player_.size()); }

    bool valid(const Instance& inst, std::int64_t T, const Approximation& approx) const {
        std::vector<char> seen(inst.n_resources(), 0);
        int count = 0;
        for (int p = 0; p < n_players(); ++p) {
            if (!by_player_[p]) continue;
            ++count;
            const Edge& e = *by_player_[p];
            if (e.player != p) return false;
            if (!edge_is_valid(inst, e, T, approx)) return false;
            for (int r : e.bundle) {
                if (seen[r]) return false;
                seen[r] = 1;
                if (owner_[r] != p) return false;
            }
        }
        return count == size_;
    }

private:
    std::vector<std::optional<Edge>> by_player_;
    std::vector<int> owner_;
    int size_ = 0;
};

} // namespace fairalloc
