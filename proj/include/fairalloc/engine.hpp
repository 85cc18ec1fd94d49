#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "fairalloc/arith.hpp"
#include "fairalloc/edge.hpp"
#include "fairalloc/errors.hpp"
#include "fairalloc/instance.hpp"
#include "fairalloc/trace.hpp"
#include "fairalloc/tree.hpp"

namespace fairalloc {

// Search horizon 2D+1 where D is the smallest non-negative integer with
// ((alpha-1)/3)^D >= n_players. The base (3q+p)/(3q) exceeds 1 for any
// epsilon > 0, and the powering is exact over arbitrary-width integers.
inline int distance_bound(int n_players, const Approximation& approx) {
    if (n_players < 1) throw Malformed("players", "need at least one player");
    BigInt base_num = BigInt(3) * approx.alpha_den() + approx.eps_num();
    BigInt base_den = BigInt(3) * approx.alpha_den();
    BigInt pow_num = 1, pow_den = 1;
    int d = 0;
    while (pow_num < n_players * pow_den) {
        pow_num *= base_num;
        pow_den *= base_den;
        ++d;
    }
    return 2 * d + 1;
}

struct ThinCandidate {
    int resource;
    std::int64_t value;
};

// Greedy minimal bundle: sort by descending value (ties by ascending
// resource id) and accumulate until the sum first reaches threshold_num /
// threshold_den. Every taken member is at least as valuable as the last one,
// and the sum before the last addition was below threshold, so dropping any
// member falls below threshold: the result is minimal by construction.
inline std::optional<std::vector<int>> minimal_thin_bundle(std::vector<ThinCandidate> candidates,
                                                           std::int64_t threshold_num,
                                                           std::int64_t threshold_den) {
    std::sort(candidates.begin(), candidates.end(), [](const ThinCandidate& a, const ThinCandidate& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.resource < b.resource;
    });
    std::int64_t sum = 0;
    std::vector<int> bundle;
    for (const auto& c : candidates) {
        sum = checked_add(sum, c.value);
        bundle.push_back(c.resource);
        if (cmp_products(sum, threshold_den, threshold_num, 1) >= 0) {
            std::sort(bundle.begin(), bundle.end());
            return bundle;
        }
    }
    return std::nullopt;
}

// Addable edge of minimum distance, or nothing if none exists within the
// limit. Deterministic order: distances ascending; at equal distance fat
// candidates win over thin ones; within a pass, players by ascending id; a
// fat edge takes the free eligible fat resource of smallest id; a thin edge
// is the greedy minimal bundle over free eligible thin resources.
inline std::optional<std::pair<Edge, int>> find_min_distance_addable(
    const AlternatingTree& tree, const Matching& matching, const Instance& inst, std::int64_t T,
    const Approximation& approx, int limit) {
    (void)matching; // addability only excludes tree resources; matched ones become blockers

    auto players = tree.players_with_distance();
    std::sort(players.begin(), players.end());
    players.erase(std::unique(players.begin(), players.end()), players.end());

    int max_pdist = players.empty() ? 0 : players.back().first;
    std::vector<std::vector<int>> by_distance(max_pdist + 1);
    for (const auto& [d, p] : players) by_distance[d].push_back(p);

    for (int d = 0; d <= limit; ++d) {
        // fat pass: edges at the player's own distance
        if (d <= max_pdist) {
            for (int p : by_distance[d]) {
                for (int r : inst.eligible(p)) {
                    if (tree.resource_in_tree(r)) continue;
                    if (classify_resource(inst.value(r), T, approx) != ResourceKind::Fat) continue;
                    return std::make_pair(Edge{p, {r}, EdgeKind::Fat}, d);
                }
            }
        }
        // thin pass: edges one thin step below players at distance d-1
        if (d >= 1 && d - 1 <= max_pdist) {
            for (int p : by_distance[d - 1]) {
                std::vector<ThinCandidate> cands;
                for (int r : inst.eligible(p)) {
                    if (tree.resource_in_tree(r)) continue;
                    if (classify_resource(inst.value(r), T, approx) != ResourceKind::Thin) continue;
                    cands.push_back({r, inst.value(r)});
                }
                auto bundle = minimal_thin_bundle(
                    std::move(cands), checked_mul(T, approx.alpha_den()), approx.alpha_num());
                if (bundle) return std::make_pair(Edge{p, std::move(*bundle), EdgeKind::Thin}, d);
            }
        }
    }
    return std::nullopt;
}

// Players whose matched edges intersect e's bundle, ascending.
inline std::vector<int> find_blockers(const Matching& matching, const Edge& e) {
    std::vector<int> players;
    for (int r : e.bundle) {
        int owner = matching.owner_of(r);
        if (owner >= 0) players.push_back(owner);
    }
    std::sort(players.begin(), players.end());
    players.erase(std::unique(players.begin(), players.end()), players.end());
    return players;
}

namespace detail {

inline void emit(TraceSink* trace, const AlternatingTree& tree, TraceEventKind kind, int distance,
                 int player, const std::vector<int>& bundle) {
    if (!trace) return;
    TraceEvent ev;
    ev.kind = kind;
    ev.distance = distance;
    ev.player = player;
    ev.bundle = bundle;
    ev.signature = signature_of(tree);
    trace->emit(ev);
}

} // namespace detail

// Pulls every matched edge intersecting the freshly added A-edge into B,
// linked to it, at the distance given by the parity rule (a fat blocker
// shares the blocked edge's distance, a thin one sits one below).
inline void attach_blockers(AlternatingTree& tree, const Matching& matching, int a_index,
                            TraceSink* trace = nullptr) {
    const auto& parent = tree.a(a_index);
    auto blocker_players = find_blockers(matching, parent.edge);
    for (int p : blocker_players) {
        if (tree.b_edge_of_player(p) >= 0)
            throw InvariantBreach("attach_blockers: blocker already has a parent");
        const Edge& blocker = *matching.edge_of(p);
        // In the restricted setting a fat edge is blocked only by the fat
        // edge owning its resource, and a thin edge only by thin edges.
        if (blocker.kind != parent.edge.kind)
            throw InvariantBreach("attach_blockers: blocker kind differs from blocked edge");
        int dist = parent.distance + (blocker.kind == EdgeKind::Thin ? 1 : 0);
        int bi = tree.attach_b_edge(blocker, dist, a_index);
        detail::emit(trace, tree, TraceEventKind::AttachBlockers, dist, p, tree.b(bi).edge.bundle);
    }
}

enum class CollapseOutcome { RootMatched, PartialCollapse };

// Swap chain: while the current A-edge has no blockers, it replaces the
// matched edge at its player (freeing that edge's parent of one blocker and
// moving up), or, at the unmatched root, simply joins the matching. When the
// chain stops with blockers remaining, the tree is cut back to the distance
// of the last removed blocker and orphaned A-edges are pruned.
inline CollapseOutcome collapse(AlternatingTree& tree, Matching& matching, int a_index,
                                TraceSink* trace = nullptr) {
    if (tree.a(a_index).live_blockers != 0)
        throw InvariantBreach("collapse: edge still has blockers");

    int current = a_index;
    int last_removed_b = -1;
    while (tree.a(current).live_blockers == 0) {
        int player = tree.a(current).edge.player;
        int bi = tree.b_edge_of_player(player);
        if (bi >= 0) {
            Edge incoming = tree.a(current).edge;
            int dist = tree.a(current).distance;
            int parent = tree.b(bi).parent;
            Edge outgoing = matching.remove(player);
            if (!(outgoing == tree.b(bi).edge))
                throw InvariantBreach("collapse: blocking edge out of sync with matching");
            tree.remove_b_edge(bi);
            tree.remove_a_edge(current);
            matching.add(incoming);
            detail::emit(trace, tree, TraceEventKind::Swap, dist, player, incoming.bundle);
            last_removed_b = bi;
            current = parent;
        } else {
            if (player != tree.root())
                throw InvariantBreach("collapse: matched player has no blocking edge");
            Edge incoming = tree.a(current).edge;
            int dist = tree.a(current).distance;
            tree.remove_a_edge(current);
            matching.add(incoming);
            detail::emit(trace, tree, TraceEventKind::RootMatched, dist, player, incoming.bundle);
            return CollapseOutcome::RootMatched;
        }
    }

    // The chain ascends, so the last removed blocker is the shallowest; it
    // is thin, because a fat blocker is its parent's only blocker and the
    // chain would have continued there.
    const auto& last = tree.b(last_removed_b);
    if (last.edge.kind != EdgeKind::Thin)
        throw InvariantBreach("collapse: partial collapse after removing a fat blocker");
    int cutoff = last.distance;
    int cut_player = last.edge.player;
    std::vector<int> cut_bundle = last.edge.bundle;

    // Drop A-edges deeper than the cutoff together with the edges blocking
    // them.
    for (int bi = 0; bi < static_cast<int>(tree.b_nodes().size()); ++bi) {
        if (!tree.b(bi).alive) continue;
        if (tree.a(tree.b(bi).parent).distance > cutoff) tree.remove_b_edge(bi);
    }
    for (int ai = 0; ai < static_cast<int>(tree.a_nodes().size()); ++ai) {
        if (!tree.a(ai).alive) continue;
        if (tree.a(ai).distance > cutoff) tree.remove_a_edge(ai);
    }

    // Orphan pruning: the swaps above may have consumed the blocking edge
    // that connected a player to the tree while a fat A-edge of that player
    // at distance exactly the cutoff survives. Such an edge would let the
    // chain double-match its player later, so remove every A-edge whose
    // player left {root} ∪ players(B), cascading through its B-children.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int ai = 0; ai < static_cast<int>(tree.a_nodes().size()); ++ai) {
            if (!tree.a(ai).alive) continue;
            int p = tree.a(ai).edge.player;
            if (p == tree.root() || tree.b_edge_of_player(p) >= 0) continue;
            for (int bi = 0; bi < static_cast<int>(tree.b_nodes().size()); ++bi)
                if (tree.b(bi).alive && tree.b(bi).parent == ai) tree.remove_b_edge(bi);
            tree.remove_a_edge(ai);
            changed = true;
        }
    }

    detail::emit(trace, tree, TraceEventKind::PartialCollapse, cutoff, cut_player, cut_bundle);
    return CollapseOutcome::PartialCollapse;
}

struct ExtendStats {
    std::int64_t iterations = 0;
    int max_height = 0;
};

struct EngineOptions {
    bool validate = false;      // run the full tree validator after each iteration
    TraceSink* trace = nullptr; // event stream, off by default
};

struct Extended {};
struct Stalled {
    AlternatingTree tree;
    int limit;
};
using ExtendResult = std::variant<Extended, Stalled>;

// One round of Algorithm "increase the size of the matching": grow an
// alternating tree from the unmatched player of smallest id until the root
// is matched or no addable edge exists within the distance bound. Each
// iteration strictly decreases the tree signature (checked), which forces
// termination.
inline ExtendResult extend_matching(const Instance& inst, Matching& matching, std::int64_t T,
                                    const Approximation& approx,
                                    const EngineOptions& options = {},
                                    ExtendStats* stats = nullptr) {
    if (T <= 0) throw InvariantBreach("extend_matching: requires T >= 1");
    int root = -1;
    for (int p = 0; p < inst.n_players(); ++p) {
        if (!matching.is_matched(p)) {
            root = p;
            break;
        }
    }
    if (root < 0) throw InvariantBreach("extend_matching: no unmatched player");

    const int limit = distance_bound(inst.n_players(), approx);
    AlternatingTree tree(inst, root);
    Signature prev = signature_of(tree);

    auto note_height = [&] {
        if (stats) stats->max_height = std::max(stats->max_height, tree.observed_height());
    };

    while (true) {
        auto found = find_min_distance_addable(tree, matching, inst, T, approx, limit);
        if (!found) {
            detail::emit(options.trace, tree, TraceEventKind::Stalled, limit, root, {});
            note_height();
            return Stalled{std::move(tree), limit};
        }
        if (stats) ++stats->iterations;

        auto& [edge, dist] = *found;
        int player = edge.player;
        std::vector<int> bundle = edge.bundle;
        int ai = tree.add_a_edge(std::move(edge), dist);
        detail::emit(options.trace, tree, TraceEventKind::AddEdge, dist, player, bundle);

        auto blockers = find_blockers(matching, tree.a(ai).edge);
        if (!blockers.empty()) {
            attach_blockers(tree, matching, ai, options.trace);
        } else {
            if (collapse(tree, matching, ai, options.trace) == CollapseOutcome::RootMatched) {
                note_height();
                return Extended{};
            }
        }

        Signature current = signature_of(tree);
        if (!lex_less(current, prev))
            throw InvariantBreach("extend_matching: signature did not decrease");
        prev = std::move(current);
        note_height();
        if (options.validate) validate_tree(tree, inst, matching, T, approx, limit);
    }
}

} // namespace fairalloc
