#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fairalloc/edge.hpp"
#include "fairalloc/errors.hpp"
#include "fairalloc/instance.hpp"

namespace fairalloc {

// Layer-count vector compared lexicographically. The vector for a tree of
// maximum edge distance 2k is
//   (-|A^f_0|, |B^f_0|, -|A^t_1|, |B^t_2|, -|A^f_2|, |B^f_2|, ...,
//    -|A^t_{2k-1}|, |B^t_{2k}|, -|A^f_{2k}|, |B^f_{2k}|)
// with a virtual terminator larger than every integer after the last entry.
using Signature = std::vector<std::int64_t>;

// Strict lexicographic order with the end-of-vector treated as +infinity:
// a proper prefix is greater than any extension of it.
inline bool lex_less(const Signature& s1, const Signature& s2) {
    std::size_t n = std::min(s1.size(), s2.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (s1[i] != s2[i]) return s1[i] < s2[i];
    }
    return s1.size() > s2.size();
}

// Alternating tree of A-edges (candidates to add) and B-edges (matched
// blockers), layered by distance from the root. Distance of an edge counts
// the thin edges on the root-to-edge path including the edge itself; fat
// edges contribute length 0. Players sit at even distances: the root at 0,
// the player of a B-edge at that B-edge's distance.
//
// Nodes are tombstoned rather than erased so parent links stay stable.
class AlternatingTree {
public:
    struct ANode {
        Edge edge;
        int distance = 0;
        int live_blockers = 0;
        bool alive = false;
    };
    struct BNode {
        Edge edge;
        int distance = 0;
        int parent = -1; // index into a_nodes: the A-edge this one blocks
        bool alive = false;
    };

    AlternatingTree(const Instance& inst, int root)
        : root_(root),
          res_count_(inst.n_resources(), 0),
          player_b_(inst.n_players(), -1) {}

    int root() const { return root_; }
    const std::vector<ANode>& a_nodes() const { return a_nodes_; }
    const std::vector<BNode>& b_nodes() const { return b_nodes_; }
    const ANode& a(int i) const { return a_nodes_[i]; }
    const BNode& b(int i) const { return b_nodes_[i]; }

    bool resource_in_tree(int r) const { return res_count_[r] > 0; }

    // -1 when the player is not in the tree.
    int player_distance(int player) const {
        if (player == root_) return 0;
        int bi = player_b_[player];
        return bi >= 0 ? b_nodes_[bi].distance : -1;
    }

    int b_edge_of_player(int player) const { return player_b_[player]; }

    // Max resource distance ever present, monotone over the lifetime of the
    // tree. A resource shared between a B-edge and its parent keeps the
    // parent's (smaller) distance.
    int observed_height() const { return observed_height_; }

    int add_a_edge(Edge e, int distance) {
        for (int r : e.bundle) {
            if (res_count_[r] != 0) throw InvariantBreach("add_a_edge: resource already in tree");
            res_count_[r] = 1;
        }
        if (!e.bundle.empty()) observed_height_ = std::max(observed_height_, distance);
        a_nodes_.push_back(ANode{std::move(e), distance, 0, true});
        return static_cast<int>(a_nodes_.size()) - 1;
    }

    int attach_b_edge(Edge e, int distance, int parent) {
        if (player_b_[e.player] >= 0)
            throw InvariantBreach("attach_b_edge: player already has a blocking edge");
        if (!a_nodes_[parent].alive) throw InvariantBreach("attach_b_edge: dead parent");
        bool has_new_resource = false;
        for (int r : e.bundle) {
            if (res_count_[r] >= 2) throw InvariantBreach("attach_b_edge: resource count overflow");
            if (res_count_[r] == 0) has_new_resource = true;
            ++res_count_[r];
        }
        if (has_new_resource) observed_height_ = std::max(observed_height_, distance);
        b_nodes_.push_back(BNode{std::move(e), distance, parent, true});
        int idx = static_cast<int>(b_nodes_.size()) - 1;
        player_b_[b_nodes_[idx].edge.player] = idx;
        a_nodes_[parent].live_blockers += 1;
        return idx;
    }

    void remove_a_edge(int i) {
        ANode& node = a_nodes_[i];
        if (!node.alive) throw InvariantBreach("remove_a_edge: already removed");
        for (int r : node.edge.bundle) --res_count_[r];
        node.alive = false;
    }

    void remove_b_edge(int i) {
        BNode& node = b_nodes_[i];
        if (!node.alive) throw InvariantBreach("remove_b_edge: already removed");
        for (int r : node.edge.bundle) --res_count_[r];
        node.alive = false;
        player_b_[node.edge.player] = -1;
        if (a_nodes_[node.parent].alive) a_nodes_[node.parent].live_blockers -= 1;
    }

    // Candidate players for the addable-edge search: root plus every player
    // reached by a live blocking edge, with their distances.
    std::vector<std::pair<int, int>> players_with_distance() const {
        std::vector<std::pair<int, int>> out;
        out.emplace_back(0, root_);
        for (const BNode& b : b_nodes_)
            if (b.alive) out.emplace_back(b.distance, b.edge.player);
        return out;
    }

    bool empty() const {
        for (const ANode& a : a_nodes_)
            if (a.alive) return false;
        for (const BNode& b : b_nodes_)
            if (b.alive) return false;
        return true;
    }

private:
    int root_;
    std::vector<ANode> a_nodes_;
    std::vector<BNode> b_nodes_;
    std::vector<int> res_count_; // 0, 1, or 2 (a blocker may share with its parent)
    std::vector<int> player_b_;
    int observed_height_ = 0;
};

inline Signature signature_of(const AlternatingTree& tree) {
    int max_dist = 0;
    for (const auto& a : tree.a_nodes())
        if (a.alive) max_dist = std::max(max_dist, a.distance);
    for (const auto& b : tree.b_nodes())
        if (b.alive) max_dist = std::max(max_dist, b.distance);
    int k = (max_dist + 1) / 2;

    // counts[d] per distance, split by kind and side
    std::vector<std::int64_t> a_fat(2 * k + 1, 0), a_thin(2 * k + 1, 0), b_fat(2 * k + 1, 0),
        b_thin(2 * k + 1, 0);
    for (const auto& a : tree.a_nodes()) {
        if (!a.alive) continue;
        (a.edge.kind == EdgeKind::Fat ? a_fat : a_thin)[a.distance] += 1;
    }
    for (const auto& b : tree.b_nodes()) {
        if (!b.alive) continue;
        (b.edge.kind == EdgeKind::Fat ? b_fat : b_thin)[b.distance] += 1;
    }

    Signature sig;
    sig.reserve(2 + 4 * k);
    sig.push_back(-a_fat[0]);
    sig.push_back(b_fat[0]);
    for (int i = 1; i <= k; ++i) {
        sig.push_back(-a_thin[2 * i - 1]);
        sig.push_back(b_thin[2 * i]);
        sig.push_back(-a_fat[2 * i]);
        sig.push_back(b_fat[2 * i]);
    }
    return sig;
}

// Full structural validation, quadratic and meant for tests / debug runs.
// Throws InvariantBreach naming the first violated invariant.
inline void validate_tree(const AlternatingTree& tree, const Instance& inst,
                          const Matching& matching, std::int64_t T, const Approximation& approx,
                          int limit) {
    const auto& as = tree.a_nodes();
    const auto& bs = tree.b_nodes();

    std::vector<char> player_has_b(inst.n_players(), 0);
    for (const auto& b : bs) {
        if (!b.alive) continue;
        if (player_has_b[b.edge.player]) throw InvariantBreach("tree: two blocking edges at one player");
        player_has_b[b.edge.player] = 1;
    }

    for (std::size_t i = 0; i < as.size(); ++i) {
        if (!as[i].alive) continue;
        const auto& a = as[i];
        if (!edge_is_valid(inst, a.edge, T, approx)) throw InvariantBreach("tree: invalid A-edge");
        bool thin = a.edge.kind == EdgeKind::Thin;
        if ((a.distance % 2 == 0) == thin) throw InvariantBreach("tree: A-edge parity");
        if (a.distance > limit) throw InvariantBreach("tree: A-edge beyond distance limit");
        if (a.edge.player != tree.root() && !player_has_b[a.edge.player])
            throw InvariantBreach("tree: A-edge player neither root nor blocked player");
        int pdist = tree.player_distance(a.edge.player);
        if (pdist < 0 || a.distance != pdist + (thin ? 1 : 0))
            throw InvariantBreach("tree: A-edge distance inconsistent with player distance");
        for (std::size_t j = i + 1; j < as.size(); ++j) {
            if (!as[j].alive) continue;
            if (bundles_intersect(a.edge.bundle, as[j].edge.bundle))
                throw InvariantBreach("tree: A-edges not resource-disjoint");
        }
    }

    std::vector<int> live_count(as.size(), 0);
    for (std::size_t i = 0; i < bs.size(); ++i) {
        if (!bs[i].alive) continue;
        const auto& b = bs[i];
        if (!edge_is_valid(inst, b.edge, T, approx)) throw InvariantBreach("tree: invalid B-edge");
        if (b.distance % 2 != 0) throw InvariantBreach("tree: B-edge at odd distance");
        if (b.distance > limit + 1) throw InvariantBreach("tree: B-edge beyond distance limit");
        if (b.parent < 0 || b.parent >= static_cast<int>(as.size()) || !as[b.parent].alive)
            throw InvariantBreach("tree: B-edge without live parent");
        live_count[b.parent] += 1;
        const auto& parent = as[b.parent];
        if (b.edge.kind != parent.edge.kind)
            throw InvariantBreach("tree: blocker kind differs from blocked edge kind");
        int expected = parent.distance + (b.edge.kind == EdgeKind::Thin ? 1 : 0);
        if (b.distance != expected) throw InvariantBreach("tree: B-edge distance");
        const auto& me = matching.edge_of(b.edge.player);
        if (!me || !(*me == b.edge)) throw InvariantBreach("tree: B-edge not in matching");
        for (std::size_t j = 0; j < as.size(); ++j) {
            if (!as[j].alive) continue;
            bool meets = bundles_intersect(b.edge.bundle, as[j].edge.bundle);
            if (meets && static_cast<int>(j) != b.parent)
                throw InvariantBreach("tree: B-edge intersects a non-parent A-edge");
            if (static_cast<int>(j) == b.parent && !meets)
                throw InvariantBreach("tree: B-edge disjoint from its parent");
        }
    }

    for (std::size_t i = 0; i < as.size(); ++i) {
        if (!as[i].alive) continue;
        if (as[i].live_blockers != live_count[i])
            throw InvariantBreach("tree: live blocker counter out of sync");
    }

    // Every matched edge that intersects some A-edge must be in B.
    for (int p = 0; p < inst.n_players(); ++p) {
        const auto& me = matching.edge_of(p);
        if (!me) continue;
        bool intersects = false;
        for (const auto& a : as) {
            if (a.alive && bundles_intersect(me->bundle, a.edge.bundle)) {
                intersects = true;
                break;
            }
        }
        if (intersects) {
            int bi = tree.b_edge_of_player(p);
            if (bi < 0 || !bs[bi].alive || !(bs[bi].edge == *me))
                throw InvariantBreach("tree: matched edge intersecting A is not a blocker");
        }
    }

    for (int r = 0; r < inst.n_resources(); ++r) {
        int count = 0;
        for (const auto& a : as)
            if (a.alive && std::binary_search(a.edge.bundle.begin(), a.edge.bundle.end(), r)) ++count;
        for (const auto& b : bs)
            if (b.alive && std::binary_search(b.edge.bundle.begin(), b.edge.bundle.end(), r)) ++count;
        if ((count > 0) != tree.resource_in_tree(r))
            throw InvariantBreach("tree: resource membership out of sync");
        if (count > 2) throw InvariantBreach("tree: resource in more than two edges");
    }
}

} // namespace fairalloc
