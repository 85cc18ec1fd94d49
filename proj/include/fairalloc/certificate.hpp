#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairalloc/arith.hpp"
#include "fairalloc/errors.hpp"
#include "fairalloc/instance.hpp"
#include "fairalloc/tree.hpp"

namespace fairalloc {

// Witness that no fractional assignment can give every player a bundle of
// value T: a ray (y, z) of the dual with positive objective. Entries take
// only the values 0, (alpha-1)/alpha, and v_j/T.
struct DualCertificate {
    std::int64_t T = 0;
    Approximation approx{1, 1};
    int D_prime = 0;
    std::vector<Rational> y; // per player index
    std::vector<Rational> z; // per resource index
};

// Builds (y, z) from a stalled tree. D' is the smallest integer in [0, D]
// such that ((alpha-4)/3) * sum_{i<=D'} |B^t_{2i}| >= |B^t_{2D'+2}|; layer
// growth past D' would otherwise exceed the player count, so a valid D'
// always exists when the engine is sound.
inline DualCertificate build_dual_certificate(const AlternatingTree& tree, const Instance& inst,
                                              std::int64_t T, const Approximation& approx,
                                              int limit) {
    if (T < 1) throw InvariantBreach("build_dual_certificate: requires T >= 1");
    const int D = (limit - 1) / 2;

    // |B^t_{2i}| for i = 0..D+1
    std::vector<std::int64_t> thin_blockers(D + 2, 0);
    for (const auto& b : tree.b_nodes()) {
        if (!b.alive || b.edge.kind != EdgeKind::Thin) continue;
        int layer = b.distance / 2;
        if (layer < static_cast<int>(thin_blockers.size())) thin_blockers[layer] += 1;
    }

    int d_prime = -1;
    std::int64_t prefix = 0;
    for (int cand = 0; cand <= D; ++cand) {
        if (cand >= 1) prefix = checked_add(prefix, thin_blockers[cand]);
        // (p/q)/3 * prefix >= |B^t_{2cand+2}|  <=>  p*prefix >= 3q*count
        if (cmp_products(approx.eps_num(), prefix, 3 * approx.eps_den(),
                         thin_blockers[cand + 1]) >= 0) {
            d_prime = cand;
            break;
        }
    }
    if (d_prime < 0)
        throw InvariantBreach("build_dual_certificate: no valid D' (layer growth bound violated)");

    DualCertificate cert;
    cert.T = T;
    cert.approx = approx;
    cert.D_prime = d_prime;
    cert.y.assign(inst.n_players(), Rational());
    cert.z.assign(inst.n_resources(), Rational());

    const Rational high(BigInt(3) * approx.alpha_den() + approx.eps_num(),
                        BigInt(4) * approx.alpha_den() + approx.eps_num()); // (alpha-1)/alpha

    // Player distances on the stalled tree: root at 0, blocked players at
    // their blocking edge's distance.
    cert.y[tree.root()] = high;
    for (const auto& b : tree.b_nodes()) {
        if (!b.alive) continue;
        if (b.distance <= 2 * d_prime) cert.y[b.edge.player] = high;
    }

    // Resource distances: minimum distance over the tree edges containing
    // the resource (a blocker's shared resources keep the parent's distance).
    std::vector<int> res_dist(inst.n_resources(), -1);
    auto note = [&](const std::vector<int>& bundle, int dist) {
        for (int r : bundle)
            if (res_dist[r] < 0 || dist < res_dist[r]) res_dist[r] = dist;
    };
    for (const auto& a : tree.a_nodes())
        if (a.alive) note(a.edge.bundle, a.distance);
    for (const auto& b : tree.b_nodes())
        if (b.alive) note(b.edge.bundle, b.distance);

    for (int r = 0; r < inst.n_resources(); ++r) {
        if (res_dist[r] < 0) continue;
        if (classify_resource(inst.value(r), T, approx) == ResourceKind::Fat) {
            if (res_dist[r] <= 2 * d_prime) cert.z[r] = high;
        } else {
            if (res_dist[r] <= 2 * d_prime + 2) cert.z[r] = Rational(inst.value(r), T);
        }
    }
    return cert;
}

// Brute-force check that (y, z) is a dual ray with positive objective:
//   (a) y, z >= 0;
//   (b) for every player i and configuration C of eligible resources with
//       value >= T: sum_{j in C} z_j >= y_i. Only inclusion-minimal
//       configurations are enumerated; z >= 0 makes supersets weaker.
//   (c) sum y - sum z > 0.
// True certifies that no allocation of value T exists.
inline bool verify_dual_certificate(const Instance& inst, const DualCertificate& cert,
                                    int max_resources = 20) {
    if (inst.n_resources() > max_resources)
        throw TooLarge("verify_dual_certificate: " + std::to_string(inst.n_resources()) +
                       " resources exceeds guard " + std::to_string(max_resources));
    if (static_cast<int>(cert.y.size()) != inst.n_players() ||
        static_cast<int>(cert.z.size()) != inst.n_resources())
        throw Malformed("certificate", "certificate size does not match instance");

    for (const auto& v : cert.y)
        if (v.is_negative()) return false;
    for (const auto& v : cert.z)
        if (v.is_negative()) return false;

    for (int p = 0; p < inst.n_players(); ++p) {
        const auto& elig = inst.eligible(p);
        const Rational& bound = cert.y[p];
        bool ok = true;
        // DFS over subsets; stop descending as soon as the value reaches T,
        // since any extension is a superset of a feasible configuration.
        auto dfs = [&](auto&& self, std::size_t pos, std::int64_t sum, const Rational& zsum) -> void {
            if (!ok) return;
            if (sum >= cert.T) {
                if (zsum < bound) ok = false;
                return;
            }
            if (pos == elig.size()) return;
            self(self, pos + 1, sum, zsum);
            int r = elig[pos];
            self(self, pos + 1, checked_add(sum, inst.value(r)), zsum + cert.z[r]);
        };
        dfs(dfs, 0, 0, Rational());
        if (!ok) return false;
    }

    Rational objective;
    for (const auto& v : cert.y) objective = objective + v;
    for (const auto& v : cert.z) objective = objective - v;
    return Rational() < objective;
}

// File format: rationals as exact "num/den" strings, zero entries omitted.
inline nlohmann::json certificate_to_json(const Instance& inst, const DualCertificate& cert) {
    nlohmann::json y = nlohmann::json::object();
    for (int p = 0; p < inst.n_players(); ++p)
        if (!cert.y[p].is_zero()) y[inst.player_names()[p]] = cert.y[p].str();
    nlohmann::json z = nlohmann::json::object();
    for (int r = 0; r < inst.n_resources(); ++r)
        if (!cert.z[r].is_zero()) z[inst.resource_names()[r]] = cert.z[r].str();
    return nlohmann::json{{"T", cert.T},
                          {"epsilon", cert.approx.str()},
                          {"D_prime", cert.D_prime},
                          {"y", std::move(y)},
                          {"z", std::move(z)}};
}

inline DualCertificate certificate_from_json(const Instance& inst, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("T") || !j["T"].is_number_integer())
        throw Malformed("certificate", "missing integer T");
    DualCertificate cert;
    cert.T = j["T"].get<std::int64_t>();
    if (!j.contains("epsilon") || !j["epsilon"].is_string())
        throw Malformed("certificate", "missing epsilon");
    cert.approx = Approximation::parse(j["epsilon"].get<std::string>());
    cert.D_prime = j.value("D_prime", 0);
    cert.y.assign(inst.n_players(), Rational());
    cert.z.assign(inst.n_resources(), Rational());
    if (j.contains("y")) {
        for (const auto& [name, val] : j["y"].items()) {
            auto p = inst.player_index(name);
            if (!p) throw Malformed("certificate", "unknown player '" + name + "'");
            cert.y[*p] = Rational::parse(val.get<std::string>());
        }
    }
    if (j.contains("z")) {
        for (const auto& [name, val] : j["z"].items()) {
            auto r = inst.resource_index(name);
            if (!r) throw Malformed("certificate", "unknown resource '" + name + "'");
            cert.z[*r] = Rational::parse(val.get<std::string>());
        }
    }
    return cert;
}

} // namespace fairalloc
