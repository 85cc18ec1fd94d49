#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairalloc/errors.hpp"
#include "fairalloc/instance.hpp"

namespace fairalloc {

using Json = nlohmann::json;

struct Violation {
    std::string field;
    std::string message;
};

struct ValidationOutcome {
    std::optional<Instance> instance;
    std::vector<Violation> violations;

    bool ok() const { return instance.has_value(); }
};

// Normalizes a raw instance description into an Instance, or reports every
// invariant violation found. Does not throw on bad content; file-level
// helpers below convert violations into Malformed.
inline ValidationOutcome validate_instance(const Json& raw) {
    ValidationOutcome out;
    auto fail = [&](const std::string& field, const std::string& message) {
        out.violations.push_back({field, message});
    };

    if (!raw.is_object()) {
        fail("instance", "top-level value must be a JSON object");
        return out;
    }
    if (!raw.contains("players") || !raw["players"].is_array())
        fail("players", "missing or not an array");
    if (!raw.contains("resources") || !raw["resources"].is_array())
        fail("resources", "missing or not an array");
    if (!raw.contains("eligibility") || !raw["eligibility"].is_object())
        fail("eligibility", "missing or not an object");
    if (!out.violations.empty()) return out;

    std::vector<std::string> player_names;
    for (const auto& p : raw["players"]) {
        if (!p.is_string()) {
            fail("players", "player ids must be strings");
            continue;
        }
        player_names.push_back(p.get<std::string>());
    }
    {
        auto sorted = player_names;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            fail("players", "duplicate player id");
    }

    std::vector<std::string> resource_names;
    std::vector<std::int64_t> values;
    std::int64_t value_sum = 0;
    bool sum_ok = true;
    for (const auto& r : raw["resources"]) {
        if (!r.is_object() || !r.contains("id") || !r["id"].is_string()) {
            fail("resources", "each resource needs a string id");
            continue;
        }
        resource_names.push_back(r["id"].get<std::string>());
        if (!r.contains("value") || !r["value"].is_number_integer()) {
            // Rationals and floats are rejected; inputs must be scaled to
            // integers beforehand so all threshold arithmetic stays exact.
            fail("value", "resource '" + resource_names.back() + "' value must be an integer");
            values.push_back(0);
            continue;
        }
        std::int64_t v = r["value"].get<std::int64_t>();
        if (v < 0) {
            fail("value", "resource '" + resource_names.back() + "' has negative value");
            v = 0;
        }
        values.push_back(v);
        if (sum_ok) {
            if (v > kMaxValueSum - value_sum) {
                fail("value", "total resource value exceeds the supported precision bound");
                sum_ok = false;
            } else {
                value_sum += v;
            }
        }
    }
    {
        auto sorted = resource_names;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            fail("resources", "duplicate resource id");
    }

    std::unordered_map<std::string, int> pindex, rindex;
    for (int i = 0; i < static_cast<int>(player_names.size()); ++i)
        pindex.emplace(player_names[i], i);
    for (int j = 0; j < static_cast<int>(resource_names.size()); ++j)
        rindex.emplace(resource_names[j], j);

    std::vector<std::vector<int>> eligibility(player_names.size());
    for (const auto& [key, members] : raw["eligibility"].items()) {
        auto pit = pindex.find(key);
        if (pit == pindex.end()) {
            fail("eligibility", "unknown player '" + key + "'");
            continue;
        }
        if (!members.is_array()) {
            fail("eligibility", "entry for '" + key + "' must be an array");
            continue;
        }
        for (const auto& m : members) {
            if (!m.is_string()) {
                fail("eligibility", "entry for '" + key + "' must list resource ids");
                continue;
            }
            auto rit = rindex.find(m.get<std::string>());
            if (rit == rindex.end()) {
                fail("eligibility",
                     "player '" + key + "' references unknown resource '" + m.get<std::string>() + "'");
                continue;
            }
            eligibility[pit->second].push_back(rit->second);
        }
    }

    if (!out.violations.empty()) return out;
    out.instance = Instance(std::move(player_names), std::move(resource_names), std::move(values),
                            std::move(eligibility));
    return out;
}

inline Json instance_to_json(const Instance& inst) {
    Json j;
    j["players"] = inst.player_names();
    Json resources = Json::array();
    for (int r = 0; r < inst.n_resources(); ++r)
        resources.push_back({{"id", inst.resource_names()[r]}, {"value", inst.value(r)}});
    j["resources"] = std::move(resources);
    Json elig = Json::object();
    for (int p = 0; p < inst.n_players(); ++p) {
        Json list = Json::array();
        for (int r : inst.eligible(p)) list.push_back(inst.resource_names()[r]);
        elig[inst.player_names()[p]] = std::move(list);
    }
    j["eligibility"] = std::move(elig);
    return j;
}

inline Instance instance_from_json_or_throw(const Json& raw) {
    auto outcome = validate_instance(raw);
    if (!outcome.ok()) {
        const auto& v = outcome.violations.front();
        throw Malformed(v.field, v.message +
                                     (outcome.violations.size() > 1
                                          ? " (+" + std::to_string(outcome.violations.size() - 1) +
                                                " more violations)"
                                          : ""));
    }
    return std::move(*outcome.instance);
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Malformed("file", "cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Malformed("file", "cannot parse '" + path + "': " + e.what());
    }
    return j;
}

inline Instance load_instance(const std::string& path) {
    return instance_from_json_or_throw(load_json_file(path));
}

// Output format: { "T": int, "epsilon": "p/q", "min_value": int,
//                  "bundles": {"p1": ["r1"], ...} }
inline Json allocation_to_json(const Instance& inst, const Allocation& alloc, std::int64_t T,
                               const Approximation& approx) {
    Json bundles = Json::object();
    for (int p = 0; p < inst.n_players(); ++p) {
        Json list = Json::array();
        for (int r : alloc.bundles[p]) list.push_back(inst.resource_names()[r]);
        bundles[inst.player_names()[p]] = std::move(list);
    }
    return Json{{"T", T},
                {"epsilon", approx.str()},
                {"min_value", alloc.value},
                {"bundles", std::move(bundles)}};
}

inline Allocation allocation_from_json(const Instance& inst, const Json& j) {
    if (!j.is_object() || !j.contains("bundles") || !j["bundles"].is_object())
        throw Malformed("bundles", "allocation file needs a 'bundles' object");
    Allocation alloc = Allocation::empty(inst);
    for (const auto& [player, members] : j["bundles"].items()) {
        auto p = inst.player_index(player);
        if (!p) throw Malformed("bundles", "unknown player '" + player + "'");
        if (!members.is_array()) throw Malformed("bundles", "bundle for '" + player + "' must be an array");
        for (const auto& m : members) {
            if (!m.is_string()) throw Malformed("bundles", "bundles must list resource ids");
            auto r = inst.resource_index(m.get<std::string>());
            if (!r) throw Malformed("bundles", "unknown resource '" + m.get<std::string>() + "'");
            alloc.bundles[*p].push_back(*r);
        }
        std::sort(alloc.bundles[*p].begin(), alloc.bundles[*p].end());
    }
    alloc.recompute_value(inst);
    return alloc;
}

} // namespace fairalloc
