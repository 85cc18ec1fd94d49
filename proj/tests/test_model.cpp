#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace fairalloc;
using testsupport::make_IA;

TEST_CASE("validate_instance accepts a well-formed description") {
    Json raw = Json::parse(R"({
        "players": ["p1", "p2"],
        "resources": [{"id": "r1", "value": 10}, {"id": "r2", "value": 6}, {"id": "r3", "value": 5}],
        "eligibility": {"p1": ["r1"], "p2": ["r1", "r2", "r3"]}
    })");
    auto outcome = validate_instance(raw);
    REQUIRE(outcome.ok());
    CHECK(outcome.instance->n_players() == 2);
    CHECK(outcome.instance->n_resources() == 3);
    CHECK(outcome.instance->value(0) == 10);
    CHECK(outcome.instance->is_eligible(1, 2));
    CHECK_FALSE(outcome.instance->is_eligible(0, 1));
}

TEST_CASE("validate_instance flags dangling eligibility references") {
    Json raw = Json::parse(R"({
        "players": ["p1"],
        "resources": [{"id": "r1", "value": 1}],
        "eligibility": {"p1": ["r99"]}
    })");
    auto outcome = validate_instance(raw);
    REQUIRE_FALSE(outcome.ok());
    REQUIRE(outcome.violations.size() == 1);
    CHECK(outcome.violations[0].field == "eligibility");
}

TEST_CASE("validate_instance flags negative values") {
    Json raw = Json::parse(R"({
        "players": ["p1"],
        "resources": [{"id": "r1", "value": -3}],
        "eligibility": {"p1": ["r1"]}
    })");
    auto outcome = validate_instance(raw);
    REQUIRE_FALSE(outcome.ok());
    REQUIRE(outcome.violations.size() == 1);
    CHECK(outcome.violations[0].field == "value");
}

TEST_CASE("validate_instance rejects non-integer values and duplicates") {
    auto bad_value = validate_instance(Json::parse(R"({
        "players": ["p1"], "resources": [{"id": "r1", "value": 1.5}], "eligibility": {}
    })"));
    REQUIRE_FALSE(bad_value.ok());
    CHECK(bad_value.violations[0].field == "value");

    auto dup = validate_instance(Json::parse(R"({
        "players": ["p1", "p1"], "resources": [], "eligibility": {}
    })"));
    REQUIRE_FALSE(dup.ok());
    CHECK(dup.violations[0].field == "players");
}

TEST_CASE("bundle_value sums eligible members only") {
    Instance ia = make_IA();
    int p1 = *ia.player_index("p1");
    int p2 = *ia.player_index("p2");
    CHECK(bundle_value(ia, p2, testsupport::resource_indices(ia, {"r2", "r3"})) == 11);
    CHECK(bundle_value(ia, p1, testsupport::resource_indices(ia, {"r1", "r2"})) == 10);
    CHECK(bundle_value(ia, p1, std::vector<int>{}) == 0);
}

TEST_CASE("bundle_value is monotone under inclusion") {
    std::mt19937_64 rng(11);
    Instance inst = generate_instance(3, 4, 10, 50, 1, 2);
    for (int trial = 0; trial < 200; ++trial) {
        int player = static_cast<int>(rng() % 4);
        std::vector<int> small, big;
        for (int r = 0; r < inst.n_resources(); ++r) {
            int pick = static_cast<int>(rng() % 3);
            if (pick == 0) small.push_back(r);
            if (pick <= 1) big.push_back(r);
        }
        for (int r : small) REQUIRE(std::find(big.begin(), big.end(), r) != big.end());
        CHECK(bundle_value(inst, player, small) <= bundle_value(inst, player, big));
    }
}

TEST_CASE("classify_resource threshold cases") {
    auto eps1 = Approximation::make(1, 1); // alpha = 5
    CHECK(classify_resource(2, 10, eps1) == ResourceKind::Fat);  // 2 >= 10/5, boundary
    CHECK(classify_resource(1, 10, eps1) == ResourceKind::Thin);
    CHECK(classify_resource(4, 20, eps1) == ResourceKind::Fat);  // boundary equality
}

TEST_CASE("classify_resource agrees with arbitrary-precision rationals") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 1000);
        std::int64_t p = 1 + static_cast<std::int64_t>(rng() % q);
        auto approx = Approximation::make(p, q);
        std::int64_t value = static_cast<std::int64_t>(rng() % 1'000'000);
        std::int64_t T = 1 + static_cast<std::int64_t>(rng() % 1'000'000);
        // value >= T/alpha over exact big integers
        BigInt lhs = BigInt(value) * (BigInt(4) * q + p);
        BigInt rhs = BigInt(T) * q;
        bool fat_ref = lhs >= rhs;
        CHECK((classify_resource(value, T, approx) == ResourceKind::Fat) == fat_ref);
    }
}

TEST_CASE("classify_resource is monotone in value and anti-monotone in T") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 50);
        std::int64_t p = 1 + static_cast<std::int64_t>(rng() % q);
        auto approx = Approximation::make(p, q);
        std::int64_t value = static_cast<std::int64_t>(rng() % 1000);
        std::int64_t T = 1 + static_cast<std::int64_t>(rng() % 1000);
        if (classify_resource(value, T, approx) == ResourceKind::Fat) {
            CHECK(classify_resource(value + 1, T, approx) == ResourceKind::Fat);
            if (T > 1) CHECK(classify_resource(value, T - 1, approx) == ResourceKind::Fat);
        }
    }
}

TEST_CASE("generate_instance is deterministic") {
    Instance a = generate_instance(99, 4, 9, 17, 2, 3);
    Instance b = generate_instance(99, 4, 9, 17, 2, 3);
    CHECK(instance_to_json(a).dump() == instance_to_json(b).dump());
    Instance c = generate_instance(100, 4, 9, 17, 2, 3);
    CHECK(instance_to_json(a).dump() != instance_to_json(c).dump());
}

TEST_CASE("generate_instance with density 1 gives complete eligibility") {
    Instance inst = generate_instance(1, 3, 6, 10, 1, 1);
    for (int p = 0; p < 3; ++p)
        for (int r = 0; r < 6; ++r) CHECK(inst.is_eligible(p, r));
}

TEST_CASE("generate_instance handles zero resources") {
    Instance inst = generate_instance(1, 2, 0, 10, 1, 2);
    CHECK(inst.n_players() == 2);
    CHECK(inst.n_resources() == 0);
    auto outcome = validate_instance(instance_to_json(inst));
    CHECK(outcome.ok());
}

TEST_CASE("generate_instance repairs uncovered resources") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Instance inst = generate_instance(seed, 3, 12, 10, 1, 10);
        for (int r = 0; r < inst.n_resources(); ++r) {
            bool covered = false;
            for (int p = 0; p < inst.n_players(); ++p) covered = covered || inst.is_eligible(p, r);
            CHECK(covered);
        }
    }
}

TEST_CASE("generated instances round-trip through validation") {
    Instance inst = generate_instance(12, 5, 12, 20, 1, 2);
    auto outcome = validate_instance(instance_to_json(inst));
    REQUIRE(outcome.ok());
    CHECK(instance_to_json(*outcome.instance).dump() == instance_to_json(inst).dump());
}

TEST_CASE("approximation parsing enforces the (0,1] range") {
    CHECK(Approximation::parse("1/2").alpha_num() == 9);
    CHECK(Approximation::parse("1/2").alpha_den() == 2);
    CHECK(Approximation::parse("1").str() == "1/1");
    CHECK(Approximation::parse("2/4").str() == "1/2");
    CHECK_THROWS_AS(Approximation::parse("0/1"), Malformed);
    CHECK_THROWS_AS(Approximation::parse("3/2"), Malformed);
    CHECK_THROWS_AS(Approximation::parse("x"), Malformed);
    CHECK_THROWS_AS(Approximation::parse("-1/2"), Malformed);
}

TEST_CASE("rational arithmetic is exact and normalized") {
    Rational a(4, 10);
    CHECK(a.str() == "2/5");
    Rational b = Rational::parse("4/5");
    CHECK((a + b).str() == "6/5");
    CHECK((b - a).str() == "2/5");
    CHECK(a < b);
    CHECK_FALSE(b < a);
    CHECK(Rational::parse("0/7").str() == "0/1");
    CHECK_THROWS_AS(Rational::parse("1/0"), Malformed);
}
