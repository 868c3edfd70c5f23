#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace gpd;

TEST_CASE("identity morphism validates and is neutral") {
    for (const auto& [name, g] : fixtures::corpus()) {
        INFO(name);
        GroupoidMorphism id = identity_morphism(g);
        CHECK(validate_morphism(id).ok());
        CHECK(compose_morphism(id, id) == id);
    }
}

TEST_CASE("saturation of a single function recovers the whole morphism") {
    FiniteGroupoid z2 = fixtures::z2();

    SECTION("a bijective seed saturates to the identity morphism") {
        auto sat = saturate_morphism(z2, z2, {{"i", "i", {{"a", "b"}, {"b", "a"}}}});
        REQUIRE(sat.ok());
        CHECK(*sat.morphism == identity_morphism(z2));
    }
    SECTION("a constant seed into a rigid target saturates to a morphism") {
        auto sat = saturate_morphism(z2, fixtures::rigid2(),
                                     {{"i", "i", {{"a", "a"}, {"b", "a"}}}});
        REQUIRE(sat.ok());
        CHECK(sat.morphism->functions.size() == 2);  // one per target object
    }
    SECTION("no morphism contains a constant endo-seed of Z2") {
        auto sat = saturate_morphism(z2, z2, {{"i", "i", {{"a", "a"}, {"b", "a"}}}});
        CHECK_FALSE(sat.ok());
        CHECK(sat.report.violations.back().invariant == "no-morphism");
    }
    SECTION("every enumerated morphism equals the saturation of each of its functions") {
        FiniteGroupoid tors2 = fixtures::tors2();
        for (const auto& h : enumerate_morphisms(tors2, tors2))
            for (const auto& f : h.functions) {
                auto sat = saturate_morphism(tors2, tors2, {f});
                REQUIRE(sat.ok());
                CHECK(*sat.morphism == h);
            }
    }
}

TEST_CASE("frozen enumeration counts") {
    CHECK(enumerate_morphisms(fixtures::z2(), fixtures::z2()).size() == 1);
    CHECK(enumerate_morphisms(fixtures::z2(), fixtures::rigid2()).size() == 2);
    CHECK(enumerate_morphisms(fixtures::rigid2(), fixtures::z2()).empty());
    CHECK(enumerate_morphisms(fixtures::tors2(), fixtures::tors2()).size() == 1);
    CHECK(enumerate_morphisms(fixtures::triv1(), fixtures::triv1()).size() == 1);
}

TEST_CASE("composition is associative with two-sided identities") {
    auto z2 = fixtures::z2();
    auto rigid2 = fixtures::rigid2();
    auto ms1 = enumerate_morphisms(z2, z2);
    auto ms2 = enumerate_morphisms(z2, rigid2);
    auto ms3 = enumerate_morphisms(rigid2, rigid2);
    for (const auto& f : ms1)
        for (const auto& g : ms2)
            for (const auto& h : ms3) {
                CHECK(compose_morphism(compose_morphism(f, g), h) ==
                      compose_morphism(f, compose_morphism(g, h)));
            }
    for (const auto& g : ms2) {
        CHECK(compose_morphism(identity_morphism(z2), g) == g);
        CHECK(compose_morphism(g, identity_morphism(rigid2)) == g);
    }
}

TEST_CASE("isomorphism iff one function is a bijection") {
    SECTION("identity is invertible and self-inverse") {
        auto id = identity_morphism(fixtures::tors2());
        auto res = is_isomorphism(id);
        REQUIRE(res.is_isomorphism);
        CHECK(*res.inverse == id);
    }
    SECTION("constant morphisms are not invertible") {
        for (const auto& h : enumerate_morphisms(fixtures::z2(), fixtures::rigid2()))
            CHECK_FALSE(is_isomorphism(h).is_isomorphism);
    }
    SECTION("inverse composes to the identity on both sides") {
        auto res = is_isomorphism(identity_morphism(fixtures::rigid2()));
        REQUIRE(res.is_isomorphism);
        auto id = identity_morphism(fixtures::rigid2());
        CHECK(compose_morphism(id, *res.inverse) == id);
    }
}

TEST_CASE("embeddings validate and lift") {
    FiniteGroupoid z2 = fixtures::z2();
    FiniteGroupoid tors2 = fixtures::tors2();
    GroupoidEmbedding e{z2, tors2, {{"i", "i"}}, {{"i", identity_table({"a", "b"})}}};
    CHECK(validate_embedding(e).ok());
    GroupoidMorphism lifted = lift_embedding(e);
    CHECK(validate_morphism(lifted).ok());
    CHECK(is_isomorphism(lifted).is_isomorphism);

    SECTION("intertwining failures are caught") {
        GroupoidEmbedding bad{z2, fixtures::rigid2(), {{"i", "i"}},
                              {{"i", identity_table({"a", "b"})}}};
        auto r = validate_embedding(bad);
        REQUIRE_FALSE(r.ok());
        CHECK(r.violations.front().invariant == "intertwining");
    }
}

TEST_CASE("equivalence decision") {
    SECTION("Z2 and TORS2 are equivalent with a checkable witness") {
        auto res = decide_equivalence(fixtures::z2(), fixtures::tors2());
        REQUIRE(res.equivalent);
        REQUIRE(res.witness);
        CHECK(validate_groupoid(res.witness->common).ok());
        CHECK(validate_embedding(res.witness->embed_left).ok());
        CHECK(validate_embedding(res.witness->embed_right).ok());
        CHECK(is_connected(res.witness->common));
    }
    SECTION("Z2 and RIGID2 are not equivalent") {
        CHECK_FALSE(decide_equivalence(fixtures::z2(), fixtures::rigid2()).equivalent);
    }
    SECTION("carrier size mismatch is decided without search") {
        CHECK_FALSE(decide_equivalence(fixtures::z2(), fixtures::triv1()).equivalent);
    }
    SECTION("restrictions of a common groupoid are equivalent") {
        std::mt19937 rng(4242);
        for (int k = 0; k < 15; ++k) {
            FiniteGroupoid g = oracles::random_connected_groupoid(rng);
            if (g.object_ids.size() < 2) continue;
            auto g1 = full_subgroupoid(g, {g.object_ids.front()});
            auto g2 = full_subgroupoid(g, {g.object_ids.back()});
            CHECK(decide_equivalence(g1, g2).equivalent);
        }
    }
}

TEST_CASE("enumeration bounds are enforced") {
    FiniteGroupoid big;
    std::vector<ObjectId> objects;
    std::map<ObjectId, std::vector<Label>> carriers;
    for (int k = 0; k < 5; ++k) {
        ObjectId id = "o" + std::to_string(k);
        objects.push_back(id);
        carriers[id] = {"e0", "e1"};
    }
    std::vector<SeedMorphism> seeds;
    for (int k = 1; k < 5; ++k)
        seeds.push_back({"f", "o0", "o" + std::to_string(k),
                         {{"e0", "e0"}, {"e1", "e1"}}});
    FiniteGroupoid g = closure_from_generators(objects, carriers, seeds);
    CHECK_THROWS_AS(enumerate_morphisms(g, g), BoundExceeded);
    EnumerationBounds loose{40, 40};
    CHECK_NOTHROW(enumerate_morphisms(g, g, loose));
}
