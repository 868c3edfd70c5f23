#pragma once

#include "gpd/family.hpp"

namespace fixtures {

using namespace gpd;

// One object, one element, identity only.
inline FiniteGroupoid triv1() {
    return closure_from_generators({"i"}, {{"i", {"a"}}}, {});
}

// One object with a two-element carrier and the swap: Aut of order 2.
inline FiniteGroupoid z2() {
    return closure_from_generators({"i"}, {{"i", {"a", "b"}}},
                                   {{"swap", "i", "i", {{"a", "b"}, {"b", "a"}}}});
}

// Two objects, trivial automorphism groups, singleton cross Hom-sets.
inline FiniteGroupoid rigid2() {
    return closure_from_generators(
        {"i", "j"}, {{"i", {"a", "b"}}, {"j", {"x", "y"}}},
        {{"f", "i", "j", {{"a", "x"}, {"b", "y"}}}});
}

// Two objects, Aut of order 2 everywhere, cross Hom-sets of size 2.
inline FiniteGroupoid tors2() {
    return closure_from_generators(
        {"i", "j"}, {{"i", {"a", "b"}}, {"j", {"x", "y"}}},
        {{"swap", "i", "i", {{"a", "b"}, {"b", "a"}}},
         {"f", "i", "j", {{"a", "x"}, {"b", "y"}}}});
}

inline std::vector<NamedGroupoid> corpus() {
    return {{"triv1", triv1()}, {"z2", z2()}, {"rigid2", rigid2()}, {"tors2", tors2()}};
}

// Two-fibre family: a Z2 fibre over 'i' and a trivial fibre over 'j'.
inline FiniteGroupoid fam2_total() {
    FiniteGroupoid g = z2();
    g.object_ids.push_back("j");
    g.carriers["j"] = {"c"};
    g.morphisms.push_back({"id_j", "j", "j", {{"c", "c"}}});
    g.normalize();
    return g;
}

// Three fibres: two Z2-like and one trivial.
inline FiniteGroupoid fam3_total() {
    FiniteGroupoid g = fam2_total();
    g.object_ids.push_back("k");
    g.carriers["k"] = {"d", "e"};
    g.morphisms.push_back({"id_k", "k", "k", {{"d", "d"}, {"e", "e"}}});
    g.morphisms.push_back({"swap_k", "k", "k", {{"d", "e"}, {"e", "d"}}});
    g.normalize();
    return g;
}

// Adversarial raw structure: the lone star automorphism is the identity, so
// the faithful base tuple is empty and the two incoming records collide.
inline StarStructure det_adversarial() {
    StarStructure s;
    s.base = closure_from_generators({"i"}, {{"i", {"a", "b"}}}, {});
    s.stars.push_back({"star", {"a", "b"}});
    s.records.push_back(
        {"r_id", StarKind::star_to_star, "star", "star", {{"a", "a"}, {"b", "b"}}});
    s.records.push_back(
        {"r_in1", StarKind::base_to_star, "i", "star", {{"a", "a"}, {"b", "b"}}});
    s.records.push_back(
        {"r_in2", StarKind::base_to_star, "i", "star", {{"a", "b"}, {"b", "a"}}});
    return s;
}

// Adversarial raw structure: a record crossing two stars, so the swap on the
// first star does not assemble with the identity on the second.
inline StarStructure crossing_adversarial() {
    StarStructure s;
    s.base = closure_from_generators({"i"}, {{"i", {"a"}}}, {});
    s.stars.push_back({"s1", {"a", "b"}});
    s.stars.push_back({"s2", {"a", "b"}});
    Table idt{{"a", "a"}, {"b", "b"}};
    Table swap{{"a", "b"}, {"b", "a"}};
    s.records.push_back({"s1_id", StarKind::star_to_star, "s1", "s1", idt});
    s.records.push_back({"s1_swap", StarKind::star_to_star, "s1", "s1", swap});
    s.records.push_back({"s2_id", StarKind::star_to_star, "s2", "s2", idt});
    s.records.push_back({"cross", StarKind::star_to_star, "s1", "s2", idt});
    return s;
}

// A groupoid failing validation: the extra morphism is not a bijection.
inline FiniteGroupoid broken() {
    FiniteGroupoid g = triv1();
    g.object_ids.push_back("j");
    g.carriers["j"] = {"x", "y"};
    g.morphisms.push_back({"id_j", "j", "j", {{"x", "x"}, {"y", "y"}}});
    g.morphisms.push_back({"collapse", "j", "j", {{"x", "x"}, {"y", "x"}}});
    g.normalize();
    return g;
}

}  // namespace fixtures
