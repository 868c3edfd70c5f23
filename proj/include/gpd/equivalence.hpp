#pragma once

#include "gpd/cover.hpp"

namespace gpd {

// The groupoid morphism swept out by a cover morphism: all composites
// beta ∘ g ∘ alpha with alpha a base-to-star table of the source cover and
// beta a star-to-base table of the target cover.
inline GroupoidMorphism functor_G_map(const CoverMorphism& g) {
    const Table rep = cover_canonical_rep(g);
    GroupoidMorphism h{g.source.base, g.target.base, {}};
    for (const auto& in : g.source.star_morphisms) {
        if (in.kind != StarKind::base_to_star) continue;
        for (const auto& out : g.target.star_morphisms) {
            if (out.kind != StarKind::star_to_base) continue;
            h.functions.push_back(
                {in.base_side, out.base_side,
                 compose_tables(out.table, compose_tables(rep, in.table))});
        }
    }
    canonicalize(h.functions);
    return h;
}

// Tagging transport of one function of h over the pair of base objects; the
// class does not depend on which function is picked.
inline CoverMorphism functor_C_map(const GroupoidMorphism& h,
                                   const ExtendedCover& v1,
                                   const ExtendedCover& v2) {
    if (!(h.source == v1.base) || !(h.target == v2.base))
        throw StructuralError("functor_C_map: morphism does not match the covers");
    for (const auto& f : h.functions) {  // canonical order; first hit wins
        if (f.src_obj == v1.base_object && f.dst_obj == v2.base_object) {
            CoverMorphism c{v1, v2, f.table};
            c.table = cover_canonical_rep(c);
            return c;
        }
    }
    throw StructuralError("functor_C_map: no function over the base objects");
}

// Unit of the equivalence: the class of (first star-outgoing table landing
// on target_base) viewed into the star of extend(base, target_base).
inline CoverMorphism unit_eta(const ExtendedCover& v, const ObjectId& target_base) {
    if (!v.base.has_object(target_base))
        throw StructuralError("unknown object '" + target_base + "'");
    ExtendedCover target = extend_groupoid(v.base, target_base);
    for (const auto& r : v.star_morphisms) {
        if (r.kind == StarKind::star_to_base && r.base_side == target_base) {
            CoverMorphism c{v, target, r.table};
            c.table = cover_canonical_rep(c);
            return c;
        }
    }
    throw StructuralError("no star-outgoing table lands on '" + target_base + "'");
}

// Counit formula: composites through the star object. For the concrete
// model restrict(extend(g,i)) is g itself, so this must sweep out exactly
// the identity morphism; computing the formula keeps that checkable.
inline GroupoidMorphism counit_epsilon(const FiniteGroupoid& g, const ObjectId& i) {
    ExtendedCover v = extend_groupoid(g, i);
    GroupoidMorphism h{g, g, {}};
    for (const auto& in : v.star_morphisms) {
        if (in.kind != StarKind::base_to_star) continue;
        for (const auto& out : v.star_morphisms) {
            if (out.kind != StarKind::star_to_base) continue;
            h.functions.push_back({in.base_side, out.base_side,
                                   compose_tables(out.table, in.table)});
        }
    }
    canonicalize(h.functions);
    return h;
}

struct LawCheck {
    std::string law;
    bool pass;
    std::string counterexample;  // empty when pass
};

struct EquivalenceReport {
    bool complete = true;
    std::vector<LawCheck> checks;
    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const LawCheck& c) { return c.pass; });
    }
};

struct NamedGroupoid {
    std::string name;
    FiniteGroupoid groupoid;
};

// Runs the functor laws, unit/counit checks, round trips, and Hom-set
// cardinality comparisons across all ordered pairs of the corpus.
inline EquivalenceReport check_equivalence_laws(
    const std::vector<NamedGroupoid>& corpus,
    const EnumerationBounds& bounds = {}) {
    EquivalenceReport rep;
    auto record = [&](const std::string& law, bool pass, std::string cx = "") {
        rep.checks.push_back({law, pass, std::move(cx)});
    };

    struct Entry {
        std::string name;
        FiniteGroupoid g;
        ExtendedCover v;
    };
    std::vector<Entry> entries;
    for (const auto& ng : corpus)
        entries.push_back(
            {ng.name, ng.groupoid,
             extend_groupoid(ng.groupoid, ng.groupoid.object_ids.front())});

    try {
        // Identity preservation for both functors.
        for (const auto& e : entries) {
            bool g_ok = functor_G_map(identity_cover_morphism(e.v)) ==
                        identity_morphism(e.g);
            record("G-preserves-identity[" + e.name + "]", g_ok);
            bool c_ok = cover_morphisms_equal(
                functor_C_map(identity_morphism(e.g), e.v, e.v),
                identity_cover_morphism(e.v));
            record("C-preserves-identity[" + e.name + "]", c_ok);
            bool eps_ok = counit_epsilon(e.g, e.g.object_ids.front()) ==
                          identity_morphism(e.g);
            record("epsilon-collapses[" + e.name + "]", eps_ok);
        }

        // Pairwise laws.
        std::map<std::pair<std::string, std::string>,
                 std::pair<std::vector<GroupoidMorphism>, std::vector<CoverMorphism>>>
            homs;
        for (const auto& a : entries)
            for (const auto& b : entries)
                homs[{a.name, b.name}] = {enumerate_morphisms(a.g, b.g, bounds),
                                          enumerate_cover_morphisms(a.v, b.v)};

        for (const auto& a : entries)
            for (const auto& b : entries) {
                const auto& [ms, cs] = homs.at({a.name, b.name});
                std::string pair = a.name + "->" + b.name;
                record("hom-count-equal[" + pair + "]", ms.size() == cs.size(),
                       ms.size() == cs.size()
                           ? ""
                           : std::to_string(ms.size()) + " groupoid morphisms vs " +
                                 std::to_string(cs.size()) + " cover classes");

                bool gc_ok = true;
                std::string gc_cx;
                for (const auto& h : ms) {
                    GroupoidMorphism back = functor_G_map(functor_C_map(h, a.v, b.v));
                    if (!(back == h)) {
                        gc_ok = false;
                        gc_cx = "G(C(h)) differs from h over " + pair;
                        break;
                    }
                }
                record("GC-round-trip[" + pair + "]", gc_ok, gc_cx);

                bool cg_ok = true;
                std::string cg_cx;
                for (const auto& g : cs) {
                    CoverMorphism back = functor_C_map(functor_G_map(g), a.v, b.v);
                    if (!cover_morphisms_equal(back, g)) {
                        cg_ok = false;
                        cg_cx = "C(G(g)) differs from g over " + pair;
                        break;
                    }
                }
                record("CG-round-trip[" + pair + "]", cg_ok, cg_cx);

                // Injectivity of C on this Hom-set (bijectivity follows with
                // the count equality above).
                bool inj = true;
                for (std::size_t x = 0; x < ms.size() && inj; ++x)
                    for (std::size_t y = x + 1; y < ms.size() && inj; ++y)
                        if (cover_morphisms_equal(functor_C_map(ms[x], a.v, b.v),
                                                  functor_C_map(ms[y], a.v, b.v)))
                            inj = false;
                record("C-injective[" + pair + "]", inj);

                // Unit naturality across every choice of base objects:
                // C'(G(g)) ∘ eta_src = eta_tgt ∘ g.
                bool eta_ok = true;
                std::string eta_cx;
                for (const auto& g : cs) {
                    for (const auto& ja : a.g.object_ids) {
                        for (const auto& jb : b.g.object_ids) {
                            ExtendedCover va = extend_groupoid(a.g, ja);
                            ExtendedCover vb = extend_groupoid(b.g, jb);
                            CoverMorphism eta_a = unit_eta(a.v, ja);
                            CoverMorphism eta_b = unit_eta(b.v, jb);
                            CoverMorphism mapped =
                                functor_C_map(functor_G_map(g), va, vb);
                            CoverMorphism lhs =
                                compose_cover_morphisms(eta_a, mapped);
                            CoverMorphism rhs = compose_cover_morphisms(g, eta_b);
                            if (!cover_morphisms_equal(lhs, rhs)) {
                                eta_ok = false;
                                eta_cx = "square fails over " + pair + " at bases (" +
                                         ja + "," + jb + ")";
                            }
                            if (!is_cover_isomorphism(eta_a) ||
                                !is_cover_isomorphism(eta_b)) {
                                eta_ok = false;
                                eta_cx = "eta not an isomorphism at " + pair;
                            }
                        }
                    }
                }
                record("eta-naturality[" + pair + "]", eta_ok, eta_cx);

                // Counit naturality: with epsilon the identity this is
                // G(C(h)) = h, sharpened to composites below.
            }

        // Functor laws on composition across all composable triples.
        for (const auto& a : entries)
            for (const auto& b : entries)
                for (const auto& c : entries) {
                    const auto& [ms1, cs1] = homs.at({a.name, b.name});
                    const auto& [ms2, cs2] = homs.at({b.name, c.name});
                    std::string triple = a.name + "->" + b.name + "->" + c.name;
                    bool c_comp = true;
                    for (const auto& h1 : ms1)
                        for (const auto& h2 : ms2) {
                            CoverMorphism lhs =
                                functor_C_map(compose_morphism(h1, h2), a.v, c.v);
                            CoverMorphism rhs = compose_cover_morphisms(
                                functor_C_map(h1, a.v, b.v),
                                functor_C_map(h2, b.v, c.v));
                            if (!cover_morphisms_equal(lhs, rhs)) c_comp = false;
                        }
                    record("C-preserves-composition[" + triple + "]", c_comp);
                    bool g_comp = true;
                    for (const auto& g1 : cs1)
                        for (const auto& g2 : cs2) {
                            GroupoidMorphism lhs =
                                functor_G_map(compose_cover_morphisms(g1, g2));
                            GroupoidMorphism rhs = compose_morphism(
                                functor_G_map(g1), functor_G_map(g2));
                            if (!(lhs == rhs)) g_comp = false;
                        }
                    record("G-preserves-composition[" + triple + "]", g_comp);
                }
    } catch (const BoundExceeded& e) {
        rep.complete = false;
        record("bound", false, e.what());
    }
    return rep;
}

}  // namespace gpd
