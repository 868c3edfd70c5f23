#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "gpd/core.hpp"

namespace gpd {

// One function of a groupoid morphism, between two carriers.
struct FnEntry {
    ObjectId src_obj;
    ObjectId dst_obj;
    Table table;

    bool operator==(const FnEntry&) const = default;
    std::string key() const {
        return src_obj + "|" + dst_obj + "|" + encode_table(table);
    }
};

// Canonical: sorted by key, deduplicated.
using FunctionSet = std::vector<FnEntry>;

inline void canonicalize(FunctionSet& fs) {
    std::sort(fs.begin(), fs.end(),
              [](const FnEntry& a, const FnEntry& b) { return a.key() < b.key(); });
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
}

// Morphism of concrete groupoids: a set of functions between carriers
// satisfying conditions (A) and (B). Equality is function-set equality;
// any index set used to present the family is immaterial.
struct GroupoidMorphism {
    FiniteGroupoid source;
    FiniteGroupoid target;
    FunctionSet functions;

    bool operator==(const GroupoidMorphism& o) const {
        return functions == o.functions && source == o.source && target == o.target;
    }
};

namespace detail {

// Composite *sets*: sorted and deduplicated, since distinct Hom-tables can
// collapse to one composite.
inline std::vector<Table> post_compose_all(const std::vector<Table>& deltas, const Table& t) {
    std::vector<Table> out;
    for (const auto& d : deltas) out.push_back(compose_tables(d, t));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<Table> pre_compose_all(const Table& t, const std::vector<Table>& gammas) {
    std::vector<Table> out;
    for (const auto& c : gammas) out.push_back(compose_tables(t, c));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

inline void check_morphism_structure(const GroupoidMorphism& h) {
    for (const auto& f : h.functions) {
        if (!h.source.has_object(f.src_obj))
            throw StructuralError("unknown source object '" + f.src_obj + "'");
        if (!h.target.has_object(f.dst_obj))
            throw StructuralError("unknown target object '" + f.dst_obj + "'");
        const auto& sc = h.source.carrier(f.src_obj);
        const auto& dc = h.target.carrier(f.dst_obj);
        for (const auto& x : sc)
            if (!f.table.count(x))
                throw StructuralError("function at (" + f.src_obj + "," + f.dst_obj +
                                      ") is not total at '" + x + "'");
        for (const auto& [x, y] : f.table) {
            if (!std::binary_search(sc.begin(), sc.end(), x))
                throw StructuralError("function at (" + f.src_obj + "," + f.dst_obj +
                                      ") maps unknown element '" + x + "'");
            if (!std::binary_search(dc.begin(), dc.end(), y))
                throw StructuralError("function at (" + f.src_obj + "," + f.dst_obj +
                                      ") hits element '" + y + "' outside the codomain");
        }
    }
}

// Conditions (A), (B) and totality of the induced function set.
inline ValidationReport validate_morphism(const GroupoidMorphism& h) {
    ValidationReport r;
    for (const auto& i1 : h.source.object_ids)
        for (const auto& i2 : h.target.object_ids) {
            bool found = std::any_of(h.functions.begin(), h.functions.end(),
                                     [&](const FnEntry& f) {
                                         return f.src_obj == i1 && f.dst_obj == i2;
                                     });
            if (!found)
                r.add("totality", "no function over (" + i1 + "," + i2 + ")");
        }

    for (const auto& p : h.functions)
        for (const auto& q : h.functions) {
            auto lhs = detail::pre_compose_all(
                q.table, hom_tables(h.source, p.src_obj, q.src_obj));
            auto rhs = detail::post_compose_all(
                hom_tables(h.target, p.dst_obj, q.dst_obj), p.table);
            if (lhs != rhs) {
                r.add("condition-A",
                      "fails between (" + p.src_obj + "," + p.dst_obj + ") and (" +
                          q.src_obj + "," + q.dst_obj + ")");
                return r;  // first violation is enough to reject
            }
        }

    for (const auto& p : h.functions)
        for (const auto& m : h.target.morphisms) {
            if (m.src != p.dst_obj) continue;
            FnEntry want{p.src_obj, m.dst, compose_tables(m.table, p.table)};
            if (!std::binary_search(h.functions.begin(), h.functions.end(), want,
                                    [](const FnEntry& a, const FnEntry& b) {
                                        return a.key() < b.key();
                                    })) {
                r.add("condition-B",
                      "post-composite over (" + p.src_obj + "," + m.dst + ") missing");
                return r;
            }
        }
    return r;
}

struct SaturationResult {
    std::optional<GroupoidMorphism> morphism;
    ValidationReport report;
    bool ok() const { return morphism.has_value(); }
};

// Smallest function set containing the seeds and closed under
// post-composition by target Hom-tables and pre-composition by source
// Hom-tables; validated before it is returned.
inline SaturationResult saturate_morphism(const FiniteGroupoid& source,
                                          const FiniteGroupoid& target,
                                          const FunctionSet& seeds) {
    if (seeds.empty()) throw StructuralError("saturation requires a nonempty seed");
    GroupoidMorphism h{source, target, seeds};
    canonicalize(h.functions);
    check_morphism_structure(h);

    std::set<std::string> keys;
    for (const auto& f : h.functions) keys.insert(f.key());
    std::vector<FnEntry> frontier = h.functions;
    while (!frontier.empty()) {
        std::vector<FnEntry> next;
        auto push = [&](FnEntry f) {
            if (keys.insert(f.key()).second) {
                h.functions.push_back(f);
                next.push_back(std::move(f));
            }
        };
        for (const auto& f : frontier) {
            for (const auto& m : target.morphisms)
                if (m.src == f.dst_obj)
                    push({f.src_obj, m.dst, compose_tables(m.table, f.table)});
            for (const auto& m : source.morphisms)
                if (m.dst == f.src_obj)
                    push({m.src, f.dst_obj, compose_tables(f.table, m.table)});
        }
        frontier = std::move(next);
    }
    canonicalize(h.functions);

    SaturationResult out;
    out.report = validate_morphism(h);
    if (out.report.ok())
        out.morphism = std::move(h);
    else
        out.report.add("no-morphism", "no morphism contains the seed");
    return out;
}

// The family of the groupoid's own bijections; neutral for composition.
inline GroupoidMorphism identity_morphism(const FiniteGroupoid& g) {
    GroupoidMorphism h{g, g, {}};
    for (const auto& m : g.morphisms) h.functions.push_back({m.src, m.dst, m.table});
    canonicalize(h.functions);
    return h;
}

// Fibred product over the middle groupoid's objects.
inline GroupoidMorphism compose_morphism(const GroupoidMorphism& g,
                                         const GroupoidMorphism& h) {
    if (!(g.target == h.source))
        throw StructuralError("composition mismatch: target of first != source of second");
    GroupoidMorphism out{g.source, h.target, {}};
    for (const auto& p : g.functions)
        for (const auto& q : h.functions)
            if (p.dst_obj == q.src_obj)
                out.functions.push_back(
                    {p.src_obj, q.dst_obj, compose_tables(q.table, p.table)});
    canonicalize(out.functions);
    return out;
}

struct IsoResult {
    bool is_isomorphism = false;
    std::optional<GroupoidMorphism> inverse;
};

// A morphism is an isomorphism iff some (equivalently every) function in it
// is a bijection; the inverse is the family of inverted tables.
inline IsoResult is_isomorphism(const GroupoidMorphism& h) {
    IsoResult out;
    if (h.functions.empty()) return out;
    auto bijective = [&](const FnEntry& f) {
        return table_is_bijection(f.table, h.source.carrier(f.src_obj),
                                  h.target.carrier(f.dst_obj));
    };
    if (!bijective(h.functions.front())) return out;
    for (const auto& f : h.functions)
        if (!bijective(f))
            throw StructuralError("mixed bijective and non-bijective functions; not a morphism");
    out.is_isomorphism = true;
    GroupoidMorphism inv{h.target, h.source, {}};
    for (const auto& f : h.functions)
        inv.functions.push_back({f.dst_obj, f.src_obj, invert_table(f.table)});
    canonicalize(inv.functions);
    out.inverse = std::move(inv);
    return out;
}

struct GroupoidEmbedding {
    FiniteGroupoid source;
    FiniteGroupoid target;
    std::map<ObjectId, ObjectId> iota;
    std::map<ObjectId, Table> per_object;
};

inline ValidationReport validate_embedding(const GroupoidEmbedding& e) {
    ValidationReport r;
    std::set<ObjectId> image;
    for (const auto& i : e.source.object_ids) {
        auto it = e.iota.find(i);
        if (it == e.iota.end())
            throw StructuralError("iota undefined at '" + i + "'");
        if (!e.target.has_object(it->second))
            throw StructuralError("iota('" + i + "') is not an object of the target");
        if (!image.insert(it->second).second)
            r.add("injectivity", "iota is not injective at '" + i + "'");
        auto jt = e.per_object.find(i);
        if (jt == e.per_object.end())
            throw StructuralError("no table at object '" + i + "'");
        if (!table_is_bijection(jt->second, e.source.carrier(i),
                                e.target.carrier(it->second)))
            r.add("bijection", "table at '" + i + "' is not a bijection");
    }
    if (!r.ok()) return r;
    for (const auto& i : e.source.object_ids)
        for (const auto& j : e.source.object_ids) {
            std::vector<Table> lhs;  // h_j ∘ Hom_src(i,j)
            for (const auto& t : hom_tables(e.source, i, j))
                lhs.push_back(compose_tables(e.per_object.at(j), t));
            std::sort(lhs.begin(), lhs.end());
            std::vector<Table> rhs;
            for (const auto& t :
                 hom_tables(e.target, e.iota.at(i), e.iota.at(j)))
                rhs.push_back(compose_tables(t, e.per_object.at(i)));
            std::sort(rhs.begin(), rhs.end());
            if (lhs != rhs)
                r.add("intertwining",
                      "fails between objects '" + i + "' and '" + j + "'");
        }
    return r;
}

// The isomorphism induced by an embedding: all post-composites of the
// per-object tables with target bijections out of the image objects.
inline GroupoidMorphism lift_embedding(const GroupoidEmbedding& e) {
    if (!is_connected(e.source) || !is_connected(e.target))
        throw StructuralError("lift_embedding requires connected groupoids");
    GroupoidMorphism h{e.source, e.target, {}};
    for (const auto& i : e.source.object_ids) {
        const Table& hi = e.per_object.at(i);
        for (const auto& m : e.target.morphisms)
            if (m.src == e.iota.at(i))
                h.functions.push_back({i, m.dst, compose_tables(m.table, hi)});
    }
    canonicalize(h.functions);
    return h;
}

struct EquivalenceWitness {
    FiniteGroupoid common;
    GroupoidEmbedding embed_left;
    GroupoidEmbedding embed_right;
};

struct EquivalenceResult {
    bool equivalent = false;
    std::optional<EquivalenceWitness> witness;
};

namespace detail {

// All bijections carrier -> carrier2 in lexicographic order of their encoding.
inline void for_each_bijection(const std::vector<Label>& from,
                               const std::vector<Label>& to,
                               const std::function<bool(const Table&)>& visit) {
    std::vector<Label> perm = to;  // sorted; next_permutation walks lex order
    do {
        Table t;
        for (std::size_t k = 0; k < from.size(); ++k) t[from[k]] = perm[k];
        if (visit(t)) return;
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace detail

// Conjugacy criterion: g1 ~ g2 iff some bijection between two carriers
// conjugates one automorphism group onto the other. The witness is the
// disjoint union with cross Hom-sets routed through the conjugating map.
inline EquivalenceResult decide_equivalence(const FiniteGroupoid& g1,
                                            const FiniteGroupoid& g2) {
    if (!is_connected(g1) || !is_connected(g2))
        throw StructuralError("decide_equivalence requires connected groupoids");
    const ObjectId i = g1.object_ids.front();
    const ObjectId j = g2.object_ids.front();
    const auto& ci = g1.carrier(i);
    const auto& cj = g2.carrier(j);
    EquivalenceResult out;
    if (ci.size() != cj.size()) return out;

    PermutationGroup a1 = aut_group(g1, i);
    PermutationGroup a2 = aut_group(g2, j);
    if (a1.order() != a2.order()) return out;

    std::optional<Table> beta;
    detail::for_each_bijection(ci, cj, [&](const Table& b) {
        Table binv = invert_table(b);
        for (const auto& t : a1.elements)
            if (!a2.contains(compose_tables(b, compose_tables(t, binv))))
                return false;
        beta = b;
        return true;
    });
    if (!beta) return out;
    out.equivalent = true;

    // Assemble the common groupoid: copies of g1 and g2 plus cross morphisms
    // Hom(L_i', R_j') = Hom2(j,j') ∘ beta ∘ Hom1(i',i).
    std::vector<ObjectId> objects;
    std::map<ObjectId, std::vector<Label>> carriers;
    std::vector<SeedMorphism> seeds;
    for (const auto& o : g1.object_ids) {
        objects.push_back("L_" + o);
        carriers["L_" + o] = g1.carrier(o);
    }
    for (const auto& o : g2.object_ids) {
        objects.push_back("R_" + o);
        carriers["R_" + o] = g2.carrier(o);
    }
    for (const auto& m : g1.morphisms)
        seeds.push_back({"L_" + m.id, "L_" + m.src, "L_" + m.dst, m.table});
    for (const auto& m : g2.morphisms)
        seeds.push_back({"R_" + m.id, "R_" + m.src, "R_" + m.dst, m.table});
    seeds.push_back({"beta", "L_" + i, "R_" + j, *beta});
    FiniteGroupoid common = closure_from_generators(objects, carriers, seeds);

    GroupoidEmbedding left{g1, common, {}, {}};
    for (const auto& o : g1.object_ids) {
        left.iota[o] = "L_" + o;
        left.per_object[o] = identity_table(g1.carrier(o));
    }
    GroupoidEmbedding right{g2, common, {}, {}};
    for (const auto& o : g2.object_ids) {
        right.iota[o] = "R_" + o;
        right.per_object[o] = identity_table(g2.carrier(o));
    }
    out.witness = EquivalenceWitness{std::move(common), std::move(left), std::move(right)};
    return out;
}

struct EnumerationBounds {
    std::size_t max_total_carrier = 16;
    std::size_t max_hom_set = 24;
};

struct BoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void check_enumeration_bounds(const FiniteGroupoid& g1,
                                     const FiniteGroupoid& g2,
                                     const EnumerationBounds& b) {
    std::size_t total = 0;
    for (const auto& i : g1.object_ids) total += g1.carrier(i).size();
    for (const auto& i : g2.object_ids) total += g2.carrier(i).size();
    if (total > b.max_total_carrier)
        throw BoundExceeded("enumeration refused: total carrier size " +
                            std::to_string(total) + " exceeds bound " +
                            std::to_string(b.max_total_carrier));
    for (const auto* g : {&g1, &g2})
        for (const auto& i : g->object_ids)
            for (const auto& j : g->object_ids)
                if (hom_set(*g, i, j).size() > b.max_hom_set)
                    throw BoundExceeded("enumeration refused: Hom-set larger than bound");
}

// Brute-force oracle: every morphism is the saturation of any one of its
// functions, so exhausting the functions over one object pair finds them all.
inline std::vector<GroupoidMorphism> enumerate_morphisms(
    const FiniteGroupoid& g1, const FiniteGroupoid& g2,
    const EnumerationBounds& bounds = {}) {
    if (!is_connected(g1) || !is_connected(g2))
        throw StructuralError("enumerate_morphisms requires connected groupoids");
    check_enumeration_bounds(g1, g2, bounds);
    const ObjectId i1 = g1.object_ids.front();
    const ObjectId i2 = g2.object_ids.front();
    const auto& from = g1.carrier(i1);
    const auto& to = g2.carrier(i2);

    std::vector<GroupoidMorphism> out;
    std::set<std::string> seen;
    std::vector<std::size_t> choice(from.size(), 0);
    for (;;) {
        Table t;
        for (std::size_t k = 0; k < from.size(); ++k) t[from[k]] = to[choice[k]];
        auto sat = saturate_morphism(g1, g2, {{i1, i2, t}});
        if (sat.ok()) {
            std::string key;
            for (const auto& f : sat.morphism->functions) key += f.key() + "#";
            if (seen.insert(key).second) out.push_back(std::move(*sat.morphism));
        }
        std::size_t k = 0;
        while (k < choice.size() && ++choice[k] == to.size()) choice[k++] = 0;
        if (k == choice.size()) break;
    }
    return out;
}

}  // namespace gpd
