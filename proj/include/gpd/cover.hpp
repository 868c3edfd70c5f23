#pragma once

#include "gpd/morphism.hpp"

namespace gpd {

// Star elements are base elements with an implicit tag 0; they are addressed
// by their base label throughout.
struct StarElement {
    Label base_label;
    bool operator==(const StarElement&) const = default;
};

enum class StarKind { star_to_star, base_to_star, star_to_base };

inline std::string to_string(StarKind k) {
    switch (k) {
        case StarKind::star_to_star: return "star_to_star";
        case StarKind::base_to_star: return "base_to_star";
        case StarKind::star_to_base: return "star_to_base";
    }
    return "?";
}

inline std::optional<StarKind> star_kind_from_string(const std::string& s) {
    if (s == "star_to_star") return StarKind::star_to_star;
    if (s == "base_to_star") return StarKind::base_to_star;
    if (s == "star_to_base") return StarKind::star_to_base;
    return std::nullopt;
}

// One tagged morphism record of the one-object extension.
//   star_to_star: table star -> star (underlying m in M(i,i), tag 0)
//   base_to_star: table carrier(base_side) -> star (tag 1 if base_side == i, else 0)
//   star_to_base: table star -> carrier(base_side) (tag 2 if base_side == i, else 0)
struct StarMorphism {
    StarKind kind;
    MorphismId underlying;
    int tag;
    ObjectId base_side;
    Table table;

    bool operator==(const StarMorphism&) const = default;
    std::string record_id() const {
        return to_string(kind) + "_" + std::to_string(tag) + "_" + underlying;
    }
};

// One-object extension of a connected groupoid: a duplicated base object
// (the star) plus the tagged morphism sorts wiring it into the groupoid.
struct ExtendedCover {
    FiniteGroupoid base;
    ObjectId base_object;
    std::vector<Label> star_carrier;  // copy of carrier(base_object)
    std::vector<StarMorphism> star_morphisms;

    bool operator==(const ExtendedCover&) const = default;
};

inline ExtendedCover extend_groupoid(const FiniteGroupoid& g, const ObjectId& i) {
    if (!g.has_object(i)) throw StructuralError("unknown object '" + i + "'");
    if (!is_connected(g))
        throw StructuralError("extend_groupoid requires a connected groupoid");
    ExtendedCover v;
    v.base = g;
    v.base_object = i;
    v.star_carrier = g.carrier(i);
    for (const auto& m : g.morphisms) {
        if (m.src == i && m.dst == i) {
            v.star_morphisms.push_back({StarKind::star_to_star, m.id, 0, i, m.table});
            v.star_morphisms.push_back({StarKind::base_to_star, m.id, 1, i, m.table});
            v.star_morphisms.push_back({StarKind::star_to_base, m.id, 2, i, m.table});
        } else if (m.dst == i) {
            v.star_morphisms.push_back({StarKind::base_to_star, m.id, 0, m.src, m.table});
        } else if (m.src == i) {
            v.star_morphisms.push_back({StarKind::star_to_base, m.id, 0, m.dst, m.table});
        }
    }
    std::sort(v.star_morphisms.begin(), v.star_morphisms.end(),
              [](const StarMorphism& a, const StarMorphism& b) {
                  return a.record_id() < b.record_id();
              });
    return v;
}

inline FiniteGroupoid restrict_cover(const ExtendedCover& v) { return v.base; }

inline std::vector<Table> star_aut_tables(const ExtendedCover& v) {
    std::vector<Table> out;
    for (const auto& r : v.star_morphisms)
        if (r.kind == StarKind::star_to_star) out.push_back(r.table);
    std::sort(out.begin(), out.end());
    return out;
}

inline ObjectId star_object_id(const ExtendedCover& v) {
    ObjectId id = "_star";
    while (v.base.has_object(id)) id += "_";
    return id;
}

// Base groupoid plus the star object and all tagged records, as one groupoid.
inline FiniteGroupoid assemble_total(const ExtendedCover& v) {
    FiniteGroupoid g = v.base;
    ObjectId star = star_object_id(v);
    g.object_ids.push_back(star);
    g.carriers[star] = v.star_carrier;
    for (const auto& r : v.star_morphisms) {
        ObjectId src = r.kind == StarKind::base_to_star ? r.base_side : star;
        ObjectId dst = r.kind == StarKind::star_to_base ? r.base_side : star;
        g.morphisms.push_back({r.record_id(), src, dst, r.table});
    }
    g.normalize();
    return g;
}

inline ValidationReport validate_cover(const ExtendedCover& v) {
    ValidationReport r;
    if (!v.base.has_object(v.base_object)) {
        r.add("base-object", "'" + v.base_object + "' is not an object of the base");
        return r;
    }
    if (v.star_carrier != v.base.carrier(v.base_object))
        r.add("star-carrier", "star carrier is not a copy of the base object's carrier");
    FiniteGroupoid total = assemble_total(v);
    check_structure(total);
    auto tr = validate_groupoid(total);
    for (auto& viol : tr.violations)
        r.add("total-" + viol.invariant, viol.detail);
    if (!is_connected(total)) r.add("connected", "total structure is disconnected");
    return r;
}

// Morphism between covers: a map of star carriers matched on both sides
// against the star automorphism groups, taken modulo post-composition by the
// target's star automorphisms.
struct CoverMorphism {
    ExtendedCover source;
    ExtendedCover target;
    Table table;
};

inline Table cover_canonical_rep(const CoverMorphism& c) {
    Table best = c.table;
    std::string best_key = encode_table(best);
    for (const auto& alpha : star_aut_tables(c.target)) {
        Table cand = compose_tables(alpha, c.table);
        std::string key = encode_table(cand);
        if (key < best_key) {
            best = std::move(cand);
            best_key = std::move(key);
        }
    }
    return best;
}

inline bool cover_morphisms_equal(const CoverMorphism& a, const CoverMorphism& b) {
    return a.source == b.source && a.target == b.target &&
           cover_canonical_rep(a) == cover_canonical_rep(b);
}

inline void check_cover_morphism_structure(const CoverMorphism& c) {
    for (const auto& x : c.source.star_carrier)
        if (!c.table.count(x))
            throw StructuralError("cover morphism table not total at '" + x + "'");
    for (const auto& [x, y] : c.table) {
        if (!std::binary_search(c.source.star_carrier.begin(),
                                c.source.star_carrier.end(), x))
            throw StructuralError("cover morphism maps unknown star element '" + x + "'");
        if (!std::binary_search(c.target.star_carrier.begin(),
                                c.target.star_carrier.end(), y))
            throw StructuralError("cover morphism hits unknown star element '" + y + "'");
    }
}

// Bi-intertwining: every star automorphism on either side is matched by one
// on the other side across the table.
inline ValidationReport validate_cover_morphism(const CoverMorphism& c) {
    ValidationReport r;
    auto src_aut = star_aut_tables(c.source);
    auto tgt_aut = star_aut_tables(c.target);
    for (const auto& s1 : src_aut) {
        Table lhs = compose_tables(c.table, s1);
        bool matched = std::any_of(tgt_aut.begin(), tgt_aut.end(), [&](const Table& s2) {
            return compose_tables(s2, c.table) == lhs;
        });
        if (!matched)
            r.add("forward-intertwining",
                  "no target match for source automorphism " + encode_table(s1));
    }
    for (const auto& s2 : tgt_aut) {
        Table rhs = compose_tables(s2, c.table);
        bool matched = std::any_of(src_aut.begin(), src_aut.end(), [&](const Table& s1) {
            return compose_tables(c.table, s1) == rhs;
        });
        if (!matched)
            r.add("backward-intertwining",
                  "no source match for target automorphism " + encode_table(s2));
    }
    return r;
}

inline CoverMorphism compose_cover_morphisms(const CoverMorphism& g,
                                             const CoverMorphism& h) {
    if (!(g.target == h.source))
        throw StructuralError("cover composition mismatch");
    CoverMorphism out{g.source, h.target, compose_tables(h.table, g.table)};
    out.table = cover_canonical_rep(out);
    return out;
}

inline CoverMorphism identity_cover_morphism(const ExtendedCover& v) {
    CoverMorphism c{v, v, identity_table(v.star_carrier)};
    c.table = cover_canonical_rep(c);
    return c;
}

inline bool is_cover_isomorphism(const CoverMorphism& c) {
    return table_is_bijection(c.table, c.source.star_carrier, c.target.star_carrier);
}

// Cover isomorphism extend(g,i) -> extend(g,j) induced by the first
// bijection i -> j in canonical order; the class does not depend on it.
inline CoverMorphism base_choice_transport(const FiniteGroupoid& g,
                                           const ObjectId& i, const ObjectId& j) {
    auto homs = hom_tables(g, i, j);
    if (homs.empty())
        throw StructuralError("no morphism from '" + i + "' to '" + j + "'");
    CoverMorphism c{extend_groupoid(g, i), extend_groupoid(g, j), homs.front()};
    c.table = cover_canonical_rep(c);
    return c;
}

// ---------------------------------------------------------------------------
// Star structures: the common shape behind determinacy and independence
// checks. Genuine covers have exactly one star; family covers one per fibre;
// adversarial raw fixtures can declare anything.

struct StarRecord {
    std::string name;
    StarKind kind;
    std::string src;  // star id, or base object for base_to_star
    std::string dst;  // star id, or base object for star_to_base
    Table table;
};

struct StarStructure {
    FiniteGroupoid base;
    std::vector<std::pair<std::string, std::vector<Label>>> stars;  // sorted by id
    std::vector<StarRecord> records;

    const std::vector<Label>& star_carrier(const std::string& id) const {
        for (const auto& [sid, carrier] : stars)
            if (sid == id) return carrier;
        throw StructuralError("unknown star '" + id + "'");
    }
};

inline StarStructure to_star_structure(const ExtendedCover& v,
                                       const std::string& star_id = "star") {
    StarStructure s;
    s.base = v.base;
    s.stars.push_back({star_id, v.star_carrier});
    for (const auto& r : v.star_morphisms) {
        std::string src = r.kind == StarKind::base_to_star ? r.base_side : star_id;
        std::string dst = r.kind == StarKind::star_to_base ? r.base_side : star_id;
        s.records.push_back({r.record_id(), r.kind, src, dst, r.table});
    }
    return s;
}

// Desk analogue of the star sort being definable from star elements: with c
// a faithful base of the star, records in the same Hom-set must be told
// apart by their values on c (via the inverse table when the star is the
// codomain). Works on raw structures with a single star.
inline ValidationReport star_determinacy_check(const StarStructure& s) {
    ValidationReport r;
    if (s.stars.size() != 1) {
        r.add("single-star", "determinacy check expects exactly one star");
        return r;
    }
    const auto& [star_id, carrier] = s.stars.front();

    // Faithful base of the star against its star_to_star tables, greedily.
    std::vector<Table> aut;
    for (const auto& rec : s.records)
        if (rec.kind == StarKind::star_to_star) aut.push_back(rec.table);
    Table idt = identity_table(carrier);
    auto trivial = [&](const std::vector<Table>& st) {
        return std::all_of(st.begin(), st.end(),
                           [&](const Table& t) { return t == idt; });
    };
    std::vector<Label> tuple;
    std::vector<Table> stab = aut;
    for (const auto& x : carrier) {
        if (trivial(stab)) break;
        std::vector<Table> next;
        for (const auto& t : stab)
            if (t.count(x) && t.at(x) == x) next.push_back(t);
        if (next.size() < stab.size()) {
            tuple.push_back(x);
            stab = std::move(next);
        }
    }

    // Signature per record: kind, base-side object, and values on the tuple.
    std::map<std::string, std::string> seen;  // signature -> record name
    for (const auto& rec : s.records) {
        std::string sig = to_string(rec.kind) + "|" + rec.src + "|" + rec.dst + "|";
        const Table t = rec.kind == StarKind::base_to_star ? invert_table(rec.table)
                                                           : rec.table;
        for (const auto& x : tuple) {
            auto it = t.find(x);
            sig += (it == t.end() ? std::string("?") : it->second) + ",";
        }
        auto [it, fresh] = seen.emplace(sig, rec.name);
        if (!fresh)
            r.add("star-determinacy",
                  "records '" + it->second + "' and '" + rec.name +
                      "' agree on the faithful base tuple");
    }
    return r;
}

inline ValidationReport star_determinacy_check(const ExtendedCover& v) {
    return star_determinacy_check(to_star_structure(v));
}

// Oracle: all classes of valid tables star(v1) -> star(v2), by exhausting
// every table, filtering by intertwining, canonicalizing, deduplicating.
inline std::vector<CoverMorphism> enumerate_cover_morphisms(
    const ExtendedCover& v1, const ExtendedCover& v2,
    std::size_t max_star_carrier = 6) {
    if (v1.star_carrier.size() > max_star_carrier ||
        v2.star_carrier.size() > max_star_carrier)
        throw BoundExceeded("cover enumeration refused: star carrier exceeds bound");
    const auto& from = v1.star_carrier;
    const auto& to = v2.star_carrier;
    std::vector<CoverMorphism> out;
    std::set<std::string> seen;
    std::vector<std::size_t> choice(from.size(), 0);
    for (;;) {
        CoverMorphism c{v1, v2, {}};
        for (std::size_t k = 0; k < from.size(); ++k) c.table[from[k]] = to[choice[k]];
        if (validate_cover_morphism(c).ok()) {
            c.table = cover_canonical_rep(c);
            if (seen.insert(encode_table(c.table)).second) out.push_back(std::move(c));
        }
        std::size_t k = 0;
        while (k < choice.size() && ++choice[k] == to.size()) choice[k++] = 0;
        if (k == choice.size()) break;
    }
    return out;
}

}  // namespace gpd
