#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpd {

using Label = std::string;
using ObjectId = std::string;
using MorphismId = std::string;

// A total map between carriers, stored label -> label.
using Table = std::map<Label, Label>;

// Structural problems (unresolved identifiers, non-total maps) are thrown;
// invariant violations are reported, never thrown.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Violation {
    std::string invariant;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    void add(std::string invariant, std::string detail) {
        violations.push_back({std::move(invariant), std::move(detail)});
    }
};

inline Table compose_tables(const Table& second, const Table& first) {
    Table out;
    for (const auto& [x, y] : first) {
        auto it = second.find(y);
        if (it == second.end())
            throw StructuralError("composition undefined at '" + y + "'");
        out[x] = it->second;
    }
    return out;
}

inline Table invert_table(const Table& t) {
    Table out;
    for (const auto& [x, y] : t) out[y] = x;
    return out;
}

inline Table identity_table(const std::vector<Label>& carrier) {
    Table out;
    for (const auto& x : carrier) out[x] = x;
    return out;
}

inline bool table_is_bijection(const Table& t,
                               const std::vector<Label>& src,
                               const std::vector<Label>& dst) {
    if (t.size() != src.size() || src.size() != dst.size()) return false;
    std::set<Label> seen;
    for (const auto& x : src) {
        auto it = t.find(x);
        if (it == t.end()) return false;
        if (!std::binary_search(dst.begin(), dst.end(), it->second)) return false;
        if (!seen.insert(it->second).second) return false;
    }
    return true;
}

inline std::string encode_table(const Table& t) {
    std::string s;
    for (const auto& [x, y] : t) {
        s += x;
        s += ">";
        s += y;
        s += ";";
    }
    return s;
}

struct Morphism {
    MorphismId id;
    ObjectId src;
    ObjectId dst;
    Table table;

    bool operator==(const Morphism&) const = default;
    std::string triple_key() const {
        return src + "|" + dst + "|" + encode_table(table);
    }
};

struct ElementRef {
    ObjectId object;
    Label label;
};

// Group of bijections on one carrier, closed under composition and inverse.
struct PermutationGroup {
    std::vector<Label> carrier;
    std::vector<Table> elements;  // sorted by encoding, deduplicated

    std::size_t order() const { return elements.size(); }
    bool contains(const Table& t) const {
        return std::any_of(elements.begin(), elements.end(),
                           [&](const Table& e) { return e == t; });
    }
};

// Concrete finite groupoid: objects carry finite sets, morphisms are
// bijections between them. Carriers and identifier lists are kept in
// canonical (bytewise sorted) order.
struct FiniteGroupoid {
    std::vector<ObjectId> object_ids;
    std::map<ObjectId, std::vector<Label>> carriers;
    std::vector<Morphism> morphisms;  // sorted by id

    bool operator==(const FiniteGroupoid&) const = default;

    void normalize() {
        std::sort(object_ids.begin(), object_ids.end());
        object_ids.erase(std::unique(object_ids.begin(), object_ids.end()),
                         object_ids.end());
        for (auto& [id, carrier] : carriers) {
            std::sort(carrier.begin(), carrier.end());
            carrier.erase(std::unique(carrier.begin(), carrier.end()),
                          carrier.end());
        }
        std::sort(morphisms.begin(), morphisms.end(),
                  [](const Morphism& a, const Morphism& b) { return a.id < b.id; });
    }

    bool has_object(const ObjectId& i) const {
        return std::binary_search(object_ids.begin(), object_ids.end(), i);
    }

    const std::vector<Label>& carrier(const ObjectId& i) const {
        auto it = carriers.find(i);
        if (it == carriers.end())
            throw StructuralError("unknown object '" + i + "'");
        return it->second;
    }

    const Morphism* find_by_id(const MorphismId& m) const {
        for (const auto& mo : morphisms)
            if (mo.id == m) return &mo;
        return nullptr;
    }

    const Morphism* find_by_triple(const ObjectId& src, const ObjectId& dst,
                                   const Table& table) const {
        for (const auto& mo : morphisms)
            if (mo.src == src && mo.dst == dst && mo.table == table) return &mo;
        return nullptr;
    }
};

// Structural well-formedness; throws StructuralError on failure.
inline void check_structure(const FiniteGroupoid& g) {
    std::set<ObjectId> objs(g.object_ids.begin(), g.object_ids.end());
    if (objs.size() != g.object_ids.size())
        throw StructuralError("duplicate object identifiers");
    for (const auto& i : g.object_ids)
        if (!g.carriers.count(i))
            throw StructuralError("object '" + i + "' has no carrier");
    for (const auto& [i, _] : g.carriers)
        if (!objs.count(i))
            throw StructuralError("carrier for unknown object '" + i + "'");
    std::set<MorphismId> ids;
    for (const auto& m : g.morphisms) {
        if (!ids.insert(m.id).second)
            throw StructuralError("duplicate morphism identifier '" + m.id + "'");
        if (!objs.count(m.src))
            throw StructuralError("morphism '" + m.id + "' has unknown src '" + m.src + "'");
        if (!objs.count(m.dst))
            throw StructuralError("morphism '" + m.id + "' has unknown dst '" + m.dst + "'");
        const auto& sc = g.carriers.at(m.src);
        const auto& dc = g.carriers.at(m.dst);
        for (const auto& x : sc)
            if (!m.table.count(x))
                throw StructuralError("morphism '" + m.id + "' is not total at '" + x + "'");
        for (const auto& [x, y] : m.table) {
            if (!std::binary_search(sc.begin(), sc.end(), x))
                throw StructuralError("morphism '" + m.id + "' maps unknown element '" + x + "'");
            if (!std::binary_search(dc.begin(), dc.end(), y))
                throw StructuralError("morphism '" + m.id + "' hits unknown element '" + y + "'");
        }
    }
}

// Validates all groupoid invariants. Pre: check_structure passed.
inline ValidationReport validate_groupoid(const FiniteGroupoid& g) {
    ValidationReport r;
    for (const auto& i : g.object_ids)
        if (g.carriers.at(i).empty())
            r.add("nonempty-carrier", "object '" + i + "' has an empty carrier");

    for (const auto& m : g.morphisms)
        if (!table_is_bijection(m.table, g.carriers.at(m.src), g.carriers.at(m.dst)))
            r.add("bijection", "morphism '" + m.id + "' is not a bijection");
    if (!r.ok()) return r;  // closure checks presume bijective tables

    std::map<std::string, MorphismId> triples;
    for (const auto& m : g.morphisms) {
        auto [it, fresh] = triples.emplace(m.triple_key(), m.id);
        if (!fresh)
            r.add("distinct-bijections",
                  "morphisms '" + it->second + "' and '" + m.id +
                      "' define the same bijection");
    }

    for (const auto& i : g.object_ids) {
        Table idt = identity_table(g.carriers.at(i));
        if (!g.find_by_triple(i, i, idt))
            r.add("identity", "missing identity at '" + i + "'");
    }

    for (const auto& m : g.morphisms)
        if (!g.find_by_triple(m.dst, m.src, invert_table(m.table)))
            r.add("inverse-closure", "inverse of '" + m.id + "' is missing");

    for (const auto& m1 : g.morphisms)
        for (const auto& m2 : g.morphisms) {
            if (m1.dst != m2.src) continue;
            Table comp = compose_tables(m2.table, m1.table);
            if (!g.find_by_triple(m1.src, m2.dst, comp))
                r.add("composition-closure",
                      "composite of '" + m1.id + "' then '" + m2.id + "' is missing");
        }
    return r;
}

inline std::vector<const Morphism*> hom_set(const FiniteGroupoid& g,
                                            const ObjectId& i, const ObjectId& j) {
    if (!g.has_object(i)) throw StructuralError("unknown object '" + i + "'");
    if (!g.has_object(j)) throw StructuralError("unknown object '" + j + "'");
    std::vector<const Morphism*> out;
    for (const auto& m : g.morphisms)
        if (m.src == i && m.dst == j) out.push_back(&m);
    return out;
}

inline std::vector<Table> hom_tables(const FiniteGroupoid& g,
                                     const ObjectId& i, const ObjectId& j) {
    std::vector<Table> out;
    for (const auto* m : hom_set(g, i, j)) out.push_back(m->table);
    std::sort(out.begin(), out.end());
    return out;
}

inline PermutationGroup aut_group(const FiniteGroupoid& g, const ObjectId& i) {
    PermutationGroup pg;
    pg.carrier = g.carrier(i);
    pg.elements = hom_tables(g, i, i);
    return pg;
}

inline ValidationReport validate_permutation_group(const PermutationGroup& pg) {
    ValidationReport r;
    if (!pg.contains(identity_table(pg.carrier)))
        r.add("identity", "group does not contain the identity");
    for (const auto& t : pg.elements) {
        if (!table_is_bijection(t, pg.carrier, pg.carrier))
            r.add("bijection", "element '" + encode_table(t) + "' is not a bijection");
        else if (!pg.contains(invert_table(t)))
            r.add("inverse-closure", "inverse of '" + encode_table(t) + "' missing");
    }
    for (const auto& a : pg.elements)
        for (const auto& b : pg.elements)
            if (!pg.contains(compose_tables(b, a)))
                r.add("composition-closure", "composite missing");
    return r;
}

inline std::vector<std::vector<ObjectId>> connected_components(const FiniteGroupoid& g) {
    std::map<ObjectId, ObjectId> parent;
    for (const auto& i : g.object_ids) parent[i] = i;
    auto find = [&](ObjectId x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };
    for (const auto& m : g.morphisms) {
        ObjectId a = find(m.src), b = find(m.dst);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<ObjectId, std::vector<ObjectId>> classes;
    for (const auto& i : g.object_ids) classes[find(i)].push_back(i);
    std::vector<std::vector<ObjectId>> out;
    for (auto& [_, cls] : classes) out.push_back(std::move(cls));
    return out;
}

inline bool is_connected(const FiniteGroupoid& g) {
    return connected_components(g).size() <= 1;
}

struct FaithfulBase {
    ObjectId object;
    std::vector<Label> tuple;
};

// Greedy over the carrier in canonical order: append the next element whose
// addition strictly shrinks the pointwise stabiliser; stop at triviality.
inline FaithfulBase faithful_base(const FiniteGroupoid& g, const ObjectId& i) {
    PermutationGroup aut = aut_group(g, i);
    FaithfulBase fb{i, {}};
    std::vector<Table> stab = aut.elements;
    auto trivial = [](const std::vector<Table>& s) { return s.size() <= 1; };
    for (const auto& x : g.carrier(i)) {
        if (trivial(stab)) break;
        std::vector<Table> next;
        for (const auto& t : stab)
            if (t.at(x) == x) next.push_back(t);
        if (next.size() < stab.size()) {
            fb.tuple.push_back(x);
            stab = std::move(next);
        }
    }
    return fb;
}

// Seed for closure_from_generators: a table with declared endpoints.
struct SeedMorphism {
    std::string name;  // used only in error messages
    ObjectId src;
    ObjectId dst;
    Table table;
};

// Smallest groupoid over the given carriers containing all seeds and all
// identities. Morphisms are renamed deterministically: sorted by their
// (src, dst, table) encoding and numbered in that order.
inline FiniteGroupoid closure_from_generators(
    const std::vector<ObjectId>& objects,
    const std::map<ObjectId, std::vector<Label>>& carriers,
    const std::vector<SeedMorphism>& seeds) {
    FiniteGroupoid g;
    g.object_ids = objects;
    g.carriers = carriers;
    g.morphisms.clear();
    g.normalize();
    for (const auto& i : g.object_ids)
        if (g.carriers.at(i).empty())
            throw StructuralError("object '" + i + "' has an empty carrier");

    // triple key -> (src, dst, table)
    std::map<std::string, Morphism> pool;
    auto insert = [&](const ObjectId& s, const ObjectId& d, Table t) {
        Morphism m{"", s, d, std::move(t)};
        return pool.emplace(m.triple_key(), std::move(m)).second;
    };
    for (const auto& i : g.object_ids)
        insert(i, i, identity_table(g.carriers.at(i)));
    for (const auto& s : seeds) {
        if (!g.has_object(s.src) || !g.has_object(s.dst))
            throw StructuralError("seed '" + s.name + "' has unresolved endpoints");
        if (!table_is_bijection(s.table, g.carriers.at(s.src), g.carriers.at(s.dst)))
            throw StructuralError("seed '" + s.name + "' is not a bijection");
        insert(s.src, s.dst, s.table);
    }

    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Morphism> snapshot;
        snapshot.reserve(pool.size());
        for (const auto& [_, m] : pool) snapshot.push_back(m);
        for (const auto& m : snapshot)
            grew |= insert(m.dst, m.src, invert_table(m.table));
        for (const auto& m1 : snapshot)
            for (const auto& m2 : snapshot)
                if (m1.dst == m2.src)
                    grew |= insert(m1.src, m2.dst, compose_tables(m2.table, m1.table));
    }

    std::size_t n = 0;
    for (auto& [_, m] : pool) {
        m.id = "g" + std::to_string(n++);
        g.morphisms.push_back(std::move(m));
    }
    g.normalize();
    return g;
}

// Full subgroupoid on a subset of the objects.
inline FiniteGroupoid full_subgroupoid(const FiniteGroupoid& g,
                                       const std::vector<ObjectId>& objects) {
    FiniteGroupoid out;
    out.object_ids = objects;
    std::sort(out.object_ids.begin(), out.object_ids.end());
    for (const auto& i : out.object_ids) out.carriers[i] = g.carrier(i);
    for (const auto& m : g.morphisms)
        if (out.has_object(m.src) && out.has_object(m.dst))
            out.morphisms.push_back(m);
    out.normalize();
    return out;
}

}  // namespace gpd
