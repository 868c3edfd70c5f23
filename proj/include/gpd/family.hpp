#pragma once

#include "gpd/equivalence.hpp"

namespace gpd {

// A possibly disconnected groupoid fibred over a finite base: the fibres are
// exactly the connected components.
struct GroupoidFamily {
    FiniteGroupoid total;
    std::vector<std::string> base;            // sorted
    std::map<ObjectId, std::string> obj_base;  // object -> base identifier

    bool operator==(const GroupoidFamily&) const = default;

    std::vector<ObjectId> objects_over(const std::string& a) const {
        std::vector<ObjectId> out;
        for (const auto& [obj, b] : obj_base)
            if (b == a) out.push_back(obj);
        return out;
    }
};

inline ValidationReport validate_family(const GroupoidFamily& fam) {
    ValidationReport r;
    check_structure(fam.total);
    auto tr = validate_groupoid(fam.total);
    for (auto& v : tr.violations) r.add(v.invariant, v.detail);
    for (const auto& i : fam.total.object_ids)
        if (!fam.obj_base.count(i))
            r.add("obj-base-total", "object '" + i + "' has no base assignment");
    std::set<std::string> hit;
    for (const auto& [obj, a] : fam.obj_base) {
        if (!std::binary_search(fam.base.begin(), fam.base.end(), a))
            r.add("base-resolves", "object '" + obj + "' maps to unknown base '" + a + "'");
        hit.insert(a);
    }
    for (const auto& a : fam.base)
        if (!hit.count(a)) r.add("surjective", "no object over base '" + a + "'");
    if (!r.ok()) return r;
    for (const auto& i : fam.total.object_ids)
        for (const auto& j : fam.total.object_ids) {
            bool same = fam.obj_base.at(i) == fam.obj_base.at(j);
            bool hom = !hom_set(fam.total, i, j).empty();
            if (same && !hom)
                r.add("fibres-connected",
                      "objects '" + i + "' and '" + j + "' share a fibre but Hom is empty");
            if (!same && hom)
                r.add("fibres-separate",
                      "objects '" + i + "' and '" + j + "' are in distinct fibres but Hom is nonempty");
        }
    return r;
}

// Base identifiers are the least object identifier of each component.
inline GroupoidFamily family_from_components(const FiniteGroupoid& g) {
    GroupoidFamily fam;
    fam.total = g;
    for (const auto& cls : connected_components(g)) {
        std::string a = cls.front();  // components come sorted
        fam.base.push_back(a);
        for (const auto& obj : cls) fam.obj_base[obj] = a;
    }
    std::sort(fam.base.begin(), fam.base.end());
    return fam;
}

inline FiniteGroupoid fibre(const GroupoidFamily& fam, const std::string& a) {
    if (!std::binary_search(fam.base.begin(), fam.base.end(), a))
        throw StructuralError("unknown base identifier '" + a + "'");
    return full_subgroupoid(fam.total, fam.objects_over(a));
}

// Fibrewise one-object extension along a section of the base.
struct FamilyCover {
    GroupoidFamily family;
    std::map<std::string, ObjectId> section;
    std::map<std::string, ExtendedCover> fibre_covers;

    bool operator==(const FamilyCover&) const = default;
};

inline std::map<std::string, ObjectId> default_section(const GroupoidFamily& fam) {
    std::map<std::string, ObjectId> s;
    for (const auto& a : fam.base) s[a] = fam.objects_over(a).front();
    return s;
}

inline FamilyCover relative_extend(const GroupoidFamily& fam,
                                   const std::map<std::string, ObjectId>& section) {
    FamilyCover fc;
    fc.family = fam;
    fc.section = section;
    for (const auto& a : fam.base) {
        auto it = section.find(a);
        if (it == section.end())
            throw StructuralError("section undefined at base '" + a + "'");
        auto bt = fam.obj_base.find(it->second);
        if (bt == fam.obj_base.end() || bt->second != a)
            throw StructuralError("section at '" + a + "' lands in the wrong fibre");
        fc.fibre_covers.emplace(a, extend_groupoid(fibre(fam, a), it->second));
    }
    return fc;
}

inline GroupoidFamily relative_restrict(const FamilyCover& fc) { return fc.family; }

inline StarStructure to_star_structure(const FamilyCover& fc) {
    StarStructure s;
    s.base = fc.family.total;
    for (const auto& [a, v] : fc.fibre_covers) {
        std::string star_id = "star_" + a;
        s.stars.push_back({star_id, v.star_carrier});
        for (const auto& r : v.star_morphisms) {
            std::string src = r.kind == StarKind::base_to_star ? r.base_side : star_id;
            std::string dst = r.kind == StarKind::star_to_base ? r.base_side : star_id;
            s.records.push_back({a + "/" + r.record_id(), r.kind, src, dst, r.table});
        }
    }
    std::sort(s.stars.begin(), s.stars.end());
    return s;
}

namespace detail {

// Star points of a structure, addressed (star id, label).
using StarPoint = std::pair<std::string, Label>;

inline std::vector<StarPoint> star_points(const StarStructure& s) {
    std::vector<StarPoint> pts;
    for (const auto& [sid, carrier] : s.stars)
        for (const auto& x : carrier) pts.push_back({sid, x});
    return pts;
}

// Does the permutation sigma of the star points preserve every record?
// Base points are fixed throughout.
inline bool preserves_records(const StarStructure& s,
                              const std::map<StarPoint, StarPoint>& sigma) {
    auto record_matches = [&](StarKind kind, const std::string& src,
                              const std::string& dst, const Table& table) {
        return std::any_of(s.records.begin(), s.records.end(), [&](const StarRecord& r) {
            return r.kind == kind && r.src == src && r.dst == dst && r.table == table;
        });
    };
    for (const auto& r : s.records) {
        switch (r.kind) {
            case StarKind::base_to_star: {
                // new table: x -> sigma(dst, t(x)); must land in one star.
                std::optional<std::string> star;
                Table t;
                bool ok = true;
                for (const auto& [x, y] : r.table) {
                    StarPoint img = sigma.at({r.dst, y});
                    if (star && *star != img.first) ok = false;
                    star = img.first;
                    t[x] = img.second;
                }
                if (!ok || !star || !record_matches(r.kind, r.src, *star, t))
                    return false;
                break;
            }
            case StarKind::star_to_base: {
                // domain sigma(src carrier); must be one star.
                std::optional<std::string> star;
                Table t;
                bool ok = true;
                for (const auto& [x, y] : r.table) {
                    StarPoint img = sigma.at({r.src, x});
                    if (star && *star != img.first) ok = false;
                    star = img.first;
                    t[img.second] = y;
                }
                if (!ok || !star || !record_matches(r.kind, *star, r.dst, t))
                    return false;
                break;
            }
            case StarKind::star_to_star: {
                std::optional<std::string> sstar, dstar;
                Table t;
                bool ok = true;
                for (const auto& [x, y] : r.table) {
                    StarPoint sx = sigma.at({r.src, x});
                    StarPoint dy = sigma.at({r.dst, y});
                    if (sstar && *sstar != sx.first) ok = false;
                    if (dstar && *dstar != dy.first) ok = false;
                    sstar = sx.first;
                    dstar = dy.first;
                    t[sx.second] = dy.second;
                }
                if (!ok || !sstar || !dstar ||
                    !record_matches(r.kind, *sstar, *dstar, t))
                    return false;
                break;
            }
        }
    }
    return true;
}

inline std::string encode_sigma(const std::map<StarPoint, StarPoint>& sigma) {
    std::string out;
    for (const auto& [a, b] : sigma)
        out += a.first + ":" + a.second + ">" + b.first + ":" + b.second + ";";
    return out;
}

// Automorphisms of one star: its star_to_star tables.
inline std::vector<Table> star_auts(const StarStructure& s, const std::string& sid) {
    std::vector<Table> out;
    for (const auto& r : s.records)
        if (r.kind == StarKind::star_to_star && r.src == sid && r.dst == sid)
            out.push_back(r.table);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

// Independence of fibres: (1) every tuple of per-star automorphisms
// assembles to a structure automorphism fixing the base pointwise, and
// (2) the assembly is bijective onto all such automorphisms, established by
// exhaustive search over permutations of the star points.
inline ValidationReport independence_check(const StarStructure& s,
                                           std::size_t max_star_points = 8) {
    ValidationReport r;
    auto pts = detail::star_points(s);
    if (pts.size() > max_star_points)
        throw BoundExceeded("independence check refused: " +
                            std::to_string(pts.size()) + " star points exceed bound " +
                            std::to_string(max_star_points));

    // Exhaustive automorphism search.
    std::set<std::string> autos;
    std::vector<detail::StarPoint> image = pts;  // sorted; walk permutations
    std::sort(image.begin(), image.end());
    std::vector<detail::StarPoint> domain = image;
    do {
        std::map<detail::StarPoint, detail::StarPoint> sigma;
        for (std::size_t k = 0; k < domain.size(); ++k) sigma[domain[k]] = image[k];
        if (detail::preserves_records(s, sigma))
            autos.insert(detail::encode_sigma(sigma));
    } while (std::next_permutation(image.begin(), image.end()));

    // Assemble every tuple of per-star automorphisms.
    std::vector<std::string> star_ids;
    std::vector<std::vector<Table>> auts;
    for (const auto& [sid, _] : s.stars) {
        star_ids.push_back(sid);
        auts.push_back(detail::star_auts(s, sid));
        if (auts.back().empty())
            auts.back().push_back(identity_table(s.star_carrier(sid)));
    }
    std::set<std::string> assembled;
    std::vector<std::size_t> choice(star_ids.size(), 0);
    for (;;) {
        std::map<detail::StarPoint, detail::StarPoint> sigma;
        for (std::size_t k = 0; k < star_ids.size(); ++k)
            for (const auto& [x, y] : auts[k][choice[k]])
                sigma[{star_ids[k], x}] = {star_ids[k], y};
        bool total = sigma.size() == pts.size();
        if (total && detail::preserves_records(s, sigma)) {
            assembled.insert(detail::encode_sigma(sigma));
        } else {
            r.add("assembly",
                  "a tuple of fibre star automorphisms does not assemble to a "
                  "structure automorphism");
            break;
        }
        std::size_t k = 0;
        while (k < choice.size() && ++choice[k] == auts[k].size()) choice[k++] = 0;
        if (k == choice.size()) break;
    }
    if (!r.ok()) return r;

    if (assembled != autos)
        r.add("bijective-assembly",
              "structure has " + std::to_string(autos.size()) +
                  " automorphisms but the fibre product assembles " +
                  std::to_string(assembled.size()));
    return r;
}

inline ValidationReport independence_check(const FamilyCover& fc,
                                           std::size_t max_star_points = 8) {
    return independence_check(to_star_structure(fc), max_star_points);
}

struct CensusReport {
    std::vector<std::string> nontrivial;  // base ids with |Aut(star)| > 1
    std::map<std::string, std::size_t> aut_orders;
};

inline CensusReport internality_census(const FamilyCover& fc) {
    CensusReport rep;
    for (const auto& [a, v] : fc.fibre_covers) {
        std::size_t order = star_aut_tables(v).size();
        rep.aut_orders[a] = order;
        if (order > 1) rep.nontrivial.push_back(a);
    }
    std::sort(rep.nontrivial.begin(), rep.nontrivial.end());
    return rep;
}

// Family morphisms: per-fibre data over a shared base. Groupoid side carries
// one groupoid morphism per fibre; cover side one total star table that must
// commute with the projections to the base.
struct FamilyGroupoidMorphism {
    GroupoidFamily source;
    GroupoidFamily target;
    std::map<std::string, GroupoidMorphism> components;
};

struct FamilyCoverMorphism {
    FamilyCover source;
    FamilyCover target;
    // (fibre, star label) -> (fibre, star label)
    std::map<std::pair<std::string, Label>, std::pair<std::string, Label>> table;
};

inline ValidationReport validate_family_morphism(const FamilyGroupoidMorphism& fm) {
    ValidationReport r;
    if (fm.source.base != fm.target.base) {
        r.add("base-match", "source and target families have different bases");
        return r;
    }
    for (const auto& a : fm.source.base) {
        auto it = fm.components.find(a);
        if (it == fm.components.end()) {
            r.add("fibre-component", "no component over base '" + a + "'");
            continue;
        }
        if (!(it->second.source == fibre(fm.source, a)) ||
            !(it->second.target == fibre(fm.target, a))) {
            r.add("fibre-endpoints",
                  "component over '" + a + "' does not match the fibres");
            continue;
        }
        auto cr = validate_morphism(it->second);
        for (auto& v : cr.violations)
            r.add(v.invariant, "fibre '" + a + "': " + v.detail);
    }
    return r;
}

inline ValidationReport validate_family_morphism(const FamilyCoverMorphism& fm) {
    ValidationReport r;
    if (fm.source.family.base != fm.target.family.base) {
        r.add("base-match", "source and target family covers have different bases");
        return r;
    }
    for (const auto& a : fm.source.family.base) {
        const auto& sv = fm.source.fibre_covers.at(a);
        const auto& tv = fm.target.fibre_covers.at(a);
        Table fibre_table;
        for (const auto& x : sv.star_carrier) {
            auto it = fm.table.find({a, x});
            if (it == fm.table.end())
                throw StructuralError("table not total at fibre '" + a +
                                      "', element '" + x + "'");
            if (it->second.first != a) {
                r.add("fibre-crossing",
                      "element '" + x + "' of fibre '" + a + "' is sent into fibre '" +
                          it->second.first + "'");
                continue;
            }
            fibre_table[x] = it->second.second;
        }
        if (!r.ok()) return r;
        CoverMorphism c{sv, tv, fibre_table};
        check_cover_morphism_structure(c);
        auto cr = validate_cover_morphism(c);
        for (auto& v : cr.violations)
            r.add(v.invariant, "fibre '" + a + "': " + v.detail);
    }
    return r;
}

// Relative functors: apply C / G per fibre.
inline FamilyCoverMorphism family_functor_C(const FamilyGroupoidMorphism& fm,
                                            const FamilyCover& fc1,
                                            const FamilyCover& fc2) {
    FamilyCoverMorphism out{fc1, fc2, {}};
    for (const auto& a : fm.source.base) {
        CoverMorphism c = functor_C_map(fm.components.at(a), fc1.fibre_covers.at(a),
                                        fc2.fibre_covers.at(a));
        for (const auto& [x, y] : c.table) out.table[{a, x}] = {a, y};
    }
    return out;
}

inline FamilyGroupoidMorphism family_functor_G(const FamilyCoverMorphism& fm) {
    FamilyGroupoidMorphism out{fm.source.family, fm.target.family, {}};
    for (const auto& a : fm.source.family.base) {
        const auto& sv = fm.source.fibre_covers.at(a);
        const auto& tv = fm.target.fibre_covers.at(a);
        Table t;
        for (const auto& x : sv.star_carrier) t[x] = fm.table.at({a, x}).second;
        out.components.emplace(a, functor_G_map(CoverMorphism{sv, tv, t}));
    }
    return out;
}

}  // namespace gpd
