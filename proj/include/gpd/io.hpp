#pragma once

#include <filesystem>
#include <fstream>
#include <variant>

#include <json.hpp>

#include "gpd/family.hpp"

namespace gpd::io {

using nlohmann::json;  // plain json keeps object keys sorted: canonical order

inline constexpr int kFormatVersion = 1;

// Syntax-level failure, reported with line and column.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invariant failure found while validating a parsed document.
struct SemanticError : std::runtime_error {
    ValidationReport report;
    explicit SemanticError(ValidationReport r)
        : std::runtime_error(r.ok() ? "semantic error"
                                    : r.violations.front().invariant + ": " +
                                          r.violations.front().detail),
          report(std::move(r)) {}
};

inline void check_identifier(const std::string& s, const std::string& role) {
    if (s.empty()) throw StructuralError(role + " is empty");
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            throw StructuralError(role + " '" + s + "' has characters outside [A-Za-z0-9_]");
}

namespace detail {

inline const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end())
        throw StructuralError(std::string("missing field '") + name + "'");
    return *it;
}

inline std::string str(const json& j, const char* name, const std::string& role) {
    const json& v = field(j, name);
    if (!v.is_string())
        throw StructuralError(std::string("field '") + name + "' must be a string");
    check_identifier(v.get<std::string>(), role);
    return v.get<std::string>();
}

inline Table table_from_json(const json& j, const std::string& where) {
    if (!j.is_object())
        throw StructuralError("map of " + where + " must be an object");
    Table t;
    for (const auto& [k, v] : j.items()) {
        check_identifier(k, "element in " + where);
        if (!v.is_string())
            throw StructuralError("map of " + where + " has a non-string value");
        check_identifier(v.get<std::string>(), "element in " + where);
        t[k] = v.get<std::string>();
    }
    return t;
}

inline json table_to_json(const Table& t) {
    json j = json::object();
    for (const auto& [x, y] : t) j[x] = y;
    return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Groupoid / family payloads (families share the groupoid schema plus "base"
// and per-object "fiber").

inline void groupoid_core_from_json(const json& j, FiniteGroupoid& g,
                                    std::map<ObjectId, std::string>* fibres) {
    const json& objs = detail::field(j, "objects");
    if (!objs.is_array()) throw StructuralError("'objects' must be an array");
    for (const auto& o : objs) {
        std::string id = detail::str(o, "id", "object identifier");
        g.object_ids.push_back(id);
        const json& els = detail::field(o, "elements");
        if (!els.is_array())
            throw StructuralError("'elements' of '" + id + "' must be an array");
        for (const auto& e : els) {
            if (!e.is_string())
                throw StructuralError("element of '" + id + "' is not a string");
            check_identifier(e.get<std::string>(), "element of '" + id + "'");
            g.carriers[id].push_back(e.get<std::string>());
        }
        g.carriers.try_emplace(id);  // empty carrier stays representable
        if (fibres) (*fibres)[id] = detail::str(o, "fiber", "fiber of '" + id + "'");
    }
    const json& ms = detail::field(j, "morphisms");
    if (!ms.is_array()) throw StructuralError("'morphisms' must be an array");
    for (const auto& m : ms) {
        Morphism mo;
        mo.id = detail::str(m, "id", "morphism identifier");
        mo.src = detail::str(m, "src", "src of '" + mo.id + "'");
        mo.dst = detail::str(m, "dst", "dst of '" + mo.id + "'");
        mo.table = detail::table_from_json(detail::field(m, "map"), "'" + mo.id + "'");
        g.morphisms.push_back(std::move(mo));
    }
    g.normalize();
    check_structure(g);
}

inline void groupoid_core_to_json(const FiniteGroupoid& g, json& j,
                                  const std::map<ObjectId, std::string>* fibres) {
    j["objects"] = json::array();
    for (const auto& i : g.object_ids) {
        json o;
        o["id"] = i;
        o["elements"] = g.carrier(i);
        if (fibres) o["fiber"] = fibres->at(i);
        j["objects"].push_back(std::move(o));
    }
    auto ms = g.morphisms;
    std::sort(ms.begin(), ms.end(),
              [](const Morphism& a, const Morphism& b) { return a.id < b.id; });
    j["morphisms"] = json::array();
    for (const auto& m : ms) {
        json o;
        o["id"] = m.id;
        o["src"] = m.src;
        o["dst"] = m.dst;
        o["map"] = detail::table_to_json(m.table);
        j["morphisms"].push_back(std::move(o));
    }
}

inline FiniteGroupoid groupoid_from_json(const json& j) {
    FiniteGroupoid g;
    groupoid_core_from_json(j, g, nullptr);
    return g;
}

inline GroupoidFamily family_from_json(const json& j) {
    GroupoidFamily fam;
    groupoid_core_from_json(j, fam.total, &fam.obj_base);
    const json& base = detail::field(j, "base");
    if (!base.is_array()) throw StructuralError("'base' must be an array");
    for (const auto& a : base) {
        if (!a.is_string()) throw StructuralError("base identifier is not a string");
        check_identifier(a.get<std::string>(), "base identifier");
        fam.base.push_back(a.get<std::string>());
    }
    std::sort(fam.base.begin(), fam.base.end());
    fam.base.erase(std::unique(fam.base.begin(), fam.base.end()), fam.base.end());
    return fam;
}

inline ExtendedCover cover_from_json(const json& j) {
    FiniteGroupoid base = groupoid_from_json(j);
    const json& star = detail::field(j, "star");
    return extend_groupoid(base, detail::str(star, "base_object", "base object"));
}

inline FamilyCover family_cover_from_json(const json& j) {
    GroupoidFamily fam = family_from_json(j);
    const json& star = detail::field(j, "star");
    const json& sec = detail::field(star, "section");
    if (!sec.is_object()) throw StructuralError("'section' must be an object");
    std::map<std::string, ObjectId> section;
    for (const auto& [a, v] : sec.items()) {
        check_identifier(a, "base identifier");
        if (!v.is_string()) throw StructuralError("section value is not a string");
        check_identifier(v.get<std::string>(), "section value");
        section[a] = v.get<std::string>();
    }
    return relative_extend(fam, section);
}

inline StarStructure raw_structure_from_json(const json& j) {
    StarStructure s;
    groupoid_core_from_json(j, s.base, nullptr);
    const json& stars = detail::field(j, "stars");
    if (!stars.is_array()) throw StructuralError("'stars' must be an array");
    for (const auto& st : stars) {
        std::string id = detail::str(st, "id", "star identifier");
        const json& els = detail::field(st, "elements");
        if (!els.is_array())
            throw StructuralError("'elements' of star '" + id + "' must be an array");
        std::vector<Label> carrier;
        for (const auto& e : els) {
            if (!e.is_string())
                throw StructuralError("star element is not a string");
            check_identifier(e.get<std::string>(), "star element");
            carrier.push_back(e.get<std::string>());
        }
        std::sort(carrier.begin(), carrier.end());
        s.stars.push_back({id, std::move(carrier)});
    }
    std::sort(s.stars.begin(), s.stars.end());
    const json& recs = detail::field(j, "records");
    if (!recs.is_array()) throw StructuralError("'records' must be an array");
    for (const auto& rj : recs) {
        StarRecord r;
        r.name = detail::str(rj, "name", "record name");
        auto kind = star_kind_from_string(
            detail::field(rj, "kind").get<std::string>());
        if (!kind)
            throw StructuralError("record '" + r.name + "' has an unknown kind");
        r.kind = *kind;
        r.src = detail::str(rj, "src", "src of record '" + r.name + "'");
        r.dst = detail::str(rj, "dst", "dst of record '" + r.name + "'");
        r.table = detail::table_from_json(detail::field(rj, "map"),
                                          "record '" + r.name + "'");
        s.records.push_back(std::move(r));
    }
    return s;
}

inline json family_core_to_json(const GroupoidFamily& fam) {
    json j;
    groupoid_core_to_json(fam.total, j, &fam.obj_base);
    j["base"] = fam.base;
    return j;
}

// ---------------------------------------------------------------------------
// Documents. Morphism-like files may reference source/target inline or by
// path; the canonical serialized form is always inline.

using Payload =
    std::variant<FiniteGroupoid, GroupoidMorphism, GroupoidEmbedding, ExtendedCover,
                 CoverMorphism, GroupoidFamily, FamilyCover, FamilyGroupoidMorphism,
                 FamilyCoverMorphism, StarStructure>;

struct Document {
    std::string kind;
    Payload payload;
};

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("syntax error at line " + std::to_string(line) +
                         ", column " + std::to_string(col) + ": " + e.what());
    }
}

inline Document parse_document(const std::string& text,
                               const std::filesystem::path& dir = ".");

inline Document load_document(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StructuralError("cannot read '" + path.string() + "'");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_document(text, path.parent_path());
}

namespace detail {

// A source/target reference: a path string or an inline document object.
template <class T, class FromJson>
T resolve_ref(const json& j, const std::filesystem::path& dir, const char* name,
              const std::string& want_kind, FromJson from) {
    const json& v = field(j, name);
    if (v.is_string()) {
        std::filesystem::path p = dir / v.get<std::string>();
        std::ifstream in(p, std::ios::binary);
        if (!in) throw StructuralError("cannot read referenced file '" + p.string() + "'");
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        json inner = parse_json_text(text);
        if (str(inner, "kind", "kind") != want_kind)
            throw StructuralError("referenced file '" + p.string() + "' is not a " +
                                  want_kind);
        return from(inner);
    }
    if (!v.is_object())
        throw StructuralError(std::string("field '") + name +
                              "' must be a path or an inline object");
    return from(v);
}

}  // namespace detail

inline GroupoidMorphism morphism_from_json(const json& j,
                                           const std::filesystem::path& dir) {
    GroupoidMorphism h;
    h.source = detail::resolve_ref<FiniteGroupoid>(j, dir, "source", "groupoid",
                                                   groupoid_from_json);
    h.target = detail::resolve_ref<FiniteGroupoid>(j, dir, "target", "groupoid",
                                                   groupoid_from_json);
    const json& fns = detail::field(j, "functions");
    if (!fns.is_array()) throw StructuralError("'functions' must be an array");
    for (const auto& f : fns) {
        FnEntry e;
        e.src_obj = detail::str(f, "src", "function src");
        e.dst_obj = detail::str(f, "dst", "function dst");
        e.table = detail::table_from_json(detail::field(f, "map"),
                                          "function (" + e.src_obj + "," + e.dst_obj + ")");
        h.functions.push_back(std::move(e));
    }
    canonicalize(h.functions);
    check_morphism_structure(h);
    return h;
}

inline GroupoidEmbedding embedding_from_json(const json& j,
                                             const std::filesystem::path& dir) {
    GroupoidEmbedding e;
    e.source = detail::resolve_ref<FiniteGroupoid>(j, dir, "source", "groupoid",
                                                   groupoid_from_json);
    e.target = detail::resolve_ref<FiniteGroupoid>(j, dir, "target", "groupoid",
                                                   groupoid_from_json);
    const json& iota = detail::field(j, "iota");
    if (!iota.is_object()) throw StructuralError("'iota' must be an object");
    for (const auto& [k, v] : iota.items()) {
        check_identifier(k, "iota key");
        if (!v.is_string()) throw StructuralError("iota value is not a string");
        e.iota[k] = v.get<std::string>();
    }
    const json& tabs = detail::field(j, "tables");
    if (!tabs.is_object()) throw StructuralError("'tables' must be an object");
    for (const auto& [k, v] : tabs.items())
        e.per_object[k] = detail::table_from_json(v, "table at '" + k + "'");
    return e;
}

inline CoverMorphism cover_morphism_from_json(const json& j,
                                              const std::filesystem::path& dir) {
    CoverMorphism c;
    c.source = detail::resolve_ref<ExtendedCover>(j, dir, "source", "cover",
                                                  cover_from_json);
    c.target = detail::resolve_ref<ExtendedCover>(j, dir, "target", "cover",
                                                  cover_from_json);
    c.table = detail::table_from_json(detail::field(j, "map"), "cover morphism");
    check_cover_morphism_structure(c);
    return c;
}

inline Payload family_morphism_from_json(const json& j,
                                         const std::filesystem::path& dir) {
    std::string side = detail::str(j, "side", "side");
    if (side == "groupoid") {
        FamilyGroupoidMorphism fm;
        fm.source = detail::resolve_ref<GroupoidFamily>(j, dir, "source", "family",
                                                        family_from_json);
        fm.target = detail::resolve_ref<GroupoidFamily>(j, dir, "target", "family",
                                                        family_from_json);
        const json& comps = detail::field(j, "components");
        if (!comps.is_object()) throw StructuralError("'components' must be an object");
        for (const auto& [a, fns] : comps.items()) {
            check_identifier(a, "base identifier");
            GroupoidMorphism h{fibre(fm.source, a), fibre(fm.target, a), {}};
            if (!fns.is_array())
                throw StructuralError("component over '" + a + "' must be an array");
            for (const auto& f : fns) {
                FnEntry e;
                e.src_obj = detail::str(f, "src", "function src");
                e.dst_obj = detail::str(f, "dst", "function dst");
                e.table = detail::table_from_json(detail::field(f, "map"),
                                                  "component over '" + a + "'");
                h.functions.push_back(std::move(e));
            }
            canonicalize(h.functions);
            check_morphism_structure(h);
            fm.components.emplace(a, std::move(h));
        }
        return fm;
    }
    if (side == "cover") {
        FamilyCoverMorphism fm;
        fm.source = detail::resolve_ref<FamilyCover>(j, dir, "source", "family-cover",
                                                     family_cover_from_json);
        fm.target = detail::resolve_ref<FamilyCover>(j, dir, "target", "family-cover",
                                                     family_cover_from_json);
        const json& entries = detail::field(j, "map");
        if (!entries.is_array()) throw StructuralError("'map' must be an array");
        for (const auto& ej : entries) {
            std::string fb = detail::str(ej, "fiber", "fiber");
            std::string el = detail::str(ej, "element", "element");
            std::string tf = detail::str(ej, "to_fiber", "to_fiber");
            std::string te = detail::str(ej, "to_element", "to_element");
            fm.table[{fb, el}] = {tf, te};
        }
        return fm;
    }
    throw StructuralError("'side' must be 'groupoid' or 'cover'");
}

inline Document parse_document(const std::string& text,
                               const std::filesystem::path& dir) {
    json j = parse_json_text(text);
    if (!j.is_object()) throw StructuralError("document is not a JSON object");
    const json& fv = detail::field(j, "format_version");
    if (!fv.is_number_integer() || fv.get<int>() != kFormatVersion)
        throw StructuralError("unsupported format_version");
    std::string kind = detail::field(j, "kind").get<std::string>();
    Document d;
    d.kind = kind;
    if (kind == "groupoid")
        d.payload = groupoid_from_json(j);
    else if (kind == "morphism")
        d.payload = morphism_from_json(j, dir);
    else if (kind == "embedding")
        d.payload = embedding_from_json(j, dir);
    else if (kind == "cover")
        d.payload = cover_from_json(j);
    else if (kind == "cover-morphism")
        d.payload = cover_morphism_from_json(j, dir);
    else if (kind == "family")
        d.payload = family_from_json(j);
    else if (kind == "family-cover")
        d.payload = family_cover_from_json(j);
    else if (kind == "family-morphism")
        d.payload = family_morphism_from_json(j, dir);
    else if (kind == "raw-structure")
        d.payload = raw_structure_from_json(j);
    else
        throw StructuralError("unknown document kind '" + kind + "'");
    return d;
}

// ---------------------------------------------------------------------------
// Canonical serialization: sorted keys (plain nlohmann::json), sorted
// identifier lists, inline references, two-space indent, trailing newline.

inline json functions_to_json(const FunctionSet& fs) {
    json arr = json::array();
    for (const auto& f : fs) {
        json o;
        o["src"] = f.src_obj;
        o["dst"] = f.dst_obj;
        o["map"] = detail::table_to_json(f.table);
        arr.push_back(std::move(o));
    }
    return arr;
}

inline json document_to_json(const Document& d) {
    json j;
    j["kind"] = d.kind;
    j["format_version"] = kFormatVersion;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FiniteGroupoid>) {
                groupoid_core_to_json(p, j, nullptr);
            } else if constexpr (std::is_same_v<T, GroupoidMorphism>) {
                json src, dst;
                src["kind"] = "groupoid";
                src["format_version"] = kFormatVersion;
                groupoid_core_to_json(p.source, src, nullptr);
                dst["kind"] = "groupoid";
                dst["format_version"] = kFormatVersion;
                groupoid_core_to_json(p.target, dst, nullptr);
                j["source"] = std::move(src);
                j["target"] = std::move(dst);
                auto fs = p.functions;
                canonicalize(fs);
                j["functions"] = functions_to_json(fs);
            } else if constexpr (std::is_same_v<T, GroupoidEmbedding>) {
                json src, dst;
                src["kind"] = "groupoid";
                src["format_version"] = kFormatVersion;
                groupoid_core_to_json(p.source, src, nullptr);
                dst["kind"] = "groupoid";
                dst["format_version"] = kFormatVersion;
                groupoid_core_to_json(p.target, dst, nullptr);
                j["source"] = std::move(src);
                j["target"] = std::move(dst);
                j["iota"] = json::object();
                for (const auto& [a, b] : p.iota) j["iota"][a] = b;
                j["tables"] = json::object();
                for (const auto& [a, t] : p.per_object)
                    j["tables"][a] = detail::table_to_json(t);
            } else if constexpr (std::is_same_v<T, ExtendedCover>) {
                groupoid_core_to_json(p.base, j, nullptr);
                j["star"] = {{"base_object", p.base_object}};
            } else if constexpr (std::is_same_v<T, CoverMorphism>) {
                json src = document_to_json({"cover", p.source});
                json dst = document_to_json({"cover", p.target});
                j["source"] = std::move(src);
                j["target"] = std::move(dst);
                j["map"] = detail::table_to_json(p.table);
            } else if constexpr (std::is_same_v<T, GroupoidFamily>) {
                json core = family_core_to_json(p);
                j.update(core);
            } else if constexpr (std::is_same_v<T, FamilyCover>) {
                json core = family_core_to_json(p.family);
                j.update(core);
                json sec = json::object();
                for (const auto& [a, o] : p.section) sec[a] = o;
                j["star"] = {{"section", std::move(sec)}};
            } else if constexpr (std::is_same_v<T, FamilyGroupoidMorphism>) {
                j["side"] = "groupoid";
                j["source"] = document_to_json({"family", p.source});
                j["target"] = document_to_json({"family", p.target});
                j["components"] = json::object();
                for (const auto& [a, h] : p.components) {
                    auto fs = h.functions;
                    canonicalize(fs);
                    j["components"][a] = functions_to_json(fs);
                }
            } else if constexpr (std::is_same_v<T, FamilyCoverMorphism>) {
                j["side"] = "cover";
                j["source"] = document_to_json({"family-cover", p.source});
                j["target"] = document_to_json({"family-cover", p.target});
                j["map"] = json::array();
                for (const auto& [from, to] : p.table)
                    j["map"].push_back({{"fiber", from.first},
                                        {"element", from.second},
                                        {"to_fiber", to.first},
                                        {"to_element", to.second}});
            } else if constexpr (std::is_same_v<T, StarStructure>) {
                groupoid_core_to_json(p.base, j, nullptr);
                j["stars"] = json::array();
                for (const auto& [sid, carrier] : p.stars)
                    j["stars"].push_back({{"id", sid}, {"elements", carrier}});
                auto recs = p.records;
                std::sort(recs.begin(), recs.end(),
                          [](const StarRecord& a, const StarRecord& b) {
                              return a.name < b.name;
                          });
                j["records"] = json::array();
                for (const auto& r : recs)
                    j["records"].push_back({{"name", r.name},
                                            {"kind", to_string(r.kind)},
                                            {"src", r.src},
                                            {"dst", r.dst},
                                            {"map", detail::table_to_json(r.table)}});
            }
        },
        d.payload);
    return j;
}

inline std::string serialize_document(const Document& d) {
    return document_to_json(d).dump(2) + "\n";
}

// Module validator dispatch; raw structures have no intrinsic invariants.
inline ValidationReport validate_document(const Document& d) {
    return std::visit(
        [](const auto& p) -> ValidationReport {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FiniteGroupoid>) return validate_groupoid(p);
            else if constexpr (std::is_same_v<T, GroupoidMorphism>) return validate_morphism(p);
            else if constexpr (std::is_same_v<T, GroupoidEmbedding>) return validate_embedding(p);
            else if constexpr (std::is_same_v<T, ExtendedCover>) return validate_cover(p);
            else if constexpr (std::is_same_v<T, CoverMorphism>) return validate_cover_morphism(p);
            else if constexpr (std::is_same_v<T, GroupoidFamily>) return validate_family(p);
            else if constexpr (std::is_same_v<T, FamilyCover>) return validate_family(p.family);
            else if constexpr (std::is_same_v<T, FamilyGroupoidMorphism>) return validate_family_morphism(p);
            else if constexpr (std::is_same_v<T, FamilyCoverMorphism>) return validate_family_morphism(p);
            else return ValidationReport{};
        },
        d.payload);
}

template <class T>
const T& expect(const Document& d, const std::string& what) {
    const T* p = std::get_if<T>(&d.payload);
    if (!p) throw StructuralError("expected a " + what + " document, got '" + d.kind + "'");
    return *p;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StructuralError("cannot write '" + path.string() + "'");
    out << text;
}

}  // namespace gpd::io
