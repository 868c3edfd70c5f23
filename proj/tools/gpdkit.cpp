// gpdkit: command-line front end for the groupoid/cover toolkit.
//
// Exit codes: 0 success or checked-true, 1 checked-false or validation
// failure, 2 usage/IO/structural error, 3 oracle bound exceeded.

#include <iostream>

#include <CLI11.hpp>

#include "gpd/io.hpp"

namespace {

using gpd::io::json;

struct Options {
    std::string format = "text";
    std::size_t bound = 0;  // 0: module defaults
};

// Deterministic plain-text rendering of a JSON report.
void render_text(const json& j, std::ostream& os, int depth = 0) {
    std::string pad(2 * depth, ' ');
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || v.is_array()) {
                os << pad << k << ":";
                if (v.empty()) {
                    os << " (none)\n";
                } else {
                    os << "\n";
                    render_text(v, os, depth + 1);
                }
            } else {
                os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                   << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                os << pad << "-\n";
                render_text(v, os, depth + 1);
            } else {
                os << pad << "- "
                   << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    }
}

void emit(const Options& opt, json rep) {
    if (opt.format == "json") {
        rep["format_version"] = gpd::io::kFormatVersion;
        std::cout << rep.dump(2) << "\n";
    } else {
        render_text(rep, std::cout);
    }
}

void emit_document(const gpd::io::Document& d) {
    std::cout << gpd::io::serialize_document(d);
}

json violations_json(const gpd::ValidationReport& r) {
    json arr = json::array();
    for (const auto& v : r.violations)
        arr.push_back({{"invariant", v.invariant}, {"detail", v.detail}});
    return arr;
}

int report_check(const Options& opt, const gpd::ValidationReport& r,
                 const std::string& subject) {
    emit(opt, {{"check", subject},
               {"ok", r.ok()},
               {"violations", violations_json(r)}});
    return r.ok() ? 0 : 1;
}

gpd::io::Document load(const std::string& path) {
    return gpd::io::load_document(path);
}

gpd::FiniteGroupoid load_groupoid(const std::string& path) {
    return gpd::io::expect<gpd::FiniteGroupoid>(load(path), "groupoid");
}

gpd::ExtendedCover load_cover(const std::string& path) {
    return gpd::io::expect<gpd::ExtendedCover>(load(path), "cover");
}

gpd::EnumerationBounds bounds_of(const Options& opt) {
    gpd::EnumerationBounds b;
    if (opt.bound) b.max_total_carrier = opt.bound;
    return b;
}

std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gpdkit: finite concrete groupoids, covers, and their functors"};
    app.require_subcommand(1);
    app.fallthrough();  // --format/--bound may follow the subcommand
    Options opt;
    app.add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--bound", opt.bound, "override oracle enumeration bound");

    // One positional-file holder per subcommand.
    std::map<std::string, std::vector<std::string>> files;
    std::string obj_arg, obj_arg2;
    std::vector<std::string> section_args;

    auto add = [&](const std::string& name, const std::string& desc, int nfiles) {
        CLI::App* sub = app.add_subcommand(name, desc);
        if (nfiles > 0) {
            // Fixed-arity positionals: scalar bindings keep CLI11 from
            // letting one vector positional swallow the rest.
            files[name].resize(static_cast<std::size_t>(nfiles));
            for (int k = 0; k < nfiles; ++k)
                sub->add_option("file" + std::to_string(k + 1), files[name][k],
                                "input file")
                    ->required();
        } else {
            sub->add_option("file", files[name], "input files")
                ->required()
                ->expected(1, -1);
        }
        return sub;
    };

    add("validate", "validate a document against its invariants", 1);
    add("components", "connected components of a groupoid", 1);
    add("aut", "automorphism group at an object", 1)
        ->add_option("object", obj_arg, "object identifier")->required();
    add("base", "greedy faithful base at an object", 1)
        ->add_option("object", obj_arg, "object identifier")->required();
    add("extend", "one-object extension of a connected groupoid", 1)
        ->add_option("object", obj_arg, "base object")->required();
    add("restrict", "base groupoid of a cover", 1);
    add("morphism-check", "validate a groupoid morphism", 1);
    add("saturate", "close a seed function set to a morphism", 1);
    add("compose", "compose two groupoid morphisms", 2);
    add("iso", "test a groupoid morphism for invertibility", 1);
    add("equiv", "decide equivalence of two connected groupoids", 2);
    add("cover-morphism-check", "validate a cover morphism", 1);
    add("cover-compose", "compose two cover morphisms", 2);
    add("cover-iso", "test a cover morphism for invertibility", 1);
    add("determinacy", "star determinacy check on a cover or raw structure", 1);
    auto* fc = add("functor-c", "cover morphism induced by a groupoid morphism", 1);
    fc->add_option("src-base", obj_arg, "source base object")->required();
    fc->add_option("dst-base", obj_arg2, "target base object")->required();
    add("functor-g", "groupoid morphism swept by a cover morphism", 1);
    add("eta", "unit isomorphism toward another base object", 1)
        ->add_option("object", obj_arg, "target base object")->required();
    add("epsilon", "counit formula at an object", 1)
        ->add_option("object", obj_arg, "base object")->required();
    add("laws", "functor and unit/counit laws over a groupoid corpus", -1);
    add("family-split", "split a groupoid into a family over its components", 1);
    add("family-extend", "fibrewise one-object extension of a family", 1)
        ->add_option("--section", section_args, "base=object overrides");
    add("family-restrict", "family underlying a family cover", 1);
    add("independence", "independence of fibres on a family cover or raw structure", 1);
    add("census", "fibres with nontrivial star automorphism groups", 1);
    add("family-morphism-check", "validate a family morphism", 1);
    add("enumerate", "enumerate all morphisms between two connected groupoids", 2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    const auto& fs = files[cmd];

    try {
        if (cmd == "validate") {
            auto doc = load(fs[0]);
            return report_check(opt, gpd::io::validate_document(doc), doc.kind);
        }
        if (cmd == "components") {
            auto g = load_groupoid(fs[0]);
            json comps = json::array();
            for (const auto& cls : gpd::connected_components(g)) comps.push_back(cls);
            emit(opt, {{"components", comps},
                       {"connected", gpd::is_connected(g)}});
            return 0;
        }
        if (cmd == "aut") {
            auto g = load_groupoid(fs[0]);
            auto pg = gpd::aut_group(g, obj_arg);
            json els = json::array();
            for (const auto& t : pg.elements)
                els.push_back(gpd::io::detail::table_to_json(t));
            emit(opt, {{"object", obj_arg}, {"order", pg.order()}, {"elements", els}});
            return 0;
        }
        if (cmd == "base") {
            auto g = load_groupoid(fs[0]);
            auto fb = gpd::faithful_base(g, obj_arg);
            emit(opt, {{"object", fb.object}, {"tuple", fb.tuple}});
            return 0;
        }
        if (cmd == "extend") {
            emit_document({"cover", gpd::extend_groupoid(load_groupoid(fs[0]), obj_arg)});
            return 0;
        }
        if (cmd == "restrict") {
            emit_document({"groupoid", gpd::restrict_cover(load_cover(fs[0]))});
            return 0;
        }
        if (cmd == "morphism-check") {
            auto h = gpd::io::expect<gpd::GroupoidMorphism>(load(fs[0]), "morphism");
            return report_check(opt, gpd::validate_morphism(h), "morphism");
        }
        if (cmd == "saturate") {
            auto h = gpd::io::expect<gpd::GroupoidMorphism>(load(fs[0]), "morphism");
            auto sat = gpd::saturate_morphism(h.source, h.target, h.functions);
            if (!sat.ok()) {
                emit(opt, {{"check", "saturation"},
                           {"ok", false},
                           {"violations", violations_json(sat.report)}});
                return 1;
            }
            emit_document({"morphism", *sat.morphism});
            return 0;
        }
        if (cmd == "compose") {
            auto h1 = gpd::io::expect<gpd::GroupoidMorphism>(load(fs[0]), "morphism");
            auto h2 = gpd::io::expect<gpd::GroupoidMorphism>(load(fs[1]), "morphism");
            emit_document({"morphism", gpd::compose_morphism(h1, h2)});
            return 0;
        }
        if (cmd == "iso") {
            auto h = gpd::io::expect<gpd::GroupoidMorphism>(load(fs[0]), "morphism");
            auto res = gpd::is_isomorphism(h);
            if (!res.is_isomorphism) {
                emit(opt, {{"isomorphism", false}});
                return 1;
            }
            emit_document({"morphism", *res.inverse});
            return 0;
        }
        if (cmd == "equiv") {
            auto g1 = load_groupoid(fs[0]);
            auto g2 = load_groupoid(fs[1]);
            auto res = gpd::decide_equivalence(g1, g2);
            if (!res.equivalent) {
                emit(opt, {{"equivalent", false},
                           {"reason", "no conjugating bijection"}});
                return 1;
            }
            const auto& w = *res.witness;
            auto embed_json = [](const gpd::GroupoidEmbedding& e) {
                return gpd::io::document_to_json({"embedding", e});
            };
            emit(opt, {{"equivalent", true},
                       {"witness",
                        {{"common", gpd::io::document_to_json({"groupoid", w.common})},
                         {"embed_left", embed_json(w.embed_left)},
                         {"embed_right", embed_json(w.embed_right)}}}});
            return 0;
        }
        if (cmd == "cover-morphism-check") {
            auto c = gpd::io::expect<gpd::CoverMorphism>(load(fs[0]), "cover-morphism");
            return report_check(opt, gpd::validate_cover_morphism(c), "cover-morphism");
        }
        if (cmd == "cover-compose") {
            auto c1 = gpd::io::expect<gpd::CoverMorphism>(load(fs[0]), "cover-morphism");
            auto c2 = gpd::io::expect<gpd::CoverMorphism>(load(fs[1]), "cover-morphism");
            emit_document({"cover-morphism", gpd::compose_cover_morphisms(c1, c2)});
            return 0;
        }
        if (cmd == "cover-iso") {
            auto c = gpd::io::expect<gpd::CoverMorphism>(load(fs[0]), "cover-morphism");
            bool iso = gpd::is_cover_isomorphism(c);
            emit(opt, {{"isomorphism", iso}});
            return iso ? 0 : 1;
        }
        if (cmd == "determinacy") {
            auto doc = load(fs[0]);
            gpd::StarStructure s =
                doc.kind == "cover"
                    ? gpd::to_star_structure(
                          gpd::io::expect<gpd::ExtendedCover>(doc, "cover"))
                    : gpd::io::expect<gpd::StarStructure>(doc, "raw-structure");
            return report_check(opt, gpd::star_determinacy_check(s), "determinacy");
        }
        if (cmd == "functor-c") {
            auto h = gpd::io::expect<gpd::GroupoidMorphism>(load(fs[0]), "morphism");
            auto c = gpd::functor_C_map(h, gpd::extend_groupoid(h.source, obj_arg),
                                        gpd::extend_groupoid(h.target, obj_arg2));
            emit_document({"cover-morphism", c});
            return 0;
        }
        if (cmd == "functor-g") {
            auto c = gpd::io::expect<gpd::CoverMorphism>(load(fs[0]), "cover-morphism");
            emit_document({"morphism", gpd::functor_G_map(c)});
            return 0;
        }
        if (cmd == "eta") {
            emit_document({"cover-morphism", gpd::unit_eta(load_cover(fs[0]), obj_arg)});
            return 0;
        }
        if (cmd == "epsilon") {
            emit_document(
                {"morphism", gpd::counit_epsilon(load_groupoid(fs[0]), obj_arg)});
            return 0;
        }
        if (cmd == "laws") {
            std::vector<gpd::NamedGroupoid> corpus;
            for (const auto& f : fs) corpus.push_back({stem_of(f), load_groupoid(f)});
            auto rep = gpd::check_equivalence_laws(corpus, bounds_of(opt));
            json checks = json::array();
            for (const auto& c : rep.checks) {
                json e = {{"law", c.law}, {"pass", c.pass}};
                if (!c.pass) e["counterexample"] = c.counterexample;
                checks.push_back(std::move(e));
            }
            emit(opt, {{"complete", rep.complete},
                       {"all_pass", rep.all_pass()},
                       {"checks", checks}});
            if (!rep.complete) return 3;
            return rep.all_pass() ? 0 : 1;
        }
        if (cmd == "family-split") {
            emit_document({"family", gpd::family_from_components(load_groupoid(fs[0]))});
            return 0;
        }
        if (cmd == "family-extend") {
            auto fam = gpd::io::expect<gpd::GroupoidFamily>(load(fs[0]), "family");
            auto section = gpd::default_section(fam);
            for (const auto& s : section_args) {
                auto eq = s.find('=');
                if (eq == std::string::npos)
                    throw gpd::StructuralError("--section expects base=object");
                section[s.substr(0, eq)] = s.substr(eq + 1);
            }
            emit_document({"family-cover", gpd::relative_extend(fam, section)});
            return 0;
        }
        if (cmd == "family-restrict") {
            auto fcov = gpd::io::expect<gpd::FamilyCover>(load(fs[0]), "family-cover");
            emit_document({"family", gpd::relative_restrict(fcov)});
            return 0;
        }
        if (cmd == "independence") {
            auto doc = load(fs[0]);
            gpd::StarStructure s =
                doc.kind == "family-cover"
                    ? gpd::to_star_structure(
                          gpd::io::expect<gpd::FamilyCover>(doc, "family-cover"))
                    : gpd::io::expect<gpd::StarStructure>(doc, "raw-structure");
            auto rep = gpd::independence_check(s, opt.bound ? opt.bound : 8);
            return report_check(opt, rep, "independence");
        }
        if (cmd == "census") {
            auto fcov = gpd::io::expect<gpd::FamilyCover>(load(fs[0]), "family-cover");
            auto rep = gpd::internality_census(fcov);
            json orders = json::object();
            for (const auto& [a, n] : rep.aut_orders) orders[a] = n;
            emit(opt, {{"nontrivial", rep.nontrivial}, {"aut_orders", orders}});
            return 0;
        }
        if (cmd == "family-morphism-check") {
            auto doc = load(fs[0]);
            if (auto* fm = std::get_if<gpd::FamilyGroupoidMorphism>(&doc.payload))
                return report_check(opt, gpd::validate_family_morphism(*fm),
                                    "family-morphism");
            auto& fm = gpd::io::expect<gpd::FamilyCoverMorphism>(doc, "family-morphism");
            return report_check(opt, gpd::validate_family_morphism(fm),
                                "family-morphism");
        }
        if (cmd == "enumerate") {
            auto g1 = load_groupoid(fs[0]);
            auto g2 = load_groupoid(fs[1]);
            auto ms = gpd::enumerate_morphisms(g1, g2, bounds_of(opt));
            json arr = json::array();
            for (const auto& h : ms)
                arr.push_back(gpd::io::functions_to_json(h.functions));
            emit(opt, {{"count", ms.size()}, {"morphisms", arr}});
            return 0;
        }
        std::cerr << "unknown command '" << cmd << "'\n";
        return 2;
    } catch (const gpd::BoundExceeded& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const gpd::io::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const gpd::StructuralError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
