// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.

#include <cstdlib>
#include <iostream>

#include "fixtures.hpp"
#include "gpd/io.hpp"
#include "oracles.hpp"

using namespace gpd;

namespace {

int failures = 0;

void criterion(int n, const std::string& name, bool pass) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << n << ": " << name
              << "\n";
    if (!pass) ++failures;
}

void guarded(int n, const std::string& name, const std::function<bool()>& body) {
    bool pass = false;
    try {
        pass = body();
    } catch (const std::exception& e) {
        std::cout << "  exception: " << e.what() << "\n";
    }
    criterion(n, name, pass);
}

std::size_t star_count_law(const FiniteGroupoid& g, const ObjectId& i) {
    std::size_t n = 3 * hom_set(g, i, i).size();
    for (const auto& j : g.object_ids)
        if (j != i) n += hom_set(g, i, j).size() + hom_set(g, j, i).size();
    return n;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(GPD_GPDKIT_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
    const std::filesystem::path fixdir = GPD_FIXTURE_DIR;
    const auto corpus = fixtures::corpus();

    guarded(1, "groupoid axioms validator agrees with the brute-force oracle", [&] {
        std::mt19937 rng(1);
        for (int k = 0; k < 200; ++k) {
            FiniteGroupoid g = oracles::random_connected_groupoid(rng);
            if (k % 2) g = oracles::mutate(g, rng);
            if (validate_groupoid(g).ok() != oracles::groupoid_axioms_hold(g))
                return false;
        }
        return true;
    });

    guarded(2, "one-object extension count law", [&] {
        for (const auto& [name, g] : corpus)
            for (const auto& i : g.object_ids)
                if (extend_groupoid(g, i).star_morphisms.size() != star_count_law(g, i))
                    return false;
        std::mt19937 rng(2);
        for (int k = 0; k < 100; ++k) {
            FiniteGroupoid g = oracles::random_connected_groupoid(rng);
            const ObjectId i = g.object_ids.front();
            if (extend_groupoid(g, i).star_morphisms.size() != star_count_law(g, i))
                return false;
        }
        return true;
    });

    guarded(3, "restriction round trips, absolute and relative", [&] {
        for (const auto& [name, g] : corpus)
            for (const auto& i : g.object_ids)
                if (!(restrict_cover(extend_groupoid(g, i)) == g)) return false;
        for (const auto& total : {fixtures::fam2_total(), fixtures::fam3_total()}) {
            GroupoidFamily fam = family_from_components(total);
            if (!(relative_restrict(relative_extend(fam, default_section(fam))) == fam))
                return false;
        }
        return true;
    });

    guarded(4, "base-choice transports are isomorphisms with identity composites", [&] {
        for (const auto& [name, g] : corpus)
            for (const auto& i : g.object_ids)
                for (const auto& j : g.object_ids) {
                    CoverMorphism t = base_choice_transport(g, i, j);
                    if (!validate_cover_morphism(t).ok() || !is_cover_isomorphism(t))
                        return false;
                    CoverMorphism back = base_choice_transport(g, j, i);
                    if (!cover_morphisms_equal(
                            compose_cover_morphisms(t, back),
                            identity_cover_morphism(extend_groupoid(g, i))))
                        return false;
                }
        return true;
    });

    guarded(5, "tagging carries Aut(star) onto Aut(base object)", [&] {
        for (const auto& [name, g] : corpus)
            for (const auto& i : g.object_ids)
                if (star_aut_tables(extend_groupoid(g, i)) != hom_tables(g, i, i))
                    return false;
        return true;
    });

    guarded(6, "morphism calculus laws and iso=bij against the enumeration oracle", [&] {
        std::map<std::pair<std::string, std::string>, std::vector<GroupoidMorphism>> homs;
        for (const auto& a : corpus)
            for (const auto& b : corpus)
                homs[{a.name, b.name}] = enumerate_morphisms(a.groupoid, b.groupoid);
        for (const auto& a : corpus)
            for (const auto& b : corpus) {
                for (const auto& h : homs.at({a.name, b.name})) {
                    if (!(compose_morphism(identity_morphism(a.groupoid), h) == h))
                        return false;
                    if (!(compose_morphism(h, identity_morphism(b.groupoid)) == h))
                        return false;
                    // iso=bij, both directions.
                    bool any_bij = !h.functions.empty() &&
                                   table_is_bijection(
                                       h.functions.front().table,
                                       h.source.carrier(h.functions.front().src_obj),
                                       h.target.carrier(h.functions.front().dst_obj));
                    auto iso = is_isomorphism(h);
                    if (iso.is_isomorphism != any_bij) return false;
                    if (iso.is_isomorphism &&
                        !(compose_morphism(h, *iso.inverse) ==
                          identity_morphism(a.groupoid)))
                        return false;
                }
                for (const auto& c : corpus)
                    for (const auto& h1 : homs.at({a.name, b.name}))
                        for (const auto& h2 : homs.at({b.name, c.name}))
                            for (const auto& d : corpus)
                                for (const auto& h3 : homs.at({c.name, d.name}))
                                    if (!(compose_morphism(compose_morphism(h1, h2), h3) ==
                                          compose_morphism(h1, compose_morphism(h2, h3))))
                                        return false;
            }
        return true;
    });

    guarded(7, "equivalence decision with validated witnesses", [&] {
        auto res = decide_equivalence(fixtures::z2(), fixtures::tors2());
        if (!res.equivalent || !res.witness) return false;
        if (!validate_groupoid(res.witness->common).ok()) return false;
        if (!validate_embedding(res.witness->embed_left).ok()) return false;
        if (!validate_embedding(res.witness->embed_right).ok()) return false;
        if (decide_equivalence(fixtures::z2(), fixtures::rigid2()).equivalent)
            return false;
        std::mt19937 rng(7);
        int done = 0;
        while (done < 50) {
            FiniteGroupoid g = oracles::random_connected_groupoid(rng);
            if (g.object_ids.size() < 2) continue;
            auto g1 = full_subgroupoid(g, {g.object_ids.front()});
            auto g2 = full_subgroupoid(g, {g.object_ids.back()});
            if (!decide_equivalence(g1, g2).equivalent) return false;
            ++done;
        }
        return true;
    });

    guarded(8, "category equivalence laws with frozen Hom counts", [&] {
        auto rep = check_equivalence_laws(corpus);
        if (!rep.complete || !rep.all_pass()) {
            for (const auto& c : rep.checks)
                if (!c.pass)
                    std::cout << "  " << c.law << ": " << c.counterexample << "\n";
            return false;
        }
        if (enumerate_morphisms(fixtures::z2(), fixtures::rigid2()).size() != 2)
            return false;
        if (!enumerate_morphisms(fixtures::rigid2(), fixtures::z2()).empty())
            return false;
        auto vz = extend_groupoid(fixtures::z2(), "i");
        auto vr = extend_groupoid(fixtures::rigid2(), "i");
        return enumerate_cover_morphisms(vz, vr).size() == 2 &&
               enumerate_cover_morphisms(vr, vz).empty();
    });

    guarded(9, "counit formula collapses to the identity morphism", [&] {
        for (const auto& [name, g] : corpus)
            for (const auto& i : g.object_ids)
                if (!(counit_epsilon(g, i) == identity_morphism(g))) return false;
        return true;
    });

    guarded(10, "star determinacy holds on extensions, fails on the adversarial fixture",
            [&] {
                for (const auto& [name, g] : corpus)
                    for (const auto& i : g.object_ids)
                        if (!star_determinacy_check(extend_groupoid(g, i)).ok())
                            return false;
                return !star_determinacy_check(fixtures::det_adversarial()).ok();
            });

    guarded(11, "independence of fibres, crossing fixture rejected", [&] {
        for (const auto& total : {fixtures::fam2_total(), fixtures::fam3_total()}) {
            GroupoidFamily fam = family_from_components(total);
            FamilyCover fc = relative_extend(fam, default_section(fam));
            if (!independence_check(fc).ok()) return false;
        }
        return !independence_check(fixtures::crossing_adversarial()).ok();
    });

    guarded(12, "canonical serialization round trips and CLI exit codes", [&] {
        for (const auto& name :
             {"triv1.json", "z2.json", "rigid2.json", "tors2.json", "z2_cover.json",
              "tors2_cover.json", "fam2.json", "fam3.json", "fam2_cover.json",
              "fam3_cover.json", "z2_id_morphism.json", "z2_seed.json",
              "z2_cover_id.json", "fam2_id_morphism.json", "det_adversarial.json",
              "crossing_adversarial.json", "broken.json"}) {
            std::ifstream in(fixdir / name, std::ios::binary);
            if (!in) return false;
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            if (io::serialize_document(io::parse_document(text, fixdir)) != text)
                return false;
        }
        auto fx = [&](const char* n) { return (fixdir / n).string(); };
        return run_cli("validate " + fx("z2.json")) == 0 &&
               run_cli("validate " + fx("broken.json")) == 1 &&
               run_cli("validate " + fx("malformed.json")) == 2 &&
               run_cli("enumerate " + fx("z2.json") + " " + fx("z2.json") +
                       " --bound 1") == 3;
    });

    std::cout << (failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED") << " ("
              << (12 - failures) << "/12)\n";
    return failures ? 1 : 0;
}
