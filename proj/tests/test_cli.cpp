#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>

#include "gpd/io.hpp"

namespace {

const std::string kBin = GPD_GPDKIT_PATH;
const std::filesystem::path kFixtures = GPD_FIXTURE_DIR;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::filesystem::path tmp =
        std::filesystem::temp_directory_path() / "gpdkit_cli_out.txt";
    std::string cmd = kBin + " " + args + " > " + tmp.string() + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(tmp);
    std::string out((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
    return {code, out};
}

std::string fx(const std::string& name) { return (kFixtures / name).string(); }

}  // namespace

TEST_CASE("exit code contract") {
    CHECK(run("validate " + fx("z2.json")).exit_code == 0);           // success
    CHECK(run("validate " + fx("broken.json")).exit_code == 1);       // checked-false
    CHECK(run("validate " + fx("malformed.json")).exit_code == 2);    // syntax
    CHECK(run("validate " + fx("missing.json")).exit_code == 2);      // IO
    CHECK(run("frobnicate").exit_code == 2);                          // usage
    CHECK(run("enumerate " + fx("z2.json") + " " + fx("z2.json") + " --bound 1")
              .exit_code == 3);                                       // bound
}

TEST_CASE("checked-false commands report their reason") {
    auto r = run("equiv " + fx("z2.json") + " " + fx("rigid2.json"));
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("no conjugating bijection") != std::string::npos);
    CHECK(run("equiv " + fx("z2.json") + " " + fx("tors2.json")).exit_code == 0);
}

TEST_CASE("reports are deterministic") {
    std::string args = "laws " + fx("triv1.json") + " " + fx("z2.json") +
                       " --format json";
    auto a = run(args);
    auto b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("json reports are canonical and carry format_version") {
    auto r = run("validate " + fx("z2.json") + " --format json");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["format_version"] == 1);
    CHECK(j["violations"].is_array());
    CHECK(j["violations"].empty());
}

TEST_CASE("document-producing commands emit parseable canonical documents") {
    auto r = run("extend " + fx("tors2.json") + " j");
    REQUIRE(r.exit_code == 0);
    auto d = gpd::io::parse_document(r.out);
    CHECK(d.kind == "cover");
    CHECK(gpd::io::serialize_document(d) == r.out);

    auto s = run("saturate " + fx("z2_seed.json"));
    REQUIRE(s.exit_code == 0);
    CHECK(gpd::io::parse_document(s.out).kind == "morphism");
}

TEST_CASE("pipeline: split, extend, census") {
    auto fam = run("family-split " + fx("tors2.json"));
    REQUIRE(fam.exit_code == 0);
    std::filesystem::path tmp =
        std::filesystem::temp_directory_path() / "gpdkit_cli_fam.json";
    gpd::io::write_file(tmp, fam.out);
    auto cov = run("family-extend " + tmp.string());
    REQUIRE(cov.exit_code == 0);
    std::filesystem::path tmp2 =
        std::filesystem::temp_directory_path() / "gpdkit_cli_famcov.json";
    gpd::io::write_file(tmp2, cov.out);
    auto census = run("census " + tmp2.string());
    CHECK(census.exit_code == 0);
    CHECK(census.out.find("i") != std::string::npos);
}

TEST_CASE("determinacy and independence verdicts through the CLI") {
    CHECK(run("determinacy " + fx("z2_cover.json")).exit_code == 0);
    CHECK(run("determinacy " + fx("det_adversarial.json")).exit_code == 1);
    CHECK(run("independence " + fx("fam3_cover.json")).exit_code == 0);
    CHECK(run("independence " + fx("crossing_adversarial.json")).exit_code == 1);
}
