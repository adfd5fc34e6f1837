#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

std::string binary_path() {
    const char* env = std::getenv("KLEINLENS_BIN");
    REQUIRE_MESSAGE(env != nullptr, "KLEINLENS_BIN must point at the CLI binary");
    return env;
}

RunResult run(const std::string& args) {
    const std::string cmd = binary_path() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        output.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("classify reports the embeddability data") {
    const RunResult r = run("classify 8 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "space = L(8,3)"));
    CHECK(contains(r.output, "klein_bottle_embeds = yes"));
    CHECK(contains(r.output, "n = 2"));
    CHECK(contains(r.output, "sign = -"));
    CHECK(contains(r.output, "projective_plane_embeds = no"));
}

TEST_CASE("classify L(2,1) finds the projective plane only") {
    const RunResult r = run("classify 2 1");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "projective_plane_embeds = yes"));
    CHECK(contains(r.output, "klein_bottle_embeds = no"));
}

TEST_CASE("classify rejects non-coprime input with exit 2") {
    const RunResult r = run("classify 6 4");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "not a lens space parameterization"));
}

TEST_CASE("reports are byte-identical across runs") {
    const RunResult a = run("classify 12 5");
    const RunResult b = run("classify 12 5");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    const RunResult ja = run("--format json filling 1 3");
    const RunResult jb = run("--format json filling 1 3");
    CHECK(ja.output == jb.output);
}

TEST_CASE("filling reports homology and group structure") {
    SUBCASE("(1,1): Z_4, cyclic") {
        const RunResult r = run("filling 1 1");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.output, "H1 = Z_4"));
        CHECK(contains(r.output, "is_cyclic = yes"));
    }
    SUBCASE("(2,2): Z_4 + Z_2 with non-lens notice") {
        const RunResult r = run("filling 2 2");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.output, "H1 = Z_2 + Z_4"));
        CHECK(contains(r.output, "not a lens-space filling"));
        CHECK(contains(r.output, "attaching class not primitive"));
    }
    SUBCASE("(1,3): order 12, nonabelian") {
        const RunResult r = run("filling 1 3");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.output, "group_order = 12"));
        CHECK(contains(r.output, "is_abelian = no"));
    }
}

TEST_CASE("embed subcommands verify the constructions") {
    SUBCASE("handles, n = 5") {
        const RunResult r = run("embed 5 + handles");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.output, "boundary_class = -11*mu+20*lambda@HeegaardSide2"));
        CHECK(contains(r.output, "identified_space = L(20,11)"));
    }
    SUBCASE("two_moebius, n = 2") {
        const RunResult r = run("embed 2 + two_moebius");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.output, "image_class = -1*mu+2*lambda@HeegaardSide2"));
    }
    SUBCASE("lens_model writes mesh files") {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / "kleinlens_cli_test";
        fs::remove_all(dir);
        const RunResult r =
            run("embed 1 - lens_model 16 " + dir.string());
        CHECK(r.exit_code == 0);
        CHECK(contains(r.output, "space = L(4,1)"));
        CHECK(contains(r.output, "[pass] seam_identities"));
        CHECK(contains(r.output, "euler_characteristic = 0"));
        CHECK(fs::exists(dir / "mesh.obj"));
        CHECK(fs::exists(dir / "mesh.meta.txt"));
        fs::remove_all(dir);
    }
    SUBCASE("seifert descriptors") {
        const RunResult r = run("embed 3 + seifert");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.output, "RP2(3)"));
        CHECK(contains(r.output, "S2(2,2)"));
        CHECK(contains(r.output, "identified_space = L(12,5)"));
    }
}

TEST_CASE("verify sweeps") {
    SUBCASE("minimal bounds pass") {
        const RunResult r = run("verify 1 4");
        CHECK(r.exit_code == 0);
        CHECK(contains(r.output, "status = ok"));
    }
    SUBCASE("injected fault is caught with exit 1") {
        const RunResult r = run("verify 2 10 --inject-fault");
        CHECK(r.exit_code == 1);
        CHECK(contains(r.output, "first counterexample"));
        CHECK(contains(r.output, "status = fail"));
    }
}
