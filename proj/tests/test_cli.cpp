#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "puretomo/io.hpp"

using namespace puretomo;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::string cmd = PURETOMO_CLI_PATH;
    for (const auto& a : args) cmd += " '" + a + "'";
    cmd += " 2>/dev/null";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const fs::path& work_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / "puretomo-cli-tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path_of(const char* name) { return (work_dir() / name).string(); }

void write_state(const char* name, const PureState& s) {
    write_json_file(path_of(name), to_json(s));
}

}  // namespace

TEST_CASE("cli help and parse errors") {
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"--help"}).out.find("construct") != std::string::npos);
    CHECK(run_cli({}).code == 2);                    // a subcommand is required
    CHECK(run_cli({"frobnicate"}).code == 2);        // unknown subcommand
    CHECK(run_cli({"construct"}).code == 2);         // missing family
    CHECK(run_cli({"bounds", "--wat", "3"}).code == 2);
}

TEST_CASE("cli construct") {
    SUBCASE("families to stdout") {
        const auto sic = run_cli({"construct", "sic-d2"});
        CHECK(sic.code == 0);
        const auto set = set_from_json(json::parse(sic.out));
        CHECK(set.size() == 4);
        CHECK(set.dim() == 2);

        const auto mubs = run_cli({"construct", "mubs-d2"});
        CHECK(mubs.code == 0);
        const json arr = json::parse(mubs.out);
        REQUIRE(arr.is_array());
        CHECK(arr.size() == 3);
        for (const auto& b : arr) CHECK(set_from_json(b).resolution_subset());
    }

    SUBCASE("eight-operator set to a file") {
        const auto r = run_cli({"construct", "eight-d3", "--out", path_of("eight.json")});
        CHECK(r.code == 0);
        CHECK(r.out.find("8 elements") != std::string::npos);
        const auto set = set_from_json(read_json_file(path_of("eight.json")));
        CHECK(set.size() == 8);
        REQUIRE(set.resolution_subset());
        CHECK(*set.resolution_subset() == std::vector<std::size_t>{0, 1, 2});
    }

    SUBCASE("mub family fans out to indexed files") {
        const auto r = run_cli({"construct", "mubs-prime", "--dim", "5", "--out", path_of("mub.json")});
        CHECK(r.code == 0);
        for (int i = 0; i < 6; ++i) {
            const auto b = set_from_json(
                read_json_file(path_of(("mub-" + std::to_string(i) + ".json").c_str())));
            CHECK(b.dim() == 5);
            CHECK(b.size() == 5);
        }
    }

    SUBCASE("theorem-2 collections") {
        const auto r = run_cli({"construct", "theorem2", "--mubs-dim", "3", "--index", "107"});
        CHECK(r.code == 0);
        CHECK(set_from_json(json::parse(r.out)).size() == 9);
        CHECK(run_cli({"construct", "theorem2", "--mubs-dim", "3", "--index", "108"}).code == 2);
        CHECK(run_cli({"construct", "theorem2"}).code == 2);
    }

    SUBCASE("input validation") {
        CHECK(run_cli({"construct", "weird-family"}).code == 2);
        CHECK(run_cli({"construct", "sic-d2", "--dim", "2"}).code == 2);
        CHECK(run_cli({"construct", "mubs-prime"}).code == 2);
        CHECK(run_cli({"construct", "mubs-prime", "--dim", "4"}).code == 2);   // not prime
        CHECK(run_cli({"construct", "mubs-prime", "--dim", "17"}).code == 2);  // too large
    }
}

TEST_CASE("cli convert") {
    run_cli({"construct", "eight-d3", "--out", path_of("eight.json")});
    const auto r =
        run_cli({"convert", path_of("eight.json"), "--out", path_of("eight-povm.json")});
    CHECK(r.code == 0);
    const auto povm = set_from_json(read_json_file(path_of("eight-povm.json")));
    CHECK(povm.size() == 8);
    CHECK((povm.sum() - CMatrix::identity(3)).frobenius_norm() < 1e-9);

    // Two parallel generators leave the Gram matrix singular.
    json degenerate = {{"dim", 2},
                       {"elements", json::array({json{{"generator", {{1.0, 0.0}, {0.0, 0.0}}}},
                                                 json{{"generator", {{2.0, 0.0}, {0.0, 0.0}}}}})}};
    write_json_file(path_of("degenerate.json"), degenerate);
    CHECK(run_cli({"convert", path_of("degenerate.json")}).code == 5);

    CHECK(run_cli({"convert", path_of("no-such-file.json")}).code == 9);
}

TEST_CASE("cli simulate") {
    write_state("zero3.json", PureState({cplx(1.0), cplx(0.0), cplx(0.0)}));
    run_cli({"construct", "eight-d3", "--out", path_of("eight.json")});
    run_cli({"construct", "counterexample-d2", "--out", path_of("cx.json")});

    SUBCASE("exact outcomes") {
        const auto r = run_cli({"simulate", path_of("zero3.json"), path_of("eight.json")});
        CHECK(r.code == 0);
        const auto v = outcomes_from_json(json::parse(r.out));
        REQUIRE(v.size() == 8);
        const double want[] = {1, 0, 0, 1, 1, 1, 1, 1};
        for (std::size_t k = 0; k < 8; ++k) CHECK(v[k] == doctest::Approx(want[k]).epsilon(1e-12));

        write_state("zero2.json", PureState({cplx(1.0), cplx(0.0)}));
        const auto c = run_cli({"simulate", path_of("zero2.json"), path_of("cx.json")});
        const auto vc = outcomes_from_json(json::parse(c.out));
        for (std::size_t k = 0; k < 4; ++k) CHECK(vc[k] == doctest::Approx(0.25).epsilon(1e-12));
    }

    SUBCASE("sampled frequencies need a true POVM") {
        write_state("zero2.json", PureState({cplx(1.0), cplx(0.0)}));
        const auto ok = run_cli({"simulate", path_of("zero2.json"), path_of("cx.json"),
                                 "--samples", "100000", "--seed", "7"});
        CHECK(ok.code == 0);
        const auto v = outcomes_from_json(json::parse(ok.out));
        double total = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) total += v[k];
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

        const auto bad = run_cli({"simulate", path_of("zero3.json"), path_of("eight.json"),
                                  "--samples", "1000"});
        CHECK(bad.code == 4);  // the eight-operator set does not sum to identity
    }

    SUBCASE("dimension mismatch") {
        write_state("zero2.json", PureState({cplx(1.0), cplx(0.0)}));
        CHECK(run_cli({"simulate", path_of("zero2.json"), path_of("eight.json")}).code == 3);
    }
}

TEST_CASE("cli reconstruct") {
    run_cli({"construct", "eight-d3", "--out", path_of("eight.json")});
    run_cli({"construct", "sic-d2", "--out", path_of("sic.json")});
    const PureState hidden({cplx(0.2), cplx(0.5, 0.5), cplx(0.0, -0.4)});
    write_state("hidden3.json", hidden);
    run_cli({"simulate", path_of("hidden3.json"), path_of("eight.json"), "--out",
             path_of("p.json")});

    const auto r = run_cli({"reconstruct", "--povm", path_of("eight.json"), "--outcomes",
                            path_of("p.json")});
    CHECK(r.code == 0);
    CHECK(fidelity(state_from_json(json::parse(r.out)), hidden) >= 1.0 - 1e-9);

    // Only the eight-operator set has this closed form.
    CHECK(run_cli({"reconstruct", "--povm", path_of("sic.json"), "--outcomes",
                   path_of("p.json")}).code == 2);

    auto p = outcomes_from_json(read_json_file(path_of("p.json")));
    p.values[3] += 0.3;
    write_json_file(path_of("p-corrupt.json"), to_json(p));
    CHECK(run_cli({"reconstruct", "--povm", path_of("eight.json"), "--outcomes",
                   path_of("p-corrupt.json")}).code == 6);

    p.values[3] -= 0.3;
    p.values[1] = -0.2;
    write_json_file(path_of("p-negative.json"), to_json(p));
    CHECK(run_cli({"reconstruct", "--povm", path_of("eight.json"), "--outcomes",
                   path_of("p-negative.json")}).code == 4);

    CHECK(run_cli({"reconstruct", "--povm", path_of("eight.json"), "--outcomes",
                   path_of("no-such.json")}).code == 9);
}

TEST_CASE("cli adaptive") {
    const double r2 = 1.0 / std::sqrt(2.0);
    std::vector<cplx> amp(4);
    amp[1] = r2;
    amp[3] = cplx(0.0, r2);
    write_state("pair4.json", PureState(amp));

    const auto r = run_cli({"adaptive", "--dim", "4", "--state", path_of("pair4.json"),
                            "--out", path_of("transcript.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("support 2 of 4, 6 operators") != std::string::npos);
    const json t = read_json_file(path_of("transcript.json"));
    CHECK(t["support"] == json::array({1, 3}));
    CHECK(fidelity(state_from_json(t["reconstructed"]), PureState(amp)) >= 1.0 - 1e-9);

    const auto sampled = run_cli({"adaptive", "--dim", "4", "--state", path_of("pair4.json"),
                                  "--sampled", "1000000", "--seed", "3"});
    CHECK(sampled.code == 0);

    CHECK(run_cli({"adaptive", "--dim", "5", "--state", path_of("pair4.json")}).code == 3);
    CHECK(run_cli({"adaptive", "--dim", "4", "--state", path_of("pair4.json"),
                   "--sampled", "0"}).code == 2);
}

TEST_CASE("cli verify") {
    run_cli({"construct", "counterexample-d2", "--out", path_of("cx.json")});
    run_cli({"construct", "sic-d2", "--out", path_of("sic.json")});

    const auto fail = run_cli({"verify", "--povm", path_of("cx.json"), "--pairs", "300",
                               "--seed", "1"});
    CHECK(fail.code == 7);
    const json jf = json::parse(fail.out);
    CHECK(jf["verdict"] == "FAIL");
    CHECK_FALSE(jf["counterexample"].is_null());

    const auto pass = run_cli({"verify", "--povm", path_of("sic.json"), "--pairs", "300",
                               "--seed", "1", "--out", path_of("report.json")});
    CHECK(pass.code == 0);
    CHECK(pass.out.find("verdict PASS") != std::string::npos);
    CHECK(json::parse(std::ifstream(path_of("report.json")))["verdict"] == "PASS");

    const auto mixed = run_cli({"verify", "--povm", path_of("sic.json"), "--pairs", "200",
                                "--seed", "2", "--mixed"});
    CHECK(mixed.code == 0);
}

TEST_CASE("cli bounds") {
    const auto r = run_cli({"bounds", "--dim", "9"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["m0"]["lower"] == 31);
    CHECK(j["m0"]["upper"] == 32);
    CHECK(j["c_alpha"].is_null());

    CHECK(run_cli({"bounds", "--dim", "1"}).code == 2);
    CHECK(run_cli({"bounds", "--dim", "2305843009213693953"}).code == 2);
}

TEST_CASE("cli pipeline") {
    const auto closed = run_cli({"pipeline", "--dim", "3", "--seed", "7"});
    CHECK(closed.code == 0);
    CHECK(closed.out.find("PASS") != std::string::npos);

    const auto adaptive = run_cli({"pipeline", "--dim", "6", "--adaptive", "--seed", "3"});
    CHECK(adaptive.code == 0);
    CHECK(adaptive.out.find("PASS") != std::string::npos);

    const auto sampled = run_cli({"pipeline", "--dim", "4", "--adaptive", "--sampled",
                                  "1000000", "--seed", "5"});
    CHECK(sampled.code == 0);
    CHECK(sampled.out.find("PASS") != std::string::npos);

    CHECK(run_cli({"pipeline", "--dim", "3", "--seed", "7", "--corrupt", "0.5"}).code == 6);
    CHECK(run_cli({"pipeline", "--dim", "2"}).code == 2);
    CHECK(run_cli({"pipeline", "--dim", "4", "--adaptive", "--corrupt", "0.1"}).code == 2);
}
