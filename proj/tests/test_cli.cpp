#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rqcert/cli.hpp"

using namespace rqcert;
namespace fs = std::filesystem;

namespace {

struct Output {
    int code;
    std::string out;
    std::string err;
};

Output run_cfg(const RunConfig& cfg) {
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "rqcert_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("dims parsing") {
    CHECK(parse_dims("2..20") == std::pair<std::size_t, std::size_t>{2, 20});
    CHECK(parse_dims("5") == std::pair<std::size_t, std::size_t>{5, 5});
    CHECK_THROWS_AS(parse_dims("1..4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_dims("9..4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_dims("a..b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_dims("2..."), std::invalid_argument);
}

TEST_CASE("bounds on the counterexample matrix") {
    const auto m = scratch("diag3.mtx");
    const auto y = scratch("y.mtx");
    write_file(m, "%%MatrixMarket matrix coordinate real symmetric\n3 3 3\n1 1 1\n2 2 0\n3 3 -1\n");
    write_file(y, "%%MatrixMarket matrix array real general\n3 1\n1\n1\n1\n");
    RunConfig cfg;
    cfg.command = Command::Bounds;
    cfg.matrix_path = m;
    cfg.vector_path = y;
    cfg.format = "json";
    const auto o = run_cfg(cfg);
    CHECK(o.code == kExitOk);
    const auto j = nlohmann::ordered_json::parse(o.out);
    CHECK(j["tool_version"] == "1.0.0");
    CHECK(j["command"] == "bounds");
    bool found = false;
    for (const auto& r : j["reports"]) {
        if (r["bound_name"] != "krylov_weinstein") continue;
        found = true;
        CHECK(r["lhs"] == 0.0);
        CHECK(std::abs(r["rhs"].get<double>() - 0.81649658092772603) <= 1e-15);
        CHECK(r["holds"] == true);
    }
    CHECK(found);
    // Hypothesis failures are skip records.
    for (const auto& r : j["reports"]) {
        if (r["bound_name"] == "temple") CHECK(r["skipped"] == true);
    }

    SUBCASE("reference vector enables identities") {
        const auto x = scratch("x.txt");
        write_file(x, "0\n1\n0\n");
        cfg.ref_vector_path = x;
        const auto o2 = run_cfg(cfg);
        CHECK(o2.code == kExitOk);
        const auto j2 = nlohmann::ordered_json::parse(o2.out);
        CHECK(j2["identities"].size() == 4);
        CHECK(j2["identities"][0]["pass"] == true);
    }
}

TEST_CASE("input errors exit with 2") {
    RunConfig cfg;
    cfg.command = Command::Bounds;
    CHECK(run_cfg(cfg).code == kExitInputError);

    cfg.matrix_path = scratch("missing.mtx");
    cfg.vector_path = scratch("missing.mtx");
    auto o = run_cfg(cfg);
    CHECK(o.code == kExitInputError);
    CHECK_FALSE(o.err.empty());

    const auto bad = scratch("bad.mtx");
    write_file(bad, "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n");
    const auto y = scratch("y2.txt");
    write_file(y, "1\n1\n");
    cfg.matrix_path = bad;
    cfg.vector_path = y;
    CHECK(run_cfg(cfg).code == kExitInputError);

    const auto skew = scratch("skew.mtx");
    write_file(skew, "%%MatrixMarket matrix array real general\n2 2\n0\n1\n-1\n0\n");
    cfg.matrix_path = skew;
    o = run_cfg(cfg);
    CHECK(o.code == kExitInputError);
    CHECK(o.err.find("Hermitian") != std::string::npos);

    const auto short_v = scratch("short.txt");
    write_file(short_v, "1\n");
    const auto good = scratch("good.mtx");
    write_file(good, "%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n2\n");
    cfg.matrix_path = good;
    cfg.vector_path = short_v;
    CHECK(run_cfg(cfg).code == kExitInputError);

    RunConfig ex;
    ex.command = Command::Example;
    ex.example_name = "nope";
    CHECK(run_cfg(ex).code == kExitInputError);
    ex.example_name = "davis-kahan";
    ex.n = 2;
    CHECK(run_cfg(ex).code == kExitInputError);
}

TEST_CASE("examples") {
    RunConfig cfg;
    cfg.command = Command::Example;
    cfg.example_name = "davis-kahan";
    cfg.format = "json";
    const auto o = run_cfg(cfg);
    CHECK(o.code == kExitOk);
    const auto j = nlohmann::ordered_json::parse(o.out);
    const auto& s = j["experiment"]["scalars"];
    CHECK(std::abs(s["improved_lhs"].get<double>() - 0.25) <= 1e-12);
    CHECK(std::abs(s["improved_rhs"].get<double>() - 0.75) <= 1e-12);

    for (const char* name : {"sin-theta", "tightness"}) {
        cfg.example_name = name;
        CHECK(run_cfg(cfg).code == kExitOk);
    }
    cfg.example_name = "eigensolver";
    cfg.trials = 5;
    CHECK(run_cfg(cfg).code == kExitOk);
}

TEST_CASE("written problems feed back into bounds") {
    RunConfig cfg;
    cfg.command = Command::Example;
    cfg.example_name = "davis-kahan";
    cfg.n = 16;
    cfg.write_matrix = scratch("dk.mtx");
    cfg.write_vector = scratch("dk_y.mtx");
    REQUIRE(run_cfg(cfg).code == kExitOk);

    RunConfig b;
    b.command = Command::Bounds;
    b.matrix_path = cfg.write_matrix;
    b.vector_path = cfg.write_vector;
    b.format = "json";
    const auto o = run_cfg(b);
    CHECK(o.code == kExitOk);
    const auto j = nlohmann::ordered_json::parse(o.out);
    CHECK(j["inputs"]["operator"] == "diagonal");
    CHECK(j["inputs"]["dim"] == 16);
}

TEST_CASE("verify is deterministic") {
    RunConfig cfg;
    cfg.command = Command::Verify;
    cfg.trials = 10;
    cfg.seed = 1;
    const auto a = run_cfg(cfg);
    const auto b = run_cfg(cfg);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    cfg.format = "json";
    cfg.field = FieldKind::Complex;
    CHECK(run_cfg(cfg).out == run_cfg(cfg).out);
}
