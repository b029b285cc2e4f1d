#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "projconst/cli.hpp"
#include "projconst/matio.hpp"

using namespace projconst;
using namespace projconst::cli;
using json = nlohmann::json;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("projconst_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }

    std::string write(const std::string& name, const std::string& content) const {
        auto p = path / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
};

struct Outcome {
    int exit_code;
    std::string out;
    std::string err;
};

Outcome run_cfg(const RunConfig& cfg) {
    std::ostringstream out, err;
    int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("byte-identical output for identical configurations") {
    RunConfig cfg;
    cfg.command = "search";
    cfg.n = 2;
    cfg.m = 3;
    cfg.seed = 42;
    Outcome first = run_cfg(cfg);
    Outcome second = run_cfg(cfg);
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(!first.out.empty());

    RunConfig fuzz;
    fuzz.command = "duality-fuzz";
    fuzz.trials = 25;
    fuzz.seed = 7;
    Outcome f1 = run_cfg(fuzz);
    Outcome f2 = run_cfg(fuzz);
    CHECK(f1.exit_code == 0);
    CHECK(f1.out == f2.out);
}

TEST_CASE("search: reported best matches the known small case") {
    RunConfig cfg;
    cfg.command = "search";
    cfg.n = 2;
    cfg.m = 3;
    Outcome o = run_cfg(cfg);
    REQUIRE(o.exit_code == 0);
    json j = json::parse(o.out);
    CHECK(j["class_count"] == 2);
    CHECK(std::abs(j["best"]["value"].get<double>() - 4.0 / 3.0) <= 1e-9);
    int best_id = j["best"]["class_id"].get<int>();
    auto rec = j["records"][best_id];
    // The winning class representative has the all-minus off-diagonal.
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            CHECK(rec["sign_matrix"][i][k].get<int>() == (i == k ? 1 : -1));
    for (auto& v : rec["best_D"]) CHECK(std::abs(v.get<double>() - 1.0 / 3.0) <= 1e-5);
}

TEST_CASE("exit codes: usage, parse and verification failures") {
    TempDir tmp;

    RunConfig missing;
    missing.command = "pin";
    Outcome o1 = run_cfg(missing);
    CHECK(o1.exit_code == kExitUsage);
    CHECK(o1.err.find("--matrix") != std::string::npos);

    RunConfig unknown;
    unknown.command = "frobnicate";
    CHECK(run_cfg(unknown).exit_code == kExitUsage);

    // Malformed matrix file: parse error with position information.
    RunConfig bad;
    bad.command = "pin";
    bad.n = 1;
    bad.matrix_path = tmp.write("bad.mat", "2 2\n1 zz\n0 1\n");
    Outcome o2 = run_cfg(bad);
    CHECK(o2.exit_code == kExitUsage);
    CHECK(o2.err.find("line 2") != std::string::npos);

    // Verification failure: asserting the identity chain on a seed that is
    // not a maximizer (the all-plus matrix collapses the spectrum).
    RunConfig blow;
    blow.command = "blowup";
    blow.s0_path = tmp.write("ones.mat", "3 3\n1 1 1\n1 1 1\n1 1 1\n");
    blow.mult = {1, 1, 1};
    blow.n = 2;
    blow.assume_maximizer = true;
    Outcome o3 = run_cfg(blow);
    CHECK(o3.exit_code == kExitCheckFailed);
    json j3 = json::parse(o3.out);
    CHECK(j3["trace_id"].contains("skipped"));

    // Same command without the assertion: informational, exit 0.
    blow.assume_maximizer = false;
    CHECK(run_cfg(blow).exit_code == 0);
}

TEST_CASE("pin evaluates plain and diagonal-weighted eigenvalue sums") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = "pin";
    cfg.matrix_path = tmp.write("s.mat", "3 3\n1 1 -1\n1 1 1\n-1 1 1\n");
    cfg.n = 2;
    Outcome o = run_cfg(cfg);
    REQUIRE(o.exit_code == 0);
    CHECK(std::abs(json::parse(o.out)["value"].get<double>() - 4.0) <= 1e-9);

    cfg.diag_path = tmp.write("d.mat", "1 3\n1/3 1/3 1/3\n");
    Outcome o2 = run_cfg(cfg);
    REQUIRE(o2.exit_code == 0);
    CHECK(std::abs(json::parse(o2.out)["value"].get<double>() - 4.0 / 3.0) <= 1e-9);
}

TEST_CASE("lambda and kobos against their frozen values") {
    TempDir tmp;
    RunConfig lam;
    lam.command = "lambda";
    lam.basis_path = tmp.write("hex.mat", "3 2\n1 0\n0 1\n1 1\n");
    Outcome o = run_cfg(lam);
    REQUIRE(o.exit_code == 0);
    json j = json::parse(o.out);
    CHECK(std::abs(j["value"].get<double>() - 4.0 / 3.0) <= 1e-6);
    CHECK(j["lp_status"] == "optimal");
    CHECK(j["value"].get<double>() >= j["dual_bound"].get<double>() - 1e-8);

    RunConfig kob;
    kob.command = "kobos";
    Outcome ko = run_cfg(kob);
    REQUIRE(ko.exit_code == 0);
    json kj = json::parse(ko.out);
    CHECK(kj["dim_V"] == 1);
    CHECK(kj["V_basis"][0] == "(1, -1, 0, 0, ...)");
    CHECK(kj["witness_outside_direct_sum"] == true);
    CHECK(kj["equality_refuted"] == true);
}

TEST_CASE("vn-check file mode emits a certificate") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = "vn-check";
    cfg.a_path = tmp.write("a.mat", "2 2\n2 0\n0 1\n");
    cfg.b_path = tmp.write("b.mat", "2 2\n1 0\n0 2\n");
    Outcome o = run_cfg(cfg);
    REQUIRE(o.exit_code == 0);
    json j = json::parse(o.out);
    CHECK(j["lhs"].get<double>() == doctest::Approx(4.0));
    CHECK(j["bound"].get<double>() == doctest::Approx(5.0));
    CHECK(j["equality"] == false);
    CHECK_FALSE(j.contains("shared_basis"));
}

TEST_CASE("eps-limit and stabilizer through the command layer") {
    TempDir tmp;
    std::string sstar = tmp.write("s.mat", "3 3\n1 1 -1\n1 1 1\n-1 1 1\n");

    RunConfig lim;
    lim.command = "eps-limit";
    lim.s0_path = sstar;
    lim.n = 2;
    lim.eps_seq = {0.25, 0.125, 0.0625, 0.03125};
    Outcome o = run_cfg(lim);
    REQUIRE(o.exit_code == 0);
    json j = json::parse(o.out);
    CHECK(j["nondecreasing"] == true);
    CHECK(j["limit_reached"] == true);
    CHECK(std::abs(j["values"].back().get<double>() - j["eps_zero_value"].get<double>()) <= 1e-6);

    RunConfig stab;
    stab.command = "stabilizer";
    stab.matrix_path = sstar;
    stab.symmetrize_diag_path = tmp.write("d.mat", "1 3\n1/2 1/4 1/4\n");
    Outcome so = run_cfg(stab);
    REQUIRE(so.exit_code == 0);
    json sj = json::parse(so.out);
    CHECK(sj["order"] == 12);
    for (auto& v : sj["symmetrized"]) CHECK(v == "1/3");
    CHECK(sj["invariant_exact"] == true);
    CHECK(sj["idempotent_exact"] == true);
}

TEST_CASE("output does not depend on the worker-pool size") {
    RunConfig fuzz;
    fuzz.command = "duality-fuzz";
    fuzz.trials = 40;
    fuzz.seed = 11;
    RunConfig search;
    search.command = "search";
    search.n = 2;
    search.m = 4;
    search.seed = 11;

    setenv("PROJCONST_THREADS", "1", 1);
    Outcome fuzz_serial = run_cfg(fuzz);
    Outcome search_serial = run_cfg(search);
    setenv("PROJCONST_THREADS", "7", 1);
    Outcome fuzz_pool = run_cfg(fuzz);
    Outcome search_pool = run_cfg(search);
    unsetenv("PROJCONST_THREADS");

    CHECK(fuzz_serial.exit_code == 0);
    CHECK(fuzz_serial.out == fuzz_pool.out);
    CHECK(search_serial.out == search_pool.out);
}

TEST_CASE("matrix text format: parse/serialize round trip and rational entries") {
    TempDir tmp;
    // Rational entries coexist with decimals; a comment line is ignored.
    std::string path = tmp.write("m.mat", "# weights\n2 3\n1/3 -0.5 2\n7/2 0 -1/4\n");
    Mat m = read_matrix_file(path);
    CHECK(m(0, 0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(m(1, 0) == 3.5);
    CHECK(m(1, 2) == -0.25);

    // Serialization reparses to the same bits.
    std::string text = matrix_to_string(m);
    std::istringstream in(text);
    Mat back = read_matrix(in);
    CHECK(back.rows() == m.rows());
    CHECK(back.data() == m.data());
}

TEST_CASE("duality-fuzz honors a fixed dimension") {
    RunConfig cfg;
    cfg.command = "duality-fuzz";
    cfg.trials = 20;
    cfg.dim = 3;
    cfg.seed = 1;
    Outcome o = run_cfg(cfg);
    REQUIRE(o.exit_code == 0);
    json j = json::parse(o.out);
    CHECK(j["dim"] == 3);
    CHECK(j["passes"] == 20);
}

TEST_CASE("csv and text formats flatten the report") {
    RunConfig cfg;
    cfg.command = "search";
    cfg.n = 2;
    cfg.m = 3;
    cfg.format = Format::csv;
    Outcome o = run_cfg(cfg);
    REQUIRE(o.exit_code == 0);
    // Header plus one row per class record.
    int lines = 0;
    for (char c : o.out)
        if (c == '\n') ++lines;
    CHECK(lines == 3);
    CHECK(o.out.find("class_id") != std::string::npos);
    CHECK(o.out.find("value") != std::string::npos);

    cfg.format = Format::text;
    Outcome t = run_cfg(cfg);
    CHECK(t.out.find("best.value: ") != std::string::npos);
}
