#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qcoh/qcoh.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliRun run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = fs::temp_directory_path() / ("qcoh_out_" + std::to_string(counter));
    const fs::path err = fs::temp_directory_path() / ("qcoh_err_" + std::to_string(counter));
    ++counter;
    const std::string cmd = std::string(QCOH_CLI_PATH) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int raw = std::system(cmd.c_str());
    CliRun r{WEXITSTATUS(raw), slurp(out), slurp(err)};
    fs::remove(out);
    fs::remove(err);
    return r;
}

fs::path data_file(const std::string& name) { return fs::path(QCOH_TEST_DATA) / name; }

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST_CASE("analyze reports the mixed reference state") {
    const CliRun r = run_cli("analyze " + data_file("eq12_state.json").string());
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);

    const std::vector<std::string> keys{"c_l1",
                                        "ceiling",
                                        "condition_residual",
                                        "enhanceable",
                                        "full_rank",
                                        "gamma",
                                        "input",
                                        "lambda_max",
                                        "lambda_min",
                                        "purifiable_possible",
                                        "witnesses"};
    REQUIRE(j.size() == keys.size());
    for (const std::string& k : keys) CHECK(j.contains(k));

    CHECK(j["c_l1"].get<double>() == Catch::Approx(0.5).margin(1e-12));
    CHECK(j["enhanceable"].get<bool>());
    CHECK_FALSE(j["purifiable_possible"].get<bool>());
    CHECK(j["full_rank"].get<bool>());
    CHECK(j["ceiling"].get<double>() ==
          Catch::Approx(1.0 / std::sqrt(3.0)).margin(1e-10));
    CHECK(j["witnesses"].contains("kraus"));
    CHECK(j["witnesses"].contains("decomposition"));

    // byte-determinism across runs
    const CliRun again = run_cli("analyze " + data_file("eq12_state.json").string());
    CHECK(again.out == r.out);
}

TEST_CASE("analyze output matches the golden report") {
    const CliRun r = run_cli("analyze " + data_file("eq12_state.json").string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == slurp(data_file("analyze_eq12_golden.json")));
}

TEST_CASE("text and JSON modes agree to 12 significant digits") {
    const std::string path = data_file("eq12_state.json").string();
    const CliRun as_json = run_cli("analyze " + path);
    const CliRun as_text = run_cli("analyze --text " + path);
    REQUIRE(as_json.exit_code == 0);
    REQUIRE(as_text.exit_code == 0);
    const json j = json::parse(as_json.out);
    for (const std::string key : {"c_l1", "gamma", "lambda_max", "ceiling", "lambda_min"}) {
        const std::string want = key + ": ";
        const auto pos = as_text.out.find(want);
        REQUIRE(pos != std::string::npos);
        std::istringstream rest(as_text.out.substr(as_text.out.find(' ', pos)));
        std::string text_value;
        rest >> text_value;
        CHECK(text_value == qcoh::fmt12(j[key].get<double>()));
    }
}

TEST_CASE("analyze gives vacuous verdicts for a diagonal state") {
    const fs::path p = temp_file("qcoh_diag_state.json");
    qcoh::write_state_file(p.string(), qcoh::Matrix::diagonal({0.25, 0.75}));
    const CliRun r = run_cli("analyze " + p.string());
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["c_l1"].get<double>() == 0.0);
    CHECK_FALSE(j["enhanceable"].get<bool>());
    CHECK_FALSE(j["purifiable_possible"].get<bool>());
    CHECK(j["ceiling"].get<double>() == Catch::Approx(0.0).margin(1e-12));
    fs::remove(p);
}

TEST_CASE("analyze rejects malformed states with exit 2") {
    const fs::path p = temp_file("qcoh_bad_state.json");
    {
        std::ofstream out(p);
        out << R"({"dim": 2, "re": [[0.5, 0.3], [0.1, 0.5]], "im": [[0, 0], [0, 0]]})";
    }
    const CliRun r = run_cli("analyze " + p.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("hermiticity") != std::string::npos);
    fs::remove(p);

    const fs::path q = temp_file("qcoh_missing_key.json");
    {
        std::ofstream out(q);
        out << R"({"dim": 2, "re": [[1, 0], [0, 0]]})";
    }
    CHECK(run_cli("analyze " + q.string()).exit_code == 2);
    fs::remove(q);
}

TEST_CASE("bloch-map emits the pinned header and is byte-stable") {
    const fs::path p1 = temp_file("qcoh_map1.csv");
    const fs::path p2 = temp_file("qcoh_map2.csv");
    REQUIRE(run_cli("bloch-map --nr 3 --ntheta 3 --nphi 2 --out " + p1.string()).exit_code == 0);
    REQUIRE(run_cli("bloch-map --nr 3 --ntheta 3 --nphi 2 --out " + p2.string()).exit_code == 0);

    const std::string body = slurp(p1);
    CHECK(body.rfind("r,theta,phi,c_l1,ceiling,enhanceable,purifiable_possible\n", 0) == 0);
    CHECK(std::count(body.begin(), body.end(), '\n') == 1 + 3 * 3 * 2);
    CHECK(body == slurp(p2));
    fs::remove(p1);
    fs::remove(p2);
}

TEST_CASE("verify battery passes at a small trial count") {
    const CliRun r = run_cli("verify --seed 7 --trials 40");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS  maximality") != std::string::npos);
    CHECK(r.out.find("PASS  trivial-measure-counterexample") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("random-state is seed-deterministic and rank-aware") {
    const fs::path p1 = temp_file("qcoh_rand1.json");
    const fs::path p2 = temp_file("qcoh_rand2.json");
    REQUIRE(run_cli("random-state --dim 3 --rank 1 --seed 5 --out " + p1.string()).exit_code == 0);
    REQUIRE(run_cli("random-state --dim 3 --rank 1 --seed 5 --out " + p2.string()).exit_code == 0);
    CHECK(slurp(p1) == slurp(p2));

    const qcoh::DensityMatrix rho = qcoh::read_state_file(p1.string());
    const qcoh::EigenDecomposition eig = qcoh::hermitian_eig(rho.matrix());
    CHECK(eig.eigenvalues[2] == Catch::Approx(1.0).margin(1e-10));
    CHECK(std::abs(eig.eigenvalues[1]) < 1e-10);
    fs::remove(p1);
    fs::remove(p2);

    CHECK(run_cli("random-state --dim 2 --rank 5 --out " + p1.string()).exit_code == 2);
}

TEST_CASE("full-rank random states report positive lambda_min") {
    const fs::path p = temp_file("qcoh_rand_full.json");
    REQUIRE(run_cli("random-state --dim 2 --rank 2 --seed 31 --out " + p.string()).exit_code == 0);
    const CliRun r = run_cli("analyze " + p.string());
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["lambda_min"].get<double>() > 0.0);
    CHECK(j["full_rank"].get<bool>());
    fs::remove(p);
}
