// Command-line front end: analyze single states, survey the Bloch ball,
// run the property-verification battery, and generate random test states.
//
// Exit codes: 0 ok, 1 verify property failure, 2 input error,
// 3 numerical non-convergence.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcoh/qcoh.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNoConvergence = 3;

int run_analyze(const std::string& path, double tol, bool as_json) {
    const qcoh::DensityMatrix rho = qcoh::read_state_file(path);
    const qcoh::AnalysisReport report = qcoh::analyze(rho, tol);
    if (as_json)
        std::cout << qcoh::report_to_json(report).dump(2) << "\n";
    else
        qcoh::report_to_text(std::cout, report);
    return kExitOk;
}

int run_bloch_map(std::size_t nr, std::size_t ntheta, std::size_t nphi,
                  const std::string& out_path) {
    const std::vector<qcoh::BlochCell> cells = qcoh::bloch_region_grid(nr, ntheta, nphi);
    std::ofstream out(out_path);
    if (!out) throw qcoh::ParseError("cannot write output file: " + out_path);
    qcoh::write_bloch_csv(out, cells);
    return kExitOk;
}

int run_verify(std::uint64_t seed, long trials, const std::vector<std::size_t>& dims) {
    using qcoh::checks::CheckResult;
    qcoh::Rng seeds(seed);
    const long tenth = std::max(1L, trials / 10);

    std::vector<CheckResult> results;
    results.push_back(qcoh::checks::check_maximality(dims, trials, 10, seeds.fork()));
    results.push_back(qcoh::checks::check_attainability(dims, tenth, seeds.fork()));
    results.push_back(
        qcoh::checks::check_stuck_state_equivalence(dims, tenth, tenth, seeds.fork()));
    results.push_back(qcoh::checks::check_cw_oracle_qubit(
        std::min(200L, std::max(1L, trials / 100)), 1e-3, 2e-3, seeds.fork()));
    results.push_back(qcoh::checks::check_cw_oracle_qutrit(
        std::min(20L, std::max(1L, trials / 500)),
        static_cast<std::size_t>(std::max(1000L, std::min(trials, 10000L))), seeds.fork()));
    results.push_back(qcoh::checks::check_trivial_counterexample());

    bool all_pass = true;
    for (const CheckResult& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  [" << r.checked
                  << " checks, " << r.detail << "]\n";
        if (!r.pass) {
            all_pass = false;
            if (r.falsifier) {
                const std::string path = "falsifier_" + r.name + ".json";
                std::ofstream out(path);
                out << nlohmann::json(*r.falsifier).dump(2) << "\n";
                std::cout << "      falsifying state written to " << path << "\n";
            }
        }
    }
    return all_pass ? kExitOk : kExitPropertyFailure;
}

int run_random_state(std::size_t dim, std::size_t rank, std::uint64_t seed,
                     const std::string& out_path) {
    if (rank < 1 || rank > dim)
        throw qcoh::ParseError("rank must lie in [1, dim]");
    const qcoh::DensityMatrix rho = qcoh::random_density(dim, rank, seed);
    qcoh::write_state_file(out_path, rho.matrix());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coherence purification / enhancement feasibility toolkit"};
    app.require_subcommand(1);

    std::string state_path;
    double tol = 1e-9;
    bool json_mode = false;
    bool text_mode = false;
    auto* analyze = app.add_subcommand("analyze", "full report for one state file");
    analyze->add_option("path", state_path, "state file (JSON with dim/re/im)")->required();
    analyze->add_option("--tol", tol, "residual tolerance for the enhancement verdict");
    analyze->add_flag("--json", json_mode, "emit JSON (default)");
    analyze->add_flag("--text", text_mode, "emit aligned text");

    std::size_t nr = 20, ntheta = 40, nphi = 8;
    std::string map_out = "bloch_map.csv";
    auto* bloch = app.add_subcommand("bloch-map", "classify a Bloch-ball grid into CSV");
    bloch->add_option("--nr", nr, "radial grid count")->check(CLI::Range(2, 100000));
    bloch->add_option("--ntheta", ntheta, "polar grid count")->check(CLI::Range(2, 100000));
    bloch->add_option("--nphi", nphi, "azimuthal grid count")->check(CLI::Range(2, 100000));
    bloch->add_option("--out", map_out, "output CSV path");

    std::uint64_t seed = 42;
    long trials = 10000;
    std::vector<std::size_t> dims{2, 3, 4};
    auto* verify = app.add_subcommand("verify", "run the property-verification battery");
    verify->add_option("--seed", seed, "base seed");
    verify->add_option("--trials", trials, "state count for the maximality sweep")
        ->check(CLI::PositiveNumber);
    verify->add_option("--dims", dims, "dimensions to sample")->check(CLI::Range(2, 16));

    std::size_t rs_dim = 2, rs_rank = 2;
    std::uint64_t rs_seed = 1;
    std::string rs_out = "state.json";
    auto* random = app.add_subcommand("random-state", "write a random density matrix");
    random->add_option("--dim", rs_dim, "dimension")->check(CLI::Range(1, 16));
    random->add_option("--rank", rs_rank, "rank");
    random->add_option("--seed", rs_seed, "seed");
    random->add_option("--out", rs_out, "output path");

    try {
        app.parse(argc, argv);
        if (analyze->parsed()) return run_analyze(state_path, tol, !text_mode);
        if (bloch->parsed()) return run_bloch_map(nr, ntheta, nphi, map_out);
        if (verify->parsed()) return run_verify(seed, trials, dims);
        if (random->parsed()) return run_random_state(rs_dim, rs_rank, rs_seed, rs_out);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const qcoh::NoConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const qcoh::NotConvergedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const qcoh::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
