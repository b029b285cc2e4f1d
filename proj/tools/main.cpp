#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "projconst/cli.hpp"
#include "projconst/rational.hpp"

namespace {

using projconst::cli::Format;
using projconst::cli::RunConfig;

void add_common(CLI::App* cmd, RunConfig& cfg, std::string& format) {
    cmd->add_option("--format", format, "output format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->default_val("json");
    cmd->add_option("--seed", cfg.seed, "seed for all randomized parts")->default_val(0);
}

void add_tolerances(CLI::App* cmd, RunConfig& cfg) {
    // Known tolerance knobs, spelled --tol.<name>.
    for (const char* name : {"sym", "eq", "gap", "zero", "resid", "limit", "match", "identity",
                             "duality_gap"}) {
        cmd->add_option("--tol." + std::string(name),
                        [&cfg, name = std::string(name)](const std::vector<std::string>& vals) {
                            cfg.tol[name] = std::stod(vals.at(0));
                            return true;
                        },
                        "override tolerance '" + std::string(name) + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-dimensional projection-constant toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "json";
    std::string eps_list;
    std::string mult_list;
    int n = 0, m = 0, dim = 0;
    double eps = -1.0;

    auto* pin = app.add_subcommand("pin", "sum of the n largest eigenvalues of a matrix");
    pin->add_option("--matrix", cfg.matrix_path, "symmetric matrix file")->required();
    pin->add_option("--n", n, "how many leading eigenvalues")->required();
    pin->add_option("--diag", cfg.diag_path, "optional diagonal file: evaluate on A*diag(D)");

    auto* lambda = app.add_subcommand("lambda", "relative projection constant of a subspace");
    lambda->add_option("--basis", cfg.basis_path, "d x n basis matrix file")->required();

    auto* search = app.add_subcommand(
        "search", "maximize pi_n(sqrt(D) S sqrt(D)) over classes of sign matrices");
    search->add_option("--n", n, "eigenvalue count")->required();
    search->add_option("--m", m, "sign matrix dimension (2..7)")->required();
    search->add_option("--eps", eps, "simplex floor (default 0)");
    search->add_option("--restarts", cfg.restarts, "multistart count")->default_val(32);
    search->add_option("--grid", cfg.grid, "certificate grid resolution")->default_val(1.0 / 60.0);

    auto* blowup = app.add_subcommand("blowup", "verify the blow-up identity chain");
    blowup->add_option("--s0", cfg.s0_path, "sign matrix file")->required();
    blowup->add_option("--mult", mult_list, "comma-separated multiplicities, e.g. 2,2,2")
        ->required();
    blowup->add_option("--n", n, "projector rank")->required();
    blowup->add_option("--p0", cfg.p0_path, "reference projection for the closing inequality");
    blowup->add_flag("--assume-maximizer", cfg.assume_maximizer,
                     "assert the identity chain (exit 2 when it fails)");

    auto* kobos = app.add_subcommand("kobos", "exact counterexample report");
    kobos->add_option("--truncation", cfg.truncation, "truncation depth for the exact checks")
        ->default_val(8);

    auto* fuzz = app.add_subcommand("duality-fuzz", "random complemented-pair duality checks");
    fuzz->add_option("--dim", dim, "fixed ambient dimension (default: cycle 2..8)");
    fuzz->add_option("--trials", cfg.trials, "number of random pairs")->default_val(100);

    auto* vn = app.add_subcommand("vn-check", "trace-inequality bound and equality certificate");
    vn->add_option("--a", cfg.a_path, "symmetric matrix file");
    vn->add_option("--b", cfg.b_path, "symmetric matrix file");
    vn->add_option("--trials", cfg.trials, "property mode: number of random pairs")
        ->default_val(100);
    vn->add_option("--dim", dim, "property mode: matrix dimension")->default_val(4);

    auto* eps_limit = app.add_subcommand("eps-limit", "restricted maxima along decreasing eps");
    eps_limit->add_option("--s0", cfg.s0_path, "sign matrix file")->required();
    eps_limit->add_option("--n", n, "eigenvalue count")->required();
    eps_limit->add_option("--eps", eps_list, "comma-separated decreasing eps values")->required();
    eps_limit->add_option("--restarts", cfg.restarts, "multistart count")->default_val(32);
    eps_limit->add_option("--grid", cfg.grid, "certificate grid resolution")
        ->default_val(1.0 / 60.0);

    auto* stab = app.add_subcommand("stabilizer", "signed permutations fixing a matrix");
    stab->add_option("--matrix", cfg.matrix_path, "symmetric matrix file")->required();
    stab->add_option("--symmetrize", cfg.symmetrize_diag_path,
                     "diagonal file (exact rationals) to average over the stabilizer");

    for (auto* cmd : {pin, lambda, search, blowup, kobos, fuzz, vn, eps_limit, stab}) {
        add_common(cmd, cfg, format);
        add_tolerances(cmd, cfg);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints the message or the help text
        return code == 0 ? 0 : projconst::cli::kExitUsage;
    }

    try {
        auto* sub = app.get_subcommands().front();
        cfg.command = sub->get_name();
        auto counted = [&](const char* name) {
            auto* opt = sub->get_option_no_throw(name);
            return opt != nullptr && opt->count() > 0;
        };
        if (counted("--n")) cfg.n = n;
        if (counted("--m")) cfg.m = m;
        if (counted("--dim")) cfg.dim = dim;
        if (counted("--eps") && cfg.command == "search") cfg.eps = eps;
        if (!eps_list.empty()) {
            for (std::size_t pos = 0; pos < eps_list.size();) {
                auto comma = eps_list.find(',', pos);
                if (comma == std::string::npos) comma = eps_list.size();
                std::string token = eps_list.substr(pos, comma - pos);
                cfg.eps_seq.push_back(
                    token.find('/') != std::string::npos
                        ? projconst::rational_to_double(projconst::parse_rational(token))
                        : std::stod(token));
                pos = comma + 1;
            }
        }
        if (!mult_list.empty()) {
            for (std::size_t pos = 0; pos < mult_list.size();) {
                auto comma = mult_list.find(',', pos);
                if (comma == std::string::npos) comma = mult_list.size();
                cfg.mult.push_back(std::stoi(mult_list.substr(pos, comma - pos)));
                pos = comma + 1;
            }
        }
        if (format == "csv") cfg.format = Format::csv;
        else if (format == "text") cfg.format = Format::text;
        else cfg.format = Format::json;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return projconst::cli::kExitUsage;
    }

    return projconst::cli::run(cfg, std::cout, std::cerr);
}
