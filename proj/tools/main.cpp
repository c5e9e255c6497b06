#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pfr/cli.hpp"

namespace {

void add_common_flags(CLI::App* cmd, pfr::AnalysisRequest& req, std::string& format) {
    cmd->add_option("--tol", req.tol_value, "absolute/relative tolerance override");
    cmd->add_option("--cap", req.cap, "power-iteration cap");
    cmd->add_option("--seed", req.seed, "seed for sampled nonprimary roots");
    cmd->add_option("--format", format, "output format: text|structured")
        ->check(CLI::IsMember({"text", "structured"}));
    cmd->add_option("--factorization", req.factorization_path,
                    "explicit factorization file (R plus block descriptors)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"analysis and p-th roots of eventually positive matrices"};
    app.require_subcommand(1);

    pfr::AnalysisRequest req;
    std::string format = "text";

    CLI::App* analyze = app.add_subcommand("analyze", "spectrum, Jordan and Perron analysis");
    analyze->add_option("matrix", req.matrix_path, "matrix file")->required();
    add_common_flags(analyze, req, format);

    CLI::App* roots = app.add_subcommand("roots", "enumerate p-th roots");
    roots->add_option("matrix", req.matrix_path, "matrix file")->required();
    roots->add_option("--p", req.p, "root order (p > 1)")->required();
    roots->add_flag("--nonprimary", req.nonprimary, "sample nonprimary families");
    roots->add_flag("--stochastic", req.stochastic, "report eventual stochasticity per root");
    add_common_flags(roots, req, format);

    CLI::App* verify = app.add_subcommand("verify", "check a candidate root");
    verify->add_option("candidate", req.matrix_path, "candidate root file")->required();
    verify->add_option("matrix", req.second_path, "matrix file")->required();
    verify->add_option("--p", req.p, "root order (p > 1)")->required();
    add_common_flags(verify, req, format);

    CLI::App* pidx = app.add_subcommand("power-index", "smallest k with A^k entrywise positive");
    pidx->add_option("matrix", req.matrix_path, "matrix file")->required();
    add_common_flags(pidx, req, format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (analyze->parsed()) req.command = pfr::AnalysisRequest::Command::analyze;
    if (roots->parsed()) req.command = pfr::AnalysisRequest::Command::roots;
    if (verify->parsed()) req.command = pfr::AnalysisRequest::Command::verify;
    if (pidx->parsed()) req.command = pfr::AnalysisRequest::Command::power_index;
    req.format = format == "structured" ? pfr::AnalysisRequest::Format::structured
                                        : pfr::AnalysisRequest::Format::text;

    return pfr::run(req, std::cout, std::cerr);
}
