#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qmet/report.hpp"

namespace {

using namespace qmet;

// Exit codes: 0 success, 1 verification failure, 2 usage error.
constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kUsage = 2;

int emit(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::cout << content;
        return kOk;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file " << path << "\n";
        return kUsage;
    }
    f << content;
    return kOk;
}

ChannelKind parse_dv_kind(const std::string& name) {
    if (name == "erasure") return ChannelKind::erasure;
    if (name == "dephasing") return ChannelKind::dephasing;
    if (name == "depolarizing") return ChannelKind::depolarizing;
    throw CLI::ValidationError("--kind", "unknown channel family: " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"channel-simulation toolkit for quantum parameter estimation"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "csv";
    std::string out_path;
    std::uint64_t seed = 1;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--seed", seed, "random seed for randomized commands");

    // qfi-table
    auto* qfi = app.add_subcommand("qfi-table",
                                   "QFI grid with closed-form comparison");
    std::string family;
    std::vector<double> p_grid, nbar_grid, nu_grid, r_grid{3.0};
    double eta = 0.6;
    std::string method = "sld";
    qfi->add_option("--family", family, "erasure|dephasing|depolarizing|thermal-loss|amplifier|additive")
        ->required();
    qfi->add_option("--p", p_grid, "probability grid (DV families)")->delimiter(',');
    qfi->add_option("--nbar", nbar_grid, "thermal-number grid (loss/amplifier)")
        ->delimiter(',');
    qfi->add_option("--nu", nu_grid, "added-noise grid (additive)")->delimiter(',');
    qfi->add_option("--r", r_grid,
                    "squeezing grid; one value = finite-r QFI, >=3 = extrapolated limit")
        ->delimiter(',');
    qfi->add_option("--eta", eta, "loss/gain parameter for CV families");
    qfi->add_option("--method", method, "numeric route for DV families")
        ->check(CLI::IsMember({"sld", "fidelity"}));

    // verify
    auto* verify = app.add_subcommand("verify", "run the verification suites");
    std::vector<std::string> suites;
    int trials = 100;
    double perturb = 0.0;
    verify->add_option("--suite", suites,
                       "teleport|finite-resource|covariance|fidelity-oracle")
        ->delimiter(',');
    verify->add_option("--trials", trials, "random inputs per grid point");
    verify->add_option("--perturb", perturb, "inject a fault of this size");

    // fig-finite-qfi
    auto* fig = app.add_subcommand(
        "fig-finite-qfi", "asymptotic vs finite-energy-resource QFI curves");
    std::vector<double> fig_nbar{0.5, 1.0, 2.0, 5.0};
    std::vector<double> fig_r{1.0, 2.0, 3.0};
    double fig_eta = 0.6;
    fig->add_option("--nbar", fig_nbar, "thermal-number grid")->delimiter(',');
    fig->add_option("--r", fig_r, "squeezing grid for the asymptotic route")
        ->delimiter(',');
    fig->add_option("--eta", fig_eta, "loss parameter");

    // estimate
    auto* est = app.add_subcommand("estimate", "block-protocol Monte Carlo");
    std::string est_kind = "dephasing";
    double p_true = 0.3;
    std::vector<long> n_grid{100, 1000, 10000};
    int est_trials = 200;
    est->add_option("--kind", est_kind, "erasure|dephasing|depolarizing");
    est->add_option("--p", p_true, "true parameter value");
    est->add_option("--n", n_grid, "channel uses per trial")->delimiter(',');
    est->add_option("--trials", est_trials, "trials per n value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (qfi->parsed()) {
            std::vector<QfiTableRow> rows;
            if (family == "erasure" || family == "dephasing" ||
                family == "depolarizing") {
                if (p_grid.empty())
                    throw CLI::ValidationError("--p", "a probability grid is required");
                rows = qfi_table_dv(parse_dv_kind(family), p_grid,
                                    method == "fidelity" ? QfiMethod::fidelity
                                                         : QfiMethod::sld);
            } else if (family == "thermal-loss" || family == "amplifier") {
                if (nbar_grid.empty())
                    throw CLI::ValidationError("--nbar", "a thermal-number grid is required");
                rows = qfi_table_cv(family == "thermal-loss" ? GaussKind::thermal_loss
                                                             : GaussKind::amplifier,
                                    eta, nbar_grid, r_grid);
            } else if (family == "additive") {
                if (nu_grid.empty())
                    throw CLI::ValidationError("--nu", "a noise grid is required");
                rows = qfi_table_cv(GaussKind::additive, 1.0, nu_grid, r_grid);
            } else {
                throw CLI::ValidationError("--family", "unknown family: " + family);
            }
            return emit(format == "json" ? to_json(rows) : to_csv(rows), out_path);
        }

        if (verify->parsed()) {
            VerifyOptions opt{suites, trials, seed, perturb};
            const auto reports = run_verification(opt);
            const int rc =
                emit(format == "json" ? to_json(reports) : to_csv(reports), out_path);
            if (rc != kOk) return rc;
            for (const auto& r : reports)
                if (!r.pass) return kVerifyFail;
            return kOk;
        }

        if (fig->parsed()) {
            if (fig_r.size() < 3)
                throw CLI::ValidationError("--r", "at least 3 squeezing values required");
            const auto rows = fig_finite_qfi(fig_nbar, fig_eta, fig_r);
            return emit(format == "json" ? to_json(rows) : to_csv(rows), out_path);
        }

        if (est->parsed()) {
            const auto rep =
                run_estimate(parse_dv_kind(est_kind), p_true, n_grid, est_trials, seed);
            if (!rep.variance_defined)
                std::cerr << "warning: single trial per n value; variance undefined\n";
            return emit(format == "json" ? to_json(rep) : to_csv(rep), out_path);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
