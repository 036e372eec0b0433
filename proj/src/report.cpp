#include "qmet/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qmet/fock.hpp"
#include "qmet/metrology.hpp"
#include "qmet/teleport.hpp"

namespace qmet {

using json = nlohmann::ordered_json;

std::vector<QfiTableRow> qfi_table_dv(ChannelKind kind,
                                      const std::vector<double>& p_grid,
                                      QfiMethod method) {
    if (p_grid.empty()) throw std::invalid_argument("qfi_table_dv: empty grid");
    auto family = dv_family(kind);
    std::vector<QfiTableRow> rows;
    std::vector<double> grid = p_grid;
    std::sort(grid.begin(), grid.end());
    for (double p : grid) {
        const double closed = closed_form_dv_qfi(kind, p);
        const double numeric = method == QfiMethod::fidelity
                                   ? qfi_fidelity(family, p).value
                                   : qfi_sld(family, p).value;
        rows.push_back({p, numeric, closed, std::abs(numeric - closed) / closed});
    }
    return rows;
}

namespace {

double cv_closed_form(GaussKind kind, double theta) {
    switch (kind) {
        case GaussKind::thermal_loss:
        case GaussKind::amplifier:
            return 1.0 / (theta * (theta + 1.0));
        case GaussKind::additive:
            return 1.0 / (theta * theta);
        case GaussKind::custom:
            break;
    }
    throw std::invalid_argument("no closed form for custom Gaussian families");
}

}  // namespace

std::vector<QfiTableRow> qfi_table_cv(GaussKind kind, double eta,
                                      const std::vector<double>& grid,
                                      const std::vector<double>& r_grid) {
    if (grid.empty()) throw std::invalid_argument("qfi_table_cv: empty grid");
    if (r_grid.empty()) throw std::invalid_argument("qfi_table_cv: empty r grid");
    auto family = cv_family(kind, eta);
    std::vector<double> sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    std::vector<QfiTableRow> rows;
    for (double theta : sorted) {
        const double closed = cv_closed_form(kind, theta);
        const double numeric =
            r_grid.size() >= 3 ? qfi_choi_limit(family, theta, r_grid).value
                               : qfi_gaussian(family, theta, r_grid.back()).value;
        rows.push_back({theta, numeric, closed, std::abs(numeric - closed) / closed});
    }
    return rows;
}

std::vector<FigRow> fig_finite_qfi(const std::vector<double>& nbar_grid,
                                   double eta,
                                   const std::vector<double>& r_grid) {
    if (nbar_grid.empty()) throw std::invalid_argument("fig_finite_qfi: empty grid");
    auto family = cv_family(GaussKind::thermal_loss, eta);
    std::vector<double> sorted = nbar_grid;
    std::sort(sorted.begin(), sorted.end());
    std::vector<FigRow> rows;
    for (double nbar : sorted) {
        rows.push_back({nbar, qfi_choi_limit(family, nbar, r_grid).value,
                        qfi_suboptimal(family, nbar).value});
    }
    return rows;
}

namespace {

SuiteReport teleport_suite(int trials, std::uint64_t seed, double perturb) {
    SuiteReport rep{"teleport", false, 0.0, 1e-10};
    Rng rng(seed);
    for (auto kind : {ChannelKind::erasure, ChannelKind::dephasing,
                      ChannelKind::depolarizing}) {
        const CorrectionTable table = kind == ChannelKind::erasure
                                          ? erasure_corrections()
                                          : pauli_corrections();
        for (int i = 1; i <= 9; ++i) {
            const KrausChannel ch = make_channel(kind, i / 10.0);
            DensityMatrix resource = choi(ch);
            if (perturb != 0.0) {
                const int d = resource.dim();
                resource = DensityMatrix((1.0 - perturb) * resource.mat() +
                                         perturb * Mat::Identity(d, d) / d);
            }
            for (int t = 0; t < trials; ++t) {
                const DensityMatrix rho = random_density(2, rng);
                const double dev = trace_distance(apply_channel(ch, rho),
                                                  teleport(rho, resource, table));
                rep.max_deviation = std::max(rep.max_deviation, dev);
            }
        }
    }
    rep.pass = rep.max_deviation <= rep.threshold;
    return rep;
}

SuiteReport finite_resource_suite(double perturb) {
    SuiteReport rep{"finite-resource", false, 0.0, 1e-12};
    for (double eta : {0.2, 0.5, 0.8, 1.0, 1.5, 2.0}) {
        for (double extra : {0.05, 0.3, 1.0}) {
            const double nu = std::abs(1.0 - eta) / 2.0 + extra;
            ResourceCM res = finite_resource(eta, nu);
            res.B += perturb * Eigen::Matrix2d::Identity();
            const double g = std::sqrt(eta);
            const GaussianChannel ch = bk_teleport_channel(res, g);
            const double dev_t =
                (ch.T - g * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
            const double dev_n =
                (ch.N - nu * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
            const double dev_id =
                std::abs(res.A(0, 0) * g * g - 2.0 * res.C(0, 0) * g + res.B(0, 0) - nu);
            rep.max_deviation =
                std::max({rep.max_deviation, dev_t, dev_n, dev_id});
        }
    }
    rep.pass = rep.max_deviation <= rep.threshold;
    return rep;
}

SuiteReport covariance_suite(double perturb) {
    SuiteReport rep{"covariance", false, 0.0, 1e-10};
    for (auto kind : {ChannelKind::erasure, ChannelKind::dephasing,
                      ChannelKind::depolarizing}) {
        CorrectionTable table = kind == ChannelKind::erasure
                                    ? erasure_corrections()
                                    : pauli_corrections();
        if (perturb != 0.0) {
            // Twist one output correction away from the exact table.
            Mat gen = Mat::Zero(table.output_unitaries[1].rows(),
                                table.output_unitaries[1].cols());
            gen(0, 0) = Cplx(0.0, perturb);
            gen(1, 1) = Cplx(0.0, -perturb);
            table.output_unitaries[1] *= (Mat::Identity(gen.rows(), gen.cols()) + gen);
        }
        for (int i = 1; i <= 9; ++i) {
            const auto check =
                verify_tele_covariance(make_channel(kind, i / 10.0), table, 1e-10);
            rep.max_deviation = std::max(rep.max_deviation, check.max_deviation);
        }
    }
    rep.pass = rep.max_deviation <= rep.threshold;
    return rep;
}

SuiteReport fidelity_oracle_suite(double perturb) {
    SuiteReport rep{"fidelity-oracle", false, 0.0, 1e-4};
    const int cutoff = 30;
    auto compare = [&](const GaussianState& g1, const GaussianState& g2,
                       const FockState& f1, const FockState& f2) {
        GaussianState biased = g1;
        biased.cm *= 1.0 + perturb;
        const double dev =
            std::abs(gaussian_fidelity(biased, g2) - oracle_fidelity(f1, f2));
        rep.max_deviation = std::max(rep.max_deviation, dev);
    };
    compare(thermal_gaussian(0.3), thermal_gaussian(1.0),
            fock_thermal(0.3, cutoff), fock_thermal(1.0, cutoff));
    compare(tmsv(0.4), tmsv(0.55), fock_tmsv(0.4, cutoff), fock_tmsv(0.55, cutoff));
    compare(coherent_gaussian({0.7 * std::sqrt(2.0), 0.0}), vacuum_state(1),
            fock_coherent(Cplx(0.7, 0.0), cutoff), fock_thermal(0.0, cutoff));
    compare(two_mode_squeezed_thermal(0.5, 0.2, 0.1),
            two_mode_squeezed_thermal(0.45, 0.25, 0.05),
            fock_two_mode_squeezed_thermal(0.5, 0.2, 0.1, cutoff),
            fock_two_mode_squeezed_thermal(0.45, 0.25, 0.05, cutoff));
    rep.pass = rep.max_deviation <= rep.threshold;
    return rep;
}

}  // namespace

std::vector<SuiteReport> run_verification(const VerifyOptions& opt) {
    auto wanted = [&](const std::string& name) {
        return opt.suites.empty() ||
               std::find(opt.suites.begin(), opt.suites.end(), name) !=
                   opt.suites.end();
    };
    std::vector<SuiteReport> out;
    if (wanted("teleport")) out.push_back(teleport_suite(opt.trials, opt.seed, opt.perturb));
    if (wanted("finite-resource")) out.push_back(finite_resource_suite(opt.perturb));
    if (wanted("covariance")) out.push_back(covariance_suite(opt.perturb));
    if (wanted("fidelity-oracle")) out.push_back(fidelity_oracle_suite(opt.perturb));
    if (out.empty()) throw std::invalid_argument("run_verification: unknown suite");
    return out;
}

EstimateReport run_estimate(ChannelKind kind, double p_true,
                            const std::vector<long>& n_grid, int trials,
                            std::uint64_t seed) {
    if (n_grid.empty()) throw std::invalid_argument("run_estimate: empty n grid");
    EstimateReport rep;
    rep.kind = kind;
    rep.p_true = p_true;
    rep.seed = seed;
    rep.variance_defined = trials > 1;
    std::vector<long> grid = n_grid;
    std::sort(grid.begin(), grid.end());
    std::uint64_t sub = 0;
    for (long n : grid)
        rep.runs.push_back(
            run_block_experiment(kind, p_true, n, trials, Rng::derive(seed, sub++)));
    if (rep.runs.size() >= 3 &&
        static_cast<double>(grid.back()) / grid.front() >= 100.0 &&
        rep.variance_defined) {
        rep.slope = sql_scaling_fit(rep.runs);
        rep.slope_defined = true;
    }
    return rep;
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x,
                             std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += fields[i];
    }
    line += '\n';
    return line;
}

}  // namespace

std::string to_csv(const std::vector<QfiTableRow>& rows) {
    std::string out = "param,qfi_numeric,qfi_closed,rel_err\n";
    for (const auto& r : rows)
        out += csv_line({format_double(r.param), format_double(r.qfi_numeric),
                         format_double(r.qfi_closed), format_double(r.rel_err)});
    return out;
}

std::string to_csv(const std::vector<FigRow>& rows) {
    std::string out = "nbar,qfi_asymptotic,qfi_suboptimal\n";
    for (const auto& r : rows)
        out += csv_line({format_double(r.nbar), format_double(r.qfi_asymptotic),
                         format_double(r.qfi_suboptimal)});
    return out;
}

std::string to_csv(const std::vector<SuiteReport>& rows) {
    std::string out = "suite,pass,max_deviation,threshold\n";
    for (const auto& r : rows)
        out += csv_line({r.name, r.pass ? "1" : "0",
                         format_double(r.max_deviation),
                         format_double(r.threshold)});
    return out;
}

std::string to_csv(const EstimateReport& rep) {
    std::string out = "n,trials,empirical_var,qcrb,slope\n";
    const std::string slope =
        rep.slope_defined ? format_double(rep.slope) : std::string();
    for (const auto& r : rep.runs)
        out += csv_line({std::to_string(r.n), std::to_string(r.trials),
                         format_double(r.empirical_var), format_double(r.qcrb),
                         slope});
    return out;
}

std::string to_json(const std::vector<QfiTableRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"param", r.param},
                       {"qfi_numeric", r.qfi_numeric},
                       {"qfi_closed", r.qfi_closed},
                       {"rel_err", r.rel_err}});
    return json{{"rows", arr}}.dump(2) + "\n";
}

std::string to_json(const std::vector<FigRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"nbar", r.nbar},
                       {"qfi_asymptotic", r.qfi_asymptotic},
                       {"qfi_suboptimal", r.qfi_suboptimal}});
    return json{{"rows", arr}}.dump(2) + "\n";
}

std::string to_json(const std::vector<SuiteReport>& rows) {
    json arr = json::array();
    bool all = true;
    for (const auto& r : rows) {
        arr.push_back({{"suite", r.name},
                       {"pass", r.pass},
                       {"max_deviation", r.max_deviation},
                       {"threshold", r.threshold}});
        all = all && r.pass;
    }
    return json{{"all_pass", all}, {"suites", arr}}.dump(2) + "\n";
}

std::string to_json(const EstimateReport& rep) {
    json runs = json::array();
    for (const auto& r : rep.runs) {
        runs.push_back({{"n", r.n},
                        {"trials", r.trials},
                        {"empirical_var", r.empirical_var},
                        {"qcrb", r.qcrb},
                        {"seed", r.seed},
                        {"estimates", r.estimates}});
    }
    json out{{"kind", kind_name(rep.kind)},
             {"p_true", rep.p_true},
             {"seed", rep.seed},
             {"variance_defined", rep.variance_defined},
             {"runs", runs}};
    if (rep.slope_defined) out["slope"] = rep.slope;
    return out.dump(2) + "\n";
}

const char* kind_name(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::erasure: return "erasure";
        case ChannelKind::dephasing: return "dephasing";
        case ChannelKind::depolarizing: return "depolarizing";
        case ChannelKind::custom: return "custom";
    }
    return "unknown";
}

}  // namespace qmet
