#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmet/dv_channels.hpp"
#include "qmet/estimation.hpp"
#include "qmet/gaussian.hpp"

namespace qmet {

struct QfiTableRow {
    double param = 0.0;
    double qfi_numeric = 0.0;
    double qfi_closed = 0.0;
    double rel_err = 0.0;
};

// One row per grid point; the numeric route is SLD by default or the
// fidelity route on request.
std::vector<QfiTableRow> qfi_table_dv(ChannelKind kind,
                                      const std::vector<double>& p_grid,
                                      QfiMethod method = QfiMethod::sld);

// Numeric route: finite-r Choi QFI when one r is given, the extrapolated
// r -> infinity limit when the grid has three or more points.
std::vector<QfiTableRow> qfi_table_cv(GaussKind kind, double eta,
                                      const std::vector<double>& grid,
                                      const std::vector<double>& r_grid);

struct FigRow {
    double nbar = 0.0;
    double qfi_asymptotic = 0.0;
    double qfi_suboptimal = 0.0;
};

// Asymptotic (Choi-limit) versus finite-energy-resource QFI for the
// thermal-loss family, one row per nbar.
std::vector<FigRow> fig_finite_qfi(const std::vector<double>& nbar_grid,
                                   double eta,
                                   const std::vector<double>& r_grid);

struct SuiteReport {
    std::string name;
    bool pass = false;
    double max_deviation = 0.0;
    double threshold = 0.0;
};

struct VerifyOptions {
    std::vector<std::string> suites;  // empty selects every suite
    int trials = 100;
    std::uint64_t seed = 1;
    double perturb = 0.0;  // nonzero injects a fault of this size
};

// Suites: teleport, finite-resource, covariance, fidelity-oracle.
std::vector<SuiteReport> run_verification(const VerifyOptions& opt);

struct EstimateReport {
    ChannelKind kind = ChannelKind::dephasing;
    double p_true = 0.0;
    std::uint64_t seed = 0;
    std::vector<ExperimentResult> runs;
    bool slope_defined = false;
    double slope = 0.0;
    bool variance_defined = true;  // false when trials == 1
};

EstimateReport run_estimate(ChannelKind kind, double p_true,
                            const std::vector<long>& n_grid, int trials,
                            std::uint64_t seed);

// Serialization. CSV always carries a header row and prints floating-point
// values with 12 significant digits, locale-independent.
std::string format_double(double x);
std::string to_csv(const std::vector<QfiTableRow>& rows);
std::string to_csv(const std::vector<FigRow>& rows);
std::string to_csv(const std::vector<SuiteReport>& rows);
std::string to_csv(const EstimateReport& report);
std::string to_json(const std::vector<QfiTableRow>& rows);
std::string to_json(const std::vector<FigRow>& rows);
std::string to_json(const std::vector<SuiteReport>& rows);
std::string to_json(const EstimateReport& report);

const char* kind_name(ChannelKind kind);

}  // namespace qmet
