#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlslab/criteria.hpp"
#include "nlslab/functionals.hpp"
#include "nlslab/weights.hpp"

namespace nlslab::section5 {

// The published numerical example: A(t) = c0 cos^2(100 t) on the window
// [3pi/400, 4pi/400], datum (1/sqrt(rho))[m(x/rho) + i m(2x/rho)] with
// rho = 1e-10.
struct ExampleConfig {
    double c0 = 73.55418773631645;
    double omega = 100.0;
    double t0 = 3.0 * M_PI / 400.0;
    double T = M_PI / 400.0;
    double rho = 1e-10;
    Mollifier mollifier = Mollifier::Rescaled;
};

OscillatingCoefficient make_coefficient(const ExampleConfig& cfg);
AnalyticProfile build_datum(double rho);

struct AuditRow {
    std::string name;
    std::optional<double> paper;    // the published value, when one exists
    std::optional<double> engine;   // standard double-precision path
    double oracle = 0.0;            // extended-precision value
    std::string oracle_digits;      // 30 significant digits
    double rel_vs_paper = 0.0;      // |oracle-paper|/|paper| when paper present
    double rel_vs_engine = 0.0;
    bool cancellation_limited = false;
    std::string note;
};

struct Section5Report {
    ExampleConfig config;
    std::vector<AuditRow> rows;
    BlowupParameters oracle_params;   // assembled from oracle values
    BlowupVerdict oracle_verdict;     // checker run on the oracle parameters
    BlowupVerdict engine_verdict;     // checker run on the double-precision path
    // Theorem (i)-chain sub-conditions evaluated on oracle values
    bool chain_lambda_negative = false;
    bool chain_discriminant_positive = false;
    bool chain_theta_minus_small = false;   // theta_- < 1e-8
    bool chain_T_exceeds_theta_minus = false;
    bool chain_smallness = false;           // alpha+beta*theta_-^2 < bound/2
    double theta_minus_from_paper_ingredients = 0.0;   // formula wiring check
    double implied_phi3_from_paper_delta = 0.0;
};

// Computes every reported quantity two ways (double engine + >=50-digit MPFR
// oracle via closed forms and tanh-sinh quadrature of the rho-reduced
// integrals) and flags discrepancies against the published digits.
Section5Report reproduce_report(const ExampleConfig& cfg);

// plot-data CSVs: coefficient, mollifiers, weight, m, m', Re u0 (rho = 0.1)
void write_figure_csvs(const ExampleConfig& cfg, const std::string& out_dir);

}  // namespace nlslab::section5
