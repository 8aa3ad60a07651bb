#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlslab/functionals.hpp"

namespace nlslab {

enum class CondStatus { Holds, Fails, Indeterminate };

struct Margin {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;   // how far the inequality holds (negative = fails)
    CondStatus status = CondStatus::Fails;
};

enum class BlowupCase { CaseI, CaseII, CaseIII, None, Indeterminate };

std::string to_string(BlowupCase c);
std::string to_string(CondStatus s);

struct BlowupVerdict {
    Domain problem = Domain::Line;
    BlowupCase matched_case = BlowupCase::None;
    std::vector<Margin> margins;
    std::optional<double> predicted_horizon;   // offset from t0 (tau units)
    std::optional<double> bound_constant;      // sqrt(3/(8 A(t0+T))), line only
};

// Sufficient blow-up conditions, checked in the order (i) -> (ii) -> (iii)
// with every inequality margin recorded.  Comparisons within the propagated
// quadrature error band return Indeterminate instead of a verdict.
// Throws when the coefficient window [t0, t0+T) is invalid.
BlowupVerdict check_line(const BlowupParameters& params, const OscillatingCoefficient& coeff,
                         double t0, double T);

// Same cases without the smallness side conditions; requires r >= 2
// (the critical boundary exponent) and throws an unsupported-regime error
// otherwise.
BlowupVerdict check_halfline(const BlowupParameters& params, const OscillatingCoefficient& coeff,
                             double t0, double T, double r);

}  // namespace nlslab
