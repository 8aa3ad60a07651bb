#include "nlslab/criteria.hpp"

#include <cmath>
#include <stdexcept>

namespace nlslab {

std::string to_string(BlowupCase c) {
    switch (c) {
        case BlowupCase::CaseI: return "case_i";
        case BlowupCase::CaseII: return "case_ii";
        case BlowupCase::CaseIII: return "case_iii";
        case BlowupCase::None: return "none";
        case BlowupCase::Indeterminate: return "indeterminate";
    }
    return "?";
}

std::string to_string(CondStatus s) {
    switch (s) {
        case CondStatus::Holds: return "holds";
        case CondStatus::Fails: return "fails";
        case CondStatus::Indeterminate: return "indeterminate";
    }
    return "?";
}

namespace {

// strict "lhs < rhs" with an error band
Margin less_than(std::string name, double lhs, double rhs, double eps) {
    Margin m{std::move(name), lhs, rhs, rhs - lhs, CondStatus::Indeterminate};
    if (lhs < rhs - eps) m.status = CondStatus::Holds;
    else if (lhs > rhs + eps) m.status = CondStatus::Fails;
    return m;
}

Margin greater_than(std::string name, double lhs, double rhs, double eps) {
    Margin m{std::move(name), lhs, rhs, lhs - rhs, CondStatus::Indeterminate};
    if (lhs > rhs + eps) m.status = CondStatus::Holds;
    else if (lhs < rhs - eps) m.status = CondStatus::Fails;
    return m;
}

CondStatus combine(const std::vector<Margin>& ms) {
    bool indet = false;
    for (const auto& m : ms) {
        if (m.status == CondStatus::Fails) return CondStatus::Fails;
        if (m.status == CondStatus::Indeterminate) indet = true;
    }
    return indet ? CondStatus::Indeterminate : CondStatus::Holds;
}

struct CaseEval {
    std::vector<Margin> margins;
    CondStatus status = CondStatus::Fails;
    std::optional<double> horizon;
};

CaseEval eval_case_i(const BlowupParameters& p, double T, std::optional<double> bound) {
    CaseEval ev;
    const double err = p.quadrature_error;
    ev.margins.push_back(less_than("lambda < 0", p.lambda, 0.0, err));
    const double disc_eps = err * (2.0 * std::abs(p.lambda) + 4.0 * std::abs(p.alpha) +
                                   4.0 * std::abs(p.beta) + 1.0);
    ev.margins.push_back(greater_than("lambda^2 > 4*alpha*beta", p.lambda * p.lambda,
                                      4.0 * p.alpha * p.beta, disc_eps));
    if (p.theta_minus) {
        ev.margins.push_back(greater_than("T > theta_minus", T, *p.theta_minus, 0.0));
        if (bound) {
            const double lhs = p.alpha + p.beta * (*p.theta_minus) * (*p.theta_minus);
            ev.margins.push_back(
                less_than("alpha + beta*theta_minus^2 < bound/2", lhs, 0.5 * *bound, err));
        }
    } else {
        ev.margins.push_back(Margin{"T > theta_minus", T, 0.0, 0.0, CondStatus::Fails});
        ev.margins.back().name += " (theta_minus absent)";
    }
    ev.status = combine(ev.margins);
    ev.horizon = p.theta_minus;
    return ev;
}

CaseEval eval_case_ii(const BlowupParameters& p, double T, std::optional<double> bound) {
    CaseEval ev;
    const double err = p.quadrature_error;
    if (p.tau_crit) {
        ev.margins.push_back(greater_than("T > tau_crit", T, *p.tau_crit, 0.0));
    } else {
        ev.margins.push_back(Margin{"T > tau_crit", T, 0.0, 0.0, CondStatus::Fails});
        ev.margins.back().name += " (tau_crit absent)";
    }
    // the paper's literal theta_+ comparison, logged for fidelity only
    if (p.theta_plus) {
        Margin lit = greater_than("T > theta_plus (literal, informational)", T, *p.theta_plus, 0.0);
        ev.margins.push_back(lit);
    }
    if (bound) {
        ev.margins.push_back(
            less_than("2*alpha*gamma < bound", 2.0 * p.alpha * p.gamma, *bound,
                      err * (2.0 * std::abs(p.gamma) + 1.0)));
    }
    // informational margins do not gate the case
    std::vector<Margin> gating;
    for (const auto& m : ev.margins)
        if (m.name.find("informational") == std::string::npos) gating.push_back(m);
    ev.status = combine(gating);
    ev.horizon = p.tau_crit;
    return ev;
}

CaseEval eval_case_iii(const BlowupParameters& p, double T, std::optional<double> bound) {
    CaseEval ev;
    const double err = p.quadrature_error;
    ev.margins.push_back(less_than("lambda < 0", p.lambda, 0.0, err));
    if (p.theta_zero) {
        ev.margins.push_back(greater_than("T > theta_zero", T, *p.theta_zero, 0.0));
    } else {
        ev.margins.push_back(Margin{"T > theta_zero (absent)", T, 0.0, 0.0, CondStatus::Fails});
    }
    if (bound) ev.margins.push_back(less_than("alpha < bound/2", p.alpha, 0.5 * *bound, err));
    ev.status = combine(ev.margins);
    ev.horizon = p.theta_zero;
    return ev;
}

BlowupVerdict run_checks(const BlowupParameters& p, const OscillatingCoefficient& coeff, double t0,
                         double T, std::optional<double> bound) {
    const WindowCheck wc = coeff.validate_window(t0, T);
    if (!wc.valid)
        throw std::invalid_argument("check: invalid coefficient window: " + wc.diagnostic);

    BlowupVerdict v;
    v.problem = p.problem;
    v.bound_constant = bound;

    const double err = p.quadrature_error;
    const double half = -0.5 * p.delta;
    Margin e_gt = greater_than("E0 > -delta/2", p.energy0, half, err);
    Margin e_lt = less_than("E0 < -delta/2", p.energy0, half, err);

    if (e_gt.status == CondStatus::Holds) {
        CaseEval ev = eval_case_i(p, T, bound);
        v.margins.push_back(e_gt);
        v.margins.insert(v.margins.end(), ev.margins.begin(), ev.margins.end());
        if (ev.status == CondStatus::Holds) {
            v.matched_case = BlowupCase::CaseI;
            v.predicted_horizon = ev.horizon;
        } else {
            v.matched_case =
                ev.status == CondStatus::Indeterminate ? BlowupCase::Indeterminate : BlowupCase::None;
        }
        return v;
    }
    if (e_lt.status == CondStatus::Holds) {
        CaseEval ev = eval_case_ii(p, T, bound);
        v.margins.push_back(e_lt);
        v.margins.insert(v.margins.end(), ev.margins.begin(), ev.margins.end());
        if (ev.status == CondStatus::Holds) {
            v.matched_case = BlowupCase::CaseII;
            v.predicted_horizon = ev.horizon;
        } else {
            v.matched_case =
                ev.status == CondStatus::Indeterminate ? BlowupCase::Indeterminate : BlowupCase::None;
        }
        return v;
    }

    // |E0 + delta/2| within the error band: case (iii) territory, with the
    // case (i) margins also attached when they plausibly hold
    Margin band{"|E0 + delta/2| <= err", std::abs(p.energy0 - half), err,
                err - std::abs(p.energy0 - half), CondStatus::Holds};
    v.margins.push_back(band);
    CaseEval e3 = eval_case_iii(p, T, bound);
    v.margins.insert(v.margins.end(), e3.margins.begin(), e3.margins.end());
    CaseEval e1 = eval_case_i(p, T, bound);
    if (e3.status == CondStatus::Holds && e1.status == CondStatus::Holds) {
        // both (i) and (iii) plausible inside the band
        v.matched_case = BlowupCase::Indeterminate;
        v.margins.insert(v.margins.end(), e1.margins.begin(), e1.margins.end());
        v.predicted_horizon = e3.horizon;
        return v;
    }
    if (e3.status == CondStatus::Holds) {
        v.matched_case = BlowupCase::CaseIII;
        v.predicted_horizon = e3.horizon;
        return v;
    }
    v.matched_case =
        e3.status == CondStatus::Indeterminate ? BlowupCase::Indeterminate : BlowupCase::None;
    return v;
}

}  // namespace

BlowupVerdict check_line(const BlowupParameters& params, const OscillatingCoefficient& coeff,
                         double t0, double T) {
    if (params.problem != Domain::Line)
        throw std::invalid_argument("check_line: parameters assembled for the wrong problem");
    const double a_end = coeff.eval(t0 + T);
    if (!(a_end > 0.0)) throw std::invalid_argument("check_line: A(t0+T) must be positive");
    const double bound = std::sqrt(3.0 / (8.0 * a_end));
    return run_checks(params, coeff, t0, T, bound);
}

BlowupVerdict check_halfline(const BlowupParameters& params, const OscillatingCoefficient& coeff,
                             double t0, double T, double r) {
    if (params.problem != Domain::Halfline)
        throw std::invalid_argument("check_halfline: parameters assembled for the wrong problem");
    if (!(r >= 2.0))
        throw std::invalid_argument(
            "check_halfline: unsupported regime r < 2 (the critical boundary exponent is r = 2; "
            "local solutions are global below it)");
    return run_checks(params, coeff, t0, T, std::nullopt);
}

}  // namespace nlslab
