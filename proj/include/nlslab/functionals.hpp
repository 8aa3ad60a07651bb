#pragma once

#include <complex>
#include <optional>

#include "nlslab/oscillator.hpp"
#include "nlslab/profile.hpp"
#include "nlslab/sampled.hpp"
#include "nlslab/weights.hpp"

namespace nlslab {

// value with propagated quadrature error bound
struct Scalar {
    double value = 0.0;
    double error = 0.0;
};

enum class L2Region { Full, TailGe1 };

// ---- norms and traces on analytic profiles (change-of-variables exact in
// ---- the scale factors, so rho down to 1e-10 costs no precision)
Scalar l2_norm_sq(const AnalyticProfile& u, L2Region region = L2Region::Full);
Scalar l6_norm_6(const AnalyticProfile& u);
Scalar h1_seminorm_sq(const AnalyticProfile& u);
std::complex<double> trace_at_zero(const AnalyticProfile& u);
// mass outside |x| >= radius (the Lemma tail-condition ingredient)
Scalar l2_tail_sq(const AnalyticProfile& u, double radius);

// ---- sampled-field counterparts; line uses the spectral derivative,
// ---- halfline centered differences with one-sided ends
double h1_seminorm_sq(const SampledField& u);

// ---- energies
// line:      ||u_x||^2 - (A(t)/3)||u||_6^6
// halfline:  ||u_x||^2 - A(t)*(2/(r+2))|u(0)|^{r+2}
Scalar energy(const AnalyticProfile& u, const OscillatingCoefficient& coeff, double t,
              double r = 2.0);

// ---- virial scalars
Scalar lambda_virial(const AnalyticProfile& u0, const WeightFunction& w);   // -2 Im int phi u0 conj(u0')
Scalar alpha_weighted_mass(const AnalyticProfile& u0, const WeightFunction& w);

// ---- delta constants
// 0.5*sqrt(3/(8 A(t0+T))) * (||phi'''|| + max{sqrt(3), ||phi''||/2}^2)
double delta_line(const WeightFunction& w, const OscillatingCoefficient& coeff, double t0, double T);
// 0.5*||phi'''||*mass = 1.5*mass with the closed-form sup norm
double delta_halfline(const WeightFunction& w, double mass);

// The scalar calculus attached to a datum/weight/coefficient triple.
struct BlowupParameters {
    Domain problem = Domain::Line;
    double mass = 0.0;
    double energy0 = 0.0;
    double lambda = 0.0;
    double alpha = 0.0;
    double delta = 0.0;
    double beta = 0.0;       // 2*energy0 + delta
    double gamma = 0.0;      // (2/beta)*||u0'|| + 1, evaluated literally
    std::optional<double> theta_minus, theta_plus, theta_zero;
    std::optional<double> tau_crit;   // inf{tau>0 : p(tau)<0}, p = alpha+lambda*tau+beta*tau^2
    double quadrature_error = 0.0;
    double grad_l2 = 0.0;    // ||u0'||_{L2(G)}
    double r = 2.0;
    double a_end = 0.0;      // A(t0+T)
    double t0 = 0.0, T = 0.0;

    double p_of(double tau) const { return alpha + lambda * tau + beta * tau * tau; }
};

BlowupParameters assemble(const AnalyticProfile& u0, const WeightFunction& w,
                          const OscillatingCoefficient& coeff, double t0, double T,
                          double r = 2.0);

// stable quadratic roots of beta*tau^2 + lambda*tau + alpha (paper's theta-+/-)
struct QuadRoots {
    std::optional<double> theta_minus, theta_plus, theta_zero;
    std::optional<double> tau_crit;
};
QuadRoots analyze_quadratic(double alpha, double lambda, double beta);

}  // namespace nlslab
