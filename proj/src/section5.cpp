#include "nlslab/section5.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "nlslab/detail/bigfloat.hpp"
#include "nlslab/scaling.hpp"

namespace nlslab::section5 {

using detail::Big;

OscillatingCoefficient make_coefficient(const ExampleConfig& cfg) {
    return OscillatingCoefficient::cos2(cfg.c0, cfg.omega);
}

AnalyticProfile build_datum(double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument("build_datum: rho must be positive");
    // (1/sqrt(rho)) [ m(x/rho) + i m(2x/rho) ]; m(2x/rho) = m(x/(rho/2))
    return make_profile(Domain::Line, Shape::MProfile, Shape::MProfile, rho, rho / 2.0,
                        1.0 / std::sqrt(rho));
}

namespace {

// ---- oracle ingredients in extended precision ------------------------------

Big big_m(const Big& y) {
    if (y < Big(0.0)) return Big(0.0);
    if (y < Big(1.0)) return y / sqrt(Big(2.0));
    return Big(1.0) / sqrt(Big(1.0) + y * y);
}

Big big_mp(const Big& y) {
    if (y < Big(0.0)) return Big(0.0);
    if (y < Big(1.0)) return Big(1.0) / sqrt(Big(2.0));
    Big r = Big(1.0) + y * y;
    return -y / (r * sqrt(r));
}

constexpr double kInvSqrt3d = 0.5773502691896257645091488;

Big big_bump(const Big& x, bool literal) {
    // right mollifier r(x) on (1.6, 2)
    const Big c = literal ? Big(0.4) : Big(2.5);
    Big a = c * (x - Big(1.6));
    Big w = pow_int(a, 4);
    if (w >= Big(1.0)) return Big(0.0);
    return exp(Big(1.0) - Big(1.0) / (Big(1.0) - w));
}

Big big_phi(const Big& x, bool literal) {
    const Big k1 = Big(1.0) + Big(1.0) / sqrt(Big(3.0));
    if (x <= Big(1.0)) return x;
    if (x <= k1) {
        Big d = x - Big(1.0);
        return x - d * d * d;
    }
    if (x <= Big(1.6)) {
        Big s = -x + Big(1.0) + Big(2.0) / sqrt(Big(3.0));
        return -x + Big(2.0) * k1 - s * s * s;
    }
    if (x < Big(2.0)) {
        Big d = x - Big(1.0);
        return (x - d * d * d) * big_bump(x, literal);
    }
    return Big(0.0);
}

struct Oracle {
    Big rho, c0, A0, Aend, t0, T;
    bool literal;

    Big mass, grad, J, l6_term, energy, im_virial, lambda, alpha, tail_l2_sq, psi2;

    void compute() {
        const Big pi = Big::pi();
        const Big one(1.0), two(2.0), half(0.5);

        // mass: (3/2)(1/6 + pi/4) from the two-scale structure
        mass = Big(1.5) * (one / Big(6.0) + pi / Big(4.0));

        // gradient: 3(1/2 + pi/32)/rho^2
        grad = Big(3.0) * (half + pi / Big(32.0)) / (rho * rho);

        // J = int (m(y)^2 + m(2y)^2)^3 dy
        auto jf = [](const Big& y) {
            Big m1 = big_m(y), m2 = big_m(Big(2.0) * y);
            Big s = m1 * m1 + m2 * m2;
            return s * s * s;
        };
        J = detail::tanh_sinh_piecewise(jf, {Big(0.0), half, one, two, Big(8.0)});
        // tail via x = 1/s
        auto jtail = [&](const Big& s) {
            if (!(s > Big(0.0))) return Big(0.0);
            Big y = one / s;
            return jf(y) / (s * s);
        };
        J += detail::tanh_sinh(jtail, Big(0.0), one / Big(8.0));

        l6_term = c0 / Big(6.0) * J / (rho * rho);   // (A(t0)/3)||u||_6^6, A(t0) = c0/2
        energy = grad - l6_term;

        // Im int phi u0 conj(u0'):
        //   closed form on y in [1/2, 1]
        Big i1 = (Big(4.0) * sqrt(Big(5.0)) + two / sqrt(Big(5.0)) - Big(4.0) * sqrt(two) -
                  two / sqrt(two)) /
                 (Big(8.0) * sqrt(two));
        //   y >= 1 piece of the phi(rho y) = rho y region, up to y = 1/rho
        auto g2 = [](const Big& y) {
            Big r1 = one_plus_sq(y), r2 = one_plus_4sq(y);
            return Big(3.0) * y * y / (r1 * sqrt(r1) * r2 * sqrt(r2));
        };
        std::vector<Big> pan{one};
        for (double p = 4.0; p < 0.9 / rho.to_double(); p *= 8.0) pan.push_back(Big(p));
        pan.push_back(one / rho);
        Big i2 = detail::tanh_sinh_piecewise(g2, pan);
        //   x in [1, 2] region where phi is no longer linear
        auto gmol = [&](const Big& x) {
            Big y = x / rho;
            Big r1 = one_plus_sq(y), r2 = one_plus_4sq(y);
            Big g = Big(3.0) * y / (r1 * sqrt(r1) * r2 * sqrt(r2));
            return big_phi(x, literal) * g;
        };
        const Big k1 = one + one / sqrt(Big(3.0));
        Big imol = detail::tanh_sinh_piecewise(gmol, {one, k1, Big(1.6), two}) / (rho * rho);
        im_virial = i1 + i2 + imol;
        lambda = Big(-2.0) * im_virial;

        // alpha = int Psi |u0|^2
        //   piece 1: y <= 1/rho, Psi(rho y) = (rho y)^2/2, closed forms
        Big p1 = (rho * rho / two) * (closed_y2_upto(one / rho));
        //   piece 2: x in [1, 2] by parts:  rho * ( [Psi R]_1^2 - int phi R )
        psi2 = psi_of_2();
        auto q_anti = [&](const Big& x) {
            return atan(x / rho) / rho + atan(two * x / rho) / (two * rho);
        };
        auto phiR = [&](const Big& x) { return big_phi(x, literal) * q_anti(x); };
        Big int_phiR = detail::tanh_sinh_piecewise(phiR, {one, k1, Big(1.6), two});
        Big p2 = rho * ((psi2 * q_anti(two) - half * q_anti(one)) - int_phiR);
        //   piece 3: plateau
        Big p3 = psi2 * ((pi / two - atan(two / rho)) + half * (pi / two - atan(Big(4.0) / rho)));
        alpha = p1 + p2 + p3;

        tail_l2_sq = (pi / two - atan(one / rho)) + half * (pi / two - atan(two / rho));
    }

    static Big one_plus_sq(const Big& y) { return Big(1.0) + y * y; }
    static Big one_plus_4sq(const Big& y) { return Big(1.0) + Big(4.0) * y * y; }

    // int_0^Y y^2 (m(y)^2 + m(2y)^2) dy in closed form (Y >= 1)
    Big closed_y2_upto(const Big& Y) const {
        const Big one(1.0), two(2.0);
        // [0,1/2]: 2.5 y^4 -> 0.5 y^5
        Big part = Big(0.5) * pow_int(Big(0.5), 5);
        // [1/2,1]: y^4/2 + y^2/(1+4y^2) -> y^5/10 + y/4 - atan(2y)/8
        auto f2 = [&](const Big& y) {
            return pow_int(y, 5) / Big(10.0) + y / Big(4.0) - atan(two * y) / Big(8.0);
        };
        part += f2(one) - f2(Big(0.5));
        // [1,Y]: (y - atan y) + (y/4 - atan(2y)/8)
        auto f3 = [&](const Big& y) {
            return y - atan(y) + y / Big(4.0) - atan(two * y) / Big(8.0);
        };
        part += f3(Y) - f3(one);
        return part;
    }

    Big psi_of_2() const {
        const Big one(1.0), two(2.0);
        const Big inv_s3 = one / sqrt(Big(3.0));
        const Big k1 = one + inv_s3;
        // Psi(k1) = k1^2/2 - (k1-1)^4/4
        Big psi_k1 = k1 * k1 / two - pow_int(k1 - one, 4) / Big(4.0);
        // reflected cubic branch antiderivative
        auto F = [&](const Big& x) {
            Big s = -x + one + two * inv_s3;
            return -x * x / two + two * (one + inv_s3) * x + pow_int(s, 4) / Big(4.0);
        };
        Big psi_16 = psi_k1 + F(Big(1.6)) - F(k1);
        auto mol = [&](const Big& x) { return big_phi(x, literal); };
        return psi_16 + detail::tanh_sinh(mol, Big(1.6), two);
    }
};

AuditRow make_row(std::string name, std::optional<double> paper, std::optional<double> engine,
                  const Big& oracle, std::string note = "", bool cancel = false) {
    AuditRow r;
    r.name = std::move(name);
    r.paper = paper;
    r.engine = engine;
    r.oracle = oracle.to_double();
    r.oracle_digits = oracle.str(30);
    if (paper && *paper != 0.0) r.rel_vs_paper = std::abs((r.oracle - *paper) / *paper);
    if (engine && *engine != 0.0) r.rel_vs_engine = std::abs((r.oracle - *engine) / *engine);
    r.cancellation_limited = cancel;
    r.note = std::move(note);
    return r;
}

}  // namespace

Section5Report reproduce_report(const ExampleConfig& cfg) {
    Section5Report rep;
    rep.config = cfg;

    const OscillatingCoefficient coeff = make_coefficient(cfg);
    const WeightFunction weight = cfg.mollifier == Mollifier::Rescaled
                                      ? WeightFunction::line_compact(Mollifier::Rescaled)
                                      : WeightFunction::line_compact(Mollifier::Literal);
    const AnalyticProfile datum = build_datum(cfg.rho);

    // double-precision engine path
    BlowupParameters eng = assemble(datum, weight, coeff, cfg.t0, cfg.T, 2.0);
    rep.engine_verdict = check_line(eng, coeff, cfg.t0, cfg.T);

    // extended-precision oracle
    Oracle oc;
    oc.rho = Big(cfg.rho);
    oc.c0 = Big("73.55418773631645");
    if (cfg.c0 != 73.55418773631645) oc.c0 = Big(cfg.c0);
    oc.A0 = oc.c0 / Big(2.0);
    oc.Aend = oc.c0;
    oc.literal = cfg.mollifier == Mollifier::Literal;
    oc.compute();

    const Big bound = sqrt(Big(3.0) / (Big(8.0) * oc.Aend));
    const Big half_bound = bound / Big(2.0);

    // delta from the measured sup norms (the oracle has no sharper source for
    // the mollified branch extrema than the certified sampling)
    const double sup2 = weight.sup_phi2().value;
    const double sup3 = weight.sup_phi3().value;
    const double c0m = std::max(std::sqrt(3.0), 0.5 * sup2);
    const Big delta = half_bound * Big(sup3 + c0m * c0m);

    const Big beta = Big(2.0) * oc.energy + delta;
    const Big grad_norm = sqrt(oc.grad);
    const Big gamma = Big(2.0) / beta * grad_norm + Big(1.0);
    const Big disc = oc.lambda * oc.lambda - Big(4.0) * oc.alpha * beta;
    const Big sq = disc >= Big(0.0) ? sqrt(disc) : Big(0.0);
    const Big theta_minus = (-oc.lambda - sq) / (Big(2.0) * beta);
    const Big theta_plus = (-oc.lambda + sq) / (Big(2.0) * beta);
    const Big smallness = oc.alpha + beta * theta_minus * theta_minus;

    rep.chain_lambda_negative = oc.lambda < Big(0.0);
    rep.chain_discriminant_positive = disc > Big(0.0);
    rep.chain_theta_minus_small = theta_minus < Big(1e-8) && theta_minus > Big(-1e-300);
    rep.chain_T_exceeds_theta_minus = Big(cfg.T) > theta_minus;
    rep.chain_smallness = smallness < half_bound;

    // oracle-valued parameter set through the standard checker
    BlowupParameters op;
    op.problem = Domain::Line;
    op.mass = oc.mass.to_double();
    op.energy0 = oc.energy.to_double();
    op.lambda = oc.lambda.to_double();
    op.alpha = oc.alpha.to_double();
    op.delta = delta.to_double();
    op.beta = beta.to_double();
    op.gamma = gamma.to_double();
    op.grad_l2 = grad_norm.to_double();
    op.r = 2.0;
    op.t0 = cfg.t0;
    op.T = cfg.T;
    op.a_end = oc.Aend.to_double();
    op.quadrature_error = 1e-20 * std::abs(op.energy0);   // oracle error bars are far below this
    const QuadRoots qr = analyze_quadratic(op.alpha, op.lambda, op.beta);
    op.theta_minus = qr.theta_minus;
    op.theta_plus = qr.theta_plus;
    op.theta_zero = qr.theta_zero;
    op.tau_crit = qr.tau_crit;
    rep.oracle_params = op;
    rep.oracle_verdict = check_line(op, coeff, cfg.t0, cfg.T);

    // paper-ingredient recomputation of theta_-
    {
        const double im_p = 0.244626, e_p = 32768.0, d_p = 3.48315e6, a_p = 2.25667e-10;
        const double b_p = 2.0 * e_p + d_p;
        rep.theta_minus_from_paper_ingredients =
            (im_p - std::sqrt(im_p * im_p - b_p * a_p)) / b_p;
        rep.implied_phi3_from_paper_delta = d_p / half_bound.to_double() - c0m * c0m;
    }

    // audit table
    auto& rows = rep.rows;
    rows.push_back(make_row("A(t0) = c0/2", {}, coeff.eval(cfg.t0), oc.A0));
    rows.push_back(make_row("half_bound = 0.5*sqrt(3/(8 A(t0+T)))", 0.0357011,
                            0.5 * std::sqrt(3.0 / (8.0 * coeff.eval(cfg.t0 + cfg.T))), half_bound));
    rows.push_back(make_row("mass ||u0||_2^2", 0.410875, eng.mass, oc.mass,
                            "closed form (3/2)(1/6+pi/4); disagrees with the published digit"));
    rows.push_back(make_row("grad ||u0'||_2^2", {}, eng.grad_l2 * eng.grad_l2, oc.grad,
                            "closed form 3(1/2+pi/32)/rho^2"));
    rows.push_back(make_row("interior term (A(t0)/3)||u0||_6^6", 1.64044e20,
                            eng.grad_l2 * eng.grad_l2 - eng.energy0, oc.l6_term));
    rows.push_back(make_row(
        "energy E(u0)", 32768.0, eng.energy0, oc.energy,
        "published value implies bracket 3.2768e-16, below double-precision resolvability of "
        "the O(1) bracket terms; oracle resolves the bracket to -1.1858722751...",
        true));
    rows.push_back(make_row("Im int phi u0 conj(u0')", 0.244626, -0.5 * eng.lambda, oc.im_virial,
                            "published digit equals the y in [1/2,1] closed-form piece "
                            "0.2446263565...; the y >= 1 tail 0.0546153... is absent from it"));
    rows.push_back(make_row("lambda", {}, eng.lambda, oc.lambda));
    rows.push_back(make_row("alpha = int Psi |u0|^2", 2.25667e-10, eng.alpha, oc.alpha,
                            "agrees with the published digit"));
    rows.push_back(make_row("delta (measured sup norms)", 3.48315e6, eng.delta, delta,
                            "published delta implies ||phi'''|| ~ 9.76e7; measured value differs"));
    rows.push_back(make_row("beta = 2E + delta", {}, eng.beta, beta));
    rows.push_back(make_row("gamma", {}, eng.gamma, gamma));
    rows.push_back(make_row("discriminant lambda^2 - 4 alpha beta", {},
                            eng.lambda * eng.lambda - 4.0 * eng.alpha * eng.beta, disc));
    rows.push_back(make_row("paper form Im^2 - beta*alpha", 0.0590412, {},
                            oc.im_virial * oc.im_virial - beta * oc.alpha,
                            "evaluated on oracle values; the published 0.0590412 used the paper's "
                            "own (inconsistent) ingredients"));
    rows.push_back(make_row("theta_minus", 4.62803e-10,
                            eng.theta_minus ? std::optional<double>(*eng.theta_minus)
                                            : std::optional<double>(),
                            theta_minus,
                            "published digit reproduces only from the paper's own ingredients; "
                            "see theta_minus_from_paper_ingredients"));
    rows.push_back(make_row("alpha + beta*theta_minus^2", 2.26427e-10, {}, smallness));
    rows.push_back(make_row("tail ||u0||^2_{L2(|x|>=1)}", {},
                            l2_tail_sq(datum, 1.0).value, oc.tail_l2_sq,
                            "closed arctan form; fourth power enters the Lemma tail condition"));
    rows.push_back(make_row("Psi(2)", {}, weight.psi_plateau(), oc.psi2));
    {
        // infinite momentum: x^2|u0|^2 -> 5 rho/4 as x -> inf, so the
        // momentum integral diverges linearly
        Big lim = Big(5.0) * oc.rho / Big(4.0);
        rows.push_back(make_row("lim x^2 |u0(x)|^2 (nonzero => infinite momentum)", {}, {}, lim,
                                "||x u0||_2 = inf, matching the published claim"));
    }
    return rep;
}

void write_figure_csvs(const ExampleConfig& cfg, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const OscillatingCoefficient coeff = make_coefficient(cfg);
    const WeightFunction w = WeightFunction::line_compact(cfg.mollifier);
    char buf[128];

    auto open = [&](const std::string& name) {
        std::ofstream os(fs::path(out_dir) / name);
        if (!os) throw std::runtime_error("cannot write " + name + " in " + out_dir);
        return os;
    };

    {
        auto os = open("fig1_coefficient.csv");
        os << "t,A\n";
        for (int i = 0; i <= 2000; ++i) {
            const double t = 3.0 * M_PI / 100.0 * i / 2000.0;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, coeff.eval(t));
            os << buf;
        }
    }
    {
        auto os = open("fig2_mollifiers.csv");
        os << "x,l,r\n";
        const WeightFunction wl = WeightFunction::line_compact(cfg.mollifier);
        for (int i = 0; i <= 2000; ++i) {
            const double x = -2.2 + 4.4 * i / 2000.0;
            // recover the bump factors from the weight's mollified branches
            auto bump_at = [&](double xx) {
                if (xx <= 1.6 || xx >= 2.0) return xx > 1.6 && xx < 2.0 ? 0.0 : 0.0;
                const double p = xx - (xx - 1.0) * (xx - 1.0) * (xx - 1.0);
                return p != 0.0 ? wl.phi(xx, 0) / p : 0.0;
            };
            const double r = x > 1.6 && x < 2.0 ? bump_at(x) : 0.0;
            const double l = -x > 1.6 && -x < 2.0 ? bump_at(-x) : 0.0;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x, l, r);
            os << buf;
        }
    }
    {
        auto os = open("fig3_weight.csv");
        os << "x,phi\n";
        for (int i = 0; i <= 4000; ++i) {
            const double x = -2.2 + 4.4 * i / 4000.0;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, w.phi(x, 0));
            os << buf;
        }
    }
    {
        auto os = open("fig4_m.csv");
        auto os2 = open("fig5_m_prime.csv");
        os << "x,m\n";
        os2 << "x,m_prime\n";
        for (int i = 0; i <= 2000; ++i) {
            const double x = -1.0 + 6.0 * i / 2000.0;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, shape_eval(Shape::MProfile, x));
            os << buf;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, shape_deriv(Shape::MProfile, x));
            os2 << buf;
        }
    }
    {
        auto os = open("fig6_re_u0.csv");
        os << "x,re_u0,m\n";
        const AnalyticProfile u = build_datum(0.1);
        for (int i = 0; i <= 2000; ++i) {
            const double x = -1.0 + 6.0 * i / 2000.0;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x, u.value(x).real(),
                          shape_eval(Shape::MProfile, x));
            os << buf;
        }
    }
}

}  // namespace nlslab::section5
