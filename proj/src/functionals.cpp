#include "nlslab/functionals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlslab/detail/fft.hpp"
#include "nlslab/quadrature.hpp"

namespace nlslab {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

// reduced-coordinate integral of F over the component's domain, panelized at
// shape knots and closed off with 1/s-mapped tails
quad::Result reduced_integral(const quad::Fn& F, const std::vector<double>& knots, double y_lo,
                              bool lo_infinite, double span = 8.0) {
    std::vector<double> pts;
    double hi = span;
    for (double k : knots) hi = std::max(hi, std::abs(k) + 1.0);
    if (!lo_infinite) hi = std::max(hi, y_lo + 1.0);
    if (!lo_infinite) pts.push_back(y_lo);
    for (double k : knots)
        if (lo_infinite || k > y_lo) pts.push_back(k);
    pts.push_back(hi);
    if (lo_infinite) pts.insert(pts.begin(), -hi);

    quad::Result total = quad::integrate(F, pts);
    total += quad::integrate_to_infinity(F, hi);
    if (lo_infinite) {
        auto refl = [&](double y) { return F(-y); };
        total += quad::integrate_to_infinity(refl, hi);
    }
    return total;
}

// per-component integral of shape(y)^p over the reduced domain
quad::Result component_power_integral(const Component& c, Domain d, int p, bool derivative) {
    auto F = [&](double y) {
        const double v = derivative ? shape_deriv(c.shape, y) : shape_eval(c.shape, y);
        double r = 1.0;
        for (int i = 0; i < p; ++i) r *= v;
        return r;
    };
    const bool line = d == Domain::Line;
    const double y_lo = line ? 0.0 : (0.0 - c.center) / c.scale;
    return reduced_integral(F, shape_knots(c.shape), y_lo, line);
}

}  // namespace

Scalar l2_norm_sq(const AnalyticProfile& u, L2Region region) {
    if (region == L2Region::TailGe1) return l2_tail_sq(u, 1.0);
    const double a2 = u.amplitude * u.amplitude;
    Scalar out;
    for (const Component* c : {&u.re, &u.im}) {
        if (c->shape == Shape::Zero) continue;
        auto r = component_power_integral(*c, u.domain, 2, false);
        out.value += a2 * c->scale * r.value;
        out.error += a2 * c->scale * r.abs_error;
    }
    return out;
}

Scalar l2_tail_sq(const AnalyticProfile& u, double radius) {
    const double a2 = u.amplitude * u.amplitude;
    Scalar out;
    for (const Component* c : {&u.re, &u.im}) {
        if (c->shape == Shape::Zero) continue;
        auto F = [&](double y) {
            const double v = shape_eval(c->shape, y);
            return v * v;
        };
        // |x| >= radius maps to y >= (radius-center)/scale and (line only)
        // y <= (-radius-center)/scale
        const double y_hi = (radius - c->center) / c->scale;
        quad::Result r = quad::integrate_to_infinity(F, y_hi);
        if (u.domain == Domain::Line) {
            auto refl = [&](double y) { return F(-y); };
            r += quad::integrate_to_infinity(refl, -((-radius - c->center) / c->scale));
        }
        out.value += a2 * c->scale * r.value;
        out.error += a2 * c->scale * r.abs_error;
    }
    return out;
}

Scalar l6_norm_6(const AnalyticProfile& u) {
    const double a6 = std::pow(u.amplitude, 6);
    Scalar out;
    const bool re0 = u.re.shape == Shape::Zero, im0 = u.im.shape == Shape::Zero;
    if (re0 && im0) return out;
    if (re0 || im0) {
        const Component& c = re0 ? u.im : u.re;
        auto r = component_power_integral(c, u.domain, 6, false);
        out.value = a6 * c.scale * r.value;
        out.error = a6 * c.scale * r.abs_error;
        return out;
    }
    // cross terms: integrate (re^2+im^2)^3 in the re component's reduced frame
    const Component &f = u.re, &g = u.im;
    auto F = [&](double y) {
        const double x = f.center + f.scale * y;
        const double a = shape_eval(f.shape, y);
        const double b = shape_eval(g.shape, (x - g.center) / g.scale);
        const double s = a * a + b * b;
        return s * s * s;
    };
    std::vector<double> kn = shape_knots(f.shape);
    for (double k : shape_knots(g.shape)) kn.push_back((g.center + k * g.scale - f.center) / f.scale);
    const bool line = u.domain == Domain::Line;
    auto r = reduced_integral(F, kn, line ? 0.0 : -f.center / f.scale, line,
                              8.0 * std::max(1.0, g.scale / f.scale));
    out.value = a6 * f.scale * r.value;
    out.error = a6 * f.scale * r.abs_error;
    return out;
}

Scalar h1_seminorm_sq(const AnalyticProfile& u) {
    const double a2 = u.amplitude * u.amplitude;
    Scalar out;
    for (const Component* c : {&u.re, &u.im}) {
        if (c->shape == Shape::Zero) continue;
        auto r = component_power_integral(*c, u.domain, 2, true);
        out.value += a2 / c->scale * r.value;
        out.error += a2 / c->scale * r.abs_error;
    }
    return out;
}

double h1_seminorm_sq(const SampledField& u) {
    const int n = u.grid.n;
    quad::KahanSum s;
    if (u.domain == Domain::Line) {
        detail::Fft fft(n);
        std::vector<std::complex<double>> hat = u.values;
        fft.forward(hat);
        const double L = u.grid.x_max;   // domain [-L, L)
        for (int j = 0; j < n; ++j) {
            const int kidx = j <= n / 2 ? j : j - n;
            const double k = M_PI * kidx / L;
            s.add(k * k * std::norm(hat[j]));
        }
        // Parseval for the unnormalized DFT: ||u_x||^2 = (2L/n^2) sum k^2 |U_k|^2
        return s.value() * 2.0 * L / (static_cast<double>(n) * n);
    }
    const double h = u.grid.h;
    std::vector<std::complex<double>> d(n);
    d[0] = (-3.0 * u.values[0] + 4.0 * u.values[1] - u.values[2]) / (2.0 * h);
    d[n - 1] = (3.0 * u.values[n - 1] - 4.0 * u.values[n - 2] + u.values[n - 3]) / (2.0 * h);
    for (int j = 1; j < n - 1; ++j) d[j] = (u.values[j + 1] - u.values[j - 1]) / (2.0 * h);
    for (int j = 0; j < n; ++j) {
        const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
        s.add(w * std::norm(d[j]));
    }
    return s.value() * h;
}

std::complex<double> trace_at_zero(const AnalyticProfile& u) {
    if (u.domain != Domain::Halfline)
        throw std::domain_error("trace_at_zero: halfline profiles only");
    return u.value(0.0);
}

Scalar energy(const AnalyticProfile& u, const OscillatingCoefficient& coeff, double t, double r) {
    const Scalar grad = h1_seminorm_sq(u);
    const double A = coeff.eval(t);
    if (u.domain == Domain::Line) {
        const Scalar l6 = l6_norm_6(u);
        return {grad.value - A / 3.0 * l6.value, grad.error + std::abs(A) / 3.0 * l6.error};
    }
    const double tr = std::abs(trace_at_zero(u));
    const double bterm = A * 2.0 / (r + 2.0) * std::pow(tr, r + 2.0);
    return {grad.value - bterm, grad.error};
}

namespace {

// shared panel builder for weighted integrals against a profile
Scalar weighted_integral(const AnalyticProfile& u, const WeightFunction& w, const quad::Fn& F) {
    std::vector<double> pts = u.knots();
    const bool line = u.domain == Domain::Line;
    const double lo = line ? -w.support_radius() : 0.0;
    double hi;
    Scalar out;
    if (w.kind() == WeightKind::LineCompact) {
        hi = w.support_radius();
        for (double k : w.knots()) pts.push_back(k);
        std::vector<double> inside{lo, hi};
        for (double p : pts)
            if (p > lo && p < hi) inside.push_back(p);
        auto r = quad::integrate(F, inside);
        out.value = r.value;
        out.error = r.abs_error;
        return out;   // phi vanishes beyond the support
    }
    // halfline exponential weight: finite span then mapped tail
    hi = std::max(60.0, u.support_hint());
    std::vector<double> inside{0.0, hi};
    for (double p : pts)
        if (p > 0.0 && p < hi) inside.push_back(p);
    auto r = quad::integrate(F, inside);
    r += quad::integrate_to_infinity(F, hi);
    out.value = r.value;
    out.error = r.abs_error;
    return out;
}

}  // namespace

Scalar lambda_virial(const AnalyticProfile& u0, const WeightFunction& w) {
    const double a2 = u0.amplitude * u0.amplitude;
    auto F = [&](double x) {
        // Im(u conj(u')) = im*re' - re*im'
        const double f = u0.re.value(x), g = u0.im.value(x);
        const double fp = u0.re.deriv(x), gp = u0.im.deriv(x);
        return w.phi(x) * a2 * (g * fp - f * gp);
    };
    Scalar s = weighted_integral(u0, w, F);
    return {-2.0 * s.value, 2.0 * s.error};
}

Scalar alpha_weighted_mass(const AnalyticProfile& u0, const WeightFunction& w) {
    const double a2 = u0.amplitude * u0.amplitude;
    auto F = [&](double x) {
        const double f = u0.re.value(x), g = u0.im.value(x);
        return w.psi(x) * a2 * (f * f + g * g);
    };
    Scalar s = weighted_integral(u0, w, F);
    if (w.kind() == WeightKind::LineCompact) {
        // Psi is the constant Psi(2) outside the support
        Scalar tail = l2_tail_sq(u0, w.support_radius());
        s.value += w.psi_plateau() * tail.value;
        s.error += w.psi_plateau() * tail.error;
    }
    return s;
}

double delta_line(const WeightFunction& w, const OscillatingCoefficient& coeff, double t0,
                  double T) {
    const double a_end = coeff.eval(t0 + T);
    if (!(a_end > 0.0))
        throw std::invalid_argument("delta_line: A(t0+T) must be strictly positive");
    const double c0 = std::max(kSqrt3, 0.5 * w.sup_phi2().value);
    return 0.5 * std::sqrt(3.0 / (8.0 * a_end)) * (w.sup_phi3().value + c0 * c0);
}

double delta_halfline(const WeightFunction& w, double mass) {
    return 0.5 * w.sup_phi3().value * mass;
}

QuadRoots analyze_quadratic(double alpha, double lambda, double beta) {
    QuadRoots qr;
    if (lambda != 0.0) qr.theta_zero = -alpha / lambda;
    if (beta == 0.0) {
        if (lambda < 0.0) {
            const double t = -alpha / lambda;
            qr.tau_crit = t >= 0.0 ? t : 0.0;
        }
        return qr;
    }
    const double disc = lambda * lambda - 4.0 * alpha * beta;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        double r_plus, r_minus;   // literal (-lambda +- sq)/(2 beta)
        if (lambda != 0.0) {
            const double q = -0.5 * (lambda + (lambda > 0.0 ? sq : -sq));
            const double r1 = q / beta;
            const double r2 = (q != 0.0) ? alpha / q : 0.0;
            // assign literals: r1 corresponds to (-lambda + sgn sq), sort out signs
            if (lambda < 0.0) { r_plus = r1; r_minus = r2; }
            else { r_minus = r1; r_plus = r2; }
        } else {
            r_plus = sq / (2.0 * beta);
            r_minus = -sq / (2.0 * beta);
        }
        qr.theta_plus = r_plus;
        qr.theta_minus = r_minus;

        if (beta > 0.0) {
            // p opens upward: negative strictly between the roots
            if (lambda < 0.0 && disc > 0.0) {
                const double lo = std::min(r_plus, r_minus);
                if (lo >= 0.0) qr.tau_crit = lo;
                else if (std::max(r_plus, r_minus) > 0.0) qr.tau_crit = 0.0;
            }
        } else {
            // p opens downward: negative beyond the larger root
            const double hi = std::max(r_plus, r_minus);
            qr.tau_crit = hi > 0.0 ? hi : 0.0;
        }
    } else if (beta < 0.0) {
        // no real roots and opening downward cannot happen with p(0)=alpha>=0
        qr.tau_crit = 0.0;
    }
    return qr;
}

BlowupParameters assemble(const AnalyticProfile& u0, const WeightFunction& w,
                          const OscillatingCoefficient& coeff, double t0, double T, double r) {
    const bool line = u0.domain == Domain::Line;
    if (line != (w.kind() == WeightKind::LineCompact))
        throw std::invalid_argument("assemble: weight kind does not match the problem domain");

    BlowupParameters bp;
    bp.problem = u0.domain;
    bp.r = r;
    bp.t0 = t0;
    bp.T = T;
    bp.a_end = coeff.eval(t0 + T);

    const Scalar mass = l2_norm_sq(u0);
    const Scalar grad = h1_seminorm_sq(u0);
    const Scalar e0 = energy(u0, coeff, t0, r);
    const Scalar lam = lambda_virial(u0, w);
    const Scalar alf = alpha_weighted_mass(u0, w);

    bp.mass = mass.value;
    bp.energy0 = e0.value;
    bp.lambda = lam.value;
    bp.alpha = alf.value;
    bp.grad_l2 = std::sqrt(std::max(grad.value, 0.0));
    bp.delta = line ? delta_line(w, coeff, t0, T) : delta_halfline(w, mass.value);
    bp.beta = 2.0 * bp.energy0 + bp.delta;
    bp.gamma = bp.beta != 0.0 ? 2.0 / bp.beta * bp.grad_l2 + 1.0
                              : std::numeric_limits<double>::infinity();

    const QuadRoots qr = analyze_quadratic(bp.alpha, bp.lambda, bp.beta);
    bp.theta_minus = qr.theta_minus;
    bp.theta_plus = qr.theta_plus;
    bp.theta_zero = qr.theta_zero;
    bp.tau_crit = qr.tau_crit;

    bp.quadrature_error = std::max({mass.error, grad.error, e0.error, lam.error, alf.error});
    return bp;
}

}  // namespace nlslab
