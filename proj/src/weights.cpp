#include "nlslab/weights.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "nlslab/quadrature.hpp"

namespace nlslab {

namespace {

constexpr double kInvSqrt3 = 0.5773502691896257645091488;
constexpr double kKnot1 = 1.0 + kInvSqrt3;   // 1.57735...
constexpr double kKnot2 = 1.6;
constexpr double kEdge = 2.0;

// (x^2+x)e^{-x} family, x >= 0
double hl_phi(double x, int order) {
    const double e = std::exp(-x);
    switch (order) {
        case 0: return (x * x + x) * e;
        case 1: return (-x * x + x + 1.0) * e;
        case 2: return (x * x - 3.0 * x) * e;
        case 3: return (-x * x + 5.0 * x - 3.0) * e;
    }
    return 0.0;
}

double golden_max(const std::function<double(double)>& f, double a, double b) {
    const double gr = 0.6180339887498949;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 90 && (b - a) > 1e-14; ++it) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a); fd = f(d);
        }
    }
    return fc > fd ? c : d;
}

}  // namespace

WeightFunction WeightFunction::line_compact(Mollifier m) { return WeightFunction(WeightKind::LineCompact, m); }
WeightFunction WeightFunction::halfline_exp() { return WeightFunction(WeightKind::HalflineExp, Mollifier::Rescaled); }

WeightFunction::WeightFunction(WeightKind k, Mollifier m) : kind_(k), mollifier_(m) {
    if (kind_ == WeightKind::HalflineExp) {
        plateau_ = 3.0;
        // closed-form critical-point analysis: |phi'''| peaks at x=0 with value 3;
        // |phi''| peaks at x = (5-sqrt(13))/2
        sup3_ = SupNorm{3.0, 0.0, 0};
        const double xc = 0.5 * (5.0 - std::sqrt(13.0));
        sup2_ = SupNorm{std::abs(hl_phi(xc, 2)), xc, 0};
        return;
    }
    build_psi_cache();
    measure_sup_norms();
}

std::array<double, 4> WeightFunction::bump(double x) const {
    // r(x) = e * exp(-1/(1-w)), w = arg^4, arg = 0.4(x-1.6) or (x-1.6)/0.4
    const double c = mollifier_ == Mollifier::Literal ? 0.4 : 2.5;
    const double a = c * (x - kKnot2);
    const double w = a * a * a * a;
    if (w >= 1.0) return {0.0, 0.0, 0.0, 0.0};
    const double om = 1.0 - w;
    const double q = 1.0 - 1.0 / om;       // exponent of the bump
    if (q < -700.0) return {0.0, 0.0, 0.0, 0.0};
    const double r = std::exp(q);
    const double w1 = 4.0 * c * a * a * a;
    const double w2 = 12.0 * c * c * a * a;
    const double w3 = 24.0 * c * c * c * a;
    const double i2 = 1.0 / (om * om);
    const double q1 = -i2 * w1;
    const double q2 = -(2.0 * i2 / om * w1 * w1 + i2 * w2);
    const double q3 = -(6.0 * i2 * i2 * w1 * w1 * w1 + 6.0 * i2 / om * w1 * w2 + i2 * w3);
    return {r, r * q1, r * (q2 + q1 * q1), r * (q3 + 3.0 * q1 * q2 + q1 * q1 * q1)};
}

double WeightFunction::phi_pos(double x, int order) const {
    if (x <= 1.0) {
        return order == 0 ? x : (order == 1 ? 1.0 : 0.0);
    }
    if (x <= kKnot1) {
        const double d = x - 1.0;
        switch (order) {
            case 0: return x - d * d * d;
            case 1: return 1.0 - 3.0 * d * d;
            case 2: return -6.0 * d;
            case 3: return -6.0;
        }
    }
    if (x <= kKnot2) {
        // vertical reflection of the cubic flank about x = 1+1/sqrt(3)
        const double s = -x + 1.0 + 2.0 * kInvSqrt3;
        switch (order) {
            case 0: return -x + 2.0 * (1.0 + kInvSqrt3) - s * s * s;
            case 1: return -1.0 + 3.0 * s * s;
            case 2: return -6.0 * s;
            case 3: return 6.0;
        }
    }
    if (x < kEdge) {
        const double d = x - 1.0;
        const double p0 = x - d * d * d;
        const double p1 = 1.0 - 3.0 * d * d;
        const double p2 = -6.0 * d;
        const double p3 = -6.0;
        const auto r = bump(x);
        switch (order) {
            case 0: return p0 * r[0];
            case 1: return p1 * r[0] + p0 * r[1];
            case 2: return p2 * r[0] + 2.0 * p1 * r[1] + p0 * r[2];
            case 3: return p3 * r[0] + 3.0 * p2 * r[1] + 3.0 * p1 * r[2] + p0 * r[3];
        }
    }
    return 0.0;
}

double WeightFunction::phi(double x, int order) const {
    if (order < 0 || order > 3) throw std::invalid_argument("phi: order must be in 0..3");
    if (kind_ == WeightKind::HalflineExp) {
        if (x < 0.0) throw std::domain_error("halfline weight: x must be >= 0");
        return hl_phi(x, order);
    }
    if (x >= 0.0) return phi_pos(x, order);
    // odd function: phi^(k)(-x) = (-1)^(k+1) phi^(k)(x)
    const double v = phi_pos(-x, order);
    return order % 2 == 0 ? -v : v;
}

void WeightFunction::build_psi_cache() {
    const int n = 1 << 14;
    psi_cache_.assign(n + 1, 0.0);
    cache_a_ = kKnot2;
    cache_h_ = (kEdge - kKnot2) / n;
    quad::KahanSum acc;
    psi_cache_[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = cache_a_ + i * cache_h_;
        auto r = quad::integrate([this](double t) { return phi_pos(t, 0); }, a, a + cache_h_,
                                 {1e-13, 1e-16, 64});
        acc.add(r.value);
        psi_cache_[i + 1] = acc.value();
    }
    // closed-form pieces up to 1.6, cached tail beyond
    const double s1 = -kKnot1 + 1.0 + 2.0 * kInvSqrt3;
    const double s2 = -kKnot2 + 1.0 + 2.0 * kInvSqrt3;
    auto F = [&](double x, double s) {
        return -x * x / 2.0 + 2.0 * (1.0 + kInvSqrt3) * x + s * s * s * s / 4.0;
    };
    const double psi_k1 = kKnot1 * kKnot1 / 2.0 - std::pow(kKnot1 - 1.0, 4) / 4.0;
    const double psi_16 = psi_k1 + F(kKnot2, s2) - F(kKnot1, s1);
    plateau_ = psi_16 + psi_cache_.back();
}

double WeightFunction::psi_pos(double x) const {
    if (x <= 1.0) return x * x / 2.0;
    if (x <= kKnot1) return x * x / 2.0 - std::pow(x - 1.0, 4) / 4.0;
    const double psi_k1 = kKnot1 * kKnot1 / 2.0 - std::pow(kKnot1 - 1.0, 4) / 4.0;
    auto F = [&](double t) {
        const double s = -t + 1.0 + 2.0 * kInvSqrt3;
        return -t * t / 2.0 + 2.0 * (1.0 + kInvSqrt3) * t + s * s * s * s / 4.0;
    };
    if (x <= kKnot2) return psi_k1 + F(x) - F(kKnot1);
    const double psi_16 = psi_k1 + F(kKnot2) - F(kKnot1);
    if (x >= kEdge) return plateau_;
    // cubic (4-point Lagrange) interpolation on the cached grid
    const double u = (x - cache_a_) / cache_h_;
    const int n = static_cast<int>(psi_cache_.size()) - 1;
    int i = static_cast<int>(u);
    i = std::max(1, std::min(i, n - 2));
    const double t = u - i;
    const double ym = psi_cache_[i - 1], y0 = psi_cache_[i], y1 = psi_cache_[i + 1],
                 y2 = psi_cache_[i + 2];
    const double val = ym * (-t * (t - 1.0) * (t - 2.0) / 6.0) +
                       y0 * ((t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0) +
                       y1 * (-(t + 1.0) * t * (t - 2.0) / 2.0) +
                       y2 * ((t + 1.0) * t * (t - 1.0) / 6.0);
    return psi_16 + val;
}

double WeightFunction::psi(double x) const {
    if (kind_ == WeightKind::HalflineExp) {
        if (x < 0.0) throw std::domain_error("halfline weight: x must be >= 0");
        return 3.0 - (x * x + 3.0 * x + 3.0) * std::exp(-x);
    }
    return psi_pos(std::abs(x));   // Psi is even because phi is odd
}

void WeightFunction::measure_sup_norms() {
    // Cubic flanks attain |phi''| = 6/sqrt(3) at the joint and |phi'''| = 6;
    // the mollified branch is scanned densely and refined.
    sup2_ = SupNorm{6.0 * kInvSqrt3, kKnot1, 0};
    sup3_ = SupNorm{6.0, 1.5, 0};
    const long n = 200000;
    for (int order = 2; order <= 3; ++order) {
        SupNorm& target = order == 2 ? sup2_ : sup3_;
        target.samples = n;
        double best = 0.0, bx = kKnot2;
        for (long i = 1; i < n; ++i) {
            const double x = kKnot2 + (kEdge - kKnot2) * static_cast<double>(i) / n;
            const double v = std::abs(phi_pos(x, order));
            if (v > best) { best = v; bx = x; }
        }
        const double span = (kEdge - kKnot2) / n;
        const double x_ref = golden_max(
            [this, order](double x) { return std::abs(phi_pos(x, order)); },
            std::max(kKnot2, bx - span), std::min(kEdge, bx + span));
        const double v_ref = std::abs(phi_pos(x_ref, order));
        if (v_ref > best) { best = v_ref; bx = x_ref; }
        if (best > target.value) { target.value = best; target.abscissa = bx; }
    }
}

std::vector<KnotJump> WeightFunction::continuity_report() const {
    std::vector<KnotJump> out;
    if (kind_ == WeightKind::HalflineExp) return out;   // single analytic branch
    const double eps = 1e-9;
    for (double x : {1.0, kKnot1, kKnot2, kEdge}) {
        KnotJump j;
        j.x = x;
        for (int k = 0; k <= 3; ++k) {
            // one-sided branch values probed with a small offset
            const double left = phi_pos(x - eps, k);
            const double right = phi_pos(x + eps, k);
            // remove the O(eps) smooth variation using one more sample
            const double left2 = phi_pos(x - 2.0 * eps, k);
            const double right2 = phi_pos(x + 2.0 * eps, k);
            const double lv = 2.0 * left - left2;    // linear extrapolation to x
            const double rv = 2.0 * right - right2;
            j.jump[k] = rv - lv;
        }
        out.push_back(j);
    }
    return out;
}

std::vector<double> WeightFunction::knots() const {
    if (kind_ == WeightKind::HalflineExp) return {0.0};
    return {-kEdge, -kKnot2, -kKnot1, -1.0, 0.0, 1.0, kKnot1, kKnot2, kEdge};
}

double WeightFunction::support_radius() const {
    return kind_ == WeightKind::LineCompact ? kEdge : std::numeric_limits<double>::infinity();
}

}  // namespace nlslab
