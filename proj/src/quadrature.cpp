#include "nlslab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace nlslab::quad {

namespace {

// 15-point Kronrod nodes on [-1,1] with embedded 7-point Gauss rule
// (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Fn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = std::abs(resk);

    double fv[7][2];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        fv[j][0] = f(c - dx);
        fv[j][1] = f(c + dx);
        const double s = fv[j][0] + fv[j][1];
        resk += kWgk[j] * s;
        resabs += kWgk[j] * (std::abs(fv[j][0]) + std::abs(fv[j][1]));
        if (j % 2 == 1) resg += kWg[j / 2] * s;
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[j][0] - reskh) + std::abs(fv[j][1] - reskh));

    const double value = resk * h;
    resabs *= std::abs(h);
    resasc *= std::abs(h);

    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * 2.220446049250313e-16 * resabs;
    err = std::max(err, eps50);

    return Panel{a, b, value, err};
}

// Insert per-decade boundaries inside [a,b] whenever the panel spans more
// than one decade relative to the origin.
void geometric_fill(double a, double b, std::vector<double>& out) {
    out.push_back(a);
    const double lo = std::min(std::abs(a), std::abs(b));
    const double hi = std::max(std::abs(a), std::abs(b));
    if (a < 0.0 && b > 0.0) {
        // split at zero, recurse on each side
        geometric_fill(a, 0.0, out);
        geometric_fill(0.0, b, out);
        out.push_back(b);
        return;
    }
    if (hi > 0.0 && (lo == 0.0 || hi / std::max(lo, 1e-300) > 10.0)) {
        const double sgn = (b > a && a >= 0.0) || (b > 0.0) ? 1.0 : -1.0;
        double start = (lo == 0.0) ? hi * 1e-14 : lo;
        for (double m = start * 10.0; m < hi * 0.999; m *= 10.0) {
            const double p = sgn > 0 ? m : -m;
            if (p > a && p < b) out.push_back(p);
        }
    }
    out.push_back(b);
}

}  // namespace

Result integrate(const Fn& f, std::vector<double> points, const Options& opt) {
    if (points.size() < 2) throw std::invalid_argument("integrate: need at least two panel points");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 2) return Result{0.0, 0.0, true, 0};

    std::vector<double> bounds;
    for (size_t i = 0; i + 1 < points.size(); ++i) geometric_fill(points[i], points[i + 1], bounds);
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    std::priority_queue<Panel> heap;
    KahanSum total, toterr;
    int used = 0;
    for (size_t i = 0; i + 1 < bounds.size(); ++i) {
        Panel p = gk15(f, bounds[i], bounds[i + 1]);
        ++used;
        heap.push(p);
        total.add(p.value);
        toterr.add(p.error);
    }

    auto target = [&]() { return opt.rel_tol * std::abs(total.value()) + opt.abs_floor; };

    while (toterr.value() > target() && used < opt.max_panels && !heap.empty()) {
        Panel worst = heap.top();
        heap.pop();
        if (worst.error <= 0.0 || worst.b - worst.a < 1e-300) {
            heap.push(worst);  // nothing left to gain
            break;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) continue;  // interval at ulp resolution
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        used += 2;
        total.add(-worst.value);
        toterr.add(-worst.error);
        total.add(left.value);
        total.add(right.value);
        toterr.add(left.error);
        toterr.add(right.error);
        heap.push(left);
        heap.push(right);
    }

    Result r;
    r.value = total.value();
    r.abs_error = std::max(toterr.value(), 0.0);
    r.converged = r.abs_error <= target() * 1.0000001 || r.abs_error <= opt.abs_floor;
    r.panels = used;
    return r;
}

Result integrate(const Fn& f, double a, double b, const Options& opt) {
    return integrate(f, std::vector<double>{a, b}, opt);
}

Result integrate_to_infinity(const Fn& f, double a, const Options& opt) {
    // x = a - 1 + 1/s maps s in (0,1] to [a, inf); dx = -ds/s^2.
    const double shift = a - 1.0;
    auto g = [&](double s) {
        const double x = shift + 1.0 / s;
        const double v = f(x);
        return v / (s * s);
    };
    return integrate(g, std::vector<double>{1e-14, 1.0}, opt);
}

}  // namespace nlslab::quad
