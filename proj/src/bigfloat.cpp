#include "nlslab/detail/bigfloat.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace nlslab::detail {

std::string Big::str(int digits) const {
    char fmt[32], buf[128];
    std::snprintf(fmt, sizeof fmt, "%%.%dRg", digits);
    mpfr_snprintf(buf, sizeof buf, fmt, v_);
    return buf;
}

Big sqrt(const Big& x) { Big r; mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN); return r; }
Big exp(const Big& x) { Big r; mpfr_exp(r.raw(), x.raw(), MPFR_RNDN); return r; }
Big atan(const Big& x) { Big r; mpfr_atan(r.raw(), x.raw(), MPFR_RNDN); return r; }
Big abs(const Big& x) { Big r; mpfr_abs(r.raw(), x.raw(), MPFR_RNDN); return r; }
Big cos(const Big& x) { Big r; mpfr_cos(r.raw(), x.raw(), MPFR_RNDN); return r; }
Big sin(const Big& x) { Big r; mpfr_sin(r.raw(), x.raw(), MPFR_RNDN); return r; }
Big pow_int(const Big& x, long n) {
    Big r;
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}

// tanh-sinh: x = c + s*tanh((pi/2) sinh(t)), integrated by the trapezoid rule
// in t with geometric level refinement
Big tanh_sinh(const BigFn& f, const Big& a, const Big& b, double rel_tol) {
    const Big c = (a + b) / Big(2.0);
    const Big s = (b - a) / Big(2.0);
    const Big half_pi = Big::pi() / Big(2.0);

    auto node = [&](double t, Big& x, Big& w) {
        Big bt(t);
        Big sh;
        mpfr_sinh(sh.raw(), bt.raw(), MPFR_RNDN);
        Big ch;
        mpfr_cosh(ch.raw(), bt.raw(), MPFR_RNDN);
        Big arg = half_pi * sh;
        Big th;
        mpfr_tanh(th.raw(), arg.raw(), MPFR_RNDN);
        Big sech2;   // 1/cosh^2(arg)
        Big chA;
        mpfr_cosh(chA.raw(), arg.raw(), MPFR_RNDN);
        sech2 = Big(1.0) / (chA * chA);
        x = c + s * th;
        w = half_pi * ch * sech2;
    };

    const double t_max = 6.5;   // tanh((pi/2)sinh(6.5)) is 1 to far beyond 77 digits
    Big prev(0.0), sum(0.0);
    double hstep = 1.0;
    // level 0
    {
        Big x, w;
        node(0.0, x, w);
        sum = f(x) * w;
        for (double t = hstep; t <= t_max; t += hstep) {
            Big xp, wp, xm, wm;
            node(t, xp, wp);
            node(-t, xm, wm);
            sum += f(xp) * wp + f(xm) * wm;
        }
    }
    for (int level = 1; level <= 12; ++level) {
        hstep *= 0.5;
        Big add(0.0);
        for (double t = hstep; t <= t_max; t += 2.0 * hstep) {
            Big xp, wp, xm, wm;
            node(t, xp, wp);
            node(-t, xm, wm);
            add += f(xp) * wp + f(xm) * wm;
        }
        prev = sum * Big(hstep * 2.0) * s;
        sum = sum + add;
        const Big cur = sum * Big(hstep) * s;
        Big diff = abs(cur - prev);
        Big scale = abs(cur) + Big(1e-300);
        if (level >= 4 && diff < scale * Big(rel_tol)) return cur;
    }
    return sum * Big(hstep) * s;
}

Big tanh_sinh_piecewise(const BigFn& f, const std::vector<Big>& points, double rel_tol) {
    if (points.size() < 2) throw std::invalid_argument("tanh_sinh_piecewise: need >= 2 points");
    Big total(0.0);
    for (size_t i = 0; i + 1 < points.size(); ++i)
        total += tanh_sinh(f, points[i], points[i + 1], rel_tol);
    return total;
}

}  // namespace nlslab::detail
