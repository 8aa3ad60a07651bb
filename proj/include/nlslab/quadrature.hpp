#pragma once

#include <functional>
#include <vector>

namespace nlslab::quad {

// One accumulated integral with its achieved error estimate.  converged=false
// means the panel budget ran out before the tolerance was met; the value and
// the achieved estimate are still returned.
struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    bool converged = true;
    int panels = 0;

    Result& operator+=(const Result& o) {
        value += o.value;
        abs_error += o.abs_error;
        converged = converged && o.converged;
        panels += o.panels;
        return *this;
    }
};

struct Options {
    double rel_tol = 1e-12;
    double abs_floor = 1e-300;   // target error = rel_tol*|value| + abs_floor
    int max_panels = 1 << 16;
};

using Fn = std::function<double(double)>;

// Adaptive Gauss-Kronrod 15(7) over [points.front(), points.back()].
// Interior entries of `points` are mandatory panel boundaries; integrands are
// never evaluated across them, so branch knots of piecewise closed forms go
// here.  Panels spanning more than one decade away from zero are pre-split
// geometrically so that scale-separated structure (inner scales down to
// 1e-10 against O(1) supports) is resolved without deep bisection.
Result integrate(const Fn& f, std::vector<double> points, const Options& opt = {});

// Convenience: single panel [a, b].
Result integrate(const Fn& f, double a, double b, const Options& opt = {});

// Integral over [a, +inf) via the substitution x = a-1+1/s (algebraic tails
// become regular at s=0).  `a` may be any finite left endpoint.
Result integrate_to_infinity(const Fn& f, double a, const Options& opt = {});

// Kahan-compensated accumulator used by the engine and the solver monitors.
class KahanSum {
  public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace nlslab::quad
