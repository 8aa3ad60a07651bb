#include "nlslab/oscillator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nlslab {

OscillatingCoefficient OscillatingCoefficient::cos2(double amplitude, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("cos2 profile requires omega > 0");
    OscillatingCoefficient c;
    c.profile_ = CoeffProfile::Cos2;
    c.amplitude_ = amplitude;
    c.omega_ = omega;
    return c;
}

OscillatingCoefficient OscillatingCoefficient::constant(double value) {
    OscillatingCoefficient c;
    c.profile_ = CoeffProfile::Constant;
    c.amplitude_ = value;
    return c;
}

OscillatingCoefficient OscillatingCoefficient::table(std::vector<double> t, std::vector<double> a) {
    if (t.size() != a.size() || t.size() < 3)
        throw std::invalid_argument("table profile needs >= 3 (t, a) samples");
    for (size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw std::invalid_argument("table abscissae must increase");

    OscillatingCoefficient c;
    c.profile_ = CoeffProfile::Table;
    c.tt_ = std::move(t);
    c.ta_ = std::move(a);

    // natural cubic spline second derivatives (tridiagonal solve)
    const size_t n = c.tt_.size();
    std::vector<double> u(n, 0.0);
    c.tm_.assign(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
        const double sig = (c.tt_[i] - c.tt_[i - 1]) / (c.tt_[i + 1] - c.tt_[i - 1]);
        const double p = sig * c.tm_[i - 1] + 2.0;
        c.tm_[i] = (sig - 1.0) / p;
        u[i] = (c.ta_[i + 1] - c.ta_[i]) / (c.tt_[i + 1] - c.tt_[i]) -
               (c.ta_[i] - c.ta_[i - 1]) / (c.tt_[i] - c.tt_[i - 1]);
        u[i] = (6.0 * u[i] / (c.tt_[i + 1] - c.tt_[i - 1]) - sig * u[i - 1]) / p;
    }
    for (size_t k = n - 1; k-- > 1;) c.tm_[k] = c.tm_[k] * c.tm_[k + 1] + u[k];
    c.tm_[0] = c.tm_[n - 1] = 0.0;
    return c;
}

double OscillatingCoefficient::spline_eval(double t, int deriv) const {
    const size_t n = tt_.size();
    size_t lo = 0, hi = n - 1;
    if (t <= tt_.front()) hi = 1;
    else if (t >= tt_.back()) lo = n - 2;
    else {
        while (hi - lo > 1) {
            const size_t mid = (hi + lo) / 2;
            (tt_[mid] > t ? hi : lo) = mid;
        }
    }
    const double h = tt_[hi] - tt_[lo];
    const double A = (tt_[hi] - t) / h, B = (t - tt_[lo]) / h;
    if (deriv == 0)
        return A * ta_[lo] + B * ta_[hi] +
               ((A * A * A - A) * tm_[lo] + (B * B * B - B) * tm_[hi]) * h * h / 6.0;
    return (ta_[hi] - ta_[lo]) / h +
           ((3.0 * B * B - 1.0) * tm_[hi] - (3.0 * A * A - 1.0) * tm_[lo]) * h / 6.0;
}

double OscillatingCoefficient::eval(double t) const {
    switch (profile_) {
        case CoeffProfile::Cos2: {
            const double c = std::cos(omega_ * t);
            return amplitude_ * c * c;
        }
        case CoeffProfile::Constant:
            return amplitude_;
        case CoeffProfile::Table:
            return spline_eval(t, 0);
    }
    return 0.0;
}

double OscillatingCoefficient::eval_prime(double t) const {
    switch (profile_) {
        case CoeffProfile::Cos2:
            // d/dt[c*cos^2(Omega t)] = -c*Omega*sin(2*Omega*t)
            return -amplitude_ * omega_ * std::sin(2.0 * omega_ * t);
        case CoeffProfile::Constant:
            return 0.0;
        case CoeffProfile::Table:
            return spline_eval(t, 1);
    }
    return 0.0;
}

WindowCheck OscillatingCoefficient::validate_window(double t0, double T, double tol) const {
    if (!(T > 0.0)) throw std::invalid_argument("validate_window: T must be positive");
    WindowCheck w;
    if (!(eval(t0) > 0.0)) {
        w.diagnostic = "A(t0) is not strictly positive";
        w.first_violation_t = t0;
        return w;
    }
    const int n = 10000;
    for (int i = 0; i <= n; ++i) {
        const double t = t0 + T * static_cast<double>(i) / n;
        if (eval_prime(t) < -tol) {
            std::ostringstream os;
            os << "A'(t) < -tol at t = " << t << " (A' = " << eval_prime(t) << ")";
            w.diagnostic = os.str();
            w.first_violation_t = t;
            return w;
        }
    }
    w.valid = true;
    w.diagnostic = profile_ == CoeffProfile::Table
                       ? "window valid (table profile: outside the theorems' literal "
                         "periodic-smooth hypothesis)"
                       : "window valid";
    return w;
}

}  // namespace nlslab
