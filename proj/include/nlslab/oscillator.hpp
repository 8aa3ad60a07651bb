#pragma once

#include <string>
#include <vector>

namespace nlslab {

enum class CoeffProfile { Cos2, Constant, Table };

struct WindowCheck {
    bool valid = false;
    std::string diagnostic;      // first violating sample, or the reason
    double first_violation_t = 0.0;
};

// Time-dependent nonlinearity amplitude A(t) = a(2*Omega*t).  Profiles come
// from a registry of closed forms so that the derivative used in the
// energy-rate identity is exact:
//   cos2      a(s) = cos^2(s/2), scaled by `amplitude`  => A(t) = c*cos^2(Omega*t)
//   constant  A(t) = amplitude
//   table     cubic-spline interpolant of (t, a) samples; derivative of the
//             interpolant (flagged as outside the theorems' literal
//             "periodic smooth" hypothesis)
// Immutable after construction; safe to evaluate concurrently.
class OscillatingCoefficient {
  public:
    static OscillatingCoefficient cos2(double amplitude, double omega);
    static OscillatingCoefficient constant(double value);
    static OscillatingCoefficient table(std::vector<double> t, std::vector<double> a);

    double eval(double t) const;
    double eval_prime(double t) const;   // d/dt[a(2*Omega*t)]

    // true iff eval(t0)>0 and eval_prime >= -tol on a uniform sample of
    // 10^4+1 points covering [t0, t0+T].
    WindowCheck validate_window(double t0, double T, double tol = 1e-12) const;

    CoeffProfile profile() const { return profile_; }
    double omega() const { return omega_; }
    double amplitude() const { return amplitude_; }

  private:
    OscillatingCoefficient() = default;

    CoeffProfile profile_ = CoeffProfile::Constant;
    double omega_ = 0.0;
    double amplitude_ = 1.0;

    // table profile: natural cubic spline coefficients
    std::vector<double> tt_, ta_, tm_;   // knots, values, second derivatives
    double spline_eval(double t, int deriv) const;
};

}  // namespace nlslab
