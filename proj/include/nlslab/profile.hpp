#pragma once

#include <complex>
#include <string>
#include <vector>

namespace nlslab {

enum class Domain { Line, Halfline };

// Closed-form real shapes with exact derivatives; profiles are built from a
// real and an imaginary component, each a shape with its own inner scale.
//   zero            0
//   ramp            y on [0,1), 0 elsewhere (quadrature test shape)
//   algebraic_tail  1/sqrt(1+y^2)
//   m_profile       0 (y<0), y/sqrt(2) (0<=y<1), 1/sqrt(1+y^2) (y>=1)
//   gaussian        exp(-y^2)
//   soliton_sech    3^{1/4} sech^{1/2}(2y)   (quintic ground state Q)
enum class Shape { Zero, Ramp, AlgebraicTail, MProfile, Gaussian, SolitonSech };

Shape shape_from_name(const std::string& name);
std::string shape_name(Shape s);

double shape_eval(Shape s, double y);
double shape_deriv(Shape s, double y);
double shape_deriv2(Shape s, double y);
std::vector<double> shape_knots(Shape s);
// true when the shape decays at least quadratically, so tails integrate
// under the 1/s mapping
bool shape_has_tail(Shape s);

struct Component {
    Shape shape = Shape::Zero;
    double scale = 1.0;     // inner dilation: f((x-center)/scale)
    double center = 0.0;

    double value(double x) const { return shape_eval(shape, (x - center) / scale); }
    double deriv(double x) const { return shape_deriv(shape, (x - center) / scale) / scale; }
};

// u(x) = amplitude * [ re(x) + i*im(x) ]; immutable value type.
struct AnalyticProfile {
    Component re, im;
    double amplitude = 1.0;
    Domain domain = Domain::Line;

    std::complex<double> value(double x) const {
        return {amplitude * re.value(x), amplitude * im.value(x)};
    }
    std::complex<double> derivative(double x) const {
        return {amplitude * re.deriv(x), amplitude * im.deriv(x)};
    }

    // branch boundaries of both components mapped to x; quadrature never
    // straddles these
    std::vector<double> knots() const;

    // smallest non-trivial inner scale (drives grid-resolution checks)
    double min_scale() const;

    // |x| beyond which both components are zero or algebraically decaying
    double support_hint() const;
};

// convenience constructors
AnalyticProfile make_profile(Domain d, Shape re_shape, Shape im_shape, double re_scale = 1.0,
                             double im_scale = 1.0, double amplitude = 1.0, double center = 0.0);

}  // namespace nlslab
