#include "nlslab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nlslab {

Shape shape_from_name(const std::string& name) {
    if (name == "zero") return Shape::Zero;
    if (name == "ramp") return Shape::Ramp;
    if (name == "algebraic_tail") return Shape::AlgebraicTail;
    if (name == "m_profile") return Shape::MProfile;
    if (name == "gaussian") return Shape::Gaussian;
    if (name == "soliton_sech") return Shape::SolitonSech;
    throw std::invalid_argument("unknown profile shape: " + name);
}

std::string shape_name(Shape s) {
    switch (s) {
        case Shape::Zero: return "zero";
        case Shape::Ramp: return "ramp";
        case Shape::AlgebraicTail: return "algebraic_tail";
        case Shape::MProfile: return "m_profile";
        case Shape::Gaussian: return "gaussian";
        case Shape::SolitonSech: return "soliton_sech";
    }
    return "?";
}

namespace {
constexpr double kQ0 = 1.3160740129524924;   // 3^{1/4}
}

double shape_eval(Shape s, double y) {
    switch (s) {
        case Shape::Zero: return 0.0;
        case Shape::Ramp: return (y >= 0.0 && y < 1.0) ? y : 0.0;
        case Shape::AlgebraicTail: return 1.0 / std::sqrt(1.0 + y * y);
        case Shape::MProfile:
            if (y < 0.0) return 0.0;
            if (y < 1.0) return y / std::sqrt(2.0);
            return 1.0 / std::sqrt(1.0 + y * y);
        case Shape::Gaussian: return std::exp(-y * y);
        case Shape::SolitonSech: return kQ0 * std::sqrt(1.0 / std::cosh(2.0 * y));
    }
    return 0.0;
}

double shape_deriv(Shape s, double y) {
    switch (s) {
        case Shape::Zero: return 0.0;
        case Shape::Ramp: return (y > 0.0 && y < 1.0) ? 1.0 : 0.0;
        case Shape::AlgebraicTail: return -y * std::pow(1.0 + y * y, -1.5);
        case Shape::MProfile:
            if (y < 0.0) return 0.0;
            if (y < 1.0) return 1.0 / std::sqrt(2.0);
            return -y * std::pow(1.0 + y * y, -1.5);
        case Shape::Gaussian: return -2.0 * y * std::exp(-y * y);
        case Shape::SolitonSech:
            return -kQ0 * std::sqrt(1.0 / std::cosh(2.0 * y)) * std::tanh(2.0 * y);
    }
    return 0.0;
}

double shape_deriv2(Shape s, double y) {
    switch (s) {
        case Shape::Zero:
        case Shape::Ramp: return 0.0;
        case Shape::AlgebraicTail: {
            const double r = 1.0 + y * y;
            return (2.0 * y * y - 1.0) * std::pow(r, -2.5);
        }
        case Shape::MProfile: {
            if (y < 1.0) return 0.0;
            const double r = 1.0 + y * y;
            return (2.0 * y * y - 1.0) * std::pow(r, -2.5);
        }
        case Shape::Gaussian: return (4.0 * y * y - 2.0) * std::exp(-y * y);
        case Shape::SolitonSech: {
            // Q'' = Q - Q^5 for the quintic ground state
            const double q = kQ0 * std::sqrt(1.0 / std::cosh(2.0 * y));
            return q - q * q * q * q * q;
        }
    }
    return 0.0;
}

std::vector<double> shape_knots(Shape s) {
    switch (s) {
        case Shape::Ramp: return {0.0, 1.0};
        case Shape::MProfile: return {0.0, 1.0};
        default: return {};
    }
}

bool shape_has_tail(Shape s) {
    return s != Shape::Ramp;   // ramp is compactly supported; the rest decay
}

std::vector<double> AnalyticProfile::knots() const {
    std::vector<double> out;
    for (const Component* c : {&re, &im}) {
        if (c->shape == Shape::Zero) continue;
        for (double k : shape_knots(c->shape)) out.push_back(c->center + k * c->scale);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double AnalyticProfile::min_scale() const {
    double s = std::numeric_limits<double>::infinity();
    if (re.shape != Shape::Zero) s = std::min(s, re.scale);
    if (im.shape != Shape::Zero) s = std::min(s, im.scale);
    return std::isfinite(s) ? s : 1.0;
}

double AnalyticProfile::support_hint() const {
    double h = 0.0;
    for (const Component* c : {&re, &im}) {
        if (c->shape == Shape::Zero) continue;
        // beyond ~8 reduced units every registry shape is either zero or in
        // its algebraic/exponential tail
        h = std::max(h, std::abs(c->center) + 8.0 * c->scale);
    }
    return h;
}

AnalyticProfile make_profile(Domain d, Shape re_shape, Shape im_shape, double re_scale,
                             double im_scale, double amplitude, double center) {
    if (!(re_scale > 0.0) || !(im_scale > 0.0))
        throw std::invalid_argument("profile scales must be positive");
    AnalyticProfile p;
    p.domain = d;
    p.re = {re_shape, re_scale, center};
    p.im = {im_shape, im_scale, center};
    p.amplitude = amplitude;
    return p;
}

}  // namespace nlslab
