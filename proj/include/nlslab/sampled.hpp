#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlslab/profile.hpp"

namespace nlslab {

struct GridSpec {
    double x_min = 0.0;
    double x_max = 0.0;
    int n = 0;            // number of stored samples
    double h = 0.0;       // spacing

    double x(int j) const { return x_min + h * j; }
};

// Uniform-grid complex samples.  Line grids are periodic on [x_min, x_max)
// with n a power of two (n >= 16); halfline grids cover [0, L] inclusive.
struct SampledField {
    GridSpec grid;
    Domain domain = Domain::Line;
    std::vector<std::complex<double>> values;

    static SampledField line(double L, int n);                 // [-L, L), n samples
    static SampledField halfline(double L, int n_intervals);   // [0, L], n+1 samples

    // sample an analytic profile; rejects grids that cannot resolve the
    // profile's inner scale (scale < 8h)
    static SampledField sample(const AnalyticProfile& p, const GridSpec& g, Domain d);

    double mass() const;                      // trapezoid (periodic for line)
    double l6_norm_6() const;
    std::complex<double> trace_at_zero() const;

    void write_csv(std::ostream& os) const;
    void write_binary(std::ostream& os) const;
    static SampledField read_csv(std::istream& is, Domain d);
    static SampledField read_binary(std::istream& is);
    static SampledField load(const std::string& path);   // sniffs binary magic
};

}  // namespace nlslab
