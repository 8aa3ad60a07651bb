#include "nlslab/sampled.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "nlslab/quadrature.hpp"

namespace nlslab {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
constexpr char kMagic[8] = {'N', 'L', 'S', 'F', 'L', 'D', '0', '1'};
}  // namespace

SampledField SampledField::line(double L, int n) {
    if (!(L > 0.0)) throw std::invalid_argument("line grid: L must be positive");
    if (n < 16 || !power_of_two(n))
        throw std::invalid_argument("line grid: n must be a power of two >= 16");
    SampledField f;
    f.domain = Domain::Line;
    f.grid = {-L, L, n, 2.0 * L / n};
    f.values.assign(n, {0.0, 0.0});
    return f;
}

SampledField SampledField::halfline(double L, int n_intervals) {
    if (!(L > 0.0) || n_intervals < 8)
        throw std::invalid_argument("halfline grid: need L > 0 and >= 8 intervals");
    SampledField f;
    f.domain = Domain::Halfline;
    f.grid = {0.0, L, n_intervals + 1, L / n_intervals};
    f.values.assign(n_intervals + 1, {0.0, 0.0});
    return f;
}

SampledField SampledField::sample(const AnalyticProfile& p, const GridSpec& g, Domain d) {
    SampledField f = d == Domain::Line ? line(g.x_max, g.n) : halfline(g.x_max, g.n - 1);
    if (p.min_scale() < 8.0 * f.grid.h) {
        std::ostringstream os;
        os << "grid cannot resolve the profile: inner scale " << p.min_scale() << " < 8h = "
           << 8.0 * f.grid.h;
        throw std::invalid_argument(os.str());
    }
    for (int j = 0; j < f.grid.n; ++j) f.values[j] = p.value(f.grid.x(j));
    return f;
}

double SampledField::mass() const {
    quad::KahanSum s;
    const int n = grid.n;
    for (int j = 0; j < n; ++j) {
        double w = 1.0;
        if (domain == Domain::Halfline && (j == 0 || j == n - 1)) w = 0.5;
        s.add(w * std::norm(values[j]));
    }
    return s.value() * grid.h;
}

double SampledField::l6_norm_6() const {
    quad::KahanSum s;
    const int n = grid.n;
    for (int j = 0; j < n; ++j) {
        double w = 1.0;
        if (domain == Domain::Halfline && (j == 0 || j == n - 1)) w = 0.5;
        const double a = std::norm(values[j]);
        s.add(w * a * a * a);
    }
    return s.value() * grid.h;
}

std::complex<double> SampledField::trace_at_zero() const {
    if (domain != Domain::Halfline)
        throw std::domain_error("trace_at_zero: halfline fields only");
    return values.front();
}

void SampledField::write_csv(std::ostream& os) const {
    os << "x,re,im\n";
    char buf[96];
    for (int j = 0; j < grid.n; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid.x(j), values[j].real(),
                      values[j].imag());
        os << buf;
    }
}

void SampledField::write_binary(std::ostream& os) const {
    os.write(kMagic, 8);
    const uint32_t dom = domain == Domain::Line ? 0u : 1u;
    const uint32_t n = static_cast<uint32_t>(grid.n);
    os.write(reinterpret_cast<const char*>(&dom), 4);
    os.write(reinterpret_cast<const char*>(&n), 4);
    os.write(reinterpret_cast<const char*>(&grid.x_min), 8);
    os.write(reinterpret_cast<const char*>(&grid.x_max), 8);
    for (const auto& v : values) {
        const double re = v.real(), im = v.imag();
        os.write(reinterpret_cast<const char*>(&re), 8);
        os.write(reinterpret_cast<const char*>(&im), 8);
    }
}

SampledField SampledField::read_csv(std::istream& is, Domain d) {
    std::string header;
    std::getline(is, header);
    std::vector<double> xs;
    std::vector<std::complex<double>> vals;
    std::string lineb;
    while (std::getline(is, lineb)) {
        if (lineb.empty()) continue;
        double x, re, im;
        if (std::sscanf(lineb.c_str(), "%lg,%lg,%lg", &x, &re, &im) != 3)
            throw std::runtime_error("field csv: malformed row: " + lineb);
        xs.push_back(x);
        vals.push_back({re, im});
    }
    if (xs.size() < 2) throw std::runtime_error("field csv: too few samples");
    SampledField f;
    f.domain = d;
    const double h = xs[1] - xs[0];
    f.grid = {xs.front(), d == Domain::Line ? xs.back() + h : xs.back(),
              static_cast<int>(xs.size()), h};
    f.values = std::move(vals);
    return f;
}

SampledField SampledField::read_binary(std::istream& is) {
    char magic[8];
    is.read(magic, 8);
    if (std::memcmp(magic, kMagic, 8) != 0) throw std::runtime_error("field binary: bad magic");
    uint32_t dom = 0, n = 0;
    double a = 0, b = 0;
    is.read(reinterpret_cast<char*>(&dom), 4);
    is.read(reinterpret_cast<char*>(&n), 4);
    is.read(reinterpret_cast<char*>(&a), 8);
    is.read(reinterpret_cast<char*>(&b), 8);
    SampledField f;
    f.domain = dom == 0 ? Domain::Line : Domain::Halfline;
    f.grid = {a, b, static_cast<int>(n), (b - a) / (f.domain == Domain::Line ? n : n - 1)};
    f.values.resize(n);
    for (auto& v : f.values) {
        double re, im;
        is.read(reinterpret_cast<char*>(&re), 8);
        is.read(reinterpret_cast<char*>(&im), 8);
        v = {re, im};
    }
    if (!is) throw std::runtime_error("field binary: truncated payload");
    return f;
}

SampledField SampledField::load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open field file: " + path);
    char magic[8] = {};
    is.read(magic, 8);
    is.seekg(0);
    if (std::memcmp(magic, kMagic, 8) == 0) return read_binary(is);
    // csv fallback: domain inferred from the first abscissa
    std::string header;
    std::getline(is, header);
    std::string first;
    std::getline(is, first);
    double x0 = 0;
    std::sscanf(first.c_str(), "%lg", &x0);
    is.seekg(0);
    return read_csv(is, x0 < 0.0 ? Domain::Line : Domain::Halfline);
}

}  // namespace nlslab
