#pragma once

#include <mpfr.h>

#include <functional>
#include <string>
#include <vector>

namespace nlslab::detail {

// Minimal RAII wrapper over mpfr_t at a fixed working precision (256 bits,
// ~77 significant digits) for the extended-precision audit oracle.
class Big {
  public:
    static constexpr mpfr_prec_t kPrec = 256;

    Big() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
    Big(double x) { mpfr_init2(v_, kPrec); mpfr_set_d(v_, x, MPFR_RNDN); }
    explicit Big(const std::string& s) {
        mpfr_init2(v_, kPrec);
        mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN);
    }
    Big(const Big& o) { mpfr_init2(v_, kPrec); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Big(Big&& o) noexcept { mpfr_init2(v_, kPrec); mpfr_swap(v_, o.v_); }
    Big& operator=(const Big& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Big& operator=(Big&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Big() { mpfr_clear(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string str(int digits = 30) const;

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    friend Big operator+(const Big& a, const Big& b) { Big r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Big operator-(const Big& a, const Big& b) { Big r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Big operator*(const Big& a, const Big& b) { Big r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Big operator/(const Big& a, const Big& b) { Big r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    Big operator-() const { Big r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
    Big& operator+=(const Big& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Big& operator-=(const Big& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Big& operator*=(const Big& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend bool operator<(const Big& a, const Big& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Big& a, const Big& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Big& a, const Big& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Big& a, const Big& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    static Big pi() { Big r; mpfr_const_pi(r.v_, MPFR_RNDN); return r; }

  private:
    mpfr_t v_;
};

Big sqrt(const Big& x);
Big exp(const Big& x);
Big atan(const Big& x);
Big abs(const Big& x);
Big pow_int(const Big& x, long n);
Big cos(const Big& x);
Big sin(const Big& x);

using BigFn = std::function<Big(const Big&)>;

// Adaptive tanh-sinh quadrature on [a, b]; the level climbs until two
// successive refinements agree below the tolerance (relative to the value).
Big tanh_sinh(const BigFn& f, const Big& a, const Big& b, double rel_tol = 1e-40);

// piecewise: integrate across the given breakpoints
Big tanh_sinh_piecewise(const BigFn& f, const std::vector<Big>& points, double rel_tol = 1e-40);

}  // namespace nlslab::detail
