#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "circlelab/errors.hpp"

namespace circlelab {

// Correctly rounded arbitrary-precision real. Every value carries its own
// mantissa precision; binary operations evaluate at the wider of the two
// operand precisions, round-to-nearest. Mixed arithmetic with long/double
// promotes the machine operand to the BigFloat's precision (double literals
// like 0.5 are exact, so nothing is lost for the constants we use).
class BigFloat {
  public:
    BigFloat() { mpfr_init2(v_, 64); }  // NaN at 64 bits
    explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    BigFloat(double x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    BigFloat(long x, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    BigFloat(const mpz_class& z, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
    }
    BigFloat(const mpq_class& q, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }

    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, 64);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    // Parses a decimal string, correctly rounded to prec bits.
    static BigFloat from_string(std::string_view dec, mpfr_prec_t prec);
    // 2^e, exact.
    static BigFloat pow2(long e, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }
    static BigFloat pi(mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    mpz_class floor_mpz() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
        return z;
    }
    mpz_class round_mpz() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }

    // Shortest decimal string that parses back to the same value; digits >= 0
    // forces a fixed digit count.
    std::string to_decimal(int digits = -1) const;

    // Exact textual form "<sign><hex mantissa>e<exponent>" with a fixed
    // mantissa width for a given precision; see orbit file format.
    std::string to_hex_record() const;
    static BigFloat from_hex_record(std::string_view rec, mpfr_prec_t prec);

    // -- arithmetic ---------------------------------------------------------

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(wider(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(wider(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(wider(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(wider(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    BigFloat operator-() const {
        BigFloat r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    BigFloat& operator+=(const BigFloat& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator-=(const BigFloat& o) {
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator*=(const BigFloat& o) {
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator/=(const BigFloat& o) {
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator+=(long o) {
        mpfr_add_si(v_, v_, o, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator-=(long o) {
        mpfr_sub_si(v_, v_, o, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator*=(long o) {
        mpfr_mul_si(v_, v_, o, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator/=(long o) {
        mpfr_div_si(v_, v_, o, MPFR_RNDN);
        return *this;
    }

    friend BigFloat operator+(const BigFloat& a, long b) {
        BigFloat r(a.precision());
        mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator+(long a, const BigFloat& b) { return b + a; }
    friend BigFloat operator-(const BigFloat& a, long b) {
        BigFloat r(a.precision());
        mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(long a, const BigFloat& b) {
        BigFloat r(b.precision());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, long b) {
        BigFloat r(a.precision());
        mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(long a, const BigFloat& b) { return b * a; }
    friend BigFloat operator/(const BigFloat& a, long b) {
        BigFloat r(a.precision());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(long a, const BigFloat& b) {
        BigFloat r(b.precision());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    // -- comparisons (exact, no tolerance) ----------------------------------

    friend bool operator==(const BigFloat& a, const BigFloat& b) {
        return mpfr_equal_p(a.v_, b.v_) != 0;
    }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) {
        return !(a == b);
    }
    friend bool operator<(const BigFloat& a, const BigFloat& b) {
        return mpfr_less_p(a.v_, b.v_) != 0;
    }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) {
        return mpfr_lessequal_p(a.v_, b.v_) != 0;
    }
    friend bool operator>(const BigFloat& a, const BigFloat& b) {
        return mpfr_greater_p(a.v_, b.v_) != 0;
    }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) {
        return mpfr_greaterequal_p(a.v_, b.v_) != 0;
    }
    friend bool operator<(const BigFloat& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const BigFloat& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const BigFloat& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const BigFloat& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
    friend bool operator==(const BigFloat& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

    // -- elementary functions -----------------------------------------------

    friend BigFloat abs(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat floor(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_floor(r.v_, a.v_);
        return r;
    }
    friend BigFloat sqrt(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat log(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_log(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat log2(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_log2(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat log10(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_log10(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat exp(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sin(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_sin(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat cos(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_cos(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    static void sin_cos(BigFloat& s, BigFloat& c, const BigFloat& x) {
        mpfr_sin_cos(s.v_, c.v_, x.v_, MPFR_RNDN);
    }
    friend BigFloat pow(const BigFloat& a, long e) {
        BigFloat r(a.precision());
        mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    friend BigFloat pow(const BigFloat& a, const BigFloat& b) {
        BigFloat r(wider(a, b));
        mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat min(const BigFloat& a, const BigFloat& b) { return a <= b ? a : b; }
    friend BigFloat max(const BigFloat& a, const BigFloat& b) { return a >= b ? a : b; }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    friend std::ostream& operator<<(std::ostream& os, const BigFloat& x) {
        return os << x.to_decimal(25);
    }

  private:
    static mpfr_prec_t wider(const BigFloat& a, const BigFloat& b) {
        return std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_));
    }
    mpfr_t v_;
};

// Working-precision descriptor shared by every numerical operation. eps is
// the classical unit roundoff 2^(1-bits); tolerances are stated as small
// multiples of it.
struct PrecisionContext {
    mpfr_prec_t bits;

    static PrecisionContext make(long bits) {
        if (bits < 64)
            throw DomainError("PrecisionContext: bits must be >= 64, got " +
                              std::to_string(bits));
        return PrecisionContext{static_cast<mpfr_prec_t>(bits)};
    }

    BigFloat eps() const { return BigFloat::pow2(1 - static_cast<long>(bits), bits); }

    // Widened context used internally when building orbits and evaluating
    // algebraic identities, so that roundoff measured in the caller's eps is
    // negligible. Results are always reported against the caller's context.
    PrecisionContext guard(long extra = 64) const {
        return PrecisionContext{bits + extra};
    }

    BigFloat of(double x) const { return BigFloat(x, bits); }
    BigFloat of(long x) const { return BigFloat(x, bits); }
    BigFloat of(const mpz_class& z) const { return BigFloat(z, bits); }
    BigFloat of(const mpq_class& q) const { return BigFloat(q, bits); }
    BigFloat parse(std::string_view dec) const { return BigFloat::from_string(dec, bits); }
    // Re-round an existing value to this context's precision.
    BigFloat round(const BigFloat& x) const {
        BigFloat r(bits);
        mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
        return r;
    }
    BigFloat pi() const { return BigFloat::pi(bits); }
    BigFloat zero() const { return BigFloat(0L, bits); }
};

// x reduced to [0,1). Exact: floor and subtraction introduce no roundoff at
// the operand's precision as long as |x| is moderate.
inline BigFloat wrap_unit(const BigFloat& x) {
    BigFloat r = x - floor(x);
    // Guard against r == 1 after rounding when x is a hair below an integer.
    if (r >= 1L) r -= BigFloat(1L, r.precision());
    return r;
}

// Representative of a-b in (-1/2, 1/2]: the signed displacement between two
// circle points along the shorter arc.
inline BigFloat signed_circle_diff(const BigFloat& a, const BigFloat& b) {
    BigFloat d = wrap_unit(a - b);
    if (d > BigFloat(0.5, d.precision())) d -= 1L;
    return d;
}

// Distance on the circle R/Z.
inline BigFloat circle_dist(const BigFloat& a, const BigFloat& b) {
    return abs(signed_circle_diff(a, b));
}

}  // namespace circlelab
