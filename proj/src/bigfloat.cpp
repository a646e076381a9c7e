#include "circlelab/bigfloat.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace circlelab {

BigFloat BigFloat::from_string(std::string_view dec, mpfr_prec_t prec) {
    BigFloat r(prec);
    std::string s(dec);
    if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw DomainError("BigFloat: cannot parse decimal literal '" + s + "'");
    return r;
}

std::string BigFloat::to_decimal(int digits) const {
    if (mpfr_zero_p(v_)) return "0";
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_signbit(v_) ? "-inf" : "inf";
    mpfr_exp_t e = 0;
    size_t n = digits >= 0 ? static_cast<size_t>(digits) : 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, n, v_, MPFR_RNDN);
    std::string digs(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (digs[0] == '-') {
        sign = "-";
        digs.erase(0, 1);
    }
    // value = 0.<digs> * 10^e  ->  d.ddd e(e-1)
    std::string out = sign + digs.substr(0, 1);
    if (digs.size() > 1) out += "." + digs.substr(1);
    out += "e" + std::to_string(static_cast<long>(e) - 1);
    return out;
}

// Mantissa width: the leading base-16 digit may carry a single significant
// bit, so one digit beyond ceil(prec/4) guarantees exact round trips.
static size_t hex_mantissa_width(mpfr_prec_t prec) {
    return static_cast<size_t>((prec + 3) / 4) + 1;
}

std::string BigFloat::to_hex_record() const {
    if (!mpfr_number_p(v_)) throw DomainError("BigFloat: non-finite value in to_hex_record");
    const size_t width = hex_mantissa_width(precision());
    char sign = mpfr_signbit(v_) ? '-' : '+';
    std::string digs(width, '0');
    long e = 0;
    if (!mpfr_zero_p(v_)) {
        mpfr_exp_t ex = 0;
        char* raw = mpfr_get_str(nullptr, &ex, 16, width, v_, MPFR_RNDN);
        std::string s(raw);
        mpfr_free_str(raw);
        if (s[0] == '-') s.erase(0, 1);
        s.resize(width, '0');
        digs = s;
        e = static_cast<long>(ex);
    }
    char expbuf[32];
    std::snprintf(expbuf, sizeof expbuf, "%+07ld", e);
    return std::string(1, sign) + digs + "e" + expbuf;
}

BigFloat BigFloat::from_hex_record(std::string_view rec, mpfr_prec_t prec) {
    const size_t width = hex_mantissa_width(prec);
    // layout: sign, width mantissa digits, 'e', signed 6-digit exponent
    if (rec.size() != width + 9 || (rec[0] != '+' && rec[0] != '-') || rec[width + 1] != 'e')
        throw DomainError("BigFloat: malformed hex record '" + std::string(rec) + "'");
    std::string mant(rec.substr(1, width));
    std::string exp(rec.substr(width + 2));
    // value = ±0.<mant> * 16^exp
    std::string lit = std::string(rec[0] == '-' ? "-0." : "0.") + mant + "@" + exp;
    BigFloat r(prec);
    if (mpfr_set_str(r.v_, lit.c_str(), 16, MPFR_RNDN) != 0)
        throw DomainError("BigFloat: malformed hex record '" + std::string(rec) + "'");
    return r;
}

}  // namespace circlelab
