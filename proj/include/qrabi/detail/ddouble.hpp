#pragma once

#include <cmath>

namespace qrabi::detail {

// Minimal double-double arithmetic (~31 significant digits). Used where a
// plain double accumulation would lose the cancellation battle, e.g. the
// alternating Bessel power series at moderate argument.
struct ddouble {
    double hi = 0.0;
    double lo = 0.0;
};

inline ddouble two_sum(double a, double b) {
    double s = a + b;
    double bv = s - a;
    double err = (a - (s - bv)) + (b - bv);
    return {s, err};
}

// requires |a| >= |b|
inline ddouble quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline ddouble two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline ddouble dd_add(const ddouble& a, const ddouble& b) {
    ddouble s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return quick_two_sum(s.hi, lo);
}

inline ddouble dd_mul(const ddouble& a, const ddouble& b) {
    ddouble p = two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, lo);
}

inline ddouble dd_mul(const ddouble& a, double b) {
    ddouble p = two_prod(a.hi, b);
    double lo = p.lo + a.lo * b;
    return quick_two_sum(p.hi, lo);
}

inline ddouble dd_div(const ddouble& a, double b) {
    double q1 = a.hi / b;
    ddouble p = two_prod(q1, b);
    double r = ((a.hi - p.hi) - p.lo) + a.lo;
    return quick_two_sum(q1, r / b);
}

inline ddouble dd_neg(const ddouble& a) { return {-a.hi, -a.lo}; }

inline double dd_value(const ddouble& a) { return a.hi + a.lo; }

} // namespace qrabi::detail
