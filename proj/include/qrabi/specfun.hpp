#pragma once

#include <cstddef>

namespace qrabi::specfun {

// Bessel function of the first kind, order 0. Compensated power series for
// |x| <= 20, Hankel asymptotic expansion beyond. Absolute accuracy is a few
// ulp everywhere, which the zero table below relies on.
double bessel_j0(double x);

// Bessel function of the first kind, order 1 (J0' = -J1).
double bessel_j1(double x);

// j-th positive zero gamma_{0,j} of J0, j >= 1. Memoized; the shared table
// grows on demand and is safe to use from several threads.
double j0_zero(std::size_t j);

// Number of zeros of J0 in (0, x].
std::size_t j0_zero_count(double x);

// 1F2({1/2}, {1, 3/2}; -x^2/4) = (1/x) * Integral_0^x J0(u) du, for x >= 0.
// Power series up to x = 30; above that the integral is evaluated as 1 minus
// an asymptotic tail.
double hyp1f2_kernel(double x);

// Li_{-1/2}(x) = sum_{k>=1} sqrt(k) x^k for 0 <= x < 1.
double polylog_neg_half(double x);

// f(t) = Integral_0^t |J0(omega_r tau)| d tau, via the closed form built from
// the hypergeometric kernel and the J0 zeros.
double abs_j0_integral(double omega_r, double t);

namespace detail {
// The two J0 evaluation routes, exposed so the crossover overlap can be
// checked where both are valid.
double j0_series(double x);
double j0_asymptotic(double x);
} // namespace detail

} // namespace qrabi::specfun
