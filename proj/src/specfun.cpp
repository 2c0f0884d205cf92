#include "qrabi/specfun.hpp"

#include "qrabi/constants.hpp"
#include "qrabi/detail/ddouble.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace qrabi::specfun {

using qrabi::detail::ddouble;
using qrabi::detail::dd_add;
using qrabi::detail::dd_div;
using qrabi::detail::dd_mul;
using qrabi::detail::dd_neg;
using qrabi::detail::dd_value;
using qrabi::detail::two_prod;

namespace {

constexpr double series_cut = 20.0; // J0/J1: power series below, Hankel above
constexpr double kernel_cut = 30.0; // 1F2 kernel: series below, tail form above
constexpr double inv_sqrt2 = 0.70710678118654752440;

} // namespace

namespace detail {

// J0 power series in double-double. Near x ~ 20 the largest term is ~8e6, so
// a plain double sum is only ~1e-9 accurate in absolute terms; the dd sum
// keeps the result good to the last few bits, which the zero table needs.
double j0_series(double x) {
    ddouble z = dd_mul(two_prod(x, x), 0.25); // x^2/4
    ddouble term{1.0, 0.0};
    ddouble sum{1.0, 0.0};
    for (int m = 1; m < 400; ++m) {
        term = dd_div(dd_mul(dd_neg(term), z), static_cast<double>(m) * m);
        sum = dd_add(sum, term);
        if (std::fabs(term.hi) < 1e-20 && 2 * m > x) break;
    }
    return dd_value(sum);
}

} // namespace detail

namespace {

double j1_series(double x) {
    ddouble z = dd_mul(two_prod(x, x), 0.25);
    ddouble term{0.5 * x, 0.0};
    ddouble sum = term;
    for (int m = 1; m < 400; ++m) {
        term = dd_div(dd_mul(dd_neg(term), z), static_cast<double>(m) * (m + 1.0));
        sum = dd_add(sum, term);
        if (std::fabs(term.hi) < 1e-20 && 2 * m > x) break;
    }
    return dd_value(sum);
}

// Hankel asymptotic sums: P = sum over even k of (-1)^(k/2) a_k / x^k,
// Q = sum over odd k of (-1)^((k-1)/2) a_k / x^k, with
// a_k = prod_{j=1..k} (mu - (2j-1)^2) / (k! 8^k) and mu = 4 nu^2.
// Truncated at the smallest term; for x > 20 that term is below 1e-16.
void hankel_pq(double mu, double x, double& p, double& q) {
    p = 1.0;
    q = 0.0;
    double ak = 1.0; // a_k / x^k via recurrence
    double prev = 1e300;
    for (int k = 1; k <= 60; ++k) {
        double odd = 2.0 * k - 1.0;
        ak *= (mu - odd * odd) / (8.0 * k * x);
        double mag = std::fabs(ak);
        if (mag >= prev) break;
        prev = mag;
        if (k % 2 == 0) {
            p += ((k / 2) % 2 == 0) ? ak : -ak;
        } else {
            q += (((k - 1) / 2) % 2 == 0) ? ak : -ak;
        }
        if (mag < 1e-19) break;
    }
}

} // namespace

namespace detail {

double j0_asymptotic(double x) {
    double p, q;
    hankel_pq(0.0, x, p, q);
    double c = std::cos(x);
    double s = std::sin(x);
    double cos_chi = (c + s) * inv_sqrt2; // cos(x - pi/4)
    double sin_chi = (s - c) * inv_sqrt2; // sin(x - pi/4)
    return std::sqrt(2.0 / (constants::pi * x)) * (p * cos_chi - q * sin_chi);
}

} // namespace detail

namespace {

double j1_asymptotic(double x) {
    double p, q;
    hankel_pq(4.0, x, p, q);
    double c = std::cos(x);
    double s = std::sin(x);
    double cos_chi = (s - c) * inv_sqrt2;  // cos(x - 3pi/4)
    double sin_chi = -(s + c) * inv_sqrt2; // sin(x - 3pi/4)
    return std::sqrt(2.0 / (constants::pi * x)) * (p * cos_chi - q * sin_chi);
}

// Tail integral T(x) = Integral_x^inf J0(u) du for x > 30, by repeated
// integration by parts of the Hankel form J0 = g cos(chi) + h sin(chi),
// where g, h are sums of c_k u^(-1/2-k). Each pass contributes the boundary
// term -g(x) sin(chi) + h(x) cos(chi) and maps (g, h) -> (h', -g'). Stops at
// the smallest boundary term (~1e-2x), far below double precision here.
double j0_tail_integral(double x) {
    const double amp = std::sqrt(2.0 / constants::pi);
    std::vector<double> g(80, 0.0), h(80, 0.0);
    double ak = 1.0;
    g[0] = amp;
    for (int k = 1; k <= 16; ++k) {
        double odd = 2.0 * k - 1.0;
        ak *= (0.0 - odd * odd) / (8.0 * k);
        if (k % 2 == 0) {
            g[k] = amp * (((k / 2) % 2 == 0) ? ak : -ak);
        } else {
            h[k] = -amp * ((((k - 1) / 2) % 2 == 0) ? ak : -ak);
        }
    }

    double c = std::cos(x);
    double s = std::sin(x);
    double cos_chi = (c + s) * inv_sqrt2;
    double sin_chi = (s - c) * inv_sqrt2;

    auto eval = [&](const std::vector<double>& f, int len) {
        // Horner in 1/x times x^(-1/2)
        double acc = 0.0;
        for (int k = len - 1; k >= 0; --k) acc = acc / x + f[k];
        return acc / std::sqrt(x);
    };

    double total = 0.0;
    double prev = 1e300;
    int len = 17;
    for (int step = 0; step < 60 && len < static_cast<int>(g.size()); ++step) {
        double gb = eval(g, len);
        double hb = eval(h, len);
        double boundary = -gb * sin_chi + hb * cos_chi;
        double mag = std::fabs(gb) + std::fabs(hb);
        if (mag >= prev) break;
        prev = mag;
        total += boundary;
        if (mag < 1e-18) break;
        // (g, h) <- (h', -g');  (c_k u^(-1/2-k))' = -(k+1/2) c_k u^(-1/2-(k+1))
        std::vector<double> gn(g.size(), 0.0), hn(h.size(), 0.0);
        for (int k = 0; k < len; ++k) {
            gn[k + 1] = -(k + 0.5) * h[k];
            hn[k + 1] = (k + 0.5) * g[k];
        }
        g.swap(gn);
        h.swap(hn);
        ++len;
    }
    return total;
}

double mcmahon_guess(std::size_t j) {
    double b = (static_cast<double>(j) - 0.25) * constants::pi;
    double u = 1.0 / (8.0 * b);
    return b + u * (1.0 + u * u * (-124.0 / 3.0 + u * u * (120928.0 / 15.0)));
}

double refine_zero(double x0) {
    double x = x0;
    for (int i = 0; i < 8; ++i) {
        double f = bessel_j0(x);
        double d = -bessel_j1(x);
        double step = f / d;
        x -= step;
        if (std::fabs(step) < 1e-15 * x) break;
    }
    if (std::fabs(bessel_j0(x)) > 1e-13) {
        // bisection fallback; zeros are simple and ~pi apart
        double lo = x - 0.5, hi = x + 0.5;
        double flo = bessel_j0(lo);
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            double fm = bessel_j0(mid);
            if ((flo < 0.0) == (fm < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
            if (hi - lo < 1e-15 * hi) break;
        }
        x = 0.5 * (lo + hi);
    }
    return x;
}

// Memoized table of J0 zeros plus the running signed sums
// S_m = sum_{j=1..m} (-1)^j gamma_j K(gamma_j) used by abs_j0_integral.
class ZeroTable {
public:
    static ZeroTable& instance() {
        static ZeroTable table;
        return table;
    }

    double zero(std::size_t j) {
        std::lock_guard<std::mutex> lock(mu_);
        grow_to(j);
        return zeros_[j - 1];
    }

    std::size_t count_below(double x) {
        std::lock_guard<std::mutex> lock(mu_);
        auto needed = static_cast<std::size_t>(x / constants::pi + 1.0) + 2;
        grow_to(needed);
        auto it = std::upper_bound(zeros_.begin(), zeros_.end(), x);
        return static_cast<std::size_t>(it - zeros_.begin());
    }

    double cum(std::size_t m) {
        if (m == 0) return 0.0;
        std::lock_guard<std::mutex> lock(mu_);
        grow_to(m);
        return cums_[m - 1];
    }

private:
    void grow_to(std::size_t n) {
        while (zeros_.size() < n) {
            std::size_t j = zeros_.size() + 1;
            double z = refine_zero(mcmahon_guess(j));
            double term = z * hyp1f2_kernel(z); // Integral_0^z J0
            double sgn = (j % 2 == 0) ? 1.0 : -1.0;
            double prev = cums_.empty() ? 0.0 : cums_.back();
            zeros_.push_back(z);
            cums_.push_back(prev + sgn * term);
        }
    }

    std::mutex mu_;
    std::vector<double> zeros_;
    std::vector<double> cums_;
};

} // namespace

double bessel_j0(double x) {
    if (!std::isfinite(x)) throw std::domain_error("bessel_j0: argument must be finite");
    x = std::fabs(x);
    return (x <= series_cut) ? detail::j0_series(x) : detail::j0_asymptotic(x);
}

double bessel_j1(double x) {
    if (!std::isfinite(x)) throw std::domain_error("bessel_j1: argument must be finite");
    double ax = std::fabs(x);
    double v = (ax <= series_cut) ? j1_series(ax) : j1_asymptotic(ax);
    return x < 0.0 ? -v : v;
}

double j0_zero(std::size_t j) {
    if (j == 0) throw std::domain_error("j0_zero: index starts at 1");
    return ZeroTable::instance().zero(j);
}

std::size_t j0_zero_count(double x) {
    if (!(x >= 0.0)) throw std::domain_error("j0_zero_count: argument must be non-negative");
    if (x < 2.4) return 0;
    return ZeroTable::instance().count_below(x);
}

double hyp1f2_kernel(double x) {
    if (!(x >= 0.0)) throw std::domain_error("hyp1f2_kernel: argument must be non-negative");
    if (x == 0.0) return 1.0;
    if (x <= kernel_cut) {
        // sum_m (-1)^m (x^2/4)^m / ((m!)^2 (2m+1))
        ddouble z = dd_mul(two_prod(x, x), 0.25);
        ddouble u{1.0, 0.0}; // J0 series term
        ddouble sum{1.0, 0.0};
        for (int m = 1; m < 400; ++m) {
            u = dd_div(dd_mul(dd_neg(u), z), static_cast<double>(m) * m);
            sum = dd_add(sum, dd_div(u, 2.0 * m + 1.0));
            if (std::fabs(u.hi) < 1e-20 && 2 * m > x) break;
        }
        return dd_value(sum);
    }
    return (1.0 - j0_tail_integral(x)) / x;
}

double polylog_neg_half(double x) {
    if (!(x >= 0.0) || x >= 1.0) {
        throw std::domain_error("polylog_neg_half: argument must lie in [0, 1)");
    }
    if (x == 0.0) return 0.0;
    double sum = 0.0, comp = 0.0, xk = 1.0;
    for (std::size_t k = 1; k <= 1000000; ++k) {
        xk *= x;
        double term = std::sqrt(static_cast<double>(k)) * xk;
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (term < 1e-17 * sum) return sum;
    }
    throw std::runtime_error("polylog_neg_half: series not converged within 1e6 terms");
}

double abs_j0_integral(double omega_r, double t) {
    if (!(omega_r > 0.0)) throw std::domain_error("abs_j0_integral: omega_r must be positive");
    if (!(t >= 0.0)) throw std::domain_error("abs_j0_integral: negative time");
    if (t == 0.0) return 0.0;
    double x = omega_r * t;
    auto& table = ZeroTable::instance();
    std::size_t m = (x < 2.4) ? 0 : table.count_below(x);
    // Between gamma_m and gamma_{m+1} the sign of J0 is (-1)^m, which stands
    // in for the unit-step factor without evaluating J0 near its zeros.
    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return (sign * x * hyp1f2_kernel(x) - 2.0 * table.cum(m)) / omega_r;
}

} // namespace qrabi::specfun
