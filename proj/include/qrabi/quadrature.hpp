#pragma once

#include <cstddef>
#include <functional>

namespace qrabi::quadrature {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b]. Bisects until the local error
// estimate fits within the interval's share of abs_tol (plus rel_tol of the
// running whole). max_width > 0 forces an initial uniform subdivision, which
// is how oscillatory integrands get resolved before adaptivity takes over.
// Throws std::runtime_error if the depth limit is hit with the tolerance
// still unmet.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol, double max_width = 0.0,
                 int max_depth = 48);

} // namespace qrabi::quadrature
