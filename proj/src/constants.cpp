#include "qrabi/constants.hpp"

#include <stdexcept>

namespace qrabi::constants {

double dipole_from_a0e(double multiple) {
    if (!(multiple > 0.0)) {
        throw std::domain_error("dipole_from_a0e: multiple must be positive");
    }
    return multiple * codata2018.a0 * codata2018.e;
}

} // namespace qrabi::constants
