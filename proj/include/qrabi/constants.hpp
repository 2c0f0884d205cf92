#pragma once

namespace qrabi::constants {

// CODATA 2018 values, SI units. Fixed at full published precision so that
// every downstream number is reproducible bit for bit.
struct PhysicalConstants {
    double hbar;     // J s
    double kB;       // J/K
    double c;        // m/s
    double epsilon0; // F/m
    double a0;       // m, Bohr radius
    double e;        // C, elementary charge
};

constexpr PhysicalConstants codata2018{
    1.054571817e-34,   // hbar (exact in SI 2019, truncated)
    1.380649e-23,      // kB (exact)
    299792458.0,       // c (exact)
    8.8541878128e-12,  // epsilon0
    5.29177210903e-11, // a0
    1.602176634e-19,   // e (exact)
};

constexpr double pi = 3.14159265358979323846;
constexpr double two_pi = 2.0 * pi;

// Transition dipole moment expressed as a multiple of a0*e, in C m.
double dipole_from_a0e(double multiple);

} // namespace qrabi::constants
