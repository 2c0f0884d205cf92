#pragma once

#include <cstddef>

namespace qrabi::photons {

enum class FieldKind { Thermal, Coherent };

// Photon-number statistics of the cavity field at the mode frequency omega0.
// Thermal fields are geometric (Bose-Einstein occupancy), coherent fields are
// Poissonian. A thermal field at T = 0 carries nbar = 0 exactly.
struct PhotonField {
    FieldKind kind;
    double omega0;      // rad/s
    double temperature; // K, thermal only
    double nbar;        // coherent only

    static PhotonField thermal(double omega0, double temperature);
    static PhotonField coherent(double omega0, double nbar);
};

double mean_photon_number(const PhotonField& field);
double occupation_probability(const PhotonField& field, std::size_t n);
double photon_number_fluctuation(const PhotonField& field);

// Average energy density per photon per unit angular frequency,
// hbar w^3 / (pi^2 c^3), in J s / m^3.
double planck_density_per_photon(double omega0);

// u(omega0) = planck_density_per_photon(omega0) * nbar.
double energy_density(const PhotonField& field);

// Smallest N such that sum_{n<=N} p_n > 1 - 1e-12 (geometric remainder for
// thermal fields, Chernoff bound for Poisson). All series over n downstream
// truncate here, so results are reproducible.
std::size_t truncation_count(const PhotonField& field);

} // namespace qrabi::photons
