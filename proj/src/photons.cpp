#include "qrabi/photons.hpp"

#include "qrabi/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace qrabi::photons {

namespace {
constexpr double tail_mass = 1e-12;
}

PhotonField PhotonField::thermal(double omega0, double temperature) {
    if (!(omega0 > 0.0)) throw std::domain_error("PhotonField: omega0 must be positive");
    if (!(temperature >= 0.0)) throw std::domain_error("PhotonField: negative temperature");
    return {FieldKind::Thermal, omega0, temperature, 0.0};
}

PhotonField PhotonField::coherent(double omega0, double nbar) {
    if (!(omega0 > 0.0)) throw std::domain_error("PhotonField: omega0 must be positive");
    if (!(nbar >= 0.0)) throw std::domain_error("PhotonField: negative nbar");
    return {FieldKind::Coherent, omega0, 0.0, nbar};
}

double mean_photon_number(const PhotonField& field) {
    if (field.kind == FieldKind::Coherent) return field.nbar;
    if (field.temperature == 0.0) return 0.0;
    const auto& k = constants::codata2018;
    double theta = k.hbar * field.omega0 / (k.kB * field.temperature);
    // 1/(e^theta - 1); std::expm1 keeps the hot limit accurate.
    return 1.0 / std::expm1(theta);
}

double occupation_probability(const PhotonField& field, std::size_t n) {
    double nbar = mean_photon_number(field);
    if (field.kind == FieldKind::Thermal) {
        if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
        double q = nbar / (1.0 + nbar);
        return std::pow(q, static_cast<double>(n)) / (1.0 + nbar);
    }
    if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
    double nf = static_cast<double>(n);
    return std::exp(nf * std::log(nbar) - nbar - std::lgamma(nf + 1.0));
}

double photon_number_fluctuation(const PhotonField& field) {
    double nbar = mean_photon_number(field);
    if (field.kind == FieldKind::Thermal) return std::sqrt(nbar * (nbar + 1.0));
    return std::sqrt(nbar);
}

double planck_density_per_photon(double omega0) {
    if (!(omega0 > 0.0)) throw std::domain_error("planck_density_per_photon: omega0 must be positive");
    const auto& k = constants::codata2018;
    return k.hbar * omega0 * omega0 * omega0 / (constants::pi * constants::pi * k.c * k.c * k.c);
}

double energy_density(const PhotonField& field) {
    return planck_density_per_photon(field.omega0) * mean_photon_number(field);
}

std::size_t truncation_count(const PhotonField& field) {
    double nbar = mean_photon_number(field);
    if (nbar == 0.0) return 0;
    if (field.kind == FieldKind::Thermal) {
        // tail mass past N is q^(N+1)
        double q = nbar / (1.0 + nbar);
        double n = std::log(tail_mass) / std::log(q) - 1.0;
        return n <= 0.0 ? 1 : static_cast<std::size_t>(std::ceil(n)) + 1;
    }
    // Poisson: Chernoff bound P(X >= N) <= exp(-nbar) (e nbar / N)^N for N > nbar
    std::size_t n = static_cast<std::size_t>(std::ceil(nbar)) + 1;
    while (true) {
        double nf = static_cast<double>(n);
        double log_bound = -nbar + nf * (1.0 + std::log(nbar) - std::log(nf));
        if (log_bound < std::log(tail_mass)) return n;
        ++n;
    }
}

} // namespace qrabi::photons
