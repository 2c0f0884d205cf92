#include <doctest.h>

#include "oracles.hpp"
#include "qrabi/constants.hpp"
#include "qrabi/photons.hpp"

#include <cmath>

using namespace qrabi;

namespace {
const double brune_omega0 = constants::two_pi * 51.099e9;
}

TEST_CASE("occupation probabilities") {
    auto cold = photons::PhotonField::thermal(brune_omega0, 0.0);
    CHECK(photons::occupation_probability(cold, 0) == 1.0);
    CHECK(photons::occupation_probability(cold, 1) == 0.0);

    auto coherent = photons::PhotonField::coherent(brune_omega0, 0.4);
    CHECK(photons::occupation_probability(coherent, 0) ==
          doctest::Approx(std::exp(-0.4)).epsilon(1e-12));

    auto warm = photons::PhotonField::thermal(brune_omega0, 0.8);
    double nbar = photons::mean_photon_number(warm);
    CHECK(photons::occupation_probability(warm, 1) /
              photons::occupation_probability(warm, 0) ==
          doctest::Approx(nbar / (1.0 + nbar)).epsilon(1e-13));
}

TEST_CASE("probability mass sums to one under the truncation rule") {
    for (auto field : {photons::PhotonField::thermal(brune_omega0, 0.8),
                       photons::PhotonField::thermal(brune_omega0, 5.0),
                       photons::PhotonField::coherent(brune_omega0, 0.4),
                       photons::PhotonField::coherent(brune_omega0, 3.0)}) {
        std::size_t nmax = photons::truncation_count(field);
        double mass = 0.0, first = 0.0, second = 0.0;
        for (std::size_t n = 0; n <= nmax; ++n) {
            double p = photons::occupation_probability(field, n);
            mass += p;
            first += static_cast<double>(n) * p;
            second += (static_cast<double>(n) + 1.0) * p;
        }
        double nbar = photons::mean_photon_number(field);
        CHECK(mass > 1.0 - 1e-12);
        CHECK(mass <= 1.0 + 1e-12);
        CHECK(first == doctest::Approx(nbar).epsilon(1e-9));
        CHECK(second == doctest::Approx(nbar + 1.0).epsilon(1e-10));
    }
}

TEST_CASE("mean photon numbers") {
    auto brune = photons::PhotonField::thermal(brune_omega0, 0.8);
    CHECK(photons::mean_photon_number(brune) == doctest::Approx(0.0489).epsilon(0.0002 / 0.0489));

    // hbar w = kB T ln 2 -> exactly one photon on average
    const auto& k = constants::codata2018;
    double t_ln2 = k.hbar * brune_omega0 / (k.kB * std::log(2.0));
    auto one = photons::PhotonField::thermal(brune_omega0, t_ln2);
    CHECK(photons::mean_photon_number(one) == doctest::Approx(1.0).epsilon(1e-12));

    auto sodium = photons::PhotonField::thermal(3.198e15, 2700.0);
    CHECK(photons::mean_photon_number(sodium) == doctest::Approx(1.18e-4).epsilon(0.005));

    auto coherent = photons::PhotonField::coherent(brune_omega0, 0.4);
    CHECK(photons::mean_photon_number(coherent) == 0.4);
}

TEST_CASE("mean photon number is monotone in T and vanishes at T -> 0") {
    double prev = 0.0;
    for (double temp : {0.1, 0.3, 0.8, 2.0, 10.0, 100.0}) {
        double n = photons::mean_photon_number(
            photons::PhotonField::thermal(brune_omega0, temp));
        CHECK(n > prev);
        prev = n;
    }
    CHECK(photons::mean_photon_number(photons::PhotonField::thermal(brune_omega0, 1e-3)) <
          1e-200);
}

TEST_CASE("photon number fluctuation") {
    CHECK(photons::photon_number_fluctuation(
              photons::PhotonField::thermal(brune_omega0, 0.0)) == 0.0);
    auto brune = photons::PhotonField::thermal(brune_omega0, 0.8);
    double nbar = photons::mean_photon_number(brune);
    CHECK(photons::photon_number_fluctuation(brune) ==
          doctest::Approx(std::sqrt(nbar * (nbar + 1.0))).epsilon(1e-14));
    CHECK(photons::photon_number_fluctuation(brune) == doctest::Approx(0.2265).epsilon(1e-3));
    CHECK(photons::photon_number_fluctuation(
              photons::PhotonField::coherent(brune_omega0, 0.4)) ==
          doctest::Approx(std::sqrt(0.4)).epsilon(1e-14));
}

TEST_CASE("planck density per photon") {
    CHECK(photons::planck_density_per_photon(2.0 * brune_omega0) /
              photons::planck_density_per_photon(brune_omega0) ==
          doctest::Approx(8.0).epsilon(1e-14));
    const auto& k = constants::codata2018;
    double expected = k.hbar * std::pow(brune_omega0, 3) /
                      (oracle::pi * oracle::pi * std::pow(k.c, 3));
    CHECK(photons::planck_density_per_photon(brune_omega0) ==
          doctest::Approx(expected).epsilon(1e-14));

    auto brune = photons::PhotonField::thermal(brune_omega0, 0.8);
    CHECK(photons::energy_density(brune) ==
          doctest::Approx(photons::planck_density_per_photon(brune_omega0) *
                          photons::mean_photon_number(brune))
              .epsilon(1e-14));
}

TEST_CASE("field construction guards") {
    CHECK_THROWS_AS((void)photons::PhotonField::thermal(-1.0, 0.8), std::domain_error);
    CHECK_THROWS_AS((void)photons::PhotonField::thermal(brune_omega0, -0.1),
                    std::domain_error);
    CHECK_THROWS_AS((void)photons::PhotonField::coherent(brune_omega0, -0.4),
                    std::domain_error);
}
