#pragma once

#include "qrabi/coupling.hpp"
#include "qrabi/photons.hpp"

namespace qrabi::transition {

enum class CavityMode { Ideal, Lossy };

// Exact keeps the photon-number sum; Approx collapses it to the |J0(Omega_R t)|
// form, which is what the reference curves use.
enum class CoefficientMode { Exact, Approx };

struct TransitionModel {
    coupling::TwoLevelSystem system;
    photons::PhotonField field;
    coupling::CouplingSolution coupling;
    CavityMode cavity_mode;

    static TransitionModel make(const coupling::TwoLevelSystem& system,
                                const photons::PhotonField& field,
                                const coupling::CouplingSolution& solution,
                                CavityMode mode);
};

// Net emission probability in an ideal (blackbody) cavity:
// A(0) t sum_n p_n (n+1) 1F2(...; -[g' sqrt(n+1) t]^2).
double prob_ideal(const TransitionModel& model, double t);

// Net emission probability in a lossy cavity: per-n Lorentzian-weighted
// integral over the generalized Rabi frequency.
double prob_lossy(const TransitionModel& model, double t);

// Low-nbar approximation of prob_lossy: one effective term at nbar.
double prob_lossy_low_nbar(const TransitionModel& model, double t);

// Dispatches on cavity_mode.
double emission_prob(const TransitionModel& model, double t);

// P_{1->2}(t) = 1 - P_{2->1}(t).
double absorption_prob(const TransitionModel& model, double t);

// Generalized Einstein coefficients.
double generalized_A(const coupling::CouplingSolution& solution,
                     const photons::PhotonField& field, double t,
                     CoefficientMode mode = CoefficientMode::Approx);
double generalized_B21(const coupling::CouplingSolution& solution,
                       const photons::PhotonField& field, double t,
                       CoefficientMode mode = CoefficientMode::Approx);

// R_{2->1}(t) = u(w0) B21(t) + A(t); R_{1->2}(t) = u~(w0) (nbar+1) B12(t).
double emission_rate(const TransitionModel& model, double t,
                     CoefficientMode mode = CoefficientMode::Approx);
double absorption_rate(const TransitionModel& model, double t,
                       CoefficientMode mode = CoefficientMode::Approx);

// One term of the lossy-cavity sum: prefactor * (4/pi) Integral over the
// Lorentzian-weighted sinc^2 kernel for n-photon Rabi frequency omega_n and
// linewidth c = w0/Q'. Exposed for the per-term cross-checks.
double lossy_term(double prefactor, double omega_n, double linewidth, double t,
                  double tol_abs = 1e-8);

} // namespace qrabi::transition
