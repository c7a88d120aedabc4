#ifndef TRILOC_GHZ_CANONICAL_HPP
#define TRILOC_GHZ_CANONICAL_HPP

#include <array>

#include "triloc/invariants.hpp"
#include "triloc/state.hpp"

namespace triloc {

enum class StateClass { GhzClass, WClass, Biseparable, FullyProduct };

const char* state_class_name(StateClass c);

/// The unique two-product-term splitting |psi> = |mu> + |nu> of a GHZ-class
/// state, with the canonical-frame parameters
/// mu|000> + nu e^{i gamma} |phi_A phi_B phi_C>,
/// phi_X = cos(delta_X)|0> + sin(delta_X)|1>, and Omega = <mu|nu>.
struct GhzCanonicalForm {
    double mu = 0.0, nu = 0.0;               // mu >= nu > 0
    double gamma = 0.0;                      // [0, 2pi)
    std::array<double, 3> delta{};           // delta_A, delta_B, delta_C in (0, pi/2]
    PureState3Q term_mu, term_nu;            // unnormalized product vectors, sum = input
    Complex omega{};
    bool im_sign_ambiguous = false;          // mu ~= nu: the Im(Omega) sign is not defined
};

StateClass classify(const PureState3Q& state, const Tolerances& tol = Tolerances::defaults());

/// Pencil split: the two rank-1 loci of x*T0 + y*T1 (Alice's slices) give the
/// two product terms. Throws NotGhzClass / DegeneratePencil.
GhzCanonicalForm decompose_ghz(const PureState3Q& state,
                               const Tolerances& tol = Tolerances::defaults());

Complex omega(const PureState3Q& state, const Tolerances& tol = Tolerances::defaults());

/// True iff the state is locally-unitarily equivalent to a real-amplitude
/// state: W class, or GHZ class with Im(Omega) ~ 0, or GHZ class with mu = nu.
bool is_real_state(const PureState3Q& state, const Tolerances& tol = Tolerances::defaults());

struct ConservationReport {
    double re_omega_input = 0.0;
    double re_omega_average = 0.0;  // sum_i q_i Re Omega(outcome_i)
    double difference = 0.0;
    std::array<double, 2> probabilities{};
    std::array<double, 2> re_omega_outcomes{};
};

/// Checks the phase-averaging identity Re Omega(psi) = sum_i q_i Re Omega(phi_i)
/// for a one-party 2-outcome Kraus pair. Requires full-rank operators; throws
/// OutcomeLeftGhzClass when an outcome leaves the GHZ class.
ConservationReport verify_omega_conservation(const PureState3Q& state, Party party,
                                             const Mat2& k0, const Mat2& k1,
                                             const Tolerances& tol = Tolerances::defaults());

/// Rebuilds the canonical-form state from parameters (normalized).
PureState3Q state_from_canonical_params(double mu, double nu, double gamma, double delta_a,
                                        double delta_b, double delta_c);

}  // namespace triloc

#endif
