#ifndef TRILOC_POVM_ENGINE_HPP
#define TRILOC_POVM_ENGINE_HPP

#include <array>
#include <vector>

#include "triloc/gate_finder.hpp"
#include "triloc/invariants.hpp"
#include "triloc/state.hpp"

namespace triloc {

/// Weights of the balanced diagonal POVM at parameter lambda = y/x:
/// x = (a^2 - b^2 lambda) / (a^2 - b^2 lambda^2), y = lambda x,
/// which solve a^2 x (1-x) = b^2 y (1-y). Requires 0 < a <= b and lambda > 1;
/// OutOfRange otherwise. At lambda -> 1 the POVM degenerates to the identity.
std::pair<double, double> solve_condpovm(double a, double b, double lambda);

/// One-party two-outcome POVM that transforms a gate state deterministically:
/// both outcomes of {E_i * pre_rotation} lie on a single local-unitary orbit.
struct DeterministicPovm {
    Party party = Party::A;
    double lambda = 0.0;
    double x = 0.0, y = 0.0;
    Mat2 pre_rotation;  // gate unitary, composed with a bit flip when needed
    bool flipped = false;
    GateSearchResult gate;

    Mat2 diag_element(int outcome) const {
        return outcome == 0 ? Mat2::diag(std::sqrt(x), std::sqrt(y))
                            : Mat2::diag(std::sqrt(1.0 - x), std::sqrt(1.0 - y));
    }
    Mat2 kraus(int outcome) const { return diag_element(outcome) * pre_rotation; }
};

/// Finds the gate unitary for `state` (real branch for real amplitudes, the
/// resultant scan otherwise) and assembles the POVM. The returned POVM is
/// verified: applying it yields a same_orbit verdict, else it throws.
DeterministicPovm make_deterministic_povm(const PureState3Q& state, Party party, double lambda,
                                          const Tolerances& tol = Tolerances::defaults());

struct PovmApplication {
    std::array<PureState3Q, 2> outcomes;
    std::array<double, 2> probabilities{};
    std::array<InvariantVector, 2> fingerprints;
    OrbitRelation verdict = OrbitRelation::different;  // outcome 0 vs outcome 1
};

/// Applies the POVM. Throws GateConditionViolated when the pre-rotated state
/// is not a gate state within tol.gate (e.g. the POVM was built for a
/// different state).
PovmApplication apply_deterministic_povm(const PureState3Q& state, const DeterministicPovm& povm,
                                         const Tolerances& tol = Tolerances::defaults());

/// Closed-form invariants I1..I5 of the outcome diag(sqrt x, sqrt y) T / sqrt p
/// of a diagonal POVM element applied to the state with slices t. Exact for
/// any state (no gate conditions needed).
std::array<double, 5> outcome_invariants_closed_form(const TMatrixPair& t, double x, double y);

struct OrbitCurvePoint {
    double lambda = 0.0;
    std::array<double, 5> inv{};
    double re_omega = 0.0;
};

/// Rational parametrization of the outcome orbit of the lambda-family of
/// deterministic POVMs on a gate state:
///   I_i(lambda) = alpha_i + beta_i * lambda / (a + b lambda)^2   (i = 1..4)
///   I_5(lambda) = alpha_5 + lambda (beta_5 + gamma_5 lambda) / (a + b lambda)^3
struct OrbitCurve {
    Party party = Party::A;
    double a = 0.0, b = 0.0;  // slice weights after the a <= b flip
    bool flipped = false;
    std::array<double, 5> alpha{}, beta{};
    double gamma5 = 0.0;
    std::vector<OrbitCurvePoint> samples;

    double eval(int i, double lambda) const;  // i in [0,5)
};

/// Requires a gate state (GateConditionViolated otherwise); samples are taken
/// uniformly on [lambda_min, lambda_max], lambda_min > 1.
OrbitCurve orbit_curve(const PureState3Q& gate_state, Party party, double lambda_min,
                       double lambda_max, int n_samples,
                       const Tolerances& tol = Tolerances::defaults());

struct ChainStep {
    Party party = Party::A;
    double lambda = 2.0;
};

struct ChainPoint {
    std::array<double, 5> inv{};
    double re_omega = 0.0;     // NaN outside the GHZ class
    double probability = 1.0;  // of the branch taken at this step
};

struct ChainResult {
    std::vector<PureState3Q> states;     // initial state first
    std::vector<ChainPoint> trajectory;  // same length as states
};

/// Runs a sequence of deterministic POVMs, following the given outcome branch
/// at every step (both branches are orbit-equivalent by construction).
ChainResult chain_deterministic(const PureState3Q& state, const std::vector<ChainStep>& steps,
                                const Tolerances& tol = Tolerances::defaults(), int branch = 0);

/// Structural identities of gate states and the induced POVM family, built
/// around the cubic (G11 - mu b^3) z^3 + 3(G10 - mu a b^2) z^2
/// + 3(G01 - mu a^2 b) z + (G00 - mu a^3) with mu = I5 of the outcomes,
/// whose roots are z0 = lambda, z1 = (1-y)/(1-x) and z2 = -a/b.
struct AppendixReport {
    double ch_identity_residual = 0.0;  // h0 - (3 a F0 - a^3) / 2
    double g_ratio_residual = 0.0;      // |G00 / a^3 - G11 / b^3|
    double root_z0 = 0.0;               // lambda
    double root_z1 = 0.0;               // (1 - y) / (1 - x)
    double root_z2 = 0.0;               // -a / b
    std::array<double, 3> cubic_residuals{};  // |cubic(z_i)| / max coeff
    double root_product_residual = 0.0;       // |z0 z1 - a^2 / b^2|
    bool exactly_one_root_gt_one = false;     // among z0, z1
    double i5_in = 0.0;
    double i5_out = 0.0;                // both outcomes share this value
    bool i5_decreased = false;          // strict decrease from input to outcome
    bool identity_limit_ok = false;     // x, y -> 1 as lambda -> 1+
};

AppendixReport appendix_checks(const PureState3Q& gate_state, Party party, double lambda,
                               const Tolerances& tol = Tolerances::defaults());

}  // namespace triloc

#endif
