#ifndef TRILOC_GHZ_PROTOCOLS_HPP
#define TRILOC_GHZ_PROTOCOLS_HPP

#include <array>
#include <numbers>
#include <vector>

#include "triloc/rng.hpp"
#include "triloc/state.hpp"

namespace triloc {

/// Real member of the GHZ orbit family reachable deterministically:
/// mu |000> + nu |1>_one |phi(delta_b)>_mid |phi(delta_c)>_last,
/// nu = sqrt(1 - mu^2), phi(d) = cos d |0> + sin d |1>. `mid` and `last` are
/// the two parties other than one_party, in A < B < C order.
struct TargetRealSpec {
    double mu = 1.0 / std::numbers::sqrt2;
    double delta_b = std::numbers::pi / 2;  // angle on the mid party
    double delta_c = std::numbers::pi / 2;  // angle on the last party
    Party one_party = Party::A;
};

/// Complex reachable family:
/// (1/sqrt2)(|000> + i |phi(delta_a) phi(delta_b) phi(delta_c)>).
struct TargetComplexSpec {
    double delta_a = std::numbers::pi / 2;
    double delta_b = std::numbers::pi / 2;
    double delta_c = std::numbers::pi / 2;
};

struct ProtocolStep {
    Party party = Party::A;
    std::array<Mat2, 2> kraus;  // measurement operators on the acting party
};

struct ProtocolLeaf {
    std::vector<int> outcomes;  // branch history, one entry per step
    double probability = 0.0;
    PureState3Q state;  // after all local corrections
    double fidelity = 0.0;  // to the target, up to global phase
};

struct ProtocolTrace {
    PureState3Q initial, target;
    std::vector<ProtocolStep> steps;
    std::vector<ProtocolLeaf> leaves;            // 2^steps of them
    std::vector<double> re_omega_levels;         // branch-averaged Re Omega after each step
};

PureState3Q target_state(const TargetRealSpec& spec);
PureState3Q target_state(const TargetComplexSpec& spec);

/// Three-round deterministic protocol from |GHZ>: two balanced angle-setting
/// POVMs on the non-distinguished parties, then the weight-setting POVM on
/// one_party. Every leaf is verified against the target within tol.proto
/// (BranchCorrectionFailed otherwise).
ProtocolTrace ghz_to_real(const TargetRealSpec& spec,
                          const Tolerances& tol = Tolerances::defaults());

/// Same first two rounds, then the complex third-round POVM on Alice whose
/// outcome pair is related by conjugation plus reflections.
ProtocolTrace ghz_to_complex(const TargetComplexSpec& spec,
                             const Tolerances& tol = Tolerances::defaults());

struct ReachabilityEntry {
    TargetRealSpec spec;
    double min_leaf_fidelity = 0.0;
    bool reachable = false;
};

struct ReachabilityReport {
    std::vector<ReachabilityEntry> entries;
};

/// Samples real targets over all three one_party choices and runs the
/// protocol for each. Requires `state` to be on the GHZ orbit (NotGhzOrbit).
ReachabilityReport enumerate_reachable_real_targets(const PureState3Q& state,
                                                    int samples_per_party, Rng& rng,
                                                    const Tolerances& tol =
                                                        Tolerances::defaults());

}  // namespace triloc

#endif
