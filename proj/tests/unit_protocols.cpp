#include <cmath>
#include <numbers>

#include <doctest.h>

#include "triloc/errors.hpp"
#include "triloc/ghz_canonical.hpp"
#include "triloc/ghz_protocols.hpp"
#include "triloc/invariants.hpp"
#include "triloc/rng.hpp"
#include "triloc/state.hpp"

using namespace triloc;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

void check_trace(const ProtocolTrace& trace) {
    double total = 0.0;
    for (const ProtocolLeaf& leaf : trace.leaves) {
        CHECK(leaf.fidelity >= 1.0 - 1e-10);
        total += leaf.probability;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    for (double ro : trace.re_omega_levels) {
        CHECK(!std::isnan(ro));
        CHECK(std::abs(ro) < 1e-8);
    }
}

}  // namespace

TEST_CASE("real target family spec builds normalized states") {
    TargetRealSpec spec;
    spec.mu = 0.85;
    spec.delta_b = 0.9;
    spec.delta_c = 1.2;
    const PureState3Q t = target_state(spec);
    CHECK(t.is_normalized(1e-12));
    CHECK(t.at(0, 0, 0).real() == doctest::Approx(0.85).epsilon(1e-12));
    // one_party = A: the second term lives in Alice's |1> block
    CHECK(std::abs(t.at(0, 1, 1)) < 1e-15);
}

TEST_CASE("real protocol reaches grid targets deterministically") {
    for (double mu : {0.55, 0.75, 0.9}) {
        for (Party one : kParties) {
            TargetRealSpec spec;
            spec.mu = mu;
            spec.delta_b = 0.8;
            spec.delta_c = 1.1;
            spec.one_party = one;
            check_trace(ghz_to_real(spec));
        }
    }
}

TEST_CASE("real protocol leaves are exactly the target up to phase") {
    TargetRealSpec spec;
    spec.mu = 0.7;
    spec.delta_b = kHalfPi;
    spec.delta_c = 0.6;
    const ProtocolTrace trace = ghz_to_real(spec);
    REQUIRE(trace.leaves.size() == 8);
    for (const ProtocolLeaf& leaf : trace.leaves)
        CHECK(fidelity_up_to_global_phase(leaf.state, trace.target) >= 1.0 - 1e-10);
}

TEST_CASE("complex protocol reaches its family deterministically") {
    for (double da : {0.4, 1.0, kHalfPi}) {
        TargetComplexSpec spec;
        spec.delta_a = da;
        spec.delta_b = 0.9;
        spec.delta_c = 1.3;
        check_trace(ghz_to_complex(spec));
    }
}

TEST_CASE("complex protocol measurement rounds are complete POVMs") {
    TargetComplexSpec spec;
    spec.delta_a = 0.7;
    spec.delta_b = 1.1;
    spec.delta_c = 0.5;
    const ProtocolTrace trace = ghz_to_complex(spec);
    for (const ProtocolStep& step : trace.steps) {
        const Mat2 sum = step.kraus[0].adjoint() * step.kraus[0] +
                         step.kraus[1].adjoint() * step.kraus[1];
        CHECK((sum - Mat2::identity()).frobenius_norm() < 1e-12);
    }
}

TEST_CASE("protocol targets carry the expected Re Omega") {
    // every reachable target keeps Re Omega = 0, like GHZ itself
    TargetRealSpec spec;
    spec.mu = 0.8;
    spec.delta_b = 0.7;
    spec.delta_c = 1.0;
    const PureState3Q t = target_state(spec);
    CHECK(std::abs(omega(t).real()) < 1e-8);
    TargetComplexSpec cspec;
    cspec.delta_a = 0.9;
    const PureState3Q tc = target_state(cspec);
    CHECK(std::abs(omega(tc).real()) < 1e-8);
}

TEST_CASE("angle validation rejects out-of-range specs") {
    TargetRealSpec bad;
    bad.delta_b = 0.0;
    CHECK_THROWS_AS(ghz_to_real(bad), OutOfRange);
    TargetRealSpec bad2;
    bad2.mu = 1.5;
    CHECK_THROWS_AS(ghz_to_real(bad2), OutOfRange);
    TargetComplexSpec bad3;
    bad3.delta_c = -0.2;
    CHECK_THROWS_AS(ghz_to_complex(bad3), OutOfRange);
}

TEST_CASE("reachability enumeration accepts GHZ and rejects other orbits") {
    PureState3Q ghz;
    ghz.amps[0] = 1.0 / std::numbers::sqrt2;
    ghz.amps[7] = 1.0 / std::numbers::sqrt2;
    Rng rng(61);
    const ReachabilityReport rep = enumerate_reachable_real_targets(ghz, 2, rng);
    REQUIRE(rep.entries.size() == 6);
    for (const ReachabilityEntry& e : rep.entries) {
        CHECK(e.reachable);
        CHECK(e.min_leaf_fidelity >= 1.0 - 1e-10);
    }
    Rng rng2(62);
    const PureState3Q other = random_state(rng2, Ensemble::ghz_class_complex);
    CHECK_THROWS_AS(enumerate_reachable_real_targets(other, 1, rng2), NotGhzOrbit);
}
