#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "triloc/errors.hpp"
#include "triloc/ghz_canonical.hpp"
#include "triloc/invariants.hpp"
#include "triloc/povm_engine.hpp"
#include "triloc/rng.hpp"
#include "triloc/state.hpp"

using namespace triloc;

TEST_CASE("solve_condpovm satisfies its defining identities") {
    const double a = 0.4, b = std::sqrt(1.0 - a * a);
    for (double lambda : {1.2, 2.0, 5.0, 40.0}) {
        const auto [x, y] = solve_condpovm(a, b, lambda);
        CHECK(y == doctest::Approx(lambda * x).epsilon(1e-14));
        // defining balance: a^2 x (1 - x) = b^2 y (1 - y)
        CHECK(a * a * x * (1.0 - x) ==
              doctest::Approx(b * b * y * (1.0 - y)).epsilon(1e-12));
        CHECK(x > 0.0);
        CHECK(y < 1.0);
    }
}

TEST_CASE("solve_condpovm with equal weights gives x = 1/(1+lambda)") {
    const double a = 1.0 / std::sqrt(2.0);
    for (double lambda : {1.5, 3.0, 10.0}) {
        const auto [x, y] = solve_condpovm(a, a, lambda);
        CHECK(x == doctest::Approx(1.0 / (1.0 + lambda)).epsilon(1e-12));
        CHECK(y == doctest::Approx(lambda / (1.0 + lambda)).epsilon(1e-12));
    }
}

TEST_CASE("solve_condpovm domain checks") {
    CHECK_THROWS_AS(solve_condpovm(0.8, 0.6, 2.0), OutOfRange);  // needs a <= b
    CHECK_THROWS_AS(solve_condpovm(0.4, 0.9, 1.0), OutOfRange);  // lambda > 1
    CHECK_THROWS_AS(solve_condpovm(0.4, 0.9, 0.5), OutOfRange);
    CHECK_THROWS_AS(solve_condpovm(-0.1, 0.9, 2.0), OutOfRange);
}

TEST_CASE("closed-form outcome invariants match a direct computation") {
    Rng rng(51);
    for (int t = 0; t < 8; ++t) {
        const PureState3Q s = random_state(rng, Ensemble::complex_haar);
        const Party p = static_cast<Party>(t % 3);
        TMatrixPair tm = t_matrices(s, p);
        PureState3Q probe = s;
        if (tm.a > tm.b) {
            const Mat2 flip{0.0, 1.0, 1.0, 0.0};
            probe = apply_local_unitary(probe, p, flip);
            tm = t_matrices(probe, p);
        }
        const double lambda = rng.uniform(1.2, 6.0);
        const auto [x, y] = solve_condpovm(tm.a, tm.b, lambda);
        const auto closed = outcome_invariants_closed_form(tm, x, y);
        const auto [outcome, q] =
            apply_kraus(probe, p, Mat2::diag(std::sqrt(x), std::sqrt(y)));
        (void)q;
        const InvariantVector v = compute_invariants(outcome);
        CHECK(std::abs(closed[0] - v.i1) < 1e-11);
        CHECK(std::abs(closed[1] - v.i2) < 1e-11);
        CHECK(std::abs(closed[2] - v.i3) < 1e-11);
        CHECK(std::abs(closed[3] - v.i4) < 1e-11);
        CHECK(std::abs(closed[4] - v.i5) < 1e-11);
    }
}

TEST_CASE("deterministic POVM outcomes share one orbit (real branch)") {
    Rng rng(52);
    const PureState3Q s = random_state(rng, Ensemble::ghz_class_real);
    for (Party p : kParties) {
        const DeterministicPovm povm = make_deterministic_povm(s, p, 2.5);
        const PovmApplication app = apply_deterministic_povm(s, povm);
        CHECK(app.verdict == OrbitRelation::same_orbit);
        CHECK(app.probabilities[0] + app.probabilities[1] ==
              doctest::Approx(1.0).epsilon(1e-10));
        // element completeness on the acting party
        const Mat2 sum =
            povm.kraus(0).adjoint() * povm.kraus(0) + povm.kraus(1).adjoint() * povm.kraus(1);
        CHECK((sum - Mat2::identity()).frobenius_norm() < 1e-10);
    }
}

TEST_CASE("deterministic POVM outcomes share one orbit (complex branch)") {
    Rng rng(53);
    const PureState3Q s = random_state(rng, Ensemble::ghz_class_complex);
    const DeterministicPovm povm = make_deterministic_povm(s, Party::B, 1.8);
    const PovmApplication app = apply_deterministic_povm(s, povm);
    CHECK(app.verdict == OrbitRelation::same_orbit);
}

TEST_CASE("orbit curve matches directly computed outcome invariants") {
    Rng rng(54);
    const PureState3Q s = random_state(rng, Ensemble::ghz_class_real);
    const Party p = Party::A;
    const GateSearchResult gate = find_gate_unitary_real(s, p);
    const OrbitCurve curve = orbit_curve(gate.transformed, p, 1.5, 8.0, 9);
    PureState3Q probe = gate.transformed;
    TMatrixPair tm = t_matrices(probe, p);
    if (tm.a > tm.b) {
        probe = apply_local_unitary(probe, p, Mat2{0.0, 1.0, 1.0, 0.0});
        tm = t_matrices(probe, p);
    }
    for (const OrbitCurvePoint& pt : curve.samples) {
        const auto [x, y] = solve_condpovm(tm.a, tm.b, pt.lambda);
        const auto [outcome, q] =
            apply_kraus(probe, p, Mat2::diag(std::sqrt(x), std::sqrt(y)));
        (void)q;
        const InvariantVector v = compute_invariants(outcome);
        CHECK(std::abs(pt.inv[0] - v.i1) < 1e-10);
        CHECK(std::abs(pt.inv[1] - v.i2) < 1e-10);
        CHECK(std::abs(pt.inv[2] - v.i3) < 1e-10);
        CHECK(std::abs(pt.inv[3] - v.i4) < 1e-10);
        CHECK(std::abs(pt.inv[4] - v.i5) < 1e-10);
    }
}

TEST_CASE("orbit curve rejects non-gate states") {
    Rng rng(55);
    PureState3Q s;
    int guard = 0;
    // find a state that clearly violates the gate conditions
    do {
        s = random_state(rng, Ensemble::ghz_class_complex);
        const GateConditionsResidual r = gate_residuals(t_matrices(s, Party::A));
        if (std::abs(r.r1) > 1e-3) break;
    } while (++guard < 50);
    CHECK_THROWS_AS(orbit_curve(s, Party::A, 1.5, 5.0, 5), GateConditionViolated);
}

TEST_CASE("appendix cubic identities hold on gate states") {
    Rng rng(56);
    const PureState3Q s = random_state(rng, Ensemble::ghz_class_real);
    const GateSearchResult gate = find_gate_unitary_real(s, Party::A);
    const AppendixReport rep = appendix_checks(gate.transformed, Party::A, 3.0);
    CHECK(std::abs(rep.ch_identity_residual) < 1e-10);
    CHECK(rep.g_ratio_residual < 1e-10);
    CHECK(rep.root_product_residual < 1e-10);
    CHECK(rep.exactly_one_root_gt_one);
    CHECK(rep.identity_limit_ok);
    for (double r : rep.cubic_residuals) CHECK(r < 1e-10);
}

TEST_CASE("chains keep Re Omega constant along the trajectory") {
    Rng rng(57);
    const PureState3Q s = random_state(rng, Ensemble::ghz_class_real);
    const ChainResult res = chain_deterministic(
        s, {{Party::A, 2.0}, {Party::B, 1.7}}, Tolerances::defaults(), 0);
    REQUIRE(res.trajectory.size() == 3);
    const double re0 = res.trajectory[0].re_omega;
    for (const ChainPoint& pt : res.trajectory) {
        CHECK(!std::isnan(pt.re_omega));
        CHECK(pt.re_omega == doctest::Approx(re0).epsilon(1e-7));
    }
}
