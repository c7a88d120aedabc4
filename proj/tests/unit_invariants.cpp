#include <cmath>
#include <numbers>

#include <doctest.h>

#include "triloc/errors.hpp"
#include "triloc/invariants.hpp"
#include "triloc/rng.hpp"
#include "triloc/state.hpp"

using namespace triloc;

namespace {

PureState3Q product_state() {
    PureState3Q s;
    s.amps[0] = 1.0;
    return s;
}

}  // namespace

TEST_CASE("frozen invariant values of GHZ") {
    const InvariantVector v = compute_invariants(ghz_state());
    CHECK(v.i1 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(v.i2 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(v.i3 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(v.i4 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(v.i5 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(v.i6.real() == doctest::Approx(1.0 / 32.0).epsilon(1e-12));
    CHECK(std::abs(v.i6.imag()) < 1e-14);
    CHECK(v.im6_sign == Im6Sign::zero);
}

TEST_CASE("frozen invariant values of W") {
    const InvariantVector v = compute_invariants(w_state());
    CHECK(v.i4 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(v.i5 == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
    CHECK(v.i6.real() == doctest::Approx(4.0 / 81.0).epsilon(1e-12));
    CHECK(std::abs(v.i6.imag()) < 1e-14);
}

TEST_CASE("product state invariants are trivial") {
    const InvariantVector v = compute_invariants(product_state());
    CHECK(v.i1 == doctest::Approx(1.0));
    CHECK(v.i2 == doctest::Approx(1.0));
    CHECK(v.i3 == doctest::Approx(1.0));
    CHECK(v.i4 == doctest::Approx(0.0));
    CHECK(v.i5 == doctest::Approx(1.0));
    CHECK(v.i6.real() == doctest::Approx(1.0));
}

TEST_CASE("fast path agrees with the brute-force sums") {
    Rng rng(21);
    for (int t = 0; t < 10; ++t) {
        const Ensemble e = t % 2 ? Ensemble::complex_haar : Ensemble::real_orthogonal;
        const PureState3Q s = random_state(rng, e);
        const InvariantVector fast = compute_invariants(s);
        const InvariantVector brute = brute_force_invariants(s);
        CHECK(std::abs(fast.i1 - brute.i1) < 1e-12);
        CHECK(std::abs(fast.i2 - brute.i2) < 1e-12);
        CHECK(std::abs(fast.i3 - brute.i3) < 1e-12);
        CHECK(std::abs(fast.i4 - brute.i4) < 1e-12);
        CHECK(std::abs(fast.i5 - brute.i5) < 1e-12);
        CHECK(std::abs(fast.i6 - brute.i6) < 1e-12);
    }
}

TEST_CASE("invariants are invariant under local unitaries") {
    Rng rng(22);
    const PureState3Q s = random_state(rng, Ensemble::complex_haar);
    const InvariantVector v0 = compute_invariants(s);
    PureState3Q u = s;
    for (Party p : kParties) u = apply_local_unitary(u, p, rng.haar_unitary());
    const InvariantVector v1 = compute_invariants(u);
    CHECK(orbit_fingerprints_equal(v0, v1, 1e-10) == OrbitRelation::same_orbit);
    CHECK(std::abs(v0.i6 - v1.i6) < 1e-11);
}

TEST_CASE("conjugation flips the sign of Im I6") {
    Rng rng(23);
    PureState3Q s;
    Im6Sign sign = Im6Sign::zero;
    do {  // a Haar state with Im I6 essentially never vanishes; guard anyway
        s = random_state(rng, Ensemble::complex_haar);
        sign = compute_invariants(s).im6_sign;
    } while (sign == Im6Sign::zero);
    const InvariantVector v = compute_invariants(s);
    const InvariantVector vc = compute_invariants(conjugate(s));
    CHECK(vc.i6.imag() == doctest::Approx(-v.i6.imag()).epsilon(1e-12));
    CHECK(orbit_fingerprints_equal(v, vc, 1e-10) == OrbitRelation::conjugate_orbit);
}

TEST_CASE("real states have a zero Im I6 band") {
    Rng rng(24);
    const PureState3Q s = random_state(rng, Ensemble::real_orthogonal);
    const InvariantVector v = compute_invariants(s);
    CHECK(std::abs(v.i6.imag()) < 1e-12);
    CHECK(v.im6_sign == Im6Sign::zero);
    CHECK(orbit_fingerprints_equal(v, v, 1e-10) == OrbitRelation::same_orbit);
}

TEST_CASE("distinct states are reported as different") {
    const InvariantVector v1 = compute_invariants(ghz_state());
    const InvariantVector v2 = compute_invariants(w_state());
    CHECK(orbit_fingerprints_equal(v1, v2, 1e-8) == OrbitRelation::different);
}

TEST_CASE("I5 equals the trace-moment contraction") {
    Rng rng(25);
    const PureState3Q s = random_state(rng, Ensemble::complex_haar);
    const TMatrixPair t = t_matrices(s, Party::A);
    const TraceMoments m = trace_moments(t);
    const double i5 = (m.g00 + 3.0 * m.g01 + 3.0 * m.g10 + m.g11).real();
    CHECK(i5 == doctest::Approx(compute_invariants(s).i5).epsilon(1e-12));
}
