#ifndef TRILOC_INVARIANTS_HPP
#define TRILOC_INVARIANTS_HPP

#include "triloc/state.hpp"
#include "triloc/tolerances.hpp"

namespace triloc {

enum class Im6Sign { positive, negative, zero };

/// Local-unitary orbit fingerprint: the five real invariants I1..I5, the
/// complex invariant I6, and the sign of Im(I6) (the discrete invariant that
/// separates a complex state from its conjugate).
struct InvariantVector {
    double i1 = 0.0, i2 = 0.0, i3 = 0.0, i4 = 0.0, i5 = 0.0;
    Complex i6{};
    Im6Sign im6_sign = Im6Sign::zero;
};

/// The T-matrix traces that drive the closed-form outcome invariants:
/// F_i = Tr[(T_i T_i^dag)^2], G_ij = Tr[T_i T_j^dag T_i T_i^dag T_j T_i^dag],
/// the pairwise cross traces, and the cubes h_i = Tr[(T_i T_i^dag)^3].
struct TraceMoments {
    double f0 = 0.0, f1 = 0.0;
    Complex g00{}, g01{}, g10{}, g11{};
    Complex tr01{}, tr10{};    // Tr[T0 T1^dag], Tr[T1 T0^dag]
    Complex tr0011{}, tr0110{};  // Tr[T0 T0^dag T1 T1^dag], Tr[T0 T1^dag T1 T0^dag]
    double h0 = 0.0, h1 = 0.0;
};

TraceMoments trace_moments(const TMatrixPair& t);

/// Fast path: marginal purities for I1..I3, the hyperdeterminant expansion for
/// I4, T-matrix trace contractions for I5 and a density-matrix reduction for
/// I6. Validated against brute_force_invariants.
InvariantVector compute_invariants(const PureState3Q& state,
                                   const Tolerances& tol = Tolerances::defaults());

/// Oracle path: literal index sums (2^12 terms for I4, 2^18 for I5's loop
/// structure, the factored 18-index loop for I6). Slow; used for validation.
InvariantVector brute_force_invariants(const PureState3Q& state,
                                       const Tolerances& tol = Tolerances::defaults());

/// I4 alone (the 3-tangle contraction), cheap enough for rejection sampling.
double tangle(const PureState3Q& state);

enum class OrbitRelation { same_orbit, conjugate_orbit, different };

const char* orbit_relation_name(OrbitRelation r);

/// same_orbit when I1..I5 agree within tol and the Im(I6) signs match
/// (or are both zero); conjugate_orbit when I1..I5 agree but the signs are
/// opposite and nonzero.
OrbitRelation orbit_fingerprints_equal(const InvariantVector& v1, const InvariantVector& v2,
                                       double tol);

}  // namespace triloc

#endif
