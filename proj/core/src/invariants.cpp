#include "triloc/invariants.hpp"

#include <cmath>

namespace triloc {

TraceMoments trace_moments(const TMatrixPair& t) {
    const Mat2& t0 = t.t0;
    const Mat2& t1 = t.t1;
    const Mat2 t0d = t0.adjoint();
    const Mat2 t1d = t1.adjoint();
    const Mat2 m0 = t0 * t0d;  // T0 T0^dag
    const Mat2 m1 = t1 * t1d;

    TraceMoments out;
    out.f0 = trace_re(m0 * m0);
    out.f1 = trace_re(m1 * m1);
    out.g00 = (t0 * t0d * t0 * t0d * t0 * t0d).trace();
    out.g01 = (t0 * t1d * t0 * t0d * t1 * t0d).trace();
    out.g10 = (t1 * t0d * t1 * t1d * t0 * t1d).trace();
    out.g11 = (t1 * t1d * t1 * t1d * t1 * t1d).trace();
    out.tr01 = (t0 * t1d).trace();
    out.tr10 = (t1 * t0d).trace();
    out.tr0011 = (t0 * t0d * t1 * t1d).trace();
    out.tr0110 = (t0 * t1d * t1 * t0d).trace();
    out.h0 = trace_re(m0 * m0 * m0);
    out.h1 = trace_re(m1 * m1 * m1);
    return out;
}

namespace {

Im6Sign classify_im6(Complex i6, double eps) {
    if (std::abs(i6.imag()) <= eps) return Im6Sign::zero;
    return i6.imag() > 0 ? Im6Sign::positive : Im6Sign::negative;
}

/// Cayley hyperdeterminant of the 2x2x2 amplitude array.
Complex hyperdeterminant(const PureState3Q& s) {
    auto t = [&](int i, int j, int k) { return s.at(i, j, k); };
    const Complex d1 = t(0, 0, 0) * t(0, 0, 0) * t(1, 1, 1) * t(1, 1, 1) +
                       t(0, 0, 1) * t(0, 0, 1) * t(1, 1, 0) * t(1, 1, 0) +
                       t(0, 1, 0) * t(0, 1, 0) * t(1, 0, 1) * t(1, 0, 1) +
                       t(1, 0, 0) * t(1, 0, 0) * t(0, 1, 1) * t(0, 1, 1);
    const Complex d2 = t(0, 0, 0) * t(0, 0, 1) * t(1, 1, 0) * t(1, 1, 1) +
                       t(0, 0, 0) * t(0, 1, 0) * t(1, 0, 1) * t(1, 1, 1) +
                       t(0, 0, 0) * t(1, 0, 0) * t(0, 1, 1) * t(1, 1, 1) +
                       t(0, 0, 1) * t(0, 1, 0) * t(1, 0, 1) * t(1, 1, 0) +
                       t(0, 0, 1) * t(1, 0, 0) * t(0, 1, 1) * t(1, 1, 0) +
                       t(0, 1, 0) * t(1, 0, 0) * t(0, 1, 1) * t(1, 0, 1);
    const Complex d3 = t(0, 0, 0) * t(0, 1, 1) * t(1, 0, 1) * t(1, 1, 0) +
                       t(0, 0, 1) * t(0, 1, 0) * t(1, 0, 0) * t(1, 1, 1);
    return d1 - 2.0 * d2 + 4.0 * d3;
}

double purity(const Mat2& rho) { return trace_re(rho * rho); }

}  // namespace

double tangle(const PureState3Q& state) { return 2.0 * std::abs(hyperdeterminant(state)); }

InvariantVector compute_invariants(const PureState3Q& state, const Tolerances& tol) {
    InvariantVector v;
    v.i1 = purity(state.marginal(Party::A));
    v.i2 = purity(state.marginal(Party::B));
    v.i3 = purity(state.marginal(Party::C));
    v.i4 = tangle(state);

    const TraceMoments m = trace_moments(t_matrices(state, Party::A));
    v.i5 = (m.g00 + 3.0 * m.g01 + 3.0 * m.g10 + m.g11).real();

    // I6 reduced to a 512-term contraction of one- and two-party density
    // matrices (rhoB, rhoC and the Bob-Charlie marginal rhoBC).
    auto t = [&](int i, int j, int k) { return state.at(i, j, k); };
    Complex rB[2][2], rC[2][2], rBC[2][2][2][2];
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            Complex sb = 0.0, sc = 0.0;
            for (int i = 0; i < 2; ++i)
                for (int u = 0; u < 2; ++u) {
                    sb += t(i, x, u) * std::conj(t(i, y, u));
                    sc += t(i, u, x) * std::conj(t(i, u, y));
                }
            rB[x][y] = sb;
            rC[x][y] = sc;
        }
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            for (int m2 = 0; m2 < 2; ++m2)
                for (int n = 0; n < 2; ++n) {
                    Complex s = 0.0;
                    for (int i = 0; i < 2; ++i) s += t(i, j, k) * std::conj(t(i, m2, n));
                    rBC[j][k][m2][n] = s;
                }
    Complex i6 = 0.0;
    for (int j3 = 0; j3 < 2; ++j3)
        for (int j4 = 0; j4 < 2; ++j4)
            for (int j5 = 0; j5 < 2; ++j5)
                for (int j6 = 0; j6 < 2; ++j6)
                    for (int k1 = 0; k1 < 2; ++k1)
                        for (int k2 = 0; k2 < 2; ++k2)
                            for (int k3 = 0; k3 < 2; ++k3)
                                for (int k4 = 0; k4 < 2; ++k4)
                                    for (int k5 = 0; k5 < 2; ++k5)
                                        i6 += rC[k1][k3] * rC[k2][k4] * rB[j6][j5] *
                                              rBC[j3][k3][j4][k5] * rBC[j4][k4][j3][k1] *
                                              rBC[j5][k5][j6][k2];
    v.i6 = i6;
    v.im6_sign = classify_im6(i6, tol.i6);
    return v;
}

InvariantVector brute_force_invariants(const PureState3Q& state, const Tolerances& tol) {
    auto t = [&](int i, int j, int k) { return state.at(i, j, k); };
    const int eps[2][2] = {{0, 1}, {-1, 0}};

    InvariantVector v;

    // I1..I3 as the literal six-index sums
    double i123[3] = {0.0, 0.0, 0.0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int m = 0; m < 2; ++m)
                    for (int p = 0; p < 2; ++p)
                        for (int q = 0; q < 2; ++q) {
                            i123[0] += (t(k, i, j) * std::conj(t(m, i, j)) * t(m, p, q) *
                                        std::conj(t(k, p, q)))
                                           .real();
                            i123[1] += (t(i, k, j) * std::conj(t(i, m, j)) * t(p, m, q) *
                                        std::conj(t(p, k, q)))
                                           .real();
                            i123[2] += (t(i, j, k) * std::conj(t(i, j, m)) * t(p, q, m) *
                                        std::conj(t(p, q, k)))
                                           .real();
                        }
    v.i1 = i123[0];
    v.i2 = i123[1];
    v.i3 = i123[2];

    // I4: 12-index antisymmetric contraction
    Complex i4 = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    for (int m = 0; m < 2; ++m)
                        for (int n = 0; n < 2; ++n)
                            for (int o = 0; o < 2; ++o)
                                for (int p = 0; p < 2; ++p)
                                    for (int q = 0; q < 2; ++q)
                                        for (int r = 0; r < 2; ++r)
                                            for (int s = 0; s < 2; ++s)
                                                for (int u = 0; u < 2; ++u) {
                                                    const int e = eps[i][l] * eps[o][r] *
                                                                  eps[j][m] * eps[p][s] *
                                                                  eps[k][q] * eps[n][u];
                                                    if (e != 0)
                                                        i4 += static_cast<double>(e) * t(i, j, k) *
                                                              t(l, m, n) * t(o, p, q) * t(r, s, u);
                                                }
    v.i4 = std::abs(i4);

    // I5: nine-index contraction
    Complex i5 = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    for (int m = 0; m < 2; ++m)
                        for (int n = 0; n < 2; ++n)
                            for (int o = 0; o < 2; ++o)
                                for (int p = 0; p < 2; ++p)
                                    for (int q = 0; q < 2; ++q)
                                        i5 += t(i, j, k) * std::conj(t(i, l, m)) * t(n, l, o) *
                                              std::conj(t(p, j, o)) * t(p, q, m) *
                                              std::conj(t(n, q, k));
    v.i5 = i5.real();

    // I6: the twelve-amplitude product, with the six Alice indices summed out
    // factor by factor (each i_l appears in exactly one t/conj-t pair) and the
    // remaining 18 binary indices looped literally.
    Complex i6 = 0.0;
    for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2)
            for (int j3 = 0; j3 < 2; ++j3)
                for (int j4 = 0; j4 < 2; ++j4)
                    for (int j5 = 0; j5 < 2; ++j5)
                        for (int j6 = 0; j6 < 2; ++j6)
                            for (int k1 = 0; k1 < 2; ++k1)
                                for (int k2 = 0; k2 < 2; ++k2)
                                    for (int k3 = 0; k3 < 2; ++k3)
                                        for (int k4 = 0; k4 < 2; ++k4)
                                            for (int k5 = 0; k5 < 2; ++k5)
                                                for (int k6 = 0; k6 < 2; ++k6) {
                                                    auto pair = [&](int j, int k, int jc, int kc) {
                                                        Complex s = 0.0;
                                                        for (int i = 0; i < 2; ++i)
                                                            s += t(i, j, k) *
                                                                 std::conj(t(i, jc, kc));
                                                        return s;
                                                    };
                                                    i6 += pair(j1, k1, j1, k3) *
                                                          pair(j2, k2, j2, k4) *
                                                          pair(j3, k3, j4, k5) *
                                                          pair(j4, k4, j3, k1) *
                                                          pair(j5, k5, j6, k2) *
                                                          pair(j6, k6, j5, k6);
                                                }
    v.i6 = i6;
    v.im6_sign = classify_im6(i6, tol.i6);
    return v;
}

const char* orbit_relation_name(OrbitRelation r) {
    switch (r) {
        case OrbitRelation::same_orbit: return "same_orbit";
        case OrbitRelation::conjugate_orbit: return "conjugate_orbit";
        case OrbitRelation::different: return "different";
    }
    return "?";
}

OrbitRelation orbit_fingerprints_equal(const InvariantVector& v1, const InvariantVector& v2,
                                       double tol) {
    const bool continuous_match = std::abs(v1.i1 - v2.i1) <= tol &&
                                  std::abs(v1.i2 - v2.i2) <= tol &&
                                  std::abs(v1.i3 - v2.i3) <= tol &&
                                  std::abs(v1.i4 - v2.i4) <= tol &&
                                  std::abs(v1.i5 - v2.i5) <= tol;
    if (!continuous_match) return OrbitRelation::different;
    if (v1.im6_sign == v2.im6_sign) return OrbitRelation::same_orbit;
    if (v1.im6_sign != Im6Sign::zero && v2.im6_sign != Im6Sign::zero)
        return OrbitRelation::conjugate_orbit;
    return OrbitRelation::different;
}

}  // namespace triloc
