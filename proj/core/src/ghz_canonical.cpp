#include "triloc/ghz_canonical.hpp"

#include <cmath>
#include <numbers>

#include "triloc/errors.hpp"

namespace triloc {

const char* state_class_name(StateClass c) {
    switch (c) {
        case StateClass::GhzClass: return "GhzClass";
        case StateClass::WClass: return "WClass";
        case StateClass::Biseparable: return "Biseparable";
        case StateClass::FullyProduct: return "FullyProduct";
    }
    return "?";
}

StateClass classify(const PureState3Q& state, const Tolerances& tol) {
    int pure_marginals = 0;
    for (Party p : kParties) {
        const Mat2 rho = state.marginal(p);
        const double purity = trace_re(rho * rho);
        if (1.0 - purity <= tol.tangle) ++pure_marginals;
    }
    if (pure_marginals >= 3) return StateClass::FullyProduct;
    if (pure_marginals >= 1) return StateClass::Biseparable;
    return tangle(state) > tol.tangle ? StateClass::GhzClass : StateClass::WClass;
}

namespace {

struct ProductFactors {
    Complex scale;  // |scale| = norm of the term
    Vec2 a, b, c;   // unit vectors, largest-magnitude component real positive
};

Complex phase_of(Complex z) { return z / std::abs(z); }

Vec2 fix_phase(const Vec2& v, Complex& collected) {
    const Complex lead = std::norm(v.e0) >= std::norm(v.e1) ? v.e0 : v.e1;
    const Complex p = phase_of(lead);
    collected *= p;
    return {v.e0 / p, v.e1 / p};
}

/// Splits an (exactly) rank-1 term a (x) b (x) c into unit factors and a scalar.
ProductFactors factor_product_term(const Vec2& alice, const Mat2& m) {
    ProductFactors f;
    // columns of m are proportional to the Bob vector
    const Vec2 col0 = m.col(0), col1 = m.col(1);
    const bool use0 = col0.norm() >= col1.norm();
    const Vec2 braw = use0 ? col0 : col1;
    const Vec2 bunit = braw.normalized();
    // c_k = <bunit, column k> (coefficient of each column along b)
    const Vec2 craw{bunit.dot(col0), bunit.dot(col1)};

    const double na = alice.norm(), nc = craw.norm();
    Vec2 aunit{alice.e0 / na, alice.e1 / na};
    Vec2 cunit{craw.e0 / nc, craw.e1 / nc};
    Complex s = na * nc;
    aunit = fix_phase(aunit, s);
    const Vec2 bfixed = fix_phase(bunit, s);
    cunit = fix_phase(cunit, s);
    f.scale = s;
    f.a = aunit;
    f.b = bfixed;
    f.c = cunit;
    return f;
}

PureState3Q product_state(Complex scale, const Vec2& a, const Vec2& b, const Vec2& c) {
    PureState3Q s;
    const Complex av[2] = {a.e0, a.e1}, bv[2] = {b.e0, b.e1}, cv[2] = {c.e0, c.e1};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) s.at(i, j, k) = scale * av[i] * bv[j] * cv[k];
    return s;
}

Complex overlap(const PureState3Q& s1, const PureState3Q& s2) {
    Complex ov = 0.0;
    for (int n = 0; n < 8; ++n) ov += std::conj(s1.amps[n]) * s2.amps[n];
    return ov;
}

}  // namespace

GhzCanonicalForm decompose_ghz(const PureState3Q& state, const Tolerances& tol) {
    if (classify(state, tol) != StateClass::GhzClass)
        throw NotGhzClass("decompose_ghz requires a GHZ-class state");

    const TMatrixPair tm = t_matrices(state, Party::A);
    const Complex det0 = tm.t0.det();
    const Complex det1 = tm.t1.det();
    const Complex mixed = (tm.t0 + tm.t1).det() - det0 - det1;

    // det(x T0 + y T1) = det0 x^2 + mixed xy + det1 y^2; the discriminant is
    // four times the hyperdeterminant, nonzero on the GHZ class.
    const Complex disc = mixed * mixed - 4.0 * det0 * det1;
    if (std::abs(disc) < 2.0 * tol.tangle)
        throw DegeneratePencil("pencil discriminant " + std::to_string(std::abs(disc)));
    const Complex sq = std::sqrt(disc);
    // cancellation-free homogeneous roots: (q : det0) and (det1 : q)
    const Complex q = std::abs(mixed + sq) >= std::abs(mixed - sq) ? -0.5 * (mixed + sq)
                                                                   : -0.5 * (mixed - sq);
    const Complex x1 = q, y1 = det0;
    const Complex x2 = det1, y2 = q;

    const Complex detR = x1 * y2 - y1 * x2;
    if (std::abs(detR) < 1e-300) throw DegeneratePencil("coincident pencil roots");

    // T_i = sum_r Rinv[i][r] M_r, so |psi> = sum_r (Rinv[0][r],Rinv[1][r]) (x) vec(M_r)
    const Mat2 m1 = x1 * tm.t0 + y1 * tm.t1;
    const Mat2 m2 = x2 * tm.t0 + y2 * tm.t1;
    const Complex inv00 = y2 / detR, inv01 = -y1 / detR;
    const Complex inv10 = -x2 / detR, inv11 = x1 / detR;

    const Vec2 alice1{inv00, inv10};
    const Vec2 alice2{inv01, inv11};

    ProductFactors f1 = factor_product_term(alice1, m1);
    ProductFactors f2 = factor_product_term(alice2, m2);
    if (std::abs(f1.scale) < std::abs(f2.scale)) std::swap(f1, f2);

    GhzCanonicalForm out;
    out.term_mu = product_state(f1.scale, f1.a, f1.b, f1.c);
    out.term_nu = product_state(f2.scale, f2.a, f2.b, f2.c);
    out.mu = std::abs(f1.scale);
    out.nu = std::abs(f2.scale);
    out.omega = overlap(out.term_mu, out.term_nu);
    out.im_sign_ambiguous = (out.mu - out.nu) <= tol.degenerate * out.mu;

    const Vec2* u1[3] = {&f1.a, &f1.b, &f1.c};
    const Vec2* u2[3] = {&f2.a, &f2.b, &f2.c};
    double cos_prod = 1.0;
    for (int p = 0; p < 3; ++p) {
        const Complex co = u1[p]->dot(*u2[p]);
        const Complex si = u1[p]->perp().dot(*u2[p]);
        out.delta[p] = std::atan2(std::abs(si), std::abs(co));
        cos_prod *= std::cos(out.delta[p]);
    }
    double gamma;
    if (out.mu * out.nu * cos_prod > 1e-14) {
        gamma = std::arg(out.omega / (out.mu * out.nu * cos_prod));
    } else {
        gamma = std::arg(f2.scale / f1.scale);
    }
    if (gamma < 0.0) gamma += 2.0 * std::numbers::pi;
    out.gamma = gamma;
    return out;
}

Complex omega(const PureState3Q& state, const Tolerances& tol) {
    return decompose_ghz(state, tol).omega;
}

bool is_real_state(const PureState3Q& state, const Tolerances& tol) {
    const StateClass c = classify(state, tol);
    if (c == StateClass::WClass) return true;
    if (c != StateClass::GhzClass)
        return true;  // bipartite / product cases always admit a real form
    const GhzCanonicalForm form = decompose_ghz(state, tol);
    if (std::abs(form.omega.imag()) <= tol.i6) return true;
    return form.im_sign_ambiguous;  // mu = nu: real despite complex coefficients
}

ConservationReport verify_omega_conservation(const PureState3Q& state, Party party,
                                             const Mat2& k0, const Mat2& k1,
                                             const Tolerances& tol) {
    const Mat2 completeness = k0.adjoint() * k0 + k1.adjoint() * k1 - Mat2::identity();
    if (completeness.frobenius_norm() > 10.0 * tol.unit)
        throw NonUnitaryOperator("Kraus pair does not complete to the identity");
    if (std::abs(k0.det()) < 1e-8 || std::abs(k1.det()) < 1e-8)
        throw OutcomeLeftGhzClass("rank-deficient Kraus element");
    if (classify(state, tol) != StateClass::GhzClass)
        throw NotGhzClass("conservation check requires a GHZ-class input");

    ConservationReport rep;
    rep.re_omega_input = decompose_ghz(state, tol).omega.real();
    const Mat2* ks[2] = {&k0, &k1};
    double avg = 0.0;
    for (int i = 0; i < 2; ++i) {
        auto [outcome, q] = apply_kraus(state, party, *ks[i], tol);
        if (classify(outcome, tol) != StateClass::GhzClass)
            throw OutcomeLeftGhzClass("outcome " + std::to_string(i) + " left the GHZ class");
        rep.probabilities[i] = q;
        rep.re_omega_outcomes[i] = decompose_ghz(outcome, tol).omega.real();
        avg += q * rep.re_omega_outcomes[i];
    }
    rep.re_omega_average = avg;
    rep.difference = std::abs(avg - rep.re_omega_input);
    return rep;
}

PureState3Q state_from_canonical_params(double mu, double nu, double gamma, double delta_a,
                                        double delta_b, double delta_c) {
    const Vec2 zero{1.0, 0.0};
    auto phi = [](double d) { return Vec2{std::cos(d), std::sin(d)}; };
    PureState3Q s;
    const PureState3Q t1 = product_state(mu, zero, zero, zero);
    const PureState3Q t2 = product_state(nu * std::exp(Complex{0.0, gamma}), phi(delta_a),
                                         phi(delta_b), phi(delta_c));
    for (int n = 0; n < 8; ++n) s.amps[n] = t1.amps[n] + t2.amps[n];
    return s.normalized();
}

}  // namespace triloc
