#include "triloc/povm_engine.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "triloc/errors.hpp"
#include "triloc/ghz_canonical.hpp"

namespace triloc {

std::pair<double, double> solve_condpovm(double a, double b, double lambda) {
    if (!(a > 0.0) || !(b > 0.0) || a > b * (1.0 + 1e-12))
        throw OutOfRange("solve_condpovm requires 0 < a <= b");
    if (!(lambda > 1.0) || !std::isfinite(lambda))
        throw OutOfRange("lambda must be finite and > 1");
    const double x = (a * a - b * b * lambda) / (a * a - b * b * lambda * lambda);
    const double y = lambda * x;
    if (!(x > 0.0) || !(x < 1.0) || !(y > 0.0) || !(y < 1.0))
        throw OutOfRange("POVM weights left (0, 1) at lambda " + std::to_string(lambda));
    return {x, y};
}

namespace {

const Mat2 kBitFlip{0.0, 1.0, 1.0, 0.0};

/// Global invariant index (0..2) of the slice-relative slots
/// {acting party, slice rows, slice columns}.
std::array<int, 3> slot_to_global(Party p) {
    switch (p) {
        case Party::A: return {0, 1, 2};
        case Party::B: return {1, 0, 2};  // rows are Alice, columns Charlie
        case Party::C: return {2, 0, 1};  // rows are Alice, columns Bob
    }
    return {0, 1, 2};
}

double re_omega_or_nan(const PureState3Q& state, const Tolerances& tol) {
    try {
        return decompose_ghz(state, tol).omega.real();
    } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace

std::array<double, 5> outcome_invariants_closed_form(const TMatrixPair& t, double x, double y) {
    const TraceMoments m = trace_moments(t);
    const double a = t.a, b = t.b;
    const double p = a * x + b * y;
    const double p2 = p * p, p3 = p2 * p;

    const double acting =
        (x * x * a * a + 2.0 * x * y * (m.tr01 * m.tr10).real() + y * y * b * b) / p2;
    const double rows = (x * x * m.f0 + 2.0 * x * y * m.tr0011.real() + y * y * m.f1) / p2;
    const double cols = (x * x * m.f0 + 2.0 * x * y * m.tr0110.real() + y * y * m.f1) / p2;

    std::array<double, 5> out{};
    const std::array<int, 3> idx = slot_to_global(t.party);
    out[idx[0]] = acting;
    out[idx[1]] = rows;
    out[idx[2]] = cols;

    // the hyperdeterminant picks up det(diag(sqrt x, sqrt y))^2 = xy
    out[3] = tangle(reassemble(t.t0, t.t1, t.party)) * x * y / p2;
    out[4] = (x * x * x * m.g00 + 3.0 * x * x * y * m.g01 + 3.0 * x * y * y * m.g10 +
              y * y * y * m.g11)
                 .real() /
             p3;
    return out;
}

DeterministicPovm make_deterministic_povm(const PureState3Q& state, Party party, double lambda,
                                          const Tolerances& tol) {
    DeterministicPovm povm;
    povm.party = party;
    povm.lambda = lambda;
    povm.gate = state.is_real(1e-8) ? find_gate_unitary_real(state, party, tol)
                                    : find_gate_unitary_complex(state, party, tol);

    PureState3Q probe = povm.gate.transformed;
    povm.pre_rotation = povm.gate.unitary;
    TMatrixPair tm = t_matrices(probe, party);
    if (tm.a > tm.b) {
        povm.flipped = true;
        povm.pre_rotation = kBitFlip * povm.pre_rotation;
        probe = apply_local_unitary(probe, party, kBitFlip, tol);
        tm = t_matrices(probe, party);
    }
    std::tie(povm.x, povm.y) = solve_condpovm(tm.a, tm.b, lambda);

    const PovmApplication check = apply_deterministic_povm(state, povm, tol);
    if (check.verdict != OrbitRelation::same_orbit)
        throw GateConditionViolated("constructed POVM is not deterministic (verdict " +
                                    std::string(orbit_relation_name(check.verdict)) + ")");
    return povm;
}

PovmApplication apply_deterministic_povm(const PureState3Q& state, const DeterministicPovm& povm,
                                         const Tolerances& tol) {
    const PureState3Q rotated = apply_local_unitary(state, povm.party, povm.pre_rotation, tol);
    const GateConditionsResidual r = gate_residuals(t_matrices(rotated, povm.party));
    const double mag = std::max(std::abs(r.r1), std::abs(r.r2));
    if (mag > 10.0 * tol.gate)
        throw GateConditionViolated("pre-rotated state violates the gate conditions (residual " +
                                    std::to_string(mag) + ")");

    PovmApplication app;
    for (int i = 0; i < 2; ++i) {
        auto [outcome, q] = apply_kraus(rotated, povm.party, povm.diag_element(i), tol);
        app.outcomes[i] = outcome;
        app.probabilities[i] = q;
        app.fingerprints[i] = compute_invariants(outcome, tol);
    }
    app.verdict = orbit_fingerprints_equal(app.fingerprints[0], app.fingerprints[1], tol.orbit);
    return app;
}

double OrbitCurve::eval(int i, double lambda) const {
    const double d = a + b * lambda;
    if (i < 4) return alpha[i] + beta[i] * lambda / (d * d);
    return alpha[4] + lambda * (beta[4] + gamma5 * lambda) / (d * d * d);
}

OrbitCurve orbit_curve(const PureState3Q& gate_state, Party party, double lambda_min,
                       double lambda_max, int n_samples, const Tolerances& tol) {
    if (!(lambda_min > 1.0) || !(lambda_max > lambda_min) || n_samples < 2)
        throw OutOfRange("need 1 < lambda_min < lambda_max and at least two samples");

    PureState3Q s = gate_state;
    TMatrixPair tm = t_matrices(s, party);
    {
        const GateConditionsResidual r = gate_residuals(tm);
        const double mag = std::max(std::abs(r.r1), std::abs(r.r2));
        if (mag > 10.0 * tol.gate)
            throw GateConditionViolated("orbit curve requires a gate state (residual " +
                                        std::to_string(mag) + ")");
    }
    OrbitCurve curve;
    curve.party = party;
    if (tm.a > tm.b) {
        curve.flipped = true;
        s = apply_local_unitary(s, party, kBitFlip, tol);
        tm = t_matrices(s, party);
    }
    curve.a = tm.a;
    curve.b = tm.b;

    const TraceMoments m = trace_moments(tm);
    const double a = tm.a, b = tm.b;
    const std::array<int, 3> idx = slot_to_global(party);
    curve.alpha[idx[0]] = 1.0;
    curve.beta[idx[0]] = 2.0 * ((m.tr01 * m.tr10).real() - a * b);
    curve.alpha[idx[1]] = m.f0 / (a * a);
    curve.beta[idx[1]] = 2.0 * (m.tr0011.real() - b * m.f0 / a);
    curve.alpha[idx[2]] = m.f0 / (a * a);
    curve.beta[idx[2]] = 2.0 * (m.tr0110.real() - b * m.f0 / a);
    curve.alpha[3] = 0.0;
    curve.beta[3] = tangle(s);
    curve.alpha[4] = m.h0 / (a * a * a);
    curve.beta[4] = 3.0 * (m.g01.real() - b * m.h0 / a);
    curve.gamma5 = 3.0 * (m.g10.real() - b * b * m.h0 / (a * a));

    curve.samples.reserve(n_samples);
    for (int j = 0; j < n_samples; ++j) {
        OrbitCurvePoint pt;
        pt.lambda = lambda_min + (lambda_max - lambda_min) * j / (n_samples - 1);
        for (int i = 0; i < 5; ++i) pt.inv[i] = curve.eval(i, pt.lambda);
        const auto [x, y] = solve_condpovm(a, b, pt.lambda);
        const auto [outcome, q] =
            apply_kraus(s, party, Mat2::diag(std::sqrt(x), std::sqrt(y)), tol);
        (void)q;
        pt.re_omega = re_omega_or_nan(outcome, tol);
        curve.samples.push_back(pt);
    }
    return curve;
}

ChainResult chain_deterministic(const PureState3Q& state, const std::vector<ChainStep>& steps,
                                const Tolerances& tol, int branch) {
    if (branch != 0 && branch != 1) throw OutOfRange("branch must be 0 or 1");
    ChainResult out;
    PureState3Q current = state;
    auto record = [&](const PureState3Q& s, double prob) {
        const InvariantVector v = compute_invariants(s, tol);
        ChainPoint pt;
        pt.inv = {v.i1, v.i2, v.i3, v.i4, v.i5};
        pt.re_omega = re_omega_or_nan(s, tol);
        pt.probability = prob;
        out.states.push_back(s);
        out.trajectory.push_back(pt);
    };
    record(current, 1.0);
    for (const ChainStep& step : steps) {
        const DeterministicPovm povm = make_deterministic_povm(current, step.party, step.lambda, tol);
        const PovmApplication app = apply_deterministic_povm(current, povm, tol);
        current = app.outcomes[branch];
        record(current, app.probabilities[branch]);
    }
    return out;
}

AppendixReport appendix_checks(const PureState3Q& gate_state, Party party, double lambda,
                               const Tolerances& tol) {
    PureState3Q s = gate_state;
    TMatrixPair tm = t_matrices(s, party);
    {
        const GateConditionsResidual r = gate_residuals(tm);
        const double mag = std::max(std::abs(r.r1), std::abs(r.r2));
        if (mag > 10.0 * tol.gate)
            throw GateConditionViolated("appendix checks require a gate state (residual " +
                                        std::to_string(mag) + ")");
    }
    if (tm.a > tm.b) {
        s = apply_local_unitary(s, party, kBitFlip, tol);
        tm = t_matrices(s, party);
    }
    const double a = tm.a, b = tm.b;
    const TraceMoments m = trace_moments(tm);
    const auto [x, y] = solve_condpovm(a, b, lambda);

    AppendixReport rep;
    rep.ch_identity_residual = m.h0 - 0.5 * (3.0 * a * m.f0 - a * a * a);
    rep.g_ratio_residual = std::abs(m.g00 / (a * a * a) - m.g11 / (b * b * b));
    rep.root_z0 = lambda;
    rep.root_z1 = (1.0 - y) / (1.0 - x);
    rep.root_z2 = -a / b;
    rep.root_product_residual = std::abs(rep.root_z0 * rep.root_z1 - a * a / (b * b));
    rep.exactly_one_root_gt_one = (rep.root_z0 > 1.0) != (rep.root_z1 > 1.0);
    rep.i5_in = (m.g00 + 3.0 * m.g01 + 3.0 * m.g10 + m.g11).real();
    rep.i5_out = outcome_invariants_closed_form(tm, x, y)[4];

    // the outcome-I5 cubic: z0, z1 and z2 must all be roots
    const double mu = rep.i5_out;
    const double c3 = m.g11.real() - mu * b * b * b;
    const double c2 = 3.0 * (m.g10.real() - mu * a * b * b);
    const double c1 = 3.0 * (m.g01.real() - mu * a * a * b);
    const double c0 = m.g00.real() - mu * a * a * a;
    const double cmax = std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0), 1e-300});
    auto cubic = [&](double z) { return ((c3 * z + c2) * z + c1) * z + c0; };
    rep.cubic_residuals = {std::abs(cubic(rep.root_z0)) / cmax, std::abs(cubic(rep.root_z1)) / cmax,
                           std::abs(cubic(rep.root_z2)) / cmax};
    rep.i5_decreased = rep.i5_out <= rep.i5_in - 1e-12;
    const auto [x1, y1] = solve_condpovm(a, b, 1.0 + 1e-9);
    rep.identity_limit_ok = std::abs(y1 - x1) <= 1e-6;
    return rep;
}

}  // namespace triloc
