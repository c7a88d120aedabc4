#include "triloc/ghz_protocols.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "triloc/errors.hpp"
#include "triloc/ghz_canonical.hpp"
#include "triloc/invariants.hpp"

namespace triloc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

const Mat2 kHadamard{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
const Mat2 kSigmaZ = Mat2::diag(1.0, -1.0);
const Mat2 kSigmaX{0.0, 1.0, 1.0, 0.0};

Vec2 phi(double d) { return {std::cos(d), std::sin(d)}; }

/// The two parties other than `one`, in A < B < C order.
std::pair<Party, Party> other_parties(Party one) {
    switch (one) {
        case Party::A: return {Party::B, Party::C};
        case Party::B: return {Party::A, Party::C};
        case Party::C: return {Party::A, Party::B};
    }
    return {Party::B, Party::C};
}

PureState3Q product_with_factors(Complex scale, const std::array<Vec2, 3>& f) {
    PureState3Q s;
    const Complex a[2] = {f[0].e0, f[0].e1}, b[2] = {f[1].e0, f[1].e1},
                  c[2] = {f[2].e0, f[2].e1};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) s.at(i, j, k) = scale * a[i] * b[j] * c[k];
    return s;
}

struct Branch {
    std::vector<int> outcomes;
    double probability = 1.0;
    PureState3Q state;
};

/// Rotation sending v0hat (real unit vector) to |0>, with the free sign of the
/// second row fixed so that the second component of R v1 is >= 0.
Mat2 aligning_rotation(const Vec2& v0hat, const Vec2& v1) {
    const double c = v0hat.e0.real(), s = v0hat.e1.real();
    Mat2 r{c, s, -s, c};
    if (r.apply(v1).e1.real() < 0.0) {
        r.m10 = s;
        r.m11 = -c;
    }
    return r;
}

/// One balanced angle-setting round: Hadamard on `party`, then the diagonal
/// POVM with x = (1 + cos delta)/2, then the outcome corrections (a rotation
/// on `party`; outcome 1 additionally diag(1,-1) on `party` and sigma_z on
/// `sign_party`).
ProtocolStep run_balanced_step(std::vector<Branch>& branches, Party party, Party sign_party,
                               double delta, const Tolerances& tol) {
    const double x = 0.5 * (1.0 + std::cos(delta));
    const Mat2 e[2] = {Mat2::diag(std::sqrt(x), std::sqrt(1.0 - x)),
                       Mat2::diag(std::sqrt(1.0 - x), std::sqrt(x))};
    ProtocolStep step;
    step.party = party;
    step.kraus = {e[0] * kHadamard, e[1] * kHadamard};

    std::vector<Branch> next;
    next.reserve(2 * branches.size());
    for (const Branch& br : branches) {
        for (int m = 0; m < 2; ++m) {
            auto [out, q] = apply_kraus(br.state, party, step.kraus[m], tol);
            const Vec2 v0 = step.kraus[m].col(0), v1 = step.kraus[m].col(1);
            out = apply_local_unitary(out, party, aligning_rotation(v0.normalized(), v1), tol);
            if (m == 1) {
                out = apply_local_unitary(out, party, kSigmaZ, tol);
                out = apply_local_unitary(out, sign_party, kSigmaZ, tol);
            }
            Branch nb;
            nb.outcomes = br.outcomes;
            nb.outcomes.push_back(m);
            nb.probability = br.probability * q;
            nb.state = out;
            next.push_back(std::move(nb));
        }
    }
    branches = std::move(next);
    return step;
}

double branch_averaged_re_omega(const std::vector<Branch>& branches, const Tolerances& tol) {
    double acc = 0.0;
    for (const Branch& br : branches) {
        try {
            acc += br.probability * decompose_ghz(br.state, tol).omega.real();
        } catch (const Error&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    }
    return acc;
}

void finish_trace(ProtocolTrace& trace, const std::vector<Branch>& branches,
                  const Tolerances& tol) {
    double total = 0.0;
    for (const Branch& br : branches) {
        ProtocolLeaf leaf;
        leaf.outcomes = br.outcomes;
        leaf.probability = br.probability;
        leaf.state = br.state;
        leaf.fidelity = fidelity_up_to_global_phase(br.state, trace.target);
        if (leaf.fidelity < 1.0 - tol.proto) {
            std::string path;
            for (int m : br.outcomes) path += std::to_string(m);
            throw BranchCorrectionFailed("leaf " + path + " fidelity " +
                                         std::to_string(leaf.fidelity));
        }
        total += leaf.probability;
        trace.leaves.push_back(std::move(leaf));
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw BranchCorrectionFailed("leaf probabilities sum to " + std::to_string(total));
}

void validate_angles(std::initializer_list<double> deltas) {
    for (double d : deltas)
        if (!(d > 0.0) || !(d <= std::numbers::pi / 2 + 1e-12))
            throw OutOfRange("delta angles must lie in (0, pi/2]");
}

}  // namespace

PureState3Q target_state(const TargetRealSpec& spec) {
    validate_angles({spec.delta_b, spec.delta_c});
    if (!(spec.mu > 0.0) || !(spec.mu < 1.0)) throw OutOfRange("mu must lie in (0, 1)");
    const double nu = std::sqrt(1.0 - spec.mu * spec.mu);
    const auto [mid, last] = other_parties(spec.one_party);
    const Vec2 zero{1.0, 0.0}, one{0.0, 1.0};
    std::array<Vec2, 3> f{zero, zero, zero};
    f[static_cast<int>(spec.one_party)] = one;
    f[static_cast<int>(mid)] = phi(spec.delta_b);
    f[static_cast<int>(last)] = phi(spec.delta_c);
    const PureState3Q t1 = product_with_factors(spec.mu, {zero, zero, zero});
    const PureState3Q t2 = product_with_factors(nu, f);
    PureState3Q s;
    for (int n = 0; n < 8; ++n) s.amps[n] = t1.amps[n] + t2.amps[n];
    return s;
}

PureState3Q target_state(const TargetComplexSpec& spec) {
    validate_angles({spec.delta_a, spec.delta_b, spec.delta_c});
    const Vec2 zero{1.0, 0.0};
    const PureState3Q t1 = product_with_factors(kInvSqrt2, {zero, zero, zero});
    const PureState3Q t2 = product_with_factors(Complex{0.0, kInvSqrt2},
                                                {phi(spec.delta_a), phi(spec.delta_b),
                                                 phi(spec.delta_c)});
    PureState3Q s;
    for (int n = 0; n < 8; ++n) s.amps[n] = t1.amps[n] + t2.amps[n];
    return s.normalized();
}

ProtocolTrace ghz_to_real(const TargetRealSpec& spec, const Tolerances& tol) {
    ProtocolTrace trace;
    trace.initial = ghz_state();
    trace.target = target_state(spec);
    const auto [mid, last] = other_parties(spec.one_party);

    std::vector<Branch> branches(1);
    branches[0].state = trace.initial;

    trace.steps.push_back(run_balanced_step(branches, last, spec.one_party, spec.delta_c, tol));
    trace.re_omega_levels.push_back(branch_averaged_re_omega(branches, tol));
    trace.steps.push_back(run_balanced_step(branches, mid, spec.one_party, spec.delta_b, tol));
    trace.re_omega_levels.push_back(branch_averaged_re_omega(branches, tol));

    // weight-setting round on one_party; outcome 1 swaps mu and nu and is
    // undone by a bit flip plus one reflection on each of the other parties
    const double x = spec.mu * spec.mu;
    ProtocolStep step3;
    step3.party = spec.one_party;
    step3.kraus = {Mat2::diag(std::sqrt(x), std::sqrt(1.0 - x)),
                   Mat2::diag(std::sqrt(1.0 - x), std::sqrt(x))};
    std::vector<Branch> next;
    for (const Branch& br : branches) {
        for (int m = 0; m < 2; ++m) {
            auto [out, q] = apply_kraus(br.state, spec.one_party, step3.kraus[m], tol);
            if (m == 1) {
                out = apply_local_unitary(out, spec.one_party, kSigmaX, tol);
                out = apply_local_unitary(out, mid, Mat2::reflection(spec.delta_b), tol);
                out = apply_local_unitary(out, last, Mat2::reflection(spec.delta_c), tol);
            }
            Branch nb;
            nb.outcomes = br.outcomes;
            nb.outcomes.push_back(m);
            nb.probability = br.probability * q;
            nb.state = out;
            next.push_back(std::move(nb));
        }
    }
    branches = std::move(next);
    trace.steps.push_back(step3);
    trace.re_omega_levels.push_back(branch_averaged_re_omega(branches, tol));

    finish_trace(trace, branches, tol);
    return trace;
}

ProtocolTrace ghz_to_complex(const TargetComplexSpec& spec, const Tolerances& tol) {
    ProtocolTrace trace;
    trace.initial = ghz_state();
    trace.target = target_state(spec);

    std::vector<Branch> branches(1);
    branches[0].state = trace.initial;

    trace.steps.push_back(run_balanced_step(branches, Party::C, Party::A, spec.delta_c, tol));
    trace.re_omega_levels.push_back(branch_averaged_re_omega(branches, tol));
    trace.steps.push_back(run_balanced_step(branches, Party::B, Party::A, spec.delta_b, tol));
    trace.re_omega_levels.push_back(branch_averaged_re_omega(branches, tol));

    // phase-setting round on Alice; the two outcomes are complex conjugates of
    // each other, related by one reflection per party (and a global phase)
    const double c = std::cos(spec.delta_a), s = std::sin(spec.delta_a);
    ProtocolStep step3;
    step3.party = Party::A;
    step3.kraus = {Mat2{kInvSqrt2, Complex{0.0, kInvSqrt2 * c}, 0.0, Complex{0.0, kInvSqrt2 * s}},
                   Mat2{kInvSqrt2, Complex{0.0, -kInvSqrt2 * c}, 0.0,
                        Complex{0.0, -kInvSqrt2 * s}}};
    std::vector<Branch> next;
    for (const Branch& br : branches) {
        for (int m = 0; m < 2; ++m) {
            auto [out, q] = apply_kraus(br.state, Party::A, step3.kraus[m], tol);
            if (m == 1) {
                out = apply_local_unitary(out, Party::A, Mat2::reflection(spec.delta_a), tol);
                out = apply_local_unitary(out, Party::B, Mat2::reflection(spec.delta_b), tol);
                out = apply_local_unitary(out, Party::C, Mat2::reflection(spec.delta_c), tol);
            }
            Branch nb;
            nb.outcomes = br.outcomes;
            nb.outcomes.push_back(m);
            nb.probability = br.probability * q;
            nb.state = out;
            next.push_back(std::move(nb));
        }
    }
    branches = std::move(next);
    trace.steps.push_back(step3);
    trace.re_omega_levels.push_back(branch_averaged_re_omega(branches, tol));

    finish_trace(trace, branches, tol);
    return trace;
}

ReachabilityReport enumerate_reachable_real_targets(const PureState3Q& state,
                                                    int samples_per_party, Rng& rng,
                                                    const Tolerances& tol) {
    const OrbitRelation rel = orbit_fingerprints_equal(
        compute_invariants(state, tol), compute_invariants(ghz_state(), tol), tol.orbit);
    if (rel != OrbitRelation::same_orbit)
        throw NotGhzOrbit("reachability enumeration requires a state on the GHZ orbit");

    ReachabilityReport report;
    const double half_pi = std::numbers::pi / 2;
    for (Party one : kParties) {
        for (int s = 0; s < samples_per_party; ++s) {
            TargetRealSpec spec;
            spec.one_party = one;
            spec.mu = rng.uniform(0.15, 0.95);
            spec.delta_b = rng.uniform(0.1, half_pi);
            spec.delta_c = rng.uniform(0.1, half_pi);
            ReachabilityEntry entry;
            entry.spec = spec;
            const ProtocolTrace trace = ghz_to_real(spec, tol);
            entry.min_leaf_fidelity = 1.0;
            for (const ProtocolLeaf& leaf : trace.leaves)
                entry.min_leaf_fidelity = std::min(entry.min_leaf_fidelity, leaf.fidelity);
            entry.reachable = entry.min_leaf_fidelity >= 1.0 - tol.proto;
            report.entries.push_back(entry);
        }
    }
    return report;
}

}  // namespace triloc
