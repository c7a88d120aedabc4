// Acceptance suite: one pass/fail line per criterion. Run with a criterion
// number (1..10) or no argument for all. Exit code = number of failed criteria.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "triloc/errors.hpp"
#include "triloc/gate_finder.hpp"
#include "triloc/ghz_canonical.hpp"
#include "triloc/ghz_protocols.hpp"
#include "triloc/invariants.hpp"
#include "triloc/povm_engine.hpp"
#include "triloc/rng.hpp"
#include "triloc/state.hpp"

using namespace triloc;

namespace {

const Tolerances kTol = Tolerances::defaults();

// 1. fast invariants vs the brute-force index sums on 200 states
bool criterion_1() {
    Rng root(101);
    const Ensemble ensembles[4] = {Ensemble::complex_haar, Ensemble::real_orthogonal,
                                   Ensemble::ghz_class_real, Ensemble::ghz_class_complex};
    double max_err = 0.0;
    for (int t = 0; t < 200; ++t) {
        Rng rng = root.fork(t);
        const PureState3Q s = random_state(rng, ensembles[t % 4]);
        const InvariantVector f = compute_invariants(s);
        const InvariantVector b = brute_force_invariants(s);
        max_err = std::max({max_err, std::abs(f.i1 - b.i1), std::abs(f.i2 - b.i2),
                            std::abs(f.i3 - b.i3), std::abs(f.i4 - b.i4),
                            std::abs(f.i5 - b.i5), std::abs(f.i6 - b.i6)});
    }
    std::printf("  max |fast - brute| = %.3e (bound 1e-9)\n", max_err);
    return max_err <= 1e-9;
}

// 2. Re Omega conservation under 1000 random full-rank POVMs
bool criterion_2() {
    Rng root(102);
    int ok = 0, skipped = 0;
    double max_diff = 0.0;
    for (int t = 0; t < 1000; ++t) {
        Rng rng = root.fork(t);
        bool done = false;
        for (int attempt = 0; attempt < 8 && !done; ++attempt) {
            const PureState3Q s = random_state(rng, Ensemble::ghz_class_complex);
            const auto [k0, k1] = rng.random_full_rank_povm();
            try {
                const ConservationReport rep =
                    verify_omega_conservation(s, static_cast<Party>(t % 3), k0, k1, kTol);
                max_diff = std::max(max_diff, rep.difference);
                if (rep.difference <= 1e-8) ++ok;
                done = true;
            } catch (const Error&) {
                // outcome grazed the class boundary; resample within the trial
            }
        }
        if (!done) ++skipped;
    }
    std::printf("  %d/1000 conserved, max difference %.3e, %d unresolvable trials\n", ok,
                max_diff, skipped);
    return ok == 1000 && skipped == 0;
}

// 3. real-branch gate finder on 1000 states x 3 parties
bool criterion_3() {
    Rng root(103);
    int ok = 0;
    double max_resid = 0.0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.fork(t);
        const PureState3Q s = random_state(rng, Ensemble::ghz_class_real);
        for (Party p : kParties) {
            try {
                const GateSearchResult r = find_gate_unitary_real(s, p, kTol);
                max_resid = std::max({max_resid, std::abs(r.residuals.r1),
                                      std::abs(r.residuals.r2)});
                if (std::max(std::abs(r.residuals.r1), std::abs(r.residuals.r2)) > 1e-9)
                    continue;
                const DeterministicPovm povm =
                    make_deterministic_povm(s, p, rng.uniform(1.1, 5.0), kTol);
                const PovmApplication app = apply_deterministic_povm(s, povm, kTol);
                if (app.verdict == OrbitRelation::same_orbit) ++ok;
            } catch (const Error& e) {
                std::printf("  trial %d party %s: %s\n", t, party_name(p), e.what());
            }
        }
    }
    std::printf("  %d/%d deterministic, max residual %.3e\n", ok, 3 * trials, max_resid);
    return ok == 3 * trials;
}

// 4. complex-branch gate finder success rate over 500 states
bool criterion_4() {
    Rng root(104);
    int ok = 0;
    std::vector<std::uint64_t> failure_seeds;
    for (int t = 0; t < 500; ++t) {
        Rng rng = root.fork(t);
        const PureState3Q s = random_state(rng, Ensemble::ghz_class_complex);
        const Party p = static_cast<Party>(t % 3);
        try {
            const DeterministicPovm povm =
                make_deterministic_povm(s, p, rng.uniform(1.1, 5.0), kTol);
            const PovmApplication app = apply_deterministic_povm(s, povm, kTol);
            if (app.verdict == OrbitRelation::same_orbit)
                ++ok;
            else
                failure_seeds.push_back(rng.seed());
        } catch (const Error&) {
            failure_seeds.push_back(rng.seed());
        }
    }
    std::printf("  %d/500 deterministic (need >= 495)\n", ok);
    for (std::uint64_t s : failure_seeds) std::printf("  failure seed %llu\n",
                                                      static_cast<unsigned long long>(s));
    return ok >= 495;
}

// 5. closed-form outcome invariants vs direct computation, 500 pairs
bool criterion_5() {
    Rng root(105);
    double max_err = 0.0, max_sym = 0.0;
    const Mat2 flip{0.0, 1.0, 1.0, 0.0};
    for (int t = 0; t < 500; ++t) {
        Rng rng = root.fork(t);
        const PureState3Q s = random_state(
            rng, t % 2 ? Ensemble::complex_haar : Ensemble::real_orthogonal);
        const Party p = static_cast<Party>(t % 3);
        const TMatrixPair tm = t_matrices(s, p);
        const double x = rng.uniform(0.05, 0.95);
        const double y = rng.uniform(0.05, 0.95);
        const auto closed = outcome_invariants_closed_form(tm, x, y);
        const auto [outcome, q] = apply_kraus(s, p, Mat2::diag(std::sqrt(x), std::sqrt(y)));
        (void)q;
        const InvariantVector v = compute_invariants(outcome);
        const double direct[5] = {v.i1, v.i2, v.i3, v.i4, v.i5};
        for (int i = 0; i < 5; ++i) max_err = std::max(max_err, std::abs(closed[i] - direct[i]));

        // symmetry: swapping both the slices and the weights is the same outcome
        const PureState3Q flipped = apply_local_unitary(s, p, flip);
        const auto swapped = outcome_invariants_closed_form(t_matrices(flipped, p), y, x);
        for (int i = 0; i < 5; ++i) max_sym = std::max(max_sym, std::abs(closed[i] - swapped[i]));
    }
    std::printf("  max closed-form error %.3e, max symmetry defect %.3e (bound 1e-10)\n",
                max_err, max_sym);
    return max_err <= 1e-10 && max_sym <= 1e-10;
}

// 6. cubic root structure of the outcome-I5 identity on 200 gate-state pairs
bool criterion_6() {
    Rng root(106);
    int structure_ok = 0, ordering_ok = 0, ratio_ok = 0, i5_dec = 0, errors = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.fork(t);
        const Ensemble e = t % 2 ? Ensemble::ghz_class_complex : Ensemble::ghz_class_real;
        const PureState3Q s = random_state(rng, e);
        const Party p = static_cast<Party>(t % 3);
        try {
            const GateSearchResult gate = t % 2 ? find_gate_unitary_complex(s, p, kTol)
                                                : find_gate_unitary_real(s, p, kTol);
            const AppendixReport rep =
                appendix_checks(gate.transformed, p, rng.uniform(1.05, 8.0), kTol);
            const double structural =
                std::max({rep.root_product_residual, rep.cubic_residuals[0],
                          rep.cubic_residuals[1], rep.cubic_residuals[2]});
            if (structural <= 1e-9) ++structure_ok;
            if (std::abs(rep.root_z2 + std::sqrt(rep.root_z0 * rep.root_z1)) <= 1e-9)
                ++ratio_ok;  // z2 = -a/b and z0 z1 = a^2/b^2 together
            if (rep.exactly_one_root_gt_one) ++ordering_ok;
            if (rep.i5_decreased) ++i5_dec;
        } catch (const Error&) {
            ++errors;
        }
    }
    std::printf("  structure %d/%d, root ordering %d/%d, ratio %d/%d, I5 decreased %d/%d, "
                "errors %d\n",
                structure_ok, trials, ordering_ok, trials, ratio_ok, trials, i5_dec, trials,
                errors);
    if (i5_dec < trials)
        std::printf("  note: I5 rises under this POVM family; the strict-decrease subcheck "
                    "fails on the evidence above\n");
    return structure_ok == trials && ordering_ok == trials && ratio_ok == trials &&
           i5_dec == trials && errors == 0;
}

// 7. explicit protocols: 5x5x5 real grid plus 100 random complex targets
bool criterion_7() {
    int bad = 0, total = 0;
    double min_fid = 1.0, max_prob = 0.0, max_ro = 0.0;
    auto check = [&](const ProtocolTrace& trace) {
        ++total;
        double sum = 0.0;
        bool ok = true;
        for (const ProtocolLeaf& leaf : trace.leaves) {
            min_fid = std::min(min_fid, leaf.fidelity);
            if (leaf.fidelity < 1.0 - 1e-10) ok = false;
            sum += leaf.probability;
        }
        max_prob = std::max(max_prob, std::abs(sum - 1.0));
        if (std::abs(sum - 1.0) > 1e-10) ok = false;
        for (double ro : trace.re_omega_levels) {
            if (std::isnan(ro) || std::abs(ro) > 1e-8) ok = false;
            if (!std::isnan(ro)) max_ro = std::max(max_ro, std::abs(ro));
        }
        if (!ok) ++bad;
    };
    const double half_pi = std::numbers::pi / 2;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            for (int k = 0; k < 5; ++k) {
                TargetRealSpec spec;
                spec.mu = 0.15 + 0.7 * i / 4.0;
                spec.delta_b = 0.15 + (half_pi - 0.15) * j / 4.0;
                spec.delta_c = 0.15 + (half_pi - 0.15) * k / 4.0;
                spec.one_party = static_cast<Party>((i + j + k) % 3);
                try {
                    check(ghz_to_real(spec, kTol));
                } catch (const Error& e) {
                    ++bad;
                    ++total;
                    std::printf("  real grid (%d,%d,%d): %s\n", i, j, k, e.what());
                }
            }
    Rng root(107);
    for (int t = 0; t < 100; ++t) {
        Rng rng = root.fork(t);
        TargetComplexSpec spec;
        spec.delta_a = rng.uniform(0.1, half_pi);
        spec.delta_b = rng.uniform(0.1, half_pi);
        spec.delta_c = rng.uniform(0.1, half_pi);
        try {
            check(ghz_to_complex(spec, kTol));
        } catch (const Error& e) {
            ++bad;
            ++total;
            std::printf("  complex trial %d: %s\n", t, e.what());
        }
    }
    std::printf("  %d/%d protocols clean; min leaf fidelity %.12f, max prob defect %.3e, "
                "max intermediate ReOmega %.3e\n",
                total - bad, total, min_fid, max_prob, max_ro);
    return bad == 0;
}

// 8. harmonic content of the resultant over a 512-point zeta grid
bool criterion_8() {
    Rng root(108);
    const int n = 512;
    double min_fraction = 1.0;
    for (int t = 0; t < 100; ++t) {
        Rng rng = root.fork(t);
        const PureState3Q s = random_state(rng, Ensemble::ghz_class_complex);
        const Party p = static_cast<Party>(t % 3);
        std::vector<double> samples(n);
        for (int k = 0; k < n; ++k)
            samples[k] = resultant_value(s, p, 2.0 * std::numbers::pi * k / n, kTol);
        // DFT magnitudes; the signal is real so bin m mirrors bin n - m
        std::vector<double> energy(n / 2 + 1, 0.0);
        double total = 0.0;
        for (int m = 0; m <= n / 2; ++m) {
            Complex x{};
            for (int k = 0; k < n; ++k)
                x += samples[k] * std::polar(1.0, -2.0 * std::numbers::pi * m * k / n);
            const double weight = (m == 0 || m == n / 2) ? 1.0 : 2.0;
            energy[m] = weight * std::norm(x);
            total += energy[m];
        }
        double allowed = 0.0;
        for (int m : {2, 6, 10, 14, 18}) allowed += energy[m];
        min_fraction = std::min(min_fraction, allowed / total);
    }
    std::printf("  min allowed-bin energy fraction %.12f (bound 1 - 1e-6)\n", min_fraction);
    return min_fraction >= 1.0 - 1e-6;
}

// 9. discrete invariant: conjugation vs local unitaries on 200 complex states
bool criterion_9() {
    Rng root(109);
    int ok = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.fork(t);
        PureState3Q s = random_state(rng, Ensemble::complex_haar);
        InvariantVector v = compute_invariants(s);
        int guard = 0;
        while (v.im6_sign == Im6Sign::zero && ++guard < 20) {
            s = random_state(rng, Ensemble::complex_haar);
            v = compute_invariants(s);
        }
        const InvariantVector vc = compute_invariants(conjugate(s));
        PureState3Q u = s;
        for (Party p : kParties) u = apply_local_unitary(u, p, rng.haar_unitary());
        const InvariantVector vu = compute_invariants(u);
        if (orbit_fingerprints_equal(v, vc, kTol.orbit) == OrbitRelation::conjugate_orbit &&
            orbit_fingerprints_equal(v, vu, kTol.orbit) == OrbitRelation::same_orbit)
            ++ok;
    }
    std::printf("  %d/%d states classified correctly\n", ok, trials);
    return ok == trials;
}

// 10. verification campaigns are byte-identical across reruns
bool criterion_10() {
    struct Run {
        const char* campaign;
        int trials;
    };
    const Run runs[] = {{"invariant_oracle", 20}, {"theorem1", 50},  {"real_gate", 30},
                        {"complex_gate", 30},     {"appendix", 30},  {"protocol", 5}};
    bool all_ok = true;
    for (const Run& r : runs) {
        std::array<std::string, 2> bytes;
        for (int rep = 0; rep < 2; ++rep) {
            const std::string path = std::string("acc10_") + r.campaign + "_" +
                                     std::to_string(rep) + ".json";
            const std::string cmd = std::string(TRILOC_CLI_PATH) + " --seed 99 --out " + path +
                                    " verify --campaign " + r.campaign + " --trials " +
                                    std::to_string(r.trials);
            const int rc = std::system(cmd.c_str());
            const int status = WEXITSTATUS(rc);
            if (status != 0 && status != 3) {
                std::printf("  %s: unexpected exit code %d\n", r.campaign, status);
                all_ok = false;
            }
            std::ifstream f(path, std::ios::binary);
            std::ostringstream ss;
            ss << f.rdbuf();
            bytes[rep] = ss.str();
            std::remove(path.c_str());
        }
        const bool same = !bytes[0].empty() && bytes[0] == bytes[1];
        std::printf("  %s: %zu bytes, reruns %s\n", r.campaign, bytes[0].size(),
                    same ? "identical" : "DIFFER");
        if (!same) all_ok = false;
    }
    return all_ok;
}

struct Criterion {
    const char* name;
    std::function<bool()> run;
};

const Criterion kCriteria[] = {
    {"invariants match the brute-force sums", criterion_1},
    {"Re Omega is conserved under random POVMs", criterion_2},
    {"real-branch deterministic POVMs succeed", criterion_3},
    {"complex-branch deterministic POVMs succeed", criterion_4},
    {"closed-form outcome invariants are exact", criterion_5},
    {"outcome-I5 cubic root structure holds", criterion_6},
    {"explicit GHZ protocols reach their targets", criterion_7},
    {"resultant harmonic content is confined", criterion_8},
    {"conjugation is detected as a distinct orbit", criterion_9},
    {"verification campaigns are reproducible", criterion_10},
};

}  // namespace

int main(int argc, char** argv) {
    int first = 0, last = 9;
    if (argc > 1) {
        const int n = std::atoi(argv[1]);
        if (n < 1 || n > 10) {
            std::fprintf(stderr, "usage: %s [criterion 1-10]\n", argv[0]);
            return 64;
        }
        first = last = n - 1;
    }
    int failed = 0;
    for (int i = first; i <= last; ++i) {
        const bool ok = kCriteria[i].run();
        std::printf("criterion %d: %s - %s\n", i + 1, ok ? "PASS" : "FAIL", kCriteria[i].name);
        if (!ok) ++failed;
    }
    return failed;
}
