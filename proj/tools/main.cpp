// triloc command-line front end: JSON/CSV I/O over the library operations plus
// seeded Monte Carlo verification campaigns.
//
// Exit codes: 0 ok, 2 parse/contract error, 3 numerical-search failure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "triloc/errors.hpp"
#include "triloc/gate_finder.hpp"
#include "triloc/ghz_canonical.hpp"
#include "triloc/ghz_protocols.hpp"
#include "triloc/invariants.hpp"
#include "triloc/json_io.hpp"
#include "triloc/povm_engine.hpp"
#include "triloc/rng.hpp"
#include "triloc/state.hpp"

using nlohmann::json;
using namespace triloc;

namespace {

struct GlobalOpts {
    Tolerances tol;
    std::uint64_t seed = 1;
    std::string out;  // empty = stdout
    std::string format = "json";
};

void emit(const GlobalOpts& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw ParseError("cannot write " + g.out);
    f << text;
}

void emit_json(const GlobalOpts& g, const json& j) { emit(g, j.dump(2) + "\n"); }

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

json mat_json(const Mat2& m) {
    return json::array({json::array({cjson(m.m00), cjson(m.m01)}),
                        json::array({cjson(m.m10), cjson(m.m11)})});
}

const char* sign_str(Im6Sign s) {
    switch (s) {
        case Im6Sign::positive: return "+";
        case Im6Sign::negative: return "-";
        case Im6Sign::zero: return "0";
    }
    return "?";
}

json inv_json(const InvariantVector& v) {
    return {{"I1", v.i1}, {"I2", v.i2}, {"I3", v.i3}, {"I4", v.i4}, {"I5", v.i5},
            {"I6", cjson(v.i6)}, {"im6_sign", sign_str(v.im6_sign)}};
}

std::string csv_num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

double re_omega_of(const PureState3Q& s, const Tolerances& tol) {
    try {
        return decompose_ghz(s, tol).omega.real();
    } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

// ---------------------------------------------------------------- commands

void cmd_invariants(const GlobalOpts& g, const std::string& state_path, bool brute) {
    const PureState3Q s = load_state(state_path);
    const InvariantVector v =
        brute ? brute_force_invariants(s, g.tol) : compute_invariants(s, g.tol);
    if (g.format == "csv") {
        std::string text = "I1,I2,I3,I4,I5,ReI6,ImI6,im6_sign\n";
        text += csv_num(v.i1) + "," + csv_num(v.i2) + "," + csv_num(v.i3) + "," +
                csv_num(v.i4) + "," + csv_num(v.i5) + "," + csv_num(v.i6.real()) + "," +
                csv_num(v.i6.imag()) + "," + sign_str(v.im6_sign) + "\n";
        emit(g, text);
        return;
    }
    emit_json(g, inv_json(v));
}

void cmd_classify(const GlobalOpts& g, const std::string& state_path) {
    const PureState3Q s = load_state(state_path);
    const StateClass c = classify(s, g.tol);
    emit_json(g, {{"class", state_class_name(c)}, {"I4", tangle(s)}});
}

void cmd_canon(const GlobalOpts& g, const std::string& state_path) {
    const PureState3Q s = load_state(state_path);
    const StateClass c = classify(s, g.tol);
    json j{{"class", state_class_name(c)}};
    if (c == StateClass::GhzClass) {
        const GhzCanonicalForm f = decompose_ghz(s, g.tol);
        j["mu"] = f.mu;
        j["nu"] = f.nu;
        j["gamma"] = f.gamma;
        j["deltas"] = {f.delta[0], f.delta[1], f.delta[2]};
        j["omega"] = cjson(f.omega);
        j["im_sign_ambiguous"] = f.im_sign_ambiguous;
        j["re_omega_subclass"] =
            std::abs(f.omega.real()) <= g.tol.i6 ? "zero" : "nonzero";
    }
    emit_json(g, j);
}

GateSearchResult run_gate_find(const PureState3Q& s, Party party, const std::string& branch,
                               int grid, const Tolerances& tol) {
    if (branch == "real") return find_gate_unitary_real(s, party, tol);
    if (branch == "complex") return find_gate_unitary_complex(s, party, tol, grid);
    return s.is_real(1e-8) ? find_gate_unitary_real(s, party, tol)
                           : find_gate_unitary_complex(s, party, tol, grid);
}

void cmd_gate_find(const GlobalOpts& g, const std::string& state_path, const std::string& party,
                   const std::string& branch, int grid) {
    const PureState3Q s = load_state(state_path);
    const GateSearchResult r = run_gate_find(s, party_from_string(party), branch, grid, g.tol);
    emit_json(g, {{"party", party_name(r.party)},
                  {"alpha", r.alpha},
                  {"zeta", r.zeta},
                  {"unitary", mat_json(r.unitary)},
                  {"residuals",
                   {{"cond1", r.residuals.r1},
                    {"cond2", cjson(r.residuals.r2)},
                    {"im_cond2_violation", r.im_cond2_violation}}},
                  {"candidates_tried", r.candidates_tried}});
}

void cmd_apply_povm(const GlobalOpts& g, const std::string& state_path, const std::string& party,
                    double lambda) {
    const PureState3Q s = load_state(state_path);
    const Party p = party_from_string(party);
    const DeterministicPovm povm = make_deterministic_povm(s, p, lambda, g.tol);
    const PovmApplication app = apply_deterministic_povm(s, povm, g.tol);
    emit_json(g, {{"party", party_name(p)},
                  {"lambda", lambda},
                  {"x", povm.x},
                  {"y", povm.y},
                  {"flipped", povm.flipped},
                  {"alpha", povm.gate.alpha},
                  {"zeta", povm.gate.zeta},
                  {"pre_rotation", mat_json(povm.pre_rotation)},
                  {"kraus", {mat_json(povm.kraus(0)), mat_json(povm.kraus(1))}},
                  {"probabilities", {app.probabilities[0], app.probabilities[1]}},
                  {"verdict", orbit_relation_name(app.verdict)},
                  {"fingerprints", {inv_json(app.fingerprints[0]), inv_json(app.fingerprints[1])}},
                  {"outcomes", {state_to_json(app.outcomes[0]), state_to_json(app.outcomes[1])}}});
}

void cmd_curve(const GlobalOpts& g, const std::string& state_path, const std::string& party,
               double lambda_min, double lambda_max, int samples) {
    const PureState3Q s = load_state(state_path);
    const Party p = party_from_string(party);
    // locate the gate state on the input's orbit first
    const GateSearchResult gate = run_gate_find(s, p, "auto", 256, g.tol);
    const OrbitCurve curve = orbit_curve(gate.transformed, p, lambda_min, lambda_max, samples, g.tol);
    if (g.format == "csv") {
        std::string text = "lambda,I1,I2,I3,I4,I5,ReOmega\n";
        for (const OrbitCurvePoint& pt : curve.samples) {
            text += csv_num(pt.lambda);
            for (double v : pt.inv) text += "," + csv_num(v);
            text += "," + csv_num(pt.re_omega) + "\n";
        }
        emit(g, text);
        return;
    }
    json samples_json = json::array();
    for (const OrbitCurvePoint& pt : curve.samples)
        samples_json.push_back({{"lambda", pt.lambda},
                                {"I", {pt.inv[0], pt.inv[1], pt.inv[2], pt.inv[3], pt.inv[4]}},
                                {"re_omega", pt.re_omega}});
    emit_json(g, {{"party", party_name(p)},
                  {"a", curve.a},
                  {"b", curve.b},
                  {"flipped", curve.flipped},
                  {"alpha_coeffs", curve.alpha},
                  {"beta_coeffs", curve.beta},
                  {"gamma5", curve.gamma5},
                  {"samples", samples_json}});
}

json trace_json(const ProtocolTrace& trace) {
    json steps = json::array();
    for (const ProtocolStep& st : trace.steps)
        steps.push_back({{"party", party_name(st.party)},
                         {"povm", {mat_json(st.kraus[0]), mat_json(st.kraus[1])}}});
    json leaves = json::array();
    for (const ProtocolLeaf& leaf : trace.leaves)
        leaves.push_back({{"outcomes", leaf.outcomes},
                          {"probability", leaf.probability},
                          {"fidelity", leaf.fidelity},
                          {"state", state_to_json(leaf.state)}});
    return {{"target", state_to_json(trace.target)},
            {"steps", steps},
            {"leaves", leaves},
            {"re_omega_levels", trace.re_omega_levels}};
}

void cmd_chain(const GlobalOpts& g, const std::string& state_path,
               const std::vector<std::string>& step_specs, int branch) {
    const PureState3Q s = load_state(state_path);
    std::vector<ChainStep> steps;
    for (const std::string& spec : step_specs) {
        const auto colon = spec.find(':');
        if (colon == std::string::npos)
            throw ParseError("step must look like PARTY:LAMBDA, got " + spec);
        ChainStep st;
        st.party = party_from_string(spec.substr(0, colon));
        try {
            st.lambda = std::stod(spec.substr(colon + 1));
        } catch (const std::exception&) {
            throw ParseError("bad lambda in step " + spec);
        }
        steps.push_back(st);
    }
    const ChainResult res = chain_deterministic(s, steps, g.tol, branch);
    if (g.format == "csv") {
        std::string text = "step,I1,I2,I3,I4,I5,ReOmega,probability\n";
        for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
            const ChainPoint& pt = res.trajectory[i];
            text += std::to_string(i);
            for (double v : pt.inv) text += "," + csv_num(v);
            text += "," + csv_num(pt.re_omega) + "," + csv_num(pt.probability) + "\n";
        }
        emit(g, text);
        return;
    }
    json traj = json::array();
    for (std::size_t i = 0; i < res.trajectory.size(); ++i) {
        const ChainPoint& pt = res.trajectory[i];
        traj.push_back({{"step", i},
                        {"I", {pt.inv[0], pt.inv[1], pt.inv[2], pt.inv[3], pt.inv[4]}},
                        {"re_omega", pt.re_omega},
                        {"probability", pt.probability},
                        {"state", state_to_json(res.states[i])}});
    }
    emit_json(g, {{"trajectory", traj}});
}

void cmd_random_state(const GlobalOpts& g, const std::string& ensemble, int count) {
    Rng rng(g.seed);
    const Ensemble e = ensemble_from_string(ensemble);
    if (count == 1) {
        emit_json(g, state_to_json(random_state(rng, e, g.tol)));
        return;
    }
    json states = json::array();
    for (int i = 0; i < count; ++i) states.push_back(state_to_json(random_state(rng, e, g.tol)));
    emit_json(g, {{"states", states}});
}

// ---------------------------------------------------------------- campaigns

struct Campaign {
    json report;
    bool pass = false;
};

json failure_entry(int trial, std::uint64_t seed, const std::string& detail) {
    return {{"trial", trial}, {"seed", seed}, {"detail", detail}};
}

Campaign campaign_invariant_oracle(const GlobalOpts& g, int trials) {
    const Ensemble ensembles[4] = {Ensemble::complex_haar, Ensemble::real_orthogonal,
                                   Ensemble::ghz_class_real, Ensemble::ghz_class_complex};
    Rng root(g.seed);
    double max_err = 0.0;
    json failures = json::array();
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.fork(t);
        const PureState3Q s = random_state(rng, ensembles[t % 4], g.tol);
        const InvariantVector fast = compute_invariants(s, g.tol);
        const InvariantVector brute = brute_force_invariants(s, g.tol);
        const double err = std::max({std::abs(fast.i1 - brute.i1), std::abs(fast.i2 - brute.i2),
                                     std::abs(fast.i3 - brute.i3), std::abs(fast.i4 - brute.i4),
                                     std::abs(fast.i5 - brute.i5), std::abs(fast.i6 - brute.i6)});
        max_err = std::max(max_err, err);
        if (err > 1e-9) failures.push_back(failure_entry(t, rng.seed(), "error " + csv_num(err)));
    }
    Campaign c;
    c.pass = failures.empty();
    c.report = {{"campaign", "invariant_oracle"}, {"seed", g.seed},     {"trials", trials},
                {"max_error", max_err},           {"failures", failures}, {"pass", c.pass}};
    return c;
}

Campaign campaign_theorem1(const GlobalOpts& g, int trials) {
    Rng root(g.seed);
    double max_diff = 0.0;
    json failures = json::array();
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.fork(t);
        const Party party = static_cast<Party>(t % 3);
        bool done = false;
        for (int attempt = 0; attempt < 8 && !done; ++attempt) {
            const PureState3Q s = random_state(rng, Ensemble::ghz_class_complex, g.tol);
            const auto [k0, k1] = rng.random_full_rank_povm();
            try {
                const ConservationReport rep =
                    verify_omega_conservation(s, party, k0, k1, g.tol);
                max_diff = std::max(max_diff, rep.difference);
                if (rep.difference > 1e-8)
                    failures.push_back(failure_entry(t, rng.seed(),
                                                     "difference " + csv_num(rep.difference)));
                done = true;
            } catch (const OutcomeLeftGhzClass&) {
                // outcome grazed the class boundary; resample within the trial
            } catch (const DegeneratePencil&) {
            }
        }
        if (!done) failures.push_back(failure_entry(t, rng.seed(), "no admissible POVM found"));
    }
    Campaign c;
    c.pass = failures.empty();
    c.report = {{"campaign", "theorem1"}, {"seed", g.seed},       {"trials", trials},
                {"max_difference", max_diff}, {"failures", failures}, {"pass", c.pass}};
    return c;
}

Campaign campaign_real_gate(const GlobalOpts& g, int trials) {
    Rng root(g.seed);
    double max_resid = 0.0;
    json failures = json::array();
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.fork(t);
        const PureState3Q s = random_state(rng, Ensemble::ghz_class_real, g.tol);
        for (Party party : kParties) {
            try {
                const GateSearchResult r = find_gate_unitary_real(s, party, g.tol);
                max_resid = std::max(max_resid, std::abs(r.residuals.r1));
                const double lambda = rng.uniform(1.1, 5.0);
                const DeterministicPovm povm = make_deterministic_povm(s, party, lambda, g.tol);
                const PovmApplication app = apply_deterministic_povm(s, povm, g.tol);
                if (app.verdict != OrbitRelation::same_orbit)
                    failures.push_back(failure_entry(t, rng.seed(),
                                                     std::string("verdict ") +
                                                         orbit_relation_name(app.verdict) +
                                                         " on party " + party_name(party)));
            } catch (const Error& e) {
                failures.push_back(failure_entry(t, rng.seed(),
                                                 std::string(e.what()) + " on party " +
                                                     party_name(party)));
            }
        }
    }
    Campaign c;
    c.pass = failures.empty();
    c.report = {{"campaign", "real_gate"}, {"seed", g.seed},       {"trials", trials},
                {"max_cond1_residual", max_resid}, {"failures", failures}, {"pass", c.pass}};
    return c;
}

Campaign campaign_complex_gate(const GlobalOpts& g, int trials) {
    Rng root(g.seed);
    json failures = json::array();
    int successes = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.fork(t);
        const PureState3Q s = random_state(rng, Ensemble::ghz_class_complex, g.tol);
        const Party party = static_cast<Party>(t % 3);
        try {
            const double lambda = rng.uniform(1.1, 5.0);
            const DeterministicPovm povm = make_deterministic_povm(s, party, lambda, g.tol);
            const PovmApplication app = apply_deterministic_povm(s, povm, g.tol);
            if (app.verdict == OrbitRelation::same_orbit) {
                ++successes;
            } else {
                failures.push_back(failure_entry(t, rng.seed(),
                                                 std::string("verdict ") +
                                                     orbit_relation_name(app.verdict)));
            }
        } catch (const Error& e) {
            failures.push_back(failure_entry(t, rng.seed(), e.what()));
        }
    }
    Campaign c;
    const double rate = static_cast<double>(successes) / trials;
    c.pass = rate >= 0.99;
    c.report = {{"campaign", "complex_gate"}, {"seed", g.seed},   {"trials", trials},
                {"successes", successes},     {"success_rate", rate},
                {"failures", failures},       {"pass", c.pass}};
    return c;
}

Campaign campaign_appendix(const GlobalOpts& g, int trials) {
    Rng root(g.seed);
    json failures = json::array();
    double max_structural = 0.0;
    int i5_decreases = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.fork(t);
        const Ensemble ens = t % 2 ? Ensemble::ghz_class_complex : Ensemble::ghz_class_real;
        const PureState3Q s = random_state(rng, ens, g.tol);
        const Party party = static_cast<Party>(t % 3);
        try {
            const GateSearchResult gate =
                run_gate_find(s, party, t % 2 ? "complex" : "real", 256, g.tol);
            const double lambda = rng.uniform(1.05, 8.0);
            const AppendixReport rep = appendix_checks(gate.transformed, party, lambda, g.tol);
            const double structural =
                std::max({rep.root_product_residual, rep.g_ratio_residual,
                          rep.cubic_residuals[0], rep.cubic_residuals[1], rep.cubic_residuals[2]});
            max_structural = std::max(max_structural, structural);
            if (structural > 1e-9)
                failures.push_back(failure_entry(t, rng.seed(),
                                                 "structural residual " + csv_num(structural)));
            if (!rep.exactly_one_root_gt_one)
                failures.push_back(failure_entry(t, rng.seed(), "root ordering violated"));
            if (rep.i5_decreased) {
                ++i5_decreases;
            } else {
                failures.push_back(failure_entry(
                    t, rng.seed(),
                    "I5 did not decrease: " + csv_num(rep.i5_in) + " -> " + csv_num(rep.i5_out)));
            }
        } catch (const Error& e) {
            failures.push_back(failure_entry(t, rng.seed(), e.what()));
        }
    }
    Campaign c;
    c.pass = failures.empty();
    c.report = {{"campaign", "appendix"},
                {"seed", g.seed},
                {"trials", trials},
                {"max_structural_residual", max_structural},
                {"i5_decrease_count", i5_decreases},
                {"failures", failures},
                {"pass", c.pass}};
    return c;
}

Campaign campaign_protocol(const GlobalOpts& g, int trials) {
    json failures = json::array();
    double min_fidelity = 1.0, max_prob_defect = 0.0, max_re_omega = 0.0;
    int index = 0;
    auto check_trace = [&](const ProtocolTrace& trace, const std::string& label) {
        double total = 0.0;
        for (const ProtocolLeaf& leaf : trace.leaves) {
            min_fidelity = std::min(min_fidelity, leaf.fidelity);
            total += leaf.probability;
            if (leaf.fidelity < 1.0 - 1e-10)
                failures.push_back(failure_entry(index, g.seed, label + ": leaf fidelity " +
                                                                     csv_num(leaf.fidelity)));
        }
        max_prob_defect = std::max(max_prob_defect, std::abs(total - 1.0));
        if (std::abs(total - 1.0) > 1e-10)
            failures.push_back(failure_entry(index, g.seed,
                                             label + ": probabilities sum to " + csv_num(total)));
        for (double ro : trace.re_omega_levels) {
            if (std::isnan(ro) || std::abs(ro) > 1e-8)
                failures.push_back(failure_entry(index, g.seed,
                                                 label + ": intermediate Re Omega " + csv_num(ro)));
            if (!std::isnan(ro)) max_re_omega = std::max(max_re_omega, std::abs(ro));
        }
        ++index;
    };
    // 5x5x5 grid of real targets on each one_party choice would triple the
    // budget; the grid spans mu and both angles, cycling the special party.
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
                    check_trace(ghz_to_real(spec, g.tol), "real grid");
                } catch (const Error& e) {
                    failures.push_back(failure_entry(index++, g.seed, e.what()));
                }
            }
    Rng root(g.seed);
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.fork(t);
        TargetComplexSpec spec;
        spec.delta_a = rng.uniform(0.1, half_pi);
        spec.delta_b = rng.uniform(0.1, half_pi);
        spec.delta_c = rng.uniform(0.1, half_pi);
        try {
            check_trace(ghz_to_complex(spec, g.tol), "complex sample");
        } catch (const Error& e) {
            failures.push_back(failure_entry(index++, g.seed, e.what()));
        }
    }
    Campaign c;
    c.pass = failures.empty();
    c.report = {{"campaign", "protocol"},
                {"seed", g.seed},
                {"real_grid", 125},
                {"complex_trials", trials},
                {"min_leaf_fidelity", min_fidelity},
                {"max_probability_defect", max_prob_defect},
                {"max_intermediate_re_omega", max_re_omega},
                {"failures", failures},
                {"pass", c.pass}};
    return c;
}

int cmd_verify(const GlobalOpts& g, const std::string& campaign, int trials) {
    Campaign c;
    if (campaign == "invariant_oracle") {
        c = campaign_invariant_oracle(g, trials > 0 ? trials : 200);
    } else if (campaign == "theorem1") {
        c = campaign_theorem1(g, trials > 0 ? trials : 1000);
    } else if (campaign == "real_gate") {
        c = campaign_real_gate(g, trials > 0 ? trials : 1000);
    } else if (campaign == "complex_gate") {
        c = campaign_complex_gate(g, trials > 0 ? trials : 500);
    } else if (campaign == "appendix") {
        c = campaign_appendix(g, trials > 0 ? trials : 200);
    } else if (campaign == "protocol") {
        c = campaign_protocol(g, trials > 0 ? trials : 100);
    } else {
        throw ParseError("unknown campaign " + campaign);
    }
    emit_json(g, c.report);
    return c.pass ? 0 : 3;
}

int exit_code_for(const Error& e) {
    static const std::set<std::string> contract = {"ParseError",     "NotNormalized",
                                                   "OutOfRange",     "NotGhzClass",
                                                   "NotGhzOrbit",    "NonUnitaryOperator"};
    return contract.count(e.code()) ? 2 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local-unitary invariants, deterministic POVMs and GHZ protocols "
                 "for three-qubit pure states"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOpts g;
    app.add_option("--seed", g.seed, "random seed for seeded commands");
    app.add_option("--out", g.out, "output file (default stdout)");
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--tol-norm", g.tol.norm, "state normalization tolerance");
    app.add_option("--tol-unit", g.tol.unit, "unitarity tolerance");
    app.add_option("--tol-prob", g.tol.prob, "zero-probability threshold");
    app.add_option("--tol-tangle", g.tol.tangle, "GHZ/W class threshold on I4");
    app.add_option("--tol-i6", g.tol.i6, "Im(I6) zero band");
    app.add_option("--tol-degenerate", g.tol.degenerate, "mu=nu ambiguity band");
    app.add_option("--tol-gate", g.tol.gate, "gate-condition residual bound");
    app.add_option("--tol-res", g.tol.res, "resultant zero threshold");
    app.add_option("--tol-orbit", g.tol.orbit, "fingerprint comparison tolerance");
    app.add_option("--tol-proto", g.tol.proto, "protocol fidelity tolerance");

    std::function<int()> action;

    std::string state_path, party = "A", branch = "auto", ensemble = "complex_haar";
    std::string campaign;
    double lambda = 2.0, lambda_min = 1.5, lambda_max = 10.0;
    int grid = 256, samples = 50, count = 1, chain_branch = 0, trials = 0;
    std::vector<std::string> step_specs;

    auto* inv = app.add_subcommand("invariants", "I1..I6 of a state");
    inv->add_option("--state", state_path, "state JSON file")->required();
    bool brute = false;
    inv->add_flag("--brute", brute, "use the literal index sums");
    inv->callback([&] { action = [&] { cmd_invariants(g, state_path, brute); return 0; }; });

    auto* cls = app.add_subcommand("classify", "entanglement class of a state");
    cls->add_option("--state", state_path)->required();
    cls->callback([&] { action = [&] { cmd_classify(g, state_path); return 0; }; });

    auto* canon = app.add_subcommand("canon", "GHZ canonical decomposition");
    canon->add_option("--state", state_path)->required();
    canon->callback([&] { action = [&] { cmd_canon(g, state_path); return 0; }; });

    auto* gf = app.add_subcommand("gate-find", "find the gate unitary for one party");
    gf->add_option("--state", state_path)->required();
    gf->add_option("--party", party, "acting party A|B|C");
    gf->add_option("--branch", branch)->check(CLI::IsMember({"auto", "real", "complex"}));
    gf->add_option("--grid", grid, "resultant scan grid size");
    gf->callback([&] { action = [&] { cmd_gate_find(g, state_path, party, branch, grid); return 0; }; });

    auto* ap = app.add_subcommand("apply-povm", "build and apply the deterministic POVM");
    ap->add_option("--state", state_path)->required();
    ap->add_option("--party", party);
    ap->add_option("--lambda", lambda, "POVM parameter, > 1");
    ap->callback([&] { action = [&] { cmd_apply_povm(g, state_path, party, lambda); return 0; }; });

    auto* cv = app.add_subcommand("curve", "orbit curve traced by the lambda family");
    cv->add_option("--state", state_path)->required();
    cv->add_option("--party", party);
    cv->add_option("--lambda-min", lambda_min);
    cv->add_option("--lambda-max", lambda_max);
    cv->add_option("--samples", samples);
    cv->callback([&] {
        action = [&] { cmd_curve(g, state_path, party, lambda_min, lambda_max, samples); return 0; };
    });

    auto* proto = app.add_subcommand("protocol", "explicit GHZ deterministic protocols");
    proto->require_subcommand(1);
    TargetRealSpec real_spec;
    std::string one_party = "A";
    auto* p_real = proto->add_subcommand("ghz2real", "GHZ to a real-family target");
    p_real->add_option("--mu", real_spec.mu, "weight of |000>")->required();
    p_real->add_option("--delta", real_spec.delta_b, "mid-party angle")->required();
    p_real->add_option("--delta-prime", real_spec.delta_c, "last-party angle")->required();
    p_real->add_option("--one-party", one_party, "party carrying the |1> factor");
    p_real->callback([&] {
        action = [&] {
            real_spec.one_party = party_from_string(one_party);
            emit_json(g, trace_json(ghz_to_real(real_spec, g.tol)));
            return 0;
        };
    });
    TargetComplexSpec complex_spec;
    auto* p_cplx = proto->add_subcommand("ghz2complex", "GHZ to a complex-family target");
    p_cplx->add_option("--delta-a", complex_spec.delta_a, "Alice angle")->required();
    p_cplx->add_option("--delta", complex_spec.delta_b, "Bob angle")->required();
    p_cplx->add_option("--delta-prime", complex_spec.delta_c, "Charlie angle")->required();
    p_cplx->callback([&] {
        action = [&] {
            emit_json(g, trace_json(ghz_to_complex(complex_spec, g.tol)));
            return 0;
        };
    });

    auto* ch = app.add_subcommand("chain", "sequence of deterministic POVMs");
    ch->add_option("--state", state_path)->required();
    ch->add_option("--step", step_specs, "PARTY:LAMBDA, repeatable")->required();
    ch->add_option("--branch", chain_branch, "outcome branch to follow (0 or 1)");
    ch->callback([&] { action = [&] { cmd_chain(g, state_path, step_specs, chain_branch); return 0; }; });

    auto* rs = app.add_subcommand("random-state", "seeded random state generator");
    rs->add_option("--ensemble", ensemble,
                   "complex_haar|real_orthogonal|ghz_class_real|ghz_class_complex");
    rs->add_option("--count", count);
    rs->callback([&] { action = [&] { cmd_random_state(g, ensemble, count); return 0; }; });

    auto* vf = app.add_subcommand("verify", "seeded Monte Carlo verification campaigns");
    vf->add_option("--campaign", campaign,
                   "theorem1|real_gate|complex_gate|appendix|invariant_oracle|protocol")
        ->required();
    vf->add_option("--trials", trials, "override the campaign default");
    vf->callback([&] { action = [&] { return cmd_verify(g, campaign, trials); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return action();
    } catch (const Error& e) {
        emit_json(g, {{"error", e.code()}, {"detail", e.what()}});
        return exit_code_for(e);
    } catch (const std::exception& e) {
        emit_json(g, {{"error", "InternalError"}, {"detail", e.what()}});
        return 3;
    }
}
