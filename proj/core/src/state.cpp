#include "triloc/state.hpp"

#include <cmath>

#include "triloc/errors.hpp"
#include "triloc/invariants.hpp"

namespace triloc {

const char* party_name(Party p) {
    switch (p) {
        case Party::A: return "A";
        case Party::B: return "B";
        case Party::C: return "C";
    }
    return "?";
}

Party party_from_string(const std::string& s) {
    if (s == "A" || s == "a") return Party::A;
    if (s == "B" || s == "b") return Party::B;
    if (s == "C" || s == "c") return Party::C;
    throw ParseError("unknown party '" + s + "'");
}

double PureState3Q::norm() const {
    double n = 0.0;
    for (const auto& z : amps) n += std::norm(z);
    return std::sqrt(n);
}

PureState3Q PureState3Q::normalized() const {
    PureState3Q out = *this;
    const double n = norm();
    for (auto& z : out.amps) z /= n;
    return out;
}

bool PureState3Q::is_normalized(double eps) const { return std::abs(norm() - 1.0) <= eps; }

bool PureState3Q::finite() const {
    for (const auto& z : amps)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

bool PureState3Q::is_real(double eps) const {
    for (const auto& z : amps)
        if (std::abs(z.imag()) > eps) return false;
    return true;
}

namespace {

// flat index of (i,j,k) with the bit of `party` set to `x` and the other two
// parties' bits given in A-then-remaining order (row, col of the T slices)
int flat_index(Party party, int x, int row, int col) {
    switch (party) {
        case Party::A: return 4 * x + 2 * row + col;
        case Party::B: return 4 * row + 2 * x + col;
        case Party::C: return 4 * row + 2 * col + x;
    }
    return 0;
}

}  // namespace

Mat2 PureState3Q::marginal(Party p) const {
    // rho[x][y] = sum over the other two bits of t(x,..) conj t(y,..)
    Mat2 rho = Mat2::zero();
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            Complex s = 0.0;
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    s += amps[flat_index(p, x, r, c)] * std::conj(amps[flat_index(p, y, r, c)]);
            (x == 0 ? (y == 0 ? rho.m00 : rho.m01) : (y == 0 ? rho.m10 : rho.m11)) = s;
        }
    return rho;
}

TMatrixPair t_matrices(const PureState3Q& state, Party party) {
    TMatrixPair out;
    out.party = party;
    Mat2* t[2] = {&out.t0, &out.t1};
    for (int x = 0; x < 2; ++x)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                const Complex v = state.amps[flat_index(party, x, r, c)];
                (r == 0 ? (c == 0 ? t[x]->m00 : t[x]->m01) : (c == 0 ? t[x]->m10 : t[x]->m11)) = v;
            }
    out.a = trace_re(out.t0 * out.t0.adjoint());
    out.b = trace_re(out.t1 * out.t1.adjoint());
    return out;
}

PureState3Q reassemble(const Mat2& t0, const Mat2& t1, Party party) {
    PureState3Q s;
    const Mat2* t[2] = {&t0, &t1};
    for (int x = 0; x < 2; ++x)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                const Complex v =
                    (r == 0 ? (c == 0 ? t[x]->m00 : t[x]->m01) : (c == 0 ? t[x]->m10 : t[x]->m11));
                s.amps[flat_index(party, x, r, c)] = v;
            }
    return s;
}

namespace {

PureState3Q apply_one_party(const PureState3Q& state, Party party, const Mat2& m) {
    PureState3Q out;
    for (int x = 0; x < 2; ++x)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                const Complex row0 = (x == 0 ? m.m00 : m.m10);
                const Complex row1 = (x == 0 ? m.m01 : m.m11);
                out.amps[flat_index(party, x, r, c)] =
                    row0 * state.amps[flat_index(party, 0, r, c)] +
                    row1 * state.amps[flat_index(party, 1, r, c)];
            }
    return out;
}

}  // namespace

PureState3Q apply_local_unitary(const PureState3Q& state, Party party, const Mat2& u,
                                const Tolerances& tol) {
    if (u.unitarity_defect() > tol.unit)
        throw NonUnitaryOperator("unitarity defect " + std::to_string(u.unitarity_defect()));
    return apply_one_party(state, party, u);
}

std::pair<PureState3Q, double> apply_kraus(const PureState3Q& state, Party party, const Mat2& k,
                                           const Tolerances& tol) {
    PureState3Q raw = apply_one_party(state, party, k);
    const double n = raw.norm();
    const double q = n * n;
    if (q < tol.prob) throw ZeroProbabilityOutcome("outcome probability " + std::to_string(q));
    for (auto& z : raw.amps) z /= n;
    return {raw, q};
}

Ensemble ensemble_from_string(const std::string& s) {
    if (s == "complex_haar") return Ensemble::complex_haar;
    if (s == "real_orthogonal") return Ensemble::real_orthogonal;
    if (s == "ghz_class_real") return Ensemble::ghz_class_real;
    if (s == "ghz_class_complex") return Ensemble::ghz_class_complex;
    throw ParseError("unknown ensemble '" + s + "'");
}

const char* ensemble_name(Ensemble e) {
    switch (e) {
        case Ensemble::complex_haar: return "complex_haar";
        case Ensemble::real_orthogonal: return "real_orthogonal";
        case Ensemble::ghz_class_real: return "ghz_class_real";
        case Ensemble::ghz_class_complex: return "ghz_class_complex";
    }
    return "?";
}

PureState3Q random_state(Rng& rng, Ensemble ensemble, const Tolerances& tol, int max_attempts) {
    const bool real =
        ensemble == Ensemble::real_orthogonal || ensemble == Ensemble::ghz_class_real;
    const bool reject =
        ensemble == Ensemble::ghz_class_real || ensemble == Ensemble::ghz_class_complex;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        PureState3Q s;
        for (auto& z : s.amps) z = real ? Complex{rng.normal(), 0.0} : rng.normal_complex();
        s = s.normalized();
        if (!reject) return s;
        // keep only genuinely tripartite GHZ-class samples
        bool full_rank = true;
        for (Party p : kParties)
            if (s.marginal(p).det().real() <= tol.tangle) full_rank = false;
        if (!full_rank) continue;
        if (tangle(s) <= tol.tangle) continue;
        return s;
    }
    throw EnsembleExhausted("no GHZ-class sample after " + std::to_string(max_attempts) +
                            " attempts");
}

PureState3Q conjugate(const PureState3Q& state) {
    PureState3Q out = state;
    for (auto& z : out.amps) z = std::conj(z);
    return out;
}

double fidelity_up_to_global_phase(const PureState3Q& s1, const PureState3Q& s2) {
    Complex ov = 0.0;
    for (int n = 0; n < 8; ++n) ov += std::conj(s1.amps[n]) * s2.amps[n];
    return std::abs(ov);
}

PureState3Q ghz_state() {
    PureState3Q s;
    s.amps[0] = s.amps[7] = 1.0 / std::sqrt(2.0);
    return s;
}

PureState3Q w_state() {
    PureState3Q s;
    s.amps[1] = s.amps[2] = s.amps[4] = 1.0 / std::sqrt(3.0);
    return s;
}

PureState3Q basis_state(int i, int j, int k) {
    PureState3Q s;
    s.at(i, j, k) = 1.0;
    return s;
}

}  // namespace triloc
