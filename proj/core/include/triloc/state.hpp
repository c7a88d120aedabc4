#ifndef TRILOC_STATE_HPP
#define TRILOC_STATE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "triloc/mat2.hpp"
#include "triloc/rng.hpp"
#include "triloc/tolerances.hpp"

namespace triloc {

enum class Party { A, B, C };

constexpr std::array<Party, 3> kParties = {Party::A, Party::B, Party::C};

const char* party_name(Party p);
Party party_from_string(const std::string& s);

/// Pure state of three qubits. Amplitudes are stored at flat index 4i+2j+k for
/// basis |ijk>, with i Alice's bit, j Bob's, k Charlie's.
struct PureState3Q {
    std::array<Complex, 8> amps{};

    Complex& at(int i, int j, int k) { return amps[4 * i + 2 * j + k]; }
    const Complex& at(int i, int j, int k) const { return amps[4 * i + 2 * j + k]; }

    double norm() const;
    PureState3Q normalized() const;
    bool is_normalized(double eps = Tolerances::defaults().norm) const;
    bool finite() const;
    bool is_real(double eps = 0.0) const;  // all Im amplitudes within eps

    /// Reduced density matrix of one party.
    Mat2 marginal(Party p) const;
};

/// The two amplitude slices of a state relative to one party's basis, plus
/// their trace weights a = Tr[T0 T0^dag], b = Tr[T1 T1^dag].
///
/// Row/column conventions: party A -> (T_i)_jk = t_ijk; party B -> t_jik
/// (rows Alice, columns Charlie); party C -> t_jki (rows Alice, columns Bob).
struct TMatrixPair {
    Mat2 t0, t1;
    Party party = Party::A;
    double a = 0.0, b = 0.0;
};

TMatrixPair t_matrices(const PureState3Q& state, Party party);

/// Inverse of t_matrices: rebuilds the amplitude array from the two slices.
PureState3Q reassemble(const Mat2& t0, const Mat2& t1, Party party);

/// Applies a single-qubit unitary to one party. Throws NonUnitaryOperator if
/// the unitarity defect of u exceeds eps_unit.
PureState3Q apply_local_unitary(const PureState3Q& state, Party party, const Mat2& u,
                                const Tolerances& tol = Tolerances::defaults());

/// Applies an arbitrary single-party Kraus operator (||k|| <= 1) and returns
/// the normalized outcome together with its probability.
/// Throws ZeroProbabilityOutcome when the probability is below eps_prob.
std::pair<PureState3Q, double> apply_kraus(const PureState3Q& state, Party party,
                                           const Mat2& k,
                                           const Tolerances& tol = Tolerances::defaults());

enum class Ensemble { complex_haar, real_orthogonal, ghz_class_real, ghz_class_complex };

Ensemble ensemble_from_string(const std::string& s);
const char* ensemble_name(Ensemble e);

/// Seeded random state. The ghz_class_* ensembles resample until I4 exceeds
/// the tangle threshold and every marginal has rank 2; EnsembleExhausted after
/// max_attempts rejections.
PureState3Q random_state(Rng& rng, Ensemble ensemble,
                         const Tolerances& tol = Tolerances::defaults(),
                         int max_attempts = 1000);

PureState3Q conjugate(const PureState3Q& state);

/// |<s1|s2>|, insensitive to global phase.
double fidelity_up_to_global_phase(const PureState3Q& s1, const PureState3Q& s2);

/// Well-known fixed states.
PureState3Q ghz_state();
PureState3Q w_state();
PureState3Q basis_state(int i, int j, int k);

}  // namespace triloc

#endif
