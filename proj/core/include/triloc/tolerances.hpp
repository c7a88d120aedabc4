#ifndef TRILOC_TOLERANCES_HPP
#define TRILOC_TOLERANCES_HPP

namespace triloc {

/// Numerical tolerances used across the library. All are strictly positive.
/// Defaults leave roughly five decades of headroom over double roundoff to
/// survive chained operations.
struct Tolerances {
    double norm = 1e-10;        // state normalization
    double unit = 1e-10;        // unitarity / POVM completeness defect
    double prob = 1e-12;        // outcome probability below which a branch is undefined
    double tangle = 1e-6;       // I4 threshold separating GHZ class from W class
    double i6 = 1e-9;           // zero band for Im(I6) / Im(Omega)
    double degenerate = 1e-7;   // relative mu≈nu band where the Im(Omega) sign is ambiguous
    double gate = 1e-9;         // gate-condition residual bound
    double res = 1e-10;         // resultant zero threshold, relative to grid max
    double orbit = 1e-8;        // fingerprint comparison after a POVM
    double proto = 1e-10;       // protocol leaf fidelity deficit

    static const Tolerances& defaults() {
        static const Tolerances t{};
        return t;
    }
};

}  // namespace triloc

#endif
