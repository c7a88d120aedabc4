#ifndef TRILOC_GATE_FINDER_HPP
#define TRILOC_GATE_FINDER_HPP

#include <utility>
#include <vector>

#include "triloc/invariants.hpp"
#include "triloc/state.hpp"

namespace triloc {

/// Residuals of the two polynomial gate conditions. A gate state has both ~ 0:
///   r1 = a^2 Tr[(T1 T1^dag)^2] - b^2 Tr[(T0 T0^dag)^2]
///   r2 = a Tr[T1 T0^dag T1 T1^dag T0 T1^dag] - b Tr[T0 T1^dag T0 T0^dag T1 T0^dag]
/// r2 is stored as a complex number; the two traces are self-adjoint products,
/// so its imaginary part vanishes identically up to roundoff.
struct GateConditionsResidual {
    double r1 = 0.0;
    Complex r2{};
};

GateConditionsResidual gate_residuals(const TMatrixPair& t);

/// Structured degree-8 polynomial A(1-z^8) + B(z+z^7) + C(z^2-z^6) + D(z^3+z^5).
/// p(1) = -p(-1) holds identically, so a real root exists in [-1, 1].
struct PolynomialP8 {
    double coeff_a = 0.0, coeff_b = 0.0, coeff_c = 0.0, coeff_d = 0.0;

    double eval(double z) const {
        const double z2 = z * z, z3 = z2 * z, z5 = z3 * z2, z6 = z3 * z3, z7 = z6 * z,
                     z8 = z7 * z;
        return coeff_a * (1.0 - z8) + coeff_b * (z + z7) + coeff_c * (z2 - z6) +
               coeff_d * (z3 + z5);
    }
};

/// Cubic in w = 1/z - z obtained after pulling the z^2+1 factor out of a
/// PolynomialP8: g(w) = A w^3 + B w^2 + (C + 2A) w + (D + B).
struct ReducedCubic {
    double c3 = 0.0, c2 = 0.0, c1 = 0.0, c0 = 0.0;

    static ReducedCubic from_p8(const PolynomialP8& p) {
        return {p.coeff_a, p.coeff_b, p.coeff_c + 2.0 * p.coeff_a, p.coeff_d + p.coeff_b};
    }
    double eval(double w) const { return ((c3 * w + c2) * w + c1) * w + c0; }
    double max_coeff() const;
    /// Real roots via companion-matrix eigenvalues, with leading-coefficient
    /// deflation when the degree drops.
    std::vector<double> real_roots() const;
};

struct GateSearchResult {
    Party party = Party::A;
    double alpha = 0.0;
    double zeta = 0.0;  // 0 for the real branch
    Mat2 unitary;       // the Alice-side rotation R(alpha) * diag(e^{i zeta}, e^{-i zeta})
    GateConditionsResidual residuals;  // of the transformed state
    PureState3Q transformed;
    int candidates_tried = 0;
    bool im_cond2_violation = false;
};

/// Unitary parametrized by the search variables.
Mat2 gate_unitary(double alpha, double zeta);

/// Fits the structured degree-8 coefficients of the cond1 residual of the
/// rotated state (real rotation, zeta = 0). Requires real amplitudes; throws
/// StructureViolation when the structured fit fails.
PolynomialP8 build_p1_real(const PureState3Q& state, Party party,
                           const Tolerances& tol = Tolerances::defaults());

GateSearchResult find_gate_unitary_real(const PureState3Q& state, Party party,
                                        const Tolerances& tol = Tolerances::defaults());

/// Both reduced cubics (cond1, cond2) at a fixed zeta.
std::pair<ReducedCubic, ReducedCubic> build_cubics_complex(const PureState3Q& state, Party party,
                                                           double zeta,
                                                           const Tolerances& tol =
                                                               Tolerances::defaults());

/// Degree-8 fits behind build_cubics_complex, for structural tests.
std::pair<PolynomialP8, PolynomialP8> build_p8_complex(const PureState3Q& state, Party party,
                                                       double zeta,
                                                       const Tolerances& tol =
                                                           Tolerances::defaults());

/// Res(g1, g2)(zeta) via the 6x6 Sylvester determinant.
double resultant_value(const PureState3Q& state, Party party, double zeta,
                       const Tolerances& tol = Tolerances::defaults());

/// Sign-change brackets of the resultant on a uniform zeta grid over [0, 2pi),
/// refined by bisection. Empty when no sign change is found (caller may
/// densify the grid).
std::vector<double> resultant_scan(const PureState3Q& state, Party party, int grid_size,
                                   const Tolerances& tol = Tolerances::defaults());

GateSearchResult find_gate_unitary_complex(const PureState3Q& state, Party party,
                                           const Tolerances& tol = Tolerances::defaults(),
                                           int grid_size = 256);

}  // namespace triloc

#endif
