#include "triloc/gate_finder.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "triloc/errors.hpp"
#include "triloc/ghz_canonical.hpp"

namespace triloc {

GateConditionsResidual gate_residuals(const TMatrixPair& t) {
    const TraceMoments m = trace_moments(t);
    GateConditionsResidual r;
    r.r1 = t.a * t.a * m.f1 - t.b * t.b * m.f0;
    r.r2 = t.a * m.g10 - t.b * m.g01;
    return r;
}

Mat2 gate_unitary(double alpha, double zeta) {
    const Complex e{std::cos(zeta), std::sin(zeta)};
    const double c = std::cos(alpha), s = std::sin(alpha);
    return {c * e, s * std::conj(e), -s * e, c * std::conj(e)};
}

double ReducedCubic::max_coeff() const {
    return std::max(std::max(std::abs(c3), std::abs(c2)),
                    std::max(std::abs(c1), std::abs(c0)));
}

std::vector<double> ReducedCubic::real_roots() const {
    const double scale = max_coeff();
    std::vector<double> roots;
    if (scale < 1e-300) return roots;

    auto polish = [&](double w) {
        for (int it = 0; it < 3; ++it) {
            const double d = (3.0 * c3 * w + 2.0 * c2) * w + c1;
            if (std::abs(d) < 1e-300) break;
            w -= eval(w) / d;
        }
        return w;
    };

    if (std::abs(c3) > 1e-12 * scale) {
        Eigen::Matrix3d comp = Eigen::Matrix3d::Zero();
        comp(1, 0) = 1.0;
        comp(2, 1) = 1.0;
        comp(0, 2) = -c0 / c3;
        comp(1, 2) = -c1 / c3;
        comp(2, 2) = -c2 / c3;
        Eigen::EigenSolver<Eigen::Matrix3d> es(comp);
        for (int i = 0; i < 3; ++i) {
            const std::complex<double> ev = es.eigenvalues()(i);
            if (std::abs(ev.imag()) <= 1e-8 * (1.0 + std::abs(ev.real())))
                roots.push_back(polish(ev.real()));
        }
    } else if (std::abs(c2) > 1e-12 * scale) {
        const double disc = c1 * c1 - 4.0 * c2 * c0;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            const double q = -0.5 * (c1 + (c1 >= 0.0 ? sq : -sq));
            roots.push_back(q / c2);
            if (std::abs(q) > 1e-300) roots.push_back(c0 / q);
        }
    } else if (std::abs(c1) > 1e-12 * scale) {
        roots.push_back(-c0 / c1);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {

TMatrixPair rotate_pair(const TMatrixPair& t, double alpha, double zeta) {
    const Complex e{std::cos(zeta), std::sin(zeta)};
    const double c = std::cos(alpha), s = std::sin(alpha);
    TMatrixPair out;
    out.party = t.party;
    out.t0 = (c * e) * t.t0 + (s * std::conj(e)) * t.t1;
    out.t1 = (-s * e) * t.t0 + (c * std::conj(e)) * t.t1;
    out.a = trace_re(out.t0 * out.t0.adjoint());
    out.b = trace_re(out.t1 * out.t1.adjoint());
    return out;
}

/// Fits A(1-z^8)+B(z+z^7)+C(z^2-z^6)+D(z^3+z^5) to samples of
/// residual(alpha)/cos^8(alpha) at z = tan(alpha).
PolynomialP8 fit_structured(const std::vector<double>& zs, const std::vector<double>& rhs,
                            const char* what) {
    const int n = static_cast<int>(zs.size());
    Eigen::MatrixXd m(n, 4);
    Eigen::VectorXd b(n);
    for (int s = 0; s < n; ++s) {
        const double z = zs[s];
        const double z2 = z * z, z3 = z2 * z, z5 = z3 * z2, z6 = z3 * z3, z7 = z6 * z,
                     z8 = z7 * z;
        m(s, 0) = 1.0 - z8;
        m(s, 1) = z + z7;
        m(s, 2) = z2 - z6;
        m(s, 3) = z3 + z5;
        b(s) = rhs[s];
    }
    const Eigen::Vector4d coeffs = m.colPivHouseholderQr().solve(b);
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    const double fit_residual = (m * coeffs - b).norm();
    if (fit_residual > 1e-7 * scale)
        throw StructureViolation(std::string(what) + " residual is not of the structured form (fit defect " +
                                 std::to_string(fit_residual) + ")");
    return {coeffs(0), coeffs(1), coeffs(2), coeffs(3)};
}

constexpr int kFitSamples = 17;
constexpr double kFitRange = 1.1;  // alpha range; cos^8 stays well conditioned

std::pair<PolynomialP8, PolynomialP8> fit_both(const TMatrixPair& t, double zeta,
                                               double* max_im_r2 = nullptr) {
    std::vector<double> zs(kFitSamples), rhs1(kFitSamples), rhs2(kFitSamples);
    double im_max = 0.0;
    for (int s = 0; s < kFitSamples; ++s) {
        const double alpha = -kFitRange + 2.0 * kFitRange * s / (kFitSamples - 1);
        const double c = std::cos(alpha);
        const double w = std::pow(c, 8.0);
        const TMatrixPair rot = rotate_pair(t, alpha, zeta);
        const GateConditionsResidual r = gate_residuals(rot);
        zs[s] = std::tan(alpha);
        rhs1[s] = r.r1 / w;
        rhs2[s] = r.r2.real() / w;
        im_max = std::max(im_max, std::abs(r.r2.imag()));
    }
    if (max_im_r2) *max_im_r2 = im_max;
    return {fit_structured(zs, rhs1, "cond1"), fit_structured(zs, rhs2, "cond2")};
}

/// Sign-change roots of p on [-1, 1] by grid scan + bisection.
std::vector<double> p8_roots_in_unit_interval(const PolynomialP8& p) {
    constexpr int kGrid = 4000;
    std::vector<double> roots;
    double prev_z = -1.0, prev_v = p.eval(prev_z);
    const double scale =
        std::max({1e-300, std::abs(p.coeff_a), std::abs(p.coeff_b), std::abs(p.coeff_c),
                  std::abs(p.coeff_d)});
    if (std::abs(prev_v) <= 1e-12 * scale) roots.push_back(prev_z);
    for (int i = 1; i <= kGrid; ++i) {
        const double z = -1.0 + 2.0 * i / kGrid;
        const double v = p.eval(z);
        if (std::abs(v) <= 1e-12 * scale) {
            roots.push_back(z);
        } else if (prev_v != 0.0 && std::signbit(v) != std::signbit(prev_v)) {
            double lo = prev_z, hi = z, flo = prev_v;
            for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = p.eval(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (std::signbit(fm) == std::signbit(flo)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_z = z;
        prev_v = v;
    }
    return roots;
}

double residual_magnitude(const GateConditionsResidual& r) {
    return std::max(std::abs(r.r1), std::abs(r.r2));
}

Eigen::Matrix<double, 6, 6> sylvester(const ReducedCubic& g1, const ReducedCubic& g2) {
    Eigen::Matrix<double, 6, 6> m = Eigen::Matrix<double, 6, 6>::Zero();
    const double a[4] = {g1.c3, g1.c2, g1.c1, g1.c0};
    const double b[4] = {g2.c3, g2.c2, g2.c1, g2.c0};
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 4; ++k) {
            m(r, r + k) = a[k];
            m(r + 3, r + k) = b[k];
        }
    return m;
}

ReducedCubic normalized(const ReducedCubic& g) {
    const double s = g.max_coeff();
    if (s < 1e-300) return g;
    return {g.c3 / s, g.c2 / s, g.c1 / s, g.c0 / s};
}

/// Newton refinement of (alpha, zeta) on the system (r1, Re r2) with a
/// finite-difference Jacobian; the scan + cubic root only locate the solution
/// to grid accuracy.
void polish_alpha_zeta(const TMatrixPair& t, double& alpha, double& zeta) {
    auto f = [&](double al, double ze) {
        const GateConditionsResidual r = gate_residuals(rotate_pair(t, al, ze));
        return std::pair<double, double>{r.r1, r.r2.real()};
    };
    const double h = 1e-7;
    for (int it = 0; it < 12; ++it) {
        const auto [f1, f2] = f(alpha, zeta);
        if (std::max(std::abs(f1), std::abs(f2)) < 1e-15) break;
        const auto [f1a, f2a] = f(alpha + h, zeta);
        const auto [f1z, f2z] = f(alpha, zeta + h);
        const double j11 = (f1a - f1) / h, j12 = (f1z - f1) / h;
        const double j21 = (f2a - f2) / h, j22 = (f2z - f2) / h;
        const double det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-300) break;
        const double da = (f1 * j22 - f2 * j12) / det;
        const double dz = (f2 * j11 - f1 * j21) / det;
        if (!std::isfinite(da) || !std::isfinite(dz) || std::abs(da) + std::abs(dz) > 0.3) break;
        alpha -= da;
        zeta -= dz;
    }
}

// POVM weights at fixed lambda (same formula as the engine's solve_condpovm;
// kept local to avoid a header cycle). Requires a <= b, lambda > 1.
std::pair<double, double> povm_weights(double a, double b, double lambda) {
    const double x = (a * a - b * b * lambda) / (a * a - b * b * lambda * lambda);
    return {x, lambda * x};
}

}  // namespace

PolynomialP8 build_p1_real(const PureState3Q& state, Party party, const Tolerances& tol) {
    (void)tol;
    if (!state.is_real(1e-8))
        throw StructureViolation("real-branch fit requires real amplitudes");
    return fit_both(t_matrices(state, party), 0.0).first;
}

GateSearchResult find_gate_unitary_real(const PureState3Q& state, Party party,
                                        const Tolerances& tol) {
    if (classify(state, tol) != StateClass::GhzClass)
        throw NotGhzClass("gate search requires a GHZ-class state");
    const PolynomialP8 p1 = build_p1_real(state, party, tol);

    std::vector<double> zs;
    const double coeff_scale = std::max({std::abs(p1.coeff_a), std::abs(p1.coeff_b),
                                         std::abs(p1.coeff_c), std::abs(p1.coeff_d)});
    if (coeff_scale <= 1e-10) {
        zs.push_back(0.0);  // residual identically zero: already a gate state
    } else {
        zs = p8_roots_in_unit_interval(p1);
        // the bisection bracket misses even-order (tangent) roots; the
        // companion-matrix roots of the reduced cubic recover them
        for (double w : ReducedCubic::from_p8(p1).real_roots()) {
            const double root = std::sqrt(w * w + 4.0);
            for (double z : {(-w + root) / 2.0, (-w - root) / 2.0})
                if (std::abs(z) <= 1.0 + 1e-12) zs.push_back(z);
        }
    }
    if (zs.empty())
        throw RootRefinementFailed("no cond1 root found in [-1, 1]");

    GateSearchResult best;
    best.party = party;
    double best_mag = std::numeric_limits<double>::infinity();
    for (double z : zs) {
        ++best.candidates_tried;
        const double alpha = std::atan(z);
        const Mat2 u = Mat2::rotation(alpha);
        const PureState3Q transformed = apply_local_unitary(state, party, u, tol);
        const GateConditionsResidual r = gate_residuals(t_matrices(transformed, party));
        const double mag = residual_magnitude(r);
        if (mag < best_mag) {
            best_mag = mag;
            best.alpha = alpha;
            best.zeta = 0.0;
            best.unitary = u;
            best.residuals = r;
            best.transformed = transformed;
        }
    }
    if (best_mag > tol.gate)
        throw RootRefinementFailed("best cond residual " + std::to_string(best_mag) +
                                   " exceeds the gate tolerance");
    best.im_cond2_violation = std::abs(best.residuals.r2.imag()) > tol.gate;
    return best;
}

std::pair<PolynomialP8, PolynomialP8> build_p8_complex(const PureState3Q& state, Party party,
                                                       double zeta, const Tolerances& tol) {
    (void)tol;
    return fit_both(t_matrices(state, party), zeta);
}

std::pair<ReducedCubic, ReducedCubic> build_cubics_complex(const PureState3Q& state, Party party,
                                                           double zeta, const Tolerances& tol) {
    const auto [p1, p2] = build_p8_complex(state, party, zeta, tol);
    return {ReducedCubic::from_p8(p1), ReducedCubic::from_p8(p2)};
}

double resultant_value(const PureState3Q& state, Party party, double zeta,
                       const Tolerances& tol) {
    const auto [g1, g2] = build_cubics_complex(state, party, zeta, tol);
    return sylvester(g1, g2).determinant();
}

namespace {

/// Coefficient-normalized variant: same zeros and signs, but a tame dynamic
/// range, which keeps the scan's relative zero band meaningful.
double scaled_resultant_value(const PureState3Q& state, Party party, double zeta,
                              const Tolerances& tol) {
    const auto [g1, g2] = build_cubics_complex(state, party, zeta, tol);
    return sylvester(normalized(g1), normalized(g2)).determinant();
}

}  // namespace

std::vector<double> resultant_scan(const PureState3Q& state, Party party, int grid_size,
                                   const Tolerances& tol) {
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> zetas(grid_size), values(grid_size);
    double vmax = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        zetas[i] = two_pi * i / grid_size;
        values[i] = scaled_resultant_value(state, party, zetas[i], tol);
        vmax = std::max(vmax, std::abs(values[i]));
    }
    std::vector<double> out;
    if (vmax < 1e-300) return out;

    auto value_at = [&](double z) { return scaled_resultant_value(state, party, z, tol); };
    for (int i = 0; i < grid_size; ++i) {
        const int j = (i + 1) % grid_size;
        const double vi = values[i], vj = values[j];
        if (std::abs(vi) <= tol.res * vmax) {
            out.push_back(zetas[i]);
            continue;
        }
        if (std::abs(vj) <= tol.res * vmax) continue;  // picked up at its own index
        if (std::signbit(vi) == std::signbit(vj)) continue;
        double lo = zetas[i], hi = zetas[i] + two_pi / grid_size, flo = vi;
        for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = value_at(mid);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if (std::signbit(fm) == std::signbit(flo)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

GateSearchResult find_gate_unitary_complex(const PureState3Q& state, Party party,
                                           const Tolerances& tol, int grid_size) {
    if (classify(state, tol) != StateClass::GhzClass)
        throw NotGhzClass("gate search requires a GHZ-class state");

    GateSearchResult result;
    result.party = party;
    bool saw_real_common_root = false;
    bool saw_conjugate_outcome = false;
    int tried = 0;

    // Close-paired resultant zeros cancel on a coarse grid (no net sign change
    // across a cell), so escalate the grid until a solution appears.
    for (int factor : {1, 4, 16}) {
    std::vector<double> candidates = resultant_scan(state, party, factor * grid_size, tol);
    if (candidates.empty()) {
        // Resultant without zero crossings (or identically zero): fall back to
        // the shared roots at zeta = 0, which covers real-form inputs.
        candidates.push_back(0.0);
    }

    for (double zeta : candidates) {
        const auto [g1, g2] = build_cubics_complex(state, party, zeta, tol);
        const double s1 = std::max(1.0, g1.max_coeff());
        const double s2 = std::max(1.0, g2.max_coeff());
        for (double w : g1.real_roots()) {
            const double wb = 1.0 + std::abs(w);
            const double wb3 = wb * wb * wb;
            if (std::abs(g2.eval(w)) > 1e-5 * s2 * wb3 &&
                std::abs(g1.eval(w)) <= 1e-8 * s1 * wb3)
                continue;  // real root of g1 that g2 does not share
            saw_real_common_root = true;
            ++tried;

            const double z = 0.5 * (-w + std::sqrt(w * w + 4.0));
            double alpha = std::atan(z);
            double zeta_ref = zeta;
            {
                // polish only when needed: a Newton step from an already
                // converged point can slide to the neighbouring solution
                const GateConditionsResidual r0 =
                    gate_residuals(rotate_pair(t_matrices(state, party), alpha, zeta_ref));
                if (residual_magnitude(r0) > tol.gate) {
                    double ap = alpha, zp = zeta_ref;
                    polish_alpha_zeta(t_matrices(state, party), ap, zp);
                    const GateConditionsResidual rp =
                        gate_residuals(rotate_pair(t_matrices(state, party), ap, zp));
                    if (residual_magnitude(rp) < residual_magnitude(r0)) {
                        alpha = ap;
                        zeta_ref = zp;
                    }
                }
            }
            const Mat2 u = gate_unitary(alpha, zeta_ref);
            PureState3Q transformed = apply_local_unitary(state, party, u, tol);
            GateConditionsResidual r = gate_residuals(t_matrices(transformed, party));
            if (residual_magnitude(r) > tol.gate) continue;

            // Accept only if a test POVM on this gate state is deterministic,
            // i.e. its two outcomes land on one common orbit (the conjugate
            // root family produces mutually conjugate outcomes instead).
            PureState3Q probe = transformed;
            TMatrixPair tm = t_matrices(probe, party);
            if (tm.a > tm.b) {
                const Mat2 flip{0.0, 1.0, 1.0, 0.0};
                probe = apply_local_unitary(probe, party, flip, tol);
                tm = t_matrices(probe, party);
            }
            const auto [x, y] = povm_weights(tm.a, tm.b, 2.0);
            const Mat2 e0 = Mat2::diag(std::sqrt(x), std::sqrt(y));
            const Mat2 e1 = Mat2::diag(std::sqrt(1.0 - x), std::sqrt(1.0 - y));
            const auto out0 = apply_kraus(probe, party, e0, tol);
            const auto out1 = apply_kraus(probe, party, e1, tol);
            const OrbitRelation rel =
                orbit_fingerprints_equal(compute_invariants(out0.first, tol),
                                         compute_invariants(out1.first, tol), tol.orbit);
            if (rel != OrbitRelation::same_orbit) {
                saw_conjugate_outcome =
                    saw_conjugate_outcome || rel == OrbitRelation::conjugate_orbit;
                continue;
            }

            result.alpha = alpha;
            result.zeta = zeta_ref;
            result.unitary = u;
            result.residuals = r;
            result.transformed = transformed;
            result.candidates_tried = tried;
            result.im_cond2_violation = std::abs(r.r2.imag()) > tol.gate;
            return result;
        }
    }
    }
    if (!saw_real_common_root)
        throw OnlyComplexCommonRoots("every shared cubic root at the resultant zeros is complex");
    if (saw_conjugate_outcome)
        throw OnlyConjugateOrbitOutcomes(
            "all admissible roots drive the POVM outcomes onto the conjugate orbit");
    throw RootRefinementFailed("no candidate satisfied the gate conditions");
}

}  // namespace triloc
