#ifndef TRILOC_MAT2_HPP
#define TRILOC_MAT2_HPP

#include <array>
#include <cmath>
#include <complex>

namespace triloc {

using Complex = std::complex<double>;

/// Two-component complex vector (a single-qubit state or matrix row).
struct Vec2 {
    Complex e0{}, e1{};

    Complex dot(const Vec2& rhs) const {  // <this|rhs>, conjugate-linear in *this
        return std::conj(e0) * rhs.e0 + std::conj(e1) * rhs.e1;
    }
    double norm() const { return std::sqrt(std::norm(e0) + std::norm(e1)); }
    Vec2 normalized() const {
        const double n = norm();
        return {e0 / n, e1 / n};
    }
    /// Vector orthogonal to this one: (-conj(e1), conj(e0)).
    Vec2 perp() const { return {-std::conj(e1), std::conj(e0)}; }

    Vec2 operator*(Complex s) const { return {e0 * s, e1 * s}; }
    Vec2 operator+(const Vec2& r) const { return {e0 + r.e0, e1 + r.e1}; }
    Vec2 operator-(const Vec2& r) const { return {e0 - r.e0, e1 - r.e1}; }
};

/// Fixed-size 2x2 complex matrix. Row-major, no allocation.
struct Mat2 {
    // entries m00 m01 / m10 m11
    Complex m00{}, m01{}, m10{}, m11{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 zero() { return {}; }
    static Mat2 diag(Complex d0, Complex d1) { return {d0, 0.0, 0.0, d1}; }
    /// Real rotation by angle alpha: [[cos,sin],[-sin,cos]].
    static Mat2 rotation(double alpha) {
        const double c = std::cos(alpha), s = std::sin(alpha);
        return {c, s, -s, c};
    }
    /// Reflection [[cos t, sin t],[sin t, -cos t]]; swaps |0> and cos t|0>+sin t|1>.
    static Mat2 reflection(double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        return {c, s, s, -c};
    }
    static Mat2 outer(const Vec2& u, const Vec2& v) {  // |u><v|
        return {u.e0 * std::conj(v.e0), u.e0 * std::conj(v.e1),
                u.e1 * std::conj(v.e0), u.e1 * std::conj(v.e1)};
    }
    /// Rows are the two given vectors (useful for basis-change unitaries).
    static Mat2 from_rows(const Vec2& r0, const Vec2& r1) {
        return {r0.e0, r0.e1, r1.e0, r1.e1};
    }

    Mat2 operator+(const Mat2& r) const {
        return {m00 + r.m00, m01 + r.m01, m10 + r.m10, m11 + r.m11};
    }
    Mat2 operator-(const Mat2& r) const {
        return {m00 - r.m00, m01 - r.m01, m10 - r.m10, m11 - r.m11};
    }
    Mat2 operator*(const Mat2& r) const {
        return {m00 * r.m00 + m01 * r.m10, m00 * r.m01 + m01 * r.m11,
                m10 * r.m00 + m11 * r.m10, m10 * r.m01 + m11 * r.m11};
    }
    Mat2 operator*(Complex s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }
    Mat2 operator*(double s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }

    Mat2 adjoint() const {
        return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
    }
    Mat2 transpose() const { return {m00, m10, m01, m11}; }
    Mat2 conj() const {
        return {std::conj(m00), std::conj(m01), std::conj(m10), std::conj(m11)};
    }
    Complex trace() const { return m00 + m11; }
    Complex det() const { return m00 * m11 - m01 * m10; }

    Vec2 apply(const Vec2& v) const {
        return {m00 * v.e0 + m01 * v.e1, m10 * v.e0 + m11 * v.e1};
    }
    Vec2 row(int i) const { return i == 0 ? Vec2{m00, m01} : Vec2{m10, m11}; }
    Vec2 col(int j) const { return j == 0 ? Vec2{m00, m10} : Vec2{m01, m11}; }

    double frobenius_norm() const {
        return std::sqrt(std::norm(m00) + std::norm(m01) + std::norm(m10) + std::norm(m11));
    }
    /// Max |entry| of (this^dag * this - 1); zero iff unitary.
    double unitarity_defect() const {
        const Mat2 d = adjoint() * (*this) - identity();
        return std::max(std::max(std::abs(d.m00), std::abs(d.m01)),
                        std::max(std::abs(d.m10), std::abs(d.m11)));
    }
    /// Operator (spectral) norm via the larger singular value.
    double operator_norm() const {
        const Mat2 h = adjoint() * (*this);
        const double tr = h.trace().real();
        const double dt = h.det().real();
        const double disc = std::max(0.0, tr * tr / 4.0 - dt);
        return std::sqrt(std::max(0.0, tr / 2.0 + std::sqrt(disc)));
    }
    bool finite() const {
        auto ok = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
        return ok(m00) && ok(m01) && ok(m10) && ok(m11);
    }
};

inline Mat2 operator*(double s, const Mat2& m) { return m * s; }
inline Mat2 operator*(Complex s, const Mat2& m) { return m * s; }

inline double trace_re(const Mat2& m) { return m.trace().real(); }

}  // namespace triloc

#endif
