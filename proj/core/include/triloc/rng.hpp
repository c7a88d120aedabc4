#ifndef TRILOC_RNG_HPP
#define TRILOC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>

#include "triloc/mat2.hpp"

namespace triloc {

/// Seeded random source with hand-rolled uniform/normal transforms so that
/// streams are bit-identical across standard libraries and platforms
/// (std::normal_distribution is implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    /// Derived stream for trial `index`; parallel campaigns stay reproducible.
    Rng fork(std::uint64_t index) const { return Rng(seed_mix(seed_, index)); }

    std::uint64_t seed() const { return seed_; }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (no cached spare; deterministic).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    Complex normal_complex() { return {normal(), normal()}; }

    /// Haar-distributed 2x2 unitary: QR of a complex Gaussian matrix with the
    /// R-diagonal phase correction.
    Mat2 haar_unitary() {
        const Vec2 a{normal_complex(), normal_complex()};
        const Vec2 b{normal_complex(), normal_complex()};
        const Vec2 q0 = a.normalized();
        const Complex r01 = q0.dot(b);
        const Vec2 q1 = (b - q0 * r01).normalized();
        const Complex r00 = q0.dot(a);
        const Complex r11 = q1.dot(b);
        const Complex p0 = std::conj(r00) / std::abs(r00);
        const Complex p1 = std::conj(r11) / std::abs(r11);
        // columns q0*p0, q1*p1
        return {q0.e0 * p0, q1.e0 * p1,
                q0.e1 * p0, q1.e1 * p1};
    }

    Mat2 random_rotation() { return Mat2::rotation(uniform(0.0, 2.0 * std::numbers::pi)); }

    /// Full-rank 2-outcome Kraus pair: K0 = W0 sqrt(P), K1 = W1 sqrt(1-P) with
    /// P = V diag(p0, p1) V^dag, p_i in (p_lo, p_hi), W_i and V Haar unitary.
    /// Completeness K0^dag K0 + K1^dag K1 = 1 holds by construction.
    std::pair<Mat2, Mat2> random_full_rank_povm(double p_lo = 0.1, double p_hi = 0.9) {
        const Mat2 v = haar_unitary();
        const double p0 = uniform(p_lo, p_hi), p1 = uniform(p_lo, p_hi);
        const Mat2 root0 = v * Mat2::diag(std::sqrt(p0), std::sqrt(p1)) * v.adjoint();
        const Mat2 root1 = v * Mat2::diag(std::sqrt(1.0 - p0), std::sqrt(1.0 - p1)) * v.adjoint();
        return {haar_unitary() * root0, haar_unitary() * root1};
    }

  private:
    static std::uint64_t seed_mix(std::uint64_t seed, std::uint64_t index) {
        // splitmix64 finalizer over a seed/index combination
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace triloc

#endif
