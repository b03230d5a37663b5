#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace tga {

using Scalar = std::complex<double>;

enum class Field { Real, Complex };

inline constexpr double kTieRounding = 1e-12;   // modulus rounding for greedy ties
inline constexpr double kMarginTol = 1e-9;      // inequality pass tolerance
inline constexpr double kEqTol = 1e-10;

/// sgn(z) = z/|z| with sgn(0) = 1.
inline Scalar sgn(Scalar z) {
    double a = std::abs(z);
    if (a == 0.0) return Scalar(1.0, 0.0);
    return z / a;
}

/// 2 over the reals, 4 over the complexes.
inline double upsilon(Field f) { return f == Field::Real ? 2.0 : 4.0; }

/// Expansion constant of a p-Banach space, (2^p - 1)^{-1/p}; equals 1 at p = 1.
inline double subadditivity_constant(double p) {
    return std::pow(std::pow(2.0, p) - 1.0, -1.0 / p);
}

/// Modulus rounded to the tie-comparison grid.
inline double rounded_modulus(Scalar z) {
    double a = std::abs(z);
    return std::round(a / kTieRounding) * kTieRounding;
}

/// Unimodular sign grid: {+1,-1} over R, the K-th roots of unity over C.
inline std::vector<Scalar> sign_grid(Field f, int rootsOfUnity = 8) {
    std::vector<Scalar> g;
    if (f == Field::Real) {
        g = {Scalar(1, 0), Scalar(-1, 0)};
    } else {
        g.reserve(rootsOfUnity);
        for (int j = 0; j < rootsOfUnity; ++j) {
            double t = 2.0 * M_PI * j / rootsOfUnity;
            g.emplace_back(std::cos(t), std::sin(t));
        }
    }
    return g;
}

/// Deterministic xorshift-based generator; avoids implementation-defined
/// std distributions so output bytes do not move between platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        std::uint64_t x = state_;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        state_ = x;
        return x * 0x2545f4914f6cdd1dull;
    }

    double uniform() { return std::ldexp(static_cast<double>(next() >> 11), -53); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

    /// Stable seed mix for per-cell generators.
    static std::uint64_t mix(std::uint64_t seed, const std::string& tag, std::uint64_t cell) {
        std::uint64_t h = seed ^ 0xcbf29ce484222325ull;
        for (char c : tag) { h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c)); h *= 0x100000001b3ull; }
        h ^= cell + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h ? h : 1;
    }

private:
    std::uint64_t state_;
};

}  // namespace tga
