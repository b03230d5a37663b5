#pragma once

#include <Eigen/Eigenvalues>

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tga/coeff.hpp"
#include "tga/opt.hpp"
#include "tga/scalar.hpp"
#include "tga/weights.hpp"

namespace tga {

enum class SpaceFamily { Lp, Lorentz, HaarLp, TrigLp, JacobiLp, DifferenceLp, SummingC0, CarlesonF };

inline const char* family_name(SpaceFamily f) {
    switch (f) {
        case SpaceFamily::Lp: return "lp";
        case SpaceFamily::Lorentz: return "lorentz";
        case SpaceFamily::HaarLp: return "haar";
        case SpaceFamily::TrigLp: return "trig";
        case SpaceFamily::JacobiLp: return "jacobi";
        case SpaceFamily::DifferenceLp: return "diff";
        case SpaceFamily::SummingC0: return "summing";
        case SpaceFamily::CarlesonF: return "carleson";
    }
    return "?";
}

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// Ambient quasi-normed space acting on coefficient vectors of a fixed basis.
/// The function families (Haar/Trig/Jacobi/Difference/Summing) fold the basis
/// synthesis into the norm, so every norm here is a norm on coefficients.
struct SpaceDescriptor {
    SpaceFamily family = SpaceFamily::Lp;
    double p = 1.0;          // L_p exponent; may be +inf
    Weight weight;           // Lorentz only
    double q = 1.0;          // Lorentz second index; may be +inf
    int depth = 0;           // Haar synthesis depth / Carleson max depth
    int grid = 0;            // Trig quadrature grid size
    double alpha = 0.0, beta = 0.0;  // Jacobi
    int quadNodes = 0;       // Jacobi quadrature size
    double r = 2.0;          // Carleson inner exponent
    int dim = 1;             // Carleson spatial dimension d
    Field field = Field::Real;

    double pExponent = 1.0;  // p with ||f+g||^p <= ||f||^p + ||g||^p
    double kappa = 1.0;      // modulus of concavity bound 2^{1/pExponent - 1}

    double normScale = 1.0;  // test fixture hook; scales norm() only

    // cached data
    PrimitiveWeight sigma;                    // Lorentz
    std::vector<double> jacNodes, jacWeights; // Jacobi quadrature
    std::vector<std::vector<double>> jacBasis; // jacBasis[n][i] = p_n(x_i)

    double norm(const CoeffVector& f) const;
    double dual_norm(const CoeffVector& g) const;
    bool dual_is_exact() const;
};

namespace detail {

inline double finish_p_sum(double sum, double p) { return std::pow(sum, 1.0 / p); }

inline double lp_norm(const std::vector<Scalar>& v, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& z : v) m = std::max(m, std::abs(z));
        return m;
    }
    double s = 0.0;
    for (const auto& z : v) {
        double a = std::abs(z);
        if (a > 0.0) s += std::pow(a, p);
    }
    return s == 0.0 ? 0.0 : finish_p_sum(s, p);
}

inline double lp_norm_real(const std::vector<double>& v, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double z : v) m = std::max(m, std::abs(z));
        return m;
    }
    double s = 0.0;
    for (double z : v) {
        double a = std::abs(z);
        if (a > 0.0) s += std::pow(a, p);
    }
    return s == 0.0 ? 0.0 : finish_p_sum(s, p);
}

/// Difference-basis synthesis: f = sum c_n (e_n - e_{n-1}), e_0 = 0.
inline std::vector<Scalar> difference_synthesis(const CoeffVector& c) {
    const int n = c.dim();
    std::vector<Scalar> f(n);
    for (int k = 0; k < n; ++k) f[k] = c[k] - (k + 1 < n ? c[k + 1] : Scalar(0, 0));
    return f;
}

/// Summing-basis synthesis: f_k = sum_{n >= k} c_n.
inline std::vector<Scalar> summing_synthesis(const CoeffVector& c) {
    const int n = c.dim();
    std::vector<Scalar> f(n);
    Scalar acc(0, 0);
    for (int k = n - 1; k >= 0; --k) { acc += c[k]; f[k] = acc; }
    return f;
}

/// Haar cell values at resolution 2^depth. Basis order: constant first, then
/// levels j = 0..depth-1 left to right; element index is 0-based.
/// Element values are L_p-normalized: the level-j function takes values
/// -+2^{j/p} on the two halves of its support interval.
inline std::vector<Scalar> haar_synthesis(const CoeffVector& c, int depth, double p) {
    const int cells = 1 << depth;
    std::vector<Scalar> v(cells, Scalar(0, 0));
    const double invp = std::isinf(p) ? 0.0 : 1.0 / p;
    for (int n = 0; n < c.dim(); ++n) {
        if (c[n] == Scalar(0, 0)) continue;
        if (n == 0) {
            for (int g = 0; g < cells; ++g) v[g] += c[0];
            continue;
        }
        int j = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));  // n in [2^j, 2^{j+1})
        int pos = n - (1 << j);
        double scale = std::pow(2.0, j * invp);
        int width = cells >> j;        // support cells
        int start = pos * width;
        Scalar amp = c[n] * scale;
        for (int g = 0; g < width / 2; ++g) v[start + g] -= amp;
        for (int g = width / 2; g < width; ++g) v[start + g] += amp;
    }
    return v;
}

inline int trig_frequency(int n) {  // 0-based basis index -> frequency 0,1,-1,2,-2,...
    if (n == 0) return 0;
    return (n % 2 == 1) ? (n + 1) / 2 : -(n / 2);
}

inline int trig_max_frequency(int n) {
    int m = 0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::abs(trig_frequency(i)));
    return m;
}

inline std::vector<Scalar> trig_synthesis(const CoeffVector& c, int grid) {
    std::vector<Scalar> v(grid, Scalar(0, 0));
    for (int n = 0; n < c.dim(); ++n) {
        if (c[n] == Scalar(0, 0)) continue;
        int k = trig_frequency(n);
        for (int g = 0; g < grid; ++g) {
            double t = 2.0 * M_PI * k * g / grid;
            v[g] += c[n] * Scalar(std::cos(t), std::sin(t));
        }
    }
    return v;
}

// --- dyadic cubes, heap ordering --------------------------------------------

struct CubeAddress {
    int level = 0;
    std::int64_t pos = 0;  // d coordinates packed base 2^level
};

inline std::int64_t cubes_per_level(int level, int d) { return std::int64_t(1) << (level * d); }

inline CubeAddress cube_from_index(int idx0, int d) {  // 0-based flat index
    int level = 0;
    std::int64_t off = 0;
    while (idx0 - off >= cubes_per_level(level, d)) { off += cubes_per_level(level, d); ++level; }
    return {level, idx0 - off};
}

inline int cube_count(int maxDepth, int d) {
    std::int64_t c = 0;
    for (int k = 0; k <= maxDepth; ++k) c += cubes_per_level(k, d);
    return static_cast<int>(c);
}

inline bool cube_contained(const CubeAddress& q, const CubeAddress& pcube, int d) {
    if (q.level < pcube.level) return false;
    int shift = q.level - pcube.level;
    for (int i = 0; i < d; ++i) {
        std::int64_t qi = (q.pos >> (i * q.level)) & ((std::int64_t(1) << q.level) - 1);
        std::int64_t pi = (pcube.pos >> (i * pcube.level)) & ((std::int64_t(1) << pcube.level) - 1);
        if ((qi >> shift) != pi) return false;
    }
    return true;
}

inline double carleson_norm(const CoeffVector& c, int maxDepth, int d, double r) {
    const int n = c.dim();
    std::vector<CubeAddress> addr(n);
    for (int i = 0; i < n; ++i) addr[i] = cube_from_index(i, d);
    double best = 0.0;
    const int total = cube_count(maxDepth, d);
    for (int pi = 0; pi < total; ++pi) {
        CubeAddress P = cube_from_index(pi, d);
        double volP = std::pow(2.0, -P.level * d);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            double a = std::abs(c[i]);
            if (a == 0.0) continue;
            if (cube_contained(addr[i], P, d))
                s += std::pow(2.0, -addr[i].level * d) * std::pow(a, r);
        }
        if (s > 0.0) best = std::max(best, std::pow(s / volP, 1.0 / r));
    }
    return best;
}

}  // namespace detail

// --- constructors ------------------------------------------------------------

inline SpaceDescriptor make_lp(double p, Field field = Field::Real) {
    if (!(p > 0.0)) throw std::invalid_argument("lp: p must be positive");
    SpaceDescriptor s;
    s.family = SpaceFamily::Lp;
    s.p = p;
    s.field = field;
    s.pExponent = std::isinf(p) ? 1.0 : std::min(1.0, p);
    s.kappa = std::pow(2.0, 1.0 / s.pExponent - 1.0);
    return s;
}

inline SpaceDescriptor make_lorentz(Weight w, double q = 1.0, Field field = Field::Real) {
    if (!(q > 0.0)) throw std::invalid_argument("lorentz: q must be positive");
    SpaceDescriptor s;
    s.family = SpaceFamily::Lorentz;
    s.weight = std::move(w);
    s.weight.validate();
    s.sigma = primitive(s.weight);
    if (s.sigma.horizon() >= 2) {
        double c = doubling_constant(s.sigma, s.sigma.horizon());
        if (c > 64.0) throw std::invalid_argument("lorentz: primitive weight is not doubling");
    }
    s.q = q;
    s.field = field;
    s.pExponent = std::isinf(q) ? 1.0 : std::min(1.0, q);
    s.kappa = std::pow(2.0, 1.0 / s.pExponent - 1.0);
    return s;
}

inline SpaceDescriptor make_haar(double p, int depth, Field field = Field::Real) {
    if (!(p > 0.0)) throw std::invalid_argument("haar: p must be positive");
    if (depth < 1 || depth > 20) throw std::invalid_argument("haar: bad depth");
    SpaceDescriptor s;
    s.family = SpaceFamily::HaarLp;
    s.p = p;
    s.depth = depth;
    s.field = field;
    s.pExponent = std::isinf(p) ? 1.0 : std::min(1.0, p);
    s.kappa = std::pow(2.0, 1.0 / s.pExponent - 1.0);
    return s;
}

inline SpaceDescriptor make_trig(double p, int grid, int nBasis, Field field = Field::Complex) {
    if (!(p > 0.0)) throw std::invalid_argument("trig: p must be positive");
    int maxFreq = detail::trig_max_frequency(nBasis);
    if (grid < 4 * (maxFreq + 1))
        throw std::invalid_argument("trig: grid smaller than 4x active bandwidth");
    SpaceDescriptor s;
    s.family = SpaceFamily::TrigLp;
    s.p = p;
    s.grid = grid;
    s.field = field;
    s.pExponent = std::isinf(p) ? 1.0 : std::min(1.0, p);
    s.kappa = std::pow(2.0, 1.0 / s.pExponent - 1.0);
    return s;
}

inline SpaceDescriptor make_jacobi(double alpha, double beta, double p, int nBasis,
                                   int quadNodes = 0, Field field = Field::Real) {
    if (alpha <= -1.0 || beta <= -1.0) throw std::invalid_argument("jacobi: need alpha,beta > -1");
    if (!(p > 0.0)) throw std::invalid_argument("jacobi: p must be positive");
    SpaceDescriptor s;
    s.family = SpaceFamily::JacobiLp;
    s.alpha = alpha;
    s.beta = beta;
    s.p = p;
    s.field = field;
    s.quadNodes = quadNodes > 0 ? quadNodes : nBasis - 1 + 8;
    s.pExponent = std::isinf(p) ? 1.0 : std::min(1.0, p);
    s.kappa = std::pow(2.0, 1.0 / s.pExponent - 1.0);

    // Golub-Welsch on the symmetric Jacobi matrix of the orthonormal recurrence.
    const int nq = s.quadNodes;
    auto diagA = [&](int k) -> double {
        double ab = alpha + beta;
        if (k == 0) return (beta - alpha) / (ab + 2.0);
        double d = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        return (beta * beta - alpha * alpha) / d;
    };
    auto offB = [&](int k) -> double {  // b_k, k >= 1
        double ab = alpha + beta;
        double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
        double den = (2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0);
        return std::sqrt(num / den);
    };
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(nq, nq);
    for (int k = 0; k < nq; ++k) {
        J(k, k) = diagA(k);
        if (k >= 1) { J(k, k - 1) = offB(k); J(k - 1, k) = offB(k); }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    double mu0 = std::pow(2.0, alpha + beta + 1.0) * std::beta(alpha + 1.0, beta + 1.0);
    s.jacNodes.resize(nq);
    s.jacWeights.resize(nq);
    for (int i = 0; i < nq; ++i) {
        s.jacNodes[i] = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        s.jacWeights[i] = mu0 * v0 * v0;
    }
    // orthonormal polynomial values at the nodes
    s.jacBasis.assign(nBasis, std::vector<double>(nq, 0.0));
    for (int i = 0; i < nq; ++i) {
        double x = s.jacNodes[i];
        double pm1 = 0.0, p0 = 1.0 / std::sqrt(mu0);
        for (int n = 0; n < nBasis; ++n) {
            s.jacBasis[n][i] = p0;
            double p1 = ((x - diagA(n)) * p0 - (n >= 1 ? offB(n) : 0.0) * pm1) / offB(n + 1);
            pm1 = p0;
            p0 = p1;
        }
    }
    return s;
}

inline SpaceDescriptor make_difference(double p, Field field = Field::Real) {
    if (!(p > 0.0)) throw std::invalid_argument("diff: p must be positive");
    SpaceDescriptor s;
    s.family = SpaceFamily::DifferenceLp;
    s.p = p;
    s.field = field;
    s.pExponent = std::isinf(p) ? 1.0 : std::min(1.0, p);
    s.kappa = std::pow(2.0, 1.0 / s.pExponent - 1.0);
    return s;
}

inline SpaceDescriptor make_summing(Field field = Field::Real) {
    SpaceDescriptor s;
    s.family = SpaceFamily::SummingC0;
    s.p = kInfExponent;
    s.field = field;
    s.pExponent = 1.0;
    s.kappa = 1.0;
    return s;
}

inline SpaceDescriptor make_carleson(int d, double r, int maxDepth, Field field = Field::Real) {
    if (d < 1 || d > 3) throw std::invalid_argument("carleson: d out of range");
    if (!(r > 0.0)) throw std::invalid_argument("carleson: r must be positive");
    if (maxDepth < 1 || maxDepth * d > 24) throw std::invalid_argument("carleson: depth too large");
    SpaceDescriptor s;
    s.family = SpaceFamily::CarlesonF;
    s.r = r;
    s.dim = d;
    s.depth = maxDepth;
    s.field = field;
    s.pExponent = std::min(1.0, r);
    s.kappa = std::pow(2.0, 1.0 / s.pExponent - 1.0);
    return s;
}

// --- norm dispatch ------------------------------------------------------------

inline double SpaceDescriptor::norm(const CoeffVector& f) const {
    double v = 0.0;
    switch (family) {
        case SpaceFamily::Lp:
            v = detail::lp_norm(f.data(), p);
            break;
        case SpaceFamily::Lorentz: {
            auto a = nonincreasing_rearrangement(f);
            if (static_cast<int>(a.size()) > sigma.horizon())
                throw std::invalid_argument("lorentz: vector longer than weight horizon");
            if (std::isinf(q)) {
                for (size_t i = 0; i < a.size(); ++i) v = std::max(v, a[i] * sigma.at(static_cast<int>(i) + 1));
            } else {
                double s = 0.0;
                for (size_t i = 0; i < a.size(); ++i) {
                    if (a[i] == 0.0) break;
                    int m = static_cast<int>(i) + 1;
                    s += std::pow(a[i], q) * std::pow(sigma.at(m), q - 1.0) * weight.w[i];
                }
                v = s == 0.0 ? 0.0 : std::pow(s, 1.0 / q);
            }
            break;
        }
        case SpaceFamily::HaarLp: {
            if (f.dim() > (1 << depth))
                throw std::invalid_argument("haar: dimension exceeds 2^depth");
            auto cells = detail::haar_synthesis(f, depth, p);
            if (std::isinf(p)) {
                v = detail::lp_norm(cells, p);
            } else {
                double h = std::pow(2.0, -depth);
                double s = 0.0;
                for (const auto& z : cells) {
                    double a = std::abs(z);
                    if (a > 0.0) s += std::pow(a, p) * h;
                }
                v = s == 0.0 ? 0.0 : std::pow(s, 1.0 / p);
            }
            break;
        }
        case SpaceFamily::TrigLp: {
            int maxFreq = detail::trig_max_frequency(f.dim());
            if (grid < 4 * (maxFreq + 1))
                throw std::invalid_argument("trig: grid smaller than 4x active bandwidth");
            auto vals = detail::trig_synthesis(f, grid);
            if (std::isinf(p)) {
                v = detail::lp_norm(vals, p);
            } else {
                double s = 0.0;
                for (const auto& z : vals) {
                    double a = std::abs(z);
                    if (a > 0.0) s += std::pow(a, p);
                }
                v = s == 0.0 ? 0.0 : std::pow(s / grid, 1.0 / p);
            }
            break;
        }
        case SpaceFamily::JacobiLp: {
            if (f.dim() > static_cast<int>(jacBasis.size()))
                throw std::invalid_argument("jacobi: dimension exceeds prepared basis");
            const int nq = quadNodes;
            if (std::isinf(p)) {
                for (int i = 0; i < nq; ++i) {
                    Scalar acc(0, 0);
                    for (int n = 0; n < f.dim(); ++n) acc += f[n] * jacBasis[n][i];
                    v = std::max(v, std::abs(acc));
                }
            } else {
                double s = 0.0;
                for (int i = 0; i < nq; ++i) {
                    Scalar acc(0, 0);
                    for (int n = 0; n < f.dim(); ++n) acc += f[n] * jacBasis[n][i];
                    double a = std::abs(acc);
                    if (a > 0.0) s += jacWeights[i] * std::pow(a, p);
                }
                v = s == 0.0 ? 0.0 : std::pow(s, 1.0 / p);
            }
            break;
        }
        case SpaceFamily::DifferenceLp:
            v = detail::lp_norm(detail::difference_synthesis(f), p);
            break;
        case SpaceFamily::SummingC0:
            v = detail::lp_norm(detail::summing_synthesis(f), kInfExponent);
            break;
        case SpaceFamily::CarlesonF:
            if (f.dim() > detail::cube_count(depth, dim))
                throw std::invalid_argument("carleson: dimension exceeds cube count");
            v = detail::carleson_norm(f, depth, dim, r);
            break;
    }
    return v * normScale;
}

/// ||f+g||^p <= ||f||^p + ||g||^p + tol check.
struct SubadditivityResult {
    bool ok;
    double margin;  // rhs - lhs
};

inline SubadditivityResult p_subadditivity_check(const SpaceDescriptor& s, const CoeffVector& f,
                                                 const CoeffVector& g, double tol = 1e-9) {
    double pe = s.pExponent;
    double lhs = std::pow(s.norm(f + g), pe);
    double rhs = std::pow(s.norm(f), pe) + std::pow(s.norm(g), pe);
    return {lhs <= rhs + tol, rhs - lhs};
}

// --- dual norm -----------------------------------------------------------------

namespace detail {

inline double bilinear_abs(const CoeffVector& g, const std::vector<double>& x, Field field) {
    // x packs either N reals or 2N (re,im) pairs
    Scalar acc(0, 0);
    const int n = g.dim();
    for (int i = 0; i < n; ++i) {
        Scalar ci = field == Field::Real ? Scalar(x[i], 0) : Scalar(x[2 * i], x[2 * i + 1]);
        acc += g[i] * ci;
    }
    return std::abs(acc);
}

inline CoeffVector unpack(const std::vector<double>& x, int n, Field field) {
    CoeffVector c(n);
    for (int i = 0; i < n; ++i)
        c[i] = field == Field::Real ? Scalar(x[i], 0) : Scalar(x[2 * i], x[2 * i + 1]);
    return c;
}

/// Multistart ratio maximization of |<g, c>| / ||c||.
inline double dual_norm_search(const SpaceDescriptor& s, const CoeffVector& g) {
    const int n = g.dim();
    if (n == 0 || g.is_zero()) return 0.0;
    const int realDim = s.field == Field::Real ? n : 2 * n;
    auto ratio = [&](const std::vector<double>& x) -> double {
        CoeffVector c = unpack(x, n, s.field);
        double nm = s.norm(c);
        if (nm <= 0.0) return 0.0;
        return bilinear_abs(g, x, s.field) / nm;
    };
    double best = 0.0;
    auto polish = [&](std::vector<double> x) {
        std::vector<double> lo(realDim, -4.0), hi(realDim, 4.0);
        double v = -coordinate_descent([&](const std::vector<double>& y) { return -ratio(y); }, x,
                                       lo, hi, 1e-9, 40);
        best = std::max(best, v);
    };
    // starts: unit vectors, sign pattern of g, a few deterministic pseudo-random points
    for (int i = 0; i < n; ++i) {
        std::vector<double> x(realDim, 0.0);
        x[s.field == Field::Real ? i : 2 * i] = 1.0;
        polish(x);
    }
    {
        std::vector<double> x(realDim, 0.0);
        for (int i = 0; i < n; ++i) {
            Scalar sg = sgn(std::conj(g[i]));
            if (s.field == Field::Real) x[i] = sg.real();
            else { x[2 * i] = sg.real(); x[2 * i + 1] = sg.imag(); }
        }
        polish(x);
    }
    Rng rng(Rng::mix(12345, "dualnorm", static_cast<std::uint64_t>(n)));
    for (int st = 0; st < 6; ++st) {
        std::vector<double> x(realDim);
        for (auto& xi : x) xi = rng.uniform(-1.0, 1.0);
        polish(x);
    }
    return best;
}

}  // namespace detail

inline bool SpaceDescriptor::dual_is_exact() const {
    switch (family) {
        case SpaceFamily::Lp: return p >= 1.0;
        case SpaceFamily::Lorentz: return q == 1.0;
        case SpaceFamily::HaarLp: return p >= 1.0;
        case SpaceFamily::DifferenceLp: return true;  // closed form for all p
        case SpaceFamily::SummingC0: return true;
        default: return false;
    }
}

/// sup{ |sum g_n f_n| : ||f|| <= 1 } over the coefficient span.
inline double SpaceDescriptor::dual_norm(const CoeffVector& g) const {
    switch (family) {
        case SpaceFamily::Lp: {
            if (p < 1.0) return detail::lp_norm(g.data(), kInfExponent);
            if (std::isinf(p)) return detail::lp_norm(g.data(), 1.0);
            if (p == 1.0) return detail::lp_norm(g.data(), kInfExponent);
            return detail::lp_norm(g.data(), p / (p - 1.0));
        }
        case SpaceFamily::Lorentz: {
            if (q == 1.0) {
                auto b = nonincreasing_rearrangement(g);
                double best = 0.0, acc = 0.0;
                for (size_t i = 0; i < b.size(); ++i) {
                    acc += b[i];
                    best = std::max(best, acc / sigma.at(static_cast<int>(i) + 1));
                }
                return best;
            }
            return detail::dual_norm_search(*this, g);
        }
        case SpaceFamily::HaarLp: {
            if (p >= 1.0) {
                SpaceDescriptor dual = *this;
                dual.p = std::isinf(p) ? 1.0 : (p == 1.0 ? kInfExponent : p / (p - 1.0));
                dual.normScale = 1.0;
                return dual.norm(g);
            }
            return detail::dual_norm_search(*this, g);
        }
        case SpaceFamily::DifferenceLp: {
            // <g, c> = <cumsum(g), f> against the synthesized f in l_p
            CoeffVector cs(g.dim());
            Scalar acc(0, 0);
            for (int i = 0; i < g.dim(); ++i) { acc += g[i]; cs[i] = acc; }
            if (p < 1.0) return detail::lp_norm(cs.data(), kInfExponent);
            if (std::isinf(p)) return detail::lp_norm(cs.data(), 1.0);
            if (p == 1.0) return detail::lp_norm(cs.data(), kInfExponent);
            return detail::lp_norm(cs.data(), p / (p - 1.0));
        }
        case SpaceFamily::SummingC0: {
            double s = 0.0;
            Scalar prev(0, 0);
            for (int i = 0; i < g.dim(); ++i) { s += std::abs(g[i] - prev); prev = g[i]; }
            return s;
        }
        default:
            return detail::dual_norm_search(*this, g);
    }
}

}  // namespace tga
