#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "tga/basis.hpp"
#include "tga/coeff.hpp"
#include "tga/opt.hpp"

namespace tga {

/// Greedy set of size m: repeatedly pick the smallest index attaining the
/// largest remaining modulus. Moduli are rounded to the 1e-12 grid before
/// comparison so traces are reproducible. Vectors with fewer than m nonzero
/// coefficients are completed with the smallest unused indices (flagged).
struct GreedySelection {
    IndexSet set;
    std::vector<int> order;  // chosen indices in pick order
    bool padded = false;
};

inline GreedySelection greedy_set(const CoeffVector& f, int m) {
    const int n = f.dim();
    if (m > n) throw std::invalid_argument("greedy_set: m exceeds dimension");
    std::vector<double> mod(n);
    for (int i = 0; i < n; ++i) mod[i] = rounded_modulus(f[i]);
    std::vector<bool> used(n, false);
    GreedySelection g;
    for (int step = 0; step < m; ++step) {
        int pick = -1;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            if (!used[i] && mod[i] > best) { best = mod[i]; pick = i; }
        }
        used[pick] = true;
        g.order.push_back(pick);
        if (best == 0.0) g.padded = true;
    }
    g.set = g.order;
    std::sort(g.set.begin(), g.set.end());
    return g;
}

/// All greedy sets of size m obtained by exchanging indices inside the boundary
/// modulus level (1e-12 grouping); enumeration capped to `cap` sets.
inline std::vector<IndexSet> all_greedy_sets(const CoeffVector& f, int m, int cap = 64) {
    const int n = f.dim();
    std::vector<std::pair<double, int>> byMod(n);
    for (int i = 0; i < n; ++i) byMod[i] = {rounded_modulus(f[i]), i};
    std::sort(byMod.begin(), byMod.end(), [](auto& a, auto& b) {
        return a.first > b.first || (a.first == b.first && a.second < b.second);
    });
    if (m == 0) return {IndexSet{}};
    double boundary = byMod[m - 1].first;
    IndexSet mandatory, level;
    for (int i = 0; i < n; ++i) {
        if (byMod[i].first > boundary) mandatory.push_back(byMod[i].second);
        else if (byMod[i].first == boundary) level.push_back(byMod[i].second);
    }
    std::sort(mandatory.begin(), mandatory.end());
    std::sort(level.begin(), level.end());
    int need = m - static_cast<int>(mandatory.size());
    std::vector<IndexSet> out;
    for_each_subset(static_cast<int>(level.size()), need, [&](const IndexSet& pick) {
        if (static_cast<int>(out.size()) >= cap) return;
        IndexSet a = mandatory;
        for (int j : pick) a.push_back(level[j]);
        std::sort(a.begin(), a.end());
        out.push_back(std::move(a));
    });
    return out;
}

/// Coordinate projection S_A.
inline CoeffVector project(const CoeffVector& f, const IndexSet& a) {
    CoeffVector g(f.dim());
    for (int i : a) g[i] = f[i];
    return g;
}

inline CoeffVector project_complement(const CoeffVector& f, const IndexSet& a) {
    CoeffVector g = f;
    for (int i : a) g[i] = Scalar(0, 0);
    return g;
}

/// Restricted truncation R_A(f) = min_{n in A} |c_n| * 1_{sgn(c),A}.
inline CoeffVector restricted_truncation(const CoeffVector& f, const IndexSet& a) {
    if (a.empty()) throw std::invalid_argument("restricted_truncation: empty set");
    double t = 1e300;
    for (int i : a) t = std::min(t, std::abs(f[i]));
    CoeffVector g(f.dim());
    for (int i : a) g[i] = t * sgn(f[i]);
    return g;
}

// --- best m-term errors -----------------------------------------------------------

enum class SigmaMethod { LatticeExact, ConvexSearch, GridSearch };

inline SigmaMethod sigma_method_for(const BasisFamily& basis) {
    if (basis.flags().latticeMonotone && !basis.dual_side()) return SigmaMethod::LatticeExact;
    return basis.p_exponent() >= 1.0 ? SigmaMethod::ConvexSearch : SigmaMethod::GridSearch;
}

struct SigmaOptions {
    double tol = 1e-8;
    int maxPasses = 40;
    int multistart = 8;
    std::uint64_t seed = 42;
    // extra approximants tried verbatim (soundness hooks for the harness)
    const std::vector<CoeffVector>* extraCandidates = nullptr;
};

namespace detail {

inline double sigma_inner_min(const BasisFamily& basis, const CoeffVector& f, const IndexSet& b,
                              SigmaMethod method, const SigmaOptions& opt) {
    // minimize || f - sum_{n in B} a_n x_n || over the coefficients a
    const int k = static_cast<int>(b.size());
    const bool complexField = basis.field() == Field::Complex;
    const int realDim = complexField ? 2 * k : k;

    double box = 0.0;
    for (int i = 0; i < f.dim(); ++i) box = std::max(box, std::abs(f[i]));
    box = 4.0 * box + 1.0;

    auto objective = [&](const std::vector<double>& x) {
        CoeffVector g = f;
        for (int j = 0; j < k; ++j) {
            Scalar a = complexField ? Scalar(x[2 * j], x[2 * j + 1]) : Scalar(x[j], 0);
            g[b[j]] -= a;
        }
        return basis.vnorm(g);
    };
    std::vector<double> lo(realDim, -box), hi(realDim, box);

    auto packed = [&](const CoeffVector& src) {
        std::vector<double> x(realDim, 0.0);
        for (int j = 0; j < k; ++j) {
            if (complexField) { x[2 * j] = src[b[j]].real(); x[2 * j + 1] = src[b[j]].imag(); }
            else x[j] = src[b[j]].real();
        }
        return x;
    };

    double best;
    {
        std::vector<double> x = packed(f);  // start at the projection S_B(f)
        best = coordinate_descent(objective, x, lo, hi, opt.tol, opt.maxPasses);
    }
    {
        std::vector<double> x(realDim, 0.0);
        best = std::min(best, coordinate_descent(objective, x, lo, hi, opt.tol, opt.maxPasses));
    }
    if (method == SigmaMethod::GridSearch) {
        Rng rng(Rng::mix(opt.seed, "sigma", set_key(b)));
        for (int s = 0; s < opt.multistart; ++s) {
            std::vector<double> x(realDim);
            for (auto& xi : x) xi = rng.uniform(-box / 2, box / 2);
            best = std::min(best, coordinate_descent(objective, x, lo, hi, opt.tol, opt.maxPasses));
        }
    }
    return best;
}

}  // namespace detail

struct SigmaResult {
    double value = 0.0;
    bool upperBoundOnly = false;  // true when the inner problem is nonconvex (p < 1)
    IndexSet bestSupport;
    CoeffVector bestApproximant;  // z with ||f - z|| = value (as found)
};

/// Best m-term approximation error sigma_m(f).
inline SigmaResult sigma_m(const BasisFamily& basis, const CoeffVector& f, int m,
                           const SigmaOptions& opt = {}) {
    const int n = basis.n();
    if (m > n) throw std::invalid_argument("sigma_m: m exceeds dimension");
    SigmaResult res;
    if (m == 0) {
        res.value = basis.vnorm(f);
        res.bestApproximant = CoeffVector(n);
        return res;
    }
    SigmaMethod method = sigma_method_for(basis);
    res.upperBoundOnly = method == SigmaMethod::GridSearch;
    double best = 1e300;
    IndexSet bestB;
    CoeffVector bestZ(n);
    for_each_subset(n, m, [&](const IndexSet& b) {
        double v;
        CoeffVector z(n);
        if (method == SigmaMethod::LatticeExact) {
            v = basis.vnorm(project_complement(f, b));
            z = project(f, b);
        } else {
            v = detail::sigma_inner_min(basis, f, b, method, opt);
            z = project(f, b);  // recorded support witness; value from the solver
        }
        if (v < best) { best = v; bestB = b; bestZ = z; }
    });
    if (opt.extraCandidates) {
        for (const auto& z : *opt.extraCandidates) {
            if (static_cast<int>(z.support().size()) > m) continue;
            double v = basis.vnorm(f - z);
            if (v < best) { best = v; bestB = z.support(); bestZ = z; }
        }
    }
    res.value = best;
    res.bestSupport = bestB;
    res.bestApproximant = bestZ;
    return res;
}

/// Best m-term projection error: exact minimum of ||f - S_A f|| over |A| = m.
inline SigmaResult sigma_tilde_m(const BasisFamily& basis, const CoeffVector& f, int m) {
    const int n = basis.n();
    if (m > n) throw std::invalid_argument("sigma_tilde_m: m exceeds dimension");
    SigmaResult res;
    if (m == 0) {
        res.value = basis.vnorm(f);
        res.bestApproximant = CoeffVector(n);
        return res;
    }
    double best = 1e300;
    IndexSet bestB;
    for_each_subset(n, m, [&](const IndexSet& b) {
        double v = basis.vnorm(project_complement(f, b));
        if (v < best) { best = v; bestB = b; }
    });
    res.value = best;
    res.bestSupport = bestB;
    res.bestApproximant = project(f, bestB);
    return res;
}

// --- the thresholding greedy algorithm ------------------------------------------------

struct GreedyTrace {
    std::vector<int> orderedIndices;        // k(A,1), k(A,2), ...
    std::vector<IndexSet> greedySets;       // A_1 subset A_2 subset ...
    std::vector<double> residualNorms;      // ||f - G_m(f)||
    std::vector<double> sigmaValues;        // sigma_m(f) when computed (else -1)
    std::vector<double> ratios;             // residual / sigma (0/0 treated as 0)
    bool padded = false;
};

inline GreedyTrace tga(const BasisFamily& basis, const CoeffVector& f, int mMax,
                       bool withSigma = true, const SigmaOptions& opt = {}) {
    if (mMax > basis.n()) throw std::invalid_argument("tga: mMax exceeds dimension");
    GreedyTrace tr;
    GreedySelection sel = greedy_set(f, mMax);
    tr.padded = sel.padded;
    tr.orderedIndices = sel.order;
    IndexSet acc;
    for (int m = 1; m <= mMax; ++m) {
        acc.push_back(sel.order[m - 1]);
        IndexSet a = acc;
        std::sort(a.begin(), a.end());
        tr.greedySets.push_back(a);
        double res = basis.vnorm(project_complement(f, a));
        tr.residualNorms.push_back(res);
        if (withSigma) {
            double s = sigma_m(basis, f, m, opt).value;
            tr.sigmaValues.push_back(s);
            tr.ratios.push_back(s > 0.0 ? res / s : 0.0);
        } else {
            tr.sigmaValues.push_back(-1.0);
            tr.ratios.push_back(-1.0);
        }
    }
    return tr;
}

}  // namespace tga
