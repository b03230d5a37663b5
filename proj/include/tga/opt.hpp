#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>
#include <vector>

#include "tga/scalar.hpp"

namespace tga {

/// Golden-section minimization of a 1-D function on [lo, hi].
template <typename F>
double golden_section_min(F&& f, double lo, double hi, double tol = 1e-9, int maxIter = 200) {
    constexpr double invPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invPhi * (b - a), x2 = a + invPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < maxIter && (b - a) > tol; ++it) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invPhi * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invPhi * (b - a); f2 = f(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

/// Cyclic coordinate descent with per-coordinate golden-section line search
/// over box constraints. Returns the reached objective value; x is updated.
template <typename F>
double coordinate_descent(F&& obj, std::vector<double>& x, const std::vector<double>& lo,
                          const std::vector<double>& hi, double tol = 1e-8, int maxPasses = 60) {
    const int n = static_cast<int>(x.size());
    double best = obj(x);
    for (int pass = 0; pass < maxPasses; ++pass) {
        double prev = best;
        for (int i = 0; i < n; ++i) {
            if (hi[i] - lo[i] <= 0) continue;
            double keep = x[i];
            double xi = golden_section_min(
                [&](double t) {
                    x[i] = t;
                    return obj(x);
                },
                lo[i], hi[i], std::max(tol * 1e-2, 1e-12) * (hi[i] - lo[i] + 1.0), 120);
            x[i] = xi;
            double v = obj(x);
            if (v <= best) {
                best = v;
            } else {
                x[i] = keep;
            }
        }
        if (prev - best <= tol * (1.0 + std::abs(prev))) break;
    }
    return best;
}

/// Deterministic parallel max-reduction over [0, n): each chunk computes a local
/// (value, key) maximum; global result is partition independent because the
/// combine is an exact max with key tie-breaking.
struct MaxResult {
    double value = -1e300;
    std::uint64_t key = ~0ull;

    void absorb(double v, std::uint64_t k) {
        if (v > value || (v == value && k < key)) { value = v; key = k; }
    }
    void absorb(const MaxResult& o) { absorb(o.value, o.key); }
};

template <typename Body>
MaxResult parallel_reduce_max(std::int64_t n, int threads, Body&& body) {
    threads = std::max(1, threads);
    if (threads == 1 || n < 64) {
        MaxResult r;
        for (std::int64_t i = 0; i < n; ++i) body(i, r);
        return r;
    }
    std::vector<MaxResult> partial(threads);
    std::vector<std::thread> pool;
    std::int64_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::int64_t b = t * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&, t, b, e]() {
            for (std::int64_t i = b; i < e; ++i) body(i, partial[t]);
        });
    }
    for (auto& th : pool) th.join();
    MaxResult r;
    for (auto& p : partial) r.absorb(p);
    return r;
}

template <typename Body>
void parallel_for(std::int64_t n, int threads, Body&& body) {
    threads = std::max(1, threads);
    if (threads == 1 || n < 64) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::int64_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::int64_t b = t * chunk, e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&, b, e]() {
            for (std::int64_t i = b; i < e; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace tga
