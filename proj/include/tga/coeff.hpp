#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <set>
#include <vector>

#include "tga/scalar.hpp"

namespace tga {

/// Index set over basis positions 1..N (stored 0-based internally as sorted list).
using IndexSet = std::vector<int>;  // sorted, 0-based

/// Finite coefficient vector f = sum_n c_n x_n with respect to a fixed basis.
/// Entries not stored are exactly zero; dense storage, dimension N.
class CoeffVector {
public:
    CoeffVector() = default;
    explicit CoeffVector(int n) : c_(n, Scalar(0, 0)) {}
    explicit CoeffVector(std::vector<Scalar> c) : c_(std::move(c)) {}

    int dim() const { return static_cast<int>(c_.size()); }
    Scalar operator[](int i) const { return c_[i]; }
    Scalar& operator[](int i) { return c_[i]; }
    const std::vector<Scalar>& data() const { return c_; }
    std::vector<Scalar>& data() { return c_; }

    bool is_zero() const {
        for (const auto& z : c_) if (z != Scalar(0, 0)) return false;
        return true;
    }

    IndexSet support() const {
        IndexSet s;
        for (int i = 0; i < dim(); ++i) if (c_[i] != Scalar(0, 0)) s.push_back(i);
        return s;
    }

    CoeffVector& operator+=(const CoeffVector& o) {
        assert(dim() == o.dim());
        for (int i = 0; i < dim(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    CoeffVector& operator-=(const CoeffVector& o) {
        assert(dim() == o.dim());
        for (int i = 0; i < dim(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    CoeffVector& operator*=(Scalar a) {
        for (auto& z : c_) z *= a;
        return *this;
    }

    friend CoeffVector operator+(CoeffVector a, const CoeffVector& b) { return a += b; }
    friend CoeffVector operator-(CoeffVector a, const CoeffVector& b) { return a -= b; }
    friend CoeffVector operator*(Scalar a, CoeffVector v) { return v *= a; }

private:
    std::vector<Scalar> c_;
};

/// Moduli of the entries sorted in non-increasing order, zero-padded to N.
inline std::vector<double> nonincreasing_rearrangement(const CoeffVector& f) {
    std::vector<double> a(f.dim());
    for (int i = 0; i < f.dim(); ++i) a[i] = std::abs(f[i]);
    std::sort(a.begin(), a.end(), std::greater<double>());
    return a;
}

/// m-th largest modulus (1-based m); 0 beyond the dimension.
inline double rearrangement_value(const CoeffVector& f, int m) {
    if (m < 1 || m > f.dim()) return 0.0;
    auto a = nonincreasing_rearrangement(f);
    return a[m - 1];
}

inline CoeffVector unit_vector(int n, int i) {
    CoeffVector v(n);
    v[i] = Scalar(1, 0);
    return v;
}

/// 1_{eps,A} = sum_{n in A} eps_n x_n.
inline CoeffVector signed_indicator(int n, const IndexSet& a, const std::vector<Scalar>& eps) {
    CoeffVector v(n);
    for (size_t j = 0; j < a.size(); ++j) v[a[j]] = eps[j];
    return v;
}

inline CoeffVector indicator(int n, const IndexSet& a) {
    CoeffVector v(n);
    for (int i : a) v[i] = Scalar(1, 0);
    return v;
}

inline bool contains(const IndexSet& a, int i) {
    return std::binary_search(a.begin(), a.end(), i);
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
    IndexSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline IndexSet complement(int n, const IndexSet& a) {
    IndexSet r;
    for (int i = 0; i < n; ++i) if (!contains(a, i)) r.push_back(i);
    return r;
}

/// Visit all k-subsets of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(int n, int k, F&& fn) {
    if (k < 0 || k > n) return;
    IndexSet a(k);
    for (int i = 0; i < k; ++i) a[i] = i;
    while (true) {
        fn(const_cast<const IndexSet&>(a));
        int i = k - 1;
        while (i >= 0 && a[i] == n - k + i) --i;
        if (i < 0) break;
        ++a[i];
        for (int j = i + 1; j < k; ++j) a[j] = a[j - 1] + 1;
    }
}

/// Visit all sign patterns over `a` drawn from `grid` (grid.size()^|a| patterns).
template <typename F>
void for_each_sign_pattern(const IndexSet& a, const std::vector<Scalar>& grid, F&& fn) {
    const int k = static_cast<int>(a.size());
    std::vector<int> idx(k, 0);
    std::vector<Scalar> eps(k, grid.empty() ? Scalar(1, 0) : grid[0]);
    if (k == 0) { fn(const_cast<const std::vector<Scalar>&>(eps)); return; }
    while (true) {
        for (int i = 0; i < k; ++i) eps[i] = grid[idx[i]];
        fn(const_cast<const std::vector<Scalar>&>(eps));
        int i = 0;
        while (i < k && ++idx[i] == static_cast<int>(grid.size())) { idx[i] = 0; ++i; }
        if (i == k) break;
    }
}

inline std::uint64_t set_key(const IndexSet& a) {
    std::uint64_t k = 0;
    for (int i : a) k |= (1ull << i);
    return k;
}

}  // namespace tga
