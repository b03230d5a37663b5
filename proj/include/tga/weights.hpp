#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tga {

/// A weight (w_n): non-negative entries, w_1 > 0.
struct Weight {
    std::vector<double> w;  // w[0] = w_1

    int horizon() const { return static_cast<int>(w.size()); }

    void validate() const {
        if (w.empty() || w[0] <= 0.0) throw std::invalid_argument("weight: w_1 must be positive");
        for (double x : w) if (x < 0.0) throw std::invalid_argument("weight: entries must be non-negative");
    }
};

/// Primitive weight sigma = (s_m), s_m = sum_{n<=m} w_n; s_0 = 0 by convention.
struct PrimitiveWeight {
    std::vector<double> s;  // s[0] = s_1

    int horizon() const { return static_cast<int>(s.size()); }
    double at(int m) const { return m <= 0 ? 0.0 : s[m - 1]; }  // 1-based, s_0 = 0

    void validate() const {
        if (s.empty() || s[0] <= 0.0) throw std::invalid_argument("primitive weight: s_1 must be positive");
        for (size_t i = 1; i < s.size(); ++i)
            if (s[i] < s[i - 1]) throw std::invalid_argument("primitive weight: must be non-decreasing");
    }
};

inline PrimitiveWeight primitive(const Weight& w) {
    w.validate();
    PrimitiveWeight p;
    p.s.resize(w.w.size());
    double acc = 0.0;
    for (size_t i = 0; i < w.w.size(); ++i) { acc += w.w[i]; p.s[i] = acc; }
    return p;
}

inline Weight discrete_derivative(const PrimitiveWeight& s) {
    s.validate();
    Weight w;
    w.w.resize(s.s.size());
    double prev = 0.0;
    for (size_t i = 0; i < s.s.size(); ++i) { w.w[i] = s.s[i] - prev; prev = s.s[i]; }
    return w;
}

/// Smallest C with s_{2m} <= C s_m over 2m <= horizon.
inline double doubling_constant(const PrimitiveWeight& s, int horizon) {
    if (horizon < 2) throw std::invalid_argument("doubling_constant: horizon must be >= 2");
    horizon = std::min(horizon, s.horizon());
    double c = 1.0;
    for (int m = 1; 2 * m <= horizon; ++m) c = std::max(c, s.at(2 * m) / s.at(m));
    return c;
}

struct Regularity {
    std::vector<double> H;              // H_m[sigma] = sum (s_n - s_{n-1})/s_n
    std::vector<double> R;              // R_m[sigma] = (s_m/m) sum 1/s_n
    std::optional<int> urpWitness;      // least r with s_{rm} <= r s_m / 2 for all rm <= horizon
    std::optional<int> lrpWitness;      // least r with s_{rm} >= 2 s_m for all rm <= horizon
};

inline Regularity regularity(const PrimitiveWeight& s, int horizon) {
    if (horizon > s.horizon()) throw std::invalid_argument("regularity: horizon exceeds weight length");
    Regularity r;
    r.H.resize(horizon);
    r.R.resize(horizon);
    double h = 0.0, invsum = 0.0;
    for (int m = 1; m <= horizon; ++m) {
        h += (s.at(m) - s.at(m - 1)) / s.at(m);
        invsum += 1.0 / s.at(m);
        r.H[m - 1] = h;
        r.R[m - 1] = s.at(m) / m * invsum;
    }
    auto holdsForAll = [&](auto&& pred, int rr) {
        for (int m = 1; rr * m <= horizon; ++m)
            if (!pred(rr, m)) return false;
        return true;
    };
    for (int rr = 2; rr <= horizon / 2; ++rr) {
        if (holdsForAll([&](int q, int m) { return s.at(q * m) <= 0.5 * q * s.at(m) + 1e-12; }, rr)) {
            r.urpWitness = rr;
            break;
        }
    }
    for (int rr = 2; rr <= horizon / 2; ++rr) {
        if (holdsForAll([&](int q, int m) { return s.at(q * m) >= 2.0 * s.at(m) - 1e-12; }, rr)) {
            r.lrpWitness = rr;
            break;
        }
    }
    return r;
}

/// Dual weight sigma* = (m / s_m).
inline PrimitiveWeight dual_primitive(const PrimitiveWeight& s) {
    PrimitiveWeight d;
    d.s.resize(s.s.size());
    for (int m = 1; m <= s.horizon(); ++m) d.s[m - 1] = m / s.at(m);
    return d;
}

/// Built-in weights by name: "ones", "power:theta" (s_m = m^theta), "log" (s_m = log(1+m)).
inline Weight named_weight(const std::string& name, int horizon) {
    PrimitiveWeight p;
    p.s.resize(horizon);
    if (name == "ones") {
        for (int m = 1; m <= horizon; ++m) p.s[m - 1] = m;
    } else if (name.rfind("power:", 0) == 0) {
        double theta = std::stod(name.substr(6));
        for (int m = 1; m <= horizon; ++m) p.s[m - 1] = std::pow(static_cast<double>(m), theta);
    } else if (name == "log") {
        for (int m = 1; m <= horizon; ++m) p.s[m - 1] = std::log(1.0 + m);
    } else {
        throw std::invalid_argument("unknown weight name: " + name);
    }
    return discrete_derivative(p);
}

}  // namespace tga
