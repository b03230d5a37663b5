#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "tga/basis.hpp"
#include "tga/greedy.hpp"
#include "tga/opt.hpp"

namespace tga {

enum class Method { ClosedForm, ExactEnum, LowerBound };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::ClosedForm: return "closed-form";
        case Method::ExactEnum: return "exact-enum";
        case Method::LowerBound: return "lower-bound";
    }
    return "?";
}

/// Maximizing configuration behind a table value; enough to re-run the ratio.
struct Witness {
    CoeffVector f;                // empty when unused
    IndexSet A, B;
    std::vector<Scalar> eps, delta;
    int level = 0;                // the size k <= m the value was attained at
    std::string note;
};

struct Cell {
    double value = 0.0;
    Method method = Method::LowerBound;
    Witness wit;
};

/// Kind ids, table rows indexed by m = 1..mMax.
/// Kinds: k kc mu mus u nu nud g gc q r psi lambda lambdad L La B Bw
///        phiu phil phibar phiunder
class ParameterTable {
public:
    ParameterTable() = default;
    explicit ParameterTable(int mMax) : mMax_(mMax) {}

    int m_max() const { return mMax_; }

    bool has(const std::string& kind) const { return rows_.count(kind) > 0; }

    const std::vector<Cell>& row(const std::string& kind) const {
        auto it = rows_.find(kind);
        if (it == rows_.end()) throw std::out_of_range("parameter table: missing kind " + kind);
        return it->second;
    }

    double value(const std::string& kind, int m) const { return row(kind).at(m - 1).value; }
    const Cell& cell(const std::string& kind, int m) const { return row(kind).at(m - 1); }

    std::vector<Cell>& ensure(const std::string& kind) {
        auto& r = rows_[kind];
        if (r.empty()) r.resize(mMax_);
        return r;
    }

    /// Keep the larger value (ties keep the earlier witness).
    void offer(const std::string& kind, int m, double v, Method meth, Witness wit) {
        auto& c = ensure(kind)[m - 1];
        if (v > c.value) {
            c.value = v;
            c.method = meth;
            c.wit = std::move(wit);
        }
    }

    void set(const std::string& kind, int m, double v, Method meth, Witness wit = {}) {
        auto& c = ensure(kind)[m - 1];
        c.value = v;
        c.method = meth;
        c.wit = std::move(wit);
    }

    /// Nondecreasing closure: value at m is the sup over sizes <= m.
    void cummax(const std::string& kind) {
        auto& r = ensure(kind);
        for (int m = 1; m < mMax_; ++m)
            if (r[m].value < r[m - 1].value) {
                r[m].value = r[m - 1].value;
                r[m].method = r[m - 1].method;
                r[m].wit = r[m - 1].wit;
            }
    }

    void cummin(const std::string& kind) {
        auto& r = ensure(kind);
        for (int m = 1; m < mMax_; ++m)
            if (r[m].value > r[m - 1].value) {
                r[m].value = r[m - 1].value;
                r[m].method = r[m - 1].method;
                r[m].wit = r[m - 1].wit;
            }
    }

    const std::map<std::string, std::vector<Cell>>& rows() const { return rows_; }

private:
    int mMax_ = 0;
    std::map<std::string, std::vector<Cell>> rows_;
};

// -----------------------------------------------------------------------------------
// growth fit
// -----------------------------------------------------------------------------------

struct GrowthFit {
    double slope = 0.0;
    double interceptLow = 0.0, interceptHigh = 0.0;
    double residual = 0.0;  // rms of log residuals
    int points = 0;
};

/// Least-squares slope of log(value) against log(m) over [mLo, mHi].
inline GrowthFit growth_fit(const std::vector<double>& values, int mLo, int mHi) {
    GrowthFit g;
    std::vector<double> xs, ys;
    for (int m = mLo; m <= mHi && m <= static_cast<int>(values.size()); ++m) {
        double v = values[m - 1];
        if (v > 0.0) {
            xs.push_back(std::log(static_cast<double>(m)));
            ys.push_back(std::log(v));
        }
    }
    g.points = static_cast<int>(xs.size());
    if (g.points < 2) return g;  // degenerate: slope 0
    double mx = 0, my = 0;
    for (int i = 0; i < g.points; ++i) { mx += xs[i]; my += ys[i]; }
    mx /= g.points;
    my /= g.points;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < g.points; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) return g;
    g.slope = sxy / sxx;
    double iLo = 1e300, iHi = -1e300, rss = 0;
    for (int i = 0; i < g.points; ++i) {
        double inter = ys[i] - g.slope * xs[i];
        iLo = std::min(iLo, inter);
        iHi = std::max(iHi, inter);
        double res = ys[i] - (my + g.slope * (xs[i] - mx));
        rss += res * res;
    }
    g.interceptLow = iLo;
    g.interceptHigh = iHi;
    g.residual = std::sqrt(rss / g.points);
    return g;
}

/// Largest dyadic window default: the top two octaves of the table.
inline GrowthFit growth_fit(const std::vector<double>& values) {
    int mHi = static_cast<int>(values.size());
    int mLo = std::max(1, mHi / 4);
    return growth_fit(values, mLo, mHi);
}

// -----------------------------------------------------------------------------------
// parameter engine
// -----------------------------------------------------------------------------------

struct EngineOptions {
    int mMax = 4;
    std::uint64_t seed = 42;
    int threads = 1;
    int signGridK = 8;
    int randomPerCell = 200;
    std::int64_t budget = 6'000'000;  // instance cap per search family before falling back to beams
    int greedySetCap = 24;
    int beamWidth = 48;
    bool buildDual = true;            // B/Bw and dual-side tables
    bool heavySearches = true;        // disable for quick smoke runs
};

/// Computes the full Lebesgue-type parameter family of one basis at finite N.
/// Sup-type parameters are certified lower bounds (witness stored); enumerable
/// ones are exact over the sign grid. A shared witness pool links the searches:
/// every search consumes the pool and contributes its maximizers back, so the
/// proof-level inequality checks evaluate both sides on comparable corpora.
class ParamEngine {
public:
    ParamEngine(BasisFamily basis, EngineOptions opt)
        : basis_(std::move(basis)), opt_(opt) {}

    void run();

    const ParameterTable& table() const { return out_; }
    const BasisFamily& basis() const { return basis_; }
    const EngineOptions& options() const { return opt_; }
    const std::vector<CoeffVector>& pool() const { return pool_; }

    /// sigma_k / sigma~_k with caching; index into pool vectors.
    const SigmaResult& sigma_of(int poolIndex, int k);
    const SigmaResult& sigma_tilde_of(int poolIndex, int k);

    int pool_index_of(const CoeffVector& f);  // adds if absent
    double vnorm(const CoeffVector& f) const { return basis_.vnorm(f); }

    /// Re-evaluate a stored witness ratio (used by the table validity check).
    double reevaluate(const std::string& kind, int m, const Witness& w) const;

    /// The indicator table (built by run); used by inequality instance checks.
    const IndicatorTable& indicators() const { return *table_; }

    bool grid_exhaustive() const { return gridExhaustive_; }

private:
    void seed_pool();
    void compute_democracy();
    void compute_projection_params();   // k, kc
    void compute_greedy_params();       // g, gc, q, r
    void compute_slc_params();          // nu, nud (+ transfers)
    void compute_squeeze_params();      // psi (+ lambdad closed form)
    void pool_pass();                   // evaluate ratio kinds on the pool
    void build_lambda();                // lambda = cummax psi*phiu, pool lambdad
    void theorem_transfers();           // proof-shaped witnesses into L/La/k/kc pools
    void compute_lebesgue_params();     // L, La over the corpus
    void compute_bidem_params();        // B, Bw
    void finalize();

    void offer_instance(const std::string& kind, const CoeffVector& f, const IndexSet& a,
                        const std::string& note);
    double instance_ratio(const std::string& kind, const CoeffVector& f, const IndexSet& a,
                          double fnorm) const;

    void contribute_nu_instance(const IndexSet& a, const std::vector<Scalar>& eps,
                                const IndexSet& b, const std::vector<Scalar>& delta,
                                const CoeffVector& f, bool disjointToo);

    BasisFamily basis_;
    EngineOptions opt_;
    ParameterTable out_;
    std::optional<IndicatorTable> table_;
    std::optional<IndicatorTable> dualTable_;

    std::vector<CoeffVector> pool_;
    std::vector<bool> poolCorpus_;  // eligible for the sigma-based L corpus
    std::unordered_map<std::uint64_t, int> poolIndex_;
    std::map<std::pair<int, int>, SigmaResult> sigmaCache_, sigmaTildeCache_;

    struct PendingFlat {
        IndexSet a;
        std::vector<Scalar> eps;
        CoeffVector vec;
    };
    std::vector<PendingFlat> pendingNu_;
    // sigma candidates injected by theorem transfers: pool index -> approximants
    std::map<int, std::vector<CoeffVector>> sigmaHints_;

    bool gridExhaustive_ = false;
    std::vector<Scalar> grid_;
    std::set<std::string> locked_;  // closed-form kinds that searches must not overwrite
};

// --- helpers -------------------------------------------------------------------------

namespace detail {

inline std::uint64_t vec_hash(const CoeffVector& f) {
    std::uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < f.dim(); ++i) {
        auto mix = [&](double d) {
            std::uint64_t u;
            static_assert(sizeof(double) == 8);
            std::memcpy(&u, &d, 8);
            h ^= u;
            h *= 1099511628211ull;
        };
        mix(f[i].real());
        mix(f[i].imag());
    }
    return h;
}

inline bool flat_on(const CoeffVector& f, const IndexSet& a) {
    if (a.empty()) return true;
    double t = std::abs(f[a[0]]);
    for (int i : a)
        if (std::abs(std::abs(f[i]) - t) > kTieRounding) return false;
    return true;
}

}  // namespace detail

// --- pool ----------------------------------------------------------------------------

inline int ParamEngine::pool_index_of(const CoeffVector& f) {
    std::uint64_t h = detail::vec_hash(f);
    auto it = poolIndex_.find(h);
    if (it != poolIndex_.end()) return it->second;
    pool_.push_back(f);
    poolCorpus_.push_back(true);
    poolIndex_[h] = static_cast<int>(pool_.size()) - 1;
    return static_cast<int>(pool_.size()) - 1;
}

inline const SigmaResult& ParamEngine::sigma_of(int poolIndex, int k) {
    auto key = std::make_pair(poolIndex, k);
    auto it = sigmaCache_.find(key);
    if (it != sigmaCache_.end()) return it->second;
    SigmaOptions so;
    so.seed = opt_.seed;
    so.maxPasses = 8;
    auto res = sigma_m(basis_, pool_[poolIndex], k, so);
    return sigmaCache_.emplace(key, std::move(res)).first->second;
}

inline const SigmaResult& ParamEngine::sigma_tilde_of(int poolIndex, int k) {
    auto key = std::make_pair(poolIndex, k);
    auto it = sigmaTildeCache_.find(key);
    if (it != sigmaTildeCache_.end()) return it->second;
    auto res = sigma_tilde_m(basis_, pool_[poolIndex], k);
    return sigmaTildeCache_.emplace(key, std::move(res)).first->second;
}

inline void ParamEngine::seed_pool() {
    const int n = basis_.n();
    const int mMax = opt_.mMax;

    auto add = [&](const CoeffVector& f) {
        if (!f.is_zero()) pool_index_of(f);
    };

    // structured seeds
    for (int k = 1; k <= std::min(n, 2 * mMax); ++k) {
        IndexSet prefix;
        for (int i = 0; i < k; ++i) prefix.push_back(i);
        add(indicator(n, prefix));
        IndexSet spread;
        for (int i = 0; i < k && 2 * i + 1 < n; ++i) spread.push_back(2 * i + 1);
        add(indicator(n, spread));
        CoeffVector alt(n);
        for (int i = 0; i < k; ++i) alt[i] = (i % 2 == 0) ? Scalar(1, 0) : Scalar(-1, 0);
        add(alt);
    }
    for (double rho : {0.5, 0.75, 0.9}) {
        CoeffVector geo(n);
        double v = 1.0;
        for (int i = 0; i < n; ++i) { geo[i] = Scalar(v, 0); v *= rho; }
        add(geo);
        CoeffVector geoAlt(n);
        v = 1.0;
        for (int i = 0; i < n; ++i) { geoAlt[i] = Scalar(i % 2 ? -v : v, 0); v *= rho; }
        add(geoAlt);
    }
    // flat vectors with one boundary tie level
    for (int k = 1; k <= std::min(n - 1, 2 * mMax); ++k) {
        CoeffVector f(n);
        for (int i = 0; i < k; ++i) f[i] = Scalar(1, 0);
        for (int i = k; i < n; ++i) f[i] = Scalar(0.5, 0);
        add(f);
    }

    // seeded random vectors per cell, mixed sparsities
    for (int m = 1; m <= mMax; ++m) {
        Rng rng(Rng::mix(opt_.seed, basis_.spec_string() + "/pool", static_cast<std::uint64_t>(m)));
        for (int t = 0; t < opt_.randomPerCell; ++t) {
            int sparsity = m + rng.uniform_int(n - m + 1);
            CoeffVector f(n);
            // deterministic support draw
            std::vector<int> perm(n);
            for (int i = 0; i < n; ++i) perm[i] = i;
            for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(i + 1)]);
            for (int j = 0; j < sparsity; ++j) {
                double re = rng.uniform(-1, 1);
                double im = basis_.field() == Field::Complex ? rng.uniform(-1, 1) : 0.0;
                f[perm[j]] = Scalar(re, im);
            }
            add(f);
        }
    }
}

// --- democracy-type parameters ----------------------------------------------------------

inline void ParamEngine::compute_democracy() {
    const int mMax = opt_.mMax;
    const bool realField = basis_.field() == Field::Real;
    Method enumMethod = realField ? Method::ExactEnum : Method::LowerBound;

    table_.emplace(basis_, std::min(basis_.n(), std::max(2 * mMax, mMax)), opt_.signGridK);
    grid_ = table_->grid();
    auto demo = democracy_functions(*table_, mMax);
    for (int m = 1; m <= mMax; ++m) {
        out_.set("phiu", m, demo.phiUpper[m - 1], enumMethod);
        out_.set("phil", m, demo.phiLower[m - 1], enumMethod);
        out_.set("phibar", m, demo.phiBar[m - 1], enumMethod);
        out_.set("phiunder", m, demo.phiUnder[m - 1], enumMethod);
    }

    // mu / mus from per-size extremes of the indicator table
    for (int m = 1; m <= mMax; ++m) {
        {
            Witness w;
            w.A = table_->arg_max_plain(m).set;
            w.B = table_->arg_min_plain(m).set;
            w.level = m;
            out_.offer("mu", m, table_->max_plain(m) / table_->min_plain(m), enumMethod, std::move(w));
        }
        {
            Witness w;
            w.A = table_->arg_max_signed(m).set;
            w.eps = table_->arg_max_signed(m).eps;
            w.B = table_->arg_min_signed(m).set;
            w.delta = table_->arg_min_signed(m).eps;
            w.level = m;
            out_.offer("mus", m, table_->max_signed(m) / table_->min_signed(m), enumMethod, std::move(w));
        }
    }
    out_.cummax("mu");
    out_.cummax("mus");

    // u: nested subsets with shared signs
    for (int k = 1; k <= mMax; ++k) {
        table_->for_each(k, [&](const IndexSet& d, const std::vector<Scalar>& delta, double denom) {
            if (denom <= 0.0) return;
            const int kk = static_cast<int>(d.size());
            // enumerate subsets B of d as bitmasks
            for (std::uint32_t mask = 1; mask < (1u << kk); ++mask) {
                IndexSet b;
                std::vector<Scalar> eb;
                for (int j = 0; j < kk; ++j)
                    if (mask & (1u << j)) { b.push_back(d[j]); eb.push_back(delta[j]); }
                double num = table_->lookup(b, eb);
                Witness w;
                w.A = b;
                w.B = d;
                w.eps = eb;
                w.delta = delta;
                w.level = k;
                out_.offer("u", k, num / denom, enumMethod, std::move(w));
            }
        });
    }
    out_.cummax("u");
}

// --- instance machinery ------------------------------------------------------------------

inline double ParamEngine::instance_ratio(const std::string& kind, const CoeffVector& f,
                                          const IndexSet& a, double fnorm) const {
    if (fnorm <= 0.0) return 0.0;
    if (kind == "k") return basis_.vnorm(project(f, a)) / fnorm;
    if (kind == "kc") return basis_.vnorm(project_complement(f, a)) / fnorm;
    if (kind == "g") return basis_.vnorm(project(f, a)) / fnorm;
    if (kind == "gc") return basis_.vnorm(project_complement(f, a)) / fnorm;
    if (kind == "q") return basis_.vnorm(project(f, a)) / fnorm;
    if (kind == "r") return a.empty() ? 0.0 : basis_.vnorm(restricted_truncation(f, a)) / fnorm;
    throw std::logic_error("instance_ratio: unsupported kind " + kind);
}

inline void ParamEngine::offer_instance(const std::string& kind, const CoeffVector& f,
                                        const IndexSet& a, const std::string& note) {
    if (locked_.count(kind)) return;
    double fn = basis_.vnorm(f);
    if (fn <= 0.0) return;
    int k = static_cast<int>(a.size());
    if (k < 1 || k > opt_.mMax) return;
    double v = instance_ratio(kind, f, a, fn);
    Witness w;
    w.f = f;
    w.A = a;
    w.level = k;
    w.note = note;
    out_.offer(kind, k, v, Method::LowerBound, std::move(w));
}

// continued in params_engine.hpp
}  // namespace tga

#include "tga/params_engine.hpp"
