#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tga/coeff.hpp"
#include "tga/spaces.hpp"

namespace tga {

struct BasisFlags {
    bool oneSymmetric = false;     // norm invariant under permutations and signs
    bool latticeMonotone = false;  // |c| <= |c'| entrywise implies ||c|| <= ||c'||
    bool signInvariant = false;
    bool oneUnconditional = false; // coordinate projections have norm <= 1
    bool upperGlidingHump = false; // metadata, asserted per family
};

/// A finite biorthogonal system together with its ambient quasi-norm.
/// Coefficient extraction is exact by construction (the norm acts on
/// coefficients), so projections and greedy operators are coefficient ops.
class BasisFamily {
public:
    BasisFamily() = default;
    BasisFamily(SpaceDescriptor space, int n, std::string specString)
        : space_(std::move(space)), n_(n), spec_(std::move(specString)) {
        flags_ = derive_flags(space_);
        biorthogonality_defect_ = check_biorthogonality();
        if (biorthogonality_defect_ > 1e-10)
            throw std::runtime_error("basis construction: biorthogonality defect " +
                                     std::to_string(biorthogonality_defect_));
        seminormalization_ = compute_seminormalization();
    }

    int n() const { return n_; }
    const SpaceDescriptor& space() const { return space_; }
    SpaceDescriptor& space_mutable() { return space_; }
    const BasisFlags& flags() const { return flags_; }
    const std::string& spec_string() const { return spec_; }
    Field field() const { return space_.field; }
    double p_exponent() const { return space_.pExponent; }
    bool dual_side() const { return dualSide_; }
    double biorthogonality_defect() const { return biorthogonality_defect_; }
    double seminormalization() const { return seminormalization_; }

    /// Norm of a coefficient vector in the ambient space (dual norm on the dual side).
    double vnorm(const CoeffVector& f) const {
        return dualSide_ ? space_.dual_norm(f) : space_.norm(f);
    }

    /// The dual system: same coefficients, dual functional norm.
    BasisFamily dual() const {
        if (dualSide_) throw std::logic_error("dual(): bidual not supported");
        BasisFamily d(*this);
        d.dualSide_ = true;
        d.spec_ = spec_ + ":dual";
        d.flags_.latticeMonotone = false;  // not tracked through duality
        d.flags_.oneSymmetric = flags_.oneSymmetric;  // dual of 1-symmetric is 1-symmetric
        d.flags_.signInvariant = flags_.oneSymmetric;
        d.flags_.oneUnconditional = false;
        d.seminormalization_ = seminormalization_;
        return d;
    }

    double indicator_norm(const IndexSet& a, const std::vector<Scalar>& eps) const {
        return vnorm(signed_indicator(n_, a, eps));
    }
    double indicator_norm(const IndexSet& a) const { return vnorm(indicator(n_, a)); }

private:
    static BasisFlags derive_flags(const SpaceDescriptor& s) {
        BasisFlags f;
        switch (s.family) {
            case SpaceFamily::Lp:
            case SpaceFamily::Lorentz:
                f.oneSymmetric = f.latticeMonotone = f.signInvariant = f.oneUnconditional = true;
                break;
            case SpaceFamily::CarlesonF:
                f.latticeMonotone = f.signInvariant = f.oneUnconditional = true;
                break;
            case SpaceFamily::HaarLp:
            case SpaceFamily::JacobiLp:
                if (s.p == 2.0) f.latticeMonotone = f.signInvariant = f.oneUnconditional = true;
                break;
            case SpaceFamily::TrigLp:
                if (s.p == 2.0) f.latticeMonotone = f.signInvariant = f.oneUnconditional = true;
                f.upperGlidingHump = true;  // translation invariant ambient
                break;
            default:
                break;
        }
        return f;
    }

    double check_biorthogonality() const;
    double compute_seminormalization() const;

    SpaceDescriptor space_;
    int n_ = 0;
    std::string spec_;
    BasisFlags flags_;
    bool dualSide_ = false;
    double biorthogonality_defect_ = 0.0;
    double seminormalization_ = 0.0;
};

// --- biorthogonality ------------------------------------------------------------

inline double BasisFamily::check_biorthogonality() const {
    const auto& s = space_;
    double defect = 0.0;
    switch (s.family) {
        case SpaceFamily::HaarLp: {
            // pair the p-normalized system against the p'-normalized duals; the
            // products are piecewise constant so the integrals are exact sums
            const int cells = 1 << s.depth;
            const double h = 1.0 / cells;
            double pprime = std::isinf(s.p) ? 1.0 : (s.p == 1.0 ? kInfExponent : s.p / (s.p - 1.0));
            std::vector<std::vector<Scalar>> prim(n_), dual(n_);
            for (int k = 0; k < n_; ++k) {
                prim[k] = detail::haar_synthesis(unit_vector(n_, k), s.depth, s.p);
                dual[k] = detail::haar_synthesis(unit_vector(n_, k), s.depth, pprime);
            }
            for (int k = 0; k < n_; ++k)
                for (int m = 0; m < n_; ++m) {
                    Scalar acc(0, 0);
                    for (int g = 0; g < cells; ++g) acc += dual[k][g] * prim[m][g] * h;
                    defect = std::max(defect, std::abs(acc - (k == m ? Scalar(1, 0) : Scalar(0, 0))));
                }
            break;
        }
        case SpaceFamily::TrigLp: {
            for (int k = 0; k < n_; ++k)
                for (int m = 0; m < n_; ++m) {
                    Scalar acc(0, 0);
                    int fk = detail::trig_frequency(k), fm = detail::trig_frequency(m);
                    for (int g = 0; g < s.grid; ++g) {
                        double t = 2.0 * M_PI * (fm - fk) * g / s.grid;
                        acc += Scalar(std::cos(t), std::sin(t));
                    }
                    acc /= static_cast<double>(s.grid);
                    defect = std::max(defect, std::abs(acc - (k == m ? Scalar(1, 0) : Scalar(0, 0))));
                }
            break;
        }
        case SpaceFamily::JacobiLp: {
            for (int k = 0; k < n_; ++k)
                for (int m = 0; m < n_; ++m) {
                    double acc = 0.0;
                    for (int i = 0; i < s.quadNodes; ++i)
                        acc += s.jacWeights[i] * s.jacBasis[k][i] * s.jacBasis[m][i];
                    defect = std::max(defect, std::abs(acc - (k == m ? 1.0 : 0.0)));
                }
            break;
        }
        case SpaceFamily::DifferenceLp: {
            // coefficient recovery c_n = sum_{k>=n} f_k from the synthesized vector
            Rng rng(424242);
            for (int trial = 0; trial < 4; ++trial) {
                CoeffVector c(n_);
                for (int i = 0; i < n_; ++i) c[i] = Scalar(rng.uniform(-1, 1), 0);
                auto f = detail::difference_synthesis(c);
                Scalar acc(0, 0);
                for (int i = n_ - 1; i >= 0; --i) {
                    acc += f[i];
                    defect = std::max(defect, std::abs(acc - c[i]));
                }
            }
            break;
        }
        case SpaceFamily::SummingC0: {
            Rng rng(434343);
            for (int trial = 0; trial < 4; ++trial) {
                CoeffVector c(n_);
                for (int i = 0; i < n_; ++i) c[i] = Scalar(rng.uniform(-1, 1), 0);
                auto f = detail::summing_synthesis(c);
                for (int i = 0; i < n_; ++i) {
                    Scalar fi1 = i + 1 < n_ ? f[i + 1] : Scalar(0, 0);
                    defect = std::max(defect, std::abs((f[i] - fi1) - c[i]));
                }
            }
            break;
        }
        default:
            break;  // unit vector systems: identity by construction
    }
    return defect;
}

inline double BasisFamily::compute_seminormalization() const {
    double c = 0.0;
    for (int i = 0; i < n_; ++i) {
        CoeffVector e = unit_vector(n_, i);
        c = std::max(c, space_.norm(e));
        c = std::max(c, space_.dual_norm(e));
    }
    return c;
}

// --- family parsing ---------------------------------------------------------------

/// Parse CLI basis strings such as "lp:0.5:n=10", "lorentz:power:0.5:q=1:n=12",
/// "haar:p=1:depth=5", "trig:p=4:grid=4096:n=65", "diff:p=1:n=12", "summing:n=12",
/// "jacobi:a=0.5:b=0.5:p=4:n=20", "carleson:d=1:r=2:depth=6".
inline BasisFamily parse_basis(const std::string& text) {
    std::vector<std::string> tok;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) tok.push_back(part);
    if (tok.empty()) throw std::invalid_argument("empty family spec");

    auto parseExponent = [](const std::string& v) -> double {
        if (v == "inf" || v == "oo") return kInfExponent;
        return std::stod(v);
    };

    std::map<std::string, std::string> kv;
    std::vector<std::string> bare;
    for (size_t i = 1; i < tok.size(); ++i) {
        auto eq = tok[i].find('=');
        if (eq == std::string::npos) bare.push_back(tok[i]);
        else kv[tok[i].substr(0, eq)] = tok[i].substr(eq + 1);
    }
    auto getInt = [&](const std::string& k, int dflt) {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : std::stoi(it->second);
    };
    auto getExp = [&](const std::string& k, double dflt) {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : parseExponent(it->second);
    };
    Field field = Field::Real;
    if (auto it = kv.find("field"); it != kv.end())
        field = it->second == "complex" ? Field::Complex : Field::Real;

    const std::string& fam = tok[0];
    if (fam == "lp") {
        double p = !bare.empty() ? parseExponent(bare[0]) : getExp("p", 1.0);
        int n = getInt("n", 8);
        return BasisFamily(make_lp(p, field), n, text);
    }
    if (fam == "lorentz") {
        std::string wname = bare.empty() ? "ones" : bare[0];
        if (wname == "power" && bare.size() >= 2) wname += ":" + bare[1];
        int n = getInt("n", 8);
        double q = getExp("q", 1.0);
        return BasisFamily(make_lorentz(named_weight(wname, std::max(n, 64)), q, field), n, text);
    }
    if (fam == "haar") {
        double p = getExp("p", 1.0);
        int depth = getInt("depth", 4);
        int n = getInt("n", 1 << depth);
        return BasisFamily(make_haar(p, depth, field), n, text);
    }
    if (fam == "trig") {
        double p = getExp("p", 2.0);
        int n = getInt("n", 9);
        int grid = getInt("grid", 4 * (detail::trig_max_frequency(n) + 1));
        if (kv.find("field") == kv.end()) field = Field::Complex;
        return BasisFamily(make_trig(p, grid, n, field), n, text);
    }
    if (fam == "jacobi") {
        double a = getExp("a", 0.0), b = getExp("b", 0.0), p = getExp("p", 2.0);
        int n = getInt("n", 8);
        int qn = getInt("quad", 0);
        return BasisFamily(make_jacobi(a, b, p, n, qn, field), n, text);
    }
    if (fam == "diff") {
        double p = getExp("p", 1.0);
        int n = getInt("n", 8);
        return BasisFamily(make_difference(p, field), n, text);
    }
    if (fam == "summing") {
        int n = getInt("n", 8);
        return BasisFamily(make_summing(field), n, text);
    }
    if (fam == "carleson") {
        int d = getInt("d", 1);
        double rr = getExp("r", 2.0);
        int depth = getInt("depth", 4);
        int n = getInt("n", detail::cube_count(depth, d));
        return BasisFamily(make_carleson(d, rr, depth, field), n, text);
    }
    throw std::invalid_argument("unknown family: " + fam);
}

// --- signed indicator norm table ----------------------------------------------------

/// Norms of all 1_{eps,A} with |A| <= kMax over the sign grid, plus per-size extremes.
struct SignedSet {
    IndexSet set;
    std::vector<Scalar> eps;
};

class IndicatorTable {
public:
    IndicatorTable() = default;
    IndicatorTable(const BasisFamily& basis, int kMax, int signGridK = 8)
        : n_(basis.n()), kMax_(std::min(kMax, basis.n())) {
        grid_ = sign_grid(basis.field(), signGridK);
        maxSigned_.assign(kMax_ + 1, 0.0);
        minSigned_.assign(kMax_ + 1, 1e300);
        maxPlain_.assign(kMax_ + 1, 0.0);
        minPlain_.assign(kMax_ + 1, 1e300);
        argMaxSigned_.resize(kMax_ + 1);
        argMinSigned_.resize(kMax_ + 1);
        argMaxPlain_.resize(kMax_ + 1);
        argMinPlain_.resize(kMax_ + 1);
        sortedDesc_.resize(kMax_ + 1);
        for (int k = 1; k <= kMax_; ++k) {
            for_each_subset(n_, k, [&](const IndexSet& a) {
                for_each_sign_pattern(a, grid_, [&](const std::vector<Scalar>& eps) {
                    double v = basis.indicator_norm(a, eps);
                    norms_[key(a, eps)] = v;
                    sortedDesc_[k].push_back({v, {a, eps}});
                    if (v > maxSigned_[k]) { maxSigned_[k] = v; argMaxSigned_[k] = {a, eps}; }
                    if (v < minSigned_[k]) { minSigned_[k] = v; argMinSigned_[k] = {a, eps}; }
                    bool plain = true;
                    for (const auto& e : eps)
                        if (e != Scalar(1, 0)) { plain = false; break; }
                    if (plain) {
                        if (v > maxPlain_[k]) { maxPlain_[k] = v; argMaxPlain_[k] = {a, eps}; }
                        if (v < minPlain_[k]) { minPlain_[k] = v; argMinPlain_[k] = {a, eps}; }
                    }
                });
            });
            std::stable_sort(sortedDesc_[k].begin(), sortedDesc_[k].end(),
                             [](const auto& x, const auto& y) { return x.first > y.first; });
        }
    }

    /// Entries of size k sorted by norm, largest first (stable in enumeration order).
    const std::vector<std::pair<double, SignedSet>>& sorted_desc(int k) const {
        return sortedDesc_[k];
    }

    int k_max() const { return kMax_; }
    const std::vector<Scalar>& grid() const { return grid_; }

    const SignedSet& arg_max_signed(int k) const { return argMaxSigned_[k]; }
    const SignedSet& arg_min_signed(int k) const { return argMinSigned_[k]; }
    const SignedSet& arg_max_plain(int k) const { return argMaxPlain_[k]; }
    const SignedSet& arg_min_plain(int k) const { return argMinPlain_[k]; }

    double lookup(const IndexSet& a, const std::vector<Scalar>& eps) const {
        auto it = norms_.find(key(a, eps));
        if (it == norms_.end()) throw std::logic_error("indicator table miss");
        return it->second;
    }

    double max_signed(int k) const { return maxSigned_[k]; }
    double min_signed(int k) const { return minSigned_[k]; }
    double max_plain(int k) const { return maxPlain_[k]; }
    double min_plain(int k) const { return minPlain_[k]; }

    template <typename F>
    void for_each(int k, F&& fn) const {  // fn(IndexSet, signs, norm)
        for_each_subset(n_, k, [&](const IndexSet& a) {
            for_each_sign_pattern(a, grid_, [&](const std::vector<Scalar>& eps) {
                fn(a, eps, norms_.at(key(a, eps)));
            });
        });
    }

private:
    std::uint64_t key(const IndexSet& a, const std::vector<Scalar>& eps) const {
        std::uint64_t h = set_key(a) * 0x9e3779b97f4a7c15ull;
        for (const auto& e : eps) {
            int gi = 0;
            double bestd = 1e300;
            for (size_t j = 0; j < grid_.size(); ++j) {
                double d = std::abs(e - grid_[j]);
                if (d < bestd) { bestd = d; gi = static_cast<int>(j); }
            }
            h = h * 131 + static_cast<std::uint64_t>(gi);
        }
        return h;
    }

    int n_ = 0;
    int kMax_ = 0;
    std::vector<Scalar> grid_;
    std::unordered_map<std::uint64_t, double> norms_;
    std::vector<double> maxSigned_, minSigned_, maxPlain_, minPlain_;
    std::vector<SignedSet> argMaxSigned_, argMinSigned_, argMaxPlain_, argMinPlain_;
    std::vector<std::vector<std::pair<double, SignedSet>>> sortedDesc_;
};

struct DemocracyFunctions {
    std::vector<double> phiUpper;   // sup over |A| <= m, signs
    std::vector<double> phiLower;   // inf over |A| = m, signs
    std::vector<double> phiBar;     // sup over |A| = m, plain
    std::vector<double> phiUnder;   // sup_{k<=m} inf_{|A|=k}, plain
};

inline DemocracyFunctions democracy_functions(const IndicatorTable& table, int mMax) {
    DemocracyFunctions d;
    d.phiUpper.resize(mMax);
    d.phiLower.resize(mMax);
    d.phiBar.resize(mMax);
    d.phiUnder.resize(mMax);
    double up = 0.0, under = 0.0;
    for (int m = 1; m <= mMax; ++m) {
        up = std::max(up, table.max_signed(m));
        under = std::max(under, table.min_plain(m));
        d.phiUpper[m - 1] = up;
        d.phiLower[m - 1] = table.min_signed(m);
        d.phiBar[m - 1] = table.max_plain(m);
        d.phiUnder[m - 1] = under;
    }
    return d;
}

// --- Rudin-Shapiro signs --------------------------------------------------------------

/// +-1 sequence with sign -1 exactly when the binary expansion of k contains an
/// odd number of adjacent "11" digit pairs.
inline std::vector<int> rudin_shapiro_signs(int m) {
    if (m < 1) throw std::invalid_argument("rudin_shapiro_signs: m >= 1 required");
    std::vector<int> eps(m);
    for (int k = 0; k < m; ++k) {
        unsigned v = static_cast<unsigned>(k);
        int pairs = 0;
        while (v) {
            if ((v & 3u) == 3u) ++pairs;
            v >>= 1;
        }
        eps[k] = (pairs % 2 == 0) ? 1 : -1;
    }
    return eps;
}

// --- dyadic cube sets ------------------------------------------------------------------

struct DyadicCube {
    int level = 0;
    std::int64_t pos = 0;  // coordinates packed base 2^level, d fields
};

struct DyadicCubeSet {
    int d = 1;
    std::vector<DyadicCube> cubes;
};

inline double cube_volume(const DyadicCube& q, int d) { return std::pow(2.0, -q.level * d); }

inline bool cube_subset(const DyadicCube& q, const DyadicCube& p, int d) {
    return detail::cube_contained({q.level, q.pos}, {p.level, p.pos}, d);
}

/// L(A, P) = sum of |Q| over Q in A contained in P.
inline double carleson_packing(const DyadicCubeSet& a, const DyadicCube& p) {
    double s = 0.0;
    for (const auto& q : a.cubes)
        if (cube_subset(q, p, a.d)) s += cube_volume(q, a.d);
    return s;
}

/// The extremal packing family: all cubes of the top k levels of [0,1]^d,
/// so that L = k against the unit cube.
inline DyadicCubeSet carleson_extremal_family(int k, int d) {
    DyadicCubeSet s;
    s.d = d;
    for (int lvl = 0; lvl < k; ++lvl)
        for (std::int64_t pos = 0; pos < detail::cubes_per_level(lvl, d); ++pos)
            s.cubes.push_back({lvl, pos});
    return s;
}

inline DyadicCube cube_from_flat_index(int idx0, int d) {
    auto a = detail::cube_from_index(idx0, d);
    return {a.level, a.pos};
}

}  // namespace tga
