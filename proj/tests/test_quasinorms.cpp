#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tga/basis.hpp"
#include "tga/coeff.hpp"
#include "tga/spaces.hpp"

using namespace tga;

namespace {

// Independent Haar evaluator: sample the synthesized function pointwise from
// the interval definition (no shared code with haar_synthesis).
double haar_function_at(int index0, double x, double p) {
    if (index0 == 0) return 1.0;
    int j = static_cast<int>(std::floor(std::log2(static_cast<double>(index0))));
    int pos = index0 - (1 << j);
    double lo = pos * std::pow(2.0, -j), hi = (pos + 1) * std::pow(2.0, -j);
    if (x < lo || x >= hi) return 0.0;
    double mid = 0.5 * (lo + hi);
    double scale = std::isinf(p) ? 1.0 : std::pow(2.0, static_cast<double>(j) / p);
    return x < mid ? -scale : scale;
}

double haar_lp_oracle(const CoeffVector& c, int depth, double p) {
    const int cells = 1 << depth;
    double acc = 0.0, mx = 0.0;
    for (int g = 0; g < cells; ++g) {
        double x = (g + 0.5) / cells;
        Scalar v(0, 0);
        for (int i = 0; i < c.dim(); ++i) v += c[i] * haar_function_at(i, x, p);
        double a = std::abs(v);
        mx = std::max(mx, a);
        acc += std::pow(a, p) / cells;
    }
    return std::isinf(p) ? mx : std::pow(acc, 1.0 / p);
}

// Dual-norm oracle for Lorentz d_{1,1}(w): exhaust the sign-and-prefix vertices
// of the unit ball, f = (1/s_k) 1_{eps,A}, |A| = k.
double lorentz_dual_oracle(const SpaceDescriptor& s, const CoeffVector& g) {
    const int n = g.dim();
    double best = 0.0;
    for (int k = 1; k <= n; ++k) {
        for_each_subset(n, k, [&](const IndexSet& a) {
            double sum = 0.0;
            for (int i : a) sum += std::abs(g[i]);  // optimal signs align coordinatewise
            best = std::max(best, sum / s.sigma.at(k));
        });
    }
    return best;
}

CoeffVector random_vec(Rng& rng, int n, Field field = Field::Real) {
    CoeffVector f(n);
    for (int i = 0; i < n; ++i) {
        if (field == Field::Real) f[i] = Scalar(rng.uniform(-2, 2), 0);
        else f[i] = Scalar(rng.uniform(-2, 2), rng.uniform(-2, 2));
    }
    return f;
}

std::vector<SpaceDescriptor> sweep_spaces() {
    std::vector<SpaceDescriptor> v;
    v.push_back(make_lp(1.0));
    v.push_back(make_lp(0.5));
    v.push_back(make_lp(2.0));
    v.push_back(make_lp(4.0));
    v.push_back(make_lp(kInfExponent));
    v.push_back(make_lorentz(named_weight("power:0.5", 64), 1.0));
    v.push_back(make_lorentz(named_weight("ones", 64), 1.0));
    v.push_back(make_difference(1.0));
    v.push_back(make_difference(0.5));
    v.push_back(make_summing());
    v.push_back(make_haar(1.0, 4));
    v.push_back(make_haar(2.0, 4));
    v.push_back(make_carleson(1, 2.0, 4));
    return v;
}

}  // namespace

TEST_CASE("lp norms on unit-entry vectors") {
    auto l1 = make_lp(1.0);
    CoeffVector f = unit_vector(4, 0) + unit_vector(4, 1);
    CHECK(l1.norm(f) == Catch::Approx(2.0).margin(1e-14));

    auto lhalf = make_lp(0.5);
    CHECK(lhalf.norm(f) == Catch::Approx(4.0).margin(1e-12));  // (1+1)^{1/p}, p = 1/2

    auto l2 = make_lp(2.0);
    CHECK(l2.norm(f) == Catch::Approx(std::sqrt(2.0)).margin(1e-14));
}

TEST_CASE("lorentz d_{1,1}(1) equals l1 and is rearrangement invariant") {
    auto lor = make_lorentz(named_weight("ones", 16), 1.0);
    CoeffVector f(3);
    f[0] = 3; f[1] = 1; f[2] = 2;
    CHECK(lor.norm(f) == Catch::Approx(6.0).margin(1e-14));
    CoeffVector g(3);
    g[0] = 1; g[1] = 2; g[2] = 3;
    CHECK(lor.norm(g) == Catch::Approx(6.0).margin(1e-14));

    auto l1 = make_lp(1.0);
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        CoeffVector h = random_vec(rng, 8);
        CHECK(lor.norm(h) == Catch::Approx(l1.norm(h)).margin(1e-12));
    }
}

TEST_CASE("lorentz rejects non-doubling weights and bad exponents") {
    CHECK_THROWS(make_lp(0.0));
    CHECK_THROWS(make_lp(-1.0));
    PrimitiveWeight expo;
    expo.s.resize(32);
    for (int m = 1; m <= 32; ++m) expo.s[m - 1] = std::pow(2.0, m);  // s_{2m}/s_m = 2^m
    CHECK_THROWS(make_lorentz(discrete_derivative(expo), 1.0));
}

TEST_CASE("nonincreasing rearrangement") {
    CoeffVector f(3);
    f[0] = 0; f[1] = -2; f[2] = 1;
    auto a = nonincreasing_rearrangement(f);
    CHECK(a[0] == 2.0);
    CHECK(a[1] == 1.0);
    CHECK(a[2] == 0.0);

    CoeffVector z(2);
    auto az = nonincreasing_rearrangement(z);
    CHECK(az[0] == 0.0);
    CHECK(az[1] == 0.0);

    CoeffVector c(2);
    c[0] = Scalar(0, 1);
    c[1] = Scalar(-1, -1);
    auto ac = nonincreasing_rearrangement(c);
    CHECK(ac[0] == Catch::Approx(std::sqrt(2.0)).margin(1e-14));
    CHECK(ac[1] == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("haar norm matches the independent piecewise integration oracle") {
    // the L_1-normalized indicator of [0,1] is the first basis element
    auto h1 = make_haar(1.0, 4);
    CoeffVector ind = unit_vector(16, 0);
    double oracle = haar_lp_oracle(ind, 4, 1.0);
    CHECK(h1.norm(ind) == Catch::Approx(oracle).margin(1e-12));
    CHECK(h1.norm(ind) == Catch::Approx(1.0).margin(1e-12));

    Rng rng(11);
    for (double p : {1.0, 2.0, 3.0}) {
        auto hp = make_haar(p, 4);
        for (int t = 0; t < 50; ++t) {
            CoeffVector f = random_vec(rng, 16);
            CHECK(hp.norm(f) == Catch::Approx(haar_lp_oracle(f, 4, p)).margin(1e-10));
        }
    }
}

TEST_CASE("haar L2 agrees with the coefficient l2 norm") {
    auto h2 = make_haar(2.0, 4);
    auto l2 = make_lp(2.0);
    Rng rng(13);
    for (int t = 0; t < 100; ++t) {
        CoeffVector f = random_vec(rng, 16);
        CHECK(h2.norm(f) == Catch::Approx(l2.norm(f)).margin(1e-10));
    }
}

TEST_CASE("trig norm: guard, orthonormality, dirichlet kernel") {
    CHECK_THROWS(make_trig(4.0, 8, 9));  // grid below 4x bandwidth

    auto t2 = make_trig(2.0, 64, 9);
    Rng rng(17);
    auto l2 = make_lp(2.0);
    for (int t = 0; t < 50; ++t) {
        CoeffVector f = random_vec(rng, 9, Field::Complex);
        CHECK(t2.norm(f) == Catch::Approx(l2.norm(f)).margin(1e-10));  // Parseval
    }

    // |D_m|_4 on two grids: the quadrature is exact once the grid clears 4x degree
    int n = 17;  // frequencies up to 8
    auto t4a = make_trig(4.0, 256, n);
    auto t4b = make_trig(4.0, 512, n);
    CoeffVector dir(n);
    for (int i = 0; i < n; ++i)
        if (detail::trig_frequency(i) >= 0 && detail::trig_frequency(i) < 5) dir[i] = 1;
    CHECK(t4a.norm(dir) == Catch::Approx(t4b.norm(dir)).margin(1e-12));
}

TEST_CASE("jacobi norm: p=2 orthonormality and quadrature stability") {
    auto j2 = make_jacobi(0.5, 0.5, 2.0, 8);
    auto l2 = make_lp(2.0);
    Rng rng(19);
    for (int t = 0; t < 50; ++t) {
        CoeffVector f = random_vec(rng, 8);
        CHECK(j2.norm(f) == Catch::Approx(l2.norm(f)).margin(1e-9));
    }
    auto j4a = make_jacobi(0.5, 0.5, 4.0, 8, 0);
    auto j4b = make_jacobi(0.5, 0.5, 4.0, 8, 40);
    CoeffVector f = random_vec(rng, 8);
    CHECK(j4a.norm(f) == Catch::Approx(j4b.norm(f)).epsilon(1e-6));
}

TEST_CASE("difference and summing synthesis norms") {
    auto d1 = make_difference(1.0);
    CoeffVector tele(8);
    for (int i = 0; i < 5; ++i) tele[i] = 1;  // telescoping prefix
    CHECK(d1.norm(tele) == Catch::Approx(1.0).margin(1e-14));

    CoeffVector spread(8);
    for (int i = 1; i < 8; i += 2) spread[i] = 1;  // {2,4,6,8} 1-based
    CHECK(d1.norm(spread) == Catch::Approx(8.0).margin(1e-14));  // 2m jumps, m = 4

    auto dhalf = make_difference(0.5);
    CHECK(dhalf.norm(spread) == Catch::Approx(std::pow(8.0, 2.0)).margin(1e-10));

    auto sum = make_summing();
    CoeffVector alt(8);
    for (int i = 0; i < 8; ++i) alt[i] = (i % 2 == 0) ? -1 : 1;  // (-1)^n, 1-based
    CHECK(sum.norm(alt) == Catch::Approx(1.0).margin(1e-14));
    CoeffVector ones(8);
    for (int i = 0; i < 8; ++i) ones[i] = 1;
    CHECK(sum.norm(ones) == Catch::Approx(8.0).margin(1e-14));
}

TEST_CASE("carleson norm basics") {
    auto c = make_carleson(1, 2.0, 4);
    int n = detail::cube_count(4, 1);
    CoeffVector f(n);
    f[0] = 1;  // unit cube only
    CHECK(c.norm(f) == Catch::Approx(1.0).margin(1e-14));

    // extremal family: all cubes of the top k levels with unit coefficients
    for (int k = 1; k <= 4; ++k) {
        CoeffVector g(n);
        for (int i = 0; i < (1 << k) - 1; ++i) g[i] = 1;
        CHECK(c.norm(g) == Catch::Approx(std::sqrt(static_cast<double>(k))).margin(1e-12));
    }
}

TEST_CASE("dual norms: closed forms") {
    CoeffVector g(2);
    g[0] = 3; g[1] = 4;
    CHECK(make_lp(2.0).dual_norm(g) == Catch::Approx(5.0).margin(1e-12));
    CHECK(make_lp(1.0).dual_norm(g) == Catch::Approx(4.0).margin(1e-12));

    auto lor = make_lorentz(named_weight("power:0.5", 32), 1.0);
    Rng rng(23);
    for (int t = 0; t < 30; ++t) {
        CoeffVector h = random_vec(rng, 6);
        CHECK(lor.dual_norm(h) == Catch::Approx(lorentz_dual_oracle(lor, h)).margin(1e-10));
    }
}

TEST_CASE("dual norm search agrees with closed forms on convex families") {
    Rng rng(29);
    for (auto s : {make_lp(2.0), make_lp(1.0), make_lp(4.0)}) {
        for (int t = 0; t < 10; ++t) {
            CoeffVector g = random_vec(rng, 5);
            double closed = s.dual_norm(g);
            double searched = detail::dual_norm_search(s, g);
            CHECK(searched == Catch::Approx(closed).epsilon(1e-6));
        }
    }
}

TEST_CASE("dual norm is a norm in the convex case") {
    auto lor = make_lorentz(named_weight("power:0.5", 32), 1.0);
    Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        CoeffVector a = random_vec(rng, 6), b = random_vec(rng, 6);
        double c = rng.uniform(-3, 3);
        CHECK(lor.dual_norm(Scalar(c, 0) * a) ==
              Catch::Approx(std::abs(c) * lor.dual_norm(a)).margin(1e-10));
        CHECK(lor.dual_norm(a + b) <= lor.dual_norm(a) + lor.dual_norm(b) + 1e-10);
    }
}

TEST_CASE("homogeneity and p-subadditivity sweep over all families") {
    Rng rng(37);
    for (const auto& s : sweep_spaces()) {
        int n = 8;
        if (s.family == SpaceFamily::HaarLp) n = 1 << s.depth;
        if (s.family == SpaceFamily::CarlesonF) n = detail::cube_count(s.depth, s.dim);
        for (int t = 0; t < 60; ++t) {
            CoeffVector f = random_vec(rng, n, s.field);
            CoeffVector g = random_vec(rng, n, s.field);
            double c = rng.uniform(-3, 3);
            double lhs = s.norm(Scalar(c, 0) * f), rhs = std::abs(c) * s.norm(f);
            CHECK(lhs == Catch::Approx(rhs).epsilon(1e-10).margin(1e-12));
            auto sub = p_subadditivity_check(s, f, g);
            CHECK(sub.ok);
        }
        CoeffVector z(n);
        CHECK(s.norm(z) == 0.0);
    }
}

TEST_CASE("rearrangement and sign invariance for lp and lorentz") {
    Rng rng(41);
    auto spaces = {make_lp(1.0), make_lp(0.5), make_lp(2.0),
                   make_lorentz(named_weight("power:0.5", 32), 1.0)};
    for (const auto& s : spaces) {
        for (int t = 0; t < 60; ++t) {
            CoeffVector f = random_vec(rng, 7);
            std::vector<int> perm{0, 1, 2, 3, 4, 5, 6};
            for (int i = 6; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(i + 1)]);
            CoeffVector g(7), h(7);
            for (int i = 0; i < 7; ++i) {
                g[i] = f[perm[i]];
                h[i] = f[i] * Scalar(rng.uniform_int(2) == 0 ? 1 : -1, 0);
            }
            CHECK(s.norm(g) == Catch::Approx(s.norm(f)).margin(1e-12));
            CHECK(s.norm(h) == Catch::Approx(s.norm(f)).margin(1e-12));
        }
    }
}

TEST_CASE("rearrangement values are nonincreasing in m") {
    Rng rng(43);
    for (int t = 0; t < 100; ++t) {
        CoeffVector f = random_vec(rng, 9, t % 2 == 0 ? Field::Real : Field::Complex);
        auto a = nonincreasing_rearrangement(f);
        for (size_t i = 1; i < a.size(); ++i) CHECK(a[i] <= a[i - 1]);
    }
}

