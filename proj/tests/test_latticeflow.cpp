#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dimflow/error.hpp"
#include "dimflow/latticeflow.hpp"

#include <boost/integer/common_factor.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace dimflow;

namespace {

const FlowSpec kSl2Flow({1, -1});

// First minimum of {(e^t (q x - p), e^-t q)} from the continued fraction of
// x: every shortest vector is a best approximation, hence a convergent or an
// intermediate fraction.
double cf_delta(const HighReal& x, double t) {
    HighReal et = exp(HighReal(t));
    HighReal best = et;  // q = 0
    Int p0 = 1, q0 = 0, p1 = static_cast<Int>(floor(x).convert_to<Int>()), q1 = 1;
    HighReal r = x - floor(x);
    auto consider = [&](const Int& p, const Int& q) {
        HighReal a = et * (HighReal(q) * x - HighReal(p)), b = HighReal(q) / et;
        best = std::min(best, sqrt(a * a + b * b));
    };
    consider(p1, q1);
    for (int step = 0; step < 200 && r > HighReal(1e-45); ++step) {
        HighReal inv = 1 / r;
        Int a = floor(inv).convert_to<Int>();
        r = inv - floor(inv);
        for (Int k = 1; k <= a && k <= 64; ++k) consider(k * p1 + p0, k * q1 + q0);
        consider(a * p1 + p0, a * q1 + q0);
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if (HighReal(q1) > et * et * 1e6) break;
    }
    return best.convert_to<double>();
}

HighReal random_dyadic(std::mt19937_64& rng) {
    Int k = 0;
    for (int j = 0; j < 5; ++j) {
        k <<= 32;
        k += rng() & 0xffffffffULL;
    }
    return HighReal(k) / pow(HighReal(2), 160);
}

long long brute_reduced(long long lo_num, long long lo_den, long long hi_num, long long hi_den, long long A, long long B) {
    long long c = 0;
    for (long long q = std::max(1LL, A); q <= B; ++q)
        for (long long p = -3 * q; p <= 3 * q; ++p)
            if (std::gcd(p, q) == 1 && p * lo_den >= lo_num * q && p * hi_den <= hi_num * q) ++c;
    return c;
}

// exact oracle for the beta0 intersection: preimage of e_idx, scaled to a
// primitive integer vector
Rational oracle_height(const RepKind& kind, const QMatrix& u) {
    QMatrix M = rep_matrix(kind, u);
    QMatrix inv = inverse(M);
    int idx = slice_beta0_index(kind);
    QVec c0;
    for (size_t i = 0; i < inv.size(); ++i) c0.push_back(inv[i][idx]);
    Int L = 1;
    for (const auto& c : c0) L = boost::integer::lcm(L, Int(denominator(c)));
    Int g = 0;
    for (const auto& c : c0) g = boost::integer::gcd(g, Int(abs(numerator(c) * (L / denominator(c)))));
    return Rational(L, g);
}

}  // namespace

TEST_CASE("flow_basis examples and covolume") {
    auto b = flow_basis(RepKind::standard(2), kSl2Flow, HighReal(2), to_high(identity_q(2)));
    CHECK(b.high[0][0].convert_to<double>() == doctest::Approx(std::exp(2.0)));
    CHECK(b.high[1][1].convert_to<double>() == doctest::Approx(std::exp(-2.0)));
    CHECK(b.high[0][1] == 0);
    auto a = flow_basis(RepKind::adjoint(2), kSl2Flow, HighReal(1), to_high(identity_q(2)));
    CHECK(a.high[0][0].convert_to<double>() == doctest::Approx(std::exp(2.0)));
    CHECK(a.high[1][1].convert_to<double>() == doctest::Approx(1.0));
    CHECK(a.high[2][2].convert_to<double>() == doctest::Approx(std::exp(-2.0)));
    CHECK_THROWS_AS(flow_basis(RepKind::standard(2), kSl2Flow, Rational(1), QMatrix{{2, 0}, {0, 1}}), Error);

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> e(-3, 3);
    for (RepKind kind : {RepKind::standard(3), RepKind::adjoint(3), RepKind::exterior(4, 2)}) {
        FlowSpec Y(kind.n == 3 ? QVec{2, -1, -1} : QVec{3, 1, -1, -3});
        for (int trial = 0; trial < 5; ++trial) {
            QMatrix g = identity_q(kind.n);
            for (int i = 0; i < kind.n; ++i)
                for (int j = i + 1; j < kind.n; ++j) g[i][j] = Rational(e(rng), 5);
            auto exact = flow_basis(kind, Y, Rational(0), g);
            CHECK(exact.precision == Precision::Exact);
            CHECK(exact.covolume_exact() == 1);
            for (double t : {0.5, 3.0, 7.25}) {
                auto lb = flow_basis(kind, Y, Rational(static_cast<long long>(t * 4), 4), g);
                CHECK(std::abs(lb.covolume() - 1) < 1e-9);
            }
        }
    }
}

TEST_CASE("rational points contract at rate q e^-t") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 3}, {3, 7}, {5, 12}, {0, 1}}) {
        for (double t : {1.0, 5.0, 12.0}) {
            auto lb = flow_basis(RepKind::standard(2), kSl2Flow, Rational(static_cast<long long>(t)), QMatrix{{1, Rational(p, q)}, {0, 1}});
            CHECK(first_min(lb) <= q * std::exp(-t) * (1 + 1e-12));
        }
    }
}

TEST_CASE("contraction bound along trajectories") {
    std::mt19937_64 rng(8);
    auto grid = uniform_grid(10, 0.5);
    for (RepKind kind : {RepKind::standard(2), RepKind::standard(3), RepKind::adjoint(3), RepKind::exterior(4, 2)}) {
        QVec y = kind.n == 2 ? QVec{1, -1} : kind.n == 3 ? QVec{2, -1, -1} : QVec{3, 1, -1, -3};
        Rational b0 = beta0_a_minus1(kind, FlowSpec(y));
        for (int trial = 0; trial < 3; ++trial) {
            Mat<HighReal> g = to_high(identity_q(kind.n));
            for (int i = 0; i < kind.n; ++i)
                for (int j = i + 1; j < kind.n; ++j) g[i][j] = random_dyadic(rng);
            auto tr = trajectory(kind, FlowSpec(y), g, grid);
            for (size_t i = 0; i < grid.size(); ++i) {
                CHECK(tr.delta[i] >= std::exp(-to_double(b0) * grid[i]) * tr.delta[0] * (1 - 1e-12));
                CHECK(tr.delta[i] > 0);
            }
            // warm-started minima equal fresh computations
            for (size_t i : {size_t(3), size_t(11), grid.size() - 1})
                CHECK(tr.delta[i] == doctest::Approx(first_min(flow_basis(kind, FlowSpec(y), HighReal(grid[i]), g))).epsilon(1e-12));
        }
    }
}

TEST_CASE("SL2 trajectories match the continued-fraction oracle") {
    std::mt19937_64 rng(21);
    std::vector<HighReal> xs{HighReal(3) / 7, (1 + sqrt(HighReal(5))) / 2, sqrt(HighReal(2)),
                             random_dyadic(rng), random_dyadic(rng)};
    HighReal L = 0, f = 1;
    for (int k = 1; k <= 5; ++k) {
        f *= k;
        L += pow(HighReal(10), -f);
    }
    xs.push_back(L);
    auto grid = uniform_grid(40, 0.25);
    for (const auto& x : xs) {
        auto tr = trajectory(RepKind::standard(2), kSl2Flow, slice_element(x), grid);
        for (size_t i = 0; i < grid.size(); i += 7)
            CHECK(tr.delta[i] == doctest::Approx(cf_delta(x, grid[i])).epsilon(1e-9));
    }
}

TEST_CASE("exponent estimates") {
    auto grid = uniform_grid(40, 0.25);
    auto est = [&](const HighReal& x) {
        return exponent_estimate(trajectory(RepKind::standard(2), kSl2Flow, slice_element(x), grid)).exponent;
    };
    CHECK(est((1 + sqrt(HighReal(5))) / 2) <= 0.05);
    CHECK(est(HighReal(3) / 7) == doctest::Approx(1.0).epsilon(0.02));
    std::mt19937_64 rng(5);
    std::vector<double> v;
    for (int i = 0; i < 41; ++i) v.push_back(est(random_dyadic(rng)));
    std::nth_element(v.begin(), v.begin() + 20, v.end());
    CHECK(v[20] <= 0.05);
    auto shortg = uniform_grid(10, 0.25);
    CHECK_THROWS_AS(exponent_estimate(trajectory(RepKind::standard(2), kSl2Flow, slice_element(HighReal(0.5)), shortg)), Error);
    auto tr = trajectory(RepKind::standard(2), kSl2Flow, slice_element(HighReal(1) / 3), uniform_grid(1, 0.5));
    CHECK(tr.csv().rfind("t,delta,ln_delta,running_min\n", 0) == 0);
}

TEST_CASE("symbolic polynomials") {
    Poly a = Poly::theta(0), b = Poly::theta(1);
    Poly s = (a + b) * (a - b);
    CHECK(s == a * a - b * b);
    CHECK((a - a).is_constant());
    CHECK(Poly(Rational(3, 2)).constant() == Rational(3, 2));
    CHECK_FALSE(s.is_constant());
}

TEST_CASE("slice heights of SL2 fractions") {
    for (int q = 1; q <= 200; ++q)
        for (int p = 0; p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            SymMatrix u = to_symbolic(QMatrix{{1, Rational(p, q)}, {0, 1}});
            auto r = slice_intersection(RepKind::standard(2), u);
            REQUIRE(r.rank == 1);
            CHECK(r.height == q);
            // delta of the intersection lattice over the height is exactly 1
            Rational v0 = Rational(r.coeffs[0]) + Rational(p, q) * Rational(r.coeffs[1]);
            Rational v1 = Rational(r.coeffs[1]);
            CHECK(v0 == 0);
            CHECK(abs(v1) / r.height == 1);
        }
    CHECK(slice_height(RepKind::standard(2), to_symbolic(identity_q(2))) == 1);
}

TEST_CASE("slice rationality with transcendental entries") {
    SymMatrix u = to_symbolic(identity_q(3));
    u[0][1] = Poly(Rational(1, 2));
    u[0][2] = Poly::theta(0);
    u[1][2] = Poly(Rational(1, 3));
    CHECK_FALSE(is_rational_slice(RepKind::standard(3), u));
    CHECK_THROWS_AS(slice_height(RepKind::standard(3), u), Error);
    // x13 = x12 * x23 + 1/5 with x12 transcendental is still rational
    u[0][1] = Poly::theta(0);
    u[0][2] = Poly::theta(0) * Poly(Rational(1, 3)) + Poly(Rational(1, 5));
    CHECK(is_rational_slice(RepKind::standard(3), u));
    CHECK(slice_height(RepKind::standard(3), u) == 15);
    SymMatrix bad = to_symbolic(identity_q(2));
    bad[1][0] = Poly(1);
    CHECK_THROWS_AS(slice_intersection(RepKind::standard(2), bad), Error);
}

TEST_CASE("slice heights agree with the exact preimage oracle") {
    std::mt19937 rng(12);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 6);
    for (RepKind kind : {RepKind::standard(3), RepKind::standard(4), RepKind::adjoint(3), RepKind::exterior(4, 2), RepKind::exterior(4, 3)}) {
        for (int trial = 0; trial < 15; ++trial) {
            QMatrix u = identity_q(kind.n);
            for (int i = 0; i < kind.n; ++i)
                for (int j = i + 1; j < kind.n; ++j) u[i][j] = Rational(num(rng), den(rng));
            auto r = slice_intersection(kind, to_symbolic(u));
            REQUIRE(r.rank == 1);
            CHECK(r.height == oracle_height(kind, u));
        }
    }
}

TEST_CASE("counting rational slice elements") {
    SliceBox unit{{0}, {1}};
    CHECK(count_rationals(RepKind::standard(2), unit, 1, 10) == 33);
    CHECK(count_rationals(RepKind::standard(2), SliceBox{{1}, {0}}, 1, 10) == 0);
    for (auto [ln, ld, hn, hd] : std::vector<std::array<long long, 4>>{{0, 1, 1, 1}, {-1, 2, 2, 3}, {1, 3, 5, 2}})
        for (long long A : {1, 4, 9})
            CHECK(count_rationals(RepKind::standard(2), SliceBox{{Rational(ln, ld)}, {Rational(hn, hd)}}, A, A + 30) ==
                  brute_reduced(ln, ld, hn, hd, A, A + 30));
    // Euler totient oracle for [0, 1]
    for (long long l : {256LL, 1024LL}) {
        long long phi_sum = 0;
        for (long long q = l / 2; q <= l; ++q) {
            long long c = 0;
            for (long long p = 1; p <= q; ++p) c += std::gcd(p, q) == 1;
            phi_sum += c;
        }
        CHECK(count_rationals(RepKind::standard(2), unit, l / 2, l) == phi_sum);
    }
    std::vector<double> lg;
    for (int e = 8; e <= 14; ++e) lg.push_back(std::ldexp(1.0, e));
    CHECK(counting_exponent(RepKind::standard(2), unit, lg).exponent == doctest::Approx(2.0).epsilon(0.025));
    CHECK_THROWS_AS(count_rationals(RepKind::adjoint(3), unit, 1, 10), Error);
}

TEST_CASE("SL3 leaf counting") {
    // brute force: every (i, j, q) with gcd 1, leaf length in [0,1]^3
    auto brute = [](long long A, long long B) {
        double total = 0;
        for (long long q = A; q <= B; ++q)
            for (long long j = 0; j <= q; ++j)
                for (long long i = -q; i <= q; ++i) {
                    if (std::gcd(std::gcd(i, j), q) != 1) continue;
                    double a = double(i) / q, b = double(j) / q, lo = 0, hi = 1;
                    if (j == 0) {
                        if (a < 0 || a > 1) continue;
                    } else {
                        lo = std::max(lo, -a / b);
                        hi = std::min(hi, (1 - a) / b);
                    }
                    if (hi > lo) total += hi - lo;
                }
        return total;
    };
    SliceBox cube{{0, 0, 0}, {1, 1, 1}};
    for (long long A : {1LL, 5LL, 12LL})
        CHECK(to_double(count_rationals(RepKind::standard(3), cube, A, A + 7)) == doctest::Approx(brute(A, A + 7)));
    std::vector<double> lg;
    for (double e = 4; e <= 8.01; e += 0.5) lg.push_back(std::pow(2.0, e));
    CHECK(counting_exponent(RepKind::standard(3), cube, lg).exponent == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("primitive vector counts") {
    auto brute = [](int n, int H) {
        long long c = 0;
        std::vector<int> v(n, -H);
        while (true) {
            long long s = 0;
            int g = 0;
            for (int x : v) {
                s += x * x;
                g = std::gcd(g, std::abs(x));
            }
            if (g == 1 && s <= H * H) ++c;
            int i = 0;
            while (i < n && v[i] == H) v[i] = -H, ++i;
            if (i == n) break;
            ++v[i];
        }
        return c / 2;
    };
    CHECK(count_primitive(2, 5) == 24);
    for (int n : {2, 3, 4})
        for (int H : {1, 2, 5, 9}) CHECK(count_primitive(n, H) == brute(n, H));
    std::vector<double> H2, H3;
    for (double h = 100; h <= 10000; h *= 1.6) H2.push_back(h);
    for (double h = 50; h <= 1000; h *= 1.4) H3.push_back(h);
    CHECK(rational_point_growth(RepKind::standard(2), H2).exponent == doctest::Approx(2.0).epsilon(0.05));
    CHECK(rational_point_growth(RepKind::standard(3), H3).exponent == doctest::Approx(3.0).epsilon(0.05));
    CHECK_THROWS_AS(rational_point_growth(RepKind::adjoint(3), H2), Error);
}

TEST_CASE("volume growth against analytic volumes") {
    std::vector<double> R{4, 8, 16, 32};
    VolumeOptions opt{40000, 3};
    auto v2 = volume_estimates(RepKind::standard(2), kSl2Flow, WeylElement::identity(2), R, opt);
    auto v3 = volume_estimates(RepKind::standard(3), FlowSpec({1, 0, -1}), WeylElement::identity(3), R, opt);
    for (size_t i = 0; i < R.size(); ++i) {
        CHECK(v2[i] == doctest::Approx(2 * std::sqrt(R[i] * R[i] - 1)).epsilon(0.03));
        CHECK(v3[i] == doctest::Approx(M_PI * (R[i] * R[i] - 1)).epsilon(0.03));
    }
    auto f2 = volume_growth(RepKind::standard(2), kSl2Flow, WeylElement::identity(2), R, opt);
    auto f3 = volume_growth(RepKind::standard(3), FlowSpec({1, 0, -1}), WeylElement::identity(3), R, opt);
    CHECK(f2.exponent == doctest::Approx(1.0).epsilon(0.1));
    CHECK(f3.exponent == doctest::Approx(1.0 * 2).epsilon(0.05));
    CHECK(f2.exponent <= 2 + 0.15);
    CHECK(f3.exponent <= 3 + 0.15);
    WeylElement s{{1, 0}, {1, 1}};
    CHECK(volume_growth(RepKind::standard(2), kSl2Flow, s, R, opt).exponent == 0);
    auto fa = volume_growth(RepKind::adjoint(3), FlowSpec({1, 0, -1}), WeylElement::identity(3), R, {20000, 3});
    CHECK(fa.exponent <= 2 + 0.15);
}

TEST_CASE("box dimension") {
    std::vector<std::vector<double>> grid;
    for (int i = 0; i < 100000; ++i) grid.push_back({i / 100000.0});
    CHECK(box_dimension(grid, 2, 14).exponent == doctest::Approx(1.0).epsilon(0.02));
    std::vector<std::vector<double>> cantor;
    for (double x : cantor_points(14)) cantor.push_back({x});
    CHECK(std::abs(box_dimension(cantor, 4, 14).exponent - std::log(2) / std::log(3)) <= 0.03);
    CHECK_THROWS_AS(box_dimension({{0.5}}, 2, 4), Error);
    auto fb = farey_ball_dimension(1024, 1.0, 8, 16);
    CHECK(std::abs(fb.resolved.exponent - 2.0 / 3.0) <= 0.08);
    CHECK(fb.literal.exponent == doctest::Approx(1.0));
}
