#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dimflow/error.hpp"
#include "dimflow/repweights.hpp"

#include <cmath>
#include <random>

using namespace dimflow;

namespace {

OrientedRootSystem oriented(int n, const std::string& y) {
    return orient_to_flow(build_root_system(Series::A, n - 1), parse_flow(y));
}

// Independent oracle: type A dimension from the partition form of the labels,
// prod_{i<j} (l_i - l_j + j - i) / (j - i).
Int dim_type_a(const IVec& labels) {
    int n = static_cast<int>(labels.size()) + 1;
    std::vector<long> part(n, 0);
    for (int i = n - 2; i >= 0; --i) part[i] = part[i + 1] + labels[i];
    Rational d = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d *= Rational(part[i] - part[j] + j - i, j - i);
    return numerator(d);
}

QMatrix random_unimodular(int n, std::mt19937& rng) {
    QMatrix g = identity_q(n);
    std::uniform_int_distribution<int> pick(0, n - 1), coef(-2, 2);
    for (int step = 0; step < 3 * n; ++step) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        int c = coef(rng);
        for (int col = 0; col < n; ++col) g[i][col] += c * g[j][col];
    }
    return g;
}

}  // namespace

TEST_CASE("weight systems of small representations") {
    auto a1 = oriented(2, "1,-1");
    auto s1 = weight_system(a1, a1.weight_from_labels({1}));
    CHECK(s1.dim_V == 2);
    CHECK(s1.weights.size() == 2);

    auto a2 = oriented(3, "1,0,-1");
    auto adj = weight_system(a2, a2.weight_from_labels({1, 1}));
    CHECK(adj.dim_V == 8);
    CHECK(adj.weights.size() == 7);
    CHECK(adj.weights.at(QVec{0, 0, 0}) == 2);
    for (const auto& [w, m] : adj.weights)
        if (!is_zero(w)) CHECK(m == 1);

    auto a3 = oriented(4, "3,1,-1,-3");
    auto wedge = weight_system(a3, a3.weight_from_labels({0, 1, 0}));
    CHECK(wedge.dim_V == 6);
    CHECK(wedge.weights.size() == 6);
    CHECK(weyl_dim(a3.base, {2, 0, 0}) == 10);
    CHECK(weyl_dim(a2.base, {1, 0}) == 3);
    CHECK_THROWS_AS(weight_system(a2, QVec{Rational(2, 3), Rational(-1, 3), Rational(-1, 3)}), Error);
    CHECK_THROWS_AS(weight_system(a3, a3.weight_from_labels({6, 6, 6}), Int(1000)), Error);
}

TEST_CASE("Freudenthal matches Weyl for every dominant weight of A2, A3 with dim <= 100") {
    for (int n : {3, 4}) {
        auto ors = oriented(n, n == 3 ? "1,0,-1" : "2,1,-1,-2");
        int r = n - 1;
        int checked = 0;
        IVec labels(r, 0);
        auto rec = [&](auto&& self, int i) -> void {
            if (i == r) {
                if (dim_type_a(labels) > 100) return;
                auto ws = weight_system(ors, ors.weight_from_labels(labels));
                CHECK(ws.dim_V == dim_type_a(labels));
                Int total = 0;
                for (const auto& [w, m] : ws.weights) {
                    total += m;
                    auto c = simple_coefficients(ors, ws.highest - w);
                    REQUIRE(c.size() == static_cast<size_t>(r));
                    for (const auto& x : c) {
                        CHECK(x >= 0);
                        CHECK(denominator(x) == 1);
                    }
                }
                CHECK(total == ws.dim_V);
                CHECK(ws.weights.at(ws.highest) == 1);
                ++checked;
                return;
            }
            for (int v = 0; v <= 10; ++v) {
                labels[i] = v;
                self(self, i + 1);
            }
            labels[i] = 0;
        };
        rec(rec, 0);
        CHECK(checked > 10);
    }
}

TEST_CASE("kappa") {
    for (int n = 2; n <= 6; ++n) {
        QVec y(n);
        for (int i = 0; i < n; ++i) y[i] = Rational(n - 1 - 2 * i);
        auto ors = orient_to_flow(build_root_system(Series::A, n - 1), FlowSpec(y));
        auto st = weight_system(ors, ors.weight_from_labels(RepKind::standard(n).labels()));
        REQUIRE(kappa(st).has_value());
        CHECK(*kappa(st) * n == -1);
        if (n >= 3) {
            auto ad = weight_system(ors, ors.weight_from_labels(RepKind::adjoint(n).labels()));
            REQUIRE(kappa(ad).has_value());
            CHECK(*kappa(ad) * (n - 1) == -1);
        }
    }
    auto a2 = oriented(3, "1,0,-1");
    CHECK_FALSE(kappa(weight_system(a2, a2.weight_from_labels({1, 2}))).has_value());
}

TEST_CASE("rep_matrix examples") {
    CHECK(rep_matrix(RepKind::standard(2), identity_q(2)) == identity_q(2));
    QMatrix d = {{2, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 5, 0}, {0, 0, 0, Rational(1, 30)}};
    auto w = rep_matrix(RepKind::exterior(4, 2), d);
    std::vector<Rational> expect = {6, 10, Rational(1, 15), 15, Rational(1, 10), Rational(1, 6)};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(w[i][j] == (i == j ? expect[i] : Rational(0)));
    QMatrix e = {{3, 0}, {0, Rational(1, 3)}};
    auto ad = rep_matrix(RepKind::adjoint(2), e);
    CHECK(ad[0][0] == 9);
    CHECK(ad[1][1] == 1);
    CHECK(ad[2][2] == Rational(1, 9));
    CHECK_THROWS_AS(rep_matrix(RepKind::standard(2), QMatrix{{2, 0}, {0, 1}}), Error);
    CHECK_THROWS_AS(parse_rep("symmetric", 3, 1), Error);
    CHECK_THROWS_AS(RepKind::exterior(4, 4).validate(), Error);
}

TEST_CASE("rep_matrix is a homomorphism with determinant one") {
    std::mt19937 rng(11);
    for (RepKind kind : {RepKind::standard(3), RepKind::adjoint(3), RepKind::exterior(4, 2),
                         RepKind::exterior(4, 3), RepKind::adjoint(2)}) {
        for (int trial = 0; trial < 50; ++trial) {
            auto g = random_unimodular(kind.n, rng), h = random_unimodular(kind.n, rng);
            auto lhs = rep_matrix(kind, matmul(g, h));
            auto rhs = matmul(rep_matrix(kind, g), rep_matrix(kind, h));
            CHECK(lhs == rhs);
            if (trial < 5) CHECK(det(rep_matrix(kind, g)) == 1);
        }
    }
}

TEST_CASE("flow weights") {
    auto fw = flow_weights(RepKind::standard(2), parse_flow("1,-1"));
    CHECK(fw == std::vector<Rational>{1, -1});
    CHECK(beta0_a_minus1(RepKind::standard(2), parse_flow("1,-1")) == 1);
    auto ad = flow_weights(RepKind::adjoint(3), parse_flow("1,0,-1"));
    std::sort(ad.begin(), ad.end());
    CHECK(ad == std::vector<Rational>{-2, -1, -1, 0, 0, 1, 1, 2});
    CHECK(beta0_a_minus1(RepKind::adjoint(3), parse_flow("1,0,-1")) == 2);
    CHECK(beta0_a_minus1(RepKind::exterior(4, 2), parse_flow("3,1,-1,-3")) == 4);
    for (RepKind kind : {RepKind::standard(4), RepKind::adjoint(4), RepKind::exterior(4, 2)}) {
        auto w = flow_weights(kind, parse_flow("3,1,-1,-3"));
        Rational s = 0;
        for (const auto& x : w) s += x;
        CHECK(s == 0);
    }
    CHECK_THROWS_AS(beta0_a_minus1(RepKind::standard(2), parse_flow("0,0")), Error);
}

TEST_CASE("diagonal rep_matrix matches exp of flow weights") {
    // diag(e^{t y_i}) at t = 1/4 in floating point
    for (RepKind kind : {RepKind::standard(3), RepKind::adjoint(3), RepKind::exterior(4, 2)}) {
        QVec y = kind.n == 3 ? QVec{2, -1, -1} : QVec{3, 1, -1, -3};
        Mat<double> g(kind.n, std::vector<double>(kind.n, 0.0));
        for (int i = 0; i < kind.n; ++i) g[i][i] = std::exp(0.25 * to_double(y[i]));
        auto r = rep_matrix_unchecked<double>(kind, g);
        auto w = flow_weights(kind, FlowSpec(y));
        for (size_t i = 0; i < w.size(); ++i)
            for (size_t j = 0; j < w.size(); ++j)
                CHECK(r[i][j] == doctest::Approx(i == j ? std::exp(0.25 * to_double(w[i])) : 0.0));
    }
}

TEST_CASE("weights csv") {
    auto a1 = oriented(2, "1,-1");
    auto csv = weights_csv(weight_system(a1, a1.weight_from_labels({1})));
    CHECK(csv == "x1,x2,multiplicity\n-1/2,1/2,1\n1/2,-1/2,1\n");
}
