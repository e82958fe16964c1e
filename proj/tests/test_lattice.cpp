#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dimflow/lattice.hpp"
#include "dimflow/lattice_oracle.hpp"

using namespace dimflow;

namespace {

QMatrix to_q(const std::vector<std::vector<long long>>& rows) {
    QMatrix q(rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (long long v : rows[i]) q[i].push_back(Rational(v));
    return q;
}

}  // namespace

TEST_CASE("first_min examples") {
    CHECK(first_min(LatticeBasis::rational(identity_q(2))) == 1.0);
    CHECK(first_min_sq(QMatrix{{2, 0}, {0, Rational(1, 2)}}) == Rational(1, 4));
    CHECK(first_min(LatticeBasis::of_double({{2.0, 0.0}, {0.0, 0.5}})) == doctest::Approx(0.5));
    CHECK_THROWS_AS(LatticeBasis::rational(QMatrix{{1, 2}, {2, 4}}), Error);
    CHECK_THROWS_AS(LatticeBasis::rational(identity_q(25)), Error);
}

TEST_CASE("unimodular integer bases give Z^d") {
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> pick(0, 3), coef(-3, 3);
    for (int trial = 0; trial < 100; ++trial) {
        QMatrix g = identity_q(4);
        for (int s = 0; s < 20; ++s) {
            int i = pick(rng), j = pick(rng);
            if (i == j) continue;
            int c = coef(rng);
            for (int col = 0; col < 4; ++col) g[i][col] += c * g[j][col];
        }
        CHECK(first_min_sq(g) == 1);
    }
}

TEST_CASE("first_min matches the exhaustive oracle") {
    std::mt19937 rng(17);
    for (int d = 2; d <= 5; ++d)
        for (int trial = 0; trial < 100; ++trial) {
            auto rows = oracle::random_lattice(d, rng);
            long long expect = oracle::brute_min_sq(rows);
            CHECK(first_min_sq(to_q(rows)) == expect);
            Mat<double> dr(d);
            for (int i = 0; i < d; ++i)
                for (long long v : rows[i]) dr[i].push_back(double(v));
            CHECK(shortest_norm2(dr) == doctest::Approx(double(expect)));
        }
}

TEST_CASE("rational lattices and the scaling law") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto rows = oracle::random_lattice(3, rng);
        QMatrix q = to_q(rows);
        for (auto& r : q)
            for (auto& v : r) v /= 7;
        CHECK(first_min_sq(q) * 49 == oracle::brute_min_sq(rows));
    }
}

TEST_CASE("vectors_within returns every short vector once") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        auto rows = oracle::random_lattice(3, rng);
        long long m = oracle::brute_min_sq(rows);
        Mat<HighReal> h(3);
        for (int i = 0; i < 3; ++i)
            for (long long v : rows[i]) h[i].push_back(HighReal(v));
        HighReal bound = HighReal(3 * m);
        auto found = vectors_within(h, bound);
        // brute count of +- pairs within the bound over a generous box
        long long cnt = 0;
        int B = 12;
        for (int a = -B; a <= B; ++a)
            for (int b = -B; b <= B; ++b)
                for (int c = -B; c <= B; ++c) {
                    if (a == 0 && b == 0 && c == 0) continue;
                    long long s = 0;
                    for (int j = 0; j < 3; ++j) {
                        long long x = a * rows[0][j] + b * rows[1][j] + c * rows[2][j];
                        s += x * x;
                    }
                    if (s <= 3 * m) ++cnt;
                }
        CHECK(static_cast<long long>(found.size()) * 2 == cnt);
        for (const auto& v : found) {
            HighReal s = 0;
            for (int j = 0; j < 3; ++j) {
                HighReal x = 0;
                for (int i = 0; i < 3; ++i) x += HighReal(v.coeffs[i]) * h[i][j];
                s += x * x;
            }
            CHECK(abs(s - v.norm2) < 1e-30);
        }
    }
}
