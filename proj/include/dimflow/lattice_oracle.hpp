#pragma once

// Exhaustive shortest-vector oracle for small integer lattices: the
// coefficient box |c_i| <= |b_min| * |column_i(B^-1)| provably contains a
// shortest vector.

#include "dimflow/rational.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace dimflow::oracle {

using dimflow::QMatrix;
using dimflow::Rational;

inline std::vector<long long> box_bounds(const std::vector<std::vector<long long>>& rows) {
    size_t n = rows.size();
    QMatrix q(n, dimflow::QVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) q[i][j] = rows[i][j];
    QMatrix inv = dimflow::inverse(q);
    double bmin = 1e300;
    for (const auto& r : rows) {
        double s = 0;
        for (long long v : r) s += double(v) * double(v);
        bmin = std::min(bmin, std::sqrt(s));
    }
    std::vector<long long> out(n);
    for (size_t i = 0; i < n; ++i) {
        double s = 0;
        for (size_t j = 0; j < n; ++j) s += std::pow(dimflow::to_double(inv[j][i]), 2);
        out[i] = static_cast<long long>(std::floor(bmin * std::sqrt(s) * (1 + 1e-9)));
    }
    return out;
}

inline double box_size(const std::vector<long long>& b) {
    double s = 1;
    for (long long v : b) s *= double(2 * v + 1);
    return s;
}

inline long long brute_min_sq(const std::vector<std::vector<long long>>& rows) {
    size_t n = rows.size();
    auto bound = box_bounds(rows);
    std::vector<long long> c(n);
    for (size_t i = 0; i < n; ++i) c[i] = -bound[i];
    long long best = -1;
    while (true) {
        bool zero = true;
        for (long long v : c) zero = zero && v == 0;
        if (!zero) {
            long long s = 0;
            for (size_t j = 0; j < n; ++j) {
                long long x = 0;
                for (size_t i = 0; i < n; ++i) x += c[i] * rows[i][j];
                s += x * x;
            }
            if (best < 0 || s < best) best = s;
        }
        size_t i = 0;
        while (i < n && c[i] == bound[i]) c[i] = -bound[i], ++i;
        if (i == n) break;
        ++c[i];
    }
    return best;
}

// Nonsingular integer matrices with entries in [-5, 5] whose oracle box is
// small enough to enumerate.
inline std::vector<std::vector<long long>> random_lattice(int d, std::mt19937& rng) {
    std::uniform_int_distribution<int> e(-5, 5);
    while (true) {
        std::vector<std::vector<long long>> rows(d, std::vector<long long>(d));
        QMatrix q(d, dimflow::QVec(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) q[i][j] = rows[i][j] = e(rng);
        if (dimflow::det(q) == 0) continue;
        if (box_size(box_bounds(rows)) > 2e6) continue;
        return rows;
    }
}

}  // namespace dimflow::oracle
