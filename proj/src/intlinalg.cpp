#include "dimflow/intlinalg.hpp"

#include "dimflow/error.hpp"

#include <boost/integer/common_factor.hpp>

namespace dimflow {

namespace {

void row_combine(IntMatrix& M, size_t i, size_t j, const Int& a, const Int& b, const Int& c, const Int& d) {
    // (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)
    for (size_t k = 0; k < M[i].size(); ++k) {
        Int x = M[i][k], y = M[j][k];
        M[i][k] = a * x + b * y;
        M[j][k] = c * x + d * y;
    }
}

void ext_gcd(const Int& a, const Int& b, Int& g, Int& x, Int& y) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    g = old_r;
    x = old_s;
    y = old_t;
}

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

}  // namespace

Echelon hermite(const IntMatrix& A) {
    Echelon e;
    size_t r = A.size();
    size_t c = r ? A[0].size() : 0;
    e.H = A;
    e.U.assign(r, std::vector<Int>(r, Int(0)));
    for (size_t i = 0; i < r; ++i) e.U[i][i] = 1;
    size_t row = 0;
    for (size_t col = 0; col < c && row < r; ++col) {
        for (size_t i = row + 1; i < r; ++i) {
            if (e.H[i][col] == 0) continue;
            Int g, x, y;
            ext_gcd(e.H[row][col], e.H[i][col], g, x, y);
            Int a = e.H[row][col] / g, b = e.H[i][col] / g;
            // [x y; -b a] has determinant x a + y b = 1
            row_combine(e.H, row, i, x, y, -b, a);
            row_combine(e.U, row, i, x, y, -b, a);
        }
        if (e.H[row][col] == 0) continue;
        if (e.H[row][col] < 0) {
            for (auto& v : e.H[row]) v = -v;
            for (auto& v : e.U[row]) v = -v;
        }
        for (size_t i = 0; i < row; ++i) {
            Int q = floor_div(e.H[i][col], e.H[row][col]);
            if (q == 0) continue;
            for (size_t k = 0; k < c; ++k) e.H[i][k] -= q * e.H[row][k];
            for (size_t k = 0; k < r; ++k) e.U[i][k] -= q * e.U[row][k];
        }
        ++row;
    }
    e.rank = static_cast<int>(row);
    return e;
}

IntMatrix left_kernel(const IntMatrix& A) {
    Echelon e = hermite(A);
    return IntMatrix(e.U.begin() + e.rank, e.U.end());
}

IntMatrix right_kernel(const IntMatrix& A) {
    if (A.empty()) return {};
    size_t r = A.size(), c = A[0].size();
    IntMatrix T(c, std::vector<Int>(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) T[j][i] = A[i][j];
    return left_kernel(T);
}

IntMatrix saturate(const IntMatrix& rows) {
    if (rows.empty()) return {};
    size_t n = rows[0].size();
    IntMatrix K = right_kernel(rows);
    if (K.empty()) {
        IntMatrix I(n, std::vector<Int>(n, Int(0)));
        for (size_t i = 0; i < n; ++i) I[i][i] = 1;
        return I;
    }
    IntMatrix S = right_kernel(K);
    // echelon form makes the basis canonical
    Echelon e = hermite(S);
    return IntMatrix(e.H.begin(), e.H.begin() + e.rank);
}

Int gcd_all(const std::vector<Int>& v) {
    Int g = 0;
    for (const auto& x : v) g = boost::integer::gcd(g, x < 0 ? Int(-x) : x);
    return g;
}

IntMatrix integral_rows(const QMatrix& rows) {
    IntMatrix out;
    for (const auto& r : rows) {
        Int l = 1;
        for (const auto& x : r) l = boost::integer::lcm(l, Int(denominator(x)));
        std::vector<Int> v;
        for (const auto& x : r) v.push_back(numerator(x) * (l / denominator(x)));
        Int g = gcd_all(v);
        if (g > 1)
            for (auto& x : v) x /= g;
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace dimflow
