#pragma once

#include "dimflow/error.hpp"
#include "dimflow/rational.hpp"
#include "dimflow/repweights.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace dimflow {

// Lattices are stored by rows: row i is the i-th basis vector.
enum class Precision { Exact, Double, High };
const char* precision_name(Precision p);

struct LatticeBasis {
    Precision precision = Precision::Double;
    QMatrix exact;
    Mat<double> dbl;
    Mat<HighReal> high;

    static LatticeBasis rational(QMatrix rows);
    static LatticeBasis of_double(Mat<double> rows);
    static LatticeBasis of_high(Mat<HighReal> rows);

    int dim() const;
    double covolume() const;
    Rational covolume_exact() const;  // Exact only
    Mat<HighReal> as_high() const;
};

constexpr int kMaxLatticeDim = 24;

namespace detail {

inline double to_dbl(double x) { return x; }
inline double to_dbl(const HighReal& x) { return x.convert_to<double>(); }
inline double to_dbl(const Rational& x) { return to_double(x); }

inline Int round_int(double x) { return Int(static_cast<long long>(std::nearbyint(x))); }
inline Int round_int(const HighReal& x) { return boost::multiprecision::round(x).convert_to<Int>(); }
inline Int round_int(const Rational& x) {
    Int num = numerator(x) * 2 + denominator(x), den = denominator(x) * 2;
    Int q = num / den;
    if (num < 0 && q * den != num) q -= 1;
    return q;
}

template <class T>
T from_int(const Int& v) {
    if constexpr (std::is_same_v<T, double>) return v.template convert_to<double>();
    else return T(v);
}

template <class T>
T dot_row(const std::vector<T>& a, const std::vector<T>& b) {
    T s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

template <class T>
void gram_schmidt(const Mat<T>& b, Mat<T>& mu, std::vector<T>& bs2) {
    size_t n = b.size();
    Mat<T> bs(b);
    mu.assign(n, std::vector<T>(n, T(0)));
    bs2.assign(n, T(0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < i; ++j) {
            mu[i][j] = dot_row(b[i], bs[j]) / bs2[j];
            for (size_t c = 0; c < bs[i].size(); ++c) bs[i][c] -= mu[i][j] * bs[j][c];
        }
        mu[i][i] = T(1);
        bs2[i] = dot_row(bs[i], bs[i]);
    }
}

}  // namespace detail

// LLL with parameter 0.99. When U is given it accumulates the unimodular
// transform: reduced rows = U * input rows.
template <class T>
void lll_reduce(Mat<T>& b, Mat<Int>* U = nullptr) {
    size_t n = b.size();
    if (U) {
        U->assign(n, std::vector<Int>(n, Int(0)));
        for (size_t i = 0; i < n; ++i) (*U)[i][i] = 1;
    }
    if (n < 2) return;
    const T delta = T(99) / T(100);
    Mat<T> mu;
    std::vector<T> bs2;
    detail::gram_schmidt(b, mu, bs2);
    size_t k = 1;
    size_t guard = 0;
    while (k < n) {
        if (++guard > 1000000) throw Error(Errc::SingularBasis, "LLL did not terminate");
        for (size_t jj = k; jj-- > 0;) {
            Int q = detail::round_int(mu[k][jj]);
            if (q == 0) continue;
            T qt = detail::from_int<T>(q);
            for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= qt * b[jj][c];
            if (U)
                for (size_t c = 0; c < n; ++c) (*U)[k][c] -= q * (*U)[jj][c];
            for (size_t l = 0; l < jj; ++l) mu[k][l] -= qt * mu[jj][l];
            mu[k][jj] -= qt;
        }
        if (bs2[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bs2[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            if (U) std::swap((*U)[k], (*U)[k - 1]);
            detail::gram_schmidt(b, mu, bs2);
            k = k > 1 ? k - 1 : 1;
        }
    }
}

template <class T>
struct ShortVector {
    std::vector<long long> coeffs;  // on the rows passed to enumerate_short
    T norm2;
};

// Fincke-Pohst / Schnorr-Euchner enumeration of nonzero lattice vectors with
// squared norm <= radius2, one per +-pair (topmost nonzero coefficient > 0).
// With shrink set the radius tightens to (1 + slack) times the best norm
// found, so the result contains every vector within that factor of the
// minimum.
template <class T>
std::vector<ShortVector<T>> enumerate_short(const Mat<T>& b, T radius2, bool shrink,
                                            double slack = 0.0, std::size_t max_count = 50000000) {
    int n = static_cast<int>(b.size());
    Mat<T> mu;
    std::vector<T> bs2;
    detail::gram_schmidt(b, mu, bs2);
    std::vector<ShortVector<T>> out;
    std::vector<long long> x(n, 0);
    std::vector<T> partial(n + 1, T(0));
    T R = radius2;
    T best = radius2;
    bool have = false;
    std::size_t visited = 0;
    auto rec = [&](auto&& self, int i, bool zero_above) -> void {
        T c(0);
        for (int j = i + 1; j < n; ++j) c -= T(x[j]) * mu[j][i];
        T room = R - partial[i + 1];
        if (room < 0) return;
        double cd = detail::to_dbl(c);
        double w = std::sqrt(std::max(0.0, detail::to_dbl(room / bs2[i]))) * (1 + 1e-12) + 1e-9;
        long long lo = static_cast<long long>(std::ceil(cd - w));
        long long hi = static_cast<long long>(std::floor(cd + w));
        if (zero_above) lo = std::max(lo, 0LL);
        for (long long v = lo; v <= hi; ++v) {
            if (zero_above && i == 0 && v == 0) continue;
            T diff = T(v) - c;
            T l = partial[i + 1] + diff * diff * bs2[i];
            if (l > R) continue;
            x[i] = v;
            partial[i] = l;
            if (++visited > max_count) throw Error(Errc::BudgetExceeded, "enumeration budget exceeded");
            if (i == 0) {
                out.push_back({x, l});
                if (shrink && (!have || l < best)) {
                    best = l;
                    have = true;
                    T tight = best * T(1 + slack);
                    if (tight < R) R = tight;
                }
            } else {
                self(self, i - 1, zero_above && v == 0);
            }
        }
        x[i] = 0;
    };
    if (n > 0) rec(rec, n - 1, true);
    if (shrink && have) {
        std::vector<ShortVector<T>> kept;
        for (auto& s : out)
            if (s.norm2 <= R) kept.push_back(std::move(s));
        out.swap(kept);
    }
    return out;
}

// Squared first minimum of a floating-point lattice.
template <class T>
T shortest_norm2(Mat<T> b) {
    int n = static_cast<int>(b.size());
    if (n == 0) throw Error(Errc::SingularBasis, "empty basis");
    if (n > kMaxLatticeDim) throw Error(Errc::DimensionGuard, "d = " + std::to_string(n) + " > 24");
    lll_reduce(b);
    T r = detail::dot_row(b[0], b[0]);
    for (const auto& row : b) r = std::min(r, detail::dot_row(row, row));
    if (!(r > 0)) throw Error(Errc::SingularBasis, "zero vector in basis");
    auto v = enumerate_short(b, r, true);
    for (const auto& s : v) r = std::min(r, s.norm2);
    return r;
}

// Exact squared first minimum of a rational lattice: exact LLL, then a
// high-precision enumeration with a safety margin whose candidates are
// re-evaluated exactly.
Rational first_min_sq(const QMatrix& rows);
double first_min(const LatticeBasis& lattice);

// All vectors of norm^2 <= bound2 as integer coefficient vectors on the
// original rows (one per +- pair), sorted by norm.
struct LatticeVector {
    std::vector<Int> coeffs;
    HighReal norm2;
};
std::vector<LatticeVector> vectors_within(const Mat<HighReal>& rows, const HighReal& bound2,
                                          std::size_t max_count = 50000000);

}  // namespace dimflow
