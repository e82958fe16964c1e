#include "dimflow/lattice.hpp"

#include <algorithm>

namespace dimflow {

const char* precision_name(Precision p) {
    switch (p) {
        case Precision::Exact: return "exact";
        case Precision::Double: return "double";
        case Precision::High: return "high";
    }
    return "?";
}

namespace {

template <class M>
void check_square(const M& rows) {
    size_t n = rows.size();
    if (n == 0) throw Error(Errc::SingularBasis, "empty basis");
    if (n > kMaxLatticeDim) throw Error(Errc::DimensionGuard, "d = " + std::to_string(n) + " > 24");
    for (const auto& r : rows)
        if (r.size() != n) throw Error(Errc::DimensionMismatch, "basis must be square");
}

}  // namespace

LatticeBasis LatticeBasis::rational(QMatrix rows) {
    check_square(rows);
    if (det(rows) == 0) throw Error(Errc::SingularBasis, "basis is singular");
    LatticeBasis b;
    b.precision = Precision::Exact;
    b.exact = std::move(rows);
    return b;
}

LatticeBasis LatticeBasis::of_double(Mat<double> rows) {
    check_square(rows);
    LatticeBasis b;
    b.precision = Precision::Double;
    b.dbl = std::move(rows);
    if (b.covolume() == 0) throw Error(Errc::SingularBasis, "basis is singular");
    return b;
}

LatticeBasis LatticeBasis::of_high(Mat<HighReal> rows) {
    check_square(rows);
    LatticeBasis b;
    b.precision = Precision::High;
    b.high = std::move(rows);
    if (b.covolume() == 0) throw Error(Errc::SingularBasis, "basis is singular");
    return b;
}

int LatticeBasis::dim() const {
    switch (precision) {
        case Precision::Exact: return static_cast<int>(exact.size());
        case Precision::Double: return static_cast<int>(dbl.size());
        case Precision::High: return static_cast<int>(high.size());
    }
    return 0;
}

double LatticeBasis::covolume() const {
    switch (precision) {
        case Precision::Exact: return std::abs(to_double(det(exact)));
        case Precision::Double: return std::abs(mat_det(dbl));
        case Precision::High: return std::abs(mat_det(high).convert_to<double>());
    }
    return 0;
}

Rational LatticeBasis::covolume_exact() const {
    if (precision != Precision::Exact) throw Error(Errc::InvalidConfig, "covolume_exact needs an exact basis");
    return abs(det(exact));
}

Mat<HighReal> LatticeBasis::as_high() const {
    switch (precision) {
        case Precision::High: return high;
        case Precision::Double: {
            Mat<HighReal> m(dbl.size());
            for (size_t i = 0; i < dbl.size(); ++i)
                for (double v : dbl[i]) m[i].push_back(HighReal(v));
            return m;
        }
        case Precision::Exact: {
            Mat<HighReal> m(exact.size());
            for (size_t i = 0; i < exact.size(); ++i)
                for (const auto& v : exact[i]) m[i].push_back(HighReal(numerator(v)) / HighReal(denominator(v)));
            return m;
        }
    }
    return {};
}

Rational first_min_sq(const QMatrix& rows) {
    check_square(rows);
    if (det(rows) == 0) throw Error(Errc::SingularBasis, "basis is singular");
    QMatrix b = rows;
    lll_reduce(b);
    Mat<HighReal> h = LatticeBasis{Precision::Exact, b, {}, {}}.as_high();
    Rational best = detail::dot_row(b[0], b[0]);
    for (const auto& r : b) best = std::min(best, detail::dot_row(r, r));
    HighReal radius = HighReal(numerator(best)) / HighReal(denominator(best));
    // margin far above the working precision: no true minimum is missed
    auto cands = enumerate_short(h, radius * HighReal(1 + 1e-20), true, 1e-20);
    for (const auto& c : cands) {
        QVec v(b.size(), 0);
        for (size_t i = 0; i < b.size(); ++i)
            if (c.coeffs[i] != 0)
                for (size_t j = 0; j < v.size(); ++j) v[j] += Rational(c.coeffs[i]) * b[i][j];
        best = std::min(best, dot(v, v));
    }
    return best;
}

double first_min(const LatticeBasis& lattice) {
    switch (lattice.precision) {
        case Precision::Exact: return std::sqrt(to_double(first_min_sq(lattice.exact)));
        case Precision::Double: return std::sqrt(shortest_norm2(lattice.dbl));
        case Precision::High: return boost::multiprecision::sqrt(shortest_norm2(lattice.high)).convert_to<double>();
    }
    return 0;
}

std::vector<LatticeVector> vectors_within(const Mat<HighReal>& rows, const HighReal& bound2,
                                          std::size_t max_count) {
    check_square(rows);
    Mat<HighReal> b = rows;
    Mat<Int> U;
    lll_reduce(b, &U);
    auto found = enumerate_short(b, bound2, false, 0.0, max_count);
    std::vector<LatticeVector> out;
    size_t n = b.size();
    for (const auto& s : found) {
        LatticeVector v;
        v.coeffs.assign(n, Int(0));
        for (size_t i = 0; i < n; ++i)
            if (s.coeffs[i] != 0)
                for (size_t j = 0; j < n; ++j) v.coeffs[j] += s.coeffs[i] * U[i][j];
        v.norm2 = s.norm2;
        out.push_back(std::move(v));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const LatticeVector& a, const LatticeVector& c) { return a.norm2 < c.norm2; });
    return out;
}

}  // namespace dimflow
