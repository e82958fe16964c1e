#include "dimflow/rational.hpp"

#include "dimflow/error.hpp"

#include <cmath>
#include <sstream>

namespace dimflow {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::UnsupportedSeries: return "UnsupportedSeries";
        case Errc::TrivialFlow: return "TrivialFlow";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NonDominantWeight: return "NonDominantWeight";
        case Errc::GroupTooLarge: return "GroupTooLarge";
        case Errc::DimensionCapExceeded: return "DimensionCapExceeded";
        case Errc::NotUnimodular: return "NotUnimodular";
        case Errc::TrivialFlowOnV: return "TrivialFlowOnV";
        case Errc::NegativeTau: return "NegativeTau";
        case Errc::ConditionFailed: return "ConditionFailed";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::NoAdmissibleWeylTerm: return "NoAdmissibleWeylTerm";
        case Errc::ZeroKappa: return "ZeroKappa";
        case Errc::DegenerateSequence: return "DegenerateSequence";
        case Errc::BadIndices: return "BadIndices";
        case Errc::DimensionGuard: return "DimensionGuard";
        case Errc::SingularBasis: return "SingularBasis";
        case Errc::ShortTrajectory: return "ShortTrajectory";
        case Errc::NonUnipotentInput: return "NonUnipotentInput";
        case Errc::UnsupportedKind: return "UnsupportedKind";
        case Errc::MonteCarloGuard: return "MonteCarloGuard";
        case Errc::TooFewPoints: return "TooFewPoints";
        case Errc::NonPrimitiveBasis: return "NonPrimitiveBasis";
        case Errc::ZeroVector: return "ZeroVector";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::NoAdmissibleVector: return "NoAdmissibleVector";
        case Errc::OutsideFamily: return "OutsideFamily";
        case Errc::InvalidConfig: return "InvalidConfig";
        case Errc::UnknownSuite: return "UnknownSuite";
    }
    return "Unknown";
}

Rational parse_rational(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw Error(Errc::InvalidConfig, "empty number");
    auto bad = [&] { return Error(Errc::InvalidConfig, "not an exact number: '" + raw + "'"); };
    auto parse_int = [&](const std::string& t) -> Int {
        if (t.empty()) throw bad();
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw bad();
        for (size_t j = i; j < t.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(t[j]))) throw bad();
        Int v(t.substr(i));
        return t[0] == '-' ? Int(-v) : v;
    };
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int den = parse_int(s.substr(slash + 1));
        if (den == 0) throw Error(Errc::InvalidConfig, "zero denominator in '" + raw + "'");
        return Rational(parse_int(s.substr(0, slash)), den);
    }
    auto dotp = s.find('.');
    if (dotp == std::string::npos) return Rational(parse_int(s));
    std::string ip = s.substr(0, dotp), fp = s.substr(dotp + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
    if (ip.empty()) ip = "0";
    if (fp.empty()) throw bad();
    Int whole = parse_int(ip), frac = parse_int(fp);
    Int scale = 1;
    for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
    Rational q(whole * scale + frac, scale);
    return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << '/' << denominator(q);
    return os.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational from_double(double x) {
    if (!std::isfinite(x)) throw Error(Errc::InvalidConfig, "non-finite value");
    int e = 0;
    double m = std::frexp(x, &e);
    // m * 2^53 is an integer
    auto mi = static_cast<long long>(std::ldexp(m, 53));
    Rational r(mi);
    int shift = e - 53;
    Int p = 1;
    p <<= std::abs(shift);
    return shift >= 0 ? Rational(r * p) : Rational(r / p);
}

Rational dot(const QVec& a, const QVec& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const IVec& a, const QVec& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i]) s += a[i] * b[i];
    return s;
}

QVec to_qvec(const IVec& v) { return QVec(v.begin(), v.end()); }

QVec operator+(const QVec& a, const QVec& b) {
    QVec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

QVec operator-(const QVec& a, const QVec& b) {
    QVec r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

QVec operator*(const Rational& s, const QVec& a) {
    QVec r(a);
    for (auto& x : r) x *= s;
    return r;
}

bool is_zero(const QVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

std::string to_string(const QVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + ")";
}

QMatrix identity_q(int n) {
    QMatrix m(n, QVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

QMatrix matmul(const QMatrix& a, const QMatrix& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    QMatrix r(n, QVec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

Rational det(QMatrix m) {
    size_t n = m.size();
    Rational d = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return d;
}

QMatrix inverse(const QMatrix& in) {
    size_t n = in.size();
    QMatrix m(in), inv = identity_q(static_cast<int>(n));
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw Error(Errc::SingularBasis, "matrix is singular");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        Rational piv = m[c][c];
        for (size_t j = 0; j < n; ++j) {
            m[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

}  // namespace dimflow
