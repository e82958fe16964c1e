#include "dimflow/rootsys.hpp"

#include "dimflow/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace dimflow {

namespace {

bool lex_positive(const IVec& a) {
    for (int x : a)
        if (x != 0) return x > 0;
    return false;
}

IVec unit(int n, int i, int s = 1) {
    IVec v(n, 0);
    v[i] = s;
    return v;
}

Rational norm2(const IVec& a) {
    Rational s = 0;
    for (int x : a) s += x * x;
    return s;
}

// Signed permutation v with v(z) in the standard closed dominant chamber.
WeylElement to_dominant(Series series, const QVec& z) {
    int n = static_cast<int>(z.size());
    WeylElement v = WeylElement::identity(n);
    std::vector<Rational> key(z);
    if (series != Series::A) {
        int negatives = 0;
        for (int i = 0; i < n; ++i)
            if (z[i] < 0) {
                v.sign[i] = -1;
                key[i] = -z[i];
                ++negatives;
            }
        if (series == Series::D && negatives % 2 == 1) {
            // keep the parity even: the smallest |z_i| absorbs the sign
            int imin = 0;
            for (int i = 1; i < n; ++i)
                if (key[i] < key[imin]) imin = i;
            v.sign[imin] = -v.sign[imin];
        }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return key[a] > key[b]; });
    for (int pos = 0; pos < n; ++pos) v.perm[order[pos]] = pos;
    return v;
}

QVec dominantize(Series series, const QVec& z) { return to_dominant(series, z).apply(z); }

}  // namespace

Series parse_series(const std::string& s) {
    if (s == "A" || s == "a") return Series::A;
    if (s == "B" || s == "b") return Series::B;
    if (s == "C" || s == "c") return Series::C;
    if (s == "D" || s == "d") return Series::D;
    throw Error(Errc::UnsupportedSeries, "series '" + s + "' (only A, B, C, D)");
}

char series_char(Series s) { return "ABCD"[static_cast<int>(s)]; }

std::string root_string(const IVec& alpha) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < alpha.size(); ++i) os << (i ? "," : "") << alpha[i];
    os << ')';
    return os.str();
}

bool RootSystem::is_root(const IVec& v) const {
    return std::binary_search(roots.begin(), roots.end(), v);
}

IVec RootSystem::coroot(const IVec& alpha) const {
    auto it = std::lower_bound(roots.begin(), roots.end(), alpha);
    if (it == roots.end() || *it != alpha)
        throw Error(Errc::DimensionMismatch, "not a root: " + root_string(alpha));
    return coroots[it - roots.begin()];
}

Rational RootSystem::pairing(const QVec& lambda, const IVec& alpha) const {
    return 2 * dot(alpha, lambda) / norm2(alpha);
}

RootSystem build_root_system(Series series, int rank) {
    if (rank < 1) throw Error(Errc::UnsupportedSeries, "rank must be >= 1");
    if (series == Series::D && rank < 3)
        throw Error(Errc::UnsupportedSeries, "type D needs rank >= 3");
    if ((series == Series::B || series == Series::C) && rank < 2)
        throw Error(Errc::UnsupportedSeries, "types B, C need rank >= 2");
    RootSystem rs;
    rs.series = series;
    rs.rank = rank;
    int n = series == Series::A ? rank + 1 : rank;
    rs.ambient = n;

    std::vector<IVec> pos;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            IVec v(n, 0);
            v[i] = 1;
            v[j] = -1;
            pos.push_back(v);
            if (series != Series::A) {
                v[j] = 1;
                pos.push_back(v);
            }
        }
    if (series == Series::B)
        for (int i = 0; i < n; ++i) pos.push_back(unit(n, i));
    if (series == Series::C)
        for (int i = 0; i < n; ++i) pos.push_back(unit(n, i, 2));

    for (const auto& a : pos) {
        rs.roots.push_back(a);
        IVec m(a);
        for (auto& x : m) x = -x;
        rs.roots.push_back(m);
    }
    std::sort(rs.roots.begin(), rs.roots.end());
    for (const auto& a : rs.roots) {
        // alpha^vee = 2 alpha / (alpha, alpha); integral in these realizations
        int nn = 0;
        for (int x : a) nn += x * x;
        IVec c(a);
        for (auto& x : c) x = 2 * x / nn;
        rs.coroots.push_back(c);
    }
    std::sort(pos.begin(), pos.end());
    rs.positive_std = pos;

    int r = rank;
    for (int i = 0; i + 1 < n && i < r; ++i) {
        IVec v(n, 0);
        v[i] = 1;
        v[i + 1] = -1;
        rs.simple_std.push_back(v);
    }
    if (series == Series::B) rs.simple_std.push_back(unit(n, n - 1));
    if (series == Series::C) rs.simple_std.push_back(unit(n, n - 1, 2));
    if (series == Series::D) {
        rs.simple_std.resize(n - 1);
        IVec v(n, 0);
        v[n - 2] = 1;
        v[n - 1] = 1;
        rs.simple_std.push_back(v);
    }

    for (int i = 0; i < r; ++i) {
        QVec w(n, 0);
        for (int j = 0; j <= i; ++j) w[j] = 1;
        if (series == Series::A) {
            Rational shift(i + 1, n);
            for (auto& x : w) x -= shift;
        }
        rs.fundamental_std.push_back(w);
    }
    if (series == Series::B)
        for (auto& x : rs.fundamental_std[n - 1]) x = Rational(1, 2);
    if (series == Series::D) {
        QVec a(n, Rational(1, 2)), b(n, Rational(1, 2));
        a[n - 1] = Rational(-1, 2);
        rs.fundamental_std[n - 2] = a;
        rs.fundamental_std[n - 1] = b;
    }
    return rs;
}

Rational FlowSpec::operator()(const IVec& alpha) const { return dot(alpha, Y); }
Rational FlowSpec::operator()(const QVec& lambda) const { return dot(lambda, Y); }

FlowSpec parse_flow(const std::string& s) {
    QVec y;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) y.push_back(parse_rational(tok));
    if (y.empty()) throw Error(Errc::InvalidConfig, "empty flow vector");
    return FlowSpec(y);
}

Rational eval_root(const IVec& alpha, const FlowSpec& flow) {
    if (alpha.size() != flow.Y.size())
        throw Error(Errc::DimensionMismatch, "root has " + std::to_string(alpha.size()) +
                                                 " coordinates, flow has " +
                                                 std::to_string(flow.Y.size()));
    return flow(alpha);
}

WeylElement WeylElement::identity(int n) {
    WeylElement w;
    w.perm.resize(n);
    std::iota(w.perm.begin(), w.perm.end(), 0);
    w.sign.assign(n, 1);
    return w;
}

IVec WeylElement::apply(const IVec& v) const {
    IVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[perm[i]] = sign[i] * v[i];
    return r;
}

QVec WeylElement::apply(const QVec& v) const {
    QVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[perm[i]] = sign[i] * v[i];
    return r;
}

WeylElement WeylElement::inverse() const {
    WeylElement w;
    w.perm.resize(perm.size());
    w.sign.resize(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) {
        w.perm[perm[i]] = static_cast<int>(i);
        w.sign[perm[i]] = sign[i];
    }
    return w;
}

WeylElement WeylElement::compose(const WeylElement& b) const {
    WeylElement w;
    size_t n = perm.size();
    w.perm.resize(n);
    w.sign.resize(n);
    for (size_t i = 0; i < n; ++i) {
        w.perm[i] = perm[b.perm[i]];
        w.sign[i] = b.sign[i] * sign[b.perm[i]];
    }
    return w;
}

bool WeylElement::is_identity() const { return *this == identity(static_cast<int>(perm.size())); }

std::string WeylElement::str() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < perm.size(); ++i)
        os << (i ? " " : "") << (sign[i] < 0 ? "-" : "") << perm[i] + 1;
    os << ']';
    return os.str();
}

bool OrientedRootSystem::is_positive(const IVec& alpha) const {
    return std::binary_search(positive.begin(), positive.end(), alpha);
}

std::vector<IVec> OrientedRootSystem::expanding() const {
    std::vector<IVec> out;
    for (const auto& a : positive) {
        IVec m(a);
        for (auto& x : m) x = -x;
        out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

QVec OrientedRootSystem::weight_from_labels(const IVec& labels) const {
    if (static_cast<int>(labels.size()) != base.rank)
        throw Error(Errc::DimensionMismatch, "expected " + std::to_string(base.rank) +
                                                 " Dynkin labels");
    QVec w(base.ambient, 0);
    for (int i = 0; i < base.rank; ++i) {
        if (labels[i] < 0) throw Error(Errc::NonDominantWeight, "negative Dynkin label");
        w = w + Rational(labels[i]) * fundamental[i];
    }
    return w;
}

IVec OrientedRootSystem::dominant_labels(const QVec& lambda) const {
    if (static_cast<int>(lambda.size()) != base.ambient)
        throw Error(Errc::DimensionMismatch, "weight has wrong length");
    IVec out;
    for (const auto& a : simple) {
        Rational p = base.pairing(lambda, a);
        if (denominator(p) != 1 || p < 0)
            throw Error(Errc::NonDominantWeight,
                        to_string(lambda) + " pairs to " + to_string(p) + " with " + root_string(a));
        out.push_back(static_cast<int>(numerator(p)));
    }
    if (base.series == Series::A) {
        Rational tr = 0;
        for (const auto& x : lambda) tr += x;
        if (tr != 0) throw Error(Errc::NonDominantWeight, "type A weights are trace-zero");
    } else {
        // lambda must lie in the span of the fundamental weights exactly
        QVec back(base.ambient, 0);
        for (int i = 0; i < base.rank; ++i) back = back + Rational(out[i]) * fundamental[i];
        if (back != lambda) throw Error(Errc::NonDominantWeight, "not an integral weight");
    }
    return out;
}

OrientedRootSystem orient_to_flow(const RootSystem& rs, const FlowSpec& flow) {
    if (static_cast<int>(flow.Y.size()) != rs.ambient)
        throw Error(Errc::DimensionMismatch, "flow has " + std::to_string(flow.Y.size()) +
                                                 " coordinates, expected " +
                                                 std::to_string(rs.ambient));
    if (rs.series == Series::A) {
        Rational tr = 0;
        for (const auto& y : flow.Y) tr += y;
        if (tr != 0) throw Error(Errc::DimensionMismatch, "type A flow must have trace zero");
    }
    if (flow.trivial()) throw Error(Errc::TrivialFlow, "Y = 0");

    OrientedRootSystem ors;
    ors.base = rs;
    ors.flow = flow;
    for (const auto& a : rs.roots) {
        Rational y = flow(a);
        if (y < 0 || (y == 0 && lex_positive(a))) ors.positive.push_back(a);
    }

    // A regular vector in the open chamber of `positive`: Z = K(-Y) + L with
    // L lexicographically dominant and K large enough that Y wins off walls.
    int n = rs.ambient;
    QVec L(n);
    Rational p = 1;
    for (int i = n - 1; i >= 0; --i, p *= 4) L[i] = p;
    Rational lmax = 0, ymin = -1;
    for (const auto& a : rs.roots) {
        Rational l = abs(dot(a, L));
        Rational y = abs(flow(a));
        if (l > lmax) lmax = l;
        if (y != 0 && (ymin < 0 || y < ymin)) ymin = y;
    }
    Rational K = ymin > 0 ? Rational(lmax / ymin + 1) : Rational(0);
    QVec Z(n);
    for (int i = 0; i < n; ++i) Z[i] = -K * flow.Y[i] + L[i];
    ors.chamber = to_dominant(rs.series, Z).inverse();

    std::vector<IVec> image;
    for (const auto& a : rs.positive_std) image.push_back(ors.chamber.apply(a));
    std::sort(image.begin(), image.end());
    if (image != ors.positive)
        throw Error(Errc::UnsupportedSeries, "internal: chamber element does not match");
    for (const auto& a : rs.simple_std) ors.simple.push_back(ors.chamber.apply(a));
    for (const auto& w : rs.fundamental_std) ors.fundamental.push_back(ors.chamber.apply(w));
    return ors;
}

std::vector<Rational> simple_coefficients(const OrientedRootSystem& ors, const QVec& beta) {
    std::vector<Rational> c;
    for (int i = 0; i < ors.base.rank; ++i) {
        const auto& a = ors.simple[i];
        c.push_back(2 * dot(beta, ors.fundamental[i]) / norm2(a));
    }
    // verify the expansion reproduces beta (it fails off the root span)
    QVec back(ors.base.ambient, 0);
    for (int i = 0; i < ors.base.rank; ++i) back = back + c[i] * to_qvec(ors.simple[i]);
    if (back != beta) return {};
    return c;
}

bool is_weight_of(const OrientedRootSystem& ors, const QVec& lambda, const QVec& mu) {
    WeylElement back = ors.chamber.inverse();
    QVec ls = back.apply(lambda);
    QVec ms = dominantize(ors.base.series, back.apply(mu));
    QVec diff = ls - ms;
    const auto& rs = ors.base;
    QVec recon(rs.ambient, 0);
    for (int i = 0; i < rs.rank; ++i) {
        Rational c = 2 * dot(diff, rs.fundamental_std[i]) / norm2(rs.simple_std[i]);
        if (c < 0 || denominator(c) != 1) return false;
        recon = recon + c * to_qvec(rs.simple_std[i]);
    }
    return recon == diff;
}

namespace {

ParabolicData finish_parabolic(const OrientedRootSystem& ors, const std::vector<IVec>& nil) {
    ParabolicData p;
    p.nilradical = nil;
    std::sort(p.nilradical.begin(), p.nilradical.end());
    for (const auto& a : ors.positive) {
        if (std::binary_search(p.nilradical.begin(), p.nilradical.end(), a)) continue;
        p.levi_roots.push_back(a);
        IVec m(a);
        for (auto& x : m) x = -x;
        p.levi_roots.push_back(m);
    }
    std::sort(p.levi_roots.begin(), p.levi_roots.end());
    for (const auto& s : ors.simple)
        if (std::binary_search(p.levi_roots.begin(), p.levi_roots.end(), s))
            p.levi_simple.push_back(s);
    for (const auto& a : p.nilradical) {
        IVec m(a);
        for (auto& x : m) x = -x;
        p.opposite_nilradical.push_back(m);
    }
    std::sort(p.opposite_nilradical.begin(), p.opposite_nilradical.end());
    return p;
}

}  // namespace

ParabolicData parabolic_from_weight(const OrientedRootSystem& ors, const QVec& lambda0) {
    ors.dominant_labels(lambda0);
    std::vector<IVec> nil;
    for (const auto& a : ors.positive)
        if (is_weight_of(ors, lambda0, lambda0 - to_qvec(a))) nil.push_back(a);
    return finish_parabolic(ors, nil);
}

ParabolicData parabolic_from_labels(const OrientedRootSystem& ors, const QVec& lambda0) {
    IVec labels = ors.dominant_labels(lambda0);
    // alpha positive lies in the nilradical iff it involves a simple root
    // with a nonzero label
    std::vector<IVec> nil;
    for (const auto& a : ors.positive) {
        auto c = simple_coefficients(ors, to_qvec(a));
        for (int i = 0; i < ors.base.rank; ++i)
            if (c[i] != 0 && labels[i] != 0) {
                nil.push_back(a);
                break;
            }
    }
    return finish_parabolic(ors, nil);
}

std::size_t weyl_order(const RootSystem& rs) {
    std::size_t f = 1;
    for (int i = 2; i <= rs.ambient; ++i) f *= i;
    if (rs.series == Series::A) return f;
    std::size_t s = std::size_t(1) << rs.ambient;
    if (rs.series == Series::D) s /= 2;
    return f * s;
}

std::vector<WeylElement> weyl_elements(const RootSystem& rs, std::size_t cap) {
    std::size_t order = weyl_order(rs);
    if (order > cap)
        throw Error(Errc::GroupTooLarge, "|W| = " + std::to_string(order) + " exceeds cap " +
                                             std::to_string(cap));
    int n = rs.ambient;
    std::vector<WeylElement> out;
    out.reserve(order);
    IVec perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    int nsigns = rs.series == Series::A ? 1 : (1 << n);
    // identity first: sign mask 0 with the identity permutation
    do {
        for (int mask = 0; mask < nsigns; ++mask) {
            if (rs.series == Series::D && __builtin_popcount(mask) % 2) continue;
            WeylElement w;
            w.perm = perm;
            w.sign.assign(n, 1);
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) w.sign[i] = -1;
            out.push_back(w);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<IVec> f_w_roots(const OrientedRootSystem& ors, const ParabolicData& p,
                            const WeylElement& w) {
    std::vector<IVec> out;
    for (const auto& a : ors.expanding())
        if (std::binary_search(p.opposite_nilradical.begin(), p.opposite_nilradical.end(),
                               w.apply(a)))
            out.push_back(a);
    return out;
}

Nu0 nu0(const OrientedRootSystem& ors) {
    Nu0 best;
    bool have = false;
    for (const auto& a : ors.expanding()) {  // sorted, so first max is lex-smallest
        Rational v = ors.flow(a);
        if (!have || v > best.value) {
            best = {a, v};
            have = true;
        }
    }
    if (!have || best.value <= 0)
        throw Error(Errc::TrivialFlow, "flow centralizes the expanding horospherical group");
    return best;
}

std::string serialize(const OrientedRootSystem& ors) {
    std::ostringstream os;
    os << "series = " << series_char(ors.base.series) << "\n";
    os << "rank = " << ors.base.rank << "\n";
    os << "flow = ";
    for (size_t i = 0; i < ors.flow.Y.size(); ++i) os << (i ? "," : "") << to_string(ors.flow.Y[i]);
    os << "\n";
    return os.str();
}

OrientedRootSystem deserialize_oriented(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::InvalidConfig, "line " + std::to_string(lineno) + ": expected key = value");
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    for (const char* key : {"series", "rank", "flow"})
        if (!kv.count(key)) throw Error(Errc::InvalidConfig, std::string("missing field '") + key + "'");
    int rank = 0;
    try {
        rank = std::stoi(kv["rank"]);
    } catch (const std::exception&) {
        throw Error(Errc::InvalidConfig, "field 'rank': not an integer");
    }
    return orient_to_flow(build_root_system(parse_series(kv["series"]), rank), parse_flow(kv["flow"]));
}

}  // namespace dimflow
