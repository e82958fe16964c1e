#include "dimflow/repweights.hpp"

#include "dimflow/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dimflow {

namespace {

QVec dominant_std(const RootSystem& rs, QVec v) {
    // repeatedly reflect in simple roots with negative pairing
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& a : rs.simple_std) {
            Rational p = rs.pairing(v, a);
            if (p < 0) {
                v = v - p * to_qvec(a);
                changed = true;
            }
        }
    }
    return v;
}

std::vector<QVec> orbit_std(const RootSystem& rs, const QVec& mu) {
    std::set<QVec> seen{mu};
    std::vector<QVec> stack{mu};
    while (!stack.empty()) {
        QVec v = stack.back();
        stack.pop_back();
        for (const auto& a : rs.simple_std) {
            Rational p = rs.pairing(v, a);
            if (p == 0) continue;
            QVec w = v - p * to_qvec(a);
            if (seen.insert(w).second) stack.push_back(w);
        }
    }
    return {seen.begin(), seen.end()};
}

bool below(const RootSystem& rs, const QVec& lambda, const QVec& mu, Rational* level) {
    QVec diff = lambda - mu;
    Rational total = 0;
    QVec recon(rs.ambient, 0);
    for (int i = 0; i < rs.rank; ++i) {
        Rational c = 2 * dot(diff, rs.fundamental_std[i]) / dot(rs.simple_std[i], to_qvec(rs.simple_std[i]));
        if (c < 0 || denominator(c) != 1) return false;
        total += c;
        recon = recon + c * to_qvec(rs.simple_std[i]);
    }
    if (recon != diff) return false;
    if (level) *level = total;
    return true;
}

}  // namespace

Int weyl_dim(const RootSystem& rs, const IVec& labels) {
    if (static_cast<int>(labels.size()) != rs.rank)
        throw Error(Errc::DimensionMismatch, "wrong number of Dynkin labels");
    QVec lam(rs.ambient, 0), rho(rs.ambient, 0);
    for (int i = 0; i < rs.rank; ++i) {
        if (labels[i] < 0) throw Error(Errc::NonDominantWeight, "negative Dynkin label");
        lam = lam + Rational(labels[i]) * rs.fundamental_std[i];
        rho = rho + rs.fundamental_std[i];
    }
    Rational d = 1;
    for (const auto& a : rs.positive_std) d *= dot(a, lam + rho) / dot(a, rho);
    if (denominator(d) != 1) throw Error(Errc::NonDominantWeight, "non-integral dimension");
    return numerator(d);
}

Int weyl_dim(const OrientedRootSystem& ors, const QVec& lambda0) {
    return weyl_dim(ors.base, ors.dominant_labels(lambda0));
}

WeightSystem weight_system(const OrientedRootSystem& ors, const QVec& lambda0, const Int& dim_cap) {
    WeightSystem ws;
    ws.highest = lambda0;
    ws.labels = ors.dominant_labels(lambda0);
    ws.dim_V = weyl_dim(ors.base, ws.labels);
    if (ws.dim_V > dim_cap)
        throw Error(Errc::DimensionCapExceeded, "dim V = " + ws.dim_V.str() + " exceeds cap");
    const RootSystem& rs = ors.base;
    WeylElement back = ors.chamber.inverse();
    QVec lam = back.apply(lambda0);

    // dominant weights below lambda, with their depth
    std::map<QVec, Rational> level{{lam, Rational(0)}};
    std::vector<QVec> frontier{lam};
    while (!frontier.empty()) {
        std::vector<QVec> next;
        for (const auto& mu : frontier)
            for (const auto& a : rs.positive_std) {
                QVec nu = mu - to_qvec(a);
                bool dominant = true;
                for (const auto& s : rs.simple_std)
                    if (rs.pairing(nu, s) < 0) dominant = false;
                if (!dominant || level.count(nu)) continue;
                Rational lv;
                if (!below(rs, lam, nu, &lv)) continue;
                level[nu] = lv;
                next.push_back(nu);
            }
        frontier = std::move(next);
    }
    std::vector<QVec> order;
    for (const auto& [mu, lv] : level) order.push_back(mu);
    std::stable_sort(order.begin(), order.end(),
                     [&](const QVec& a, const QVec& b) { return level[a] < level[b]; });

    QVec rho(rs.ambient, 0);
    for (const auto& w : rs.fundamental_std) rho = rho + w;
    Rational top = dot(lam + rho, lam + rho);
    std::map<QVec, Rational> mult;
    mult[lam] = 1;
    for (size_t idx = 1; idx < order.size(); ++idx) {
        const QVec& mu = order[idx];
        Rational sum = 0;
        for (const auto& a : rs.positive_std) {
            QVec aq = to_qvec(a);
            QVec nu = mu + aq;
            while (true) {
                auto it = mult.find(dominant_std(rs, nu));
                if (it == mult.end()) break;
                sum += it->second * dot(nu, aq);
                nu = nu + aq;
            }
        }
        Rational denom = top - dot(mu + rho, mu + rho);
        Rational m = 2 * sum / denom;
        if (denominator(m) != 1 || m < 0)
            throw Error(Errc::NonDominantWeight, "internal: non-integral multiplicity");
        if (m > 0) mult[mu] = m;
    }

    Int total = 0;
    for (const auto& [mu, m] : mult)
        for (const auto& v : orbit_std(rs, mu)) {
            int mi = static_cast<int>(numerator(m));
            ws.weights[ors.chamber.apply(v)] = mi;
            total += mi;
        }
    if (total != ws.dim_V)
        throw Error(Errc::DimensionCapExceeded,
                    "internal: Freudenthal total " + total.str() + " != Weyl " + ws.dim_V.str());
    ws.dim_V_beta0 = ws.weights.at(lambda0);
    ws.parabolic = parabolic_from_weight(ors, lambda0);
    return ws;
}

std::optional<Rational> kappa(const WeightSystem& ws) {
    if (ws.parabolic.opposite_nilradical.empty()) return std::nullopt;
    QVec sum(ws.highest.size(), 0);
    for (const auto& a : ws.parabolic.opposite_nilradical) sum = sum + to_qvec(a);
    Rational ss = dot(sum, sum);
    if (ss == 0) return std::nullopt;
    Rational k = dot(ws.highest, sum) / ss;
    if (k * sum != ws.highest) return std::nullopt;
    return k;
}

std::string weights_csv(const WeightSystem& ws) {
    std::ostringstream os;
    for (size_t i = 0; i < ws.highest.size(); ++i) os << "x" << i + 1 << ",";
    os << "multiplicity\n";
    for (const auto& [w, m] : ws.weights) {
        for (const auto& x : w) os << to_string(x) << ",";
        os << m << "\n";
    }
    return os.str();
}

int RepKind::d() const {
    switch (family) {
        case RepFamily::Standard: return n;
        case RepFamily::Adjoint: return n * n - 1;
        case RepFamily::Exterior: {
            long long c = 1;
            for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
            return static_cast<int>(c);
        }
    }
    return n;
}

void RepKind::validate() const {
    if (n < 2) throw Error(Errc::UnsupportedKind, "n must be >= 2");
    if (family == RepFamily::Exterior && (k < 1 || k > n - 1))
        throw Error(Errc::UnsupportedKind, "exterior power needs 1 <= k <= n-1");
}

std::string RepKind::str() const {
    switch (family) {
        case RepFamily::Standard: return "Standard(" + std::to_string(n) + ")";
        case RepFamily::Adjoint: return "Adjoint(" + std::to_string(n) + ")";
        case RepFamily::Exterior:
            return "Exterior(" + std::to_string(n) + "," + std::to_string(k) + ")";
    }
    return "?";
}

IVec RepKind::labels() const {
    IVec l(n - 1, 0);
    switch (family) {
        case RepFamily::Standard: l[0] = 1; break;
        case RepFamily::Adjoint: l[0] += 1; l[n - 2] += 1; break;
        case RepFamily::Exterior: l[k - 1] = 1; break;
    }
    return l;
}

RepKind parse_rep(const std::string& family, int n, int k) {
    RepKind r;
    if (family == "standard") r = RepKind::standard(n);
    else if (family == "adjoint") r = RepKind::adjoint(n);
    else if (family == "exterior") r = RepKind::exterior(n, k);
    else throw Error(Errc::UnsupportedKind, "rep family '" + family + "'");
    r.validate();
    return r;
}

std::vector<IVec> exterior_basis(int n, int k) {
    std::vector<IVec> out;
    IVec cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<std::pair<int, int>> adjoint_basis(int n) {
    std::vector<std::pair<int, int>> b;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) b.emplace_back(i, j);
    for (int i = 0; i + 1 < n; ++i) b.emplace_back(i, i);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) b.emplace_back(i, j);
    return b;
}

QMatrix rep_matrix(const RepKind& kind, const QMatrix& g) {
    kind.validate();
    if (static_cast<int>(g.size()) != kind.n)
        throw Error(Errc::DimensionMismatch, "g must be " + std::to_string(kind.n) + "x" +
                                                 std::to_string(kind.n));
    if (det(g) != 1) throw Error(Errc::NotUnimodular, "det(g) = " + to_string(det(g)));
    return rep_matrix_unchecked<Rational>(kind, g);
}

std::vector<Rational> flow_weights(const RepKind& kind, const FlowSpec& Y) {
    kind.validate();
    if (static_cast<int>(Y.Y.size()) != kind.n)
        throw Error(Errc::DimensionMismatch, "flow length must equal n");
    std::vector<Rational> out;
    switch (kind.family) {
        case RepFamily::Standard:
            out = Y.Y;
            break;
        case RepFamily::Exterior:
            for (const auto& I : exterior_basis(kind.n, kind.k)) {
                Rational s = 0;
                for (int i : I) s += Y.Y[i];
                out.push_back(s);
            }
            break;
        case RepFamily::Adjoint:
            for (auto [i, j] : adjoint_basis(kind.n)) out.push_back(i == j ? Rational(0) : Y.Y[i] - Y.Y[j]);
            break;
    }
    return out;
}

Rational beta0_a_minus1(const RepKind& kind, const FlowSpec& Y) {
    auto w = flow_weights(kind, Y);
    if (std::all_of(w.begin(), w.end(), [](const Rational& x) { return x == 0; }))
        throw Error(Errc::TrivialFlowOnV, "flow acts trivially on V");
    return -*std::min_element(w.begin(), w.end());
}

int beta0_index(const RepKind& kind, const FlowSpec& Y) {
    auto w = flow_weights(kind, Y);
    return static_cast<int>(std::min_element(w.begin(), w.end()) - w.begin());
}

}  // namespace dimflow
