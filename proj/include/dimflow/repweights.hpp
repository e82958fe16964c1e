#pragma once

#include "dimflow/rational.hpp"
#include "dimflow/rootsys.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dimflow {

struct WeightSystem {
    QVec highest;                 // lambda0 = beta0, oriented frame
    IVec labels;                  // Dynkin labels of lambda0
    std::map<QVec, int> weights;  // weight -> multiplicity
    Int dim_V = 0;
    int dim_V_beta0 = 1;
    ParabolicData parabolic;
};

// Freudenthal recursion in exact arithmetic; dim_V is cross-checked against
// the Weyl dimension formula.
WeightSystem weight_system(const OrientedRootSystem& ors, const QVec& lambda0,
                           const Int& dim_cap = Int(1000000));
Int weyl_dim(const RootSystem& rs, const IVec& labels);
Int weyl_dim(const OrientedRootSystem& ors, const QVec& lambda0);

// beta0 = kappa * sum of Phi(R_u(Pbar_beta0)), or nothing when not proportional.
std::optional<Rational> kappa(const WeightSystem& ws);

// weights as CSV rows "x1,...,xn,multiplicity", header included
std::string weights_csv(const WeightSystem& ws);

enum class RepFamily { Standard, Adjoint, Exterior };

struct RepKind {
    RepFamily family = RepFamily::Standard;
    int n = 2;
    int k = 1;

    static RepKind standard(int n) { return {RepFamily::Standard, n, 1}; }
    static RepKind adjoint(int n) { return {RepFamily::Adjoint, n, 1}; }
    static RepKind exterior(int n, int k) { return {RepFamily::Exterior, n, k}; }
    int d() const;
    void validate() const;
    std::string str() const;
    // Dynkin labels of the highest weight for A_{n-1}
    IVec labels() const;
};

RepKind parse_rep(const std::string& family, int n, int k);

// Exterior basis: k-subsets of {0..n-1} in lexicographic order.
std::vector<IVec> exterior_basis(int n, int k);
// Adjoint basis: E_ij (i<j) lex, then H_1..H_{n-1} (H_i = E_ii - E_{i+1,i+1}),
// then E_ij (i>j) lex. Entry: {i, j} with i == j meaning H_{i+1}.
std::vector<std::pair<int, int>> adjoint_basis(int n);

template <class T>
using Mat = std::vector<std::vector<T>>;

template <class T>
Mat<T> identity_mat(int n) {
    Mat<T> m(n, std::vector<T>(n, T(0)));
    for (int i = 0; i < n; ++i) m[i][i] = T(1);
    return m;
}

template <class T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Mat<T> r(n, std::vector<T>(m, T(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

template <class T>
T mat_det(Mat<T> m) {
    size_t n = m.size();
    T d(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        for (size_t r = c + 1; r < n; ++r)
            if (abs(m[r][c]) > abs(m[p][c])) p = r;
        if (m[p][c] == 0) return T(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            T f = m[r][c] / m[c][c];
            for (size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return d;
}

template <class T>
Mat<T> mat_inverse(const Mat<T>& in) {
    size_t n = in.size();
    Mat<T> m(in), inv = identity_mat<T>(static_cast<int>(n));
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        for (size_t r = c + 1; r < n; ++r)
            if (abs(m[r][c]) > abs(m[p][c])) p = r;
        if (m[p][c] == 0) throw std::invalid_argument("singular matrix");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        T piv = m[c][c];
        for (size_t j = 0; j < n; ++j) {
            m[c][j] /= piv;
            inv[c][j] /= piv;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            T f = m[r][c];
            for (size_t j = 0; j < n; ++j) {
                m[r][j] -= f * m[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

// Matrix of rho(g) in the fixed basis of V; no unimodularity check.
template <class T>
Mat<T> rep_matrix_unchecked(const RepKind& kind, const Mat<T>& g) {
    int n = kind.n;
    switch (kind.family) {
        case RepFamily::Standard:
            return g;
        case RepFamily::Exterior: {
            auto basis = exterior_basis(n, kind.k);
            size_t d = basis.size();
            Mat<T> r(d, std::vector<T>(d, T(0)));
            for (size_t a = 0; a < d; ++a)
                for (size_t b = 0; b < d; ++b) {
                    Mat<T> minor(kind.k, std::vector<T>(kind.k));
                    for (int i = 0; i < kind.k; ++i)
                        for (int j = 0; j < kind.k; ++j) minor[i][j] = g[basis[a][i]][basis[b][j]];
                    r[a][b] = mat_det(minor);
                }
            return r;
        }
        case RepFamily::Adjoint: {
            auto basis = adjoint_basis(n);
            size_t d = basis.size();
            Mat<T> ginv = mat_inverse(g);
            Mat<T> r(d, std::vector<T>(d, T(0)));
            for (size_t c = 0; c < d; ++c) {
                Mat<T> X(n, std::vector<T>(n, T(0)));
                auto [i, j] = basis[c];
                if (i != j) {
                    X[i][j] = T(1);
                } else {
                    X[i][i] = T(1);
                    X[i + 1][i + 1] = T(-1);
                }
                Mat<T> Y = mat_mul(mat_mul(g, X), ginv);
                for (size_t a = 0; a < d; ++a) {
                    auto [p, q] = basis[a];
                    if (p != q) {
                        r[a][c] = Y[p][q];
                    } else {
                        T h(0);
                        for (int t = 0; t <= p; ++t) h += Y[t][t];
                        r[a][c] = h;
                    }
                }
            }
            return r;
        }
    }
    return g;
}

QMatrix rep_matrix(const RepKind& kind, const QMatrix& g);

// Exponents of the flow on V, one per basis vector in basis order.
std::vector<Rational> flow_weights(const RepKind& kind, const FlowSpec& Y);
// beta0(a_{-1}) = -min flow weight; throws TrivialFlowOnV when all are zero.
Rational beta0_a_minus1(const RepKind& kind, const FlowSpec& Y);
// Basis index of the beta0 line: the minimal flow weight, ties to the first.
int beta0_index(const RepKind& kind, const FlowSpec& Y);

}  // namespace dimflow
