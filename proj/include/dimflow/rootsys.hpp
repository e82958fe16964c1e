#pragma once

#include "dimflow/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace dimflow {

enum class Series { A, B, C, D };

Series parse_series(const std::string& s);
char series_char(Series s);

// Split root system in the standard realization. Type A_{r} lives in R^{r+1}
// (trace-zero hyperplane); B, C, D of rank r live in R^r.
struct RootSystem {
    Series series = Series::A;
    int rank = 0;
    int ambient = 0;
    std::vector<IVec> roots;            // lexicographically sorted
    std::vector<IVec> coroots;          // coroots[i] pairs with roots[i]
    std::vector<IVec> positive_std;     // the lexicographically positive roots
    std::vector<IVec> simple_std;       // alpha_1..alpha_r, Bourbaki order
    std::vector<QVec> fundamental_std;  // varpi_1..varpi_r, dual to simple coroots

    int dim_group() const { return static_cast<int>(roots.size()) + rank; }
    bool is_root(const IVec& v) const;
    IVec coroot(const IVec& alpha) const;
    // <lambda, alpha^vee>
    Rational pairing(const QVec& lambda, const IVec& alpha) const;
};

RootSystem build_root_system(Series series, int rank);

// One-parameter diagonal flow a_t = exp(tY); lambda(a_t) = t * lambda(Y).
struct FlowSpec {
    QVec Y;

    FlowSpec() = default;
    explicit FlowSpec(QVec y) : Y(std::move(y)) {}
    bool trivial() const { return is_zero(Y); }
    Rational operator()(const IVec& alpha) const;  // alpha(Y)
    Rational operator()(const QVec& lambda) const;
};

// Parses "1,0,-1" or "1/2,-1/2".
FlowSpec parse_flow(const std::string& s);

Rational eval_root(const IVec& alpha, const FlowSpec& flow);

// Signed permutation: w e_i = sign[i] e_{perm[i]}. Type A uses sign = +1.
struct WeylElement {
    IVec perm;
    IVec sign;

    static WeylElement identity(int n);
    IVec apply(const IVec& v) const;
    QVec apply(const QVec& v) const;
    WeylElement inverse() const;
    WeylElement compose(const WeylElement& inner) const;  // this o inner
    bool is_identity() const;
    bool operator==(const WeylElement& o) const = default;
    bool operator<(const WeylElement& o) const {
        return perm != o.perm ? perm < o.perm : sign < o.sign;
    }
    std::string str() const;
};

// Positive system adapted to a flow. The stored orientation is the contracted
// one: alpha(Y) <= 0 for alpha in positive. Ties on walls go to the
// lexicographically positive root, i.e. positivity is the lexicographic sign
// of (-alpha(Y), alpha_1, ..., alpha_n).
struct OrientedRootSystem {
    RootSystem base;
    FlowSpec flow;
    std::vector<IVec> positive;
    std::vector<IVec> simple;       // chamber image of simple_std, same order
    std::vector<QVec> fundamental;  // chamber image of fundamental_std
    WeylElement chamber;            // positive = chamber(positive_std)

    bool is_positive(const IVec& alpha) const;
    // Phi(R_u(Pbar_0)) = -positive: the directions expanded by the flow.
    std::vector<IVec> expanding() const;
    QVec weight_from_labels(const IVec& labels) const;
    // Dynkin labels <lambda, alpha_i^vee>; throws NonDominantWeight if a
    // label is negative or not integral.
    IVec dominant_labels(const QVec& lambda) const;
};

OrientedRootSystem orient_to_flow(const RootSystem& rs, const FlowSpec& flow);

struct ParabolicData {
    std::vector<IVec> levi_simple;          // Delta_P
    std::vector<IVec> levi_roots;           // roots of the Levi factor
    std::vector<IVec> nilradical;           // Phi(R_u(P)), inside positive
    std::vector<IVec> opposite_nilradical;  // Phi(R_u(Pbar)) = -nilradical
};

// Stabilizer of the highest weight line: a positive root alpha stays in the
// Levi iff lambda0 - alpha is not a weight of V(lambda0).
ParabolicData parabolic_from_weight(const OrientedRootSystem& ors, const QVec& lambda0);
// The naive rule Delta_P = {alpha simple : <lambda0, alpha^vee> = 0}.
ParabolicData parabolic_from_labels(const OrientedRootSystem& ors, const QVec& lambda0);

// Saturation test: mu is a weight of V(lambda) (lambda dominant for ors).
bool is_weight_of(const OrientedRootSystem& ors, const QVec& lambda, const QVec& mu);

// Coefficients of a root-lattice vector on the oriented simple roots;
// empty when not in the root lattice.
std::vector<Rational> simple_coefficients(const OrientedRootSystem& ors, const QVec& beta);

std::vector<WeylElement> weyl_elements(const RootSystem& rs, std::size_t cap = 3628800);
std::size_t weyl_order(const RootSystem& rs);

std::vector<IVec> f_w_roots(const OrientedRootSystem& ors, const ParabolicData& p,
                            const WeylElement& w);

struct Nu0 {
    IVec root;
    Rational value;
};
Nu0 nu0(const OrientedRootSystem& ors);

// Structured text: "series = A\nrank = 2\nflow = 1,0,-1\n".
std::string serialize(const OrientedRootSystem& ors);
OrientedRootSystem deserialize_oriented(const std::string& text);

std::string root_string(const IVec& alpha);

}  // namespace dimflow
