#pragma once

#include "dimflow/dimformulas.hpp"
#include "dimflow/intlinalg.hpp"
#include "dimflow/lattice.hpp"
#include "dimflow/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace dimflow {

// A k-dimensional Q-subspace of Q^n. The basis is the Hermite-reduced basis
// of its integer points; plucker is the primitive wedge of that basis in the
// lexicographic k-subset order, sign fixed so the first nonzero entry is
// positive.
struct RationalSubspace {
    int n = 0, k = 0;
    IntMatrix basis;
    std::vector<Int> plucker;
    Int height2 = 0;

    // Saturates span_Q(rows); rows must be linearly independent.
    static RationalSubspace from_rows(const IntMatrix& rows);
    // From a primitive decomposable Plucker vector.
    static RationalSubspace from_plucker(int n, int k, const std::vector<Int>& p);
    std::string to_string() const;
};

// Orthonormal rows spanning an l-dimensional subspace of R^n.
struct RealSubspace {
    int n = 0, l = 0;
    Mat<double> basis;

    static RealSubspace from_rows(const Mat<double>& rows);
    static RealSubspace of(const RationalSubspace& p);
    // Haar-random l-plane from a seeded Gaussian matrix.
    static RealSubspace random(int n, int l, unsigned long long seed);
};

// k x k minors of an integer k x n matrix, lexicographic subset order.
std::vector<Int> plucker_coordinates(const IntMatrix& rows);

// H(P) = |v_1 ^ ... ^ v_k| for an integral basis of P (NonPrimitiveBasis if
// the rows do not span all integer points of their Q-span).
double height(const IntMatrix& basis);
Int height_squared(const IntMatrix& basis);
double height(const RationalSubspace& p);

// Sine of the largest principal angle; for dim P1 <= dim P2 this equals
// max over lines Q in P1 of min over lines Q' in P2 of d(Q, Q').
double distance(const RealSubspace& a, const RealSubspace& b);
double distance(const RationalSubspace& a, const RealSubspace& b);
double distance(const RationalSubspace& a, const RationalSubspace& b);

// All quadratic Plucker relations vanish.
bool is_pure_tensor(int n, int k, const std::vector<Int>& v);

struct EnumerateOptions {
    double budget = 5e7;  // bound on the number of Plucker candidates
};
// Every k-dimensional Q-subspace of Q^n with height <= H_max, once each,
// ordered by height then lexicographic Plucker vector.
std::vector<RationalSubspace> enumerate_rational(int n, int k, double H_max,
                                                 const EnumerateOptions& opt = {});

struct BetaKOptions {
    int grid_points = 10;      // heights H_max * 2^{-j/2}, j < grid_points
    double scale = 4.0;        // count radius eps(H) = scale * H^{-s}
    double budget = 5e6;       // lattice nodes per shell
};

struct BetaWitness {
    RationalSubspace v;
    double height = 0;
    double distance = 0;
};

struct BetaKEstimate {
    bool infinite = false;         // a rational k-plane lies in x
    double estimate = 0;
    double baseline = 0;           // n / (k (n - l))
    double s = 0;                  // eps(H) = scale * H^{-s}
    std::vector<double> heights;   // count grid
    std::vector<double> counts;    // #{v : H(v) <= H, d(v, x) <= eps(H)}
    std::vector<BetaWitness> witnesses;  // best-approximation staircase
    std::string to_text() const;
};

// Counting estimator of beta_k(x): the number of k-planes of height <= H
// within eps of x grows like H^n eps^{k(n-l)}; with eps = c H^{-s} the fitted
// slope sigma gives beta = s + sigma / (k (n - l)).
BetaKEstimate beta_k_estimate(const RealSubspace& x, int k, double H_max,
                              const BetaKOptions& opt = {});

// Minimum norm over lattice vectors that are pure tensors with
// |v_{1..k}| >= |v| / 2. Rows of the basis must be the images of the
// standard wedge basis e_I (lexicographic I), as produced by flow_basis.
double delta_chi(int n, int k, const LatticeBasis& lattice, double search_bound);

// psi -> phi(t) = e^{-a t} Psi^{-1}(e^{-b t}) with Psi(u) = u^{-beta} psi(u).
// Flag case: a = 1/beta, b = 1. Grassmann case: a = k/l,
// b = 1/l + 1/(n-l), beta = n/(k(n-l)). Only exponents are tracked; the
// constant of the output is left at 1.
struct CorrespondenceCase {
    Rational beta, a, b;
    static CorrespondenceCase flag(const Rational& beta_chi);
    static CorrespondenceCase grassmann(int n, int l, int k);
};
enum class Direction { Forward, Inverse };

// Forward reads psi in u-form (exponent gamma) and returns phi in t-form
// (exponent tau); Inverse undoes it. The family is psi(u) = C u^{-gamma}.
RateFunction correspondence_transform(const RateFunction& psi, const CorrespondenceCase& c,
                                      Direction dir);

}  // namespace dimflow
