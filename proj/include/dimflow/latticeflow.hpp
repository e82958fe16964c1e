#pragma once

#include "dimflow/lattice.hpp"
#include "dimflow/rational.hpp"
#include "dimflow/repweights.hpp"
#include "dimflow/rootsys.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dimflow {

// ---- flows on lattices --------------------------------------------------

// Basis of rho(a_t) rho(g) Z^d; row j is the image of the j-th basis vector.
// An exact g at t = 0 yields an Exact basis, otherwise High precision.
LatticeBasis flow_basis(const RepKind& kind, const FlowSpec& Y, const Rational& t, const QMatrix& g);
LatticeBasis flow_basis(const RepKind& kind, const FlowSpec& Y, const HighReal& t, const Mat<HighReal>& g);

Mat<HighReal> to_high(const QMatrix& g);
// [[1, x], [0, 1]]
Mat<HighReal> slice_element(const HighReal& x);

struct Trajectory {
    RepKind rep;
    FlowSpec Y;
    std::vector<double> t_grid;
    std::vector<double> delta;
    std::vector<double> ln_delta;
    std::vector<double> running_min;  // of ln_delta

    std::string csv() const;  // t,delta,ln_delta,running_min
};

std::vector<double> uniform_grid(double t_max, double step);

// First minima along the grid. The reduced basis of each step seeds the
// next one (the lattice itself is recomputed from g at every step).
Trajectory trajectory(const RepKind& kind, const FlowSpec& Y, const Mat<HighReal>& g,
                      const std::vector<double>& t_grid);

struct ExponentFit {
    double exponent = 0;
    double r2 = 0;
    double window_lo = 0, window_hi = 0;
};

// Minus the least-squares slope of the running minimum of ln delta over the
// second half [T/2, T] of the trajectory.
ExponentFit exponent_estimate(const Trajectory& traj);

// ---- rational elements of the horospherical slice -----------------------

// Polynomials with rational coefficients in formally independent
// transcendentals theta_0, theta_1, ...
struct Poly {
    std::map<std::vector<int>, Rational> terms;  // exponent vector -> coefficient

    Poly() = default;
    Poly(const Rational& c);
    Poly(int c) : Poly(Rational(c)) {}
    static Poly theta(int k);
    bool is_constant() const;
    Rational constant() const;
    bool operator==(const Poly& o) const { return terms == o.terms; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    std::string str() const;
};
Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);

using SymMatrix = Mat<Poly>;
SymMatrix to_symbolic(const QMatrix& g);

// rho(u) for u upper unipotent with symbolic entries.
SymMatrix symbolic_rep(const RepKind& kind, const SymMatrix& u);

struct SliceIntersection {
    int rank = 0;              // rank of rho(u) Z^d cap V_beta0
    std::vector<Int> coeffs;   // generator on the standard basis of Z^d (rank 1)
    Rational height = 0;       // covolume of the intersection
};

// V_beta0 is the line of the most contracted basis vector for a
// nonincreasing regular flow: e_n, E_{n1}, or e_{n-k+1} ^ ... ^ e_n.
int slice_beta0_index(const RepKind& kind);
SliceIntersection slice_intersection(const RepKind& kind, const SymMatrix& u);
bool is_rational_slice(const RepKind& kind, const SymMatrix& u);
Rational slice_height(const RepKind& kind, const SymMatrix& u);

// ---- counting and growth ------------------------------------------------

struct GrowthFit {
    double exponent = 0;
    double log_correction = 0;  // coefficient of log log in a three-term fit
    double r2 = 0;
    double window_lo = 0, window_hi = 0;
    std::vector<double> x, y;  // the fitted points (log scale, log value)
};

// Least squares of y against x (and optionally log x as a second regressor).
GrowthFit fit_growth(const std::vector<double>& scale, const std::vector<double>& value);

struct SliceBox {
    std::vector<Rational> lo, hi;  // one interval per slice coordinate
};

// Standard(2): reduced fractions p/q in [lo, hi] with A <= q <= B (closed box,
// both endpoints counted). Standard(3): total H_e-leaf length inside the box
// over rational leaves with height in [A, B]; slice coordinates
// (x12, x13, x23), leaves {(s, a + s b, b)} of height lcm(den a, den b).
Rational count_rationals(const RepKind& kind, const SliceBox& box, const Rational& A, const Rational& B);

// Exponent of count_rationals(box, l/2, l) in l.
GrowthFit counting_exponent(const RepKind& kind, const SliceBox& box, const std::vector<double>& l_grid);

// Monte-Carlo volume of E_w(R) = {f in F_w(R) : |rho(w f w^-1) e_beta0| <= R}
// for SL_n representations and a nonincreasing regular flow.
struct VolumeOptions {
    std::size_t samples = 200000;
    std::uint64_t seed = 1;
};
std::vector<double> volume_estimates(const RepKind& kind, const FlowSpec& Y, const WeylElement& w,
                                     const std::vector<double>& R_grid, const VolumeOptions& opt = {});
GrowthFit volume_growth(const RepKind& kind, const FlowSpec& Y, const WeylElement& w,
                        const std::vector<double>& R_grid, const VolumeOptions& opt = {});

// Primitive integer vectors of Z^n up to sign with norm <= H (Standard(n),
// n <= 4), counted by Moebius inversion of lattice-point counts.
Int count_primitive(int n, double H);
GrowthFit rational_point_growth(const RepKind& kind, const std::vector<double>& H_grid);

// ---- box counting -------------------------------------------------------

GrowthFit box_dimension(const std::vector<std::vector<double>>& points, int j_lo, int j_hi);

struct FareyBallDimension {
    GrowthFit resolved;  // boxes meeting centers p/q with q <= min(Q, eps^{-1/(2+c)})
    GrowthFit literal;   // boxes meeting the union of all balls B(p/q, q^{-(2+c)}) in [0,1]
};
FareyBallDimension farey_ball_dimension(int Q, double c, int j_lo, int j_hi);

std::vector<double> cantor_points(int depth);

}  // namespace dimflow
