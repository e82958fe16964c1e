#include "dimflow/grassmann.hpp"

#include "dimflow/error.hpp"
#include "dimflow/latticeflow.hpp"
#include "dimflow/repweights.hpp"

#include <Eigen/Dense>
#include <boost/integer/common_factor.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace dimflow {

namespace {

struct SubsetIndex {
    std::vector<IVec> subsets;
    std::map<IVec, int> index;

    SubsetIndex(int n, int k) : subsets(exterior_basis(n, k)) {
        for (size_t i = 0; i < subsets.size(); ++i) index[subsets[i]] = static_cast<int>(i);
    }
    // Antisymmetric lookup of p at an unordered index tuple.
    Int at(const std::vector<Int>& p, IVec idx) const {
        int sign = 1;
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = i + 1; j < idx.size(); ++j) {
                if (idx[i] == idx[j]) return 0;
                if (idx[i] > idx[j]) sign = -sign;
            }
        std::sort(idx.begin(), idx.end());
        Int v = p[index.at(idx)];
        return sign > 0 ? v : Int(-v);
    }
};

void check_nk(int n, int k) {
    if (n < 1 || k < 1 || k > n) throw Error(Errc::BadIndices, "need 1 <= k <= n");
}

void normalize_sign(std::vector<Int>& p) {
    for (const auto& v : p)
        if (v != 0) {
            if (v < 0)
                for (auto& w : p) w = -w;
            return;
        }
}

Int norm2(const std::vector<Int>& p) {
    Int s = 0;
    for (const auto& v : p) s += v * v;
    return s;
}

Int int_det(IntMatrix m) {
    // Bareiss fraction-free elimination
    size_t n = m.size();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (size_t c = 0; c + 1 < n; ++c) {
        if (m[c][c] == 0) {
            size_t r = c + 1;
            while (r < n && m[r][c] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[r], m[c]);
            sign = -sign;
        }
        for (size_t i = c + 1; i < n; ++i)
            for (size_t j = c + 1; j < n; ++j) m[i][j] = (m[i][j] * m[c][c] - m[i][c] * m[c][j]) / prev;
        prev = m[c][c];
    }
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

Eigen::MatrixXd to_eigen(const Mat<double>& m, int cols) {
    Eigen::MatrixXd e(m.size(), cols);
    for (size_t i = 0; i < m.size(); ++i)
        for (int j = 0; j < cols; ++j) e(i, j) = m[i][j];
    return e;
}

// sin of the largest principal angle of a (dim <= dim b) against b
double residual_sine(const RealSubspace& a, const RealSubspace& b) {
    Eigen::MatrixXd A = to_eigen(a.basis, a.n), B = to_eigen(b.basis, b.n);
    Eigen::MatrixXd R = A - A.lazyProduct(B.transpose()).lazyProduct(B);
    if (R.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(R);
    return std::min(1.0, svd.singularValues()(0));
}

}  // namespace

std::vector<Int> plucker_coordinates(const IntMatrix& rows) {
    if (rows.empty()) throw Error(Errc::BadIndices, "empty basis");
    int k = static_cast<int>(rows.size()), n = static_cast<int>(rows[0].size());
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != n) throw Error(Errc::DimensionMismatch, "ragged basis");
    check_nk(n, k);
    std::vector<Int> out;
    for (const auto& I : exterior_basis(n, k)) {
        IntMatrix sub(k, std::vector<Int>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub[i][j] = rows[i][I[j]];
        out.push_back(int_det(std::move(sub)));
    }
    return out;
}

Int height_squared(const IntMatrix& basis) {
    auto p = plucker_coordinates(basis);
    Int g = gcd_all(p);
    if (g == 0) throw Error(Errc::NonPrimitiveBasis, "rows are linearly dependent");
    if (g != 1) throw Error(Errc::NonPrimitiveBasis, "rows span a sublattice of index " + g.str());
    return norm2(p);
}

double height(const IntMatrix& basis) { return std::sqrt(height_squared(basis).convert_to<double>()); }
double height(const RationalSubspace& p) { return std::sqrt(p.height2.convert_to<double>()); }

RationalSubspace RationalSubspace::from_rows(const IntMatrix& rows) {
    if (rows.empty()) throw Error(Errc::BadIndices, "empty basis");
    IntMatrix sat = saturate(rows);
    if (sat.size() != rows.size()) throw Error(Errc::SingularBasis, "rows are linearly dependent");
    RationalSubspace s;
    s.k = static_cast<int>(sat.size());
    s.n = static_cast<int>(sat[0].size());
    s.basis = sat;
    s.plucker = plucker_coordinates(sat);
    normalize_sign(s.plucker);
    s.height2 = norm2(s.plucker);
    return s;
}

RationalSubspace RationalSubspace::from_plucker(int n, int k, const std::vector<Int>& p) {
    check_nk(n, k);
    SubsetIndex idx(n, k);
    if (p.size() != idx.subsets.size()) throw Error(Errc::DimensionMismatch, "Plucker vector length");
    if (gcd_all(p) != 1) throw Error(Errc::NonPrimitiveBasis, "Plucker vector is not primitive");
    if (!is_pure_tensor(n, k, p)) throw Error(Errc::ConditionFailed, "not a pure tensor");
    if (k == 1) {
        RationalSubspace s;
        s.n = n;
        s.k = 1;
        s.basis = {p};
        s.plucker = p;
        normalize_sign(s.plucker);
        s.height2 = norm2(p);
        return s;
    }
    // contractions of p by (k-1)-subsets span the subspace
    IntMatrix rows;
    for (const auto& I : exterior_basis(n, k - 1)) {
        std::vector<Int> w(n);
        bool nz = false;
        for (int j = 0; j < n; ++j) {
            IVec J = I;
            J.push_back(j);
            w[j] = idx.at(p, J);
            nz = nz || w[j] != 0;
        }
        if (nz) rows.push_back(std::move(w));
    }
    IntMatrix sat = saturate(rows);
    if (static_cast<int>(sat.size()) != k) throw Error(Errc::ConditionFailed, "contractions have wrong rank");
    RationalSubspace s = from_rows(sat);
    std::vector<Int> q = p;
    normalize_sign(q);
    if (s.plucker != q) throw Error(Errc::ConditionFailed, "Plucker reconstruction mismatch");
    return s;
}

std::string RationalSubspace::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < basis.size(); ++i) {
        os << (i ? ",[" : "[");
        for (size_t j = 0; j < basis[i].size(); ++j) os << (j ? "," : "") << basis[i][j];
        os << "]";
    }
    os << "]";
    return os.str();
}

RealSubspace RealSubspace::from_rows(const Mat<double>& rows) {
    if (rows.empty() || rows[0].empty()) throw Error(Errc::BadIndices, "empty basis");
    int l = static_cast<int>(rows.size()), n = static_cast<int>(rows[0].size());
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != n) throw Error(Errc::DimensionMismatch, "ragged basis");
    if (l > n) throw Error(Errc::SingularBasis, "more rows than columns");
    Eigen::MatrixXd A = to_eigen(rows, n).transpose();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::MatrixXd R = qr.matrixQR().topRows(l).triangularView<Eigen::Upper>();
    double scale = A.norm();
    for (int i = 0; i < l; ++i)
        if (std::abs(R(i, i)) <= 1e-12 * scale) throw Error(Errc::SingularBasis, "rows are linearly dependent");
    Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(n, n);
    Q.applyOnTheLeft(qr.householderQ());
    Q.conservativeResize(n, l);
    RealSubspace s;
    s.n = n;
    s.l = l;
    s.basis.assign(l, std::vector<double>(n));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < n; ++j) s.basis[i][j] = Q(j, i);
    return s;
}

RealSubspace RealSubspace::of(const RationalSubspace& p) {
    Mat<double> rows(p.basis.size());
    for (size_t i = 0; i < p.basis.size(); ++i)
        for (const auto& v : p.basis[i]) rows[i].push_back(v.convert_to<double>());
    return from_rows(rows);
}

RealSubspace RealSubspace::random(int n, int l, unsigned long long seed) {
    if (l < 1 || l > n) throw Error(Errc::BadIndices, "need 1 <= l <= n");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Mat<double> rows(l, std::vector<double>(n));
    for (auto& r : rows)
        for (auto& v : r) v = g(rng);
    return from_rows(rows);
}

double distance(const RealSubspace& a, const RealSubspace& b) {
    if (a.n != b.n) throw Error(Errc::DimensionMismatch, "subspaces live in different R^n");
    if (a.l == b.l && a.basis == b.basis) return 0;
    if (a.l < b.l) return residual_sine(a, b);
    if (b.l < a.l) return residual_sine(b, a);
    return std::max(residual_sine(a, b), residual_sine(b, a));
}

double distance(const RationalSubspace& a, const RealSubspace& b) { return distance(RealSubspace::of(a), b); }

double distance(const RationalSubspace& a, const RationalSubspace& b) {
    if (a.n != b.n) throw Error(Errc::DimensionMismatch, "subspaces live in different Q^n");
    if (a.k == b.k && a.plucker == b.plucker) return 0;
    return distance(RealSubspace::of(a), RealSubspace::of(b));
}

namespace {

// Quadratic Plucker relations as (index, index, sign) triples.
struct PluckerRelations {
    int n = 0, k = 0;
    std::size_t dim = 0;
    std::vector<std::vector<std::array<int, 3>>> rels;

    PluckerRelations(int n_, int k_) : n(n_), k(k_) {
        SubsetIndex idx(n, k);
        dim = idx.subsets.size();
        if (k == 1 || k >= n - 1) return;
        auto lookup = [&](IVec a, int& sign) {
            sign = 1;
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t j = i + 1; j < a.size(); ++j) {
                    if (a[i] == a[j]) return -1;
                    if (a[i] > a[j]) sign = -sign;
                }
            std::sort(a.begin(), a.end());
            return idx.index.at(a);
        };
        for (const auto& I : exterior_basis(n, k - 1))
            for (const auto& J : exterior_basis(n, k + 1)) {
                std::vector<std::array<int, 3>> rel;
                for (int l = 0; l <= k; ++l) {
                    IVec a = I;
                    a.push_back(J[l]);
                    IVec b;
                    for (int m = 0; m <= k; ++m)
                        if (m != l) b.push_back(J[m]);
                    int sa, sb;
                    int ia = lookup(a, sa), ib = lookup(b, sb);
                    if (ia < 0) continue;
                    rel.push_back({ia, ib, sa * sb * (l % 2 ? -1 : 1)});
                }
                if (!rel.empty()) rels.push_back(std::move(rel));
            }
    }
};

const PluckerRelations& relations(int n, int k) {
    thread_local std::map<std::pair<int, int>, PluckerRelations> cache;
    auto it = cache.find({n, k});
    if (it == cache.end()) it = cache.emplace(std::make_pair(n, k), PluckerRelations(n, k)).first;
    return it->second;
}

}  // namespace

bool is_pure_tensor(int n, int k, const std::vector<Int>& v) {
    check_nk(n, k);
    const auto& R = relations(n, k);
    if (v.size() != R.dim) throw Error(Errc::DimensionMismatch, "vector length is not C(n,k)");
    if (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; }))
        throw Error(Errc::ZeroVector, "zero vector");
    for (const auto& rel : R.rels) {
        Int s = 0;
        for (const auto& [a, b, sign] : rel) {
            if (v[a] == 0 || v[b] == 0) continue;
            if (sign > 0) s += v[a] * v[b];
            else s -= v[a] * v[b];
        }
        if (s != 0) return false;
    }
    return true;
}

namespace {

long long binom(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double ball_volume(int m, double r) { return std::pow(M_PI, m / 2.0) / std::tgamma(m / 2.0 + 1) * std::pow(r, m); }

// Integer points of the ball |p| <= R with first nonzero coordinate positive.
template <class F>
void half_ball_points(int m, long long R2, F&& visit) {
    std::vector<long long> p(m, 0);
    auto rec = [&](auto&& self, int i, long long used, bool lead) -> void {
        if (i == m) {
            if (!lead) visit(p);
            return;
        }
        long long r = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(R2 - used))));
        while ((r + 1) * (r + 1) <= R2 - used) ++r;
        while (r * r > R2 - used) --r;
        for (long long v = lead ? 0 : -r; v <= r; ++v) {
            p[i] = v;
            self(self, i + 1, used + v * v, lead && v == 0);
        }
        p[i] = 0;
    };
    rec(rec, 0, 0, true);
}

}  // namespace

std::vector<RationalSubspace> enumerate_rational(int n, int k, double H_max, const EnumerateOptions& opt) {
    check_nk(n, k);
    if (k == n) throw Error(Errc::BadIndices, "need k < n");
    if (!(H_max >= 1)) return {};
    int m = static_cast<int>(binom(n, k));
    double estimate = ball_volume(m, H_max) / 2;
    if (estimate > opt.budget)
        throw Error(Errc::BudgetExceeded, "about " + std::to_string(static_cast<long long>(estimate)) +
                                              " Plucker candidates exceed the budget");
    long long R2 = static_cast<long long>(std::floor(H_max * H_max + 1e-9));
    std::vector<RationalSubspace> out;
    half_ball_points(m, R2, [&](const std::vector<long long>& q) {
        long long g = 0;
        for (long long v : q) g = std::gcd(g, std::llabs(v));
        if (g != 1) return;
        std::vector<Int> p(q.begin(), q.end());
        if (!is_pure_tensor(n, k, p)) return;
        out.push_back(RationalSubspace::from_plucker(n, k, p));
    });
    std::sort(out.begin(), out.end(), [](const RationalSubspace& a, const RationalSubspace& b) {
        if (a.height2 != b.height2) return a.height2 < b.height2;
        return a.plucker < b.plucker;
    });
    return out;
}

std::string BetaKEstimate::to_text() const {
    std::ostringstream os;
    os << "beta_k estimate: " << (infinite ? std::string("inf") : std::to_string(estimate)) << "\n";
    os << "baseline n/(k(n-l)): " << baseline << "\n";
    os << "radius exponent s: " << s << "\n";
    os << "H,count\n";
    for (size_t i = 0; i < heights.size(); ++i) os << heights[i] << "," << counts[i] << "\n";
    os << "witnesses (height, distance, basis)\n";
    for (const auto& w : witnesses) os << w.height << "," << w.distance << "," << w.v.to_string() << "\n";
    return os.str();
}

BetaKEstimate beta_k_estimate(const RealSubspace& x, int k, double H_max, const BetaKOptions& opt) {
    int n = x.n, l = x.l;
    if (!(1 <= k && k <= l && l < n)) throw Error(Errc::BadIndices, "need 1 <= k <= l < n");
    if (!(H_max > 2) || opt.grid_points < 3 || !(opt.scale > 0))
        throw Error(Errc::InvalidConfig, "need H_max > 2, grid_points >= 3, scale > 0");
    BetaKEstimate est;
    int codim = k * (n - l);
    est.baseline = static_cast<double>(n) / codim;
    est.s = est.baseline - 1;
    const double s = est.s;
    auto eps = [&](double H) { return std::min(1.0, opt.scale * std::pow(H, -s)); };
    // largest eps over [H, H_max]
    auto eps_sup = [&](double H) { return s >= 0 ? eps(H) : eps(H_max); };

    // orthonormal basis of wedge^k x inside wedge^k R^n
    auto subsets = exterior_basis(n, k);
    int m = static_cast<int>(subsets.size());
    Eigen::MatrixXd W(m, 0);
    for (const auto& S : exterior_basis(l, k)) {
        Eigen::VectorXd w(m);
        for (int J = 0; J < m; ++J) {
            Eigen::MatrixXd sub(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub(i, j) = x.basis[S[i]][subsets[J][j]];
            w(J) = sub.determinant();
        }
        W.conservativeResize(m, W.cols() + 1);
        W.col(W.cols() - 1) = w;
    }
    Eigen::MatrixXd Pperp = Eigen::MatrixXd::Identity(m, m) - W.lazyProduct(W.transpose());

    struct Cand {
        RationalSubspace v;
        double H, d;
    };
    std::vector<Cand> cands;
    for (double hi = 1, lo = 0; lo < H_max; lo = hi, hi *= 2) {
        double top = std::min(hi, H_max);
        double a = std::max(lo, 1.0);
        double w = std::sqrt(static_cast<double>(k)) * std::max(eps_sup(a) * a, eps_sup(top) * top);
        Eigen::MatrixXd G = Eigen::MatrixXd::Identity(m, m) / (top * top) + Pperp / (w * w);
        Eigen::LLT<Eigen::MatrixXd> llt(G);
        Eigen::MatrixXd L = llt.matrixL();
        Mat<HighReal> rows(m, std::vector<HighReal>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) rows[i][j] = L(i, j);
        auto found = vectors_within(rows, HighReal(2), static_cast<std::size_t>(opt.budget));
        for (const auto& f : found) {
            std::vector<Int> p = f.coeffs;
            Int h2 = norm2(p);
            double H = std::sqrt(h2.convert_to<double>());
            if (!(H > lo && H <= top)) continue;
            if (gcd_all(p) != 1 || !is_pure_tensor(n, k, p)) continue;
            Eigen::VectorXd pv(m);
            for (int i = 0; i < m; ++i) pv(i) = p[i].convert_to<double>();
            if (Pperp.lazyProduct(pv).norm() > std::sqrt(static_cast<double>(k)) * eps_sup(H) * H * (1 + 1e-9)) continue;
            normalize_sign(p);
            RationalSubspace v = RationalSubspace::from_plucker(n, k, p);
            double d = distance(v, x);
            if (d <= eps_sup(H) * (1 + 1e-12)) cands.push_back({std::move(v), H, d});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.v.height2 != b.v.height2) return a.v.height2 < b.v.height2;
        return a.v.plucker < b.v.plucker;
    });
    double best = 2;
    for (const auto& c : cands) {
        if (c.d < best) {
            best = c.d;
            est.witnesses.push_back({c.v, c.H, c.d});
        }
        if (c.d <= 1e-12) {
            est.infinite = true;
            est.estimate = std::numeric_limits<double>::infinity();
            return est;
        }
    }
    for (int j = opt.grid_points - 1; j >= 0; --j) {
        double H = H_max * std::pow(2.0, -j / 2.0);
        double e = eps(H);
        double c = 0;
        for (const auto& cd : cands)
            if (cd.H <= H && cd.d <= e) ++c;
        est.heights.push_back(H);
        est.counts.push_back(c);
    }
    GrowthFit fit = fit_growth(est.heights, est.counts);
    if (fit.x.size() < 3) throw Error(Errc::TooFewPoints, "fewer than three nonzero counts; raise H_max or scale");
    est.estimate = s + fit.exponent / codim;
    return est;
}

namespace {

bool chi_admissible(int n, int k, const LatticeBasis& lattice, const Mat<HighReal>& rows,
                    const std::vector<Int>& c) {
    if (std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; })) return false;
    if (!is_pure_tensor(n, k, c)) return false;
    size_t m = c.size();
    if (lattice.precision == Precision::Exact) {
        QVec v(m, Rational(0));
        for (size_t i = 0; i < m; ++i)
            if (c[i] != 0)
                for (size_t j = 0; j < m; ++j) v[j] += Rational(c[i]) * lattice.exact[i][j];
        return 4 * v[0] * v[0] >= dot(v, v);
    }
    std::vector<HighReal> v(m, HighReal(0));
    for (size_t i = 0; i < m; ++i)
        if (c[i] != 0)
            for (size_t j = 0; j < m; ++j) v[j] += HighReal(c[i]) * rows[i][j];
    HighReal nn = 0;
    for (const auto& x : v) nn += x * x;
    return 4 * v[0] * v[0] >= nn * (1 - HighReal(1e-40));
}

}  // namespace

double delta_chi(int n, int k, const LatticeBasis& lattice, double search_bound) {
    check_nk(n, k);
    int m = static_cast<int>(binom(n, k));
    if (lattice.dim() != m) throw Error(Errc::DimensionMismatch, "lattice dimension is not C(n,k)");
    if (!(search_bound > 0)) throw Error(Errc::InvalidConfig, "search bound must be positive");
    Mat<HighReal> rows = lattice.as_high();
    // grow the radius geometrically from the first minimum; vectors inside
    // the previous radius were already rejected
    HighReal bound2 = HighReal(search_bound) * search_bound * (1 + 1e-12);
    HighReal lambda = first_min(lattice);
    HighReal r2 = std::min(bound2, lambda * lambda * HighReal(2.25));
    HighReal done2 = -1;
    while (true) {
        for (const auto& f : vectors_within(rows, r2))
            if (f.norm2 > done2 && chi_admissible(n, k, lattice, rows, f.coeffs))
                return sqrt(f.norm2).convert_to<double>();
        if (r2 >= bound2) break;
        done2 = r2;
        r2 = std::min(bound2, r2 * HighReal(2.25));
    }
    throw Error(Errc::NoAdmissibleVector, "no pure tensor with a dominant first coordinate within the search bound");
}

CorrespondenceCase CorrespondenceCase::flag(const Rational& beta_chi) {
    if (beta_chi <= 0) throw Error(Errc::OutsideFamily, "beta_chi must be positive");
    return {beta_chi, 1 / beta_chi, 1};
}

CorrespondenceCase CorrespondenceCase::grassmann(int n, int l, int k) {
    if (!(1 <= k && k <= l && l < n)) throw Error(Errc::BadIndices, "need 1 <= k <= l < n");
    return {Rational(n, k * (n - l)), Rational(k, l), Rational(1, l) + Rational(1, n - l)};
}

RateFunction correspondence_transform(const RateFunction& psi, const CorrespondenceCase& c, Direction dir) {
    psi.validate();
    if (psi.super_exponential || psi.sigma != 0)
        throw Error(Errc::OutsideFamily, "only pure power rate functions C u^{-gamma} are supported");
    RateFunction out;
    if (dir == Direction::Forward) {
        // tau = a - b / (gamma + beta)
        out.tau_param = c.a - c.b / (psi.tau_param + c.beta);
    } else {
        if (psi.tau_param >= c.a) throw Error(Errc::OutsideFamily, "tau must stay below " + to_string(c.a));
        out.tau_param = c.b / (c.a - psi.tau_param) - c.beta;
    }
    if (out.tau_param < 0) throw Error(Errc::OutsideFamily, "transformed exponent is negative");
    return out;
}

}  // namespace dimflow
