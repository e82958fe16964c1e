#include "dimflow/latticeflow.hpp"

#include "dimflow/error.hpp"
#include "dimflow/intlinalg.hpp"

#include <Eigen/Dense>
#include <boost/integer/common_factor.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace dimflow {

// ---- flows on lattices --------------------------------------------------

namespace {

std::vector<HighReal> high_weights(const RepKind& kind, const FlowSpec& Y) {
    std::vector<HighReal> out;
    for (const auto& w : flow_weights(kind, Y)) out.push_back(HighReal(numerator(w)) / HighReal(denominator(w)));
    return out;
}

Mat<HighReal> scaled_rows(const Mat<HighReal>& M, const std::vector<HighReal>& w, const HighReal& t) {
    size_t d = M.size();
    std::vector<HighReal> s(d);
    for (size_t i = 0; i < d; ++i) s[i] = exp(t * w[i]);
    Mat<HighReal> rows(d, std::vector<HighReal>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) rows[j][i] = s[i] * M[i][j];
    return rows;
}

void check_n(const RepKind& kind, size_t rows) {
    kind.validate();
    if (static_cast<int>(rows) != kind.n)
        throw Error(Errc::DimensionMismatch, "g must be " + std::to_string(kind.n) + "x" + std::to_string(kind.n));
}

}  // namespace

Mat<HighReal> to_high(const QMatrix& g) {
    return LatticeBasis{Precision::Exact, g, {}, {}}.as_high();
}

Mat<HighReal> slice_element(const HighReal& x) { return {{HighReal(1), x}, {HighReal(0), HighReal(1)}}; }

LatticeBasis flow_basis(const RepKind& kind, const FlowSpec& Y, const Rational& t, const QMatrix& g) {
    check_n(kind, g.size());
    QMatrix M = rep_matrix(kind, g);
    if (t == 0) {
        size_t d = M.size();
        QMatrix rows(d, QVec(d));
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) rows[j][i] = M[i][j];
        return LatticeBasis::rational(rows);
    }
    HighReal th = HighReal(numerator(t)) / HighReal(denominator(t));
    return LatticeBasis::of_high(scaled_rows(to_high(M), high_weights(kind, Y), th));
}

LatticeBasis flow_basis(const RepKind& kind, const FlowSpec& Y, const HighReal& t, const Mat<HighReal>& g) {
    check_n(kind, g.size());
    if (abs(mat_det(g) - 1) > HighReal(1e-30)) throw Error(Errc::NotUnimodular, "det(g) != 1");
    auto M = rep_matrix_unchecked<HighReal>(kind, g);
    return LatticeBasis::of_high(scaled_rows(M, high_weights(kind, Y), t));
}

std::string Trajectory::csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "t,delta,ln_delta,running_min\n";
    for (size_t i = 0; i < t_grid.size(); ++i)
        os << t_grid[i] << "," << delta[i] << "," << ln_delta[i] << "," << running_min[i] << "\n";
    return os.str();
}

std::vector<double> uniform_grid(double t_max, double step) {
    if (!(step > 0) || t_max < 0) throw Error(Errc::InvalidConfig, "grid needs step > 0 and t_max >= 0");
    std::vector<double> g;
    long long n = static_cast<long long>(std::floor(t_max / step + 1e-9));
    for (long long i = 0; i <= n; ++i) g.push_back(static_cast<double>(i) * step);
    return g;
}

Trajectory trajectory(const RepKind& kind, const FlowSpec& Y, const Mat<HighReal>& g,
                      const std::vector<double>& t_grid) {
    check_n(kind, g.size());
    if (t_grid.empty()) throw Error(Errc::ShortTrajectory, "empty time grid");
    for (size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1])) throw Error(Errc::InvalidConfig, "time grid must increase");
    if (abs(mat_det(g) - 1) > HighReal(1e-30)) throw Error(Errc::NotUnimodular, "det(g) != 1");
    auto M = rep_matrix_unchecked<HighReal>(kind, g);
    auto w = high_weights(kind, Y);
    size_t d = M.size();
    Trajectory tr;
    tr.rep = kind;
    tr.Y = Y;
    tr.t_grid = t_grid;
    Mat<Int> U(d, std::vector<Int>(d, Int(0)));
    for (size_t i = 0; i < d; ++i) U[i][i] = 1;
    double run = 0;
    for (size_t step = 0; step < t_grid.size(); ++step) {
        Mat<HighReal> rows = scaled_rows(M, w, HighReal(t_grid[step]));
        Mat<HighReal> B(d, std::vector<HighReal>(d, HighReal(0)));
        for (size_t i = 0; i < d; ++i)
            for (size_t k = 0; k < d; ++k)
                if (U[i][k] != 0) {
                    HighReal c(U[i][k]);
                    for (size_t j = 0; j < d; ++j) B[i][j] += c * rows[k][j];
                }
        Mat<Int> Ustep;
        lll_reduce(B, &Ustep);
        Mat<Int> Unew(d, std::vector<Int>(d, Int(0)));
        for (size_t i = 0; i < d; ++i)
            for (size_t k = 0; k < d; ++k)
                if (Ustep[i][k] != 0)
                    for (size_t j = 0; j < d; ++j) Unew[i][j] += Ustep[i][k] * U[k][j];
        U.swap(Unew);
        HighReal r = detail::dot_row(B[0], B[0]);
        for (const auto& row : B) r = std::min(r, detail::dot_row(row, row));
        for (const auto& s : enumerate_short(B, r, true)) r = std::min(r, s.norm2);
        HighReal delta = sqrt(r);
        double ld = log(delta).convert_to<double>();
        tr.delta.push_back(delta.convert_to<double>());
        tr.ln_delta.push_back(ld);
        run = step == 0 ? ld : std::min(run, ld);
        tr.running_min.push_back(run);
    }
    return tr;
}

ExponentFit exponent_estimate(const Trajectory& traj) {
    if (traj.t_grid.empty() || traj.t_grid.back() < 20)
        throw Error(Errc::ShortTrajectory, "trajectory must reach t >= 20");
    double T = traj.t_grid.back();
    std::vector<double> x, y;
    for (size_t i = 0; i < traj.t_grid.size(); ++i)
        if (traj.t_grid[i] >= T / 2) {
            x.push_back(traj.t_grid[i]);
            y.push_back(traj.running_min[i]);
        }
    if (x.size() < 3) throw Error(Errc::ShortTrajectory, "fewer than 3 samples in the tail window");
    double n = static_cast<double>(x.size());
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n, my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    ExponentFit f;
    double slope = sxy / sxx;
    f.exponent = 0.0 - slope;  // never -0
    f.r2 = syy > 0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
    f.window_lo = x.front();
    f.window_hi = x.back();
    return f;
}

// ---- symbolic polynomials -----------------------------------------------

namespace {

std::vector<int> trim(std::vector<int> e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
    return e;
}

}  // namespace

Poly::Poly(const Rational& c) {
    if (c != 0) terms[{}] = c;
}

Poly Poly::theta(int k) {
    Poly p;
    std::vector<int> e(k + 1, 0);
    e[k] = 1;
    p.terms[e] = 1;
    return p;
}

bool Poly::is_constant() const { return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty()); }

Rational Poly::constant() const {
    auto it = terms.find({});
    return it == terms.end() ? Rational(0) : it->second;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms) {
        Rational& v = terms[e];
        v += c;
        if (v == 0) terms.erase(e);
    }
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms) {
        Rational& v = terms[e];
        v -= c;
        if (v == 0) terms.erase(e);
    }
    return *this;
}

std::string Poly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << to_string(c);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) os << "*theta" << i << (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
    }
    return os.str();
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator-(const Poly& a) { return Poly() - a; }

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            std::vector<int> e(std::max(ea.size(), eb.size()), 0);
            for (size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
            for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
            Poly t;
            t.terms[trim(e)] = ca * cb;
            r += t;
        }
    return r;
}

SymMatrix to_symbolic(const QMatrix& g) {
    SymMatrix s(g.size());
    for (size_t i = 0; i < g.size(); ++i)
        for (const auto& v : g[i]) s[i].push_back(Poly(v));
    return s;
}

namespace {

SymMatrix sym_mul(const SymMatrix& a, const SymMatrix& b) {
    size_t n = a.size();
    SymMatrix r(n, std::vector<Poly>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k].terms.empty()) continue;
            for (size_t j = 0; j < n; ++j)
                if (!b[k][j].terms.empty()) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

Poly sym_det(const SymMatrix& m) {
    size_t k = m.size();
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    Poly total;
    do {
        int inv = 0;
        for (size_t i = 0; i < k; ++i)
            for (size_t j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) ++inv;
        Poly term(1);
        bool zero = false;
        for (size_t i = 0; i < k && !zero; ++i) {
            if (m[i][perm[i]].terms.empty()) zero = true;
            else term = term * m[i][perm[i]];
        }
        if (zero) continue;
        if (inv % 2) total -= term;
        else total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

void check_unipotent(const SymMatrix& u) {
    size_t n = u.size();
    for (size_t i = 0; i < n; ++i) {
        if (u[i].size() != n) throw Error(Errc::DimensionMismatch, "u must be square");
        for (size_t j = 0; j <= i; ++j) {
            Poly expect = i == j ? Poly(1) : Poly();
            if (u[i][j] != expect)
                throw Error(Errc::NonUnipotentInput, "u must be upper triangular with unit diagonal");
        }
    }
}

}  // namespace

SymMatrix symbolic_rep(const RepKind& kind, const SymMatrix& u) {
    check_n(kind, u.size());
    check_unipotent(u);
    int n = kind.n;
    switch (kind.family) {
        case RepFamily::Standard: return u;
        case RepFamily::Exterior: {
            auto basis = exterior_basis(n, kind.k);
            size_t d = basis.size();
            SymMatrix r(d, std::vector<Poly>(d));
            for (size_t a = 0; a < d; ++a)
                for (size_t b = 0; b < d; ++b) {
                    SymMatrix minor(kind.k, std::vector<Poly>(kind.k));
                    for (int i = 0; i < kind.k; ++i)
                        for (int j = 0; j < kind.k; ++j) minor[i][j] = u[basis[a][i]][basis[b][j]];
                    r[a][b] = sym_det(minor);
                }
            return r;
        }
        case RepFamily::Adjoint: {
            // u^-1 = sum_m (-N)^m with N = u - I nilpotent
            SymMatrix negN(n, std::vector<Poly>(n)), inv(n, std::vector<Poly>(n)), power(n, std::vector<Poly>(n));
            for (int i = 0; i < n; ++i) {
                inv[i][i] = Poly(1);
                power[i][i] = Poly(1);
                for (int j = i + 1; j < n; ++j) negN[i][j] = -u[i][j];
            }
            for (int m = 1; m < n; ++m) {
                power = sym_mul(power, negN);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) inv[i][j] += power[i][j];
            }
            auto basis = adjoint_basis(n);
            size_t d = basis.size();
            SymMatrix r(d, std::vector<Poly>(d));
            for (size_t c = 0; c < d; ++c) {
                SymMatrix X(n, std::vector<Poly>(n));
                auto [i, j] = basis[c];
                if (i != j) {
                    X[i][j] = Poly(1);
                } else {
                    X[i][i] = Poly(1);
                    X[i + 1][i + 1] = Poly(-1);
                }
                SymMatrix Yc = sym_mul(sym_mul(u, X), inv);
                for (size_t a = 0; a < d; ++a) {
                    auto [p, q] = basis[a];
                    if (p != q) {
                        r[a][c] = Yc[p][q];
                    } else {
                        Poly h;
                        for (int t = 0; t <= p; ++t) h += Yc[t][t];
                        r[a][c] = h;
                    }
                }
            }
            return r;
        }
    }
    return u;
}

int slice_beta0_index(const RepKind& kind) {
    kind.validate();
    switch (kind.family) {
        case RepFamily::Standard: return kind.n - 1;
        case RepFamily::Exterior: return kind.d() - 1;
        case RepFamily::Adjoint: {
            auto b = adjoint_basis(kind.n);
            return static_cast<int>(std::find(b.begin(), b.end(), std::make_pair(kind.n - 1, 0)) - b.begin());
        }
    }
    return 0;
}

SliceIntersection slice_intersection(const RepKind& kind, const SymMatrix& u) {
    SymMatrix M = symbolic_rep(kind, u);
    int idx = slice_beta0_index(kind);
    size_t d = M.size();
    // M c lies on the beta0 line iff every other coordinate vanishes; the
    // thetas are independent, so each monomial gives a rational equation
    QMatrix eqs;
    for (size_t i = 0; i < d; ++i) {
        if (static_cast<int>(i) == idx) continue;
        std::map<std::vector<int>, QVec> rows;
        for (size_t j = 0; j < d; ++j)
            for (const auto& [e, c] : M[i][j].terms) {
                auto& row = rows[e];
                if (row.empty()) row.assign(d, Rational(0));
                row[j] = c;
            }
        for (auto& [e, row] : rows) eqs.push_back(row);
    }
    IntMatrix K;
    if (eqs.empty()) {
        K.assign(d, std::vector<Int>(d, Int(0)));
        for (size_t i = 0; i < d; ++i) K[i][i] = 1;
    } else {
        K = right_kernel(integral_rows(eqs));
    }
    SliceIntersection res;
    res.rank = static_cast<int>(K.size());
    if (res.rank != 1) return res;
    Poly value;
    for (size_t j = 0; j < d; ++j)
        if (K[0][j] != 0) value += M[idx][j] * Poly(Rational(K[0][j]));
    if (!value.is_constant()) throw Error(Errc::NonUnipotentInput, "beta0 coordinate is not rational");
    Rational v = value.constant();
    res.coeffs = K[0];
    if (v < 0) {
        v = -v;
        for (auto& c : res.coeffs) c = -c;
    }
    res.height = v;
    return res;
}

bool is_rational_slice(const RepKind& kind, const SymMatrix& u) { return slice_intersection(kind, u).rank == 1; }

Rational slice_height(const RepKind& kind, const SymMatrix& u) {
    auto r = slice_intersection(kind, u);
    if (r.rank != 1) throw Error(Errc::ConditionFailed, "slice element is not rational: no height");
    return r.height;
}

// ---- counting and growth ------------------------------------------------

GrowthFit fit_growth(const std::vector<double>& scale, const std::vector<double>& value) {
    if (scale.size() != value.size()) throw Error(Errc::DimensionMismatch, "scale/value length mismatch");
    GrowthFit f;
    for (size_t i = 0; i < scale.size(); ++i)
        if (scale[i] > 0 && value[i] > 0) {
            f.x.push_back(std::log(scale[i]));
            f.y.push_back(std::log(value[i]));
        }
    if (f.x.size() < 2) throw Error(Errc::TooFewPoints, "need two positive points to fit a growth rate");
    size_t n = f.x.size();
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd b(n);
    for (size_t i = 0; i < n; ++i) {
        A(i, 0) = f.x[i];
        A(i, 1) = 1;
        b(i) = f.y[i];
    }
    Eigen::VectorXd sol = A.colPivHouseholderQr().solve(b);
    f.exponent = sol(0);
    double mean = b.mean();
    double ss_tot = (b.array() - mean).square().sum();
    double ss_res = (A.lazyProduct(sol) - b).squaredNorm();
    f.r2 = ss_tot > 0 ? std::clamp(1 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
    f.window_lo = *std::min_element(f.x.begin(), f.x.end());
    f.window_hi = *std::max_element(f.x.begin(), f.x.end());
    f.window_lo = std::exp(f.window_lo);
    f.window_hi = std::exp(f.window_hi);
    bool loglog = n >= 4 && std::all_of(f.x.begin(), f.x.end(), [](double x) { return x > 0; });
    if (loglog) {
        Eigen::MatrixXd A3(n, 3);
        for (size_t i = 0; i < n; ++i) {
            A3(i, 0) = f.x[i];
            A3(i, 1) = std::log(f.x[i]);
            A3(i, 2) = 1;
        }
        Eigen::VectorXd s3 = A3.colPivHouseholderQr().solve(b);
        f.log_correction = s3(1);
    }
    return f;
}

namespace {

Int ceil_q(const Rational& x) {
    Int q = numerator(x) / denominator(x);
    if (q * denominator(x) < numerator(x)) q += 1;
    return q;
}

Int floor_q(const Rational& x) {
    Int q = numerator(x) / denominator(x);
    if (q * denominator(x) > numerator(x)) q -= 1;
    return q;
}

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// squarefree divisors of q with their Moebius signs
std::vector<std::pair<long long, int>> mobius_divisors(long long q, const std::vector<int>& spf) {
    std::vector<long long> primes;
    while (q > 1) {
        long long p = spf[q];
        primes.push_back(p);
        while (q % p == 0) q /= p;
    }
    std::vector<std::pair<long long, int>> out{{1, 1}};
    for (long long p : primes) {
        size_t m = out.size();
        for (size_t i = 0; i < m; ++i) out.push_back({out[i].first * p, -out[i].second});
    }
    return out;
}

std::vector<int> smallest_prime_factors(long long n) {
    std::vector<int> spf(n + 1, 0);
    for (long long i = 2; i <= n; ++i)
        if (spf[i] == 0)
            for (long long j = i; j <= n; j += i)
                if (spf[j] == 0) spf[j] = static_cast<int>(i);
    return spf;
}

double count_sl2(const SliceBox& box, long long qa, long long qb) {
    if (box.lo.size() != 1 || box.hi.size() != 1) throw Error(Errc::DimensionMismatch, "SL2 box is one interval");
    if (box.hi[0] < box.lo[0] || qb < qa) return 0;
    auto spf = smallest_prime_factors(qb);
    double total = 0;
    for (long long q = std::max(1LL, qa); q <= qb; ++q) {
        long long plo = static_cast<long long>(ceil_q(box.lo[0] * q));
        long long phi = static_cast<long long>(floor_q(box.hi[0] * q));
        if (phi < plo) continue;
        long long c = 0;
        for (auto [dv, mu] : mobius_divisors(q, spf)) c += mu * (floor_div(phi, dv) - floor_div(plo - 1, dv));
        total += static_cast<double>(c);
    }
    return total;
}

double count_sl3(const SliceBox& box, long long qa, long long qb) {
    if (box.lo.size() != 3 || box.hi.size() != 3) throw Error(Errc::DimensionMismatch, "SL3 box has 3 intervals");
    for (int i = 0; i < 3; ++i)
        if (box.hi[i] < box.lo[i]) return 0;
    double s0 = to_double(box.lo[0]), s1 = to_double(box.hi[0]);
    double y0 = to_double(box.lo[1]), y1 = to_double(box.hi[1]);
    long double total = 0;
    for (long long q = std::max(1LL, qa); q <= qb; ++q) {
        long long jlo = static_cast<long long>(ceil_q(box.lo[2] * q)), jhi = static_cast<long long>(floor_q(box.hi[2] * q));
        for (long long j = jlo; j <= jhi; ++j) {
            double b = static_cast<double>(j) / static_cast<double>(q);
            double bmin = std::min(b * s0, b * s1), bmax = std::max(b * s0, b * s1);
            // a + s b must meet [y0, y1] for some s in [s0, s1]
            long long ilo = static_cast<long long>(std::ceil((y0 - bmax) * q - 1e-9));
            long long ihi = static_cast<long long>(std::floor((y1 - bmin) * q + 1e-9));
            long long gj = std::gcd(j, q);
            for (long long i = ilo; i <= ihi; ++i) {
                if (std::gcd(i, gj) != 1) continue;
                double a = static_cast<double>(i) / static_cast<double>(q);
                double lo = s0, hi = s1;
                if (j == 0) {
                    if (a < y0 || a > y1) continue;
                } else {
                    lo = std::max(lo, (y0 - a) / b);
                    hi = std::min(hi, (y1 - a) / b);
                }
                if (hi > lo) total += hi - lo;
            }
        }
    }
    return static_cast<double>(total);
}

}  // namespace

Rational count_rationals(const RepKind& kind, const SliceBox& box, const Rational& A, const Rational& B) {
    kind.validate();
    if (!(A < B)) throw Error(Errc::InvalidConfig, "need A < B");
    long long qa = static_cast<long long>(ceil_q(A)), qb = static_cast<long long>(floor_q(B));
    if (qb > 100000000) throw Error(Errc::BudgetExceeded, "height bound too large");
    if (kind.family == RepFamily::Standard && kind.n == 2) return Rational(static_cast<long long>(count_sl2(box, qa, qb)));
    if (kind.family == RepFamily::Standard && kind.n == 3) return from_double(count_sl3(box, qa, qb));
    throw Error(Errc::UnsupportedKind, "counting supports Standard(2) and Standard(3), not " + kind.str());
}

GrowthFit counting_exponent(const RepKind& kind, const SliceBox& box, const std::vector<double>& l_grid) {
    std::vector<double> vals;
    for (double l : l_grid) vals.push_back(to_double(count_rationals(kind, box, from_double(l / 2), from_double(l))));
    return fit_growth(l_grid, vals);
}

namespace {

Mat<double> mat_exp_nilpotent(const Mat<double>& X) {
    size_t n = X.size();
    Mat<double> r = identity_mat<double>(static_cast<int>(n)), term = identity_mat<double>(static_cast<int>(n));
    for (size_t k = 1; k < n; ++k) {
        term = mat_mul(term, X);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) term[i][j] /= static_cast<double>(k);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) r[i][j] += term[i][j];
    }
    return r;
}

}  // namespace

std::vector<double> volume_estimates(const RepKind& kind, const FlowSpec& Y, const WeylElement& w,
                                     const std::vector<double>& R_grid, const VolumeOptions& opt) {
    kind.validate();
    int n = kind.n;
    auto ors = orient_to_flow(build_root_system(Series::A, n - 1), Y);
    QVec lambda0 = ors.weight_from_labels(kind.labels());
    auto ws = weight_system(ors, lambda0);
    int idx = beta0_index(kind, Y);
    if (flow_weights(kind, Y)[idx] != ors.flow(lambda0))
        throw Error(Errc::ConditionFailed, "beta0 line is not a basis vector for this flow");
    if (static_cast<int>(w.perm.size()) != n) throw Error(Errc::DimensionMismatch, "Weyl element size");
    auto F = f_w_roots(ors, ws.parabolic, w);
    size_t m = F.size();
    if (m > 6) throw Error(Errc::MonteCarloGuard, "dim F_w = " + std::to_string(m) + " > 6");
    if (opt.samples == 0) throw Error(Errc::MonteCarloGuard, "no samples requested");
    // generator positions after conjugation by w
    std::vector<std::pair<int, int>> pos;
    for (const auto& a : F) {
        IVec wa = w.apply(a);
        int i = static_cast<int>(std::find(wa.begin(), wa.end(), 1) - wa.begin());
        int j = static_cast<int>(std::find(wa.begin(), wa.end(), -1) - wa.begin());
        pos.emplace_back(i, j);
    }
    auto psi_norm = [&](const std::vector<double>& x) {
        Mat<double> X(n, std::vector<double>(n, 0.0));
        for (size_t k = 0; k < m; ++k) X[pos[k].first][pos[k].second] = x[k];
        auto r = rep_matrix_unchecked<double>(kind, mat_exp_nilpotent(X));
        double s = 0;
        for (const auto& row : r) s += row[idx] * row[idx];
        return std::sqrt(s);
    };
    std::vector<double> out;
    if (m == 0) {
        double v = psi_norm({});
        for (double R : R_grid) out.push_back(v <= R ? 1.0 : 0.0);
        return out;
    }
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<std::vector<double>> unit(opt.samples, std::vector<double>(m));
    for (auto& u : unit)
        for (auto& c : u) c = U(rng);
    for (double R : R_grid) {
        double L = R;
        double vol = 0;
        for (int attempt = 0; attempt < 40; ++attempt) {
            std::size_t hit = 0;
            bool touches = false;
            std::vector<double> x(m);
            for (const auto& u : unit) {
                for (size_t k = 0; k < m; ++k) x[k] = L * u[k];
                if (psi_norm(x) <= R) {
                    ++hit;
                    for (double c : u) touches = touches || std::abs(c) > 0.5;
                }
            }
            vol = std::pow(2 * L, static_cast<double>(m)) * static_cast<double>(hit) / static_cast<double>(unit.size());
            // accept once the sublevel set sits inside the inner half box
            if (!touches && hit > 0) break;
            L = touches ? 2 * L : L / 2;
            if (attempt == 39) throw Error(Errc::MonteCarloGuard, "could not bracket E_w(R)");
        }
        out.push_back(vol);
    }
    return out;
}

GrowthFit volume_growth(const RepKind& kind, const FlowSpec& Y, const WeylElement& w,
                        const std::vector<double>& R_grid, const VolumeOptions& opt) {
    for (size_t i = 1; i < R_grid.size(); ++i)
        if (!(R_grid[i] > R_grid[i - 1])) throw Error(Errc::InvalidConfig, "R grid must increase");
    auto v = volume_estimates(kind, Y, w, R_grid, opt);
    bool constant = std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    if (constant && v.front() > 0) {
        GrowthFit f;
        f.exponent = 0;
        f.r2 = 1;
        f.window_lo = R_grid.front();
        f.window_hi = R_grid.back();
        return f;
    }
    return fit_growth(R_grid, v);
}

namespace {

long long isqrt(long long v) {
    if (v < 0) return -1;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// integer points of Z^n with |v|^2 <= r2 (zero included)
long long ball_points(int n, long long r2) {
    if (r2 < 0) return 0;
    if (n == 1) return 2 * isqrt(r2) + 1;
    long long s = 0, r = isqrt(r2);
    for (long long x = -r; x <= r; ++x) s += ball_points(n - 1, r2 - x * x);
    return s;
}

std::vector<int> mobius_table(long long n) {
    std::vector<int> mu(n + 1, 1), spf = smallest_prime_factors(n);
    mu[0] = 0;
    for (long long i = 2; i <= n; ++i) {
        long long p = spf[i], q = i / p;
        mu[i] = (q % p == 0) ? 0 : -mu[q];
    }
    return mu;
}

}  // namespace

Int count_primitive(int n, double H) {
    if (n < 1 || n > 4) throw Error(Errc::UnsupportedKind, "primitive counting supports 1 <= n <= 4");
    if (H < 1) return 0;
    long long r2 = static_cast<long long>(std::floor(H * H + 1e-9));
    long long dmax = isqrt(r2);
    auto mu = mobius_table(dmax);
    Int total = 0;
    for (long long d = 1; d <= dmax; ++d)
        if (mu[d] != 0) total += mu[d] * (ball_points(n, r2 / (d * d)) - 1);
    return total / 2;
}

GrowthFit rational_point_growth(const RepKind& kind, const std::vector<double>& H_grid) {
    kind.validate();
    if (kind.family != RepFamily::Standard || kind.n > 4)
        throw Error(Errc::UnsupportedKind, "rational point growth supports Standard(n), n <= 4");
    std::vector<double> vals;
    for (double H : H_grid) vals.push_back(count_primitive(kind.n, H).convert_to<double>());
    return fit_growth(H_grid, vals);
}

// ---- box counting -------------------------------------------------------

GrowthFit box_dimension(const std::vector<std::vector<double>>& points, int j_lo, int j_hi) {
    if (points.size() < 10000) throw Error(Errc::TooFewPoints, std::to_string(points.size()) + " < 10^4 points");
    if (j_lo < 0 || j_hi <= j_lo || j_hi > 40) throw Error(Errc::InvalidConfig, "scale window must satisfy 0 <= j_lo < j_hi <= 40");
    size_t m = points[0].size();
    std::vector<double> scale, count;
    for (int j = j_lo; j <= j_hi; ++j) {
        double s = std::ldexp(1.0, j);
        long long top = (1LL << j) - 1;
        std::vector<std::vector<long long>> keys;
        keys.reserve(points.size());
        for (const auto& p : points) {
            if (p.size() != m) throw Error(Errc::DimensionMismatch, "points of mixed dimension");
            std::vector<long long> k(m);
            for (size_t i = 0; i < m; ++i)
                k[i] = std::clamp(static_cast<long long>(std::floor(p[i] * s)), 0LL, top);
            keys.push_back(std::move(k));
        }
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        scale.push_back(s);
        count.push_back(static_cast<double>(keys.size()));
    }
    return fit_growth(scale, count);
}

FareyBallDimension farey_ball_dimension(int Q, double c, int j_lo, int j_hi) {
    if (Q < 1 || c < 0) throw Error(Errc::InvalidConfig, "need Q >= 1 and c >= 0");
    if (j_lo < 0 || j_hi <= j_lo || j_hi > 40) throw Error(Errc::InvalidConfig, "bad scale window");
    struct Center {
        double x;
        int q;
    };
    std::vector<Center> centers;
    for (int q = 1; q <= Q; ++q)
        for (int p = 0; p <= q; ++p)
            if (std::gcd(p, q) == 1) centers.push_back({static_cast<double>(p) / q, q});
    if (centers.size() < 10000) throw Error(Errc::TooFewPoints, "Q too small for a box count");
    std::vector<double> scale, resolved, literal;
    // literal union, merged once
    std::vector<std::pair<double, double>> iv;
    for (const auto& ce : centers) {
        double r = std::pow(static_cast<double>(ce.q), -(2 + c));
        iv.push_back({std::max(0.0, ce.x - r), std::min(1.0, ce.x + r)});
    }
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& v : iv) {
        if (!merged.empty() && v.first <= merged.back().second) merged.back().second = std::max(merged.back().second, v.second);
        else merged.push_back(v);
    }
    for (int j = j_lo; j <= j_hi; ++j) {
        double s = std::ldexp(1.0, j);
        long long top = (1LL << j) - 1;
        double qmax = std::min(static_cast<double>(Q), std::pow(s, 1.0 / (2 + c)));
        std::vector<long long> boxes;
        for (const auto& ce : centers)
            if (ce.q <= qmax) boxes.push_back(std::min(static_cast<long long>(std::floor(ce.x * s)), top));
        std::sort(boxes.begin(), boxes.end());
        boxes.erase(std::unique(boxes.begin(), boxes.end()), boxes.end());
        long long lit = 0, last = -1;
        for (const auto& [a, b] : merged) {
            long long k0 = std::min(static_cast<long long>(std::floor(a * s)), top);
            long long k1 = std::min(static_cast<long long>(std::floor(b * s)), top);
            k0 = std::max(k0, last + 1);
            if (k1 >= k0) {
                lit += k1 - k0 + 1;
                last = k1;
            }
        }
        scale.push_back(s);
        resolved.push_back(static_cast<double>(boxes.size()));
        literal.push_back(static_cast<double>(lit));
    }
    return {fit_growth(scale, resolved), fit_growth(scale, literal)};
}

std::vector<double> cantor_points(int depth) {
    if (depth < 0 || depth > 24) throw Error(Errc::InvalidConfig, "depth must be in [0, 24]");
    std::vector<double> pts{0.0};
    double len = 1;
    for (int d = 0; d < depth; ++d) {
        len /= 3;
        std::vector<double> next;
        for (double p : pts) {
            next.push_back(p);
            next.push_back(p + 2 * len);
        }
        pts.swap(next);
    }
    return pts;
}

}  // namespace dimflow
