#include "dimflow/dimformulas.hpp"

#include "dimflow/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dimflow {

void RateFunction::validate() const {
    if (!(C > 0)) throw Error(Errc::InvalidConfig, "psi: C must be positive");
    if (tau_param < 0) throw Error(Errc::NegativeTau, "psi: tau must be >= 0");
    if (tau_param == 0 && sigma < 0)
        throw Error(Errc::InvalidConfig, "psi must be bounded (tau = 0 needs sigma >= 0)");
}

double RateFunction::operator()(double t) const {
    if (super_exponential) return C * std::exp(-std::exp(t));
    return C * std::exp(-to_double(tau_param) * t) * std::pow(1 + t, -to_double(sigma));
}

ExtRational tau(const RateFunction& psi) {
    return psi.super_exponential ? ExtRational::inf() : ExtRational::of(psi.tau_param);
}

ExtRational gamma(const RateFunction& psi) { return tau(psi); }

const char* validity_name(Validity v) {
    switch (v) {
        case Validity::Interior: return "Interior";
        case Validity::BoundaryBounded: return "BoundaryBounded";
        case Validity::BoundaryUnbounded: return "BoundaryUnbounded";
        case Validity::OutOfRange: return "OutOfRange";
    }
    return "?";
}

Validity check_range(const Rational& t, const Rational& b0, bool unbounded) {
    if (t < 0) throw Error(Errc::NegativeTau, "tau = " + to_string(t));
    if (b0 <= 0) throw Error(Errc::TrivialFlowOnV, "beta0(a_-1) must be positive");
    if (t > b0) return Validity::OutOfRange;
    if (t < b0) return Validity::Interior;
    return unbounded ? Validity::BoundaryUnbounded : Validity::BoundaryBounded;
}

Validity check_range(const ExtRational& t, const Rational& b0, bool unbounded) {
    if (t.infinite) return Validity::OutOfRange;
    return check_range(t.value, b0, unbounded);
}

std::string DimensionReport::to_text() const {
    std::ostringstream os;
    os << "tag = " << tag << "\n";
    os << "validity = " << validity_name(validity) << "\n";
    os << "value = " << value.str() << "\n";
    if (!value.empty) os << "value_approx = " << to_double(value.value) << "\n";
    os << "beta0_a_minus1 = " << to_string(ingredients.beta0_am1) << "\n";
    os << "nu0_a1 = " << to_string(ingredients.nu0_a1) << "\n";
    os << "sum_alpha_a1 = " << to_string(ingredients.sum_alpha_a1) << "\n";
    os << "dim_G = " << ingredients.dim_G << "\n";
    os << "tau = " << ingredients.tau.str() << "\n";
    os << "kappa = " << (ingredients.kappa ? to_string(*ingredients.kappa) : "none") << "\n";
    return os.str();
}

Ingredients ingredients(const OrientedRootSystem& ors, const WeightSystem& ws,
                        const RateFunction& psi) {
    Ingredients in;
    in.beta0_am1 = -ors.flow(ws.highest);
    if (in.beta0_am1 <= 0) throw Error(Errc::TrivialFlowOnV, "beta0(a_-1) <= 0");
    in.nu0_a1 = nu0(ors).value;
    for (const auto& a : ws.parabolic.opposite_nilradical) in.sum_alpha_a1 += ors.flow(a);
    in.dim_G = ors.base.dim_group();
    in.tau = tau(psi);
    in.kappa = kappa(ws);
    return in;
}

namespace {

Rational exact_value(const Ingredients& in) {
    return in.dim_G - in.tau.value / (in.beta0_am1 * in.nu0_a1) * in.sum_alpha_a1;
}

DimValue value_for(Validity v, const Rational& x) {
    return (v == Validity::Interior || v == Validity::BoundaryUnbounded) ? DimValue::of(x)
                                                                          : DimValue::none();
}

void require_nonincreasing(const FlowSpec& Y) {
    for (size_t i = 1; i < Y.Y.size(); ++i)
        if (Y.Y[i] > Y.Y[i - 1])
            throw Error(Errc::ConditionFailed, "flow must be sorted nonincreasing");
    Rational tr = 0;
    for (const auto& y : Y.Y) tr += y;
    if (tr != 0) throw Error(Errc::DimensionMismatch, "flow must have trace zero");
    if (Y.trivial()) throw Error(Errc::TrivialFlow, "Y = 0");
}

}  // namespace

DimensionReport dim_exact(const OrientedRootSystem& ors, const WeightSystem& ws,
                          const RateFunction& psi) {
    psi.validate();
    DimensionReport r;
    r.tag = "exact-proportional";
    r.ingredients = ingredients(ors, ws, psi);
    if (!r.ingredients.kappa)
        throw Error(Errc::ConditionFailed,
                    "highest weight is not proportional to the sum of Phi(R_u(Pbar_beta0)); "
                    "use dim_lower / dim_upper");
    r.validity = check_range(r.ingredients.tau, r.ingredients.beta0_am1, psi.unbounded_at_boundary());
    r.value = r.validity == Validity::OutOfRange || r.validity == Validity::BoundaryBounded
                  ? DimValue::none()
                  : DimValue::of(exact_value(r.ingredients));
    return r;
}

DimensionReport dim_standard(int n, const FlowSpec& Y, const RateFunction& psi) {
    psi.validate();
    if (static_cast<int>(Y.Y.size()) != n) throw Error(Errc::DimensionMismatch, "flow length != n");
    require_nonincreasing(Y);
    DimensionReport r;
    r.tag = "standard-representation";
    auto& in = r.ingredients;
    in.dim_G = n * n - 1;
    in.nu0_a1 = Y.Y.front() - Y.Y.back();
    in.beta0_am1 = -Y.Y.back();
    in.sum_alpha_a1 = n * in.beta0_am1;
    in.kappa = Rational(-1, n);
    in.tau = tau(psi);
    r.validity = check_range(in.tau, in.beta0_am1, psi.unbounded_at_boundary());
    r.value = in.tau.infinite ? DimValue::none()
                              : value_for(r.validity, in.dim_G - n * in.tau.value / in.nu0_a1);
    return r;
}

DimensionReport dim_adjoint(int n, const FlowSpec& Y, const RateFunction& psi) {
    psi.validate();
    if (static_cast<int>(Y.Y.size()) != n) throw Error(Errc::DimensionMismatch, "flow length != n");
    require_nonincreasing(Y);
    DimensionReport r;
    r.tag = "adjoint-representation";
    auto& in = r.ingredients;
    in.dim_G = n * n - 1;
    in.nu0_a1 = Y.Y.front() - Y.Y.back();
    in.beta0_am1 = in.nu0_a1;
    in.sum_alpha_a1 = (n - 1) * in.beta0_am1;
    in.kappa = Rational(-1, n - 1);
    in.tau = tau(psi);
    r.validity = check_range(in.tau, in.beta0_am1, psi.unbounded_at_boundary());
    r.value = in.tau.infinite ? DimValue::none()
                              : value_for(r.validity, in.dim_G - (n - 1) * in.tau.value / in.nu0_a1);
    return r;
}

Rational dim_lower(const OrientedRootSystem& ors, const WeightSystem& ws, const RateFunction& psi) {
    psi.validate();
    Ingredients in = ingredients(ors, ws, psi);
    if (in.tau.infinite || in.tau.value > in.beta0_am1)
        throw Error(Errc::OutOfRange, "tau exceeds beta0(a_-1) = " + to_string(in.beta0_am1));
    return exact_value(in);
}

std::vector<WeylTermData> weyl_terms(
    const OrientedRootSystem& ors, const WeightSystem& ws,
    const std::function<std::pair<Rational, Rational>(const WeylElement&)>& growth) {
    std::vector<WeylTermData> out;
    QVec minusY = Rational(-1) * ors.flow.Y;
    for (const auto& w : weyl_elements(ors.base)) {
        WeylTermData t;
        t.w = w;
        t.f_w = f_w_roots(ors, ws.parabolic, w);
        for (const auto& a : t.f_w) t.sum_alpha_a1 += ors.flow(a);
        t.beta0_w = dot(ws.highest, w.apply(minusY));
        std::tie(t.a_w, t.A_w) = growth(w);
        t.dim_V_beta0 = ws.dim_V_beta0;
        out.push_back(std::move(t));
    }
    return out;
}

UpperBound dim_upper(const std::vector<WeylTermData>& terms, int dim_G, const Rational& nu0_a1,
                     const Rational& tau) {
    if (terms.empty()) throw Error(Errc::NoAdmissibleWeylTerm, "no Weyl terms supplied");
    if (nu0_a1 <= 0) throw Error(Errc::TrivialFlow, "nu0(a_1) must be positive");
    UpperBound best;
    bool have = false;
    for (const auto& t : terms) {
        if (t.beta0_w < tau) continue;
        ++best.admissible;
        Rational growth = std::max(t.a_w, t.A_w);
        Rational v = dim_G - t.sum_alpha_a1 / nu0_a1 + (t.beta0_w - tau) / nu0_a1 * growth * t.dim_V_beta0;
        if (!have || v > best.value) {
            best.value = v;
            best.argmax = t.w;
            have = true;
        }
    }
    if (!have)
        throw Error(Errc::NoAdmissibleWeylTerm,
                    "no Weyl element has beta0(w a_-1 w^-1) >= tau = " + to_string(tau));
    return best;
}

bool growth_dominated_by_identity(const std::vector<WeylTermData>& terms) {
    const WeylTermData* e = nullptr;
    for (const auto& t : terms)
        if (t.w.is_identity()) e = &t;
    if (!e) return false;
    for (const auto& t : terms)
        if (t.a_w > e->a_w || t.A_w > e->A_w) return false;
    return true;
}

Rational a0_bound(const Rational& kappa, int dim_V_beta0) {
    if (kappa == 0) throw Error(Errc::ZeroKappa, "kappa = 0");
    if (dim_V_beta0 <= 0) throw Error(Errc::DimensionMismatch, "dim V_beta0 must be positive");
    return 1 / (abs(kappa) * dim_V_beta0);
}

TreelikeBound treelike_lower_bound(const std::vector<double>& density,
                                   const std::vector<double>& diameter, double ambient_dim) {
    size_t m = density.size();
    if (m < 2 || diameter.size() != m)
        throw Error(Errc::DegenerateSequence, "need two sequences of equal length >= 2");
    for (size_t i = 0; i < m; ++i) {
        if (!(density[i] > 0 && density[i] <= 1))
            throw Error(Errc::DegenerateSequence, "densities must lie in (0, 1]");
        if (!(diameter[i] > 0) || (i && !(diameter[i] < diameter[i - 1])))
            throw Error(Errc::DegenerateSequence, "diameters must be positive and strictly decreasing");
    }
    // ratio_k uses densities 0..k and diameter k+1, for k = 0..m-2
    std::vector<double> ratio;
    double acc = 0;
    for (size_t k = 0; k + 1 < m; ++k) {
        acc += std::log(density[k]);
        double ld = std::log(diameter[k + 1]);
        if (ld == 0) throw Error(Errc::DegenerateSequence, "diameter equal to 1 at level " + std::to_string(k + 1));
        ratio.push_back(acc / ld);
    }
    TreelikeBound b;
    b.window_lo = (2 * ratio.size()) / 3;
    b.window_hi = ratio.size() - 1;
    double mx = ratio[b.window_lo];
    for (size_t k = b.window_lo; k <= b.window_hi; ++k) mx = std::max(mx, ratio[k]);
    b.value = ambient_dim - mx;
    return b;
}

Rational dim_flag(const RootSystem& rs, const IVec& chi_labels, const ExtRational& gamma_) {
    if (static_cast<int>(chi_labels.size()) != rs.rank)
        throw Error(Errc::DimensionMismatch, "wrong number of Dynkin labels");
    if (!gamma_.infinite && gamma_.value < 0) throw Error(Errc::InvalidConfig, "gamma must be >= 0");
    QVec Y(rs.ambient, 0);
    bool any = false;
    for (int j = 0; j < rs.rank; ++j) {
        if (chi_labels[j] < 0) throw Error(Errc::NonDominantWeight, "negative Dynkin label");
        if (chi_labels[j] == 0) continue;
        any = true;
        Rational len2 = dot(rs.simple_std[j], to_qvec(rs.simple_std[j]));
        Y = Y - (2 / len2) * rs.fundamental_std[j];
    }
    if (!any) throw Error(Errc::ConditionFailed, "trivial character: the flag variety is a point");
    OrientedRootSystem ors = orient_to_flow(rs, FlowSpec(Y));
    QVec chi = ors.weight_from_labels(chi_labels);
    ParabolicData p = parabolic_from_weight(ors, chi);
    QVec sum(rs.ambient, 0);
    for (const auto& a : p.nilradical) sum = sum + to_qvec(a);
    Rational c = dot(chi, sum) / dot(sum, sum);
    if (c * sum != chi)
        throw Error(Errc::ConditionFailed, "chi is not proportional to the sum of Phi(R_u(P))");
    Rational chi_am1 = -ors.flow(chi);
    Rational beta = 1 / chi_am1;
    Rational nu = nu0(ors).value;
    Rational s = 0;
    for (const auto& a : p.nilradical) s -= ors.flow(a);
    Rational dimX = static_cast<int>(p.nilradical.size());
    Rational inner = gamma_.infinite ? Rational(1 / beta) : Rational(1 / beta - 1 / (gamma_.value + beta));
    return dimX - inner * (1 / (chi_am1 * nu)) * s;
}

Rational dim_grassmann(int n, int l, int k, const ExtRational& gamma_) {
    if (!(1 <= k && k <= l && l < n))
        throw Error(Errc::BadIndices, "need 1 <= k <= l < n, got n=" + std::to_string(n) +
                                          " l=" + std::to_string(l) + " k=" + std::to_string(k));
    if (!gamma_.infinite && gamma_.value < 0) throw Error(Errc::InvalidConfig, "gamma must be >= 0");
    Rational base = Rational((l - k) * (n - l));
    if (gamma_.infinite) return base;
    return base + Rational(n) / (Rational(n, k * (n - l)) + gamma_.value);
}

}  // namespace dimflow
