#pragma once

#include "dimflow/rational.hpp"
#include "dimflow/repweights.hpp"
#include "dimflow/rootsys.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dimflow {

// psi(t) = C e^{-tau t} (1+t)^{-sigma}; with super_exponential set the
// family is replaced by psi(t) = C exp(-e^t) (tau = gamma = infinity).
// Read in u = e^t the same record is psi(u) = C u^{-tau} (1 + ln u)^{-sigma}.
struct RateFunction {
    double C = 1.0;
    Rational tau_param = 0;
    Rational sigma = 0;
    bool super_exponential = false;

    void validate() const;
    double operator()(double t) const;
    // e^{tau t} psi(t) unbounded as t -> infinity
    bool unbounded_at_boundary() const { return !super_exponential && sigma < 0; }
};

ExtRational tau(const RateFunction& psi);
// lower order at infinity of psi(u); same parameter read in u = e^t
ExtRational gamma(const RateFunction& psi);

enum class Validity { Interior, BoundaryBounded, BoundaryUnbounded, OutOfRange };
const char* validity_name(Validity v);

Validity check_range(const Rational& tau, const Rational& beta0_am1, bool unbounded_at_boundary);
Validity check_range(const ExtRational& tau, const Rational& beta0_am1, bool unbounded_at_boundary);

struct DimValue {
    bool empty = false;
    Rational value = 0;

    static DimValue of(const Rational& q) { return {false, q}; }
    static DimValue none() { return {true, 0}; }
    std::string str() const { return empty ? "Empty" : to_string(value); }
    bool operator==(const DimValue& o) const = default;
};

struct Ingredients {
    Rational beta0_am1 = 0;   // beta0(a_{-1})
    Rational nu0_a1 = 0;      // nu0(a_1)
    Rational sum_alpha_a1 = 0;  // sum of alpha(a_1) over Phi(R_u(Pbar_beta0))
    int dim_G = 0;
    ExtRational tau;
    std::optional<Rational> kappa;
};

struct DimensionReport {
    DimValue value;
    Validity validity = Validity::Interior;
    Ingredients ingredients;
    std::string tag;  // which closed form produced the value
    std::string to_text() const;
};

Ingredients ingredients(const OrientedRootSystem& ors, const WeightSystem& ws,
                        const RateFunction& psi);

DimensionReport dim_exact(const OrientedRootSystem& ors, const WeightSystem& ws,
                          const RateFunction& psi);
// Closed forms for SL_n on C^n and on sl_n; Y must be nonincreasing.
DimensionReport dim_standard(int n, const FlowSpec& Y, const RateFunction& psi);
DimensionReport dim_adjoint(int n, const FlowSpec& Y, const RateFunction& psi);
// The lower bound; the same expression as dim_exact without the
// proportionality condition.
Rational dim_lower(const OrientedRootSystem& ors, const WeightSystem& ws, const RateFunction& psi);

struct WeylTermData {
    WeylElement w;
    std::vector<IVec> f_w;
    Rational sum_alpha_a1 = 0;  // over Phi(F_w)
    Rational beta0_w = 0;       // beta0(w a_{-1} w^{-1})
    Rational a_w = 0;
    Rational A_w = 0;
    int dim_V_beta0 = 1;
};

// growth(w) supplies (a_w, A_w); every Weyl element contributes a term.
std::vector<WeylTermData> weyl_terms(
    const OrientedRootSystem& ors, const WeightSystem& ws,
    const std::function<std::pair<Rational, Rational>(const WeylElement&)>& growth);

struct UpperBound {
    Rational value;
    WeylElement argmax;
    std::size_t admissible = 0;
};
UpperBound dim_upper(const std::vector<WeylTermData>& terms, int dim_G, const Rational& nu0_a1,
                     const Rational& tau);
// a_w <= a_e and A_w <= A_e for all terms
bool growth_dominated_by_identity(const std::vector<WeylTermData>& terms);

Rational a0_bound(const Rational& kappa, int dim_V_beta0);

struct TreelikeBound {
    double value = 0;
    std::size_t window_lo = 0, window_hi = 0;  // indices k used for the limsup
};
TreelikeBound treelike_lower_bound(const std::vector<double>& density,
                                   const std::vector<double>& diameter, double ambient_dim);

// Flag variety G/P_chi with the canonical flow (alpha(Y) = 0 on Delta_P,
// -1 on the other simple roots).
Rational dim_flag(const RootSystem& rs, const IVec& chi_labels, const ExtRational& gamma);
Rational dim_grassmann(int n, int l, int k, const ExtRational& gamma);

}  // namespace dimflow
