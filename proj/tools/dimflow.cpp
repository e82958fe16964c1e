#include "dimflow/config.hpp"
#include "dimflow/dimformulas.hpp"
#include "dimflow/error.hpp"
#include "dimflow/grassmann.hpp"
#include "dimflow/latticeflow.hpp"
#include "dimflow/parallel.hpp"
#include "dimflow/suites.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace dimflow;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitVerifyFailed = 3;

// Every report starts with the command echo, config hash, tag and validity.
struct Report {
    std::ostringstream body;
    std::string command, hash, tag = "none", validity = "n/a";

    std::string text() const {
        std::ostringstream os;
        os << "command = " << command << "\n";
        os << "config_hash = " << hash << "\n";
        os << "tag = " << tag << "\n";
        os << "validity = " << validity << "\n";
        os << body.str();
        return os.str();
    }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::InvalidConfig, "cannot write '" + path + "'");
    out << text;
}

std::string csv_of(const std::string& header, const std::vector<std::vector<double>>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << header << "\n";
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << "\n";
    }
    return os.str();
}

std::string growth_text(const GrowthFit& f) {
    std::ostringstream os;
    os.precision(6);
    os << "exponent = " << f.exponent << "\n";
    os << "log_correction = " << f.log_correction << "\n";
    os << "r2 = " << f.r2 << "\n";
    os << "window = [" << f.window_lo << ", " << f.window_hi << "]\n";
    return os.str();
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stod(tok));
    return out;
}

IntMatrix parse_int_matrix(const std::string& s) {
    json j;
    try {
        j = json::parse(s);
    } catch (const json::parse_error& e) {
        throw Error(Errc::InvalidConfig, std::string("basis is not a JSON matrix: ") + e.what());
    }
    IntMatrix m;
    for (const auto& row : j) {
        std::vector<Int> r;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw Error(Errc::InvalidConfig, "basis entries must be integers");
            r.push_back(v.get<long long>());
        }
        m.push_back(r);
    }
    return m;
}

Mat<double> parse_real_matrix(const std::string& s) {
    json j;
    try {
        j = json::parse(s);
    } catch (const json::parse_error& e) {
        throw Error(Errc::InvalidConfig, std::string("matrix is not valid JSON: ") + e.what());
    }
    Mat<double> m;
    for (const auto& row : j) {
        std::vector<double> r;
        for (const auto& v : row) r.push_back(v.get<double>());
        m.push_back(r);
    }
    return m;
}

// g = unipotent upper-triangular with the comma-separated entries of x
// filled row by row ("x" alone for SL2).
Mat<HighReal> slice_matrix(int n, const std::string& x) {
    std::vector<std::string> parts;
    std::stringstream ss(x);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(tok);
    size_t need = static_cast<size_t>(n * (n - 1) / 2);
    if (parts.size() != need)
        throw Error(Errc::InvalidConfig, "x needs " + std::to_string(need) + " upper-triangular entries for n = " + std::to_string(n));
    Mat<HighReal> g(n, std::vector<HighReal>(n, HighReal(0)));
    size_t p = 0;
    for (int i = 0; i < n; ++i) {
        g[i][i] = 1;
        for (int j = i + 1; j < n; ++j) g[i][j] = parse_slice_point(parts[p++]);
    }
    return g;
}

HighReal random_dyadic(std::mt19937_64& rng) {
    Int k = 0;
    for (int j = 0; j < 5; ++j) {
        k <<= 32;
        k += rng() & 0xffffffffULL;
    }
    return HighReal(k) / pow(HighReal(2), 160);
}

struct Globals {
    std::string config_path, out;
    unsigned long long seed = 0;
    bool seed_set = false;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dimflow: dimension formulas and lattice-flow experiments for divergent trajectories"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals G;
    app.add_option("--config", G.config_path, "JSON experiment config");
    app.add_option("--out", G.out, "write the CSV artifact here");
    app.add_option_function<unsigned long long>("--seed", [&](unsigned long long s) { G.seed = s; G.seed_set = true; },
                                                "pseudo-random seed (mt19937_64)");

    // shared overrides of the config
    int n = 0, k = 0;
    std::string rep, flow, tau, sigma, x;
    bool super_exp = false;
    auto add_group = [&](CLI::App* s) {
        s->add_option("--n", n, "SL_n");
        s->add_option("--rep", rep, "standard | adjoint | exterior");
        s->add_option("--k", k, "exterior power");
        s->add_option("--flow", flow, "flow vector, e.g. 1,0,-1");
    };

    auto* dim = app.add_subcommand("dim", "closed-form Hausdorff dimension");
    add_group(dim);
    dim->add_option("--tau", tau, "exponential rate of psi (fraction)");
    dim->add_option("--sigma", sigma, "polynomial correction of psi (fraction)");
    dim->add_flag("--super-exponential", super_exp, "psi(t) = C exp(-e^t)");
    std::string grass, gamma;
    dim->add_option("--grassmann", grass, "n,l,k for the Grassmannian formula");
    dim->add_option("--gamma", gamma, "order of psi(u) at infinity (fraction or inf)");

    auto* flowc = app.add_subcommand("flow", "trajectory of the first minimum");
    add_group(flowc);
    double t_max = -1, step = -1;
    for (auto* s : {flowc}) {
        s->add_option("--x", x, "slice point: 3/7, 0.25, golden, sqrt2, liouville (comma list for n > 2)");
        s->add_option("--t-max", t_max, "final time");
        s->add_option("--step", step, "time step");
    }

    auto* expc = app.add_subcommand("exponent", "contraction exponent of slice points");
    add_group(expc);
    int random_points = 0;
    expc->add_option("--x", x, "slice point");
    expc->add_option("--t-max", t_max, "final time");
    expc->add_option("--step", step, "time step");
    expc->add_option("--random", random_points, "estimate for this many random dyadic points instead");

    auto* countc = app.add_subcommand("count", "rational slice counts with height in [l/2, l]");
    std::string lgrid;
    countc->add_option("--n", n, "2 or 3");
    countc->add_option("--l", lgrid, "comma list of l values");

    auto* growthc = app.add_subcommand("growth", "growth exponents");
    std::string mode = "points", hgrid, rgrid;
    std::size_t samples = 0;
    growthc->add_option("--mode", mode, "points | volume")->check(CLI::IsMember({"points", "volume"}));
    add_group(growthc);
    growthc->add_option("--H", hgrid, "height grid");
    growthc->add_option("--R", rgrid, "radius grid");
    growthc->add_option("--samples", samples, "Monte-Carlo samples per radius");

    auto* boxc = app.add_subcommand("boxdim", "box-counting dimension");
    std::string set = "farey";
    int depth = 14, Q = 1024, jlo = -1, jhi = -1;
    double c = 1;
    boxc->add_option("--set", set, "farey | cantor")->check(CLI::IsMember({"farey", "cantor"}));
    boxc->add_option("--depth", depth, "Cantor depth");
    boxc->add_option("--Q", Q, "largest Farey denominator");
    boxc->add_option("--c", c, "ball exponent q^-(2+c)");
    boxc->add_option("--lo", jlo, "finest-first window: scales 2^-lo .. 2^-hi");
    boxc->add_option("--hi", jhi, "");

    auto* grc = app.add_subcommand("grassmann", "rational subspaces of Q^n");
    std::string op, basis, basis2;
    double H = 0, bound = 3, tt = 0;
    int gl = 0;
    grc->add_option("op", op, "height | distance | enumerate | beta-k | delta-chi")
        ->required()
        ->check(CLI::IsMember({"height", "distance", "enumerate", "beta-k", "delta-chi"}));
    grc->add_option("--basis", basis, "integer row matrix, e.g. [[1,0,1],[0,1,1]]");
    grc->add_option("--other", basis2, "second subspace (real row matrix) for distance");
    grc->add_option("--n", n, "ambient dimension");
    grc->add_option("--l", gl, "dimension of the real subspace (beta-k)");
    grc->add_option("--k", k, "subspace dimension");
    grc->add_option("--H", H, "height bound");
    grc->add_option("--t", tt, "flow time (delta-chi)");
    grc->add_option("--bound", bound, "search radius (delta-chi)");

    auto* ver = app.add_subcommand("verify", "run acceptance suites");
    std::string suite = "all";
    ver->add_option("suite", suite, "suite name, number, or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    auto t0 = std::chrono::steady_clock::now();
    Report R;
    for (int i = 0; i < argc; ++i) R.command += (i ? " " : "") + std::string(argv[i]);
    int exit_code = kExitOk;
    std::string csv;
    try {
        ExperimentConfig cfg = G.config_path.empty() ? parse_config("{}") : load_config(G.config_path);
        if (G.seed_set) cfg.seed = G.seed;
        // command-line overrides
        if (n > 0 && !(grc->parsed())) {
            cfg.n = n;
            if (flow.empty()) {
                cfg.flow.Y.clear();
                for (int i = 0; i < n; ++i) cfg.flow.Y.push_back(Rational(n - 1 - 2 * i));
            }
            cfg.rep = parse_rep(rep.empty() ? "standard" : rep, n, k > 0 ? k : 1);
        } else if (!rep.empty()) {
            cfg.rep = parse_rep(rep, cfg.n, k > 0 ? k : 1);
        }
        if (!flow.empty()) cfg.flow = parse_flow(flow);
        if (!tau.empty()) cfg.psi.tau_param = parse_rational(tau);
        if (!sigma.empty()) cfg.psi.sigma = parse_rational(sigma);
        if (super_exp) cfg.psi.super_exponential = true;
        if (!x.empty()) cfg.x = x;
        if (t_max >= 0) cfg.t_max = t_max;
        if (step > 0) cfg.t_step = step;
        if (!grass.empty()) {
            auto v = parse_list(grass);
            if (v.size() != 3) throw Error(Errc::InvalidConfig, "--grassmann expects n,l,k");
            cfg.grassmann = GrassmannSpec{static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]), ExtRational::of(0)};
        }
        if (!gamma.empty()) {
            if (!cfg.grassmann) cfg.grassmann = GrassmannSpec{};
            cfg.grassmann->gamma = gamma == "inf" ? ExtRational::inf() : ExtRational::of(parse_rational(gamma));
        }
        if (samples > 0) cfg.samples = samples;
        if (!lgrid.empty()) cfg.l_grid = parse_list(lgrid);
        if (!hgrid.empty()) cfg.H_grid = parse_list(hgrid);
        if (!rgrid.empty()) cfg.R_grid = parse_list(rgrid);
        if (jlo > 0) cfg.scale_lo = jlo;
        if (jhi > 0) cfg.scale_hi = jhi;
        cfg.validate();
        R.hash = cfg.hash();
        std::string out_csv = !G.out.empty() ? G.out : cfg.out_csv;

        if (dim->parsed()) {
            if (cfg.grassmann) {
                const auto& g = *cfg.grassmann;
                Rational v = dim_grassmann(g.n, g.l, g.k, g.gamma);
                R.tag = "grassmannian";
                R.validity = "Interior";
                R.body << "n = " << g.n << "\nl = " << g.l << "\nk = " << g.k << "\ngamma = " << g.gamma.str() << "\n";
                R.body << "value = " << to_string(v) << "\nvalue_approx = " << to_double(v) << "\n";
            } else {
                auto ors = orient_to_flow(build_root_system(Series::A, cfg.n - 1), cfg.flow);
                auto ws = weight_system(ors, ors.weight_from_labels(cfg.rep.labels()));
                bool sorted = std::is_sorted(cfg.flow.Y.begin(), cfg.flow.Y.end(), std::greater<>());
                DimensionReport d;
                if (cfg.rep.family == RepFamily::Standard && sorted) d = dim_standard(cfg.n, cfg.flow, cfg.psi);
                else if (cfg.rep.family == RepFamily::Adjoint && sorted && cfg.n >= 3) d = dim_adjoint(cfg.n, cfg.flow, cfg.psi);
                else d = dim_exact(ors, ws, cfg.psi);
                R.tag = d.tag;
                R.validity = validity_name(d.validity);
                R.body << "group = SL" << cfg.n << "\nrep = " << cfg.rep.str() << "\nflow = " << to_string(cfg.flow.Y) << "\n";
                R.body << d.to_text();
            }
        } else if (flowc->parsed() || expc->parsed()) {
            auto grid = uniform_grid(cfg.t_max, cfg.t_step);
            R.tag = "lattice-flow";
            if (expc->parsed() && random_points > 0) {
                std::mt19937_64 rng(cfg.seed);
                std::vector<HighReal> xs;
                for (int i = 0; i < random_points; ++i) xs.push_back(random_dyadic(rng));
                std::vector<double> e(xs.size());
                parallel_for(xs.size(), [&](std::size_t i) {
                    e[i] = exponent_estimate(trajectory(RepKind::standard(2), FlowSpec({1, -1}), slice_element(xs[i]), grid)).exponent;
                });
                std::vector<std::vector<double>> rows;
                for (size_t i = 0; i < e.size(); ++i) rows.push_back({static_cast<double>(i), xs[i].convert_to<double>(), e[i]});
                csv = csv_of("index,x,exponent", rows);
                std::vector<double> s = e;
                std::sort(s.begin(), s.end());
                double med = s.size() % 2 ? s[s.size() / 2] : (s[s.size() / 2 - 1] + s[s.size() / 2]) / 2;
                R.validity = "Interior";
                R.body << "points = " << random_points << "\nseed = " << cfg.seed << "\nmedian_exponent = " << med
                       << "\nmax_exponent = " << s.back() << "\n";
            } else {
                auto g = slice_matrix(cfg.n, cfg.x);
                auto tr = trajectory(cfg.rep, cfg.flow, g, grid);
                csv = tr.csv();
                R.validity = "Interior";
                R.body << "rep = " << cfg.rep.str() << "\nflow = " << to_string(cfg.flow.Y) << "\nx = " << cfg.x
                       << "\nT = " << grid.back() << "\ndelta_final = " << tr.delta.back() << "\n";
                if (expc->parsed()) {
                    auto f = exponent_estimate(tr);
                    R.body << "exponent = " << f.exponent << "\nr2 = " << f.r2 << "\nwindow = [" << f.window_lo << ", "
                           << f.window_hi << "]\n";
                }
            }
        } else if (countc->parsed()) {
            int dimn = n > 0 ? n : cfg.n;
            std::vector<double> ls = cfg.l_grid;
            if (ls.empty())
                for (int e = 8; e <= 14; ++e) ls.push_back(std::ldexp(1.0, e));
            SliceBox box;
            int d = dimn == 2 ? 1 : 3;
            box.lo.assign(d, Rational(0));
            box.hi.assign(d, Rational(1));
            RepKind kind = RepKind::standard(dimn);
            std::vector<std::vector<double>> rows;
            for (double l : ls)
                rows.push_back({l, to_double(count_rationals(kind, box, Rational(from_double(l / 2)), from_double(l)))});
            csv = csv_of("l,count", rows);
            auto f = counting_exponent(kind, box, ls);
            R.tag = "rational-slice-count";
            R.validity = "Interior";
            R.body << "rep = " << kind.str() << "\n" << growth_text(f);
        } else if (growthc->parsed()) {
            R.tag = mode == "points" ? "rational-point-growth" : "volume-growth";
            R.validity = "Interior";
            GrowthFit f;
            std::vector<std::vector<double>> rows;
            if (mode == "points") {
                std::vector<double> Hs = cfg.H_grid;
                if (Hs.empty())
                    for (double h = 100; h <= 10000; h *= 2) Hs.push_back(h);
                f = rational_point_growth(cfg.rep, Hs);
                for (double h : Hs) rows.push_back({h, count_primitive(cfg.rep.n, h).convert_to<double>()});
                csv = csv_of("H,count", rows);
            } else {
                std::vector<double> Rs = cfg.R_grid;
                if (Rs.empty()) Rs = {4, 8, 16, 32, 64};
                VolumeOptions opt{cfg.samples, cfg.seed};
                auto v = volume_estimates(cfg.rep, cfg.flow, WeylElement::identity(cfg.n), Rs, opt);
                f = volume_growth(cfg.rep, cfg.flow, WeylElement::identity(cfg.n), Rs, opt);
                for (size_t i = 0; i < Rs.size(); ++i) rows.push_back({Rs[i], v[i]});
                csv = csv_of("R,volume", rows);
            }
            R.body << "rep = " << cfg.rep.str() << "\nflow = " << to_string(cfg.flow.Y) << "\n" << growth_text(f);
        } else if (boxc->parsed()) {
            R.tag = "box-dimension";
            R.validity = "Interior";
            if (set == "cantor") {
                int lo = jlo > 0 ? jlo : 4, hi = jhi > 0 ? jhi : 14;
                std::vector<std::vector<double>> pts;
                for (double v : cantor_points(depth)) pts.push_back({v});
                auto f = box_dimension(pts, lo, hi);
                R.body << "set = cantor\ndepth = " << depth << "\n" << growth_text(f);
                csv = csv_of("log_inv_eps,log_count", [&] {
                    std::vector<std::vector<double>> r;
                    for (size_t i = 0; i < f.x.size(); ++i) r.push_back({f.x[i], f.y[i]});
                    return r;
                }());
            } else {
                auto fb = farey_ball_dimension(Q, c, cfg.scale_lo, cfg.scale_hi);
                R.body << "set = farey\nQ = " << Q << "\nc = " << c << "\nclassical = " << 2 / (2 + c) << "\n";
                R.body << "resolved:\n" << growth_text(fb.resolved) << "literal_union:\n" << growth_text(fb.literal);
                std::vector<std::vector<double>> r;
                for (size_t i = 0; i < fb.resolved.x.size(); ++i) r.push_back({fb.resolved.x[i], fb.resolved.y[i]});
                csv = csv_of("log_inv_eps,log_count", r);
            }
        } else if (grc->parsed()) {
            R.tag = "grassmannian";
            R.validity = "Interior";
            if (op == "height") {
                auto m = parse_int_matrix(basis);
                auto p = plucker_coordinates(m);
                R.body << "height2 = " << height_squared(m) << "\nheight = " << height(m) << "\nplucker = [";
                for (size_t i = 0; i < p.size(); ++i) R.body << (i ? "," : "") << p[i];
                R.body << "]\n";
            } else if (op == "distance") {
                auto a = RealSubspace::from_rows(parse_real_matrix(basis));
                auto b = RealSubspace::from_rows(parse_real_matrix(basis2));
                R.body << "distance = " << distance(a, b) << "\n";
            } else if (op == "enumerate") {
                auto subs = enumerate_rational(n, k, H);
                std::ostringstream os;
                os << "height2,basis\n";
                for (const auto& s : subs) os << s.height2 << ",\"" << s.to_string() << "\"\n";
                csv = os.str();
                R.body << "n = " << n << "\nk = " << k << "\nH_max = " << H << "\ncount = " << subs.size() << "\n";
            } else if (op == "beta-k") {
                RealSubspace xs = basis.empty() ? RealSubspace::random(n, gl, cfg.seed)
                                                : RealSubspace::from_rows(parse_real_matrix(basis));
                auto e = beta_k_estimate(xs, k, H > 0 ? H : 1000);
                R.body << e.to_text();
            } else {
                QVec y;
                int l = gl > 0 ? gl : n / 2;
                for (int i = 0; i < n; ++i) y.push_back(i < l ? Rational(-1, l) : Rational(1, n - l));
                auto lb = flow_basis(RepKind::exterior(n, k), FlowSpec(y), from_double(tt), identity_q(n));
                R.body << "delta = " << first_min(lb) << "\ndelta_chi = " << delta_chi(n, k, lb, bound) << "\n";
            }
        } else if (ver->parsed()) {
            R.tag = "verification";
            std::vector<std::string> names;
            if (suite == "all")
                for (const auto& s : suite_catalog()) names.push_back(s.name);
            else
                names.push_back(suite);
            bool all = true;
            for (const auto& name : names) {
                auto r = run_suite(name, cfg.seed);
                all = all && r.pass;
                R.body << r.line() << "\n";
                for (const auto& d : r.details) R.body << "    " << d << "\n";
                std::cout.flush();
            }
            R.validity = all ? "pass" : "fail";
            if (!all) exit_code = kExitVerifyFailed;
        }
        if (!csv.empty()) {
            if (!out_csv.empty()) write_file(out_csv, csv);
            else R.body << "--- csv ---\n" << csv;
        }
        std::string text = R.text();
        std::cout << text;
        if (!cfg.out_report.empty()) write_file(cfg.out_report, text);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    std::cerr << "wall_clock_s = " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << "\n";
    return exit_code;
}
