#include "dimflow/config.hpp"

#include "dimflow/error.hpp"

#include "json.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dimflow {

namespace {

using nlohmann::json;

Error bad(const std::string& field, const std::string& why) {
    return Error(Errc::InvalidConfig, "config." + field + ": " + why);
}

Rational exact_field(const json& v, const std::string& field) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const Error& e) {
            throw bad(field, e.what());
        }
    }
    if (v.is_number_float()) throw bad(field, "floats are not exact; write a fraction string such as \"1/2\"");
    throw bad(field, "expected an integer or a fraction string");
}

double real_field(const json& v, const std::string& field) {
    if (v.is_number()) return v.get<double>();
    throw bad(field, "expected a number");
}

int int_field(const json& v, const std::string& field) {
    if (v.is_number_integer()) return v.get<int>();
    throw bad(field, "expected an integer");
}

std::vector<double> grid_field(const json& v, const std::string& field) {
    if (!v.is_array() || v.empty()) throw bad(field, "expected a nonempty array");
    std::vector<double> g;
    for (size_t i = 0; i < v.size(); ++i) g.push_back(real_field(v[i], field + "[" + std::to_string(i) + "]"));
    for (size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1])) throw bad(field, "grid must increase strictly");
    return g;
}

void check_keys(const json& obj, const std::string& field, std::initializer_list<const char*> keys) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known = known || it.key() == k;
        if (!known) throw bad(field + it.key(), "unknown key");
    }
}

json exact_json(const Rational& q) { return to_string(q); }

}  // namespace

void ExperimentConfig::validate() const {
    if (n < 2) throw bad("group.n", "need n >= 2");
    if (static_cast<int>(flow.Y.size()) != n) throw bad("flow", "length must equal group.n");
    Rational s = 0;
    for (const auto& y : flow.Y) s += y;
    if (s != 0) throw bad("flow", "entries must sum to zero");
    if (psi.tau_param < 0) throw bad("psi.tau", "must be >= 0");
    psi.validate();
    if (!(t_step > 0) || t_max < 0) throw bad("t", "need step > 0 and t_max >= 0");
    if (scale_lo >= scale_hi) throw bad("scales", "need lo < hi");
    if (samples == 0) throw bad("samples", "must be positive");
    if (grassmann) {
        const auto& g = *grassmann;
        if (!(1 <= g.k && g.k <= g.l && g.l < g.n)) throw bad("grassmann", "need 1 <= k <= l < n");
    }
}

std::string ExperimentConfig::canonical() const {
    json j;
    j["group"] = {{"series", std::string(1, series_char(series))}, {"n", n}};
    std::string fam = rep.family == RepFamily::Standard ? "standard" : rep.family == RepFamily::Adjoint ? "adjoint" : "exterior";
    j["rep"] = {{"family", fam}, {"k", rep.k}};
    json fl = json::array();
    for (const auto& y : flow.Y) fl.push_back(exact_json(y));
    j["flow"] = fl;
    j["psi"] = {{"C", psi.C}, {"tau", exact_json(psi.tau_param)}, {"sigma", exact_json(psi.sigma)},
                {"super_exponential", psi.super_exponential}};
    if (grassmann)
        j["grassmann"] = {{"n", grassmann->n}, {"l", grassmann->l}, {"k", grassmann->k}, {"gamma", grassmann->gamma.str()}};
    j["x"] = x;
    j["t"] = {{"t_max", t_max}, {"step", t_step}};
    j["H"] = H_grid;
    j["R"] = R_grid;
    j["l"] = l_grid;
    j["scales"] = {{"lo", scale_lo}, {"hi", scale_hi}};
    j["samples"] = samples;
    j["seed"] = seed;
    return j.dump();
}

std::string ExperimentConfig::hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw bad("", "top level must be an object");
    check_keys(j, "", {"group", "rep", "flow", "psi", "grassmann", "x", "t", "H", "R", "l", "scales", "samples", "seed", "out"});
    ExperimentConfig c;
    if (j.contains("group")) {
        const auto& g = j["group"];
        check_keys(g, "group.", {"series", "n", "rank"});
        if (g.contains("series")) {
            try {
                c.series = parse_series(g["series"].get<std::string>());
            } catch (const std::exception& e) {
                throw bad("group.series", e.what());
            }
        }
        if (c.series != Series::A) throw bad("group.series", "experiments are defined for SL_n (series A)");
        if (g.contains("n")) c.n = int_field(g["n"], "group.n");
        if (g.contains("rank")) c.n = int_field(g["rank"], "group.rank") + 1;
    }
    std::string family = "standard";
    int k = 1;
    if (j.contains("rep")) {
        const auto& r = j["rep"];
        check_keys(r, "rep.", {"family", "k"});
        if (r.contains("family")) family = r["family"].get<std::string>();
        if (r.contains("k")) k = int_field(r["k"], "rep.k");
    }
    try {
        c.rep = parse_rep(family, c.n, k);
    } catch (const Error& e) {
        throw bad("rep", e.what());
    }
    c.flow.Y.clear();
    if (j.contains("flow")) {
        const auto& f = j["flow"];
        if (f.is_string()) {
            try {
                c.flow = parse_flow(f.get<std::string>());
            } catch (const Error& e) {
                throw bad("flow", e.what());
            }
        } else if (f.is_array()) {
            for (size_t i = 0; i < f.size(); ++i) c.flow.Y.push_back(exact_field(f[i], "flow[" + std::to_string(i) + "]"));
        } else {
            throw bad("flow", "expected an array of fractions or a string \"1,0,-1\"");
        }
    } else {
        for (int i = 0; i < c.n; ++i) c.flow.Y.push_back(Rational(c.n - 1 - 2 * i));
    }
    if (j.contains("psi")) {
        const auto& p = j["psi"];
        check_keys(p, "psi.", {"C", "tau", "sigma", "super_exponential"});
        if (p.contains("C")) c.psi.C = real_field(p["C"], "psi.C");
        if (p.contains("tau")) c.psi.tau_param = exact_field(p["tau"], "psi.tau");
        if (p.contains("sigma")) c.psi.sigma = exact_field(p["sigma"], "psi.sigma");
        if (p.contains("super_exponential")) c.psi.super_exponential = p["super_exponential"].get<bool>();
    }
    if (j.contains("grassmann")) {
        const auto& g = j["grassmann"];
        check_keys(g, "grassmann.", {"n", "l", "k", "gamma"});
        GrassmannSpec s;
        if (g.contains("n")) s.n = int_field(g["n"], "grassmann.n");
        if (g.contains("l")) s.l = int_field(g["l"], "grassmann.l");
        if (g.contains("k")) s.k = int_field(g["k"], "grassmann.k");
        if (g.contains("gamma")) {
            if (g["gamma"].is_string() && g["gamma"].get<std::string>() == "inf") s.gamma = ExtRational::inf();
            else s.gamma = ExtRational::of(exact_field(g["gamma"], "grassmann.gamma"));
        }
        c.grassmann = s;
    }
    if (j.contains("x")) {
        if (!j["x"].is_string()) throw bad("x", "expected a string such as \"3/7\" or \"golden\"");
        c.x = j["x"].get<std::string>();
        try {
            parse_slice_point(c.x);
        } catch (const Error& e) {
            throw bad("x", e.what());
        }
    }
    if (j.contains("t")) {
        const auto& t = j["t"];
        check_keys(t, "t.", {"t_max", "step"});
        if (t.contains("t_max")) c.t_max = real_field(t["t_max"], "t.t_max");
        if (t.contains("step")) c.t_step = real_field(t["step"], "t.step");
    }
    if (j.contains("H")) c.H_grid = grid_field(j["H"], "H");
    if (j.contains("R")) c.R_grid = grid_field(j["R"], "R");
    if (j.contains("l")) c.l_grid = grid_field(j["l"], "l");
    if (j.contains("scales")) {
        const auto& s = j["scales"];
        check_keys(s, "scales.", {"lo", "hi"});
        if (s.contains("lo")) c.scale_lo = int_field(s["lo"], "scales.lo");
        if (s.contains("hi")) c.scale_hi = int_field(s["hi"], "scales.hi");
    }
    if (j.contains("samples")) c.samples = static_cast<std::size_t>(int_field(j["samples"], "samples"));
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw bad("seed", "expected a nonnegative integer");
        c.seed = j["seed"].get<unsigned long long>();
    }
    if (j.contains("out")) {
        const auto& o = j["out"];
        check_keys(o, "out.", {"csv", "report"});
        if (o.contains("csv")) c.out_csv = o["csv"].get<std::string>();
        if (o.contains("report")) c.out_report = o["report"].get<std::string>();
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidConfig, "cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

HighReal parse_slice_point(const std::string& s) {
    if (s == "golden") return (1 + sqrt(HighReal(5))) / 2;
    if (s == "sqrt2") return sqrt(HighReal(2));
    if (s == "liouville") {
        HighReal L = 0, f = 1;
        for (int k = 1; k <= 6; ++k) {
            f *= k;
            L += pow(HighReal(10), -f);
        }
        return L;
    }
    Rational q = parse_rational(s);
    return HighReal(numerator(q)) / HighReal(denominator(q));
}

}  // namespace dimflow
