#pragma once

#include "dimflow/dimformulas.hpp"
#include "dimflow/rational.hpp"
#include "dimflow/repweights.hpp"
#include "dimflow/rootsys.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dimflow {

struct GrassmannSpec {
    int n = 3, l = 2, k = 1;
    ExtRational gamma = ExtRational::of(0);
};

// Experiment recipe. Exact quantities (flow, tau, sigma, gamma) are given as
// integers or fraction strings ("2/3"); JSON floats are rejected for them.
//
// {
//   "group": {"series": "A", "n": 3},
//   "rep": {"family": "standard", "k": 1},
//   "flow": ["1", "0", "-1"],
//   "psi": {"C": 1.0, "tau": "1/2", "sigma": "0", "super_exponential": false},
//   "grassmann": {"n": 3, "l": 2, "k": 1, "gamma": "3"},
//   "x": "3/7",
//   "t": {"t_max": 40, "step": 0.25},
//   "H": [16, 32, 64], "R": [4, 8, 16], "l": [256, 512],
//   "scales": {"lo": 8, "hi": 16},
//   "samples": 200000, "seed": 1,
//   "out": {"csv": "traj.csv", "report": "report.txt"}
// }
struct ExperimentConfig {
    Series series = Series::A;
    int n = 2;
    RepKind rep = RepKind::standard(2);
    FlowSpec flow{QVec{1, -1}};
    RateFunction psi;
    std::optional<GrassmannSpec> grassmann;
    std::string x = "golden";
    double t_max = 40, t_step = 0.25;
    std::vector<double> H_grid, R_grid, l_grid;
    int scale_lo = 8, scale_hi = 16;
    std::size_t samples = 200000;
    unsigned long long seed = 1;
    std::string out_csv, out_report;

    std::string canonical() const;  // normalized JSON text
    std::string hash() const;       // FNV-1a of canonical(), hex
    void validate() const;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// "3/7", "0.125", "golden", "sqrt2", "liouville" (sum of 10^{-k!}, k <= 6).
HighReal parse_slice_point(const std::string& s);

}  // namespace dimflow
