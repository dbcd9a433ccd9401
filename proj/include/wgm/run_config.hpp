#pragma once

// Run configuration read from a JSON document:
//
//   {
//     "potential": {"terms": [{"b": 0.25, "p": 4}], "b0": 0.25},
//     "solve":     {"n": 12, "delta": 1e-3, "m_max": 36, "k_max": 24, "tol": 1e-12, "max_iter": 200},
//     "sweep":     {"n_list": [8, 12, 16, 20], "tau_list": [0.5, 1.0], "delta": 1e-3},
//     "linear":    {"d": 2, "nu_min": 100, "nu_max": 200, "p_list": [2, 4, 6]}
//   }
//
// Every section and key is optional (defaults as above, m_max defaults to 3n);
// unknown keys and ill-typed values are rejected with ValidationError.

#include "wgm/potential.hpp"

#include <string>
#include <vector>

namespace wgm {

struct SolveSection {
    int n = 12;
    double delta = 1e-3;
    int m_max = 0;
    int k_max = 24;
    double tol = 1e-12;
    int max_iter = 200;
};

struct SweepSection {
    std::vector<int> n_list{8, 12, 16, 20};
    std::vector<double> tau_list{0.5, 1.0};
    double delta = 1e-3;
};

struct LinearSection {
    int d = 2;
    double nu_min = 100.0;
    double nu_max = 200.0;
    std::vector<double> p_list{2.0, 4.0, 6.0};
};

struct RunConfig {
    PotentialSpec potential = PotentialSpec::quartic();
    SolveSection solve;
    SweepSection sweep;
    LinearSection linear;
};

RunConfig parse_run_config(const std::string& text);
/// Throws ValidationError when the file cannot be read or fails validation.
RunConfig load_run_config(const std::string& path);

}  // namespace wgm
