#pragma once

#include "fcmppt/dataset.hpp"
#include "fcmppt/stack_model.hpp"

namespace fcmppt {

// Ground-truth maximum power point at one (T, lambda) condition.
struct MppResult {
    double v_max;    // stack voltage at the MPP, V
    double i_max;    // A
    double p_max;    // W
    double temp_T;   // K
    double lambda_m;
};

// Brute-force MPP finder: 2000-point current sweep over the valid range,
// then golden-section refinement of the bracketing interval down to
// |dI| < 1e-6 A. Throws oracle_error if the sweep is not unimodal.
MppResult find_mpp(const StackParams& params, double temp_T, double lambda_m);

// One dataset row per (t_grid x l_grid) point, t-major ordering, with
// normalization specs set to the per-column min/max.
Dataset generate_dataset(const StackParams& params,
                         const std::vector<double>& t_grid,
                         const std::vector<double>& l_grid);

} // namespace fcmppt
