#pragma once

#include <span>

namespace fcmppt {

// MSE = (1/n) sum (pred_i - truth_i)^2
double mean_squared_error(std::span<const double> pred, std::span<const double> truth);

// Pearson coefficient in [-1, 1]. Throws std::domain_error when either
// argument has zero variance.
double pearson_correlation(std::span<const double> pred, std::span<const double> truth);

// 100 * p_tracked / p_actual; p_actual must be > 0.
double accuracy_pct(double p_tracked, double p_actual);

struct SettlingResult {
    double seconds = 0.0; // time after t_step; window length when !settled
    bool settled = false;
};

// Smallest t >= t_step such that the signal stays within +-band_pct percent
// of its final value for the rest of [t_step, window_end). Final value is
// the mean over the last 10% of the window. Returned as seconds after
// t_step; the last band entry governs when the signal leaves and re-enters.
SettlingResult settling_time(std::span<const double> times,
                             std::span<const double> values,
                             double t_step, double band_pct, double window_end);

} // namespace fcmppt
