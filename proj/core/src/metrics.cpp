#include "fcmppt/metrics.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace fcmppt {

double mean_squared_error(std::span<const double> pred, std::span<const double> truth) {
    if (pred.size() != truth.size() || pred.empty()) {
        throw std::invalid_argument("mean_squared_error: vectors must match and be nonempty");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        double d = pred[i] - truth[i];
        sum += d * d;
    }
    return sum / static_cast<double>(pred.size());
}

double pearson_correlation(std::span<const double> pred, std::span<const double> truth) {
    if (pred.size() != truth.size() || pred.size() < 2) {
        throw std::invalid_argument("pearson_correlation: need two same-length vectors");
    }
    double n = static_cast<double>(pred.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        mx += pred[i];
        my += truth[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        double dx = pred[i] - mx;
        double dy = truth[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw std::domain_error("pearson_correlation: zero variance input");
    }
    return sxy / std::sqrt(sxx * syy);
}

double accuracy_pct(double p_tracked, double p_actual) {
    if (!(p_actual > 0.0)) {
        throw std::domain_error("accuracy_pct: p_actual must be positive");
    }
    return 100.0 * p_tracked / p_actual;
}

SettlingResult settling_time(std::span<const double> times, std::span<const double> values,
                             double t_step, double band_pct, double window_end) {
    if (times.size() != values.size() || times.empty()) {
        throw std::invalid_argument("settling_time: need matching nonempty series");
    }
    // Window samples [t_step, window_end).
    std::size_t first = times.size(), last = times.size();
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] >= t_step && first == times.size()) first = i;
        if (times[i] < window_end) last = i;
    }
    double window = window_end - t_step;
    if (first == times.size() || last < first) {
        return {window, false};
    }

    // Final value: mean over the last 10% of the window.
    double tail_start = window_end - 0.1 * window;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = first; i <= last; ++i) {
        if (times[i] >= tail_start) {
            sum += values[i];
            ++count;
        }
    }
    if (count == 0) {
        sum = values[last];
        count = 1;
    }
    double final_value = sum / static_cast<double>(count);
    double band = band_pct / 100.0 * std::abs(final_value);

    // Last sample outside the band governs.
    std::size_t settle = first;
    for (std::size_t i = last + 1; i-- > first;) {
        if (std::abs(values[i] - final_value) > band) {
            if (i == last) {
                return {window, false};
            }
            settle = i + 1;
            break;
        }
    }
    return {times[settle] - t_step, true};
}

} // namespace fcmppt
