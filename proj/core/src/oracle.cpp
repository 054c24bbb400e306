#include "fcmppt/oracle.hpp"

#include "fcmppt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace fcmppt {
namespace {

constexpr int kSweepPoints = 2000;
constexpr double kRefineTolA = 1e-6;
const double kGoldenRatio = (std::sqrt(5.0) - 1.0) / 2.0;

} // namespace

MppResult find_mpp(const StackParams& params, double temp_T, double lambda_m) {
    validate_conditions(params, {temp_T, lambda_m, 0.0});

    // Stay clear of both the limiting current and the water-content bound on
    // the membrane correlation.
    double i_hi = std::min(params.i_limit, lambda_current_bound(params, lambda_m)) *
                  (1.0 - 1e-9);
    double i_lo = kCurrentEpsilon;

    auto power_at = [&](double I) {
        return stack_power(params, {temp_T, lambda_m, I});
    };

    std::vector<double> currents(kSweepPoints);
    std::vector<double> powers(kSweepPoints);
    int best = 0;
    for (int k = 0; k < kSweepPoints; ++k) {
        currents[k] = i_lo + (i_hi - i_lo) * k / (kSweepPoints - 1);
        powers[k] = power_at(currents[k]);
        if (powers[k] > powers[best]) best = k;
    }

    // Unimodality guard: at most one sign change of the discrete derivative
    // (flat spots inherit the previous sign).
    int sign_changes = 0;
    int last_sign = 0;
    for (int k = 0; k + 1 < kSweepPoints; ++k) {
        double d = powers[k + 1] - powers[k];
        int sign = (d > 0.0) - (d < 0.0);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) ++sign_changes;
        last_sign = sign;
    }
    if (sign_changes > 1) {
        std::ostringstream msg;
        msg << "P-I sweep is not unimodal at T=" << temp_T << " K, lambda=" << lambda_m
            << " (" << sign_changes << " derivative sign changes)";
        throw oracle_error(msg.str());
    }

    // Golden-section refinement of the bracketing interval.
    double a = currents[std::max(best - 1, 0)];
    double b = currents[std::min(best + 1, kSweepPoints - 1)];
    double c = b - kGoldenRatio * (b - a);
    double d = a + kGoldenRatio * (b - a);
    double pc = power_at(c);
    double pd = power_at(d);
    while (b - a > kRefineTolA) {
        if (pc > pd) {
            b = d;
            d = c;
            pd = pc;
            c = b - kGoldenRatio * (b - a);
            pc = power_at(c);
        } else {
            a = c;
            c = d;
            pc = pd;
            d = a + kGoldenRatio * (b - a);
            pd = power_at(d);
        }
    }

    double i_best = 0.5 * (a + b);
    double p_best = power_at(i_best);
    // The refined point should dominate; keep the sweep winner if rounding
    // says otherwise.
    if (powers[best] > p_best) {
        i_best = currents[best];
        p_best = powers[best];
    }

    MppResult result;
    result.i_max = i_best;
    result.v_max = stack_voltage(params, {temp_T, lambda_m, i_best});
    result.p_max = result.v_max * result.i_max;
    result.temp_T = temp_T;
    result.lambda_m = lambda_m;
    return result;
}

Dataset generate_dataset(const StackParams& params, const std::vector<double>& t_grid,
                         const std::vector<double>& l_grid) {
    Dataset ds;
    ds.rows.reserve(t_grid.size() * l_grid.size());
    for (double T : t_grid) {
        for (double lam : l_grid) {
            MppResult mpp = find_mpp(params, T, lam);
            ds.rows.push_back({T, lam, mpp.v_max});
        }
    }
    ds.refresh_norm();
    return ds;
}

} // namespace fcmppt
