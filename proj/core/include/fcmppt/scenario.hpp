#pragma once

#include "fcmppt/converter.hpp"
#include "fcmppt/metrics.hpp"
#include "fcmppt/tracker.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace fcmppt {

// Piecewise-constant schedule: sorted (time, value) points starting at t=0.
struct StepSchedule {
    std::vector<std::pair<double, double>> points;

    double at(double t) const;
    void validate() const;
};

struct Scenario {
    double duration = 8.0; // s
    StepSchedule profile_T;
    StepSchedule profile_lambda;
    TrackerMethod method = TrackerMethod::Conventional;
    std::uint64_t seed = 0;
    // NaN selects the default start: the midpoint of the duty clamp range,
    // identical for every method.
    double initial_duty = std::numeric_limits<double>::quiet_NaN();

    // Section [scenario]; profile_T / profile_lambda are flat "t v" pair
    // lists. The method key is optional (the CLI can override it).
    static Scenario from_config(const ConfigDoc& doc);
};

// Uniformly sampled closed-loop run at the controller rate.
struct ScenarioTrace {
    std::vector<double> t;          // s
    std::vector<double> temp_T;     // K
    std::vector<double> lambda_m;
    std::vector<double> duty;
    std::vector<double> current_I;  // A
    std::vector<double> v_fc;       // V
    std::vector<double> p_fc;       // W
    std::vector<double> p_oracle;   // W, recomputed at each condition change

    bool aborted = false;
    std::string abort_reason;

    std::size_t size() const { return t.size(); }

    // Header t_s,T_K,lambda,duty,I_A,V_fc_V,P_fc_W,P_oracle_W, 9 significant
    // digits.
    std::string to_csv() const;
};

// Everything a simulation needs besides the scenario itself.
struct SimSetup {
    StackParams stack;
    ConverterParams converter;
    FuzzySystem fuzzy;
    ControllerConfig reference_cfg;    // ANFIS / ICA-NN trackers
    ControllerConfig conventional_cfg;

    // Sections [stack], [converter], [fuzzy] (rule file, dd_max, resolution)
    // and [controller] (sample_period, slope_guard_eps, ref_gain_* and
    // conv_gain_*).
    static SimSetup from_config(const ConfigDoc& doc);
};

// Interleaves plant RK4 steps with controller ticks, applies schedule
// changes exactly at their timestamps, and samples one trace row per tick.
// The converter starts at the t=0 steady state for the initial duty
// (midpoint of the clamp range). An envelope violation mid-run aborts with
// the partial trace and a diagnostic reason.
ScenarioTrace run_scenario(const Scenario& scenario, const SimSetup& setup,
                           const VmaxEstimator* estimator);

struct SegmentMetrics {
    double t_start;
    double t_end;
    SettlingResult settling;   // 2% band of the segment's final value
    double accuracy_pct;       // 100 * final power / oracle power
    double final_power_W;      // mean over the last 10% of the segment
    double oracle_power_W;
    double energy_J;           // integral of tracked power over the segment
};

// Condition-change times of a scenario (t=0 plus every later step).
std::vector<double> schedule_step_times(const Scenario& scenario);

// Per-segment settling / accuracy / power metrics between consecutive step
// times.
std::vector<SegmentMetrics> evaluate_trace(const ScenarioTrace& trace,
                                           const std::vector<double>& step_times,
                                           double band_pct = 2.0);

} // namespace fcmppt
