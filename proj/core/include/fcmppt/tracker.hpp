#pragma once

#include "fcmppt/config.hpp"
#include "fcmppt/estimator.hpp"
#include "fcmppt/fuzzy.hpp"

#include <string>

namespace fcmppt {

enum class TrackerMethod { Anfis, IcaNn, Conventional };

const char* to_string(TrackerMethod method);
TrackerMethod tracker_method_from_string(const std::string& text); // "anfis" | "ica-nn" | "conventional"

struct ControllerConfig {
    double sample_period = 1e-3;  // s
    double gain_e = 1.0;          // input scaling into [-1, 1]
    double gain_ce = 1.0;
    double gain_dd = 1.0;         // output scaling
    double slope_guard_eps = 1e-4;// minimum |dV| treated as nonzero, V

    // Conventional tracker only: a per-tick power jump beyond this fraction
    // signals an operating-condition change the hill climber cannot follow,
    // so it ramps back to reacquire_duty and climbs afresh. The
    // reference-voltage trackers need no such heuristic; the estimator
    // re-points them directly.
    double restart_power_pct = 3.0;
    double reacquire_duty = 0.475;

    void validate() const;
};

struct TrackerState {
    double prev_power = 0.0;   // P(k-1), W
    double prev_voltage = 0.0; // V(k-1), V
    double prev_error = 0.0;   // E(k-1)
    double duty = 0.0;
};

struct StepResult {
    double d_duty;
    TrackerState state;
};

// Hill-climbing step: E = dP/dV with the slope guard (|dV| below the guard
// reuses the previous E), CE = E - E_prev. The duty command is the negated
// fuzzy output so that a positive P-V slope (left of the MPP) lowers the
// current.
StepResult conventional_step(const FuzzySystem& fuzzy, const ControllerConfig& config,
                             const TrackerState& state, double p_k, double v_k);

// Reference-voltage step: E = v_fc - v_max, CE = E - E_prev. Positive E
// (stack above the MPP voltage, current too low) raises the duty.
StepResult reference_step(const FuzzySystem& fuzzy, const ControllerConfig& config,
                          const TrackerState& state, double v_fc, double v_max);

struct PlantTickSample {
    double t;        // s
    double temp_T;   // K
    double lambda_m;
    double v_fc;     // V
    double p_fc;     // W
};

// Per-simulation tracker: owns the fuzzy system, gains and state, and
// dispatches to the step function for its method. Reference methods query
// the estimator at the sample's (T, lambda) every tick.
class Tracker {
public:
    // estimator may be null for the conventional method only; reference
    // methods throw config_error here, before any simulation starts.
    Tracker(TrackerMethod method, FuzzySystem fuzzy, ControllerConfig config,
            const VmaxEstimator* estimator);

    // Seeds prev power/voltage from the first plant sample so the first
    // tick starts from a defined state.
    void prime(const PlantTickSample& sample, double initial_duty);

    // Returns the duty increment dD for this tick.
    double tick(const PlantTickSample& sample);

    void set_duty(double duty) { state_.duty = duty; }
    const TrackerState& state() const { return state_; }
    TrackerMethod method() const { return method_; }
    const ControllerConfig& config() const { return config_; }

private:
    double conventional_tick(const PlantTickSample& sample);

    TrackerMethod method_;
    FuzzySystem fuzzy_;
    ControllerConfig config_;
    const VmaxEstimator* estimator_;
    TrackerState state_;
    bool reacquiring_ = false;
    int quiet_ticks_ = 0;
    double last_ramp_duty_ = -1.0;
};

} // namespace fcmppt
