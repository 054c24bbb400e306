#include "fcmppt/tracker.hpp"

#include "fcmppt/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fcmppt {

const char* to_string(TrackerMethod method) {
    switch (method) {
    case TrackerMethod::Anfis: return "anfis";
    case TrackerMethod::IcaNn: return "ica-nn";
    case TrackerMethod::Conventional: return "conventional";
    }
    return "?";
}

TrackerMethod tracker_method_from_string(const std::string& text) {
    if (text == "anfis") return TrackerMethod::Anfis;
    if (text == "ica-nn") return TrackerMethod::IcaNn;
    if (text == "conventional") return TrackerMethod::Conventional;
    throw config_error("unknown tracker method '" + text +
                       "' (expected anfis | ica-nn | conventional)");
}

void ControllerConfig::validate() const {
    if (!(sample_period > 0.0)) throw config_error("sample_period must be positive");
    if (!(gain_e > 0.0 && gain_ce > 0.0 && gain_dd > 0.0)) {
        throw config_error("controller gains must be positive");
    }
    if (!(slope_guard_eps > 0.0)) throw config_error("slope_guard_eps must be positive");
    if (!(restart_power_pct > 0.0)) throw config_error("restart_power_pct must be positive");
    if (!(reacquire_duty > 0.0 && reacquire_duty < 1.0)) {
        throw config_error("reacquire_duty must be in (0, 1)");
    }
}

namespace {

double sat(double x) { return std::clamp(x, -1.0, 1.0); }

// Guard-held ticks before a stalled climb flips its held error sign.
constexpr int kQuietFlipTicks = 50;

} // namespace

StepResult conventional_step(const FuzzySystem& fuzzy, const ControllerConfig& config,
                             const TrackerState& state, double p_k, double v_k) {
    double dv = v_k - state.prev_voltage;
    double e = std::abs(dv) < config.slope_guard_eps
                   ? state.prev_error
                   : (p_k - state.prev_power) / dv;
    double ce = e - state.prev_error;
    // Negative feedback: positive P-V slope means the voltage must rise,
    // i.e. the duty (and with it the current) must fall.
    double dd = -config.gain_dd *
                evaluate(fuzzy, sat(config.gain_e * e), sat(config.gain_ce * ce));

    TrackerState next = state;
    next.prev_power = p_k;
    next.prev_voltage = v_k;
    next.prev_error = e;
    return {dd, next};
}

StepResult reference_step(const FuzzySystem& fuzzy, const ControllerConfig& config,
                          const TrackerState& state, double v_fc, double v_max) {
    double e = v_fc - v_max;
    double ce = e - state.prev_error;
    // Stack voltage above the MPP voltage means the current is too low, so
    // the duty rises.
    double dd = config.gain_dd *
                evaluate(fuzzy, sat(config.gain_e * e), sat(config.gain_ce * ce));

    TrackerState next = state;
    next.prev_voltage = v_fc;
    next.prev_error = e;
    return {dd, next};
}

Tracker::Tracker(TrackerMethod method, FuzzySystem fuzzy, ControllerConfig config,
                 const VmaxEstimator* estimator)
    : method_(method), fuzzy_(std::move(fuzzy)), config_(config), estimator_(estimator) {
    config_.validate();
    if (method_ != TrackerMethod::Conventional && estimator_ == nullptr) {
        throw config_error(std::string("tracker method '") + to_string(method_) +
                           "' needs a trained reference-voltage estimator");
    }
}

void Tracker::prime(const PlantTickSample& sample, double initial_duty) {
    state_.prev_power = sample.p_fc;
    state_.prev_voltage = sample.v_fc;
    state_.prev_error = 0.0;
    state_.duty = initial_duty;
    reacquiring_ = false;
    quiet_ticks_ = 0;
    last_ramp_duty_ = -1.0;
    if (method_ == TrackerMethod::Conventional) {
        // Hill climbers need an initial perturbation: with dV = 0 the slope
        // guard would hold E = 0 and the duty would never move. Seed a
        // full-scale climb bias (negative slope: start below the MPP
        // current); one real sample replaces it on the first move.
        state_.prev_error = -1.0 / config_.gain_e;
    }
}

double Tracker::tick(const PlantTickSample& sample) {
    if (method_ == TrackerMethod::Conventional) {
        return conventional_tick(sample);
    }
    double v_max = estimator_->vmax(sample.temp_T, sample.lambda_m);
    StepResult step = reference_step(fuzzy_, config_, state_, sample.v_fc, v_max);
    step.state.prev_power = sample.p_fc;
    state_ = step.state;
    return step.d_duty;
}

double Tracker::conventional_tick(const PlantTickSample& sample) {
    const double dd_limit = config_.gain_dd * fuzzy_.output_var.hi;

    if (!reacquiring_) {
        // A power jump far beyond anything the tracker's own perturbation
        // can cause means the operating conditions stepped; the slope
        // history is then meaningless and the climb restarts.
        double base = std::max({std::abs(state_.prev_power), std::abs(sample.p_fc), 1.0});
        if (std::abs(sample.p_fc - state_.prev_power) >
            config_.restart_power_pct / 100.0 * base) {
            reacquiring_ = true;
            quiet_ticks_ = 0;
        }
    }

    if (reacquiring_) {
        state_.prev_power = sample.p_fc;
        state_.prev_voltage = sample.v_fc;
        double gap = config_.reacquire_duty - state_.duty;
        double dd = std::clamp(gap, -dd_limit, dd_limit); // bounded ramp
        bool stalled = state_.duty == last_ramp_duty_;    // pinned at a duty clamp
        if (std::abs(gap) <= dd_limit || stalled) {
            reacquiring_ = false;
            state_.prev_error = -1.0 / config_.gain_e; // fresh climb bias
        }
        last_ramp_duty_ = state_.duty;
        return dd;
    }
    last_ramp_duty_ = -1.0;

    // A long run of guard-held ticks with the duty not visibly moving the
    // plant means the climb stalled (typically pinned at a duty clamp with a
    // stale error sign); flipping the held error breaks the deadlock. At a
    // genuine MPP the held error is already near zero and the flip is inert.
    if (std::abs(sample.v_fc - state_.prev_voltage) < config_.slope_guard_eps) {
        if (++quiet_ticks_ >= kQuietFlipTicks) {
            state_.prev_error = -state_.prev_error;
            quiet_ticks_ = 0;
        }
    } else {
        quiet_ticks_ = 0;
    }

    StepResult step = conventional_step(fuzzy_, config_, state_, sample.p_fc, sample.v_fc);
    state_ = step.state;
    return step.d_duty;
}

} // namespace fcmppt
