#include "fcmppt/scenario.hpp"

#include "fcmppt/errors.hpp"
#include "fcmppt/io.hpp"
#include "fcmppt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fcmppt {

namespace {
// Schedule timestamps land exactly on controller ticks; the epsilon only
// absorbs floating-point tick arithmetic.
constexpr double kTimeEps = 1e-9;
} // namespace

double StepSchedule::at(double t) const {
    double value = points.front().second;
    for (const auto& [time, v] : points) {
        if (time <= t + kTimeEps) value = v;
        else break;
    }
    return value;
}

void StepSchedule::validate() const {
    if (points.empty()) throw config_error("schedule has no points");
    if (std::abs(points.front().first) > kTimeEps) {
        throw config_error("schedule must start at t=0");
    }
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (!(points[i].first > points[i - 1].first)) {
            throw config_error("schedule times must be strictly increasing");
        }
    }
}

Scenario Scenario::from_config(const ConfigDoc& doc) {
    Scenario sc;
    sc.duration = doc.get_double("scenario", "duration", sc.duration);
    sc.profile_T.points = doc.get_schedule("scenario", "profile_T");
    sc.profile_lambda.points = doc.get_schedule("scenario", "profile_lambda");
    if (doc.has("scenario", "method")) {
        sc.method = tracker_method_from_string(doc.get_string("scenario", "method"));
    }
    sc.seed = static_cast<std::uint64_t>(doc.get_int("scenario", "seed", 0));
    if (doc.has("scenario", "initial_duty")) {
        sc.initial_duty = doc.get_double("scenario", "initial_duty");
    }
    sc.profile_T.validate();
    sc.profile_lambda.validate();
    if (!(sc.duration > 0.0)) throw config_error("scenario duration must be positive");
    return sc;
}

std::string ScenarioTrace::to_csv() const {
    std::string out = "t_s,T_K,lambda,duty,I_A,V_fc_V,P_fc_W,P_oracle_W\n";
    for (std::size_t i = 0; i < size(); ++i) {
        out += format_sig(t[i], 9);
        out += ',';
        out += format_sig(temp_T[i], 9);
        out += ',';
        out += format_sig(lambda_m[i], 9);
        out += ',';
        out += format_sig(duty[i], 9);
        out += ',';
        out += format_sig(current_I[i], 9);
        out += ',';
        out += format_sig(v_fc[i], 9);
        out += ',';
        out += format_sig(p_fc[i], 9);
        out += ',';
        out += format_sig(p_oracle[i], 9);
        out += '\n';
    }
    return out;
}

SimSetup SimSetup::from_config(const ConfigDoc& doc) {
    SimSetup setup;
    setup.stack = StackParams::from_config(doc);
    setup.converter = ConverterParams::from_config(doc);

    double dd_max = doc.get_double("fuzzy", "dd_max", 0.01);
    RuleTable rules = RuleTable::standard_mppt();
    if (doc.has("fuzzy", "rules")) {
        rules = RuleTable::load_file(doc.resolve_path(doc.get_string("fuzzy", "rules")));
    }
    setup.fuzzy = FuzzySystem::mppt_with_rules(rules, dd_max);
    setup.fuzzy.defuzz_resolution =
        static_cast<int>(doc.get_int("fuzzy", "resolution", setup.fuzzy.defuzz_resolution));

    double period = doc.get_double("controller", "sample_period", 1e-3);
    double guard = doc.get_double("controller", "slope_guard_eps", 1e-4);

    setup.reference_cfg.sample_period = period;
    setup.reference_cfg.slope_guard_eps = guard;
    setup.reference_cfg.gain_e = doc.get_double("controller", "ref_gain_e", 1.5);
    setup.reference_cfg.gain_ce = doc.get_double("controller", "ref_gain_ce", 1.0);
    setup.reference_cfg.gain_dd = doc.get_double("controller", "ref_gain_dd", 1.0);

    setup.conventional_cfg.sample_period = period;
    setup.conventional_cfg.slope_guard_eps = guard;
    setup.conventional_cfg.gain_e = doc.get_double("controller", "conv_gain_e", 0.02);
    setup.conventional_cfg.gain_ce = doc.get_double("controller", "conv_gain_ce", 0.02);
    setup.conventional_cfg.gain_dd = doc.get_double("controller", "conv_gain_dd", 0.2);
    setup.conventional_cfg.restart_power_pct =
        doc.get_double("controller", "conv_restart_pct", 3.0);
    setup.conventional_cfg.reacquire_duty =
        doc.get_double("controller", "conv_reacquire_duty",
                       0.5 * (setup.converter.d_min + setup.converter.d_max));

    setup.reference_cfg.validate();
    setup.conventional_cfg.validate();
    return setup;
}

ScenarioTrace run_scenario(const Scenario& scenario, const SimSetup& setup,
                           const VmaxEstimator* estimator) {
    scenario.profile_T.validate();
    scenario.profile_lambda.validate();

    const ControllerConfig& cfg = scenario.method == TrackerMethod::Conventional
                                      ? setup.conventional_cfg
                                      : setup.reference_cfg;
    Tracker tracker(scenario.method, setup.fuzzy, cfg, estimator);

    double ratio = cfg.sample_period / setup.converter.plant_dt;
    int plant_steps = static_cast<int>(std::lround(ratio));
    if (plant_steps < 1 || std::abs(ratio - plant_steps) > 1e-6) {
        throw config_error("sample_period must be an integer multiple of plant_dt");
    }
    int n_ticks = static_cast<int>(std::lround(scenario.duration / cfg.sample_period));

    double temp = scenario.profile_T.at(0.0);
    double lambda = scenario.profile_lambda.at(0.0);
    MppResult mpp = find_mpp(setup.stack, temp, lambda);

    // The converter starts settled at the initial duty (midpoint of the
    // clamp range unless the scenario overrides it) so every method sees the
    // same starting point.
    double duty0 = std::isnan(scenario.initial_duty)
                       ? 0.5 * (setup.converter.d_min + setup.converter.d_max)
                       : std::clamp(scenario.initial_duty, setup.converter.d_min,
                                    setup.converter.d_max);

    ScenarioTrace trace;
    trace.t.reserve(n_ticks);

    ConverterState state;
    try {
        state = converged_state(setup.stack, setup.converter, temp, lambda, duty0);
    } catch (const std::exception& err) {
        trace.aborted = true;
        trace.abort_reason = err.what();
        return trace;
    }

    {
        double v0 = stack_voltage(setup.stack, {temp, lambda, state.inductor_current});
        tracker.prime({0.0, temp, lambda, v0, v0 * state.inductor_current}, duty0);
    }

    for (int k = 0; k < n_ticks; ++k) {
        double t = k * cfg.sample_period;

        double new_temp = scenario.profile_T.at(t);
        double new_lambda = scenario.profile_lambda.at(t);
        if (new_temp != temp || new_lambda != lambda) {
            temp = new_temp;
            lambda = new_lambda;
            mpp = find_mpp(setup.stack, temp, lambda);
        }

        double current = state.inductor_current;
        double v_fc;
        try {
            v_fc = stack_voltage(setup.stack, {temp, lambda, current});
        } catch (const std::domain_error& err) {
            trace.aborted = true;
            trace.abort_reason = err.what();
            break;
        }
        double p_fc = v_fc * current;

        trace.t.push_back(t);
        trace.temp_T.push_back(temp);
        trace.lambda_m.push_back(lambda);
        trace.duty.push_back(state.duty);
        trace.current_I.push_back(current);
        trace.v_fc.push_back(v_fc);
        trace.p_fc.push_back(p_fc);
        trace.p_oracle.push_back(mpp.p_max);

        double dd = tracker.tick({t, temp, lambda, v_fc, p_fc});
        state = apply_duty(setup.converter, state, state.duty + dd);
        tracker.set_duty(state.duty);

        try {
            for (int s = 0; s < plant_steps; ++s) {
                state = coupled_plant_step(setup.stack, setup.converter, temp, lambda, state,
                                           setup.converter.plant_dt)
                            .state;
            }
        } catch (const std::exception& err) {
            trace.aborted = true;
            trace.abort_reason = err.what();
            break;
        }
    }
    return trace;
}

std::vector<double> schedule_step_times(const Scenario& scenario) {
    std::vector<double> times{0.0};
    auto add = [&](const StepSchedule& schedule) {
        for (const auto& [t, v] : schedule.points) {
            if (t > kTimeEps) times.push_back(t);
        }
    };
    add(scenario.profile_T);
    add(scenario.profile_lambda);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end(),
                            [](double a, double b) { return std::abs(a - b) < kTimeEps; }),
                times.end());
    return times;
}

std::vector<SegmentMetrics> evaluate_trace(const ScenarioTrace& trace,
                                           const std::vector<double>& step_times,
                                           double band_pct) {
    if (trace.size() == 0) throw config_error("evaluate_trace: empty trace");

    std::vector<SegmentMetrics> segments;
    double trace_end = trace.t.back() + (trace.size() > 1 ? trace.t[1] - trace.t[0] : 0.0);

    for (std::size_t s = 0; s < step_times.size(); ++s) {
        double t_start = step_times[s];
        double t_end = (s + 1 < step_times.size()) ? step_times[s + 1] : trace_end;
        if (!(t_end > t_start)) continue;

        SegmentMetrics m{};
        m.t_start = t_start;
        m.t_end = t_end;
        m.settling = settling_time(trace.t, trace.p_fc, t_start, band_pct, t_end);

        double tail_start = t_end - 0.1 * (t_end - t_start);
        double sum = 0.0;
        std::size_t count = 0;
        double oracle = 0.0;
        bool have_oracle = false;
        double energy = 0.0;
        for (std::size_t i = 0; i < trace.size(); ++i) {
            double t = trace.t[i];
            if (t < t_start - kTimeEps || t >= t_end - kTimeEps) continue;
            if (!have_oracle) {
                oracle = trace.p_oracle[i];
                have_oracle = true;
            }
            if (i + 1 < trace.size()) {
                energy += trace.p_fc[i] * (trace.t[i + 1] - trace.t[i]);
            }
            if (t >= tail_start) {
                sum += trace.p_fc[i];
                ++count;
            }
        }
        if (!have_oracle || count == 0) continue; // segment truncated by an abort

        m.final_power_W = sum / static_cast<double>(count);
        m.oracle_power_W = oracle;
        m.accuracy_pct = accuracy_pct(m.final_power_W, oracle);
        m.energy_J = energy;
        segments.push_back(m);
    }
    return segments;
}

} // namespace fcmppt
