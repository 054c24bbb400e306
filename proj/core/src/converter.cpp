#include "fcmppt/converter.hpp"

#include "fcmppt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fcmppt {

ConverterParams ConverterParams::from_config(const ConfigDoc& doc) {
    ConverterParams p;
    p.inductance_L = doc.get_double("converter", "inductance_L", p.inductance_L);
    p.capacitance_C = doc.get_double("converter", "capacitance_C", p.capacitance_C);
    p.load_R = doc.get_double("converter", "load_R", p.load_R);
    p.d_min = doc.get_double("converter", "d_min", p.d_min);
    p.d_max = doc.get_double("converter", "d_max", p.d_max);
    p.plant_dt = doc.get_double("converter", "plant_dt", p.plant_dt);
    p.validate();
    return p;
}

void ConverterParams::validate() const {
    if (!(inductance_L > 0.0)) throw config_error("inductance_L must be positive");
    if (!(capacitance_C > 0.0)) throw config_error("capacitance_C must be positive");
    if (!(load_R > 0.0)) throw config_error("load_R must be positive");
    if (!(plant_dt > 0.0)) throw config_error("plant_dt must be positive");
    if (!(0.0 < d_min && d_min < d_max && d_max < 1.0)) {
        throw config_error("duty bounds need 0 < d_min < d_max < 1");
    }
    double tau = std::sqrt(inductance_L * capacitance_C);
    if (plant_dt > tau / 10.0) {
        std::ostringstream msg;
        msg << "plant_dt=" << plant_dt << " s exceeds sqrt(LC)/10 = " << tau / 10.0 << " s";
        throw config_error(msg.str());
    }
}

namespace {

struct Derivative {
    double di;
    double dv;
};

Derivative plant_rhs(const ConverterParams& p, double i, double v_out, double duty,
                     double v_fc) {
    double off = 1.0 - duty;
    return {(v_fc - off * v_out) / p.inductance_L,
            (off * i - v_out / p.load_R) / p.capacitance_C};
}

} // namespace

ConverterState converter_step(const ConverterParams& params, const ConverterState& state,
                              double v_fc, double dt) {
    if (!(dt > 0.0)) throw integration_error("converter_step: dt must be positive");

    double i = state.inductor_current;
    double v = state.output_voltage;
    double d = state.duty;

    Derivative k1 = plant_rhs(params, i, v, d, v_fc);
    Derivative k2 = plant_rhs(params, i + 0.5 * dt * k1.di, v + 0.5 * dt * k1.dv, d, v_fc);
    Derivative k3 = plant_rhs(params, i + 0.5 * dt * k2.di, v + 0.5 * dt * k2.dv, d, v_fc);
    Derivative k4 = plant_rhs(params, i + dt * k3.di, v + dt * k3.dv, d, v_fc);

    ConverterState next = state;
    next.inductor_current = i + dt / 6.0 * (k1.di + 2.0 * k2.di + 2.0 * k3.di + k4.di);
    next.output_voltage = v + dt / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);

    // Diode clamp: neither state runs negative.
    next.inductor_current = std::max(next.inductor_current, 0.0);
    next.output_voltage = std::max(next.output_voltage, 0.0);

    if (!std::isfinite(next.inductor_current) || !std::isfinite(next.output_voltage)) {
        std::ostringstream msg;
        msg << "plant integration diverged (NaN/inf state) at dt=" << dt << " s";
        throw integration_error(msg.str());
    }
    return next;
}

ConverterState apply_duty(const ConverterParams& params, const ConverterState& state,
                          double new_d) {
    ConverterState next = state;
    next.duty = std::clamp(new_d, params.d_min, params.d_max);
    return next;
}

PlantSample coupled_plant_step(const StackParams& stack, const ConverterParams& params,
                               double temp_T, double lambda_m, const ConverterState& state,
                               double dt) {
    double I = state.inductor_current;
    if (!(I < stack.i_limit)) {
        std::ostringstream msg;
        msg << "stack current " << I << " A reached the limiting current " << stack.i_limit
            << " A at T=" << temp_T << " K, lambda=" << lambda_m << ", duty=" << state.duty;
        throw envelope_error(msg.str());
    }
    double v_fc = stack_voltage(stack, {temp_T, lambda_m, I});
    PlantSample sample;
    sample.v_fc = v_fc;
    sample.p_fc = v_fc * I;
    sample.state = converter_step(params, state, v_fc, dt);
    return sample;
}

ConverterState converged_state(const StackParams& stack, const ConverterParams& params,
                               double temp_T, double lambda_m, double duty) {
    double reflected = params.load_R * (1.0 - duty) * (1.0 - duty);
    auto mismatch = [&](double I) {
        return stack_voltage(stack, {temp_T, lambda_m, I}) - reflected * I;
    };

    double i_hi = std::min(stack.i_limit, lambda_current_bound(stack, lambda_m)) *
                  (1.0 - 1e-9);
    double lo = 0.0;
    double hi = i_hi;
    if (mismatch(hi) > 0.0) {
        std::ostringstream msg;
        msg << "no steady state below the limiting current at duty=" << duty
            << " (reflected load " << reflected << " ohm)";
        throw envelope_error(msg.str());
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * i_hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (mismatch(mid) > 0.0 ? lo : hi) = mid;
    }
    double I = 0.5 * (lo + hi);
    double v_fc = stack_voltage(stack, {temp_T, lambda_m, I});

    ConverterState state;
    state.inductor_current = I;
    state.output_voltage = v_fc / (1.0 - duty);
    state.duty = duty;
    return state;
}

} // namespace fcmppt
