#pragma once

#include "fcmppt/config.hpp"
#include "fcmppt/stack_model.hpp"

namespace fcmppt {

// Averaged continuous-conduction boost converter with resistive load. Duty
// cycle D reflects the load to the stack as R (1-D)^2.
struct ConverterParams {
    double inductance_L = 5e-3;   // H
    double capacitance_C = 4.7e-3;// F
    double load_R = 8.0;          // ohm
    double d_min = 0.05;
    double d_max = 0.9;
    double plant_dt = 2e-5;       // s, fixed RK4 step

    // Section [converter].
    static ConverterParams from_config(const ConfigDoc& doc);

    // All positive, d_max < 1, plant_dt <= sqrt(LC)/10.
    void validate() const;
};

struct ConverterState {
    double inductor_current = 0.0; // A, equals the stack current
    double output_voltage = 0.0;   // V
    double duty = 0.0;
};

// One fixed RK4 step of
//   L di/dt = v_fc - (1-D) v_out
//   C dv/dt = (1-D) i - v_out / R
// with i and v_out clamped at 0 from below (diode). Throws
// integration_error on NaN/inf state.
ConverterState converter_step(const ConverterParams& params, const ConverterState& state,
                              double v_fc, double dt);

// duty = clamp(new_d, d_min, d_max); clamping is the contract, no error.
ConverterState apply_duty(const ConverterParams& params, const ConverterState& state,
                          double new_d);

struct PlantSample {
    ConverterState state; // post-step state
    double v_fc;          // stack voltage sampled at the pre-step current, V
    double p_fc;          // v_fc * pre-step current, W
};

// Quasi-static coupling: the stack voltage is evaluated at the present
// inductor current and held for one converter step. Throws envelope_error
// when the current reaches the limiting current.
PlantSample coupled_plant_step(const StackParams& stack, const ConverterParams& params,
                               double temp_T, double lambda_m,
                               const ConverterState& state, double dt);

// Steady state at a fixed duty: solves stack_voltage(I) = R (1-D)^2 I by
// bisection and back-fills v_out = v_fc / (1-D). Throws envelope_error when
// no equilibrium exists below the limiting current.
ConverterState converged_state(const StackParams& stack, const ConverterParams& params,
                               double temp_T, double lambda_m, double duty);

} // namespace fcmppt
