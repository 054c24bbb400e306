#pragma once

#include "fcmppt/config.hpp"

namespace fcmppt {

// Parametric coefficients of the activation overvoltage correlation.
struct XiCoefficients {
    double xi1;
    double xi2;
    double xi3;
    double xi4;
};

// Physical constants and fitted coefficients of one PEMFC stack.
//
// Units: area cm^2, membrane thickness cm, currents A, pressures atm,
// temperatures K. The activation and Nernst correlations below carry
// atm-referenced constants, so pressures are atm throughout.
struct StackParams {
    int n_cells = 130;            // series cells
    double area_A = 100.0;        // cell active area, cm^2
    double thickness_tm = 0.025;  // membrane thickness, cm
    double i_limit = 250.0;       // limiting current, A
    XiCoefficients xi{-0.948, 0.00354, 7.6e-5, -1.93e-4};
    double p_h2 = 1.0;            // hydrogen pressure, atm
    double p_o2 = 1.0;            // oxygen pressure, atm
    double t_min = 293.0;         // valid stack temperature range, K
    double t_max = 363.0;

    static constexpr int n_electrons = 2;
    static constexpr double faraday_F = 96487.0; // C/mol
    static constexpr double gas_R = 8.314;       // J/(mol K)

    // Section [stack]; unset keys keep the defaults above.
    static StackParams from_config(const ConfigDoc& doc);

    // Checks structural invariants, including activation-loss positivity on
    // a sampled (T, I) grid over [t_min, t_max] x [kActivationCheckFloor,
    // i_limit). Throws std::invalid_argument.
    void validate() const;
};

// One operating point: the exogenous pair (T, lambda) plus stack current.
struct OperatingConditions {
    double temp_T;    // K
    double lambda_m;  // membrane water content, dimensionless
    double current_I; // stack current, A
};

// Activation loss is evaluated at max(I, kCurrentEpsilon) to remove the
// ln(0) singularity; the operating region sits far above this floor.
inline constexpr double kCurrentEpsilon = 1e-3; // A

// Lower current bound of the activation-positivity construction check. The
// correlation goes negative for currents well below 1 A (ln(i) term), which
// is outside the tracking envelope.
inline constexpr double kActivationCheckFloor = 1.0; // A

// Throws std::domain_error naming the violated bound.
void validate_conditions(const StackParams& params, const OperatingConditions& cond);

// Largest current for which the membrane-resistivity denominator stays
// positive at this water content (J = I/A must satisfy 3J + 0.634 < lambda).
double lambda_current_bound(const StackParams& params, double lambda_m);

// Thermodynamic open-circuit cell potential:
//   E = 1.229 - 8.5e-4 (T - 298.15) + 4.308e-5 T (ln P_H2 + 0.5 ln P_O2)
double nernst_voltage(double temp_T, double p_h2, double p_o2);

// Dissolved-oxygen concentration at the cathode, mol/cm^3:
//   C_O2 = P_O2 / (5.08e6 exp(-498/T))
double oxygen_concentration(double temp_T, double p_o2);

// Activation overvoltage, V (positive loss):
//   V_act = -[xi1 + xi2 T + xi3 T ln(C_O2) + xi4 T ln(I)]
double activation_loss(double temp_T, double c_o2, double current_I,
                       const XiCoefficients& xi);

// Membrane resistivity (ohm cm), Amphlett/Mann correlation:
//   r_m = 181.6 [1 + 0.03 J + 0.062 (T/303)^2 J^2.5]
//         / [(lambda - 0.634 - 3J) exp(4.18 (T-303)/T)],  J = I/A
double membrane_resistivity(const StackParams& params, const OperatingConditions& cond);

// Ohmic loss V_ohmic = R_m I with R_m = r_m t_m / A.
double ohmic_loss(const StackParams& params, const OperatingConditions& cond);

// Concentration loss magnitude -(RT/nF) ln(1 - I/i_L) >= 0; grows without
// bound as I approaches the limiting current.
double concentration_loss(const StackParams& params, double current_I, double temp_T);

// V_cell = E_nernst - V_act - V_ohmic - V_con
double cell_voltage(const StackParams& params, const OperatingConditions& cond);

double stack_voltage(const StackParams& params, const OperatingConditions& cond);

// P = n_cells * V_cell * I
double stack_power(const StackParams& params, const OperatingConditions& cond);

} // namespace fcmppt
