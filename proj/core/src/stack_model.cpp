#include "fcmppt/stack_model.hpp"

#include "fcmppt/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fcmppt {

StackParams StackParams::from_config(const ConfigDoc& doc) {
    StackParams p;
    p.n_cells = static_cast<int>(doc.get_int("stack", "n_cells", p.n_cells));
    p.area_A = doc.get_double("stack", "area_A", p.area_A);
    p.thickness_tm = doc.get_double("stack", "thickness_tm", p.thickness_tm);
    p.i_limit = doc.get_double("stack", "i_limit", p.i_limit);
    if (doc.has("stack", "xi")) {
        auto xi = doc.get_doubles("stack", "xi");
        if (xi.size() != 4) {
            throw config_error("[stack] xi needs exactly 4 coefficients");
        }
        p.xi = XiCoefficients{xi[0], xi[1], xi[2], xi[3]};
    }
    p.p_h2 = doc.get_double("stack", "p_h2", p.p_h2);
    p.p_o2 = doc.get_double("stack", "p_o2", p.p_o2);
    p.t_min = doc.get_double("stack", "t_min", p.t_min);
    p.t_max = doc.get_double("stack", "t_max", p.t_max);
    p.validate();
    return p;
}

void StackParams::validate() const {
    if (n_cells < 1) throw std::invalid_argument("n_cells must be >= 1");
    if (area_A <= 0.0) throw std::invalid_argument("area_A must be positive");
    if (thickness_tm <= 0.0) throw std::invalid_argument("thickness_tm must be positive");
    if (i_limit <= 0.0) throw std::invalid_argument("i_limit must be positive");
    if (p_h2 <= 0.0) throw std::invalid_argument("p_h2 must be positive");
    if (p_o2 <= 0.0) throw std::invalid_argument("p_o2 must be positive");
    if (!(t_min > 0.0) || !(t_max > t_min)) {
        throw std::invalid_argument("temperature range needs 0 < t_min < t_max");
    }
    if (xi.xi1 >= 0.0) throw std::invalid_argument("xi1 must be negative");

    // Activation loss must stay positive over the operating envelope.
    // Sampled grid: 15 temperatures across the valid range, 40 currents
    // log-spaced over [kActivationCheckFloor, i_limit).
    const int nt = 15;
    const int ni = 40;
    double i_hi = i_limit * (1.0 - 1e-6);
    for (int a = 0; a < nt; ++a) {
        double T = t_min + (t_max - t_min) * a / (nt - 1);
        double c = oxygen_concentration(T, p_o2);
        for (int b = 0; b < ni; ++b) {
            double I = kActivationCheckFloor *
                       std::pow(i_hi / kActivationCheckFloor, static_cast<double>(b) / (ni - 1));
            if (activation_loss(T, c, I, xi) <= 0.0) {
                std::ostringstream msg;
                msg << "xi coefficients give non-positive activation loss at T=" << T
                    << " K, I=" << I << " A";
                throw std::invalid_argument(msg.str());
            }
        }
    }
}

double lambda_current_bound(const StackParams& params, double lambda_m) {
    return (lambda_m - 0.634) / 3.0 * params.area_A;
}

void validate_conditions(const StackParams& params, const OperatingConditions& cond) {
    std::ostringstream msg;
    if (!(cond.temp_T >= params.t_min && cond.temp_T <= params.t_max)) {
        msg << "temp_T=" << cond.temp_T << " K outside valid range [" << params.t_min
            << ", " << params.t_max << "]";
        throw std::domain_error(msg.str());
    }
    if (!(cond.current_I >= 0.0)) {
        msg << "current_I=" << cond.current_I << " A must be non-negative";
        throw std::domain_error(msg.str());
    }
    if (!(cond.current_I < params.i_limit)) {
        msg << "current_I=" << cond.current_I << " A at or past the limiting current "
            << params.i_limit << " A";
        throw std::domain_error(msg.str());
    }
    double lambda_lo = 3.0 * cond.current_I / params.area_A + 0.634;
    if (!(cond.lambda_m > lambda_lo && cond.lambda_m <= 23.0)) {
        msg << "lambda_m=" << cond.lambda_m << " outside (" << lambda_lo
            << ", 23] (membrane-resistivity denominator)";
        throw std::domain_error(msg.str());
    }
}

double nernst_voltage(double temp_T, double p_h2, double p_o2) {
    if (!(temp_T > 0.0)) throw std::domain_error("nernst_voltage: temp_T must be positive");
    if (!(p_h2 > 0.0 && p_o2 > 0.0)) {
        throw std::domain_error("nernst_voltage: pressures must be positive");
    }
    return 1.229 - 8.5e-4 * (temp_T - 298.15) +
           4.308e-5 * temp_T * (std::log(p_h2) + 0.5 * std::log(p_o2));
}

double oxygen_concentration(double temp_T, double p_o2) {
    if (!(temp_T > 0.0)) {
        throw std::domain_error("oxygen_concentration: temp_T must be positive");
    }
    if (!(p_o2 > 0.0)) {
        throw std::domain_error("oxygen_concentration: p_o2 must be positive");
    }
    return p_o2 / (5.08e6 * std::exp(-498.0 / temp_T));
}

double activation_loss(double temp_T, double c_o2, double current_I,
                       const XiCoefficients& xi) {
    if (!(current_I >= 0.0)) {
        throw std::domain_error("activation_loss: current_I must be non-negative");
    }
    if (!(c_o2 > 0.0)) throw std::domain_error("activation_loss: c_o2 must be positive");
    double i = std::max(current_I, kCurrentEpsilon);
    return -(xi.xi1 + xi.xi2 * temp_T + xi.xi3 * temp_T * std::log(c_o2) +
             xi.xi4 * temp_T * std::log(i));
}

double membrane_resistivity(const StackParams& params, const OperatingConditions& cond) {
    double J = cond.current_I / params.area_A; // A/cm^2
    double denom_lambda = cond.lambda_m - 0.634 - 3.0 * J;
    if (!(denom_lambda > 0.0)) {
        std::ostringstream msg;
        msg << "membrane resistivity undefined: lambda_m=" << cond.lambda_m
            << " <= " << 0.634 + 3.0 * J << " at J=" << J << " A/cm^2";
        throw std::domain_error(msg.str());
    }
    double t_ratio = cond.temp_T / 303.0;
    double numer = 181.6 * (1.0 + 0.03 * J + 0.062 * t_ratio * t_ratio * std::pow(J, 2.5));
    double denom = denom_lambda * std::exp(4.18 * (cond.temp_T - 303.0) / cond.temp_T);
    return numer / denom;
}

double ohmic_loss(const StackParams& params, const OperatingConditions& cond) {
    double r_m = membrane_resistivity(params, cond);
    double resistance = r_m * params.thickness_tm / params.area_A;
    return resistance * cond.current_I;
}

double concentration_loss(const StackParams& params, double current_I, double temp_T) {
    if (!(current_I >= 0.0)) {
        throw std::domain_error("concentration_loss: current_I must be non-negative");
    }
    if (!(current_I < params.i_limit)) {
        std::ostringstream msg;
        msg << "concentration_loss: current_I=" << current_I
            << " A at or past the limiting current " << params.i_limit << " A";
        throw std::domain_error(msg.str());
    }
    double thermal = StackParams::gas_R * temp_T /
                     (StackParams::n_electrons * StackParams::faraday_F);
    return -thermal * std::log(1.0 - current_I / params.i_limit);
}

double cell_voltage(const StackParams& params, const OperatingConditions& cond) {
    validate_conditions(params, cond);
    double e_nernst = nernst_voltage(cond.temp_T, params.p_h2, params.p_o2);
    double c_o2 = oxygen_concentration(cond.temp_T, params.p_o2);
    double v_act = activation_loss(cond.temp_T, c_o2, cond.current_I, params.xi);
    double v_ohm = ohmic_loss(params, cond);
    double v_con = concentration_loss(params, cond.current_I, cond.temp_T);
    return e_nernst - v_act - v_ohm - v_con;
}

double stack_voltage(const StackParams& params, const OperatingConditions& cond) {
    return params.n_cells * cell_voltage(params, cond);
}

double stack_power(const StackParams& params, const OperatingConditions& cond) {
    return stack_voltage(params, cond) * cond.current_I;
}

} // namespace fcmppt
