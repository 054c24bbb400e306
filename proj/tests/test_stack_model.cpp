#include "fcmppt/stack_model.hpp"

#include "fcmppt/errors.hpp"
#include "fcmppt/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace fcmppt;

namespace {
const StackParams kDefault{};
} // namespace

TEST_CASE("nernst voltage reference points") {
    // At the reference temperature with unit pressures every correction
    // term vanishes.
    CHECK(nernst_voltage(298.15, 1.0, 1.0) == doctest::Approx(1.229).epsilon(1e-12));
    // Hand evaluation: 1.229 - 8.5e-4 * 45.
    CHECK(nernst_voltage(343.15, 1.0, 1.0) == doctest::Approx(1.19075).epsilon(1e-12));
    // ln(e) = 1 makes the pressure term 4.308e-5 * 298.15.
    CHECK(nernst_voltage(298.15, std::exp(1.0), 1.0) ==
          doctest::Approx(1.241844302).epsilon(1e-9));
}

TEST_CASE("nernst voltage rejects non-positive inputs") {
    CHECK_THROWS_AS(nernst_voltage(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(nernst_voltage(298.15, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(nernst_voltage(298.15, 1.0, -1.0), std::domain_error);
}

TEST_CASE("oxygen concentration hand value and structure") {
    // Hand evaluation: exp(-498/298.15) = 0.188186..., 1/(5.08e6 * that).
    CHECK(std::abs(oxygen_concentration(298.15, 1.0) - 1.0461e-6) < 1e-9);

    // Linear in pressure.
    CHECK(oxygen_concentration(298.15, 2.0) ==
          doctest::Approx(2.0 * oxygen_concentration(298.15, 1.0)).epsilon(1e-12));

    CHECK_THROWS_AS(oxygen_concentration(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(oxygen_concentration(298.15, 0.0), std::domain_error);
}

TEST_CASE("oxygen concentration monotone decreasing in temperature") {
    double prev = oxygen_concentration(293.0, 1.0);
    for (double T = 295.0; T <= 363.0; T += 2.0) {
        double c = oxygen_concentration(T, 1.0);
        CHECK(c > 0.0);
        CHECK(c < prev);
        prev = c;
    }
}

TEST_CASE("oxygen concentration properties over random inputs") {
    Rng rng(404);
    for (int i = 0; i < 1000; ++i) {
        double T = rng.uniform(250.0, 400.0);
        double p = rng.uniform(0.1, 5.0);
        double scale = rng.uniform(0.1, 10.0);
        // Linear in pressure.
        CHECK(oxygen_concentration(T, scale * p) ==
              doctest::Approx(scale * oxygen_concentration(T, p)).epsilon(1e-12));
        // Decreasing in temperature.
        double dT = rng.uniform(0.1, 30.0);
        CHECK(oxygen_concentration(T + dT, p) < oxygen_concentration(T, p));
    }
}

TEST_CASE("activation loss degenerate coefficient cases") {
    // Only xi1 survives; the sign flips.
    XiCoefficients only_offset{-1.0, 0.0, 0.0, 0.0};
    CHECK(activation_loss(313.0, 1e-6, 42.0, only_offset) == doctest::Approx(1.0));

    // ln(1) = 0 wipes the current term for any xi4.
    XiCoefficients only_current{0.0, 0.0, 0.0, -5.0};
    CHECK(activation_loss(313.0, 1e-6, 1.0, only_current) == doctest::Approx(0.0));
}

TEST_CASE("activation loss matches independent evaluation") {
    // Frozen from a spreadsheet-style evaluation of the correlation with the
    // default coefficients at T=343.15 K, 1 atm oxygen, I=50 A.
    double c = oxygen_concentration(343.15, 1.0);
    CHECK(c == doctest::Approx(8.402541445801334e-7).epsilon(1e-12));
    CHECK(activation_loss(343.15, c, 50.0, kDefault.xi) ==
          doctest::Approx(0.3571736325632389).epsilon(1e-12));
}

TEST_CASE("activation loss current guard") {
    double c = oxygen_concentration(313.0, 1.0);
    // Below the epsilon floor the loss clamps to its value at the floor.
    CHECK(activation_loss(313.0, c, 0.0, kDefault.xi) ==
          doctest::Approx(activation_loss(313.0, c, kCurrentEpsilon, kDefault.xi)));
    CHECK_THROWS_AS(activation_loss(313.0, c, -1.0, kDefault.xi), std::domain_error);
    CHECK_THROWS_AS(activation_loss(313.0, 0.0, 10.0, kDefault.xi), std::domain_error);
}

TEST_CASE("ohmic loss hand value and scaling") {
    OperatingConditions cond{328.15, 12.0, 50.0};
    // Frozen independent evaluation of the membrane correlation at the
    // default geometry.
    CHECK(membrane_resistivity(kDefault, cond) ==
          doctest::Approx(13.733300146680111).epsilon(1e-12));
    CHECK(ohmic_loss(kDefault, cond) == doctest::Approx(0.1716662518335014).epsilon(1e-12));

    // Linear in current: zero at zero.
    CHECK(ohmic_loss(kDefault, {328.15, 12.0, 0.0}) == doctest::Approx(0.0));

    // Homogeneous of degree 1 in the membrane thickness.
    StackParams thick = kDefault;
    thick.thickness_tm *= 2.0;
    CHECK(ohmic_loss(thick, cond) == doctest::Approx(2.0 * ohmic_loss(kDefault, cond)));
}

TEST_CASE("ohmic loss monotone in current and water content") {
    double prev = ohmic_loss(kDefault, {328.15, 12.0, 1.0});
    for (double I = 10.0; I <= 120.0; I += 10.0) {
        double v = ohmic_loss(kDefault, {328.15, 12.0, I});
        CHECK(v > prev);
        prev = v;
    }
    // Drier membrane, larger loss.
    CHECK(ohmic_loss(kDefault, {328.15, 9.0, 50.0}) >
          ohmic_loss(kDefault, {328.15, 12.0, 50.0}));
}

TEST_CASE("ohmic loss names lambda when the denominator dies") {
    // lambda below the 3J + 0.634 bound.
    StackParams p = kDefault;
    OperatingConditions cond{328.15, 1.0, 100.0};
    CHECK_THROWS_WITH_AS(ohmic_loss(p, cond), doctest::Contains("lambda"),
                         std::domain_error);
}

TEST_CASE("concentration loss reference points") {
    CHECK(concentration_loss(kDefault, 0.0, 298.15) == doctest::Approx(0.0));

    // At I = i_L (1 - 1/e) the log term is exactly -1, so the loss is
    // R*298.15/(2F) = 0.012845 V.
    double I = kDefault.i_limit * (1.0 - std::exp(-1.0));
    CHECK(concentration_loss(kDefault, I, 298.15) ==
          doctest::Approx(0.012845352741820141).epsilon(1e-12));

    // Log singularity: grows without bound toward the limiting current.
    CHECK(concentration_loss(kDefault, kDefault.i_limit * 0.999999, 298.15) >
          concentration_loss(kDefault, kDefault.i_limit * 0.999, 298.15) + 0.01);
    CHECK_THROWS_AS(concentration_loss(kDefault, kDefault.i_limit, 298.15),
                    std::domain_error);
}

TEST_CASE("concentration loss strictly increasing and convex") {
    const int n = 200;
    double prev = -1.0;
    double prev_diff = 0.0;
    for (int k = 0; k <= n; ++k) {
        double I = kDefault.i_limit * 0.995 * k / n;
        double v = concentration_loss(kDefault, I, 328.15);
        if (k > 0) {
            double diff = v - prev;
            CHECK(diff > 0.0);
            if (k > 1) CHECK(diff >= prev_diff); // second difference >= 0
            prev_diff = diff;
        }
        prev = v;
    }
}

TEST_CASE("cell voltage composes the four terms") {
    OperatingConditions cond{328.15, 12.0, 60.0};
    double e = nernst_voltage(cond.temp_T, kDefault.p_h2, kDefault.p_o2);
    double a = activation_loss(cond.temp_T, oxygen_concentration(cond.temp_T, kDefault.p_o2),
                               cond.current_I, kDefault.xi);
    double o = ohmic_loss(kDefault, cond);
    double c = concentration_loss(kDefault, cond.current_I, cond.temp_T);
    CHECK(cell_voltage(kDefault, cond) == doctest::Approx(e - a - o - c).epsilon(1e-14));
    CHECK(stack_voltage(kDefault, cond) ==
          doctest::Approx(kDefault.n_cells * cell_voltage(kDefault, cond)));

    // I -> 0 limit: every loss except the guarded activation term vanishes.
    double open_circuit = cell_voltage(kDefault, {328.15, 12.0, 0.0});
    double a0 = activation_loss(328.15, oxygen_concentration(328.15, kDefault.p_o2),
                                kCurrentEpsilon, kDefault.xi);
    CHECK(open_circuit == doctest::Approx(e - a0).epsilon(1e-14));
}

TEST_CASE("cell voltage strictly decreasing in current across the envelope") {
    // 20 temperatures x 10 water contents.
    for (int a = 0; a < 20; ++a) {
        double T = kDefault.t_min + (kDefault.t_max - kDefault.t_min) * a / 19.0;
        for (int b = 0; b < 10; ++b) {
            double lam = 9.0 + 5.0 * b / 9.0;
            double hi = std::min(kDefault.i_limit, lambda_current_bound(kDefault, lam)) *
                        (1.0 - 1e-6);
            double prev = cell_voltage(kDefault, {T, lam, 0.01});
            for (int k = 1; k <= 40; ++k) {
                double I = 0.01 + (hi - 0.01) * k / 40.0;
                double v = cell_voltage(kDefault, {T, lam, I});
                CHECK(v < prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("cell voltage spot monotonicity example") {
    double v10 = cell_voltage(kDefault, {313.15, 12.0, 10.0});
    double v50 = cell_voltage(kDefault, {313.15, 12.0, 50.0});
    double v90 = cell_voltage(kDefault, {313.15, 12.0, 90.0});
    CHECK(v10 > v50);
    CHECK(v50 > v90);
}

TEST_CASE("water content only moves the ohmic term") {
    OperatingConditions c1{333.15, 10.0, 70.0};
    OperatingConditions c2{333.15, 13.0, 70.0};
    double dv = cell_voltage(kDefault, c1) - cell_voltage(kDefault, c2);
    double dohm = ohmic_loss(kDefault, c2) - ohmic_loss(kDefault, c1);
    CHECK(dv == doctest::Approx(dohm).epsilon(1e-12));
}

TEST_CASE("stack power unimodal over a dense sweep") {
    for (double T : {303.15, 328.15, 353.15}) {
        for (double lam : {9.0, 11.5, 14.0}) {
            double hi = std::min(kDefault.i_limit, lambda_current_bound(kDefault, lam)) *
                        (1.0 - 1e-9);
            int sign_changes = 0;
            int last_sign = 0;
            double prev = 0.0;
            for (int k = 0; k < 1000; ++k) {
                double I = kCurrentEpsilon + (hi - kCurrentEpsilon) * k / 999.0;
                double p = stack_power(kDefault, {T, lam, I});
                if (k > 0) {
                    double d = p - prev;
                    int sign = (d > 0.0) - (d < 0.0);
                    if (sign != 0) {
                        if (last_sign != 0 && sign != last_sign) ++sign_changes;
                        last_sign = sign;
                    }
                }
                prev = p;
            }
            CHECK(sign_changes == 1);
        }
    }
    CHECK(stack_power(kDefault, {328.15, 12.0, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("conditions validation names the violated bound") {
    CHECK_THROWS_WITH_AS(validate_conditions(kDefault, {100.0, 12.0, 10.0}),
                         doctest::Contains("temp_T"), std::domain_error);
    CHECK_THROWS_WITH_AS(validate_conditions(kDefault, {328.15, 12.0, -2.0}),
                         doctest::Contains("current_I"), std::domain_error);
    CHECK_THROWS_WITH_AS(validate_conditions(kDefault, {328.15, 12.0, 1e9}),
                         doctest::Contains("limiting"), std::domain_error);
    CHECK_THROWS_WITH_AS(validate_conditions(kDefault, {328.15, 0.5, 10.0}),
                         doctest::Contains("lambda_m"), std::domain_error);
    CHECK_NOTHROW(validate_conditions(kDefault, {328.15, 12.0, 10.0}));
}

TEST_CASE("stack params validation") {
    StackParams bad = kDefault;
    bad.n_cells = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = kDefault;
    bad.xi.xi1 = 0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    // A xi set whose activation loss dips negative inside the envelope.
    bad = kDefault;
    bad.xi = XiCoefficients{-0.01, 0.0, 0.0, 1e-3};
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("activation"),
                         std::invalid_argument);

    CHECK_NOTHROW(kDefault.validate());
}

TEST_CASE("stack params from config") {
    ConfigDoc doc = ConfigDoc::parse_string(
        "[stack]\nn_cells = 80\narea_A = 150\nxi = -0.9 0.003 7e-5 -2e-4\n");
    StackParams p = StackParams::from_config(doc);
    CHECK(p.n_cells == 80);
    CHECK(p.area_A == doctest::Approx(150.0));
    CHECK(p.xi.xi4 == doctest::Approx(-2e-4));
    // Unset keys keep the defaults.
    CHECK(p.i_limit == doctest::Approx(kDefault.i_limit));

    ConfigDoc bad = ConfigDoc::parse_string("[stack]\nxi = -0.9 0.003\n");
    CHECK_THROWS_AS(StackParams::from_config(bad), config_error);
}
