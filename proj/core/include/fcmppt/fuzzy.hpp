#pragma once

#include <array>
#include <string>

namespace fcmppt {

// Seven-set linguistic scale shared by both controller inputs and the output.
enum class FuzzyLabel : int { NB = 0, NM, NS, ZE, PS, PM, PB };

inline constexpr int kNumFuzzySets = 7;

const char* to_string(FuzzyLabel label);
FuzzyLabel fuzzy_label_from_string(const std::string& text);

using MembershipVector = std::array<double, kNumFuzzySets>;

// Triangle with apex at b; a == b or b == c gives a one-sided shoulder ramp
// at a universe edge.
struct TriangularMf {
    double a;
    double b;
    double c;

    double membership(double x) const;
};

struct LinguisticVariable {
    std::string name;
    double lo = -1.0;
    double hi = 1.0;
    std::array<TriangularMf, kNumFuzzySets> sets;

    // Seven triangles with uniformly spaced apexes and 50% overlap,
    // shoulders at the universe edges, exactly mirror-symmetric about the
    // universe midpoint.
    static LinguisticVariable uniform_partition(std::string name, double lo, double hi);

    // Inputs outside [lo, hi] clamp to the boundary.
    MembershipVector fuzzify(double x) const;

    // Ordered apexes, full coverage, symmetric partition.
    void validate() const;
};

// 7x7 grid: cells[e][ce] with both axes ordered NB..PB.
struct RuleTable {
    std::array<std::array<FuzzyLabel, kNumFuzzySets>, kNumFuzzySets> cells;

    // The classic MPPT steering table: cells[i][j] = clamp(i + j - 3, NB, PB).
    static RuleTable standard_mppt();

    // 7 rows x 7 whitespace-separated labels; row = E label NB..PB, column =
    // CE label NB..PB. Validates on load.
    static RuleTable parse(const std::string& text);
    static RuleTable load_file(const std::string& path);
    std::string to_text() const;

    // Total, antisymmetric under joint sign flip, ZE at the center.
    void validate() const;
};

struct FuzzySystem {
    LinguisticVariable error_var;       // E, normalized to [-1, 1]
    LinguisticVariable delta_error_var; // CE, normalized to [-1, 1]
    LinguisticVariable output_var;      // dD, [-dd_max, dd_max]
    RuleTable rules;
    int defuzz_resolution = 401;

    static FuzzySystem mppt_default(double dd_max = 0.01);
    static FuzzySystem mppt_with_rules(RuleTable rules, double dd_max = 0.01);
};

// Mamdani min-AND composition with max aggregation: per-label clip heights.
MembershipVector infer(const RuleTable& rules,
                       const MembershipVector& e_degrees,
                       const MembershipVector& ce_degrees);

// Centroid of the clipped-triangle union over a uniform discretization of
// the output universe. Throws inference_error on an identically-zero
// aggregate.
double defuzzify_centroid(const LinguisticVariable& output,
                          const MembershipVector& clip_heights,
                          int resolution);

// fuzzify -> infer -> defuzzify pipeline.
double evaluate(const FuzzySystem& system, double e, double ce);

} // namespace fcmppt
