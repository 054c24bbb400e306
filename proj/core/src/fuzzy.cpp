#include "fcmppt/fuzzy.hpp"

#include "fcmppt/errors.hpp"
#include "fcmppt/io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fcmppt {

namespace {
constexpr const char* kLabelNames[kNumFuzzySets] = {"NB", "NM", "NS", "ZE",
                                                    "PS", "PM", "PB"};
}

const char* to_string(FuzzyLabel label) {
    return kLabelNames[static_cast<int>(label)];
}

FuzzyLabel fuzzy_label_from_string(const std::string& text) {
    for (int i = 0; i < kNumFuzzySets; ++i) {
        if (text == kLabelNames[i]) return static_cast<FuzzyLabel>(i);
    }
    throw config_error("unknown fuzzy label '" + text + "'");
}

double TriangularMf::membership(double x) const {
    if (x < a || x > c) return 0.0;
    double rising = (b > a) ? (x - a) / (b - a) : 1.0;
    double falling = (c > b) ? (c - x) / (c - b) : 1.0;
    return std::clamp(std::min(rising, falling), 0.0, 1.0);
}

LinguisticVariable LinguisticVariable::uniform_partition(std::string name, double lo,
                                                         double hi) {
    if (!(lo < hi)) throw config_error("universe needs lo < hi for " + name);
    LinguisticVariable var;
    var.name = std::move(name);
    var.lo = lo;
    var.hi = hi;

    // Apexes built by reflection about the midpoint so the partition is
    // exactly symmetric.
    double mid = 0.5 * (lo + hi);
    double h = (hi - lo) / 6.0;
    std::array<double, kNumFuzzySets> apex;
    for (int k = 0; k <= 3; ++k) {
        double off = (3 - k) * h;
        apex[k] = mid - off;
        apex[6 - k] = mid + off;
    }
    for (int k = 0; k < kNumFuzzySets; ++k) {
        double left = (k == 0) ? apex[0] : apex[k - 1];
        double right = (k == kNumFuzzySets - 1) ? apex[6] : apex[k + 1];
        var.sets[k] = TriangularMf{left, apex[k], right};
    }
    return var;
}

MembershipVector LinguisticVariable::fuzzify(double x) const {
    double xc = std::clamp(x, lo, hi);
    MembershipVector degrees;
    for (int k = 0; k < kNumFuzzySets; ++k) {
        degrees[k] = sets[k].membership(xc);
    }
    return degrees;
}

void LinguisticVariable::validate() const {
    for (const auto& s : sets) {
        if (!(s.a <= s.b && s.b <= s.c)) {
            throw config_error("triangular set breakpoints out of order in " + name);
        }
    }
    for (int k = 0; k + 1 < kNumFuzzySets; ++k) {
        if (!(sets[k].b < sets[k + 1].b)) {
            throw config_error("set apexes not strictly increasing in " + name);
        }
        if (!(sets[k].c > sets[k + 1].a)) {
            throw config_error("adjacent sets leave a gap in " + name);
        }
    }
    double mid = 0.5 * (lo + hi);
    for (int k = 0; k < kNumFuzzySets; ++k) {
        double d1 = sets[k].b - mid;
        double d2 = mid - sets[kNumFuzzySets - 1 - k].b;
        if (std::abs(d1 - d2) > 1e-9 * (hi - lo)) {
            throw config_error("partition not symmetric about the midpoint in " + name);
        }
    }
}

RuleTable RuleTable::standard_mppt() {
    // Diagonal steering table with a one-cell deadband around the center:
    // near-zero error combinations command no duty change, so the tracker
    // parks instead of hunting once the error signal fades.
    RuleTable table;
    for (int i = 0; i < kNumFuzzySets; ++i) {
        for (int j = 0; j < kNumFuzzySets; ++j) {
            int sum = i + j;
            int out;
            if (sum >= 5 && sum <= 7) out = 3; // ZE deadband
            else if (sum < 5) out = std::clamp(sum - 2, 0, kNumFuzzySets - 1);
            else out = std::clamp(sum - 4, 0, kNumFuzzySets - 1);
            table.cells[i][j] = static_cast<FuzzyLabel>(out);
        }
    }
    return table;
}

RuleTable RuleTable::parse(const std::string& text) {
    std::istringstream in(text);
    RuleTable table;
    std::string token;
    for (int i = 0; i < kNumFuzzySets; ++i) {
        for (int j = 0; j < kNumFuzzySets; ++j) {
            if (!(in >> token)) {
                throw config_error("rule table needs 49 labels (7x7 grid)");
            }
            table.cells[i][j] = fuzzy_label_from_string(token);
        }
    }
    if (in >> token) {
        throw config_error("rule table has trailing content after 49 labels");
    }
    table.validate();
    return table;
}

RuleTable RuleTable::load_file(const std::string& path) {
    std::string text = read_file(path);
    // Strip comments so tables can be annotated.
    std::istringstream in(text);
    std::string stripped, line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        stripped += line;
        stripped += '\n';
    }
    return parse(stripped);
}

std::string RuleTable::to_text() const {
    std::string out;
    for (int i = 0; i < kNumFuzzySets; ++i) {
        for (int j = 0; j < kNumFuzzySets; ++j) {
            out += kLabelNames[static_cast<int>(cells[i][j])];
            out += (j + 1 < kNumFuzzySets) ? ' ' : '\n';
        }
    }
    return out;
}

void RuleTable::validate() const {
    if (cells[3][3] != FuzzyLabel::ZE) {
        throw config_error("rule table center (ZE, ZE) must map to ZE");
    }
    for (int i = 0; i < kNumFuzzySets; ++i) {
        for (int j = 0; j < kNumFuzzySets; ++j) {
            int mirrored = static_cast<int>(cells[kNumFuzzySets - 1 - i][kNumFuzzySets - 1 - j]);
            int flipped = kNumFuzzySets - 1 - static_cast<int>(cells[i][j]);
            if (mirrored != flipped) {
                std::ostringstream msg;
                msg << "rule table not antisymmetric at (" << kLabelNames[i] << ", "
                    << kLabelNames[j] << ")";
                throw config_error(msg.str());
            }
        }
    }
}

FuzzySystem FuzzySystem::mppt_default(double dd_max) {
    return mppt_with_rules(RuleTable::standard_mppt(), dd_max);
}

FuzzySystem FuzzySystem::mppt_with_rules(RuleTable rules, double dd_max) {
    rules.validate();
    FuzzySystem fs;
    fs.error_var = LinguisticVariable::uniform_partition("E", -1.0, 1.0);
    fs.delta_error_var = LinguisticVariable::uniform_partition("CE", -1.0, 1.0);
    fs.output_var = LinguisticVariable::uniform_partition("dD", -dd_max, dd_max);
    fs.rules = rules;
    return fs;
}

MembershipVector infer(const RuleTable& rules, const MembershipVector& e_degrees,
                       const MembershipVector& ce_degrees) {
    MembershipVector clip{};
    for (int i = 0; i < kNumFuzzySets; ++i) {
        if (e_degrees[i] == 0.0) continue;
        for (int j = 0; j < kNumFuzzySets; ++j) {
            double strength = std::min(e_degrees[i], ce_degrees[j]);
            int out = static_cast<int>(rules.cells[i][j]);
            clip[out] = std::max(clip[out], strength);
        }
    }
    return clip;
}

double defuzzify_centroid(const LinguisticVariable& output,
                          const MembershipVector& clip_heights, int resolution) {
    if (resolution < 2) throw config_error("defuzzification resolution must be >= 2");
    double mid = 0.5 * (output.lo + output.hi);
    double step = (output.hi - output.lo) / (resolution - 1);
    double center_index = 0.5 * (resolution - 1);

    double weighted = 0.0;
    double total = 0.0;
    for (int s = 0; s < resolution; ++s) {
        // Sampled symmetrically about the universe midpoint so symmetric
        // aggregates defuzzify to the midpoint exactly.
        double x = mid + (s - center_index) * step;
        double mu = 0.0;
        for (int k = 0; k < kNumFuzzySets; ++k) {
            if (clip_heights[k] == 0.0) continue;
            mu = std::max(mu, std::min(clip_heights[k], output.sets[k].membership(x)));
        }
        weighted += x * mu;
        total += mu;
    }
    if (total <= 0.0) {
        throw inference_error("identically-zero aggregate in defuzzification; the " +
                              output.name + " partition does not cover its universe");
    }
    return weighted / total;
}

double evaluate(const FuzzySystem& system, double e, double ce) {
    MembershipVector e_deg = system.error_var.fuzzify(e);
    MembershipVector ce_deg = system.delta_error_var.fuzzify(ce);
    MembershipVector clip = infer(system.rules, e_deg, ce_deg);
    return defuzzify_centroid(system.output_var, clip, system.defuzz_resolution);
}

} // namespace fcmppt
