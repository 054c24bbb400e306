#include "fcmppt/fuzzy.hpp"

#include "fcmppt/errors.hpp"
#include "fcmppt/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>

using namespace fcmppt;

TEST_CASE("triangular membership shapes") {
    TriangularMf tri{-1.0, 0.0, 1.0};
    CHECK(tri.membership(0.0) == doctest::Approx(1.0));
    CHECK(tri.membership(-1.0) == doctest::Approx(0.0));
    CHECK(tri.membership(1.0) == doctest::Approx(0.0));
    CHECK(tri.membership(-0.5) == doctest::Approx(0.5));
    CHECK(tri.membership(2.0) == doctest::Approx(0.0));

    // Shoulder ramps at universe edges.
    TriangularMf left{-1.0, -1.0, -0.5};
    CHECK(left.membership(-1.0) == doctest::Approx(1.0));
    CHECK(left.membership(-0.75) == doctest::Approx(0.5));
    TriangularMf right{0.5, 1.0, 1.0};
    CHECK(right.membership(1.0) == doctest::Approx(1.0));
}

TEST_CASE("uniform partition fuzzification") {
    LinguisticVariable var = LinguisticVariable::uniform_partition("E", -1.0, 1.0);
    CHECK_NOTHROW(var.validate());

    // Apex of ZE: full membership there, nothing elsewhere except neighbors.
    MembershipVector deg = var.fuzzify(0.0);
    CHECK(deg[3] == doctest::Approx(1.0));
    for (int k = 0; k < kNumFuzzySets; ++k) {
        if (k != 3) CHECK(deg[k] == doctest::Approx(0.0));
    }

    // Universe lower bound: the NB shoulder owns it.
    deg = var.fuzzify(-1.0);
    CHECK(deg[0] == doctest::Approx(1.0));

    // Out-of-universe inputs clamp to the boundary.
    deg = var.fuzzify(-5.0);
    CHECK(deg[0] == doctest::Approx(1.0));

    // Midway between the NS and ZE apexes: 50% overlap splits evenly.
    deg = var.fuzzify(-1.0 / 6.0);
    CHECK(deg[2] == doctest::Approx(0.5));
    CHECK(deg[3] == doctest::Approx(0.5));

    // Coverage: some membership is nonzero everywhere on a fine grid.
    for (int k = 0; k <= 400; ++k) {
        double x = -1.0 + 2.0 * k / 400.0;
        MembershipVector d = var.fuzzify(x);
        double total = 0.0;
        for (double m : d) total += m;
        CHECK(total > 0.0);
    }
}

TEST_CASE("rule table invariants and io") {
    RuleTable table = RuleTable::standard_mppt();
    CHECK_NOTHROW(table.validate());
    CHECK(table.cells[3][3] == FuzzyLabel::ZE);

    // Text round trip.
    RuleTable back = RuleTable::parse(table.to_text());
    for (int i = 0; i < kNumFuzzySets; ++i) {
        for (int j = 0; j < kNumFuzzySets; ++j) {
            CHECK(back.cells[i][j] == table.cells[i][j]);
        }
    }

    // Broken center must be rejected.
    RuleTable bad = table;
    bad.cells[3][3] = FuzzyLabel::PS;
    CHECK_THROWS_AS(bad.validate(), config_error);

    // Antisymmetry violations must be rejected.
    bad = table;
    bad.cells[0][0] = FuzzyLabel::PB;
    CHECK_THROWS_AS(bad.validate(), config_error);

    CHECK_THROWS_AS(RuleTable::parse("NB NB"), config_error);
    CHECK_THROWS_AS(RuleTable::parse(table.to_text() + " NB"), config_error);
}

TEST_CASE("inference clips and aggregates") {
    RuleTable table = RuleTable::standard_mppt();

    // Exactly one rule firing at full strength reproduces its consequent.
    MembershipVector e{};
    MembershipVector ce{};
    e[0] = 1.0;
    ce[0] = 1.0;
    MembershipVector clip = infer(table, e, ce);
    CHECK(clip[static_cast<int>(table.cells[0][0])] == doctest::Approx(1.0));
    double total = 0.0;
    for (double c : clip) total += c;
    CHECK(total == doctest::Approx(1.0));

    // Two rules with the same consequent aggregate by max.
    e = MembershipVector{};
    ce = MembershipVector{};
    e[0] = 0.3;  // (NB, NB) -> NB at 0.3
    e[1] = 0.7;  // (NM, NB) -> NB at 0.7
    ce[0] = 1.0;
    clip = infer(table, e, ce);
    CHECK(clip[0] == doctest::Approx(0.7));
}

TEST_CASE("centroid defuzzification reference cases") {
    LinguisticVariable out = LinguisticVariable::uniform_partition("dD", -1.0, 1.0);

    // Single symmetric aggregate centered at 0 defuzzifies to 0.
    MembershipVector clip{};
    clip[3] = 0.6;
    CHECK(defuzzify_centroid(out, clip, 201) == doctest::Approx(0.0).epsilon(1e-12));

    // A full isoceles triangle's centroid is its apex abscissa. Build a
    // custom variable whose PS set is symmetric inside the universe.
    LinguisticVariable custom = out;
    custom.sets[4] = TriangularMf{0.1, 0.4, 0.7};
    clip = MembershipVector{};
    clip[4] = 1.0;
    CHECK(defuzzify_centroid(custom, clip, 201) == doctest::Approx(0.4).epsilon(1e-9));

    // Two disjoint equal triangles at +-0.5 cancel exactly.
    custom.sets[1] = TriangularMf{-0.7, -0.5, -0.3};
    custom.sets[5] = TriangularMf{0.3, 0.5, 0.7};
    clip = MembershipVector{};
    clip[1] = 1.0;
    clip[5] = 1.0;
    CHECK(defuzzify_centroid(custom, clip, 201) == doctest::Approx(0.0).epsilon(1e-12));

    // Identically-zero aggregates are an inference error.
    CHECK_THROWS_AS(defuzzify_centroid(out, MembershipVector{}, 201), inference_error);
}

TEST_CASE("evaluate pipeline basics") {
    FuzzySystem fs = FuzzySystem::mppt_default(0.01);
    CHECK(evaluate(fs, 0.0, 0.0) == doctest::Approx(0.0));

    // Saturated corner drives a full-scale command.
    double corner = evaluate(fs, 1.0, 1.0);
    CHECK(corner > 0.8 * 0.01);
    CHECK(corner <= 0.01);

    // Output never leaves the dD universe.
    Rng rng(99);
    for (int i = 0; i < 2000; ++i) {
        double v = evaluate(fs, rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
        CHECK(std::abs(v) <= 0.01 + 1e-15);
    }
}

TEST_CASE("evaluate antisymmetry") {
    FuzzySystem fs = FuzzySystem::mppt_default(0.01);
    Rng rng(7);
    for (int i = 0; i < 5000; ++i) {
        double e = rng.uniform(-1.2, 1.2);
        double ce = rng.uniform(-1.2, 1.2);
        double a = evaluate(fs, e, ce);
        double b = evaluate(fs, -e, -ce);
        CHECK(std::abs(a + b) < 1e-9);
    }
}

TEST_CASE("evaluate monotone in e along each ce row") {
    FuzzySystem fs = FuzzySystem::mppt_default(0.01);
    // Clipped-shoulder centroids wobble by a sliver as adjacent clips trade
    // places, so monotonicity is asserted up to 2% of the output range.
    const double slack = 0.02 * 0.02;
    for (int r = 0; r < 41; ++r) {
        double ce = -1.0 + 2.0 * r / 40.0;
        double prev = -1.0;
        for (int c = 0; c < 41; ++c) {
            double e = -1.0 + 2.0 * c / 40.0;
            double v = evaluate(fs, e, ce);
            if (c > 0) CHECK(v >= prev - slack);
            prev = v;
        }
    }
}

TEST_CASE("evaluate output surface is continuous") {
    FuzzySystem fs = FuzzySystem::mppt_default(0.01);
    // Lipschitz-style bound estimated on a fine grid: neighboring outputs
    // move by at most a small multiple of the input spacing.
    const int n = 200;
    const double h = 2.0 / n;
    for (double ce : {-0.8, -0.2, 0.0, 0.4, 1.0}) {
        double prev = evaluate(fs, -1.0, ce);
        for (int k = 1; k <= n; ++k) {
            double v = evaluate(fs, -1.0 + k * h, ce);
            CHECK(std::abs(v - prev) < 0.1 * h);
            prev = v;
        }
    }
}

TEST_CASE("doubling defuzzification resolution barely moves outputs") {
    FuzzySystem coarse = FuzzySystem::mppt_default(0.01);
    FuzzySystem fine = coarse;
    fine.defuzz_resolution = 402;
    Rng rng(21);
    for (int i = 0; i < 500; ++i) {
        double e = rng.uniform(-1.0, 1.0);
        double ce = rng.uniform(-1.0, 1.0);
        CHECK(std::abs(evaluate(coarse, e, ce) - evaluate(fine, e, ce)) <
              1e-3 * 0.02); // fraction of the universe width
    }
}

TEST_CASE("shipped rule file matches the built-in table") {
    const char* rules_path = std::getenv("FCMPPT_RULES");
    REQUIRE_MESSAGE(rules_path != nullptr, "FCMPPT_RULES must point at rules/mppt7x7");
    RuleTable shipped = RuleTable::load_file(rules_path);
    RuleTable built_in = RuleTable::standard_mppt();
    for (int i = 0; i < kNumFuzzySets; ++i) {
        for (int j = 0; j < kNumFuzzySets; ++j) {
            CHECK(shipped.cells[i][j] == built_in.cells[i][j]);
        }
    }
}

TEST_CASE("deadband parks near-zero errors") {
    FuzzySystem fs = FuzzySystem::mppt_default(0.01);
    CHECK(evaluate(fs, 0.1, 0.0) == doctest::Approx(0.0));
    CHECK(evaluate(fs, -0.15, 0.1) == doctest::Approx(0.0));
    // Outside the deadband the command wakes up.
    CHECK(evaluate(fs, 0.6, 0.0) > 1e-4);
}
