#pragma once

#include <array>
#include <string>
#include <vector>

namespace fcmppt {

// Affine [lo, hi] <-> [0, 1] map used to normalize estimator signals.
struct NormSpec {
    double lo = 0.0;
    double hi = 1.0;

    double normalize(double x) const { return (x - lo) / (hi - lo); }
    double denormalize(double u) const { return lo + u * (hi - lo); }
};

struct DatasetRow {
    double temp_T;   // K
    double lambda_m; // dimensionless
    double v_max;    // stack voltage at the MPP, V
};

// MPP-voltage dataset plus the per-column normalization derived from it.
struct Dataset {
    std::vector<DatasetRow> rows;
    NormSpec t_norm;
    NormSpec l_norm;
    NormSpec v_norm;

    // Recomputes the per-column min/max specs from rows.
    void refresh_norm();

    // Rows normalized to [0,1]^3 as (t, l, v) triples.
    std::vector<std::array<double, 3>> normalized() const;

    // Header "T_K,lambda,V_max_V", 9 significant digits, LF line endings.
    std::string to_csv() const;
    static Dataset from_csv(const std::string& text);
};

std::vector<double> linspace(double lo, double hi, int count);

} // namespace fcmppt
