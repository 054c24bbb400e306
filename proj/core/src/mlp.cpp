#include "fcmppt/mlp.hpp"

#include "fcmppt/errors.hpp"

#include <cmath>

namespace fcmppt {

double mlp_forward(const MlpArch& arch, std::span<const double> weights, double t_norm,
                   double l_norm) {
    const int h = arch.hidden;
    if (static_cast<int>(weights.size()) != arch.weight_count()) {
        throw config_error("MLP weight vector length does not match the architecture");
    }
    // Layout: W1 (h x 2 row-major) | b1 (h) | W2 (h) | b2.
    const double* w1 = weights.data();
    const double* b1 = w1 + 2 * h;
    const double* w2 = b1 + h;
    const double b2 = w2[h];

    double y = b2;
    for (int k = 0; k < h; ++k) {
        double z = w1[2 * k] * t_norm + w1[2 * k + 1] * l_norm + b1[k];
        y += w2[k] * std::tanh(z);
    }
    return y;
}

double mlp_cost(const MlpArch& arch, std::span<const double> weights,
                const std::vector<std::array<double, 3>>& rows) {
    if (rows.empty()) throw config_error("mlp_cost: empty dataset");
    double sum = 0.0;
    for (const auto& row : rows) {
        double d = mlp_forward(arch, weights, row[0], row[1]) - row[2];
        sum += d * d;
    }
    return sum / static_cast<double>(rows.size());
}

} // namespace fcmppt
