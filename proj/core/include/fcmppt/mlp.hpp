#pragma once

#include "fcmppt/anfis.hpp" // EstimatorNorm
#include "fcmppt/estimator.hpp"

#include <span>
#include <vector>

namespace fcmppt {

// 2 -> H -> 1 multilayer perceptron, tanh hidden layer, linear output.
// Weight layout: [W1 (H x 2, row-major), b1 (H), W2 (H), b2] = 4H + 1.
struct MlpArch {
    int hidden = 8;

    int weight_count() const { return 4 * hidden + 1; }
};

double mlp_forward(const MlpArch& arch, std::span<const double> weights,
                   double t_norm, double l_norm);

// Training MSE of the network at this weight vector over normalized
// (t, l, v) rows: (1/n) sum (prediction - target)^2.
double mlp_cost(const MlpArch& arch, std::span<const double> weights,
                const std::vector<std::array<double, 3>>& rows);

struct MlpNetwork {
    MlpArch arch;
    std::vector<double> weights;
    EstimatorNorm norm;
};

inline double mlp_forward(const MlpNetwork& net, double t_norm, double l_norm) {
    return mlp_forward(net.arch, net.weights, t_norm, l_norm);
}

class MlpEstimator : public VmaxEstimator {
public:
    explicit MlpEstimator(MlpNetwork net) : net_(std::move(net)) {}

    double vmax(double temp_T, double lambda_m) const override {
        double u = mlp_forward(net_, net_.norm.t.normalize(temp_T),
                               net_.norm.l.normalize(lambda_m));
        return net_.norm.v.denormalize(u);
    }

    const MlpNetwork& network() const { return net_; }

private:
    MlpNetwork net_;
};

} // namespace fcmppt
