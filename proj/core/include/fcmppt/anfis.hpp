#pragma once

#include "fcmppt/dataset.hpp"
#include "fcmppt/estimator.hpp"

#include <array>
#include <vector>

namespace fcmppt {

struct GaussianMf {
    double center;
    double sigma; // > 0

    double membership(double x) const;
};

// Signal normalization carried by a trained estimator.
struct EstimatorNorm {
    NormSpec t;
    NormSpec l;
    NormSpec v;
};

// First-order Sugeno ANFIS, 2 inputs x 3 Gaussian membership functions =
// 9 rules with linear consequents. Rule r = 3*i + j pairs the i-th
// temperature MF with the j-th water-content MF.
struct AnfisModel {
    std::array<GaussianMf, 3> mf_t;
    std::array<GaussianMf, 3> mf_l;
    std::array<std::array<double, 3>, 9> consequents; // (p, q, r) per rule
    EstimatorNorm norm;

    // Grid initialization: centers at {0, 0.5, 1}, sigma 0.25, zero
    // consequents.
    static AnfisModel initial(const EstimatorNorm& norm);
};

// Normalized firing strengths (sum to 1 for any input).
std::array<double, 9> anfis_rule_strengths(const AnfisModel& model,
                                           double t_norm, double l_norm);

// Layer pipeline: product T-norm firing, normalization, weighted linear
// consequents.
double anfis_forward(const AnfisModel& model, double t_norm, double l_norm);

struct AnfisTrainOptions {
    int epochs = 70;
    double learning_rate = 0.01;
    double lr_decay = 0.9; // applied when the epoch error rises
};

struct AnfisTrainResult {
    AnfisModel model;
    std::vector<double> rmse_trace; // one entry per epoch, normalized units
    bool ridge_used = false;        // least-squares needed regularization
};

// Hybrid learning: per epoch a gradient-descent step on the Gaussian
// centers/sigmas (skipped on the first epoch) followed by a batch
// least-squares solve of the consequents. Throws config_error on an empty
// dataset or invalid options.
AnfisTrainResult anfis_train(const Dataset& train, const AnfisTrainOptions& options);

// d(MSE)/d(theta) over normalized rows (t, l, v) for the 12 antecedent
// parameters ordered [mf_t[0].center, mf_t[0].sigma, ..., mf_l[2].sigma].
std::array<double, 12> anfis_antecedent_gradient(
    const AnfisModel& model, const std::vector<std::array<double, 3>>& rows);

// Batch least-squares solve of the 27 consequents with the antecedents held
// fixed; optimal for the given rows, so it never raises the RMSE. Returns
// true when the normal equations needed ridge regularization.
bool anfis_fit_consequents(AnfisModel& model, const std::vector<std::array<double, 3>>& rows);

// Training RMSE over normalized rows.
double anfis_rmse(const AnfisModel& model, const std::vector<std::array<double, 3>>& rows);

class AnfisEstimator : public VmaxEstimator {
public:
    explicit AnfisEstimator(AnfisModel model) : model_(std::move(model)) {}

    double vmax(double temp_T, double lambda_m) const override {
        double u = anfis_forward(model_, model_.norm.t.normalize(temp_T),
                                 model_.norm.l.normalize(lambda_m));
        return model_.norm.v.denormalize(u);
    }

    const AnfisModel& model() const { return model_; }

private:
    AnfisModel model_;
};

} // namespace fcmppt
