#include "fcmppt/anfis.hpp"

#include "fcmppt/errors.hpp"

#include <cmath>
#include <vector>

namespace fcmppt {
namespace {

// Underflow guard for the firing-strength denominator: normalization divides
// by max(sum, kSumFloor) so the strengths still sum to exactly 1 whenever
// the sum is representable.
constexpr double kSumFloor = 1e-12;

constexpr int kRules = 9;
constexpr int kCoeffs = 3 * kRules; // (p, q, r) per rule

constexpr double kSigmaFloor = 1e-3;

// Cholesky solve of a symmetric positive-definite system; returns false when
// a pivot is not positive.
bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = a[i * n + j];
            for (int k = 0; k < j; ++k) sum -= a[i * n + k] * a[j * n + k];
            if (i == j) {
                if (!(sum > 0.0)) return false;
                a[i * n + i] = std::sqrt(sum);
            } else {
                a[i * n + j] = sum / a[j * n + j];
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        double sum = b[i];
        for (int k = 0; k < i; ++k) sum -= a[i * n + k] * b[k];
        b[i] = sum / a[i * n + i];
    }
    for (int i = n; i-- > 0;) {
        double sum = b[i];
        for (int k = i + 1; k < n; ++k) sum -= a[k * n + i] * b[k];
        b[i] = sum / a[i * n + i];
    }
    return true;
}

} // namespace

double GaussianMf::membership(double x) const {
    double d = (x - center) / sigma;
    return std::exp(-0.5 * d * d);
}

AnfisModel AnfisModel::initial(const EstimatorNorm& norm) {
    AnfisModel m;
    for (int i = 0; i < 3; ++i) {
        m.mf_t[i] = GaussianMf{0.5 * i, 0.25};
        m.mf_l[i] = GaussianMf{0.5 * i, 0.25};
    }
    for (auto& c : m.consequents) c = {0.0, 0.0, 0.0};
    m.norm = norm;
    return m;
}

std::array<double, 9> anfis_rule_strengths(const AnfisModel& model, double t_norm,
                                           double l_norm) {
    std::array<double, 9> w;
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        double mt = model.mf_t[i].membership(t_norm);
        for (int j = 0; j < 3; ++j) {
            double v = mt * model.mf_l[j].membership(l_norm);
            w[3 * i + j] = v;
            sum += v;
        }
    }
    double denom = std::max(sum, kSumFloor);
    for (double& v : w) v /= denom;
    return w;
}

double anfis_forward(const AnfisModel& model, double t_norm, double l_norm) {
    std::array<double, 9> w = anfis_rule_strengths(model, t_norm, l_norm);
    double y = 0.0;
    for (int r = 0; r < kRules; ++r) {
        const auto& c = model.consequents[r];
        y += w[r] * (c[0] * t_norm + c[1] * l_norm + c[2]);
    }
    return y;
}

std::array<double, 12> anfis_antecedent_gradient(
    const AnfisModel& model, const std::vector<std::array<double, 3>>& rows) {
    std::array<double, 12> grad{};
    if (rows.empty()) return grad;

    for (const auto& row : rows) {
        double t = row[0], l = row[1], target = row[2];

        std::array<double, 3> mu_t, mu_l;
        for (int i = 0; i < 3; ++i) {
            mu_t[i] = model.mf_t[i].membership(t);
            mu_l[i] = model.mf_l[i].membership(l);
        }
        std::array<double, 9> w;
        std::array<double, 9> f;
        double sum = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                int r = 3 * i + j;
                w[r] = mu_t[i] * mu_l[j];
                sum += w[r];
                const auto& c = model.consequents[r];
                f[r] = c[0] * t + c[1] * l + c[2];
            }
        }
        double denom = std::max(sum, kSumFloor);
        double y = 0.0;
        for (int r = 0; r < kRules; ++r) y += w[r] / denom * f[r];

        // dy/dw_r = (f_r - y) / sum; dw_r/dtheta via the Gaussian partials.
        double err = 2.0 * (y - target);
        for (int i = 0; i < 3; ++i) {
            const GaussianMf& g = model.mf_t[i];
            double dc = (t - g.center) / (g.sigma * g.sigma);
            double ds = (t - g.center) * (t - g.center) / (g.sigma * g.sigma * g.sigma);
            for (int j = 0; j < 3; ++j) {
                int r = 3 * i + j;
                double dy_dw = (f[r] - y) / denom;
                grad[2 * i] += err * dy_dw * w[r] * dc;
                grad[2 * i + 1] += err * dy_dw * w[r] * ds;
            }
        }
        for (int j = 0; j < 3; ++j) {
            const GaussianMf& g = model.mf_l[j];
            double dc = (l - g.center) / (g.sigma * g.sigma);
            double ds = (l - g.center) * (l - g.center) / (g.sigma * g.sigma * g.sigma);
            for (int i = 0; i < 3; ++i) {
                int r = 3 * i + j;
                double dy_dw = (f[r] - y) / denom;
                grad[6 + 2 * j] += err * dy_dw * w[r] * dc;
                grad[6 + 2 * j + 1] += err * dy_dw * w[r] * ds;
            }
        }
    }
    for (double& g : grad) g /= static_cast<double>(rows.size());
    return grad;
}

bool anfis_fit_consequents(AnfisModel& model, const std::vector<std::array<double, 3>>& rows) {
    std::vector<double> ata(kCoeffs * kCoeffs, 0.0);
    std::vector<double> atb(kCoeffs, 0.0);
    std::array<double, kCoeffs> phi;

    for (const auto& row : rows) {
        double t = row[0], l = row[1], v = row[2];
        std::array<double, 9> w = anfis_rule_strengths(model, t, l);
        for (int r = 0; r < kRules; ++r) {
            phi[3 * r] = w[r] * t;
            phi[3 * r + 1] = w[r] * l;
            phi[3 * r + 2] = w[r];
        }
        for (int i = 0; i < kCoeffs; ++i) {
            for (int j = 0; j <= i; ++j) {
                ata[i * kCoeffs + j] += phi[i] * phi[j];
            }
            atb[i] += phi[i] * v;
        }
    }
    for (int i = 0; i < kCoeffs; ++i) {
        for (int j = i + 1; j < kCoeffs; ++j) {
            ata[i * kCoeffs + j] = ata[j * kCoeffs + i];
        }
    }

    bool ridge_used = false;
    std::vector<double> a = ata;
    std::vector<double> b = atb;
    if (!cholesky_solve(a, b, kCoeffs)) {
        ridge_used = true;
        a = ata;
        b = atb;
        for (int i = 0; i < kCoeffs; ++i) a[i * kCoeffs + i] += 1e-8;
        if (!cholesky_solve(a, b, kCoeffs)) {
            throw config_error("ANFIS least-squares system is singular even with ridge");
        }
    }
    for (int r = 0; r < kRules; ++r) {
        model.consequents[r] = {b[3 * r], b[3 * r + 1], b[3 * r + 2]};
    }
    return ridge_used;
}

double anfis_rmse(const AnfisModel& model, const std::vector<std::array<double, 3>>& rows) {
    double sum = 0.0;
    for (const auto& row : rows) {
        double d = anfis_forward(model, row[0], row[1]) - row[2];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(rows.size()));
}

AnfisTrainResult anfis_train(const Dataset& train, const AnfisTrainOptions& options) {
    if (train.rows.empty()) throw config_error("anfis_train: empty dataset");
    if (options.epochs < 1) throw config_error("anfis_train: epochs must be >= 1");

    std::vector<std::array<double, 3>> rows = train.normalized();

    AnfisTrainResult result;
    result.model =
        AnfisModel::initial(EstimatorNorm{train.t_norm, train.l_norm, train.v_norm});
    result.rmse_trace.reserve(options.epochs);

    double lr = options.learning_rate;
    for (int epoch = 0; epoch < options.epochs; ++epoch) {
        if (epoch > 0) {
            std::array<double, 12> grad = anfis_antecedent_gradient(result.model, rows);
            for (int i = 0; i < 3; ++i) {
                result.model.mf_t[i].center -= lr * grad[2 * i];
                result.model.mf_t[i].sigma =
                    std::max(result.model.mf_t[i].sigma - lr * grad[2 * i + 1], kSigmaFloor);
                result.model.mf_l[i].center -= lr * grad[6 + 2 * i];
                result.model.mf_l[i].sigma =
                    std::max(result.model.mf_l[i].sigma - lr * grad[6 + 2 * i + 1],
                             kSigmaFloor);
            }
        }
        result.ridge_used |= anfis_fit_consequents(result.model, rows);
        double rmse = anfis_rmse(result.model, rows);
        if (epoch > 0 && rmse > result.rmse_trace.back()) {
            lr *= options.lr_decay;
        }
        result.rmse_trace.push_back(rmse);
    }
    return result;
}

} // namespace fcmppt
