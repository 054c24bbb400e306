#pragma once

#include "fcmppt/oracle.hpp"

#include <map>
#include <utility>

namespace fcmppt {

// Reference-voltage source for the proposed trackers: maps an operating
// condition to the stack voltage at maximum power.
class VmaxEstimator {
public:
    virtual ~VmaxEstimator() = default;
    virtual double vmax(double temp_T, double lambda_m) const = 0;
};

// Exact estimator backed by the brute-force MPP search; used as the
// reference in tests and for the oracle trace column.
class OracleVmaxEstimator : public VmaxEstimator {
public:
    explicit OracleVmaxEstimator(StackParams params) : params_(params) {}

    double vmax(double temp_T, double lambda_m) const override {
        auto key = std::make_pair(temp_T, lambda_m);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        double v = find_mpp(params_, temp_T, lambda_m).v_max;
        cache_.emplace(key, v);
        return v;
    }

private:
    StackParams params_;
    mutable std::map<std::pair<double, double>, double> cache_;
};

} // namespace fcmppt
