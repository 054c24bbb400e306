#pragma once

#include "fcmppt/config.hpp"
#include "fcmppt/mlp.hpp"
#include "fcmppt/rng.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace fcmppt {

// One candidate weight vector and its training cost.
struct Country {
    std::vector<double> position;
    double cost = 0.0;
};

struct Empire {
    Country imperialist;
    std::vector<Country> colonies;
};

struct IcaConfig {
    int n_countries = 75;
    int n_imperialists = 8;
    int n_decades = 65;
    double beta = 2.0;           // assimilation coefficient, > 1
    double revolution_rate = 0.1;
    double xi_weight = 0.1;      // colony-mean weight in the empire cost
    double init_lo = -1.0;       // weight initialization bounds
    double init_hi = 1.0;
    std::uint64_t rng_seed = 42;
    MlpArch arch{8};

    // Section [ica].
    static IcaConfig from_config(const ConfigDoc& doc);

    void validate() const;
};

using CostFn = std::function<double(std::span<const double>)>;

// total = imperialist cost + xi * mean(colony costs); colony-free empires
// count the imperialist alone.
double empire_total_cost(const Empire& empire, double xi_weight);

// Random countries in the init range; the best n_imperialists seed the
// empires and the rest are distributed by normalized imperialist power
// (largest-remainder allocation, ties to the stronger empire).
std::vector<Empire> initialize_empires(const IcaConfig& config, const CostFn& cost, Rng& rng);

// Every colony moves componentwise by U(0, beta) of its distance to the
// imperialist; costs refreshed.
void assimilate(Empire& empire, double beta, const CostFn& cost, Rng& rng);

// Each colony, with the given probability, has a random nonempty subset of
// components redrawn inside the init range.
void revolve(Empire& empire, double rate, const IcaConfig& config, const CostFn& cost,
             Rng& rng);

// Swaps the imperialist with its best colony when that colony is cheaper.
void exchange(Empire& empire);

// The weakest empire loses its weakest colony to a roulette-selected rival;
// an empire that is both weakest and colony-free is absorbed entirely.
void compete(std::vector<Empire>& empires, double xi_weight, Rng& rng);

struct IcaTrainResult {
    MlpNetwork network;                 // all-time best weights
    std::vector<double> best_cost_trace; // per decade, non-increasing
};

using DecadeObserver =
    std::function<void(int decade, const std::vector<Empire>& empires, double best_cost)>;

// Runs n_decades of assimilate -> revolve -> exchange -> compete over the
// normalized dataset. The all-time best country is tracked outside the
// population and always returned.
IcaTrainResult ica_train(const IcaConfig& config, const Dataset& train,
                         const DecadeObserver& observer = {});

} // namespace fcmppt
