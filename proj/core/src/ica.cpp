#include "fcmppt/ica.hpp"

#include "fcmppt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fcmppt {

IcaConfig IcaConfig::from_config(const ConfigDoc& doc) {
    IcaConfig c;
    c.n_countries = static_cast<int>(doc.get_int("ica", "n_countries", c.n_countries));
    c.n_imperialists = static_cast<int>(doc.get_int("ica", "n_imperialists", c.n_imperialists));
    c.n_decades = static_cast<int>(doc.get_int("ica", "n_decades", c.n_decades));
    c.beta = doc.get_double("ica", "beta", c.beta);
    c.revolution_rate = doc.get_double("ica", "revolution_rate", c.revolution_rate);
    c.xi_weight = doc.get_double("ica", "xi_weight", c.xi_weight);
    c.init_lo = doc.get_double("ica", "init_lo", c.init_lo);
    c.init_hi = doc.get_double("ica", "init_hi", c.init_hi);
    c.rng_seed = static_cast<std::uint64_t>(doc.get_int("ica", "rng_seed",
                                                        static_cast<long>(c.rng_seed)));
    c.arch.hidden = static_cast<int>(doc.get_int("ica", "hidden", c.arch.hidden));
    c.validate();
    return c;
}

void IcaConfig::validate() const {
    if (n_imperialists < 1 || n_imperialists >= n_countries) {
        throw config_error("ICA needs 1 <= n_imperialists < n_countries");
    }
    if (n_decades < 1) throw config_error("n_decades must be >= 1");
    if (!(beta > 1.0)) throw config_error("assimilation beta must be > 1");
    if (!(revolution_rate >= 0.0 && revolution_rate <= 1.0)) {
        throw config_error("revolution_rate must be in [0, 1]");
    }
    if (!(init_lo < init_hi)) throw config_error("init range needs init_lo < init_hi");
    if (arch.hidden < 1) throw config_error("hidden width must be >= 1");
}

double empire_total_cost(const Empire& empire, double xi_weight) {
    if (empire.colonies.empty()) return empire.imperialist.cost;
    double mean = 0.0;
    for (const auto& c : empire.colonies) mean += c.cost;
    mean /= static_cast<double>(empire.colonies.size());
    return empire.imperialist.cost + xi_weight * mean;
}

std::vector<Empire> initialize_empires(const IcaConfig& config, const CostFn& cost, Rng& rng) {
    const int dim = config.arch.weight_count();

    std::vector<Country> countries(config.n_countries);
    for (auto& country : countries) {
        country.position.resize(dim);
        for (double& w : country.position) w = rng.uniform(config.init_lo, config.init_hi);
        country.cost = cost(country.position);
    }
    std::stable_sort(countries.begin(), countries.end(),
                     [](const Country& a, const Country& b) { return a.cost < b.cost; });

    const int n_imp = config.n_imperialists;
    const int n_col = config.n_countries - n_imp;

    // Normalized power from cost relative to the weakest imperialist.
    double worst = countries[n_imp - 1].cost;
    std::vector<double> power(n_imp);
    double total_power = 0.0;
    for (int i = 0; i < n_imp; ++i) {
        power[i] = worst - countries[i].cost;
        total_power += power[i];
    }
    std::vector<int> quota(n_imp, 0);
    if (total_power <= 0.0) {
        for (int i = 0; i < n_imp; ++i) power[i] = 1.0 / n_imp;
    } else {
        for (int i = 0; i < n_imp; ++i) power[i] /= total_power;
    }

    // Largest-remainder allocation of the colonies; ties favor the stronger
    // (lower-cost) imperialist so counts never differ by more than the
    // fractional seats.
    std::vector<double> remainder(n_imp);
    int assigned = 0;
    for (int i = 0; i < n_imp; ++i) {
        double exact = power[i] * n_col;
        quota[i] = static_cast<int>(std::floor(exact));
        remainder[i] = exact - quota[i];
        assigned += quota[i];
    }
    std::vector<int> order(n_imp);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return remainder[a] > remainder[b];
    });
    for (int k = 0; assigned < n_col; ++k) {
        ++quota[order[k % n_imp]];
        ++assigned;
    }

    std::vector<Empire> empires(n_imp);
    int next_colony = n_imp;
    for (int i = 0; i < n_imp; ++i) {
        empires[i].imperialist = countries[i];
        empires[i].colonies.assign(countries.begin() + next_colony,
                                   countries.begin() + next_colony + quota[i]);
        next_colony += quota[i];
    }
    return empires;
}

void assimilate(Empire& empire, double beta, const CostFn& cost, Rng& rng) {
    for (auto& colony : empire.colonies) {
        for (std::size_t k = 0; k < colony.position.size(); ++k) {
            double step = rng.uniform(0.0, beta);
            colony.position[k] += step * (empire.imperialist.position[k] - colony.position[k]);
        }
        colony.cost = cost(colony.position);
    }
}

void revolve(Empire& empire, double rate, const IcaConfig& config, const CostFn& cost,
             Rng& rng) {
    const int dim = config.arch.weight_count();
    for (auto& colony : empire.colonies) {
        if (rng.uniform01() >= rate) continue;
        // Redraw a random nonempty subset of components.
        int count = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(dim)));
        for (int n = 0; n < count; ++n) {
            std::size_t k = rng.uniform_index(colony.position.size());
            colony.position[k] = rng.uniform(config.init_lo, config.init_hi);
        }
        colony.cost = cost(colony.position);
    }
}

void exchange(Empire& empire) {
    if (empire.colonies.empty()) return;
    auto best = std::min_element(empire.colonies.begin(), empire.colonies.end(),
                                 [](const Country& a, const Country& b) {
                                     return a.cost < b.cost;
                                 });
    if (best->cost < empire.imperialist.cost) {
        std::swap(*best, empire.imperialist);
    }
}

void compete(std::vector<Empire>& empires, double xi_weight, Rng& rng) {
    if (empires.size() < 2) return;

    std::vector<double> totals(empires.size());
    std::size_t weakest = 0;
    for (std::size_t i = 0; i < empires.size(); ++i) {
        totals[i] = empire_total_cost(empires[i], xi_weight);
        if (totals[i] > totals[weakest]) weakest = i;
    }

    // Roulette over the other empires, weighted by normalized power.
    double max_total = totals[weakest];
    double power_sum = 0.0;
    for (std::size_t i = 0; i < empires.size(); ++i) {
        if (i != weakest) power_sum += max_total - totals[i];
    }
    std::size_t winner = weakest == 0 ? 1 : 0;
    if (power_sum > 0.0) {
        double pick = rng.uniform01() * power_sum;
        double acc = 0.0;
        for (std::size_t i = 0; i < empires.size(); ++i) {
            if (i == weakest) continue;
            acc += max_total - totals[i];
            winner = i;
            if (pick < acc) break;
        }
    } else {
        // All rivals tie; pick one uniformly.
        std::size_t pick = rng.uniform_index(empires.size() - 1);
        winner = pick >= weakest ? pick + 1 : pick;
    }

    Empire& losing = empires[weakest];
    if (losing.colonies.empty()) {
        // Weakest and colony-free: the empire dissolves into the winner.
        empires[winner].colonies.push_back(losing.imperialist);
        empires.erase(empires.begin() + static_cast<std::ptrdiff_t>(weakest));
        return;
    }
    auto worst_colony = std::max_element(losing.colonies.begin(), losing.colonies.end(),
                                         [](const Country& a, const Country& b) {
                                             return a.cost < b.cost;
                                         });
    empires[winner].colonies.push_back(*worst_colony);
    losing.colonies.erase(worst_colony);
}

IcaTrainResult ica_train(const IcaConfig& config, const Dataset& train,
                         const DecadeObserver& observer) {
    config.validate();
    if (train.rows.empty()) throw config_error("ica_train: empty dataset");

    std::vector<std::array<double, 3>> rows = train.normalized();
    CostFn cost = [&](std::span<const double> position) {
        return mlp_cost(config.arch, position, rows);
    };

    Rng rng(config.rng_seed);
    std::vector<Empire> empires = initialize_empires(config, cost, rng);

    // Elitism: the all-time best country survives outside the population.
    Country best = empires.front().imperialist;
    auto track_best = [&]() {
        for (const auto& e : empires) {
            if (e.imperialist.cost < best.cost) best = e.imperialist;
            for (const auto& c : e.colonies) {
                if (c.cost < best.cost) best = c;
            }
        }
    };
    track_best();

    IcaTrainResult result;
    result.best_cost_trace.reserve(config.n_decades);
    for (int decade = 0; decade < config.n_decades; ++decade) {
        for (auto& empire : empires) {
            assimilate(empire, config.beta, cost, rng);
            revolve(empire, config.revolution_rate, config, cost, rng);
            exchange(empire);
        }
        compete(empires, config.xi_weight, rng);
        track_best();
        result.best_cost_trace.push_back(best.cost);
        if (observer) observer(decade, empires, best.cost);
    }

    result.network.arch = config.arch;
    result.network.weights = best.position;
    result.network.norm = EstimatorNorm{train.t_norm, train.l_norm, train.v_norm};
    return result;
}

} // namespace fcmppt
