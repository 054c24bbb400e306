// fcmppt command-line front end: MPP sweeps, dataset generation, estimator
// training, closed-loop simulation and method comparison.

#include "fcmppt/config.hpp"
#include "fcmppt/errors.hpp"
#include "fcmppt/ica.hpp"
#include "fcmppt/io.hpp"
#include "fcmppt/metrics.hpp"
#include "fcmppt/model_io.hpp"
#include "fcmppt/oracle.hpp"
#include "fcmppt/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>

namespace {

using namespace fcmppt;

// Exit codes: 0 success, 1 usage/config, 2 domain/envelope, 3 training
// quality below threshold with --enforce.
constexpr int kExitConfig = 1;
constexpr int kExitDomain = 2;
constexpr int kExitQuality = 3;

// Normalized-unit error ceiling (RMSE for ANFIS, MSE for the ICA-trained
// network) and the held-out correlation floor enforced by --enforce.
constexpr double kErrorThreshold = 0.01;
constexpr double kCorrThreshold = 0.98;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    bool enforce = false;
    bool plot_data = false;
};

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

struct TrainTestData {
    Dataset train;
    Dataset test;
};

std::vector<double> midpoint_grid(double lo, double hi, int source_count, int count) {
    // Off-grid sample: shift inward by half the source grid spacing.
    double half = 0.5 * (hi - lo) / (source_count - 1);
    return linspace(lo + half, hi - half, count);
}

TrainTestData generate_datasets(const ConfigDoc& doc, const StackParams& stack) {
    double t_lo = doc.get_double("dataset", "t_min", 293.0);
    double t_hi = doc.get_double("dataset", "t_max", 363.0);
    int t_count = static_cast<int>(doc.get_int("dataset", "t_count", 25));
    double l_lo = doc.get_double("dataset", "l_min", 9.0);
    double l_hi = doc.get_double("dataset", "l_max", 14.0);
    int l_count = static_cast<int>(doc.get_int("dataset", "l_count", 10));
    int test_t = static_cast<int>(doc.get_int("dataset", "test_t_count", 10));
    int test_l = static_cast<int>(doc.get_int("dataset", "test_l_count", 5));

    TrainTestData data;
    data.train = generate_dataset(stack, linspace(t_lo, t_hi, t_count),
                                  linspace(l_lo, l_hi, l_count));
    data.test = generate_dataset(stack, midpoint_grid(t_lo, t_hi, t_count, test_t),
                                 midpoint_grid(l_lo, l_hi, l_count, test_l));
    return data;
}

Dataset load_dataset(const std::string& path) {
    return Dataset::from_csv(read_file(path));
}

struct EstimatorMetrics {
    double train_mse = 0.0;
    double train_corr = 0.0;
    double test_mse = 0.0;
    double test_corr = 0.0;
};

// Normalized-unit MSE/correlation over train and test sets, test rows
// normalized with the model's own spec.
EstimatorMetrics estimator_metrics(const VmaxEstimator& est, const EstimatorNorm& norm,
                                   const Dataset& train, const Dataset& test) {
    auto eval = [&](const Dataset& ds, double& mse, double& corr) {
        std::vector<double> pred, truth;
        pred.reserve(ds.rows.size());
        truth.reserve(ds.rows.size());
        for (const auto& row : ds.rows) {
            pred.push_back(norm.v.normalize(est.vmax(row.temp_T, row.lambda_m)));
            truth.push_back(norm.v.normalize(row.v_max));
        }
        mse = mean_squared_error(pred, truth);
        corr = pearson_correlation(pred, truth);
    };
    EstimatorMetrics m;
    eval(train, m.train_mse, m.train_corr);
    eval(test, m.test_mse, m.test_corr);
    return m;
}

std::string metrics_csv(const EstimatorMetrics& m) {
    std::string out = "dataset,MSE,correlation\n";
    out += "training," + format_sig(m.train_mse, 9) + ',' + format_sig(m.train_corr, 9) + '\n';
    out += "testing," + format_sig(m.test_mse, 9) + ',' + format_sig(m.test_corr, 9) + '\n';
    return out;
}

void print_metrics(const std::string& name, const EstimatorMetrics& m) {
    std::printf("%s  training: MSE %.6g  correlation %.6g\n", name.c_str(), m.train_mse,
                m.train_corr);
    std::printf("%s  testing:  MSE %.6g  correlation %.6g\n", name.c_str(), m.test_mse,
                m.test_corr);
}

int check_quality(const CommonOpts& opts, double train_err, const EstimatorMetrics& m) {
    if (!opts.enforce) return 0;
    if (train_err > kErrorThreshold || m.test_corr < kCorrThreshold) {
        std::fprintf(stderr,
                     "training quality below threshold (error %.6g > %.3g or test "
                     "correlation %.6g < %.3g)\n",
                     train_err, kErrorThreshold, m.test_corr, kCorrThreshold);
        return kExitQuality;
    }
    return 0;
}

int cmd_sweep(const CommonOpts& opts) {
    ConfigDoc doc = ConfigDoc::parse_file(opts.config_path);
    StackParams stack = StackParams::from_config(doc);

    auto temps = doc.has("sweep", "temps") ? doc.get_doubles("sweep", "temps")
                                           : std::vector<double>{313.15, 328.15, 343.15};
    auto lambdas = doc.has("sweep", "lambdas") ? doc.get_doubles("sweep", "lambdas")
                                               : std::vector<double>{9.0, 12.0, 14.0};
    double base_T = doc.get_double("sweep", "base_T", 328.15);
    double base_lambda = doc.get_double("sweep", "base_lambda", 12.0);
    int points = static_cast<int>(doc.get_int("sweep", "points", 500));

    auto write_curve = [&](double T, double lam, const std::string& name) {
        validate_conditions(stack, {T, lam, 0.0});
        double i_hi = std::min(stack.i_limit, lambda_current_bound(stack, lam)) * (1.0 - 1e-9);
        std::string csv = "I_A,V_fc_V,P_fc_W\n";
        for (double I : linspace(kCurrentEpsilon, i_hi, points)) {
            double v = stack_voltage(stack, {T, lam, I});
            csv += format_sig(I, 9);
            csv += ',';
            csv += format_sig(v, 9);
            csv += ',';
            csv += format_sig(v * I, 9);
            csv += '\n';
        }
        write_file_atomic(join(opts.out_dir, name), csv);
        MppResult mpp = find_mpp(stack, T, lam);
        std::printf("%s: MPP %.1f W at %.2f A, %.2f V\n", name.c_str(), mpp.p_max, mpp.i_max,
                    mpp.v_max);
    };

    for (double T : temps) {
        write_curve(T, base_lambda,
                    "curve_T" + format_sig(T, 9) + "_lambda" + format_sig(base_lambda, 9) +
                        ".csv");
    }
    for (double lam : lambdas) {
        write_curve(base_T, lam,
                    "curve_T" + format_sig(base_T, 9) + "_lambda" + format_sig(lam, 9) +
                        ".csv");
    }
    return 0;
}

int cmd_gen_dataset(const CommonOpts& opts) {
    ConfigDoc doc = ConfigDoc::parse_file(opts.config_path);
    StackParams stack = StackParams::from_config(doc);
    TrainTestData data = generate_datasets(doc, stack);
    write_file_atomic(join(opts.out_dir, "train.csv"), data.train.to_csv());
    write_file_atomic(join(opts.out_dir, "test.csv"), data.test.to_csv());
    std::printf("wrote %zu training rows and %zu test rows to %s\n", data.train.rows.size(),
                data.test.rows.size(), opts.out_dir.c_str());
    return 0;
}

int cmd_train_anfis(const CommonOpts& opts) {
    ConfigDoc doc = ConfigDoc::parse_file(opts.config_path);
    Dataset train = load_dataset(
        doc.get_string("anfis", "train_csv", join(opts.out_dir, "train.csv")));
    Dataset test =
        load_dataset(doc.get_string("anfis", "test_csv", join(opts.out_dir, "test.csv")));

    AnfisTrainOptions options;
    options.epochs = static_cast<int>(doc.get_int("anfis", "epochs", options.epochs));
    options.learning_rate =
        doc.get_double("anfis", "learning_rate", options.learning_rate);
    options.lr_decay = doc.get_double("anfis", "lr_decay", options.lr_decay);

    AnfisTrainResult result = anfis_train(train, options);
    save_anfis(result.model, join(opts.out_dir, "anfis_model.txt"));

    std::string trace = "epoch,rmse\n";
    for (std::size_t e = 0; e < result.rmse_trace.size(); ++e) {
        trace += std::to_string(e + 1) + ',' + format_sig(result.rmse_trace[e], 9) + '\n';
    }
    write_file_atomic(join(opts.out_dir, "anfis_error_trace.csv"), trace);

    AnfisEstimator estimator(result.model);
    EstimatorMetrics m = estimator_metrics(estimator, result.model.norm, train, test);
    write_file_atomic(join(opts.out_dir, "anfis_metrics.csv"), metrics_csv(m));
    std::printf("ANFIS trained for %d epochs, final training RMSE %.6g\n", options.epochs,
                result.rmse_trace.back());
    print_metrics("ANFIS", m);
    return check_quality(opts, result.rmse_trace.back(), m);
}

int cmd_train_ica(const CommonOpts& opts) {
    ConfigDoc doc = ConfigDoc::parse_file(opts.config_path);
    Dataset train =
        load_dataset(doc.get_string("ica", "train_csv", join(opts.out_dir, "train.csv")));
    Dataset test =
        load_dataset(doc.get_string("ica", "test_csv", join(opts.out_dir, "test.csv")));

    IcaConfig config = IcaConfig::from_config(doc);
    if (opts.seed) config.rng_seed = *opts.seed;

    std::string trace = "decade,best_cost\n";
    IcaTrainResult result =
        ica_train(config, train, [&](int decade, const std::vector<Empire>&, double best) {
            trace += std::to_string(decade + 1) + ',' + format_sig(best, 9) + '\n';
        });
    save_mlp(result.network, join(opts.out_dir, "ica_model.txt"));
    write_file_atomic(join(opts.out_dir, "ica_cost_trace.csv"), trace);

    MlpEstimator estimator(result.network);
    EstimatorMetrics m = estimator_metrics(estimator, result.network.norm, train, test);
    write_file_atomic(join(opts.out_dir, "ica_metrics.csv"), metrics_csv(m));
    std::printf("ICA-NN trained for %d decades (seed %llu), final training MSE %.6g\n",
                config.n_decades, static_cast<unsigned long long>(config.rng_seed),
                result.best_cost_trace.back());
    print_metrics("ICA-NN", m);
    return check_quality(opts, result.best_cost_trace.back(), m);
}

std::unique_ptr<VmaxEstimator> load_estimator(const ConfigDoc& doc, TrackerMethod method,
                                              const CommonOpts& opts) {
    // Model artifacts live in the output directory unless the config names
    // an explicit path (taken relative to the working directory).
    if (method == TrackerMethod::Conventional) return nullptr;
    if (method == TrackerMethod::Anfis) {
        std::string path =
            doc.get_string("models", "anfis", join(opts.out_dir, "anfis_model.txt"));
        return std::make_unique<AnfisEstimator>(load_anfis(path));
    }
    std::string path = doc.get_string("models", "ica", join(opts.out_dir, "ica_model.txt"));
    return std::make_unique<MlpEstimator>(load_mlp(path));
}

std::string segment_metrics_csv(const std::vector<SegmentMetrics>& segments) {
    std::string out =
        "segment,t_start_s,t_end_s,Ts_s,settled,accuracy_pct,final_power_W,oracle_power_W\n";
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& m = segments[i];
        out += std::to_string(i + 1) + ',' + format_sig(m.t_start, 9) + ',' +
               format_sig(m.t_end, 9) + ',' + format_sig(m.settling.seconds, 9) + ',' +
               (m.settling.settled ? "1" : "0") + ',' + format_sig(m.accuracy_pct, 9) + ',' +
               format_sig(m.final_power_W, 9) + ',' + format_sig(m.oracle_power_W, 9) + '\n';
    }
    return out;
}

int cmd_simulate(const CommonOpts& opts, const std::string& method_name) {
    ConfigDoc doc = ConfigDoc::parse_file(opts.config_path);
    SimSetup setup = SimSetup::from_config(doc);
    Scenario scenario = Scenario::from_config(doc);
    if (!method_name.empty()) scenario.method = tracker_method_from_string(method_name);
    if (opts.seed) scenario.seed = *opts.seed;

    auto estimator = load_estimator(doc, scenario.method, opts);
    ScenarioTrace trace = run_scenario(scenario, setup, estimator.get());

    std::string method = to_string(scenario.method);
    write_file_atomic(join(opts.out_dir, "trace_" + method + ".csv"), trace.to_csv());
    if (trace.aborted) {
        std::fprintf(stderr, "simulation aborted: %s\n", trace.abort_reason.c_str());
        return kExitDomain;
    }
    auto segments = evaluate_trace(trace, schedule_step_times(scenario));
    write_file_atomic(join(opts.out_dir, "metrics_" + method + ".csv"),
                      segment_metrics_csv(segments));
    for (std::size_t i = 0; i < segments.size(); ++i) {
        std::printf("%s segment %zu: T_s %.3f s, accuracy %.2f%%, power %.1f W (oracle "
                    "%.1f W)\n",
                    method.c_str(), i + 1, segments[i].settling.seconds,
                    segments[i].accuracy_pct, segments[i].final_power_W,
                    segments[i].oracle_power_W);
    }
    return 0;
}

int cmd_compare(const CommonOpts& opts) {
    ConfigDoc doc = ConfigDoc::parse_file(opts.config_path);
    SimSetup setup = SimSetup::from_config(doc);
    Scenario scenario = Scenario::from_config(doc);
    if (opts.seed) scenario.seed = *opts.seed;

    const TrackerMethod methods[] = {TrackerMethod::Anfis, TrackerMethod::IcaNn,
                                     TrackerMethod::Conventional};
    std::vector<ScenarioTrace> traces;
    std::vector<std::vector<SegmentMetrics>> metrics;
    auto step_times = schedule_step_times(scenario);

    for (TrackerMethod method : methods) {
        Scenario run = scenario;
        run.method = method;
        auto estimator = load_estimator(doc, method, opts);
        ScenarioTrace trace = run_scenario(run, setup, estimator.get());
        write_file_atomic(join(opts.out_dir, std::string("trace_") + to_string(method) +
                                                 ".csv"),
                          trace.to_csv());
        if (trace.aborted) {
            std::fprintf(stderr, "%s simulation aborted: %s\n", to_string(method),
                         trace.abort_reason.c_str());
            return kExitDomain;
        }
        metrics.push_back(evaluate_trace(trace, step_times));
        traces.push_back(std::move(trace));
    }

    // Merged table: one row per method plus the oracle row, segment-major
    // columns.
    std::size_t n_seg = metrics.front().size();
    std::string csv = "method";
    for (std::size_t s = 0; s < n_seg; ++s) {
        std::string tag = std::to_string(s + 1);
        csv += ",seg" + tag + "_Ts_s,seg" + tag + "_accuracy_pct,seg" + tag + "_power_W";
    }
    csv += '\n';
    for (std::size_t m = 0; m < traces.size(); ++m) {
        csv += to_string(methods[m]);
        for (const auto& seg : metrics[m]) {
            csv += ',' + format_sig(seg.settling.seconds, 9) + ',' +
                   format_sig(seg.accuracy_pct, 9) + ',' + format_sig(seg.final_power_W, 9);
        }
        csv += '\n';
    }
    csv += "actual";
    for (const auto& seg : metrics.front()) {
        csv += ",-,100," + format_sig(seg.oracle_power_W, 9);
    }
    csv += '\n';
    write_file_atomic(join(opts.out_dir, "compare_metrics.csv"), csv);

    std::printf("%-14s", "method");
    for (std::size_t s = 0; s < n_seg; ++s) {
        std::printf(" | seg%zu T_s  acc%%   P(W)", s + 1);
    }
    std::printf("\n");
    for (std::size_t m = 0; m < traces.size(); ++m) {
        std::printf("%-14s", to_string(methods[m]));
        for (const auto& seg : metrics[m]) {
            std::printf(" | %8.3f %6.2f %7.1f", seg.settling.seconds, seg.accuracy_pct,
                        seg.final_power_W);
        }
        std::printf("\n");
    }
    std::printf("%-14s", "actual");
    for (const auto& seg : metrics.front()) {
        std::printf(" | %8s %6.2f %7.1f", "-", 100.0, seg.oracle_power_W);
    }
    std::printf("\n");

    if (opts.plot_data) {
        std::string plot = "t_s,P_anfis_W,P_ica_nn_W,P_conventional_W,P_oracle_W\n";
        for (std::size_t i = 0; i < traces.front().size(); ++i) {
            plot += format_sig(traces[0].t[i], 9);
            for (const auto& tr : traces) plot += ',' + format_sig(tr.p_fc[i], 9);
            plot += ',' + format_sig(traces[0].p_oracle[i], 9);
            plot += '\n';
        }
        write_file_atomic(join(opts.out_dir, "compare_power.csv"), plot);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PEM fuel-cell MPPT simulation lab"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string method_name;

    auto add_common = [&](CLI::App* cmd, bool with_method) {
        cmd->add_option("--config", opts.config_path, "configuration file")->required();
        cmd->add_option("--out", opts.out_dir, "output directory");
        cmd->add_option("--seed", opts.seed, "override the configured RNG seed");
        cmd->add_flag("--enforce", opts.enforce, "fail (exit 3) below quality thresholds");
        cmd->add_flag("--plot-data", opts.plot_data, "emit per-figure power CSVs");
        if (with_method) {
            cmd->add_option("--method", method_name, "anfis | ica-nn | conventional");
        }
    };

    auto* sweep = app.add_subcommand("sweep", "write P-I / P-V curve CSVs");
    add_common(sweep, false);
    auto* gen = app.add_subcommand("gen-dataset", "generate MPP training/test datasets");
    add_common(gen, false);
    auto* ta = app.add_subcommand("train-anfis", "train the ANFIS reference estimator");
    add_common(ta, false);
    auto* ti = app.add_subcommand("train-ica", "train the ICA-optimized MLP estimator");
    add_common(ti, false);
    auto* sim = app.add_subcommand("simulate", "run one tracker on a scenario");
    add_common(sim, true);
    auto* cmp = app.add_subcommand("compare", "run all three trackers on a scenario");
    add_common(cmp, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig; // usage errors exit 1, --help exits 0
    }

    try {
        if (sweep->parsed()) return cmd_sweep(opts);
        if (gen->parsed()) return cmd_gen_dataset(opts);
        if (ta->parsed()) return cmd_train_anfis(opts);
        if (ti->parsed()) return cmd_train_ica(opts);
        if (sim->parsed()) return cmd_simulate(opts, method_name);
        if (cmp->parsed()) return cmd_compare(opts);
    } catch (const config_error& err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return kExitConfig;
    } catch (const std::domain_error& err) {
        std::fprintf(stderr, "domain error: %s\n", err.what());
        return kExitDomain;
    } catch (const envelope_error& err) {
        std::fprintf(stderr, "envelope error: %s\n", err.what());
        return kExitDomain;
    } catch (const oracle_error& err) {
        std::fprintf(stderr, "oracle error: %s\n", err.what());
        return kExitDomain;
    } catch (const integration_error& err) {
        std::fprintf(stderr, "integration error: %s\n", err.what());
        return kExitDomain;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return kExitConfig;
    }
    return 0;
}
