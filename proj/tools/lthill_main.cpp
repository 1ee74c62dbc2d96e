// Command-line front end: batch analyses emitting plot-ready CSV/JSON.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lthill/errors.hpp"
#include "lthill/estimators.hpp"
#include "lthill/io.hpp"
#include "lthill/ratio_test.hpp"
#include "lthill/rng.hpp"
#include "lthill/study.hpp"
#include "lthill/threshold.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw lthill::DataError("cannot write '" + path + "'");
    return os;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << '\n';
    } else {
        auto os = open_out(out_path);
        os << text << '\n';
    }
}

std::vector<std::size_t> parse_k_list(const std::string& text, std::size_t n) {
    std::vector<std::size_t> ks;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        const long k = std::stol(item);
        if (k < 1 || static_cast<std::size_t>(k) > n - 1) {
            throw lthill::DataError("k out of range in --k-list: " + item);
        }
        ks.push_back(static_cast<std::size_t>(k));
    }
    if (ks.empty()) throw lthill::DataError("--k-list is empty");
    return ks;
}

struct CommonDataArgs {
    std::string path;
    std::string column;
    bool drop_nonpositive = false;

    lthill::Dataset load() const {
        lthill::IngestOptions opts;
        if (!column.empty()) opts.column = column;
        opts.drop_nonpositive = drop_nonpositive;
        lthill::Dataset ds = lthill::ingest(path, opts);
        if (ds.dropped_nonpositive > 0) {
            std::cerr << "warning: dropped " << ds.dropped_nonpositive
                      << " non-positive value(s) from " << path << '\n';
        }
        return ds;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("data", path, "input data file")->required();
        cmd->add_option("--column", column, "CSV column to read");
        cmd->add_flag("--drop-nonpositive", drop_nonpositive,
                      "drop non-positive rows instead of failing");
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trimmed-Hill tail analysis: estimators, threshold selection, "
                 "ratio diagnostics and simulation studies"};
    app.require_subcommand(1);

    // --- lth-plot ---------------------------------------------------------
    auto* plot = app.add_subcommand(
        "lth-plot", "trajectory table and per-k variance/slope diagnostics");
    CommonDataArgs plot_data;
    plot_data.attach(plot);
    std::string plot_k_list;
    std::string plot_out = "lth";
    plot->add_option("--k-list", plot_k_list, "comma list of k values");
    plot->add_option("--out", plot_out, "output prefix (default 'lth')");

    // --- select -----------------------------------------------------------
    auto* select = app.add_subcommand(
        "select", "empirical-variance threshold selection and conversion");
    CommonDataArgs select_data;
    select_data.attach(select);
    double select_p = -1.0;
    double select_lower_frac = 0.2;
    std::optional<std::size_t> select_k_min;
    std::string select_out;
    select->add_option("--p", select_p, "second-order parameter (default -1)");
    select->add_option("--lower-frac", select_lower_frac,
                       "scan starts at floor(lower_frac * n) (default 0.2)");
    select->add_option("--k-min", select_k_min,
                       "explicit scan start, overrides --lower-frac");
    select->add_option("--out", select_out, "write JSON here instead of stdout");

    // --- estimate ---------------------------------------------------------
    auto* estimate = app.add_subcommand("estimate", "tail index at a fixed k");
    CommonDataArgs estimate_data;
    estimate_data.attach(estimate);
    std::size_t estimate_k = 0;
    std::string estimator = "hill";
    std::string estimate_out;
    estimate->add_option("--k", estimate_k, "number of top order statistics")
        ->required();
    estimate->add_option("--estimator", estimator, "hill | averaged_trimmed")
        ->check(CLI::IsMember({"hill", "averaged_trimmed"}));
    estimate->add_option("--out", estimate_out, "write JSON here instead of stdout");

    // --- ratio-test -------------------------------------------------------
    auto* ratio = app.add_subcommand(
        "ratio-test", "calibrated ratio-statistic goodness-of-selection test");
    CommonDataArgs ratio_data;
    ratio_data.attach(ratio);
    std::size_t ratio_k = 0;
    std::size_t ratio_nmc = 10000;
    double ratio_alpha = 0.05;
    std::uint64_t ratio_seed = 0;
    std::string ratio_out = "ratio";
    ratio->add_option("--k", ratio_k, "threshold to evaluate")->required();
    ratio->add_option("--nmc", ratio_nmc, "Monte Carlo replicates (default 10000)");
    ratio->add_option("--alpha", ratio_alpha, "target global level (default 0.05)");
    ratio->add_option("--seed", ratio_seed, "RNG seed");
    ratio->add_option("--out", ratio_out, "output prefix (default 'ratio')");

    // --- simulate ---------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "draw a sample to a data file");
    std::string sim_spec;
    std::size_t sim_n = 0;
    std::uint64_t sim_seed = 0;
    std::string sim_out;
    simulate->add_option("--spec", sim_spec,
                         "distribution, e.g. burr:eta=1,tau=0.5,lam=2")
        ->required();
    simulate->add_option("--n", sim_n, "sample size")->required();
    simulate->add_option("--seed", sim_seed, "RNG seed");
    simulate->add_option("--out", sim_out, "output file (default stdout)");

    // --- study ------------------------------------------------------------
    auto* study = app.add_subcommand("study", "replicated estimator study");
    std::string study_config;
    std::string study_out = "study";
    study->add_option("config", study_config, "config file (JSON or key = value)")
        ->required();
    study->add_option("--out", study_out, "output prefix (default 'study')");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*plot) {
            const lthill::Dataset ds = plot_data.load();
            const std::size_t n = ds.sample.size();
            std::vector<std::size_t> ks;
            if (!plot_k_list.empty()) {
                ks = parse_k_list(plot_k_list, n);
            } else {
                const std::size_t step = std::max<std::size_t>(1, n / 20);
                for (std::size_t k = 1; k <= n - 1; k += step) ks.push_back(k);
            }
            std::vector<lthill::LthTrajectory> trajectories;
            trajectories.reserve(ks.size());
            for (std::size_t k : ks) {
                trajectories.push_back(lthill::lth_trajectory(ds.sample, k));
            }
            auto traj_os = open_out(plot_out + "_trajectories.csv");
            lthill::write_trajectories_csv(traj_os, trajectories);
            auto diag_os = open_out(plot_out + "_diagnostics.csv");
            lthill::write_diagnostics_csv(diag_os, trajectories);
        } else if (*select) {
            const lthill::Dataset ds = select_data.load();
            const lthill::ThresholdReport report = lthill::select_threshold(
                ds.sample, lthill::SecondOrderP(select_p), select_lower_frac,
                std::nullopt, lthill::Exec::Parallel, select_k_min);
            emit(lthill::threshold_report_json(report), select_out);
        } else if (*estimate) {
            const lthill::Dataset ds = estimate_data.load();
            if (estimate_k < 1 || estimate_k > ds.sample.size() - 1) {
                throw lthill::DataError("--k out of range for this dataset");
            }
            const double xi_hat =
                estimator == "hill"
                    ? lthill::hill(lthill::log_excesses(ds.sample, estimate_k))
                    : lthill::averaged_trimmed(ds.sample, estimate_k);
            emit(lthill::estimate_json(xi_hat, estimate_k, estimator), estimate_out);
        } else if (*ratio) {
            const lthill::Dataset ds = ratio_data.load();
            if (ratio_k < 4 || ratio_k > ds.sample.size() - 1) {
                throw lthill::DataError("--k must be in [4, n-1] for the ratio test");
            }
            const lthill::RatioTrajectory rt =
                lthill::ratio_stats(ds.sample, ratio_k);
            const lthill::RatioCalibration cal =
                lthill::calibrate(ratio_k, ratio_nmc, ratio_alpha, 0.005, ratio_seed);
            if (!cal.converged) {
                std::cerr << "warning: calibration hit the iteration cap; best "
                             "iterate used (alpha_global = "
                          << cal.alpha_global << ")\n";
            }
            const std::vector<double> standardized =
                lthill::standardized_trajectory(rt, cal);
            const bool rejected = lthill::rejects(standardized);
            emit(lthill::ratio_report_json(cal, standardized, rejected),
                 ratio_out + ".json");
            auto bands_os = open_out(ratio_out + "_bands.csv");
            lthill::write_ratio_bands_csv(bands_os, rt, cal, standardized);
        } else if (*simulate) {
            const lthill::DistributionSpec spec = lthill::parse_spec(sim_spec);
            if (sim_n < 2) throw lthill::DataError("--n must be at least 2");
            lthill::Rng rng(sim_seed);
            const lthill::SortedSample s = lthill::sample(spec, sim_n, rng);
            if (sim_out.empty()) {
                lthill::write_values(std::cout, s.values());
            } else {
                auto os = open_out(sim_out);
                lthill::write_values(os, s.values());
            }
        } else if (*study) {
            const lthill::StudyConfig cfg = lthill::parse_study_config(study_config);
            const lthill::StudyResult result = lthill::run_study(cfg);
            if (result.n_failed > 0) {
                std::cerr << "warning: " << result.n_failed
                          << " replicate(s) failed; first: " << result.first_failure
                          << '\n';
            }
            auto curves_os = open_out(study_out + "_curves.csv");
            lthill::write_study_curves_csv(curves_os, result);
            auto draws_os = open_out(study_out + "_draws.csv");
            lthill::write_study_draws_csv(draws_os, result);
            auto json_os = open_out(study_out + ".json");
            json_os << lthill::study_json(result) << '\n';
        }
    } catch (const lthill::NonConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const lthill::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}
