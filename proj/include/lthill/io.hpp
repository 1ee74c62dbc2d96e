#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>

#include "lthill/estimators.hpp"
#include "lthill/ratio_test.hpp"
#include "lthill/sorted_sample.hpp"
#include "lthill/study.hpp"
#include "lthill/threshold.hpp"

namespace lthill {

struct IngestOptions {
    std::optional<std::string> column;  // CSV column name; plain lines otherwise
    bool drop_nonpositive = false;      // drop offending rows with a warning
};

struct Dataset {
    std::string source;
    std::size_t raw_count = 0;
    std::size_t retained_count = 0;
    std::size_t dropped_nonpositive = 0;
    SortedSample sample = SortedSample::from_sorted({2.0, 1.0});
};

// Reads one value per line, or a named CSV column. Throws DataError with the
// line number on parse failure; non-positive values are an error unless
// drop_nonpositive is set (dropped rows are counted and reported by the
// caller). Requires at least two retained values.
Dataset ingest(const std::string& path, const IngestOptions& options = {});

// Writers. All numeric output uses 17 significant digits so reruns are
// byte-identical and parse back losslessly.
void write_values(std::ostream& os, const std::vector<double>& values);
void write_trajectories_csv(std::ostream& os,
                            const std::vector<LthTrajectory>& trajectories);
void write_diagnostics_csv(std::ostream& os,
                           const std::vector<LthTrajectory>& trajectories);
std::string threshold_report_json(const ThresholdReport& report);
std::string estimate_json(double xi_hat, std::size_t k, const std::string& estimator);
std::string ratio_report_json(const RatioCalibration& cal,
                              const std::vector<double>& standardized,
                              bool rejected);
void write_ratio_bands_csv(std::ostream& os, const RatioTrajectory& rt,
                           const RatioCalibration& cal,
                           const std::vector<double>& standardized);
void write_study_curves_csv(std::ostream& os, const StudyResult& result);
void write_study_draws_csv(std::ostream& os, const StudyResult& result);
std::string study_json(const StudyResult& result);

// Study configuration file: JSON ("{...}") or key = value lines. Keys: spec,
// n, n_sim, k_grid ("lo:hi:step" or comma list), estimators, selectors,
// lower_frac, seed.
StudyConfig parse_study_config(const std::string& path);
StudyConfig parse_study_config_text(const std::string& text);

}  // namespace lthill
