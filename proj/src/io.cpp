#include "lthill/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "lthill/errors.hpp"

namespace lthill {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& token, std::size_t line_no) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size() || token.empty()) {
        std::ostringstream msg;
        msg << "parse error at line " << line_no << ": '" << token << "'";
        throw DataError(msg.str());
    }
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(trim(cell));
    return out;
}

// 17 significant digits: shortest round-trippable double representation.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Dataset ingest(const std::string& path, const IngestOptions& options) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");

    std::vector<double> values;
    std::size_t dropped = 0;
    std::size_t line_no = 0;
    std::string line;

    std::optional<std::size_t> column_index;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty()) continue;

        double v;
        if (options.column) {
            const auto cells = split_csv(text);
            if (!column_index) {  // header row
                for (std::size_t i = 0; i < cells.size(); ++i) {
                    if (cells[i] == *options.column) column_index = i;
                }
                if (!column_index) {
                    throw DataError("column '" + *options.column + "' not found in '" +
                                    path + "'");
                }
                continue;
            }
            if (*column_index >= cells.size()) {
                std::ostringstream msg;
                msg << "parse error at line " << line_no << ": missing column";
                throw DataError(msg.str());
            }
            v = parse_number(cells[*column_index], line_no);
        } else {
            v = parse_number(text, line_no);
        }

        if (!(v > 0.0)) {
            if (options.drop_nonpositive) {
                ++dropped;
                continue;
            }
            std::ostringstream msg;
            msg << "non-positive value at line " << line_no
                << " (use --drop-nonpositive to skip such rows)";
            throw DataError(msg.str());
        }
        values.push_back(v);
    }

    Dataset ds;
    ds.source = path;
    ds.raw_count = values.size() + dropped;
    ds.retained_count = values.size();
    ds.dropped_nonpositive = dropped;
    if (ds.raw_count > 0 && values.empty()) {
        throw DataError("'" + path + "': every value is non-positive");
    }
    if (values.size() < 2) {
        throw DataError("'" + path + "': need at least two positive values");
    }
    ds.sample = SortedSample::from_data(std::move(values));
    return ds;
}

void write_values(std::ostream& os, const std::vector<double>& values) {
    for (double v : values) os << fmt(v) << '\n';
}

void write_trajectories_csv(std::ostream& os,
                            const std::vector<LthTrajectory>& trajectories) {
    os << "k,b,T_bk\n";
    for (const auto& traj : trajectories) {
        for (std::size_t b = 1; b <= traj.k; ++b) {
            os << traj.k << ',' << b << ',' << fmt(traj.t[b - 1]) << '\n';
        }
    }
}

void write_diagnostics_csv(std::ostream& os,
                           const std::vector<LthTrajectory>& trajectories) {
    os << "k,emp_var,slope\n";
    for (const auto& traj : trajectories) {
        os << traj.k << ',' << fmt(traj.emp_var) << ',' << fmt(traj.slope) << '\n';
    }
}

std::string threshold_report_json(const ThresholdReport& report) {
    nlohmann::json j;
    j["k_star"] = report.k_star;
    j["k0_star"] = report.k0_star;
    j["factor"] = report.factor;
    j["search_lo"] = report.search_lo;
    j["search_hi"] = report.search_hi;
    j["p_used"] = report.p_used;
    auto& curve = j["variance_curve"] = nlohmann::json::array();
    for (const auto& pt : report.variance_curve) {
        curve.push_back({pt.k, pt.emp_var});
    }
    return j.dump(2);
}

std::string estimate_json(double xi_hat, std::size_t k, const std::string& estimator) {
    nlohmann::json j;
    j["xi_hat"] = xi_hat;
    j["k"] = k;
    j["estimator"] = estimator;
    return j.dump(2);
}

std::string ratio_report_json(const RatioCalibration& cal,
                              const std::vector<double>& standardized,
                              bool rejected) {
    nlohmann::json j;
    j["k"] = cal.k;
    j["n_mc"] = cal.n_mc;
    j["alpha_local"] = cal.alpha_local;
    j["alpha_global"] = cal.alpha_global;
    j["alpha_global_holdout"] = cal.alpha_global_holdout;
    j["seed"] = cal.seed;
    j["converged"] = cal.converged;
    auto& bands = j["bands"] = nlohmann::json::array();
    for (const auto& [q1, q2] : cal.bands) bands.push_back({q1, q2});
    j["standardized"] = standardized;
    j["decision"] = rejected ? "reject" : "accept";
    return j.dump(2);
}

void write_ratio_bands_csv(std::ostream& os, const RatioTrajectory& rt,
                           const RatioCalibration& cal,
                           const std::vector<double>& standardized) {
    os << "b,R,q1,q2,std\n";
    for (std::size_t c = 0; c < cal.bands.size(); ++c) {
        os << (c + 2) << ',' << fmt(rt.r[c + 1]) << ',' << fmt(cal.bands[c].first)
           << ',' << fmt(cal.bands[c].second) << ',' << fmt(standardized[c]) << '\n';
    }
}

void write_study_curves_csv(std::ostream& os, const StudyResult& result) {
    os << "estimator,k,bias,var,mse\n";
    for (const auto& curve : result.curves) {
        for (std::size_t i = 0; i < result.k_grid.size(); ++i) {
            const CellStats& c = curve.cells[i];
            os << curve.estimator << ',' << result.k_grid[i] << ',' << fmt(c.bias)
               << ',' << fmt(c.variance) << ',' << fmt(c.mse) << '\n';
        }
    }
}

void write_study_draws_csv(std::ostream& os, const StudyResult& result) {
    os << "estimator,selector,replicate,estimate,k_selected\n";
    for (const auto& d : result.draws) {
        for (std::size_t r = 0; r < d.estimates.size(); ++r) {
            os << d.estimator << ',' << d.selector << ',' << r << ','
               << fmt(d.estimates[r]) << ',' << d.k_selected[r] << '\n';
        }
    }
}

std::string study_json(const StudyResult& result) {
    nlohmann::json j;
    j["true_xi"] = result.true_xi;
    j["k_grid"] = result.k_grid;
    j["n_failed"] = result.n_failed;
    if (result.n_failed > 0) j["first_failure"] = result.first_failure;
    auto& curves = j["curves"] = nlohmann::json::array();
    for (const auto& curve : result.curves) {
        nlohmann::json jc;
        jc["estimator"] = curve.estimator;
        auto& cells = jc["cells"] = nlohmann::json::array();
        for (const auto& c : curve.cells) {
            cells.push_back({{"bias", c.bias}, {"var", c.variance}, {"mse", c.mse}});
        }
        curves.push_back(std::move(jc));
    }
    auto& draws = j["draws"] = nlohmann::json::array();
    for (const auto& d : result.draws) {
        draws.push_back({{"estimator", d.estimator},
                         {"selector", d.selector},
                         {"estimates", d.estimates},
                         {"k_selected", d.k_selected}});
    }
    return j.dump(2);
}

namespace {

std::vector<std::size_t> parse_k_grid(const std::string& text) {
    std::vector<std::size_t> grid;
    const std::string spec = trim(text);
    if (spec.find(':') != std::string::npos) {
        // lo:hi:step (step optional, default 1)
        std::istringstream is(spec);
        std::string part;
        std::vector<long> nums;
        while (std::getline(is, part, ':')) nums.push_back(std::stol(trim(part)));
        if (nums.size() < 2 || nums.size() > 3 || nums[0] < 1 || nums[1] < nums[0]) {
            throw DataError("bad k_grid range '" + spec + "'");
        }
        const long step = nums.size() == 3 ? nums[2] : 1;
        if (step < 1) throw DataError("bad k_grid step in '" + spec + "'");
        for (long k = nums[0]; k <= nums[1]; k += step) {
            grid.push_back(static_cast<std::size_t>(k));
        }
    } else {
        std::istringstream is(spec);
        std::string part;
        while (std::getline(is, part, ',')) {
            part = trim(part);
            if (part.empty()) continue;
            grid.push_back(static_cast<std::size_t>(std::stoul(part)));
        }
    }
    if (grid.empty()) throw DataError("empty k_grid '" + text + "'");
    return grid;
}

void apply_list(StudyConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "estimators") {
        cfg.use_hill = value.find("hill") != std::string::npos;
        cfg.use_averaged = value.find("averaged") != std::string::npos;
        if (!cfg.use_hill && !cfg.use_averaged) {
            throw DataError("estimators must include hill and/or averaged_trimmed");
        }
    } else if (key == "selectors") {
        cfg.selector_canonical_p = value.find("canonical_p") != std::string::npos;
        cfg.selector_true_p = value.find("true_p") != std::string::npos;
    } else {
        throw DataError("unknown study config key '" + key + "'");
    }
}

StudyConfig from_json(const nlohmann::json& j) {
    StudyConfig cfg;
    cfg.spec = parse_spec(j.at("spec").get<std::string>());
    cfg.n = j.at("n").get<std::size_t>();
    cfg.n_sim = j.at("n_sim").get<std::size_t>();
    if (j.contains("k_grid")) {
        if (j["k_grid"].is_string()) {
            cfg.k_grid = parse_k_grid(j["k_grid"].get<std::string>());
        } else {
            cfg.k_grid = j["k_grid"].get<std::vector<std::size_t>>();
        }
    }
    if (j.contains("estimators")) {
        std::string all;
        for (const auto& e : j["estimators"]) all += e.get<std::string>() + ",";
        apply_list(cfg, "estimators", all);
    }
    if (j.contains("selectors")) {
        std::string all;
        for (const auto& e : j["selectors"]) all += e.get<std::string>() + ",";
        apply_list(cfg, "selectors", all);
    }
    if (j.contains("lower_frac")) cfg.lower_frac = j["lower_frac"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    return cfg;
}

}  // namespace

StudyConfig parse_study_config_text(const std::string& text) {
    const std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        try {
            return from_json(nlohmann::json::parse(body));
        } catch (const nlohmann::json::exception& e) {
            throw DataError(std::string("bad study config JSON: ") + e.what());
        }
    }

    StudyConfig cfg;
    bool has_spec = false, has_n = false, has_nsim = false;
    std::istringstream is(body);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "study config line " << line_no << ": expected key = value";
            throw DataError(msg.str());
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key == "spec") {
            cfg.spec = parse_spec(value);
            has_spec = true;
        } else if (key == "n") {
            cfg.n = std::stoul(value);
            has_n = true;
        } else if (key == "n_sim") {
            cfg.n_sim = std::stoul(value);
            has_nsim = true;
        } else if (key == "k_grid") {
            cfg.k_grid = parse_k_grid(value);
        } else if (key == "lower_frac") {
            cfg.lower_frac = std::stod(value);
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
        } else {
            apply_list(cfg, key, value);
        }
    }
    if (!has_spec || !has_n || !has_nsim) {
        throw DataError("study config must set spec, n and n_sim");
    }
    return cfg;
}

StudyConfig parse_study_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_study_config_text(buffer.str());
}

}  // namespace lthill
