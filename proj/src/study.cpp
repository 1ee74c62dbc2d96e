#include "lthill/study.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lthill/estimators.hpp"
#include "lthill/special_functions.hpp"

namespace lthill {

namespace {

struct SelectorSlot {
    std::string name;
    SecondOrderP p;  // conversion parameter (canonical or family p)
    bool plugin = false;
};

// Everything one replicate records. Slots are fixed up front so the merge
// step is a plain index-by-index copy.
struct ReplicateRecord {
    bool ok = false;
    std::string error;
    std::vector<double> hill_at_k;       // per k_grid entry
    std::vector<double> averaged_at_k;   // per k_grid entry
    std::vector<double> estimates;       // per (selector, estimator) slot
    std::vector<std::size_t> k_selected; // per selector
};

std::vector<SelectorSlot> selector_slots(const StudyConfig& cfg) {
    std::vector<SelectorSlot> slots;
    if (cfg.selector_canonical_p) {
        slots.push_back({"canonical_p", SecondOrderP(-1.0), false});
    }
    if (cfg.selector_true_p) {
        slots.push_back({"true_p", SecondOrderP(hall_params(cfg.spec).p), false});
    }
    if (cfg.plugin_selector) {
        slots.push_back({"plugin", SecondOrderP(-1.0), true});
    }
    return slots;
}

void validate(const StudyConfig& cfg) {
    if (cfg.n_sim < 1) throw std::invalid_argument("run_study: n_sim >= 1");
    if (cfg.k_grid.empty() && !cfg.selector_canonical_p && !cfg.selector_true_p &&
        !cfg.plugin_selector) {
        throw std::invalid_argument("run_study: nothing to do");
    }
    for (std::size_t k : cfg.k_grid) {
        if (k < 1 || k >= cfg.n) {
            throw std::invalid_argument("run_study: k_grid entries must be in [1, n-1]");
        }
    }
}

ReplicateRecord run_replicate(const StudyConfig& cfg,
                              const std::vector<SelectorSlot>& slots,
                              std::size_t rep) {
    ReplicateRecord rec;
    try {
        Rng rng(cfg.seed, rep);
        const SortedSample s = sample(cfg.spec, cfg.n, rng);

        rec.hill_at_k.resize(cfg.k_grid.size());
        rec.averaged_at_k.resize(cfg.k_grid.size());
        for (std::size_t i = 0; i < cfg.k_grid.size(); ++i) {
            const LthTrajectory traj = lth_trajectory(s, cfg.k_grid[i]);
            rec.hill_at_k[i] = traj.t.back();
            rec.averaged_at_k[i] =
                std::accumulate(traj.t.begin(), traj.t.end(), 0.0) /
                static_cast<double>(traj.k);
        }

        // the variance-curve minimizer is shared by every non-plugin variant;
        // only the conversion factor differs
        std::size_t shared_k_star = 0;
        for (const SelectorSlot& slot : slots) {
            std::size_t k_sel;
            if (slot.plugin) {
                k_sel = cfg.plugin_selector(s);
            } else {
                if (shared_k_star == 0) {
                    shared_k_star =
                        select_k_star(s, cfg.lower_frac, std::nullopt, Exec::Serial)
                            .k_star;
                }
                k_sel = convert_to_k0(shared_k_star, slot.p);
            }
            if (k_sel < 1) k_sel = 1;
            if (k_sel > cfg.n - 1) k_sel = cfg.n - 1;
            rec.k_selected.push_back(k_sel);
            const LthTrajectory traj = lth_trajectory(s, k_sel);
            if (cfg.use_hill) rec.estimates.push_back(traj.t.back());
            if (cfg.use_averaged) {
                rec.estimates.push_back(
                    std::accumulate(traj.t.begin(), traj.t.end(), 0.0) /
                    static_cast<double>(traj.k));
            }
        }
        rec.ok = true;
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "replicate " << rep << ": " << e.what();
        rec.error = msg.str();
    }
    return rec;
}

StudyResult merge(const StudyConfig& cfg, const std::vector<SelectorSlot>& slots,
                  const std::vector<ReplicateRecord>& records) {
    StudyResult out;
    out.true_xi = true_xi(cfg.spec);
    out.k_grid = cfg.k_grid;

    std::size_t n_ok = 0;
    for (const auto& rec : records) {
        if (rec.ok) {
            ++n_ok;
        } else {
            ++out.n_failed;
            if (out.first_failure.empty()) out.first_failure = rec.error;
        }
    }
    if (n_ok == 0) {
        throw std::runtime_error("run_study: every replicate failed; first: " +
                                 out.first_failure);
    }

    // One-pass (Welford) moments per cell; mse assembled from the same mean
    // and M2 so that mse = bias^2 + variance holds identically.
    auto curve_for = [&](const std::string& name, auto getter) {
        EstimatorCurve curve;
        curve.estimator = name;
        curve.cells.resize(cfg.k_grid.size());
        for (std::size_t i = 0; i < cfg.k_grid.size(); ++i) {
            double mean = 0.0, m2 = 0.0;
            std::size_t count = 0;
            for (const auto& rec : records) {
                if (!rec.ok) continue;
                ++count;
                const double x = getter(rec, i);
                const double d = x - mean;
                mean += d / static_cast<double>(count);
                m2 += d * (x - mean);
            }
            CellStats& cell = curve.cells[i];
            cell.bias = mean - out.true_xi;
            cell.variance = m2 / static_cast<double>(count);
            cell.mse = cell.bias * cell.bias + cell.variance;
        }
        return curve;
    };

    if (cfg.use_hill && !cfg.k_grid.empty()) {
        out.curves.push_back(curve_for(
            "hill", [](const ReplicateRecord& r, std::size_t i) { return r.hill_at_k[i]; }));
    }
    if (cfg.use_averaged && !cfg.k_grid.empty()) {
        out.curves.push_back(curve_for("averaged_trimmed",
                                       [](const ReplicateRecord& r, std::size_t i) {
                                           return r.averaged_at_k[i];
                                       }));
    }

    const std::size_t est_per_sel =
        (cfg.use_hill ? 1u : 0u) + (cfg.use_averaged ? 1u : 0u);
    for (std::size_t si = 0; si < slots.size(); ++si) {
        std::size_t idx = si * est_per_sel;
        auto add_draws = [&](const std::string& est_name, std::size_t offset) {
            SelectorDraws d;
            d.estimator = est_name;
            d.selector = slots[si].name;
            for (const auto& rec : records) {
                if (!rec.ok) continue;
                d.estimates.push_back(rec.estimates[idx + offset]);
                d.k_selected.push_back(rec.k_selected[si]);
            }
            out.draws.push_back(std::move(d));
        };
        std::size_t offset = 0;
        if (cfg.use_hill) add_draws("hill", offset++);
        if (cfg.use_averaged) add_draws("averaged_trimmed", offset++);
    }
    return out;
}

}  // namespace

StudyResult run_study_serial(const StudyConfig& cfg) {
    validate(cfg);
    const auto slots = selector_slots(cfg);
    std::vector<ReplicateRecord> records(cfg.n_sim);
    for (std::size_t r = 0; r < cfg.n_sim; ++r) {
        records[r] = run_replicate(cfg, slots, r);
    }
    return merge(cfg, slots, records);
}

StudyResult run_study_parallel(const StudyConfig& cfg) {
    validate(cfg);
    const auto slots = selector_slots(cfg);
    std::vector<ReplicateRecord> records(cfg.n_sim);
    const long reps = static_cast<long>(cfg.n_sim);
#pragma omp parallel for schedule(dynamic)
    for (long r = 0; r < reps; ++r) {
        records[static_cast<std::size_t>(r)] =
            run_replicate(cfg, slots, static_cast<std::size_t>(r));
    }
    return merge(cfg, slots, records);
}

StudyResult run_study(const StudyConfig& cfg, Exec exec) {
    return exec == Exec::Serial ? run_study_serial(cfg) : run_study_parallel(cfg);
}

std::vector<double> simulate_tbk_representation(std::size_t b, std::size_t k,
                                                std::size_t n, const HallParams& h,
                                                std::size_t n_mc, Rng& rng) {
    if (b < 1 || b > k || k >= n) {
        throw std::out_of_range("simulate_tbk_representation: need 1 <= b <= k < n");
    }
    if (!h.D.has_value()) {
        throw std::invalid_argument("simulate_tbk_representation: D unavailable");
    }
    const SecondOrderP p(h.p);
    const double q0 =
        h.p * (*h.D) * std::pow(static_cast<double>(n) / static_cast<double>(k), h.p);
    const double bias = q0 * c_bkp(b, k, p);
    double denom = 1.0;
    for (std::size_t j = k; j > b; --j) denom += 1.0 / static_cast<double>(j);

    std::vector<double> out(n_mc);
    std::vector<double> e(k);
    for (std::size_t m = 0; m < n_mc; ++m) {
        for (std::size_t j = 0; j < k; ++j) e[j] = rng.exponential();
        double head = 0.0;
        for (std::size_t j = 0; j < b; ++j) head += e[j];
        head /= static_cast<double>(b);
        double tail = 0.0;
        for (std::size_t j = b + 1; j <= k; ++j) {
            tail += e[j - 1] / static_cast<double>(j);
        }
        out[m] = h.xi * (head + tail) / denom + bias;
    }
    return out;
}

std::vector<double> simulate_tbar_representation(std::size_t k, std::size_t n,
                                                 const HallParams& h,
                                                 std::size_t n_mc, Rng& rng) {
    if (k < 1 || k >= n) {
        throw std::out_of_range("simulate_tbar_representation: need 1 <= k < n");
    }
    if (!h.D.has_value()) {
        throw std::invalid_argument("simulate_tbar_representation: D unavailable");
    }
    const SecondOrderP p(h.p);
    const double q0 =
        h.p * (*h.D) * std::pow(static_cast<double>(n) / static_cast<double>(k), h.p);
    const double bias = q0 * cbar_kp(p);
    std::vector<double> weights(k);
    for (std::size_t j = 1; j <= k; ++j) weights[j - 1] = s_function(j, k);

    std::vector<double> out(n_mc);
    for (std::size_t m = 0; m < n_mc; ++m) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) acc += rng.exponential() * weights[j];
        out[m] = h.xi * acc / static_cast<double>(k) + bias;
    }
    return out;
}

}  // namespace lthill
