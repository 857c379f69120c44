/**
 * Monte Carlo experiment driver.
 *
 * One replication, in a fixed draw order (the determinism contract):
 *
 *   1. n training samples: label ~ Bernoulli(1/2), then the class's curve
 *      coefficients (class 1: two Gaussians A, B; class 0: two uniforms
 *      C, D), sample by sample.
 *   2. masking: Delta_i ~ Bernoulli(pi(x_i, y_i)), in order.
 *   3. split: Fisher-Yates shuffle of the index vector, first m samples
 *      form the estimation split, the remaining l the validation split.
 *   4. follow-ups on the validation split: delta_i ~ Bernoulli(p_n).
 *   5. model fitting (no randomness).
 *   6. test set: test_size/2 class-1 curves, then test_size/2 class-0.
 *
 * Replication r uses the stream seeded with child_seed(master, r), so
 * replications are independent and can run in any order or in parallel;
 * aggregation folds records in index order regardless of completion order.
 *
 * CSV output: header `model,n,variant,mean_error,se,mean_followup,reps,
 * failed_reps,seed`, floats with 6 significant digits, rows in the order
 * proposed, cc, imp1, imp2, all. Comment lines (leading '#') carry the
 * timestamp and config echo; the body below them is byte-deterministic.
 */

#ifndef FMNAR_EXPERIMENT_HPP
#define FMNAR_EXPERIMENT_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "classifier.hpp"
#include "curve.hpp"
#include "errors.hpp"
#include "kernel.hpp"
#include "mnar.hpp"
#include "rng.hpp"

namespace fmnar {

constexpr std::size_t kVariantCount = 5;

/** Fixed reporting order: proposed, cc, imp1, imp2, all. */
constexpr std::array<Variant, kVariantCount> kVariantOrder = {
    Variant::Proposed, Variant::CompleteCase, Variant::ImpRegression,
    Variant::ImpMean, Variant::AllData};

struct ExperimentConfig {
    std::string model = "i"; // selects the preset masking model: i | ii
    std::size_t n = 100;
    std::size_t replications = 400;
    std::size_t test_size = 1000; // stratified, half per class
    double split_fraction = 0.3;  // validation share: l = round(f * n)
    std::uint64_t seed = 7;

    CurveModelParams curve_params;
    std::optional<SelectionModel> selection_override;
    bool missingness_disabled = false;

    TiltingFunction::Family cover_family = TiltingFunction::Family::ExpLinear;
    double cover_lo = -3.0;
    double cover_hi = 3.0;
    std::size_t cover_size = 41;

    std::size_t h_count = 20;
    double h_qlo = 0.05;
    double h_qhi = 0.95;

    KernelFn kernel = KernelFn::epanechnikov();
    BaselineRisk baseline_risk = BaselineRisk::Ipw;
    std::optional<double> pn_override;

    SelectionModel selection_model() const {
        if (selection_override) return *selection_override;
        if (model == "i") return SelectionModel::model_i();
        if (model == "ii") return SelectionModel::model_ii();
        throw std::invalid_argument("ExperimentConfig: model must be i or ii");
    }

    std::size_t validation_size() const {
        return static_cast<std::size_t>(
            std::llround(split_fraction * static_cast<double>(n)));
    }
    std::size_t estimation_size() const { return n - validation_size(); }

    double p_n() const {
        return pn_override ? *pn_override : followup_rate(n);
    }

    void validate() const {
        if (replications < 1)
            throw std::invalid_argument("ExperimentConfig: replications >= 1");
        if (test_size < 2 || test_size % 2 != 0)
            throw std::invalid_argument(
                "ExperimentConfig: test_size must be even (stratified halves)");
        if (estimation_size() < 2 || validation_size() < 2)
            throw std::invalid_argument(
                "ExperimentConfig: split must leave at least 2 samples per part");
        if (cover_size < 1)
            throw std::invalid_argument("ExperimentConfig: cover_size >= 1");
        if (h_count < 1)
            throw std::invalid_argument("ExperimentConfig: h_count >= 1");
        const double p = p_n();
        if (!(p > 0.0) || !(p < 1.0))
            throw std::domain_error("ExperimentConfig: p_n outside (0, 1)");
        selection_model(); // validates the model tag
    }
};

struct ReplicationRecord {
    bool failed = false;
    std::string failure_reason;
    std::array<double, kVariantCount> error{}; // order: kVariantOrder
    std::size_t followup_count = 0;            // revealed nonrespondents in Dl
    std::size_t missing_count = 0;             // Delta = 0 count among all n
    double selected_h = 0.0;                   // proposed variant
    double selected_gamma = 0.0;               // proposed variant
};

struct CellResult {
    ExperimentConfig config;
    std::vector<ReplicationRecord> records;
    std::size_t failed = 0;
    std::array<double, kVariantCount> mean_error{};
    std::array<double, kVariantCount> se{}; // NaN when < 2 successful reps
    double mean_followup = 0.0;
};

// ---------------------------------------------------------------------------
// one replication
// ---------------------------------------------------------------------------

inline ReplicationRecord run_replication(const ExperimentConfig& config,
                                         std::size_t rep_index) {
    config.validate();
    Rng rng(child_seed(config.seed, rep_index));
    const SelectionModel selection = config.selection_model();
    ReplicationRecord rec;

    // 1. training data
    const std::size_t n = config.n;
    std::vector<Sample> data;
    data.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int y = rng.bernoulli(0.5) ? 1 : 0;
        Curve x = y == 1 ? generate_class1(rng, config.curve_params)
                         : generate_class0(rng, config.curve_params);
        data.emplace_back(std::move(x), y);
    }

    // 2. masking
    if (!config.missingness_disabled) apply_mnar(data, selection, rng);
    for (const auto& s : data)
        if (!s.observed()) ++rec.missing_count;

    // 3. split
    const std::size_t l = config.validation_size();
    const std::size_t m = n - l;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
        std::swap(idx[i], idx[j]);
    }
    auto train = std::make_shared<std::vector<Sample>>();
    train->reserve(m);
    std::vector<Sample> validation;
    validation.reserve(l);
    for (std::size_t i = 0; i < m; ++i) train->push_back(data[idx[i]]);
    for (std::size_t i = m; i < n; ++i) validation.push_back(data[idx[i]]);

    // 4. follow-ups
    const double p_n = config.p_n();
    draw_followups(validation, p_n, rng);
    for (const auto& s : validation)
        if (s.followed_up()) ++rec.followup_count;

    // 5. fit all five variants
    std::optional<std::array<FittedClassifier, kVariantCount>> fitted;
    try {
        const BandwidthGrid grid =
            default_bandwidth_grid(*train, config.h_count, config.h_qlo,
                                   config.h_qhi);
        const CoverGrid cover = build_cover_by_count(
            config.cover_family, config.cover_lo, config.cover_hi,
            config.cover_size);
        FittedClassifier proposed = fit_proposed(train, validation, cover, grid,
                                                 p_n, config.kernel);
        rec.selected_h = proposed.h();
        rec.selected_gamma = proposed.phi().gamma();
        fitted.emplace(std::array<FittedClassifier, kVariantCount>{
            std::move(proposed),
            fit_baseline(Variant::CompleteCase, train, validation, grid, p_n,
                         config.kernel, config.baseline_risk),
            fit_baseline(Variant::ImpRegression, train, validation, grid, p_n,
                         config.kernel, config.baseline_risk),
            fit_baseline(Variant::ImpMean, train, validation, grid, p_n,
                         config.kernel, config.baseline_risk),
            fit_baseline(Variant::AllData, train, validation, grid, p_n,
                         config.kernel, config.baseline_risk)});
    } catch (const DegenerateFitError& e) {
        rec.failed = true;
        rec.failure_reason = e.what();
        return rec;
    }

    // 6. fresh stratified test set, then per-variant error counts
    const std::size_t half = config.test_size / 2;
    std::array<std::size_t, kVariantCount> wrong{};
    std::vector<double> row(train->size());
    for (std::size_t t = 0; t < config.test_size; ++t) {
        const int y = t < half ? 1 : 0;
        const Curve x = y == 1 ? generate_class1(rng, config.curve_params)
                               : generate_class0(rng, config.curve_params);
        for (std::size_t i = 0; i < train->size(); ++i)
            row[i] = l2_distance(x, (*train)[i].x());
        for (std::size_t v = 0; v < kVariantCount; ++v)
            if ((*fitted)[v].predict(row) != y) ++wrong[v];
    }
    for (std::size_t v = 0; v < kVariantCount; ++v)
        rec.error[v] = static_cast<double>(wrong[v]) /
                       static_cast<double>(config.test_size);
    return rec;
}

// ---------------------------------------------------------------------------
// replication loop + aggregation
// ---------------------------------------------------------------------------

namespace detail {

inline std::size_t worker_count() {
    if (const char* env = std::getenv("FMNAR_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<std::size_t>(hc);
}

} // namespace detail

/**
 * Run every replication (parallel over a worker pool when FMNAR_THREADS or
 * the hardware allows), then fold the records in index order. Aborts with
 * a diagnostic when more than 5% of replications fail.
 */
inline CellResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    CellResult cell;
    cell.config = config;
    cell.records.resize(config.replications);

    const std::size_t workers =
        std::min(detail::worker_count(), config.replications);
    if (workers <= 1) {
        for (std::size_t r = 0; r < config.replications; ++r)
            cell.records[r] = run_replication(config, r);
    } else {
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            for (;;) {
                const std::size_t r = next.fetch_add(1);
                if (r >= config.replications) return;
                cell.records[r] = run_replication(config, r);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    // order-independent fold: plain sums over records in index order
    std::array<double, kVariantCount> sum{}, sumsq{};
    double followup_sum = 0.0;
    std::size_t ok = 0;
    for (const auto& rec : cell.records) {
        if (rec.failed) {
            ++cell.failed;
            continue;
        }
        ++ok;
        followup_sum += static_cast<double>(rec.followup_count);
        for (std::size_t v = 0; v < kVariantCount; ++v) {
            sum[v] += rec.error[v];
            sumsq[v] += rec.error[v] * rec.error[v];
        }
    }
    if (cell.failed * 20 > config.replications)
        throw std::runtime_error(
            "run_experiment: more than 5% of replications failed (" +
            std::to_string(cell.failed) + "/" +
            std::to_string(config.replications) + "), first reason: " +
            [&]() -> std::string {
                for (const auto& rec : cell.records)
                    if (rec.failed) return rec.failure_reason;
                return "unknown";
            }());
    if (ok == 0)
        throw std::runtime_error("run_experiment: no successful replications");

    const double denom = static_cast<double>(ok);
    for (std::size_t v = 0; v < kVariantCount; ++v) {
        cell.mean_error[v] = sum[v] / denom;
        if (ok >= 2) {
            const double var =
                (sumsq[v] - sum[v] * sum[v] / denom) / (denom - 1.0);
            cell.se[v] = std::sqrt(std::max(var, 0.0) / denom);
        } else {
            cell.se[v] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    cell.mean_followup = followup_sum / denom;
    return cell;
}

// ---------------------------------------------------------------------------
// CSV output
// ---------------------------------------------------------------------------

inline std::string format_sig6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
}

inline const char* kResultCsvHeader =
    "model,n,variant,mean_error,se,mean_followup,reps,failed_reps,seed";

/** Comment block: timestamp plus config echo (excluded from determinism). */
inline void write_cell_comments(std::ostream& out, const ExperimentConfig& c) {
    std::time_t now = std::time(nullptr);
    char stamp[64];
    std::tm tm_utc{};
#if defined(_WIN32)
    gmtime_s(&tm_utc, &now);
#else
    gmtime_r(&now, &tm_utc);
#endif
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    out << "# generated: " << stamp << "\n";
    out << "# config: model=" << c.model << " n=" << c.n
        << " reps=" << c.replications << " seed=" << c.seed
        << " split=" << format_sig6(c.split_fraction)
        << " test_size=" << c.test_size
        << " grid_count=" << c.curve_params.grid_count
        << " b_sd=" << format_sig6(c.curve_params.b_sd)
        << " cover=[" << format_sig6(c.cover_lo) << ","
        << format_sig6(c.cover_hi) << "]x" << c.cover_size
        << " h_grid=geom" << c.h_count << "[q" << format_sig6(c.h_qlo) << ",q"
        << format_sig6(c.h_qhi) << "]"
        << " p_n=" << format_sig6(c.p_n())
        << " baseline_risk="
        << (c.baseline_risk == BaselineRisk::Ipw ? "ipw" : "cc") << "\n";
}

/** Deterministic body: one row per variant in the fixed order. */
inline void write_cell_rows(std::ostream& out, const CellResult& cell) {
    const ExperimentConfig& c = cell.config;
    for (std::size_t v = 0; v < kVariantCount; ++v) {
        out << c.model << "," << c.n << ","
            << variant_name(kVariantOrder[v]) << ","
            << format_sig6(cell.mean_error[v]) << ",";
        if (std::isnan(cell.se[v]))
            out << "NA";
        else
            out << format_sig6(cell.se[v]);
        out << "," << format_sig6(cell.mean_followup) << ","
            << c.replications << "," << cell.failed << "," << c.seed << "\n";
    }
}

inline void write_cell_csv(std::ostream& out, const CellResult& cell,
                           bool with_comments = true) {
    if (with_comments) write_cell_comments(out, cell.config);
    out << kResultCsvHeader << "\n";
    write_cell_rows(out, cell);
}

} // namespace fmnar

#endif // FMNAR_EXPERIMENT_HPP
