/**
 * The corrected classifier and its competitors.
 *
 * Corrected regression estimate at a query curve x:
 *
 *   R_hat(x; phi, h) = eta1 + (psi1 / psi2) * (1 - eta2)
 *
 * (every ratio with the 0/0 = 0 convention) classifying 1 iff R_hat > 1/2.
 * Candidate (phi, h) pairs are scored on a held-out validation split with
 * the inverse-probability-weighted empirical risk: respondents count 1,
 * followed-up nonrespondents count 1/p_n, everyone else contributes 0.
 *
 * Selection scans a finite tilting-function cover times a bandwidth grid
 * and returns the risk minimizer; ties break to the smallest bandwidth,
 * then the smallest gamma, which makes the result independent of grid
 * iteration order.
 *
 * Baselines: complete-case NW, regression imputation, mean imputation
 * (each choosing h by the same IPW validation risk by default), and the
 * all-data classifier that ignores masking (an oracle; selects h by plain
 * validation error on true labels).
 */

#ifndef FMNAR_CLASSIFIER_HPP
#define FMNAR_CLASSIFIER_HPP

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"
#include "estimators.hpp"
#include "kernel.hpp"
#include "mnar.hpp"

namespace fmnar {

// ---------------------------------------------------------------------------
// regression estimate and sign statistic
// ---------------------------------------------------------------------------

/**
 * Corrected regression estimate from a precomputed distance row. One pass
 * accumulates the same five sums the component estimators use, so this is
 * bit-identical to composing eta_hat/psi_hat (asserted in the tests).
 */
inline double regression_estimate(std::span<const double> dist_row,
                                  std::span<const Sample> train,
                                  const TiltingFunction& phi,
                                  const KernelFn& kernel, double h) {
    const auto s =
        detail::window_sums(dist_row, train, phi.at0(), phi.at1(), kernel, h);
    const double eta1 = ratio0(s.dyk, s.k);
    const double eta2 = ratio0(s.dk, s.k);
    const double psi1 = ratio0(s.dyphik, s.k);
    const double psi2 = ratio0(s.dphik, s.k);
    return eta1 + ratio0(psi1, psi2) * (1.0 - eta2);
}

inline double regression_estimate(const Curve& x, std::span<const Sample> train,
                                  const TiltingFunction& phi,
                                  const KernelFn& kernel, double h) {
    const auto row = distance_row(x, train);
    return regression_estimate(row, train, phi, kernel, h);
}

/** Threshold rule shared by every variant: 1 iff estimate > 1/2 strictly. */
inline int predict_from_estimate(double estimate) {
    return estimate > 0.5 ? 1 : 0;
}

/**
 * Sign statistic: the two-term sum built from Delta_i (2 y_i - 1)
 * numerators,
 *
 *   H = [sum D(2y-1)w / sum w]
 *     + [sum D(2y-1)phi(y)w / sum D phi(y)w] * (1 - sum D w / sum w),
 *
 * each ratio 0/0 = 0. Positive iff the regression estimate exceeds 1/2;
 * kept as an independent computation for property testing.
 */
inline double sign_statistic(std::span<const double> dist_row,
                             std::span<const Sample> train,
                             const TiltingFunction& phi, const KernelFn& kernel,
                             double h) {
    if (dist_row.size() != train.size())
        throw std::invalid_argument("sign_statistic: row/training size mismatch");
    if (!(h > 0.0))
        throw std::invalid_argument("sign_statistic: bandwidth must be > 0");
    const double phi0 = phi.at0(), phi1 = phi.at1();
    double sk = 0.0, sdk = 0.0, t1num = 0.0, t2num = 0.0, t2den = 0.0;
    for (std::size_t i = 0; i < train.size(); ++i) {
        const double w = kernel(dist_row[i] / h);
        if (w == 0.0) continue;
        sk += w;
        if (!train[i].observed()) continue;
        sdk += w;
        if (train[i].revealed_label() == 1) {
            t1num += w;
            t2num += phi1 * w;
            t2den += phi1 * w;
        } else {
            t1num -= w;
            t2num -= phi0 * w;
            t2den += phi0 * w;
        }
    }
    return ratio0(t1num, sk) +
           ratio0(t2num, t2den) * (1.0 - ratio0(sdk, sk));
}

inline double sign_statistic(const Curve& x, std::span<const Sample> train,
                             const TiltingFunction& phi, const KernelFn& kernel,
                             double h) {
    const auto row = distance_row(x, train);
    return sign_statistic(row, train, phi, kernel, h);
}

// ---------------------------------------------------------------------------
// IPW empirical risk
// ---------------------------------------------------------------------------

/**
 * Inverse-probability-weighted empirical risk of fixed predictions on a
 * validation split:
 *
 *   (1/l) [ sum_i Delta_i 1{pred_i != y_i}
 *         + sum_i ((1 - Delta_i) delta_i / p_n) 1{pred_i != y_i} ]
 *
 * Responses are read through the revelation accessor only where the flags
 * permit; a sample that is neither observed nor followed up contributes 0
 * and its response is never touched. Can exceed 1 due to the 1/p_n weight.
 */
inline double ipw_empirical_risk(std::span<const int> predictions,
                                 std::span<const Sample> validation,
                                 double p_n) {
    if (predictions.size() != validation.size())
        throw std::invalid_argument(
            "ipw_empirical_risk: predictions/validation size mismatch");
    if (validation.empty())
        throw std::invalid_argument("ipw_empirical_risk: empty validation");
    if (!(p_n > 0.0) || !(p_n < 1.0))
        throw std::domain_error("ipw_empirical_risk: p_n outside (0, 1)");
    double acc = 0.0;
    for (std::size_t i = 0; i < validation.size(); ++i) {
        const Sample& s = validation[i];
        if (s.observed()) {
            if (predictions[i] != s.revealed_label()) acc += 1.0;
        } else if (s.followed_up()) {
            if (predictions[i] != s.revealed_label()) acc += 1.0 / p_n;
        }
    }
    return acc / static_cast<double>(validation.size());
}

/** Plain misclassification rate against true labels (oracle evaluation). */
inline double oracle_error_rate(std::span<const int> predictions,
                                std::span<const Sample> samples) {
    if (predictions.size() != samples.size())
        throw std::invalid_argument(
            "oracle_error_rate: predictions/samples size mismatch");
    if (samples.empty())
        throw std::invalid_argument("oracle_error_rate: empty sample set");
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < samples.size(); ++i)
        if (predictions[i] != samples[i].oracle_label()) ++wrong;
    return static_cast<double>(wrong) / static_cast<double>(samples.size());
}

/**
 * Complete-case validation risk: misclassification rate among observed
 * validation samples only (0 when none are observed). The alternative
 * baseline-selection risk behind BaselineRisk::CompleteCase.
 */
inline double complete_case_risk(std::span<const int> predictions,
                                 std::span<const Sample> validation) {
    if (predictions.size() != validation.size())
        throw std::invalid_argument(
            "complete_case_risk: predictions/validation size mismatch");
    double wrong = 0.0, seen = 0.0;
    for (std::size_t i = 0; i < validation.size(); ++i) {
        if (!validation[i].observed()) continue;
        seen += 1.0;
        if (predictions[i] != validation[i].revealed_label()) wrong += 1.0;
    }
    return ratio0(wrong, seen);
}

// ---------------------------------------------------------------------------
// bandwidth grid
// ---------------------------------------------------------------------------

/** Finite ascending set of candidate bandwidths. */
struct BandwidthGrid {
    std::vector<double> values;

    BandwidthGrid() = default;
    explicit BandwidthGrid(std::vector<double> v) : values(std::move(v)) {
        if (values.empty())
            throw std::invalid_argument("BandwidthGrid: empty");
        double prev = 0.0;
        for (double h : values) {
            if (!(h > prev))
                throw std::invalid_argument(
                    "BandwidthGrid: values must be positive and strictly ascending");
            prev = h;
        }
    }
};

/**
 * Default grid: `count` geometrically spaced values between the qlo and qhi
 * quantiles (linear interpolation between order statistics) of the pairwise
 * training-curve L2 distances. Throws DegenerateFitError when the training
 * curves carry no usable spread.
 */
inline BandwidthGrid default_bandwidth_grid(std::span<const Sample> train,
                                            std::size_t count = 20,
                                            double qlo = 0.05,
                                            double qhi = 0.95) {
    if (train.size() < 2)
        throw DegenerateFitError("default_bandwidth_grid: fewer than 2 curves");
    if (count == 0)
        throw std::invalid_argument("default_bandwidth_grid: count must be >= 1");
    if (!(0.0 <= qlo && qlo < qhi && qhi <= 1.0))
        throw std::invalid_argument("default_bandwidth_grid: bad quantiles");

    std::vector<double> d;
    d.reserve(train.size() * (train.size() - 1) / 2);
    for (std::size_t i = 0; i < train.size(); ++i)
        for (std::size_t j = i + 1; j < train.size(); ++j)
            d.push_back(l2_distance(train[i].x(), train[j].x()));
    std::sort(d.begin(), d.end());

    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(d.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, d.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return d[lo] + frac * (d[hi] - d[lo]);
    };

    double lo = quantile(qlo), hi = quantile(qhi);
    if (!(hi > 0.0))
        throw DegenerateFitError("default_bandwidth_grid: all curves coincide");
    if (!(lo > 0.0)) lo = hi * 1e-6; // duplicate curves collapsed the low tail
    if (count == 1) return BandwidthGrid({std::sqrt(lo * hi)});
    if (!(hi > lo)) return BandwidthGrid({lo});

    std::vector<double> values(count);
    const double ratio = hi / lo;
    for (std::size_t i = 0; i < count; ++i)
        values[i] = lo * std::pow(ratio, static_cast<double>(i) /
                                             static_cast<double>(count - 1));
    values.front() = lo;
    values.back() = hi;
    return BandwidthGrid(std::move(values));
}

// ---------------------------------------------------------------------------
// fitted classifiers
// ---------------------------------------------------------------------------

enum class Variant { Proposed, CompleteCase, ImpRegression, ImpMean, AllData };

inline const char* variant_name(Variant v) {
    switch (v) {
    case Variant::Proposed:      return "proposed";
    case Variant::CompleteCase:  return "cc";
    case Variant::ImpRegression: return "imp1";
    case Variant::ImpMean:       return "imp2";
    case Variant::AllData:       return "all";
    }
    return "?";
}

/** How the non-oracle baselines score candidate bandwidths. */
enum class BaselineRisk { Ipw, CompleteCase };

/**
 * A trained classifier of any variant. Imputation variants and the
 * all-data oracle carry a completed response vector aligned with the
 * training samples; the proposed variant carries its selected tilting
 * function instead.
 */
class FittedClassifier {
public:
    Variant variant() const { return variant_; }
    double h() const { return h_; }
    const KernelFn& kernel() const { return kernel_; }
    const std::vector<Sample>& train() const { return *train_; }
    const TiltingFunction& phi() const {
        if (!phi_)
            throw std::logic_error("FittedClassifier: variant has no phi");
        return *phi_;
    }

    /** Regression estimate at x from a precomputed distance row. */
    double estimate(std::span<const double> dist_row) const {
        switch (variant_) {
        case Variant::Proposed:
            return regression_estimate(dist_row, *train_, *phi_, kernel_, h_);
        case Variant::CompleteCase:
            return nw_complete_case(dist_row, *train_, kernel_, h_);
        default:
            return nw_response(dist_row, responses_, kernel_, h_);
        }
    }

    double estimate(const Curve& x) const {
        const auto row = distance_row(x, *train_);
        return estimate(row);
    }

    int predict(std::span<const double> dist_row) const {
        return predict_from_estimate(estimate(dist_row));
    }
    int predict(const Curve& x) const {
        return predict_from_estimate(estimate(x));
    }

    static FittedClassifier proposed(std::shared_ptr<const std::vector<Sample>> train,
                                     TiltingFunction phi, double h, KernelFn kernel) {
        FittedClassifier f(Variant::Proposed, std::move(train), h, std::move(kernel));
        f.phi_ = std::move(phi);
        return f;
    }

    static FittedClassifier complete_case(std::shared_ptr<const std::vector<Sample>> train,
                                          double h, KernelFn kernel) {
        return FittedClassifier(Variant::CompleteCase, std::move(train), h,
                                std::move(kernel));
    }

    static FittedClassifier with_responses(Variant v,
                                           std::shared_ptr<const std::vector<Sample>> train,
                                           std::vector<double> responses, double h,
                                           KernelFn kernel) {
        FittedClassifier f(v, std::move(train), h, std::move(kernel));
        if (responses.size() != f.train_->size())
            throw std::invalid_argument(
                "FittedClassifier: responses/training size mismatch");
        f.responses_ = std::move(responses);
        return f;
    }

private:
    FittedClassifier(Variant v, std::shared_ptr<const std::vector<Sample>> train,
                     double h, KernelFn kernel)
        : variant_(v), train_(std::move(train)), h_(h), kernel_(std::move(kernel)) {
        if (!train_ || train_->empty())
            throw std::invalid_argument("FittedClassifier: empty training set");
        if (!(h_ > 0.0))
            throw std::invalid_argument("FittedClassifier: bandwidth must be > 0");
    }

    Variant variant_;
    std::shared_ptr<const std::vector<Sample>> train_;
    double h_;
    KernelFn kernel_;
    std::optional<TiltingFunction> phi_;
    std::vector<double> responses_;
};

/** classify_point: 1 iff the fitted variant's estimate at x exceeds 1/2. */
inline int classify_point(const Curve& x, const FittedClassifier& fitted) {
    return fitted.predict(x);
}

// ---------------------------------------------------------------------------
// joint (phi, h) selection
// ---------------------------------------------------------------------------

struct SelectionResult {
    std::size_t phi_index = 0;
    std::size_t h_index = 0;
    double risk = 0.0;
};

namespace detail {

/** Distance rows from every validation curve to the training set. */
inline std::vector<std::vector<double>>
validation_rows(std::span<const Sample> train, std::span<const Sample> validation) {
    std::vector<std::vector<double>> rows;
    rows.reserve(validation.size());
    for (const auto& v : validation) rows.push_back(distance_row(v.x(), train));
    return rows;
}

/** Lexicographic (risk, h, gamma) order used for all argmin tie-breaking. */
struct SelectionKey {
    double risk;
    double h;
    double gamma;

    bool operator<(const SelectionKey& o) const {
        if (risk != o.risk) return risk < o.risk;
        if (h != o.h) return h < o.h;
        return gamma < o.gamma;
    }
};

} // namespace detail

/**
 * Joint selection: scan cover x grid, score each candidate pair by the IPW
 * risk of its induced classifier on the validation split, return the
 * minimizer. Ties break to smaller h, then smaller gamma, so the outcome
 * does not depend on iteration order.
 */
inline SelectionResult select_phi_h(const CoverGrid& cover,
                                    const BandwidthGrid& grid,
                                    std::span<const Sample> train,
                                    std::span<const Sample> validation,
                                    double p_n, const KernelFn& kernel) {
    if (cover.candidates.empty())
        throw std::invalid_argument("select_phi_h: empty cover");
    if (grid.values.empty())
        throw std::invalid_argument("select_phi_h: empty bandwidth grid");
    if (validation.empty())
        throw std::invalid_argument("select_phi_h: empty validation split");

    const auto rows = detail::validation_rows(train, validation);
    std::vector<int> preds(validation.size());

    bool have = false;
    detail::SelectionKey best_key{0.0, 0.0, 0.0};
    SelectionResult best;
    for (std::size_t pi = 0; pi < cover.candidates.size(); ++pi) {
        const TiltingFunction& phi = cover.candidates[pi];
        for (std::size_t hi = 0; hi < grid.values.size(); ++hi) {
            const double h = grid.values[hi];
            for (std::size_t j = 0; j < validation.size(); ++j)
                preds[j] = predict_from_estimate(
                    regression_estimate(rows[j], train, phi, kernel, h));
            const double risk = ipw_empirical_risk(preds, validation, p_n);
            const detail::SelectionKey key{risk, h, phi.gamma()};
            if (!have || key < best_key) {
                have = true;
                best_key = key;
                best = SelectionResult{pi, hi, risk};
            }
        }
    }
    return best;
}

/** Fit the proposed classifier: select (phi, h), wrap the result. */
inline FittedClassifier fit_proposed(std::shared_ptr<const std::vector<Sample>> train,
                                     std::span<const Sample> validation,
                                     const CoverGrid& cover,
                                     const BandwidthGrid& grid, double p_n,
                                     const KernelFn& kernel) {
    const auto sel = select_phi_h(cover, grid, *train, validation, p_n, kernel);
    return FittedClassifier::proposed(std::move(train),
                                      cover.candidates[sel.phi_index],
                                      grid.values[sel.h_index], kernel);
}

// ---------------------------------------------------------------------------
// baselines
// ---------------------------------------------------------------------------

namespace detail {

/** Mean of the observed training responses; DegenerateFitError if none. */
inline double observed_label_mean(std::span<const Sample> train) {
    std::size_t observed = 0;
    double label_sum = 0.0;
    for (const auto& s : train)
        if (s.observed()) {
            ++observed;
            label_sum += static_cast<double>(s.revealed_label());
        }
    if (observed == 0)
        throw DegenerateFitError("observed_label_mean: no observed labels");
    return label_sum / static_cast<double>(observed);
}

/** Responses with missing entries imputed by the observed-label mean. */
inline std::vector<double> mean_imputed_responses(std::span<const Sample> train) {
    const double observed_mean = observed_label_mean(train);
    std::vector<double> r(train.size());
    for (std::size_t i = 0; i < train.size(); ++i)
        r[i] = train[i].observed()
                   ? static_cast<double>(train[i].revealed_label())
                   : observed_mean;
    return r;
}

/**
 * Responses with missing entries imputed by the complete-case kernel
 * regression value at the sample's own curve (fractional, no thresholding)
 * under bandwidth h. train_rows caches d(x_i, x_j) per sample.
 */
inline std::vector<double>
regression_imputed_responses(std::span<const Sample> train,
                             std::span<const std::vector<double>> train_rows,
                             const KernelFn& kernel, double h) {
    std::vector<double> r(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
        if (train[i].observed())
            r[i] = static_cast<double>(train[i].revealed_label());
        else
            r[i] = nw_complete_case(train_rows[i], train, kernel, h);
    }
    return r;
}

/** Oracle responses for the all-data variant. */
inline std::vector<double> oracle_responses(std::span<const Sample> train) {
    std::vector<double> r(train.size());
    for (std::size_t i = 0; i < train.size(); ++i)
        r[i] = static_cast<double>(train[i].oracle_label());
    return r;
}

} // namespace detail

/**
 * Fit one of the four comparison classifiers, selecting h over the grid by
 * the variant's validation risk: IPW risk (or complete-case risk, per
 * `mode`) for complete-case/imputation variants, plain true-label error for
 * the all-data oracle. Throws DegenerateFitError when the training split
 * has no observed labels.
 */
inline FittedClassifier fit_baseline(Variant variant,
                                     std::shared_ptr<const std::vector<Sample>> train,
                                     std::span<const Sample> validation,
                                     const BandwidthGrid& grid, double p_n,
                                     const KernelFn& kernel,
                                     BaselineRisk mode = BaselineRisk::Ipw) {
    if (variant == Variant::Proposed)
        throw std::invalid_argument("fit_baseline: use fit_proposed");
    if (validation.empty())
        throw std::invalid_argument("fit_baseline: empty validation split");

    const std::vector<Sample>& tr = *train;
    bool any_observed = false;
    for (const auto& s : tr)
        if (s.observed()) { any_observed = true; break; }
    if (!any_observed && variant != Variant::AllData)
        throw DegenerateFitError("fit_baseline: no observed labels");

    const auto rows = detail::validation_rows(tr, validation);
    std::vector<int> preds(validation.size());

    // h-independent response vectors are built once; regression imputation
    // depends on h and reuses cached training-to-training distance rows.
    std::vector<double> fixed_responses;
    std::vector<std::vector<double>> train_rows;
    if (variant == Variant::AllData)
        fixed_responses = detail::oracle_responses(tr);
    else if (variant == Variant::ImpMean)
        fixed_responses = detail::mean_imputed_responses(tr);
    else if (variant == Variant::ImpRegression)
        train_rows = detail::validation_rows(tr, tr);

    bool have = false;
    detail::SelectionKey best_key{0.0, 0.0, 0.0};
    double best_h = grid.values.front();
    std::vector<double> imp_responses;
    for (double h : grid.values) {
        if (variant == Variant::ImpRegression)
            imp_responses = detail::regression_imputed_responses(tr, train_rows,
                                                                 kernel, h);
        const std::vector<double>& responses =
            variant == Variant::ImpRegression ? imp_responses : fixed_responses;

        for (std::size_t j = 0; j < validation.size(); ++j) {
            double est;
            if (variant == Variant::CompleteCase)
                est = nw_complete_case(rows[j], tr, kernel, h);
            else
                est = nw_response(rows[j], responses, kernel, h);
            preds[j] = predict_from_estimate(est);
        }

        double risk;
        if (variant == Variant::AllData)
            risk = oracle_error_rate(preds, validation);
        else if (mode == BaselineRisk::Ipw)
            risk = ipw_empirical_risk(preds, validation, p_n);
        else
            risk = complete_case_risk(preds, validation);

        const detail::SelectionKey key{risk, h, 0.0};
        if (!have || key < best_key) {
            have = true;
            best_key = key;
            best_h = h;
        }
    }

    switch (variant) {
    case Variant::CompleteCase:
        return FittedClassifier::complete_case(std::move(train), best_h, kernel);
    case Variant::AllData:
        return FittedClassifier::with_responses(variant, train,
                                                std::move(fixed_responses),
                                                best_h, kernel);
    case Variant::ImpMean:
        return FittedClassifier::with_responses(variant, train,
                                                std::move(fixed_responses),
                                                best_h, kernel);
    default:
        return FittedClassifier::with_responses(
            variant, train,
            detail::regression_imputed_responses(tr, train_rows, kernel, best_h),
            best_h, kernel);
    }
}

} // namespace fmnar

#endif // FMNAR_CLASSIFIER_HPP
