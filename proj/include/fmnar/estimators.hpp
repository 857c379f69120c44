/**
 * Kernel regression estimators at a query curve x against a training set,
 * all built from one pass of per-sample kernel weights w_i = K(d_i / h):
 *
 *   eta_hat(k):  sum_i Delta_i y_i^{2-k} w_i / sum_i w_i
 *   psi_hat(k):  sum_i Delta_i y_i^{2-k} phi(y_i) w_i / sum_i w_i
 *   nw_full_data:     sum_i y_i w_i / sum_i w_i          (no masking)
 *   nw_complete_case: sum_i Delta_i y_i w_i / sum_i Delta_i w_i
 *   nw_response:      sum_i r_i w_i / sum_i w_i          (given responses)
 *
 * Every ratio uses the 0/0 = 0 convention. Denominators of eta/psi run over
 * the whole training set (all curves are usable even when their responses
 * are not); only the complete-case estimator restricts its denominator to
 * Delta_i = 1.
 *
 * Each estimator has two forms: one taking a precomputed distance row
 * (d_i = d(x, x_i)) and a convenience form taking the query curve, which
 * computes the row and delegates — so cached and uncached paths are
 * bit-identical by construction.
 */

#ifndef FMNAR_ESTIMATORS_HPP
#define FMNAR_ESTIMATORS_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"
#include "kernel.hpp"
#include "mnar.hpp"

namespace fmnar {

/** Training samples plus the bandwidth they are smoothed with. */
struct TrainingSet {
    std::vector<Sample> samples;
    double bandwidth = 1.0;

    TrainingSet() = default;
    TrainingSet(std::vector<Sample> s, double h)
        : samples(std::move(s)), bandwidth(h) {
        if (!(bandwidth > 0.0))
            throw std::invalid_argument("TrainingSet: bandwidth must be > 0");
        for (const auto& smp : samples)
            if (smp.x().grid_count() != samples.front().x().grid_count())
                throw GridMismatchError("TrainingSet: mixed grid_count");
    }
};

/** a / b with the 0/0 = 0 convention (b is a sum of nonnegative weights). */
inline double ratio0(double num, double den) {
    return den == 0.0 ? 0.0 : num / den;
}

/** Distances d(x, x_i) from a query curve to every training curve. */
inline std::vector<double> distance_row(const Curve& x,
                                        std::span<const Sample> train) {
    std::vector<double> row(train.size());
    for (std::size_t i = 0; i < train.size(); ++i)
        row[i] = l2_distance(x, train[i].x());
    return row;
}

namespace detail {

/** The five kernel-weighted sums every estimator is assembled from. */
struct WindowSums {
    double k = 0.0;       // sum w_i                       (all samples)
    double dk = 0.0;      // sum Delta_i w_i
    double dyk = 0.0;     // sum Delta_i y_i w_i
    double dphik = 0.0;   // sum Delta_i phi(y_i) w_i
    double dyphik = 0.0;  // sum Delta_i y_i phi(y_i) w_i
};

inline WindowSums window_sums(std::span<const double> dist_row,
                              std::span<const Sample> train,
                              double phi0, double phi1, const KernelFn& kernel,
                              double h) {
    if (dist_row.size() != train.size())
        throw std::invalid_argument("window_sums: row/training size mismatch");
    if (!(h > 0.0))
        throw std::invalid_argument("window_sums: bandwidth must be > 0");
    WindowSums s;
    for (std::size_t i = 0; i < train.size(); ++i) {
        const double w = kernel(dist_row[i] / h);
        if (w == 0.0) continue;
        s.k += w;
        if (!train[i].observed()) continue;
        const int y = train[i].revealed_label();
        s.dk += w;
        if (y == 1) {
            const double pw = phi1 * w;
            s.dyk += w;
            s.dphik += pw;
            s.dyphik += pw;
        } else {
            s.dphik += phi0 * w;
        }
    }
    return s;
}

} // namespace detail

/**
 * psi_hat(k): kernel estimate of E[Delta y^{2-k} phi(y) | x], k in {1, 2}.
 * Denominator is the full-sample weight sum.
 */
inline double psi_hat(int k, std::span<const double> dist_row,
                      std::span<const Sample> train, const TiltingFunction& phi,
                      const KernelFn& kernel, double h) {
    if (k != 1 && k != 2)
        throw std::invalid_argument("psi_hat: k must be 1 or 2");
    const auto s =
        detail::window_sums(dist_row, train, phi.at0(), phi.at1(), kernel, h);
    return ratio0(k == 1 ? s.dyphik : s.dphik, s.k);
}

inline double psi_hat(int k, const Curve& x, const TiltingFunction& phi,
                      const TrainingSet& train, const KernelFn& kernel) {
    const auto row = distance_row(x, train.samples);
    return psi_hat(k, row, train.samples, phi, kernel, train.bandwidth);
}

/** eta_hat(k): kernel estimate of E[Delta y^{2-k} | x], k in {1, 2}. */
inline double eta_hat(int k, std::span<const double> dist_row,
                      std::span<const Sample> train, const KernelFn& kernel,
                      double h) {
    if (k != 1 && k != 2)
        throw std::invalid_argument("eta_hat: k must be 1 or 2");
    const auto s = detail::window_sums(dist_row, train, 1.0, 1.0, kernel, h);
    return ratio0(k == 1 ? s.dyk : s.dk, s.k);
}

inline double eta_hat(int k, const Curve& x, const TrainingSet& train,
                      const KernelFn& kernel) {
    const auto row = distance_row(x, train.samples);
    return eta_hat(k, row, train.samples, kernel, train.bandwidth);
}

/**
 * Nadaraya-Watson over explicit responses r_i (imputed values, oracle
 * labels, ...): sum r_i w_i / sum w_i with 0/0 = 0.
 */
inline double nw_response(std::span<const double> dist_row,
                          std::span<const double> responses,
                          const KernelFn& kernel, double h) {
    if (dist_row.size() != responses.size())
        throw std::invalid_argument("nw_response: row/response size mismatch");
    if (!(h > 0.0))
        throw std::invalid_argument("nw_response: bandwidth must be > 0");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < dist_row.size(); ++i) {
        const double w = kernel(dist_row[i] / h);
        if (w == 0.0) continue;
        den += w;
        num += responses[i] * w;
    }
    return ratio0(num, den);
}

/**
 * Classical full-data NW estimator. Precondition: no masking applied —
 * every response must be revealed (throws LabelAccessError otherwise).
 */
inline double nw_full_data(std::span<const double> dist_row,
                           std::span<const Sample> train,
                           const KernelFn& kernel, double h) {
    if (dist_row.size() != train.size())
        throw std::invalid_argument("nw_full_data: row/training size mismatch");
    if (!(h > 0.0))
        throw std::invalid_argument("nw_full_data: bandwidth must be > 0");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < train.size(); ++i) {
        const double w = kernel(dist_row[i] / h);
        if (w == 0.0) continue;
        den += w;
        if (train[i].revealed_label() == 1) num += w;
    }
    return ratio0(num, den);
}

inline double nw_full_data(const Curve& x, const TrainingSet& train,
                           const KernelFn& kernel) {
    const auto row = distance_row(x, train.samples);
    return nw_full_data(row, train.samples, kernel, train.bandwidth);
}

/**
 * Complete-case NW estimator: both numerator and denominator restricted to
 * Delta_i = 1. Biased under nonignorable missingness.
 */
inline double nw_complete_case(std::span<const double> dist_row,
                               std::span<const Sample> train,
                               const KernelFn& kernel, double h) {
    const auto s = detail::window_sums(dist_row, train, 1.0, 1.0, kernel, h);
    return ratio0(s.dyk, s.dk);
}

inline double nw_complete_case(const Curve& x, const TrainingSet& train,
                               const KernelFn& kernel) {
    const auto row = distance_row(x, train.samples);
    return nw_complete_case(row, train.samples, kernel, train.bandwidth);
}

} // namespace fmnar

#endif // FMNAR_ESTIMATORS_HPP
