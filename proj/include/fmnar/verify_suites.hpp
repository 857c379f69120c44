/**
 * Self-contained verification suites: each pits a production code path
 * against an independent brute-force oracle or a structural invariant and
 * reports pass/fail with measured numbers. Shared by the `verify` CLI
 * subcommand and the acceptance gate.
 */

#ifndef FMNAR_VERIFY_SUITES_HPP
#define FMNAR_VERIFY_SUITES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "classifier.hpp"
#include "curve.hpp"
#include "estimators.hpp"
#include "kernel.hpp"
#include "mnar.hpp"
#include "oracle.hpp"
#include "rng.hpp"

namespace fmnar {

struct SuiteResult {
    bool pass = false;
    std::string detail;
};

namespace detail {

/** Random world: 2-5 atoms, random conditionals, exp-linear phi. */
inline DiscreteWorld random_world(Rng& rng, std::size_t grid_count = 25) {
    const std::size_t count = 2 + static_cast<std::size_t>(rng.below(4));
    std::vector<double> levels(count), probs(count), p_y1(count);
    double total = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
        levels[j] = 0.5 + 4.5 * rng.random() +
                    static_cast<double>(j); // distinct, bounded away from 0
        probs[j] = 0.05 + rng.random();
        p_y1[j] = rng.random();
        total += probs[j];
    }
    for (auto& p : probs) p /= total;
    // guard against accumulated rounding in the sum-to-1 invariant
    probs.back() = 1.0;
    for (std::size_t j = 0; j + 1 < count; ++j) probs.back() -= probs[j];
    SelectionModel model{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                         TiltingFunction::exp_linear(rng.uniform(-2.0, 2.0))};
    return DiscreteWorld(levels, probs, p_y1, model, grid_count);
}

/** Random masked training set from the two-class quadratic family. */
inline std::vector<Sample> fuzz_training_set(Rng& rng, std::size_t size,
                                             std::size_t grid_count) {
    CurveModelParams params;
    params.grid_count = grid_count;
    std::vector<Sample> train;
    train.reserve(size);
    const double keep = rng.random(); // per-set observation rate, may be ~0
    for (std::size_t i = 0; i < size; ++i) {
        const int y = rng.bernoulli(0.5) ? 1 : 0;
        Curve x = y == 1 ? generate_class1(rng, params)
                         : generate_class0(rng, params);
        Sample s(std::move(x), y);
        s.set_delta(rng.bernoulli(keep));
        train.push_back(std::move(s));
    }
    return train;
}

inline TiltingFunction fuzz_phi(Rng& rng) {
    switch (rng.below(3)) {
    case 0:  return TiltingFunction::exp_linear(rng.uniform(-3.0, 3.0));
    case 1:  return TiltingFunction::exp_exp1(rng.uniform(0.0, 2.0));
    default: return TiltingFunction::tabulated(0.1 + 3.0 * rng.random(),
                                               0.1 + 3.0 * rng.random());
    }
}

} // namespace detail

/**
 * Lemma-1 oracle: on randomized discrete worlds the direct conditional
 * mean and the (eta, psi) representation must agree to `tol` at every
 * positive-probability atom.
 */
inline SuiteResult verify_lemma1(std::size_t worlds, std::uint64_t seed,
                                 double tol = 1e-12) {
    Rng rng(seed);
    double worst = 0.0;
    std::size_t checked = 0;
    for (std::size_t w = 0; w < worlds; ++w) {
        const DiscreteWorld world = detail::random_world(rng);
        for (std::size_t j = 0; j < world.atoms().size(); ++j) {
            const auto r = exact_regression(world, j);
            worst = std::max(worst, std::fabs(r.direct - r.representation));
            ++checked;
        }
    }
    std::ostringstream os;
    os << worlds << " worlds, " << checked
       << " atoms, max |direct - representation| = " << worst;
    return SuiteResult{worst <= tol, os.str()};
}

/**
 * IPW risk unbiasedness: for a fixed per-atom prediction rule, the mean of
 * the weighted validation risk over fresh (validation, follow-up) draws
 * must match the exact conditional error within 3 Monte Carlo SEs.
 */
inline SuiteResult verify_ipw_unbiasedness(std::size_t instances,
                                           std::size_t resamples,
                                           std::uint64_t seed,
                                           std::size_t validation_size = 40) {
    Rng rng(seed);
    double worst_z = 0.0;
    for (std::size_t inst = 0; inst < instances; ++inst) {
        const DiscreteWorld world = detail::random_world(rng);
        const std::size_t atom_count = world.atoms().size();
        std::vector<int> atom_pred(atom_count);
        for (auto& p : atom_pred) p = rng.bernoulli(0.5) ? 1 : 0;
        const double exact = world.exact_error(atom_pred);
        const double p_n = 0.05 + 0.3 * rng.random();

        double sum = 0.0, sumsq = 0.0;
        std::vector<Sample> validation;
        std::vector<int> preds;
        for (std::size_t r = 0; r < resamples; ++r) {
            validation.clear();
            preds.clear();
            for (std::size_t i = 0; i < validation_size; ++i) {
                std::size_t j = 0;
                validation.push_back(world.draw(rng, &j));
                preds.push_back(atom_pred[j]);
            }
            draw_followups(validation, p_n, rng);
            const double risk = ipw_empirical_risk(preds, validation, p_n);
            sum += risk;
            sumsq += risk * risk;
        }
        const double n = static_cast<double>(resamples);
        const double mean = sum / n;
        const double var = (sumsq - sum * sum / n) / (n - 1.0);
        const double se = std::sqrt(std::max(var, 1e-300) / n);
        worst_z = std::max(worst_z, std::fabs(mean - exact) / se);
    }
    std::ostringstream os;
    os << instances << " instances x " << resamples
       << " resamples, worst |mean - exact| / SE = " << worst_z;
    return SuiteResult{worst_z <= 3.0, os.str()};
}

/**
 * Sign-statistic equivalence: on fuzzed (training set, phi, h, query)
 * tuples, sign_statistic > 0 must coincide with the classifier output 1.
 */
inline SuiteResult verify_sign_equivalence(std::size_t count,
                                           std::uint64_t seed) {
    Rng rng(seed);
    const KernelFn kernel = KernelFn::epanechnikov();
    CurveModelParams params;
    params.grid_count = 31;
    std::size_t violations = 0;
    std::size_t positives = 0;
    for (std::size_t c = 0; c < count; ++c) {
        const std::size_t size = 1 + static_cast<std::size_t>(rng.below(25));
        auto train = detail::fuzz_training_set(rng, size, params.grid_count);
        const TiltingFunction phi = detail::fuzz_phi(rng);
        const Curve x = rng.bernoulli(0.5) ? generate_class1(rng, params)
                                           : generate_class0(rng, params);
        const auto row = distance_row(x, train);
        double dmax = 0.0;
        for (double d : row) dmax = std::max(dmax, d);
        const double h = rng.uniform(0.01, 2.0 * std::max(dmax, 0.05));

        const double est = regression_estimate(row, train, phi, kernel, h);
        const double stat = sign_statistic(row, train, phi, kernel, h);
        const int by_estimate = predict_from_estimate(est);
        const int by_sign = stat > 0.0 ? 1 : 0;
        if (by_estimate != by_sign) ++violations;
        if (by_sign == 1) ++positives;
    }
    std::ostringstream os;
    os << count << " fuzzed evaluations, " << positives << " positive, "
       << violations << " violations";
    return SuiteResult{violations == 0, os.str()};
}

/**
 * Estimator invariants on fuzzed inputs: the regression estimate stays in
 * [0, 1], psi_hat(1) <= psi_hat(2), eta_hat(1) <= eta_hat(2), and on
 * fully observed data the estimate collapses onto the full-data and
 * complete-case estimators (checked to 1e-12).
 */
inline SuiteResult verify_estimator_invariants(std::size_t count,
                                               std::uint64_t seed) {
    Rng rng(seed);
    const KernelFn kernel = KernelFn::epanechnikov();
    CurveModelParams params;
    params.grid_count = 31;
    std::size_t range_violations = 0, order_violations = 0;
    std::size_t reduction_checked = 0;
    double worst_reduction = 0.0;
    for (std::size_t c = 0; c < count; ++c) {
        const std::size_t size = 1 + static_cast<std::size_t>(rng.below(20));
        auto train = detail::fuzz_training_set(rng, size, params.grid_count);
        const bool force_observed = rng.bernoulli(0.25);
        if (force_observed)
            for (auto& s : train) s.set_delta(true);
        const TiltingFunction phi = detail::fuzz_phi(rng);
        const Curve x = rng.bernoulli(0.5) ? generate_class1(rng, params)
                                           : generate_class0(rng, params);
        const auto row = distance_row(x, train);
        double dmax = 0.0;
        for (double d : row) dmax = std::max(dmax, d);
        const double h = rng.uniform(0.01, 2.0 * std::max(dmax, 0.05));

        const double est = regression_estimate(row, train, phi, kernel, h);
        if (!(est >= 0.0 && est <= 1.0)) ++range_violations;
        const double psi1 = psi_hat(1, row, train, phi, kernel, h);
        const double psi2 = psi_hat(2, row, train, phi, kernel, h);
        const double eta1 = eta_hat(1, row, train, kernel, h);
        const double eta2 = eta_hat(2, row, train, kernel, h);
        if (psi1 > psi2 || eta1 > eta2) ++order_violations;

        if (force_observed) {
            const double full = nw_full_data(row, train, kernel, h);
            const double cc = nw_complete_case(row, train, kernel, h);
            worst_reduction = std::max(worst_reduction, std::fabs(est - full));
            worst_reduction = std::max(worst_reduction, std::fabs(cc - full));
            ++reduction_checked;
        }
    }
    std::ostringstream os;
    os << count << " fuzzed inputs: " << range_violations
       << " range violations, " << order_violations << " order violations, "
       << reduction_checked
       << " zero-missingness reductions (worst deviation " << worst_reduction
       << ")";
    return SuiteResult{range_violations == 0 && order_violations == 0 &&
                           worst_reduction <= 1e-12,
                       os.str()};
}

/**
 * Selection argmin: recompute every (phi, h) risk with an independent
 * double loop (opposite nesting), pick the winner with brute_force_argmin,
 * and require exact agreement with select_phi_h; plus randomized
 * candidate-list checks of the tie-break rule itself.
 */
inline SuiteResult verify_argmin(std::size_t instances, std::uint64_t seed) {
    Rng rng(seed);
    const KernelFn kernel = KernelFn::epanechnikov();
    CurveModelParams params;
    params.grid_count = 31;
    std::size_t mismatches = 0;

    for (std::size_t inst = 0; inst < instances; ++inst) {
        const std::size_t m = 10 + static_cast<std::size_t>(rng.below(20));
        const std::size_t l = 5 + static_cast<std::size_t>(rng.below(10));
        auto train = std::make_shared<std::vector<Sample>>(
            detail::fuzz_training_set(rng, m, params.grid_count));
        auto validation = detail::fuzz_training_set(rng, l, params.grid_count);
        const double p_n = 0.1;
        draw_followups(validation, p_n, rng);

        BandwidthGrid grid;
        try {
            grid = default_bandwidth_grid(*train,
                                          4 + static_cast<std::size_t>(rng.below(6)));
        } catch (const DegenerateFitError&) {
            continue;
        }
        const CoverGrid cover = build_cover_by_count(
            TiltingFunction::Family::ExpLinear, -2.0, 2.0,
            3 + static_cast<std::size_t>(rng.below(8)));

        const auto sel =
            select_phi_h(cover, grid, *train, validation, p_n, kernel);

        // independent recomputation, h outer / phi inner
        std::vector<CandidateEval> evals;
        std::vector<std::size_t> phi_idx, h_idx;
        std::vector<int> preds(validation.size());
        for (std::size_t hi = 0; hi < grid.values.size(); ++hi) {
            for (std::size_t pi = 0; pi < cover.candidates.size(); ++pi) {
                for (std::size_t j = 0; j < validation.size(); ++j)
                    preds[j] = predict_from_estimate(regression_estimate(
                        validation[j].x(), *train, cover.candidates[pi],
                        kernel, grid.values[hi]));
                evals.push_back(CandidateEval{
                    ipw_empirical_risk(preds, validation, p_n),
                    grid.values[hi], cover.candidates[pi].gamma()});
                phi_idx.push_back(pi);
                h_idx.push_back(hi);
            }
        }
        const std::size_t best = brute_force_argmin(evals);
        if (phi_idx[best] != sel.phi_index || h_idx[best] != sel.h_index ||
            evals[best].risk != sel.risk)
            ++mismatches;
    }
    std::ostringstream os;
    os << instances << " seeded instances, " << mismatches << " mismatches";
    return SuiteResult{mismatches == 0, os.str()};
}

/**
 * Monte Carlo consistency: kernel estimates on samples drawn from a
 * discrete world (bandwidth below the atom gap, true phi) must get closer
 * to the exact conditional mean as n grows, in >= 95% of seeds.
 */
inline SuiteResult verify_mc_consistency(std::size_t seed_count,
                                         std::uint64_t seed,
                                         std::size_t n_small = 250,
                                         std::size_t n_large = 4000) {
    const std::vector<double> levels{1.0, 2.0, 3.5};
    const std::vector<double> probs{0.3, 0.3, 0.4};
    const std::vector<double> p_y1{0.2, 0.7, 0.9};
    const SelectionModel model{0.1, 0.3, TiltingFunction::exp_linear(-0.8)};
    const DiscreteWorld world(levels, probs, p_y1, model);
    const KernelFn kernel = KernelFn::epanechnikov();
    const double h = 0.4 * world.min_gap();

    auto estimate_error = [&](std::size_t n, Rng& rng) {
        std::vector<Sample> data;
        data.reserve(n);
        for (std::size_t i = 0; i < n; ++i) data.push_back(world.draw(rng));
        double err = 0.0;
        for (std::size_t j = 0; j < world.atoms().size(); ++j) {
            const double est = regression_estimate(
                world.at(j).x, data, world.phi(), kernel, h);
            err += std::fabs(est - world.at(j).p_y1);
        }
        return err / static_cast<double>(world.atoms().size());
    };

    std::size_t improved = 0;
    for (std::size_t s = 0; s < seed_count; ++s) {
        Rng rng(child_seed(seed, s));
        const double err_small = estimate_error(n_small, rng);
        const double err_large = estimate_error(n_large, rng);
        if (err_large < err_small) ++improved;
    }
    const double frac =
        static_cast<double>(improved) / static_cast<double>(seed_count);
    std::ostringstream os;
    os << improved << "/" << seed_count << " seeds improved (n=" << n_small
       << " -> n=" << n_large << ")";
    return SuiteResult{frac >= 0.95, os.str()};
}

} // namespace fmnar

#endif // FMNAR_VERIFY_SUITES_HPP
