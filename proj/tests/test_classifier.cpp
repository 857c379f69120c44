#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include <fmnar/classifier.hpp>

using namespace fmnar;

namespace {

Curve constant_curve(double level, std::size_t g = 21) {
    return Curve(std::vector<double>(g, level));
}

Sample masked(double level, int y) {
    Sample s(constant_curve(level), y);
    s.set_delta(false);
    return s;
}

Sample followed(double level, int y) {
    Sample s = masked(level, y);
    s.set_followup(true);
    return s;
}

/** Same micro fixture as the estimator tests (frozen value 0.53785...). */
struct MicroFixture {
    std::vector<Sample> train;
    Curve query = constant_curve(0.0);
    TiltingFunction phi = TiltingFunction::exp_linear(-0.8);
    KernelFn kernel = KernelFn::epanechnikov();
    double h = 2.0;

    MicroFixture() {
        train.emplace_back(constant_curve(0.0), 1);
        train.emplace_back(constant_curve(1.0), 0);
        train.push_back(masked(1.6, 1));
    }
};

} // namespace

// ---------------------------------------------------------------------------
// regression estimate / prediction / sign statistic
// ---------------------------------------------------------------------------

TEST_CASE("regression estimate matches the frozen hand value") {
    MicroFixture f;
    const auto row = distance_row(f.query, f.train);
    CHECK(regression_estimate(row, f.train, f.phi, f.kernel, f.h) ==
          Catch::Approx(0.53785502861371215).epsilon(1e-12));
}

TEST_CASE("single-pass estimate equals the estimator composition bitwise") {
    MicroFixture f;
    f.train.push_back(followed(0.4, 0));
    f.train.emplace_back(constant_curve(0.8), 1);
    const auto row = distance_row(f.query, f.train);

    const double eta1 = eta_hat(1, row, f.train, f.kernel, f.h);
    const double eta2 = eta_hat(2, row, f.train, f.kernel, f.h);
    const double psi1 = psi_hat(1, row, f.train, f.phi, f.kernel, f.h);
    const double psi2 = psi_hat(2, row, f.train, f.phi, f.kernel, f.h);
    const double composed = eta1 + ratio0(psi1, psi2) * (1.0 - eta2);

    CHECK(regression_estimate(row, f.train, f.phi, f.kernel, f.h) == composed);
    // curve form delegates to the row form
    CHECK(regression_estimate(f.query, f.train, f.phi, f.kernel, f.h) ==
          regression_estimate(row, f.train, f.phi, f.kernel, f.h));
}

TEST_CASE("prediction thresholds strictly above one half") {
    CHECK(predict_from_estimate(0.5) == 0);
    CHECK(predict_from_estimate(std::nextafter(0.5, 1.0)) == 1);
    CHECK(predict_from_estimate(0.0) == 0);
    CHECK(predict_from_estimate(1.0) == 1);
}

TEST_CASE("empty windows classify to 0") {
    MicroFixture f;
    const Curve far = constant_curve(500.0);
    const auto row = distance_row(far, f.train);
    const double est = regression_estimate(row, f.train, f.phi, f.kernel, f.h);
    CHECK(est == 0.0);
    CHECK(predict_from_estimate(est) == 0);
}

TEST_CASE("a single observed class-1 neighbour classifies to 1") {
    std::vector<Sample> train;
    train.emplace_back(constant_curve(0.0), 1);
    const Curve query = constant_curve(0.1);
    const auto row = distance_row(query, train);
    const double est = regression_estimate(
        row, train, TiltingFunction::exp_linear(1.0), KernelFn::epanechnikov(),
        1.0);
    CHECK(est == 1.0);
    CHECK(predict_from_estimate(est) == 1);
}

TEST_CASE("sign statistic agrees with the centered estimate") {
    MicroFixture f;
    f.train.push_back(followed(0.7, 0));
    const auto row = distance_row(f.query, f.train);
    const double est = regression_estimate(row, f.train, f.phi, f.kernel, f.h);
    const double H = sign_statistic(row, f.train, f.phi, f.kernel, f.h);
    CHECK(H == Catch::Approx(2.0 * est - 1.0).margin(1e-12));
    CHECK((H > 0.0) == (predict_from_estimate(est) == 1));
    // curve form delegates
    CHECK(sign_statistic(f.query, f.train, f.phi, f.kernel, f.h) == H);
}

TEST_CASE("sign statistic is 0 on empty windows") {
    MicroFixture f;
    const auto row = distance_row(constant_curve(500.0), f.train);
    CHECK(sign_statistic(row, f.train, f.phi, f.kernel, f.h) == 0.0);
}

// ---------------------------------------------------------------------------
// risks
// ---------------------------------------------------------------------------

TEST_CASE("IPW risk reweights followed-up errors by 1/p_n") {
    // observed wrong (1) + followed-up wrong (1/0.5 = 2), averaged over 2:
    // the risk exceeds 1 by design
    std::vector<Sample> validation;
    validation.emplace_back(constant_curve(0.0), 1);
    validation.push_back(followed(1.0, 0));
    const std::vector<int> preds = {0, 1}; // both wrong
    CHECK(ipw_empirical_risk(preds, validation, 0.5) == 1.5);

    const std::vector<int> right = {1, 0};
    CHECK(ipw_empirical_risk(right, validation, 0.5) == 0.0);

    // mixed: only the observed one wrong -> 1/2
    const std::vector<int> mixed = {0, 0};
    CHECK(ipw_empirical_risk(mixed, validation, 0.5) == 0.5);
}

TEST_CASE("unrevealed validation samples contribute nothing to the IPW risk") {
    std::vector<Sample> validation;
    validation.push_back(masked(0.0, 1));                        // hidden label
    validation.push_back(Sample::unlabeled(constant_curve(1.0))); // no label
    const std::vector<int> preds = {0, 0};
    // neither sample is readable; risk must be 0 and no access may throw
    CHECK(ipw_empirical_risk(preds, validation, 0.25) == 0.0);
}

TEST_CASE("IPW risk validates its inputs") {
    std::vector<Sample> validation;
    validation.emplace_back(constant_curve(0.0), 1);
    const std::vector<int> preds = {0};
    CHECK_THROWS_AS(ipw_empirical_risk(preds, validation, 0.0),
                    std::domain_error);
    CHECK_THROWS_AS(ipw_empirical_risk(preds, validation, 1.0),
                    std::domain_error);
    const std::vector<int> wrong_size = {0, 1};
    CHECK_THROWS_AS(ipw_empirical_risk(wrong_size, validation, 0.5),
                    std::invalid_argument);
    const std::vector<Sample> empty;
    const std::vector<int> none;
    CHECK_THROWS_AS(ipw_empirical_risk(none, empty, 0.5),
                    std::invalid_argument);
}

TEST_CASE("oracle error rate counts plain disagreements") {
    std::vector<Sample> samples;
    samples.emplace_back(constant_curve(0.0), 1);
    samples.emplace_back(constant_curve(1.0), 0);
    samples.push_back(masked(2.0, 1)); // oracle still sees the label
    const std::vector<int> preds = {1, 1, 0};
    CHECK(oracle_error_rate(preds, samples) == Catch::Approx(2.0 / 3.0));
}

TEST_CASE("complete-case risk ignores everything unobserved") {
    std::vector<Sample> validation;
    validation.emplace_back(constant_curve(0.0), 1); // observed, right
    validation.emplace_back(constant_curve(1.0), 1); // observed, wrong
    validation.push_back(followed(2.0, 0));          // followed up: ignored
    validation.push_back(masked(3.0, 1));            // hidden: ignored
    const std::vector<int> preds = {1, 0, 1, 0};
    CHECK(complete_case_risk(preds, validation) == 0.5);

    std::vector<Sample> all_hidden;
    all_hidden.push_back(masked(0.0, 1));
    const std::vector<int> one = {0};
    CHECK(complete_case_risk(one, all_hidden) == 0.0);
}

// ---------------------------------------------------------------------------
// bandwidth grid
// ---------------------------------------------------------------------------

TEST_CASE("BandwidthGrid requires positive strictly ascending values") {
    CHECK_NOTHROW(BandwidthGrid({0.1, 0.2, 0.5}));
    CHECK_THROWS_AS(BandwidthGrid(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(BandwidthGrid({0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(BandwidthGrid({0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(BandwidthGrid({0.5, 0.4}), std::invalid_argument);
}

TEST_CASE("default bandwidth grid spans the distance quantiles geometrically") {
    // constant levels {0, 1, 3}: pairwise distances {1, 2, 3};
    // 5%/95% quantiles with linear interpolation: 1.1 and 2.9
    std::vector<Sample> train;
    train.emplace_back(constant_curve(0.0), 1);
    train.emplace_back(constant_curve(1.0), 0);
    train.emplace_back(constant_curve(3.0), 1);

    const BandwidthGrid grid = default_bandwidth_grid(train, 4);
    REQUIRE(grid.values.size() == 4);
    CHECK(grid.values.front() == Catch::Approx(1.1).epsilon(1e-15));
    CHECK(grid.values.back() == Catch::Approx(2.9).epsilon(1e-15));
    CHECK(grid.values[1] == Catch::Approx(1.5195947673206478).epsilon(1e-12));
    CHECK(grid.values[2] == Catch::Approx(2.0992438698802669).epsilon(1e-12));

    const BandwidthGrid one = default_bandwidth_grid(train, 1);
    REQUIRE(one.values.size() == 1);
    CHECK(one.values[0] == Catch::Approx(std::sqrt(1.1 * 2.9)).epsilon(1e-12));
}

TEST_CASE("default bandwidth grid rejects degenerate training sets") {
    std::vector<Sample> single;
    single.emplace_back(constant_curve(0.0), 1);
    CHECK_THROWS_AS(default_bandwidth_grid(single, 5), DegenerateFitError);

    std::vector<Sample> coincident;
    for (int i = 0; i < 4; ++i) coincident.emplace_back(constant_curve(2.0), 1);
    CHECK_THROWS_AS(default_bandwidth_grid(coincident, 5), DegenerateFitError);
}

TEST_CASE("duplicate curves collapse only the low quantile, which is bumped") {
    std::vector<Sample> train;
    for (int i = 0; i < 3; ++i) train.emplace_back(constant_curve(0.0), 1);
    train.emplace_back(constant_curve(5.0), 0);
    // distances: {0, 0, 0, 5, 5, 5} -> q05 = 0 (bumped), q95 = 5
    const BandwidthGrid grid = default_bandwidth_grid(train, 3);
    CHECK(grid.values.front() == Catch::Approx(5e-6).epsilon(1e-12));
    CHECK(grid.values.back() == Catch::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("default bandwidth grid validates quantile arguments") {
    std::vector<Sample> train;
    train.emplace_back(constant_curve(0.0), 1);
    train.emplace_back(constant_curve(1.0), 0);
    CHECK_THROWS_AS(default_bandwidth_grid(train, 5, 0.9, 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(default_bandwidth_grid(train, 0), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// fitted classifiers
// ---------------------------------------------------------------------------

TEST_CASE("fitted variants dispatch to their estimators") {
    MicroFixture f;
    auto train = std::make_shared<std::vector<Sample>>(f.train);
    const auto row = distance_row(f.query, f.train);

    const auto prop = FittedClassifier::proposed(train, f.phi, f.h, f.kernel);
    CHECK(prop.estimate(row) ==
          regression_estimate(row, f.train, f.phi, f.kernel, f.h));
    CHECK(prop.variant() == Variant::Proposed);
    CHECK(prop.h() == f.h);
    CHECK(prop.phi().gamma() == f.phi.gamma());

    const auto cc = FittedClassifier::complete_case(train, f.h, f.kernel);
    CHECK(cc.estimate(row) == nw_complete_case(row, f.train, f.kernel, f.h));
    CHECK_THROWS_AS(cc.phi(), std::logic_error);

    const std::vector<double> responses = {1.0, 0.0, 0.5};
    const auto imp = FittedClassifier::with_responses(
        Variant::ImpMean, train, responses, f.h, f.kernel);
    CHECK(imp.estimate(row) == nw_response(row, responses, f.kernel, f.h));

    // curve-based predict agrees with the row-based one
    CHECK(prop.predict(f.query) == prop.predict(row));
    CHECK(classify_point(f.query, prop) == prop.predict(f.query));
}

TEST_CASE("fitted classifier constructors validate their inputs") {
    MicroFixture f;
    auto train = std::make_shared<std::vector<Sample>>(f.train);
    CHECK_THROWS_AS(FittedClassifier::proposed(train, f.phi, 0.0, f.kernel),
                    std::invalid_argument);
    auto empty = std::make_shared<std::vector<Sample>>();
    CHECK_THROWS_AS(FittedClassifier::complete_case(empty, 1.0, f.kernel),
                    std::invalid_argument);
    const std::vector<double> two = {1.0, 0.0};
    CHECK_THROWS_AS(FittedClassifier::with_responses(Variant::ImpMean, train,
                                                     two, 1.0, f.kernel),
                    std::invalid_argument);
}

// ---------------------------------------------------------------------------
// joint selection
// ---------------------------------------------------------------------------

namespace {

/** Two separated constant-level clusters; labels follow the cluster. */
struct ClusterFixture {
    std::vector<Sample> train;
    std::vector<Sample> validation;
    KernelFn kernel = KernelFn::epanechnikov();

    ClusterFixture() {
        train.emplace_back(constant_curve(0.0), 0);
        train.emplace_back(constant_curve(0.5), 0);
        train.emplace_back(constant_curve(10.0), 1);
        train.emplace_back(constant_curve(10.5), 1);
        validation.emplace_back(constant_curve(0.25), 0);
        validation.emplace_back(constant_curve(10.25), 1);
    }
};

} // namespace

TEST_CASE("singleton selection returns the only candidate with its risk") {
    ClusterFixture f;
    CoverGrid cover;
    cover.candidates.push_back(TiltingFunction::exp_linear(-0.5));
    const BandwidthGrid grid({1.0});
    const auto sel =
        select_phi_h(cover, grid, f.train, f.validation, 0.1, f.kernel);
    CHECK(sel.phi_index == 0);
    CHECK(sel.h_index == 0);

    // recompute the risk independently
    std::vector<int> preds;
    for (const auto& v : f.validation)
        preds.push_back(predict_from_estimate(regression_estimate(
            v.x(), f.train, cover.candidates[0], f.kernel, 1.0)));
    CHECK(sel.risk == ipw_empirical_risk(preds, f.validation, 0.1));
    CHECK(sel.risk == 0.0); // clusters are separable at h = 1
}

TEST_CASE("zero-risk ties break to the smallest h, then the smallest gamma") {
    ClusterFixture f;
    const CoverGrid cover = build_cover_by_count(
        TiltingFunction::Family::ExpLinear, -1.0, 1.0, 3);
    const BandwidthGrid grid({1.0, 2.0});
    // every candidate separates the clusters -> all risks are 0
    const auto sel =
        select_phi_h(cover, grid, f.train, f.validation, 0.1, f.kernel);
    CHECK(sel.risk == 0.0);
    CHECK(grid.values[sel.h_index] == 1.0);
    CHECK(cover.candidates[sel.phi_index].gamma() == -1.0);
}

TEST_CASE("selection outcome is independent of cover iteration order") {
    ClusterFixture f;
    // make the problem non-separable so risks differ across h
    f.train.emplace_back(constant_curve(0.3), 1);
    f.validation.push_back(followed(0.4, 1));

    CoverGrid fwd = build_cover_by_count(
        TiltingFunction::Family::ExpLinear, -2.0, 2.0, 9);
    CoverGrid rev = fwd;
    std::reverse(rev.candidates.begin(), rev.candidates.end());
    const BandwidthGrid grid({0.5, 1.0, 2.0, 4.0});

    const auto a = select_phi_h(fwd, grid, f.train, f.validation, 0.2, f.kernel);
    const auto b = select_phi_h(rev, grid, f.train, f.validation, 0.2, f.kernel);
    CHECK(a.risk == b.risk);
    CHECK(a.h_index == b.h_index);
    // same selected member even though its index moved
    CHECK(fwd.candidates[a.phi_index].gamma() ==
          rev.candidates[b.phi_index].gamma());
}

TEST_CASE("selection validates empty inputs") {
    ClusterFixture f;
    const CoverGrid empty_cover;
    const BandwidthGrid grid({1.0});
    CHECK_THROWS_AS(
        select_phi_h(empty_cover, grid, f.train, f.validation, 0.1, f.kernel),
        std::invalid_argument);
    const CoverGrid cover = build_cover_by_count(
        TiltingFunction::Family::ExpLinear, -1.0, 1.0, 3);
    const std::vector<Sample> no_val;
    CHECK_THROWS_AS(
        select_phi_h(cover, BandwidthGrid({1.0}), f.train, no_val, 0.1,
                     f.kernel),
        std::invalid_argument);
}

TEST_CASE("fit_proposed wraps the selection result") {
    ClusterFixture f;
    auto train = std::make_shared<std::vector<Sample>>(f.train);
    const CoverGrid cover = build_cover_by_count(
        TiltingFunction::Family::ExpLinear, -1.0, 1.0, 5);
    const BandwidthGrid grid({0.7, 1.3});
    const auto sel =
        select_phi_h(cover, grid, *train, f.validation, 0.1, f.kernel);
    const auto fitted =
        fit_proposed(train, f.validation, cover, grid, 0.1, f.kernel);
    CHECK(fitted.h() == grid.values[sel.h_index]);
    CHECK(fitted.phi().gamma() == cover.candidates[sel.phi_index].gamma());
    CHECK(fitted.variant() == Variant::Proposed);
}

// ---------------------------------------------------------------------------
// imputation responses
// ---------------------------------------------------------------------------

TEST_CASE("mean imputation fills hidden responses with the observed mean") {
    std::vector<Sample> train;
    train.emplace_back(constant_curve(0.0), 1);
    train.emplace_back(constant_curve(1.0), 1);
    train.emplace_back(constant_curve(2.0), 0);
    train.emplace_back(constant_curve(3.0), 1);
    train.push_back(masked(4.0, 0));
    train.push_back(masked(5.0, 1));
    const auto r = detail::mean_imputed_responses(train);
    REQUIRE(r.size() == 6);
    CHECK(r[0] == 1.0);
    CHECK(r[1] == 1.0);
    CHECK(r[2] == 0.0);
    CHECK(r[3] == 1.0);
    CHECK(r[4] == 0.75); // observed mean 3/4, regardless of the hidden label
    CHECK(r[5] == 0.75);
}

TEST_CASE("mean imputation requires at least one observed label") {
    std::vector<Sample> train;
    train.push_back(masked(0.0, 1));
    CHECK_THROWS_AS(detail::mean_imputed_responses(train), DegenerateFitError);
}

TEST_CASE("regression imputation uses the complete-case fit at the own curve") {
    std::vector<Sample> train;
    train.emplace_back(constant_curve(0.0), 1);
    train.emplace_back(constant_curve(1.0), 0);
    train.push_back(masked(0.5, 0));
    const KernelFn kernel = KernelFn::epanechnikov();
    const double h = 2.0;
    const auto rows = detail::validation_rows(train, train);
    const auto r = detail::regression_imputed_responses(train, rows, kernel, h);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == 1.0);
    CHECK(r[1] == 0.0);
    // fractional value, no re-thresholding
    CHECK(r[2] == nw_complete_case(rows[2], train, kernel, h));
    CHECK(r[2] > 0.0);
    CHECK(r[2] < 1.0);
}

TEST_CASE("oracle responses read hidden labels but reject unlabeled rows") {
    std::vector<Sample> train;
    train.emplace_back(constant_curve(0.0), 1);
    train.push_back(masked(1.0, 1));
    const auto r = detail::oracle_responses(train);
    CHECK(r[1] == 1.0);

    train.push_back(Sample::unlabeled(constant_curve(2.0)));
    CHECK_THROWS_AS(detail::oracle_responses(train), LabelAccessError);
}

// ---------------------------------------------------------------------------
// baseline fitting
// ---------------------------------------------------------------------------

TEST_CASE("baseline risk mode changes which bandwidth wins") {
    // crafted so the IPW risk prefers h = 1 while the complete-case risk
    // prefers h = 2.8 (the followed-up error dominates under 1/p_n = 10)
    auto train = std::make_shared<std::vector<Sample>>();
    train->emplace_back(constant_curve(0.0), 1);
    train->emplace_back(constant_curve(2.0), 0);
    train->emplace_back(constant_curve(2.2), 0);
    std::vector<Sample> validation;
    validation.emplace_back(constant_curve(0.9), 0); // observed
    validation.push_back(followed(0.4, 1));          // followed up
    const BandwidthGrid grid({1.0, 2.8});
    const KernelFn kernel = KernelFn::epanechnikov();

    const auto ipw = fit_baseline(Variant::CompleteCase, train, validation,
                                  grid, 0.1, kernel, BaselineRisk::Ipw);
    CHECK(ipw.h() == 1.0);
    const auto cc = fit_baseline(Variant::CompleteCase, train, validation,
                                 grid, 0.1, kernel, BaselineRisk::CompleteCase);
    CHECK(cc.h() == 2.8);
}

TEST_CASE("all-data baseline selects by plain validation error") {
    ClusterFixture f;
    auto train = std::make_shared<std::vector<Sample>>(f.train);
    const BandwidthGrid grid({1.0, 3.0});
    const auto all = fit_baseline(Variant::AllData, train, f.validation, grid,
                                  0.1, f.kernel);
    CHECK(all.variant() == Variant::AllData);
    CHECK(all.h() == 1.0); // separable at both; tie breaks to the smaller h
    CHECK(all.predict(constant_curve(0.1)) == 0);
    CHECK(all.predict(constant_curve(10.1)) == 1);
}

TEST_CASE("baselines reject a training split with no observed labels") {
    auto train = std::make_shared<std::vector<Sample>>();
    train->push_back(masked(0.0, 1));
    train->push_back(masked(1.0, 0));
    std::vector<Sample> validation;
    validation.emplace_back(constant_curve(0.5), 1);
    const BandwidthGrid grid({1.0});
    const KernelFn kernel = KernelFn::epanechnikov();
    CHECK_THROWS_AS(fit_baseline(Variant::CompleteCase, train, validation,
                                 grid, 0.1, kernel),
                    DegenerateFitError);
    CHECK_THROWS_AS(fit_baseline(Variant::ImpMean, train, validation, grid,
                                 0.1, kernel),
                    DegenerateFitError);
    // the all-data oracle reads labels through the mask and still works
    CHECK_NOTHROW(fit_baseline(Variant::AllData, train, validation, grid, 0.1,
                               kernel));
}

TEST_CASE("fit_baseline rejects the proposed variant and empty validation") {
    ClusterFixture f;
    auto train = std::make_shared<std::vector<Sample>>(f.train);
    const BandwidthGrid grid({1.0});
    CHECK_THROWS_AS(fit_baseline(Variant::Proposed, train, f.validation, grid,
                                 0.1, f.kernel),
                    std::invalid_argument);
    const std::vector<Sample> no_val;
    CHECK_THROWS_AS(
        fit_baseline(Variant::CompleteCase, train, no_val, grid, 0.1, f.kernel),
        std::invalid_argument);
}

TEST_CASE("variant names match the reporting schema") {
    CHECK(std::string(variant_name(Variant::Proposed)) == "proposed");
    CHECK(std::string(variant_name(Variant::CompleteCase)) == "cc");
    CHECK(std::string(variant_name(Variant::ImpRegression)) == "imp1");
    CHECK(std::string(variant_name(Variant::ImpMean)) == "imp2");
    CHECK(std::string(variant_name(Variant::AllData)) == "all");
}

TEST_CASE("without missingness every variant's estimate coincides exactly") {
    std::vector<Sample> train;
    train.emplace_back(constant_curve(0.0), 1);
    train.emplace_back(constant_curve(0.7), 0);
    train.emplace_back(constant_curve(1.2), 1);
    train.emplace_back(constant_curve(1.8), 0);
    auto shared = std::make_shared<std::vector<Sample>>(train);
    const KernelFn kernel = KernelFn::epanechnikov();
    const double h = 2.5;
    const TiltingFunction phi = TiltingFunction::exp_linear(1.3);

    const auto prop = FittedClassifier::proposed(shared, phi, h, kernel);
    const auto cc = FittedClassifier::complete_case(shared, h, kernel);
    const auto imp1 = FittedClassifier::with_responses(
        Variant::ImpRegression, shared,
        detail::regression_imputed_responses(
            train, detail::validation_rows(train, train), kernel, h),
        h, kernel);
    const auto imp2 = FittedClassifier::with_responses(
        Variant::ImpMean, shared, detail::mean_imputed_responses(train), h,
        kernel);
    const auto all = FittedClassifier::with_responses(
        Variant::AllData, shared, detail::oracle_responses(train), h, kernel);

    for (double level : {0.1, 0.5, 0.9, 1.4, 1.9}) {
        const auto row = distance_row(constant_curve(level), train);
        const double reference = nw_full_data(row, train, kernel, h);
        CHECK(prop.estimate(row) == reference);
        CHECK(cc.estimate(row) == reference);
        CHECK(imp1.estimate(row) == reference);
        CHECK(imp2.estimate(row) == reference);
        CHECK(all.estimate(row) == reference);
    }
}
