/**
 * fmnar command-line interface.
 *
 * Subcommands:
 *   simulate  full Monte Carlo study (models x sample sizes) -> results CSV
 *   run       one (model, n) cell -> results CSV (stdout or file)
 *   verify    brute-force oracle suites -> pass/fail report
 *   fit       train a classifier on a CSV dataset -> JSON model file
 *   predict   apply a JSON model to new curves -> predictions CSV
 */

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <fmnar/fmnar.hpp>
#include <fmnar/verify_suites.hpp>

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// shared experiment options
// ---------------------------------------------------------------------------

struct ConfigOpts {
    double split = 0.3;
    std::size_t grid_count = 500;
    double b_sd = std::sqrt(0.5);
    std::size_t test_size = 1000;
    double cover_lo = -3.0;
    double cover_hi = 3.0;
    std::size_t cover_size = 41;
    std::string cover_family = "exp-linear";
    std::size_t h_count = 20;
    double h_qlo = 0.05;
    double h_qhi = 0.95;
    double pn_override = 0.0; // 0 = use the n-based formula
    std::string baseline_risk = "ipw";
    bool no_missingness = false;
    // selection-model overrides (defaults come from the model preset)
    double gamma0 = 0.0, gamma1 = 0.0, gamma = 0.0;
    std::string phi_family = "exp-linear";
    bool has_gamma0 = false, has_gamma1 = false, has_gamma = false;
};

void add_config_flags(CLI::App* cmd, ConfigOpts& o) {
    cmd->add_option("--split", o.split,
                    "Validation fraction; l = round(split * n)")
        ->check(CLI::Range(0.01, 0.99))
        ->capture_default_str();
    cmd->add_option("--grid-count", o.grid_count,
                    "Points per curve on the [0,1] grid")
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000}))
        ->capture_default_str();
    cmd->add_option("--b-sd", o.b_sd,
                    "Class-1 level-coefficient standard deviation")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--test-size", o.test_size,
                    "Evaluation sample size (stratified halves)")
        ->capture_default_str();
    cmd->add_option("--cover-lo", o.cover_lo, "Cover grid lower gamma")
        ->capture_default_str();
    cmd->add_option("--cover-hi", o.cover_hi, "Cover grid upper gamma")
        ->capture_default_str();
    cmd->add_option("--cover-size", o.cover_size, "Cover grid candidate count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--cover-family", o.cover_family,
                    "Tilting family searched by selection")
        ->check(CLI::IsMember({"exp-linear", "exp-exp", "exp-exp1"}))
        ->capture_default_str();
    cmd->add_option("--h-count", o.h_count, "Bandwidth grid size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--h-qlo", o.h_qlo, "Bandwidth grid lower quantile")
        ->capture_default_str();
    cmd->add_option("--h-qhi", o.h_qhi, "Bandwidth grid upper quantile")
        ->capture_default_str();
    cmd->add_option("--pn-override", o.pn_override,
                    "Follow-up probability (default: 1/(ln(n) n^0.35))");
    cmd->add_option("--baseline-risk", o.baseline_risk,
                    "Risk baselines use to pick h")
        ->check(CLI::IsMember({"ipw", "cc"}))
        ->capture_default_str();
    cmd->add_flag("--no-missingness", o.no_missingness,
                  "Disable masking (oracle check: proposed == all)");
    cmd->add_option("--gamma0", o.gamma0, "Selection model intercept override")
        ->each([&o](const std::string&) { o.has_gamma0 = true; });
    cmd->add_option("--gamma1", o.gamma1, "Selection model slope override")
        ->each([&o](const std::string&) { o.has_gamma1 = true; });
    cmd->add_option("--gamma", o.gamma, "Tilting parameter override")
        ->each([&o](const std::string&) { o.has_gamma = true; });
    cmd->add_option("--phi-family", o.phi_family,
                    "Tilting family used with --gamma")
        ->check(CLI::IsMember({"exp-linear", "exp-exp", "exp-exp1"}))
        ->capture_default_str();
}

fmnar::TiltingFunction::Family parse_family(const std::string& s) {
    if (s == "exp-linear") return fmnar::TiltingFunction::Family::ExpLinear;
    if (s == "exp-exp") return fmnar::TiltingFunction::Family::ExpExp;
    if (s == "exp-exp1") return fmnar::TiltingFunction::Family::ExpExp1;
    throw std::invalid_argument("unknown tilting family: " + s);
}

fmnar::TiltingFunction make_phi(fmnar::TiltingFunction::Family family,
                                double gamma) {
    switch (family) {
    case fmnar::TiltingFunction::Family::ExpLinear:
        return fmnar::TiltingFunction::exp_linear(gamma);
    case fmnar::TiltingFunction::Family::ExpExp:
        return fmnar::TiltingFunction::exp_exp(gamma);
    case fmnar::TiltingFunction::Family::ExpExp1:
        return fmnar::TiltingFunction::exp_exp1(gamma);
    default:
        throw std::invalid_argument("tilting family is not parametric");
    }
}

fmnar::ExperimentConfig build_config(const std::string& model, std::size_t n,
                                     std::size_t reps, std::uint64_t seed,
                                     const ConfigOpts& o) {
    fmnar::ExperimentConfig c;
    c.model = model;
    c.n = n;
    c.replications = reps;
    c.seed = seed;
    c.split_fraction = o.split;
    c.test_size = o.test_size;
    c.curve_params.grid_count = o.grid_count;
    c.curve_params.b_sd = o.b_sd;
    c.cover_family = parse_family(o.cover_family);
    c.cover_lo = o.cover_lo;
    c.cover_hi = o.cover_hi;
    c.cover_size = o.cover_size;
    c.h_count = o.h_count;
    c.h_qlo = o.h_qlo;
    c.h_qhi = o.h_qhi;
    c.baseline_risk = o.baseline_risk == "ipw" ? fmnar::BaselineRisk::Ipw
                                               : fmnar::BaselineRisk::CompleteCase;
    c.missingness_disabled = o.no_missingness;
    if (o.pn_override > 0.0) c.pn_override = o.pn_override;
    if (o.has_gamma0 || o.has_gamma1 || o.has_gamma) {
        fmnar::SelectionModel m = c.selection_model();
        if (o.has_gamma0) m.gamma0 = o.gamma0;
        if (o.has_gamma1) m.gamma1 = o.gamma1;
        if (o.has_gamma)
            m.phi = make_phi(parse_family(o.phi_family), o.gamma);
        c.selection_override = m;
    }
    return c;
}

// ---------------------------------------------------------------------------
// simulate / run
// ---------------------------------------------------------------------------

int run_cells(const std::vector<std::string>& models,
              const std::vector<std::size_t>& ns, std::size_t reps,
              std::uint64_t seed, const ConfigOpts& opts,
              const std::string& out_path) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file)
            throw std::runtime_error("cannot open output file: " + out_path);
        out = &file;
    }

    bool first = true;
    for (const auto& model : models) {
        for (std::size_t n : ns) {
            const fmnar::ExperimentConfig config =
                build_config(model, n, reps, seed, opts);
            std::cerr << "cell model=" << model << " n=" << n
                      << " reps=" << reps << " ... " << std::flush;
            const auto t0 = std::chrono::steady_clock::now();
            const fmnar::CellResult cell = fmnar::run_experiment(config);
            const auto t1 = std::chrono::steady_clock::now();
            const double secs =
                std::chrono::duration<double>(t1 - t0).count();
            std::cerr << "done in " << fmnar::format_sig6(secs) << "s (proposed "
                      << fmnar::format_sig6(
                             cell.mean_error[0])
                      << ")\n";
            if (first) {
                fmnar::write_cell_comments(*out, config);
                *out << fmnar::kResultCsvHeader << "\n";
                first = false;
            }
            fmnar::write_cell_rows(*out, cell);
        }
    }
    if (!out_path.empty())
        std::cerr << "wrote " << out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int run_verify(std::uint64_t seed, std::size_t worlds, std::size_t ipw_instances,
               std::size_t ipw_resamples, std::size_t sign_count,
               std::size_t invariant_count, std::size_t argmin_instances,
               std::size_t consistency_seeds) {
    struct Entry {
        const char* name;
        fmnar::SuiteResult result;
    };
    const std::vector<Entry> entries = {
        {"lemma1-representation",
         fmnar::verify_lemma1(worlds, seed)},
        {"ipw-unbiasedness",
         fmnar::verify_ipw_unbiasedness(ipw_instances, ipw_resamples, seed + 1)},
        {"sign-equivalence",
         fmnar::verify_sign_equivalence(sign_count, seed + 2)},
        {"estimator-invariants",
         fmnar::verify_estimator_invariants(invariant_count, seed + 3)},
        {"selection-argmin",
         fmnar::verify_argmin(argmin_instances, seed + 4)},
        {"mc-consistency",
         fmnar::verify_mc_consistency(consistency_seeds, seed + 5)},
    };
    std::size_t failed = 0;
    for (const auto& e : entries) {
        std::cout << (e.result.pass ? "PASS" : "FAIL") << " " << e.name << ": "
                  << e.result.detail << "\n";
        if (!e.result.pass) ++failed;
    }
    std::cout << (entries.size() - failed) << "/" << entries.size()
              << " suites passed\n";
    return failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// fit / predict
// ---------------------------------------------------------------------------

const char* tilting_family_name(fmnar::TiltingFunction::Family f) {
    switch (f) {
    case fmnar::TiltingFunction::Family::ExpLinear: return "exp-linear";
    case fmnar::TiltingFunction::Family::ExpExp:    return "exp-exp";
    case fmnar::TiltingFunction::Family::ExpExp1:   return "exp-exp1";
    default:                                        return "tabulated";
    }
}

json kernel_to_json(const fmnar::KernelFn& k) {
    if (k.is_epanechnikov()) return json{{"family", "epanechnikov"}};
    return json{{"family", "compact-polynomial"},
                {"coeffs", k.coeffs()},
                {"powers", k.powers()}};
}

fmnar::KernelFn kernel_from_json(const json& j) {
    const std::string family = j.at("family").get<std::string>();
    if (family == "epanechnikov") return fmnar::KernelFn::epanechnikov();
    if (family == "compact-polynomial")
        return fmnar::KernelFn::compact_polynomial(
            j.at("coeffs").get<std::vector<double>>(),
            j.at("powers").get<std::vector<double>>());
    throw std::runtime_error("model file: unknown kernel family " + family);
}

fmnar::Variant parse_variant(const std::string& s) {
    if (s == "proposed") return fmnar::Variant::Proposed;
    if (s == "cc") return fmnar::Variant::CompleteCase;
    if (s == "imp1") return fmnar::Variant::ImpRegression;
    if (s == "imp2") return fmnar::Variant::ImpMean;
    if (s == "all") return fmnar::Variant::AllData;
    throw std::invalid_argument("unknown variant: " + s);
}

int run_fit(const std::string& data_path, const std::string& out_path,
            const std::string& variant_str, std::uint64_t seed,
            const ConfigOpts& opts) {
    std::ifstream in(data_path);
    if (!in) throw std::runtime_error("cannot open dataset: " + data_path);
    std::vector<fmnar::Sample> samples = fmnar::read_dataset_csv(in);
    const std::size_t n = samples.size();
    if (n < 4)
        throw std::runtime_error("dataset too small: need at least 4 samples");

    const std::size_t l = static_cast<std::size_t>(
        std::llround(opts.split * static_cast<double>(n)));
    const std::size_t m = n - l;
    if (m < 2 || l < 2)
        throw std::runtime_error("split leaves fewer than 2 samples per part");

    fmnar::Rng rng(seed);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
        std::swap(idx[i], idx[j]);
    }
    auto train = std::make_shared<std::vector<fmnar::Sample>>();
    std::vector<fmnar::Sample> validation;
    for (std::size_t i = 0; i < m; ++i) train->push_back(samples[idx[i]]);
    for (std::size_t i = m; i < n; ++i) validation.push_back(samples[idx[i]]);

    const double p_n =
        opts.pn_override > 0.0 ? opts.pn_override : fmnar::followup_rate(n);
    fmnar::draw_followups(validation, p_n, rng);

    const fmnar::KernelFn kernel = fmnar::KernelFn::epanechnikov();
    const fmnar::BandwidthGrid grid = fmnar::default_bandwidth_grid(
        *train, opts.h_count, opts.h_qlo, opts.h_qhi);
    const fmnar::Variant variant = parse_variant(variant_str);

    std::optional<fmnar::FittedClassifier> fitted;
    if (variant == fmnar::Variant::Proposed) {
        const fmnar::CoverGrid cover = fmnar::build_cover_by_count(
            parse_family(opts.cover_family), opts.cover_lo, opts.cover_hi,
            opts.cover_size);
        const auto sel = fmnar::select_phi_h(cover, grid, *train, validation,
                                             p_n, kernel);
        fitted.emplace(fmnar::FittedClassifier::proposed(
            train, cover.candidates[sel.phi_index], grid.values[sel.h_index],
            kernel));
        std::cerr << "selected gamma=" << cover.candidates[sel.phi_index].gamma()
                  << " h=" << grid.values[sel.h_index]
                  << " validation risk=" << sel.risk << "\n";
    } else {
        try {
            fitted.emplace(fmnar::fit_baseline(
                variant, train, validation, grid, p_n, kernel,
                opts.baseline_risk == "ipw"
                    ? fmnar::BaselineRisk::Ipw
                    : fmnar::BaselineRisk::CompleteCase));
        } catch (const fmnar::LabelAccessError&) {
            throw std::runtime_error(
                "variant '" + variant_str +
                "' needs a response for every training sample; the dataset "
                "contains unlabeled rows");
        }
        std::cerr << "selected h=" << fitted->h() << "\n";
    }

    json model;
    model["format"] = "fmnar-model";
    model["version"] = 1;
    model["variant"] = fmnar::variant_name(fitted->variant());
    model["h"] = fitted->h();
    model["kernel"] = kernel_to_json(kernel);
    model["grid_count"] = (*train)[0].x().grid_count();
    if (variant == fmnar::Variant::Proposed) {
        const auto& phi = fitted->phi();
        json pj;
        pj["family"] = tilting_family_name(phi.family());
        if (phi.family() == fmnar::TiltingFunction::Family::Tabulated) {
            pj["phi0"] = phi.at0();
            pj["phi1"] = phi.at1();
        } else {
            pj["gamma"] = phi.gamma();
        }
        model["phi"] = pj;
    } else if (variant != fmnar::Variant::CompleteCase) {
        // imputation / oracle variants carry their completed responses
        const std::vector<double> responses = [&]() {
            switch (variant) {
            case fmnar::Variant::AllData:
                return fmnar::detail::oracle_responses(*train);
            case fmnar::Variant::ImpMean:
                return fmnar::detail::mean_imputed_responses(*train);
            default: {
                const auto rows = fmnar::detail::validation_rows(*train, *train);
                return fmnar::detail::regression_imputed_responses(
                    *train, rows, kernel, fitted->h());
            }
            }
        }();
        model["responses"] = responses;
    }
    json train_json = json::array();
    for (const auto& s : *train) {
        json row;
        row["y"] = s.has_label() ? json(s.oracle_label()) : json(nullptr);
        row["delta"] = s.observed() ? 1 : 0;
        row["x"] = s.x().values();
        train_json.push_back(std::move(row));
    }
    model["train"] = std::move(train_json);

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << model.dump(1, '\t') << "\n";
    std::cerr << "wrote " << out_path << "\n";
    return 0;
}

int run_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path) {
    std::ifstream mf(model_path);
    if (!mf) throw std::runtime_error("cannot open model file: " + model_path);
    json model;
    mf >> model;
    if (model.value("format", "") != "fmnar-model")
        throw std::runtime_error("not a model file: " + model_path);

    const fmnar::KernelFn kernel = kernel_from_json(model.at("kernel"));
    const double h = model.at("h").get<double>();
    const std::size_t grid_count = model.at("grid_count").get<std::size_t>();
    const fmnar::Variant variant =
        parse_variant(model.at("variant").get<std::string>());

    auto train = std::make_shared<std::vector<fmnar::Sample>>();
    for (const auto& row : model.at("train")) {
        fmnar::Curve x(row.at("x").get<std::vector<double>>());
        if (x.grid_count() != grid_count)
            throw std::runtime_error("model file: inconsistent grid_count");
        if (row.at("y").is_null()) {
            train->push_back(fmnar::Sample::unlabeled(std::move(x)));
        } else {
            fmnar::Sample s(std::move(x), row.at("y").get<int>());
            s.set_delta(row.at("delta").get<int>() == 1);
            train->push_back(std::move(s));
        }
    }

    std::optional<fmnar::FittedClassifier> fitted;
    switch (variant) {
    case fmnar::Variant::Proposed: {
        const json& pj = model.at("phi");
        const std::string family = pj.at("family").get<std::string>();
        fmnar::TiltingFunction phi =
            family == "tabulated"
                ? fmnar::TiltingFunction::tabulated(pj.at("phi0").get<double>(),
                                                    pj.at("phi1").get<double>())
                : make_phi(parse_family(family), pj.at("gamma").get<double>());
        fitted.emplace(
            fmnar::FittedClassifier::proposed(train, std::move(phi), h, kernel));
        break;
    }
    case fmnar::Variant::CompleteCase:
        fitted.emplace(fmnar::FittedClassifier::complete_case(train, h, kernel));
        break;
    default:
        fitted.emplace(fmnar::FittedClassifier::with_responses(
            variant, train, model.at("responses").get<std::vector<double>>(), h,
            kernel));
        break;
    }

    std::ifstream in(data_path);
    if (!in) throw std::runtime_error("cannot open dataset: " + data_path);
    const std::vector<fmnar::Curve> curves =
        fmnar::read_prediction_csv(in, grid_count);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file)
            throw std::runtime_error("cannot open output file: " + out_path);
        out = &file;
    }
    *out << "prediction,estimate\n";
    for (const auto& x : curves) {
        const double est = fitted->estimate(x);
        *out << fmnar::predict_from_estimate(est) << ","
             << fmnar::format_sig6(est) << "\n";
    }
    if (!out_path.empty())
        std::cerr << "wrote " << out_path << " (" << curves.size() << " rows)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kernel classification of functional covariates under "
                 "nonignorable label missingness"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand(
        "simulate", "Run the full Monte Carlo study grid to a CSV file");
    std::vector<std::string> sim_models{"i", "ii"};
    std::vector<std::size_t> sim_ns{50, 100, 200};
    std::size_t sim_reps = 400;
    std::uint64_t sim_seed = 7;
    std::string sim_out;
    ConfigOpts sim_opts;
    sim->add_option("--model", sim_models,
                    "Masking models to run: i, ii (repeatable or "
                    "comma-separated; 'both' expands to i,ii)")
        ->delimiter(',');
    sim->add_option("--n", sim_ns, "Training sample sizes")->delimiter(',');
    sim->add_option("--reps", sim_reps, "Replications per cell")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--seed", sim_seed, "Master seed")->capture_default_str();
    sim->add_option("--out", sim_out, "Output CSV path")->required();
    add_config_flags(sim, sim_opts);

    // run
    auto* runc = app.add_subcommand("run", "Run a single (model, n) cell");
    std::string run_model = "i";
    std::size_t run_n = 100;
    std::size_t run_reps = 10;
    std::uint64_t run_seed = 7;
    std::string run_out;
    ConfigOpts run_opts;
    runc->add_option("--model", run_model, "Masking model: i or ii")
        ->check(CLI::IsMember({"i", "ii"}))
        ->capture_default_str();
    runc->add_option("--n", run_n, "Training sample size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    runc->add_option("--reps", run_reps, "Replications")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    runc->add_option("--seed", run_seed, "Master seed")->capture_default_str();
    runc->add_option("--out", run_out, "Output CSV path (default: stdout)");
    add_config_flags(runc, run_opts);

    // verify
    auto* ver = app.add_subcommand("verify", "Run the oracle verification suites");
    std::uint64_t ver_seed = 99;
    std::size_t ver_worlds = 1000, ver_ipw_instances = 20,
                ver_ipw_resamples = 2000, ver_sign = 10000,
                ver_invariants = 100000, ver_argmin = 50, ver_consistency = 60;
    ver->add_option("--seed", ver_seed, "Suite seed")->capture_default_str();
    ver->add_option("--worlds", ver_worlds, "Randomized discrete worlds")
        ->capture_default_str();
    ver->add_option("--ipw-instances", ver_ipw_instances,
                    "Fixed-classifier instances for the unbiasedness check")
        ->capture_default_str();
    ver->add_option("--ipw-resamples", ver_ipw_resamples,
                    "Validation resamples per instance")
        ->capture_default_str();
    ver->add_option("--sign-count", ver_sign, "Sign-equivalence fuzz count")
        ->capture_default_str();
    ver->add_option("--invariant-count", ver_invariants,
                    "Estimator-invariant fuzz count")
        ->capture_default_str();
    ver->add_option("--argmin-instances", ver_argmin,
                    "Selection cross-check instances")
        ->capture_default_str();
    ver->add_option("--consistency-seeds", ver_consistency,
                    "Seeds for the consistency check")
        ->capture_default_str();

    // fit
    auto* fit = app.add_subcommand("fit", "Fit a classifier on a CSV dataset");
    std::string fit_data, fit_out, fit_variant = "proposed";
    std::uint64_t fit_seed = 1;
    ConfigOpts fit_opts;
    fit->add_option("--data", fit_data, "Input dataset CSV (y,delta,v0..)")
        ->required();
    fit->add_option("--out", fit_out, "Output model JSON path")->required();
    fit->add_option("--variant", fit_variant, "Classifier variant")
        ->check(CLI::IsMember({"proposed", "cc", "imp1", "imp2", "all"}))
        ->capture_default_str();
    fit->add_option("--seed", fit_seed, "Seed for split and follow-up draws")
        ->capture_default_str();
    add_config_flags(fit, fit_opts);

    // predict
    auto* pred = app.add_subcommand("predict",
                                    "Apply a JSON model to new curves");
    std::string pred_model, pred_data, pred_out;
    pred->add_option("--model-file", pred_model, "Model JSON from `fit`")
        ->required();
    pred->add_option("--data", pred_data,
                     "Curves CSV (bare value rows or y,delta,v0.. rows)")
        ->required();
    pred->add_option("--out", pred_out, "Output CSV path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the message and usage hint
        return 2;
    }

    try {
        if (sim->parsed()) {
            std::vector<std::string> models;
            for (const auto& m : sim_models) {
                if (m == "both") {
                    models.push_back("i");
                    models.push_back("ii");
                } else if (m == "i" || m == "ii") {
                    models.push_back(m);
                } else {
                    throw std::invalid_argument("unknown model: " + m);
                }
            }
            return run_cells(models, sim_ns, sim_reps, sim_seed, sim_opts,
                             sim_out);
        }
        if (runc->parsed())
            return run_cells({run_model}, {run_n}, run_reps, run_seed, run_opts,
                             run_out);
        if (ver->parsed())
            return run_verify(ver_seed, ver_worlds, ver_ipw_instances,
                              ver_ipw_resamples, ver_sign, ver_invariants,
                              ver_argmin, ver_consistency);
        if (fit->parsed())
            return run_fit(fit_data, fit_out, fit_variant, fit_seed, fit_opts);
        if (pred->parsed())
            return run_predict(pred_model, pred_data, pred_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
