/**
 * Missingness machinery: tilting functions, the label-selection model,
 * masked samples with access-controlled labels, follow-up subsampling,
 * and the finite cover of the tilting family used by model selection.
 *
 * Selection probability (nonignorable, logistic in form):
 *
 *   P(Delta = 1 | x, y) = 1 / (1 + exp{g(x)} * phi(y)),
 *   g(x) = gamma0 + gamma1 * log( int_0^1 x(t)^2 dt ).
 *
 * The probability depends on the (possibly unobserved) response y through
 * the tilting function phi, which is why complete-case estimators are
 * biased and the corrected estimator needs a candidate phi.
 *
 * Label hygiene: Sample hides the response behind accessors. Estimation
 * code may read it only when delta = 1 (observed_label) or when the sample
 * was followed up (revealed_label); anything else throws LabelAccessError.
 * oracle_label() bypasses the mask and exists for exactly two sanctioned
 * readers: harness evaluation on test data and the all-data reference
 * classifier.
 */

#ifndef FMNAR_MNAR_HPP
#define FMNAR_MNAR_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace fmnar {

/**
 * Positive bounded tilting function on y in [0, 1]. Families:
 *
 *   exp_linear(g):  phi(y) = exp(g * y)                 (phi(0) = 1)
 *   exp_exp(g):     phi(y) = exp(exp(y * sqrt(g)))      (g >= 0, phi(0) = e)
 *   exp_exp1(g):    phi(y) = exp(exp(y * sqrt(g)) - 1)  (g >= 0, phi(0) = 1)
 *   tabulated(p0, p1): values at y = 0 / y = 1, linear in between
 *
 * exp_exp1 is exp_exp rescaled so phi(0) = 1; the selection model is only
 * identified up to a scale of phi absorbed into gamma0, and the rescaled
 * family is the one whose preset missing rates land near 40%.
 */
class TiltingFunction {
public:
    enum class Family : std::uint8_t { ExpLinear, ExpExp, ExpExp1, Tabulated };

    static TiltingFunction exp_linear(double gamma) {
        return TiltingFunction(Family::ExpLinear, gamma,
                               1.0, std::exp(gamma));
    }

    static TiltingFunction exp_exp(double gamma) {
        require_nonneg(gamma);
        const double r = std::sqrt(gamma);
        return TiltingFunction(Family::ExpExp, gamma,
                               std::exp(1.0), std::exp(std::exp(r)));
    }

    static TiltingFunction exp_exp1(double gamma) {
        require_nonneg(gamma);
        const double r = std::sqrt(gamma);
        return TiltingFunction(Family::ExpExp1, gamma,
                               1.0, std::exp(std::exp(r) - 1.0));
    }

    static TiltingFunction tabulated(double phi0, double phi1) {
        if (!(phi0 > 0.0) || !(phi1 > 0.0))
            throw std::invalid_argument("TiltingFunction: values must be > 0");
        return TiltingFunction(Family::Tabulated, 0.0, phi0, phi1);
    }

    /** Evaluate at y in [0, 1]. Binary responses only ever use 0 and 1. */
    double operator()(double y) const {
        if (y < 0.0 || y > 1.0)
            throw std::domain_error("TiltingFunction: y outside [0, 1]");
        switch (family_) {
        case Family::ExpLinear: return std::exp(gamma_ * y);
        case Family::ExpExp:    return std::exp(std::exp(y * std::sqrt(gamma_)));
        case Family::ExpExp1:   return std::exp(std::exp(y * std::sqrt(gamma_)) - 1.0);
        case Family::Tabulated: return at0_ + y * (at1_ - at0_);
        }
        return 0.0; // unreachable
    }

    double at0() const { return at0_; }
    double at1() const { return at1_; }
    double gamma() const { return gamma_; }
    Family family() const { return family_; }

    /** Upper bound B with phi(y) in (0, B] over y in [0, 1]. */
    double bound() const { return at0_ > at1_ ? at0_ : at1_; }

private:
    TiltingFunction(Family f, double g, double v0, double v1)
        : family_(f), gamma_(g), at0_(v0), at1_(v1) {}

    static void require_nonneg(double gamma) {
        if (gamma < 0.0)
            throw std::invalid_argument(
                "TiltingFunction: exp-exp family needs gamma >= 0");
    }

    Family family_;
    double gamma_;
    double at0_, at1_; // cached phi(0), phi(1) — hot in estimator loops
};

/**
 * One (curve, response) pair with missingness flags.
 *
 *   delta    = 1 when the response was observed.
 *   followup = 1 when the follow-up subsample revealed the response
 *              (meaningful only when delta = 0; drawn for validation data).
 *
 * The response is readable iff delta = 1 or (1 - delta) * followup = 1.
 */
class Sample {
public:
    Sample(Curve x, int y)
        : x_(std::move(x)), y_(check_label(y)), has_label_(true) {}

    /** A sample whose response is unknown even to the oracle (delta = 0). */
    static Sample unlabeled(Curve x) {
        Sample s(std::move(x));
        return s;
    }

    const Curve& x() const { return x_; }

    bool observed() const { return delta_; }
    bool followed_up() const { return !delta_ && followup_; }
    bool label_revealed() const { return delta_ || followed_up(); }
    bool followup_flag() const { return followup_; }

    /** Response if observed (delta = 1), otherwise nullopt. */
    std::optional<int> observed_label() const {
        if (delta_) return static_cast<int>(y_);
        return std::nullopt;
    }

    /** Response when the mechanism revealed it; LabelAccessError otherwise. */
    int revealed_label() const {
        if (!label_revealed())
            throw LabelAccessError("Sample: response not revealed");
        return static_cast<int>(y_);
    }

    /**
     * True response regardless of masking. Sanctioned readers: test-set
     * evaluation in the harness and the all-data reference classifier.
     */
    int oracle_label() const {
        if (!has_label_)
            throw LabelAccessError("Sample: no response recorded");
        return static_cast<int>(y_);
    }

    bool has_label() const { return has_label_; }

    void set_delta(bool d) {
        if (d && !has_label_)
            throw std::invalid_argument("Sample: cannot observe a missing response");
        delta_ = d;
    }
    void set_followup(bool f) { followup_ = f; }

private:
    explicit Sample(Curve x)
        : x_(std::move(x)), y_(0), has_label_(false), delta_(false) {}

    static int check_label(int y) {
        if (y != 0 && y != 1)
            throw std::invalid_argument("Sample: response must be 0 or 1");
        return y;
    }

    Curve x_;
    std::int8_t y_;
    bool has_label_ = true;
    bool delta_ = true;
    bool followup_ = false;
};

/** Selection model: gamma0, gamma1 and the true tilting function. */
struct SelectionModel {
    double gamma0 = 0.0;
    double gamma1 = 0.0;
    TiltingFunction phi = TiltingFunction::exp_linear(0.0);

    /** Model (i): (0.03, 0.02), phi(y) = exp(-0.8 y). */
    static SelectionModel model_i() {
        return {0.03, 0.02, TiltingFunction::exp_linear(-0.8)};
    }

    /** Model (ii): (-0.21, -1.2), phi(y) = exp(exp(y sqrt(0.2)) - 1). */
    static SelectionModel model_ii() {
        return {-0.21, -1.2, TiltingFunction::exp_exp1(0.2)};
    }
};

/** g(x) = gamma0 + gamma1 * log(int x^2); domain error if the integral is 0. */
inline double selection_index(const SelectionModel& m, const Curve& x) {
    const double s = squared_integral(x);
    if (!(s > 0.0))
        throw std::domain_error("selection_index: curve has zero L2 norm");
    return m.gamma0 + m.gamma1 * std::log(s);
}

/** P(Delta = 1 | x, y) = 1 / (1 + e^{g(x)} phi(y)); always in (0, 1]. */
inline double selection_prob(const SelectionModel& m, const Curve& x, int y) {
    const double g = selection_index(m, x);
    const double p = 1.0 / (1.0 + std::exp(g) * m.phi(static_cast<double>(y)));
    return p;
}

/** Draw Delta_i ~ Bernoulli(pi(x_i, y_i)) for every sample, in order. */
inline void apply_mnar(std::vector<Sample>& data, const SelectionModel& m,
                       Rng& rng) {
    for (auto& s : data) {
        const double p = selection_prob(m, s.x(), s.oracle_label());
        s.set_delta(rng.bernoulli(p));
    }
}

/**
 * Follow-up probability p_n = 1 / (ln(n) * n^0.35).
 * Domain: n >= 3 (the formula exceeds 1 for n = 2, which would not be a
 * probability), enforced with a domain error.
 */
inline double followup_rate(std::size_t n) {
    if (n < 3)
        throw std::domain_error("followup_rate: need n >= 3");
    const double nd = static_cast<double>(n);
    return 1.0 / (std::log(nd) * std::pow(nd, 0.35));
}

/**
 * Draw delta_i ~ Bernoulli(p_n) for every sample, in order. The flag is
 * drawn for all samples; only (1 - Delta) * delta = 1 reveals a response.
 * Samples with no recorded response never get the flag (nothing to reveal).
 */
inline void draw_followups(std::vector<Sample>& data, double p_n, Rng& rng) {
    if (!(p_n > 0.0) || !(p_n < 1.0))
        throw std::domain_error("draw_followups: p_n outside (0, 1)");
    for (auto& s : data) {
        const bool f = rng.bernoulli(p_n);
        s.set_followup(f && s.has_label());
    }
}

/** Finite cover of a tilting family; gap between neighbours <= epsilon. */
struct CoverGrid {
    std::vector<TiltingFunction> candidates;
    double epsilon = 0.0;
};

/**
 * Build an epsilon-cover of {phi_gamma : gamma in [gamma_lo, gamma_hi]} in
 * sup norm over the binary response domain {0, 1} (the only points a binary
 * study evaluates phi at). For every parametric family here phi_gamma(0) is
 * constant in gamma, so the distance between members is |phi_g(1) -
 * phi_g'(1)| and a grid uniform in u = phi_gamma(1) has neighbour gaps
 * exactly diam / (count - 1) <= epsilon. A single midpoint candidate
 * suffices when the family diameter is <= epsilon.
 */
inline CoverGrid build_cover(TiltingFunction::Family family, double gamma_lo,
                             double gamma_hi, double epsilon) {
    if (!(epsilon > 0.0))
        throw std::invalid_argument("build_cover: epsilon must be > 0");
    if (!(gamma_lo <= gamma_hi))
        throw std::invalid_argument("build_cover: empty gamma range");

    auto make = [&](double g) {
        switch (family) {
        case TiltingFunction::Family::ExpLinear:
            return TiltingFunction::exp_linear(g);
        case TiltingFunction::Family::ExpExp:
            return TiltingFunction::exp_exp(g);
        case TiltingFunction::Family::ExpExp1:
            return TiltingFunction::exp_exp1(g);
        default:
            throw std::invalid_argument("build_cover: family not parametric");
        }
    };
    auto gamma_of_u = [&](double u) {
        switch (family) {
        case TiltingFunction::Family::ExpLinear:
            return std::log(u);
        case TiltingFunction::Family::ExpExp: {
            const double r = std::log(std::log(u));
            return r * r;
        }
        default: { // ExpExp1
            const double r = std::log(std::log(u) + 1.0);
            return r * r;
        }
        }
    };

    const double u_lo = make(gamma_lo).at1();
    const double u_hi = make(gamma_hi).at1();
    const double diam = u_hi - u_lo; // at1 is increasing in gamma

    CoverGrid cover;
    cover.epsilon = epsilon;
    if (diam <= epsilon) {
        cover.candidates.push_back(make(gamma_of_u(0.5 * (u_lo + u_hi))));
        return cover;
    }
    const std::size_t count =
        static_cast<std::size_t>(std::ceil(diam / epsilon)) + 1;
    cover.candidates.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = u_lo + (u_hi - u_lo) * static_cast<double>(i) /
                                    static_cast<double>(count - 1);
        cover.candidates.push_back(
            i == 0 ? make(gamma_lo)
                   : (i + 1 == count ? make(gamma_hi) : make(gamma_of_u(u))));
    }
    return cover;
}

/**
 * Cover with a fixed candidate count, equi-spaced in gamma (the default
 * protocol: 41 candidates on [-3, 3] for the exp-linear family). epsilon is
 * recorded as the realized maximal neighbour gap in sup norm.
 */
inline CoverGrid build_cover_by_count(TiltingFunction::Family family,
                                      double gamma_lo, double gamma_hi,
                                      std::size_t count) {
    if (count == 0)
        throw std::invalid_argument("build_cover_by_count: count must be >= 1");
    if (!(gamma_lo <= gamma_hi))
        throw std::invalid_argument("build_cover_by_count: empty gamma range");

    auto make = [&](double g) {
        switch (family) {
        case TiltingFunction::Family::ExpLinear:
            return TiltingFunction::exp_linear(g);
        case TiltingFunction::Family::ExpExp:
            return TiltingFunction::exp_exp(g);
        case TiltingFunction::Family::ExpExp1:
            return TiltingFunction::exp_exp1(g);
        default:
            throw std::invalid_argument(
                "build_cover_by_count: family not parametric");
        }
    };

    CoverGrid cover;
    cover.candidates.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double g =
            count == 1 ? 0.5 * (gamma_lo + gamma_hi)
                       : gamma_lo + (gamma_hi - gamma_lo) *
                                        static_cast<double>(i) /
                                        static_cast<double>(count - 1);
        cover.candidates.push_back(make(g));
    }
    double eps = 0.0;
    for (std::size_t i = 1; i < cover.candidates.size(); ++i) {
        const double gap0 =
            std::fabs(cover.candidates[i].at0() - cover.candidates[i - 1].at0());
        const double gap1 =
            std::fabs(cover.candidates[i].at1() - cover.candidates[i - 1].at1());
        eps = std::max(eps, std::max(gap0, gap1));
    }
    cover.epsilon = eps;
    return cover;
}

} // namespace fmnar

#endif // FMNAR_MNAR_HPP
