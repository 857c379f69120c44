/**
 * Brute-force oracles for the test suite. None of this is used by the
 * production pipeline; it exists so estimator results can be checked
 * against independent exact computations.
 *
 * DiscreteWorld: a finite covariate distribution (atoms embedded as
 * constant curves, so the L2 metric reproduces atom separation exactly)
 * with explicit conditional label probabilities and the logistic-type
 * selection model evaluated per (atom, y). Everything about it can be
 * enumerated: the true regression function, the representation built from
 * (eta, psi), and the exact conditional error of any fixed prediction rule.
 */

#ifndef FMNAR_ORACLE_HPP
#define FMNAR_ORACLE_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "classifier.hpp"
#include "curve.hpp"
#include "estimators.hpp"
#include "mnar.hpp"
#include "rng.hpp"

namespace fmnar {

class DiscreteWorld {
public:
    struct Atom {
        double prob;   // P(X = atom)
        double p_y1;   // P(Y = 1 | atom)
        double g;      // selection index g(atom)
        Curve x;       // constant-curve embedding
    };

    /**
     * Build a world from atom levels (constant curve values), atom
     * probabilities, conditional label probabilities, and a selection
     * model (gamma0, gamma1, phi) applied through g = gamma0 +
     * gamma1 * log(int x^2) exactly as the estimators see it.
     */
    DiscreteWorld(std::span<const double> levels, std::span<const double> probs,
                  std::span<const double> p_y1, const SelectionModel& model,
                  std::size_t grid_count = 25)
        : phi_(model.phi) {
        if (levels.size() != probs.size() || levels.size() != p_y1.size())
            throw std::invalid_argument("DiscreteWorld: length mismatch");
        if (levels.empty())
            throw std::invalid_argument("DiscreteWorld: no atoms");
        double total = 0.0;
        for (std::size_t j = 0; j < levels.size(); ++j) {
            if (probs[j] < 0.0)
                throw std::invalid_argument("DiscreteWorld: negative probability");
            if (p_y1[j] < 0.0 || p_y1[j] > 1.0)
                throw std::invalid_argument("DiscreteWorld: conditional outside [0,1]");
            Curve x = Curve::sample([&](double) { return levels[j]; }, grid_count);
            const double g = selection_index(model, x);
            atoms_.push_back(Atom{probs[j], p_y1[j], g, std::move(x)});
            total += probs[j];
        }
        if (std::fabs(total - 1.0) > 1e-9)
            throw std::invalid_argument("DiscreteWorld: probabilities must sum to 1");
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    const TiltingFunction& phi() const { return phi_; }

    /** P(Delta = 1 | atom j, y) = 1 / (1 + e^{g_j} phi(y)). */
    double pi(std::size_t j, int y) const {
        const Atom& a = at(j);
        return 1.0 / (1.0 + std::exp(a.g) * phi_(static_cast<double>(y)));
    }

    /**
     * Draw one masked sample: atom ~ probs, y ~ p_y1, Delta ~ pi.
     * When atom_index_out is given it receives the drawn atom's index.
     */
    Sample draw(Rng& rng, std::size_t* atom_index_out = nullptr) const {
        double u = rng.random();
        std::size_t j = 0;
        for (; j + 1 < atoms_.size(); ++j) {
            if (u < atoms_[j].prob) break;
            u -= atoms_[j].prob;
        }
        if (atom_index_out) *atom_index_out = j;
        const int y = rng.bernoulli(atoms_[j].p_y1) ? 1 : 0;
        Sample s(atoms_[j].x, y);
        s.set_delta(rng.bernoulli(pi(j, y)));
        return s;
    }

    /** Smallest pairwise distance between distinct atom curves. */
    double min_gap() const {
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < atoms_.size(); ++i)
            for (std::size_t j = i + 1; j < atoms_.size(); ++j)
                gap = std::min(gap, l2_distance(atoms_[i].x, atoms_[j].x));
        return gap;
    }

    /**
     * Exact conditional error of fixed per-atom predictions:
     * sum_j prob_j [ p_y1_j 1{pred_j = 0} + (1 - p_y1_j) 1{pred_j = 1} ].
     */
    double exact_error(std::span<const int> preds) const {
        if (preds.size() != atoms_.size())
            throw std::invalid_argument("exact_error: predictions/atoms mismatch");
        double acc = 0.0;
        for (std::size_t j = 0; j < atoms_.size(); ++j)
            acc += atoms_[j].prob * (preds[j] == 1 ? 1.0 - atoms_[j].p_y1
                                                   : atoms_[j].p_y1);
        return acc;
    }

    const Atom& at(std::size_t j) const {
        if (j >= atoms_.size())
            throw std::invalid_argument("DiscreteWorld: atom index out of range");
        return atoms_[j];
    }

private:
    std::vector<Atom> atoms_;
    TiltingFunction phi_;
};

/** Both routes to E[Y | X = atom]; the caller asserts they agree. */
struct ExactRegression {
    double direct;          // P(Y = 1 | atom)
    double representation;  // eta1 + (psi1/psi2)(1 - eta2), enumerated
};

/**
 * Enumerate the four (Y, Delta) outcomes at one atom and evaluate both the
 * direct conditional mean and the (eta, psi) representation. Throws on a
 * zero-probability atom (conditioning on it is undefined).
 */
inline ExactRegression exact_regression(const DiscreteWorld& world,
                                        std::size_t atom_index) {
    const auto& a = world.at(atom_index);
    if (!(a.prob > 0.0))
        throw std::invalid_argument("exact_regression: zero-probability atom");

    const double p1 = a.p_y1;
    const double pi1 = world.pi(atom_index, 1);
    const double pi0 = world.pi(atom_index, 0);
    const double phi1 = world.phi().at1();
    const double phi0 = world.phi().at0();

    const double eta1 = p1 * pi1;
    const double eta2 = p1 * pi1 + (1.0 - p1) * pi0;
    const double psi1 = p1 * pi1 * phi1;
    const double psi2 = p1 * pi1 * phi1 + (1.0 - p1) * pi0 * phi0;

    const double rep = eta1 + ratio0(psi1, psi2) * (1.0 - eta2);
    return ExactRegression{p1, rep};
}

/** One scored candidate for the argmin cross-check. */
struct CandidateEval {
    double risk;
    double h;
    double gamma;
};

/**
 * Full scan with the selection tie-break rule (risk, then h, then gamma);
 * used to cross-check select_phi_h against an independent double loop.
 */
inline std::size_t brute_force_argmin(std::span<const CandidateEval> evals) {
    if (evals.empty())
        throw std::invalid_argument("brute_force_argmin: empty candidate list");
    std::size_t best = 0;
    detail::SelectionKey best_key{evals[0].risk, evals[0].h, evals[0].gamma};
    for (std::size_t i = 1; i < evals.size(); ++i) {
        const detail::SelectionKey key{evals[i].risk, evals[i].h, evals[i].gamma};
        if (key < best_key) {
            best_key = key;
            best = i;
        }
    }
    return best;
}

} // namespace fmnar

#endif // FMNAR_ORACLE_HPP
