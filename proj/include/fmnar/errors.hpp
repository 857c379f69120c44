/**
 * Error types shared across the fmnar library.
 *
 * Everything derives from std::logic_error / std::runtime_error so callers
 * can catch broadly; the dedicated types exist so tests can pin the exact
 * failure mode (grid mismatch vs. label-hygiene violation vs. degenerate fit).
 */

#ifndef FMNAR_ERRORS_HPP
#define FMNAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fmnar {

/** Two curves (or a curve and a dataset) disagree on grid resolution. */
class GridMismatchError : public std::invalid_argument {
public:
    explicit GridMismatchError(const std::string& msg)
        : std::invalid_argument(msg) {}
};

/**
 * Bug trap: some code path tried to read a response that the missingness
 * mechanism has not revealed (neither observed nor followed up).
 */
class LabelAccessError : public std::logic_error {
public:
    explicit LabelAccessError(const std::string& msg)
        : std::logic_error(msg) {}
};

/** A classifier cannot be fit (e.g. no observed labels in the training split). */
class DegenerateFitError : public std::runtime_error {
public:
    explicit DegenerateFitError(const std::string& msg)
        : std::runtime_error(msg) {}
};

} // namespace fmnar

#endif // FMNAR_ERRORS_HPP
