/**
 * KernelFn — asymmetric kernels with support [0, 1] for distance-based
 * smoothing. Two families:
 *
 *   - epanechnikov(): K(t) = 1.5 * (1 - t^2) on [0, 1], the default.
 *   - compact_polynomial(coeffs, powers): K(t) = sum_i a_i t^{b_i} on [0, 1],
 *     zero beyond 1. The Epanechnikov kernel is the special case
 *     coeffs = {1.5, -1.5}, powers = {0, 2}.
 *
 * Arguments are distances, never negative: t < 0 is a domain error (catches
 * sign bugs upstream); K(t) = 0 for t > 1.
 */

#ifndef FMNAR_KERNEL_HPP
#define FMNAR_KERNEL_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fmnar {

class KernelFn {
public:
    /** Epanechnikov-type kernel, 1.5 (1 - t^2) on [0, 1]. */
    static KernelFn epanechnikov() { return KernelFn(); }

    /** General compact-support polynomial sum_i coeffs[i] * t^powers[i]. */
    static KernelFn compact_polynomial(std::vector<double> coeffs,
                                       std::vector<double> powers) {
        if (coeffs.empty() || coeffs.size() != powers.size())
            throw std::invalid_argument(
                "KernelFn: coeffs/powers must be nonempty and equal-length");
        KernelFn k;
        k.family_ = Family::CompactPolynomial;
        k.coeffs_ = std::move(coeffs);
        k.powers_ = std::move(powers);
        return k;
    }

    double operator()(double t) const {
        if (t < 0.0)
            throw std::domain_error("KernelFn: negative argument");
        if (t > 1.0) return 0.0;
        if (family_ == Family::Epanechnikov)
            return 1.5 * (1.0 - t * t);
        double acc = 0.0;
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            acc += coeffs_[i] * std::pow(t, powers_[i]);
        return acc;
    }

    bool is_epanechnikov() const { return family_ == Family::Epanechnikov; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    const std::vector<double>& powers() const { return powers_; }

private:
    enum class Family { Epanechnikov, CompactPolynomial };

    KernelFn() = default;

    Family family_ = Family::Epanechnikov;
    std::vector<double> coeffs_;
    std::vector<double> powers_;
};

} // namespace fmnar

#endif // FMNAR_KERNEL_HPP
