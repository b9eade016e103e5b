#pragma once

#include <cstddef>
#include <vector>

namespace frheo {

/// Uniformly sampled signal: values[n] is the sample at t0 + n*dt.
struct SignalSeries {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double time(std::size_t n) const { return t0 + static_cast<double>(n) * dt; }
};

/// Uniform sampling grid without values.
struct UniformGrid {
    double t0 = 0.0;
    double dt = 1.0;
    std::size_t count = 0;

    double time(std::size_t n) const { return t0 + static_cast<double>(n) * dt; }
};

/// Order of a fractional operator, restricted to [0, 1]. 0 is the identity
/// (Hookean limit), 1 the first derivative (Newtonian limit).
class FractionalOrder {
public:
    FractionalOrder() = default;
    FractionalOrder(double nu);  // NOLINT: implicit by intent, validates

    double value() const { return nu_; }
    operator double() const { return nu_; }  // NOLINT

private:
    double nu_ = 0.0;
};

/// Throws GridError unless dt > 0, the series is non-empty and all samples
/// are finite.
void validate(const SignalSeries& s);

/// Riemann-Liouville derivative of t^k:
/// Gamma(k+1)/Gamma(k-nu+1) * t^(k-nu).
double frac_deriv_power(FractionalOrder nu, double k, double t);

/// Grünwald-Letnikov weights w_j = (-1)^j binom(nu, j), j = 0..n-1.
std::vector<double> gl_weights(FractionalOrder nu, std::size_t n);

/// Grünwald-Letnikov derivative with lower terminal at s.t0; the signal is
/// taken as zero before t0. O(n^2).
SignalSeries gl_derivative(const SignalSeries& s, FractionalOrder nu);

/// Caputo derivative: the Grünwald-Letnikov derivative of s - s(t0).
SignalSeries caputo_derivative(const SignalSeries& s, FractionalOrder nu);

}  // namespace frheo
