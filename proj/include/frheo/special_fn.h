#pragma once

namespace frheo {

/// Parameters of the two-parameter Mittag-Leffler function E_{alpha,beta}.
struct MLParams {
    double alpha = 1.0;  // > 0
    double beta = 1.0;   // finite
};

/// Parameters of Rabotnov's fractional-exponential kernel R_alpha(beta, x).
struct RabotnovParams {
    double alpha = 0.0;       // kernel order, in (-1, 0]
    double beta = 1.0;        // kernel rate, nonzero
    double aging_time = 1.0;  // > 0; carried for completeness, see rabotnov_stress
};

void validate(const MLParams& p);
void validate(const RabotnovParams& p);

/// Gamma function. Lanczos approximation for x >= 0.5, reflection below.
/// Throws PoleError at 0, -1, -2, ... and OverflowError past ~171.62.
double gamma(double x);

/// 1/Gamma(x), defined everywhere: zero at the poles of Gamma and for
/// arguments so large that Gamma overflows.
double rgamma(double x);

/// Real-argument Mittag-Leffler function
///
///   E_{a,b}(z) = sum_{k>=0} z^k / Gamma(a k + b).
///
/// Evaluation switches between the power series (small |z|), the algebraic
/// asymptotic expansion (large negative z), and an exact contour route
/// (residues at the poles of s^{a-b}/(s^a - z) on the principal sheet plus
/// the integral along the branch cut on the negative real axis) elsewhere.
/// Throws OverflowError when the result exceeds the double range.
double ml_eval(const MLParams& p, double z);

/// Rabotnov's kernel R_a(b, x) = x^a E_{a+1,a+1}(b x^{a+1}), x > 0.
/// The order a = 0 collapses to exp(b x).
double rabotnov_kernel(const RabotnovParams& p, double x);

namespace detail {

/// Result of a truncated Mittag-Leffler power series. `abs_sum` is the sum of
/// term magnitudes and bounds the cancellation in `value`.
struct SeriesSum {
    double value = 0.0;
    double abs_sum = 0.0;
    int terms = 0;
    bool converged = false;
};

SeriesSum ml_series(double alpha, double beta, double z, double tol = 1e-17,
                    int max_terms = 500);

/// Branch-cut integral plus pole residues. Valid for alpha in (0, 2),
/// alpha != 1, beta < alpha + 1.
double ml_contour(double alpha, double beta, double z);

}  // namespace detail

}  // namespace frheo
