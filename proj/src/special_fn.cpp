#include "frheo/special_fn.h"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "frheo/errors.h"

namespace frheo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxExpArg = 709.782712893384;  // log(DBL_MAX)
constexpr double kGammaOverflow = 171.62437695630272;

// Godfrey's Lanczos coefficients, g = 607/128, 15 terms.
constexpr long double kLanczosG = 607.0L / 128.0L;
constexpr std::array<long double, 15> kLanczos = {
    0.99999999999999709182L,     57.156235665862923517L,
    -59.597960355475491248L,     14.136097974741747174L,
    -0.49191381609762019978L,    0.33994649984811888699e-4L,
    0.46523628927048575665e-4L,  -0.98374475304879564677e-4L,
    0.15808870322491248884e-3L,  -0.21026444172410488319e-3L,
    0.21743961811521264320e-3L,  -0.16431810653676389022e-3L,
    0.84418223983852743293e-4L,  -0.26190838401581408670e-4L,
    0.36899182659531622704e-5L,
};

// sin(pi x) with exact argument reduction.
double sinpi(double x) {
    double r = std::fmod(x, 2.0);
    if (r > 1.0) r -= 2.0;
    if (r < -1.0) r += 2.0;
    if (r > 0.5) r = 1.0 - r;
    else if (r < -0.5) r = -1.0 - r;
    return std::sin(kPi * r);
}

double cospi(double x) { return sinpi(x + 0.5); }

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double gamma_positive(long double x) {
    // Exact factorials where they are representable.
    if (x == std::floor(x) && x <= 21.0L) {
        double f = 1.0;
        for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
        return f;
    }
    // Evaluated in extended precision so the result is within an ulp or so.
    const long double y = x - 1.0L;
    long double series = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k)
        series += kLanczos[k] / (y + static_cast<long double>(k));
    const long double t = y + kLanczosG + 0.5L;
    // Split the power so t^(y+1/2) does not overflow before exp(-t) scales it.
    const long double half_pow = std::pow(t, 0.5L * (y + 0.5L));
    const long double root_two_pi = 2.5066282746310005024157652848110452530L;
    return static_cast<double>(root_two_pi * series * (half_pow * std::exp(-t)) * half_pow);
}

std::string describe(const char* what, double alpha, double beta, double z) {
    std::ostringstream os;
    os.precision(17);
    os << what << " (alpha=" << alpha << ", beta=" << beta << ", z=" << z << ")";
    return os.str();
}

// Kahan-compensated accumulator.
struct Compensated {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

template <class F>
double ts_integrate(F f, double a, double b) {
    thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate(f, a, b, 1e-14);
}

template <class F>
double es_integrate(F f, double a) {
    thread_local boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(f, a, std::numeric_limits<double>::infinity(), 1e-14);
}

// log of |(1/alpha) s^(1-beta) e^s| for the real pole s > 0.
double log_real_residue(double alpha, double beta, double s) {
    return (1.0 - beta) * std::log(s) + s - std::log(alpha);
}

// E_{1,beta}(z). Closed form for beta = 1, Euler's integral
// Gamma(beta-1)^{-1} int_0^1 e^{zu} (1-u)^{beta-2} du for beta > 1, and the
// upward recurrence E_{1,b} = 1/Gamma(b) + z E_{1,b+1} for beta < 1.
double ml_alpha_one(double beta, double z) {
    if (z > kMaxExpArg) throw OverflowError(describe("Mittag-Leffler overflow", 1.0, beta, z));
    if (beta == 1.0) return std::exp(z);
    if (beta < 1.0) return rgamma(beta) + z * ml_alpha_one(beta + 1.0, z);
    if (std::abs(z) <= 1.0) return detail::ml_series(1.0, beta, z).value;
    if (beta == 2.0) return std::expm1(z) / z;
    const double e = beta - 2.0;
    double integral;
    if (z > 0.0) {
        // e^z int_0^1 e^{-z v} v^{beta-2} dv
        const double tail = ts_integrate(
            [&](double v) { return std::exp(-z * v) * std::pow(v, e); }, 0.0, 1.0);
        const double log_value = z + std::log(tail) - std::lgamma(beta - 1.0);
        if (log_value > kMaxExpArg) throw OverflowError(describe("Mittag-Leffler overflow", 1.0, beta, z));
        return std::exp(z) * tail * rgamma(beta - 1.0);
    }
    integral = ts_integrate([&](double u) { return std::exp(z * u) * std::pow(1.0 - u, e); },
                            0.0, 1.0);
    return integral * rgamma(beta - 1.0);
}

// Large negative z, 0 < alpha < 2: E = -sum_k z^{-k}/Gamma(beta - alpha k)
// plus the residues of the complex pole pair when alpha > 1. Returns false if
// the optimally truncated series is not accurate to double precision.
bool ml_asymptotic(double alpha, double beta, double z, double& out) {
    // Individual terms are not monotone (1/Gamma has zeros), so stopping is
    // decided on the bound |term_k| <= Gamma(alpha k - beta + 1) / (pi |z|^k).
    Compensated acc;
    const double log_abs_z = std::log(-z);
    double previous_bound = std::numeric_limits<double>::infinity();
    double zpow = 1.0;
    bool any_nonzero = false;
    bool ok = false;
    for (int k = 1; k <= 400; ++k) {
        zpow /= z;
        const double term = -zpow * rgamma(beta - alpha * k);
        if (term != 0.0) any_nonzero = true;
        acc.add(term);
        const double shifted = alpha * k - beta + 1.0;
        if (shifted <= 0.5) continue;
        const double bound = std::exp(std::lgamma(shifted) - k * log_abs_z) / kPi;
        if (bound <= 1e-17 * std::abs(acc.sum)) {
            ok = true;
            break;
        }
        if (bound > previous_bound) break;
        previous_bound = bound;
    }
    // With alpha and beta integers every algebraic term vanishes.
    if (!any_nonzero) ok = true;
    if (!ok) return false;
    double value = acc.sum;
    if (alpha > 1.0) {
        const std::complex<double> s = std::polar(std::pow(-z, 1.0 / alpha), kPi / alpha);
        value += 2.0 * (std::pow(s, 1.0 - beta) * std::exp(s)).real() / alpha;
    }
    out = value;
    return true;
}

// Lowers beta until the cut integrand is at most mildly singular at the
// origin, using E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z.
double ml_contour_reduced(double alpha, double beta, double z) {
    if (beta >= alpha + 0.5)
        return (ml_contour_reduced(alpha, beta - alpha, z) - rgamma(beta - alpha)) / z;
    return detail::ml_contour(alpha, beta, z);
}

}  // namespace

void validate(const MLParams& p) {
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha))
        throw InvalidParameter("Mittag-Leffler alpha must be positive and finite");
    if (!std::isfinite(p.beta)) throw InvalidParameter("Mittag-Leffler beta must be finite");
}

void validate(const RabotnovParams& p) {
    if (!(p.alpha > -1.0 && p.alpha <= 0.0))
        throw InvalidParameter("Rabotnov kernel order alpha must lie in (-1, 0]");
    if (p.beta == 0.0 || !std::isfinite(p.beta))
        throw InvalidParameter("Rabotnov kernel rate beta must be finite and nonzero");
    if (!(p.aging_time > 0.0) || !std::isfinite(p.aging_time))
        throw InvalidParameter("Rabotnov aging time must be positive");
}

double gamma(double x) {
    if (!std::isfinite(x)) throw DomainError("gamma: argument must be finite");
    if (is_nonpositive_integer(x)) {
        std::ostringstream os;
        os << "gamma: pole at x = " << x;
        throw PoleError(os.str());
    }
    if (x > kGammaOverflow) {
        std::ostringstream os;
        os << "gamma: result overflows for x = " << x;
        throw OverflowError(os.str());
    }
    if (x >= 0.5) return gamma_positive(x);
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    const double s = sinpi(x);
    const double reflected = 1.0 - x;
    if (reflected > kGammaOverflow) {
        const double mag = std::exp(std::log(kPi) - std::log(std::abs(s)) - std::lgamma(reflected));
        return s < 0.0 ? -mag : mag;
    }
    return kPi / (s * gamma_positive(1.0L - static_cast<long double>(x)));
}

double rgamma(double x) {
    if (!std::isfinite(x)) return 0.0;
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > kGammaOverflow) return std::exp(-std::lgamma(x));
    if (x >= 0.5) return 1.0 / gamma_positive(x);
    const double reflected = 1.0 - x;
    if (reflected > kGammaOverflow) {
        // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi, which overflows only for huge |x|.
        const double s = sinpi(x);
        const double mag = std::exp(std::lgamma(reflected) - std::log(kPi) + std::log(std::abs(s)));
        return s < 0.0 ? -mag : mag;
    }
    return sinpi(x) * gamma_positive(1.0L - static_cast<long double>(x)) / kPi;
}

namespace detail {

SeriesSum ml_series(double alpha, double beta, double z, double tol, int max_terms) {
    SeriesSum out;
    Compensated acc;
    const double log_abs_z = std::log(std::abs(z));
    int small_in_a_row = 0;
    double abs_sum = 0.0;
    for (int k = 0; k < max_terms; ++k) {
        const double arg = alpha * k + beta;
        double term;
        if (k == 0) {
            term = rgamma(arg);
        } else if (arg < 160.0) {
            term = std::pow(z, k) * rgamma(arg);
        } else {
            // Large arguments: work in logs to avoid overflow of both factors.
            const double mag = std::exp(k * log_abs_z - std::lgamma(arg));
            term = (z < 0.0 && (k % 2 == 1)) ? -mag : mag;
        }
        if (!std::isfinite(term)) break;
        acc.add(term);
        abs_sum += std::abs(term);
        out.terms = k + 1;
        if (std::abs(term) < tol * std::abs(acc.sum)) {
            if (++small_in_a_row == 2) {
                out.converged = true;
                break;
            }
        } else {
            small_in_a_row = 0;
        }
    }
    out.value = acc.sum;
    out.abs_sum = abs_sum;
    return out;
}

double ml_contour(double alpha, double beta, double z) {
    const double x = -z;
    const double a = alpha;
    const double sin_b = sinpi(beta);
    const double sin_ab = sinpi(a - beta);
    const double cos_a = cospi(a);
    const double peak = std::pow(std::abs(z), 1.0 / a);

    // Residues of e^s s^{a-b} / (s^a - z) at poles on the principal sheet.
    double residues = 0.0;
    if (z > 0.0) {
        const double log_mag = log_real_residue(a, beta, peak);
        if (log_mag > kMaxExpArg)
            throw OverflowError(describe("Mittag-Leffler overflow", alpha, beta, z));
        residues = std::exp(log_mag);
        // The algebraic remainder is below double resolution here.
        if (peak > 45.0) return residues;
    } else if (a > 1.0) {
        const std::complex<double> s = std::polar(peak, kPi / a);
        residues = 2.0 * (std::pow(s, 1.0 - beta) * std::exp(s)).real() / a;
    }

    auto kernel = [&](double r) -> double {
        if (r <= 0.0) return 0.0;
        const double ra = std::pow(r, a);
        const double denom = ra * ra + 2.0 * x * ra * cos_a + x * x;
        return std::exp(-r) * std::pow(r, a - beta) * (ra * sin_b - x * sin_ab) / denom;
    };

    // Break at r = 1 and at the near-singularity r^a = |z| of the denominator.
    double b1 = std::min(1.0, peak);
    double b2 = std::max(1.0, peak);
    double integral = ts_integrate(kernel, 0.0, b1);
    if (b2 > b1 && b1 < 60.0) integral += ts_integrate(kernel, b1, std::min(b2, 60.0));
    const double tail_start = std::min(b2, 60.0);
    integral += es_integrate(kernel, tail_start);
    return residues + integral / kPi;
}

}  // namespace detail

double ml_eval(const MLParams& p, double z) {
    validate(p);
    if (!std::isfinite(z)) throw DomainError("ml_eval: argument must be finite");
    const double alpha = p.alpha;
    const double beta = p.beta;
    if (z == 0.0) return rgamma(beta);
    if (alpha == 1.0) return ml_alpha_one(beta, z);

    if (alpha > 2.0 || (alpha == 2.0 && z > 0.0)) {
        const auto s = detail::ml_series(alpha, beta, z);
        if (s.converged && std::isfinite(s.value) && s.abs_sum <= 1e6 * std::abs(s.value)) return s.value;
        if (alpha == 2.0 && z > 0.0) {
            // Dominant exponential from the real pole; the rest is e^{-2 sqrt z} smaller.
            const double root = std::sqrt(z);
            const double log_mag = log_real_residue(alpha, beta, root);
            if (log_mag > kMaxExpArg) throw OverflowError(describe("Mittag-Leffler overflow", alpha, beta, z));
            return std::exp(log_mag);
        }
        throw ConvergenceError(describe("Mittag-Leffler series did not converge", alpha, beta, z));
    }

    constexpr double kSeriesRadius = 15.0;
    constexpr double kAsymptoticRadius = 50.0;
    if (std::abs(z) <= kSeriesRadius) {
        const auto s = detail::ml_series(alpha, beta, z);
        if (s.converged && std::isfinite(s.value) && s.abs_sum <= 100.0 * std::abs(s.value))
            return s.value;
    }
    if (z <= -kAsymptoticRadius) {
        double value;
        if (ml_asymptotic(alpha, beta, z, value)) return value;
    }

    return ml_contour_reduced(alpha, beta, z);
}

double rabotnov_kernel(const RabotnovParams& p, double x) {
    validate(p);
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("rabotnov_kernel: x must be positive");
    if (p.alpha == 0.0) {
        const double arg = p.beta * x;
        if (arg > kMaxExpArg) throw OverflowError("rabotnov_kernel: exp(beta x) overflows");
        return std::exp(arg);
    }
    const double order = p.alpha + 1.0;
    return std::pow(x, p.alpha) * ml_eval({order, order}, p.beta * std::pow(x, order));
}

}  // namespace frheo
