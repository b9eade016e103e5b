#include "frheo/frac_ops.h"

#include <cmath>
#include <sstream>

#include "frheo/errors.h"
#include "frheo/special_fn.h"

namespace frheo {

FractionalOrder::FractionalOrder(double nu) : nu_(nu) {
    if (!(nu >= 0.0 && nu <= 1.0)) {
        std::ostringstream os;
        os << "fractional order must lie in [0, 1], got " << nu;
        throw InvalidParameter(os.str());
    }
}

void validate(const SignalSeries& s) {
    if (!(s.dt > 0.0) || !std::isfinite(s.dt)) throw GridError("signal grid step must be positive");
    if (!std::isfinite(s.t0)) throw GridError("signal start time must be finite");
    if (s.values.empty()) throw GridError("signal has no samples");
    for (std::size_t n = 0; n < s.values.size(); ++n) {
        if (!std::isfinite(s.values[n])) {
            std::ostringstream os;
            os << "signal sample " << n << " is not finite";
            throw GridError(os.str());
        }
    }
}

double frac_deriv_power(FractionalOrder nu, double k, double t) {
    if (!(t > 0.0)) throw DomainError("frac_deriv_power: t must be positive");
    if (!(k > -1.0)) throw DomainError("frac_deriv_power: exponent k must exceed -1");
    // Gamma(k - nu + 1) has poles where k - nu is a negative integer; the
    // derivative then vanishes, which rgamma reports as zero.
    return gamma(k + 1.0) * rgamma(k - nu + 1.0) * std::pow(t, k - nu);
}

std::vector<double> gl_weights(FractionalOrder nu, std::size_t n) {
    std::vector<double> w(n);
    if (n == 0) return w;
    w[0] = 1.0;
    const double a = nu.value() + 1.0;
    for (std::size_t j = 1; j < n; ++j) w[j] = w[j - 1] * (1.0 - a / static_cast<double>(j));
    return w;
}

SignalSeries gl_derivative(const SignalSeries& s, FractionalOrder nu) {
    validate(s);
    SignalSeries out{s.t0, s.dt, std::vector<double>(s.size())};
    if (nu.value() == 0.0) {
        out.values = s.values;
        return out;
    }
    const std::size_t n = s.size();
    const double scale = std::pow(s.dt, -nu.value());
    if (nu.value() == 1.0) {
        out.values[0] = s.values[0] * scale;
        for (std::size_t i = 1; i < n; ++i) out.values[i] = (s.values[i] - s.values[i - 1]) * scale;
        return out;
    }
    const auto w = gl_weights(nu, n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) acc += w[j] * s.values[i - j];
        out.values[i] = acc * scale;
    }
    return out;
}

SignalSeries caputo_derivative(const SignalSeries& s, FractionalOrder nu) {
    validate(s);
    SignalSeries shifted = s;
    const double initial = s.values.front();
    for (double& v : shifted.values) v -= initial;
    return gl_derivative(shifted, nu);
}

}  // namespace frheo
