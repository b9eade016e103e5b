#include "frheo/nutting.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frheo/errors.h"

namespace frheo {

namespace {

bool has_spread(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo > 1e-12 * std::max(1.0, std::max(std::abs(*lo), std::abs(*hi)));
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

void validate(const CreepRecord& r) {
    if (!(r.t > 0.0 && r.stress > 0.0 && r.strain > 0.0) || !std::isfinite(r.t) ||
        !std::isfinite(r.stress) || !std::isfinite(r.strain)) {
        std::ostringstream os;
        os << "creep record fields must be positive and finite (t=" << r.t << ", stress=" << r.stress
           << ", strain=" << r.strain << ")";
        throw InvalidParameter(os.str());
    }
}

NuttingFit fit_nutting(std::span<const CreepRecord> data) {
    if (data.size() < 3) throw DegenerateDataError("Nutting fit needs at least three records");
    const std::size_t n = data.size();
    std::vector<double> ls(n), lt(n), le(n);
    for (std::size_t i = 0; i < n; ++i) {
        validate(data[i]);
        ls[i] = std::log(data[i].stress);
        lt[i] = std::log(data[i].t);
        le[i] = std::log(data[i].strain);
    }
    if (!has_spread(lt)) throw DegenerateDataError("Nutting fit needs at least two distinct times");

    NuttingFit fit;
    fit.n_points = static_cast<int>(n);
    fit.beta_fixed = !has_spread(ls);

    // Centered normal equations; the intercept follows from the means.
    const double ms = mean(ls), mt = mean(lt), me = mean(le);
    double sss = 0.0, stt = 0.0, sst = 0.0, sse = 0.0, ste = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ds = ls[i] - ms, dt = lt[i] - mt, de = le[i] - me;
        sss += ds * ds;
        stt += dt * dt;
        sst += ds * dt;
        sse += ds * de;
        ste += dt * de;
    }
    if (fit.beta_fixed) {
        fit.beta_exp = 1.0;
        // log strain - log S = alpha log t - log psi
        double num = 0.0;
        for (std::size_t i = 0; i < n; ++i) num += (lt[i] - mt) * ((le[i] - ls[i]) - (me - ms));
        fit.alpha = num / stt;
    } else {
        const double det = sss * stt - sst * sst;
        if (!(det > 1e-12 * sss * stt))
            throw DegenerateDataError("Nutting fit: log stress and log time are collinear");
        fit.beta_exp = (sse * stt - ste * sst) / det;
        fit.alpha = (ste * sss - sse * sst) / det;
    }
    const double intercept = me - fit.beta_exp * ms - fit.alpha * mt;  // = -log psi
    fit.psi = std::exp(-intercept);

    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = le[i] - (fit.beta_exp * ls[i] + fit.alpha * lt[i] + intercept);
        ss += r * r;
    }
    fit.rms_log_residual = std::sqrt(ss / static_cast<double>(n));
    fit.alpha_out_of_range = fit.alpha < 0.0 || fit.alpha > 1.0;
    return fit;
}

SignalSeries quasi_property(double S, const SignalSeries& strain, FractionalOrder mu) {
    if (!(S > 0.0) || !std::isfinite(S)) throw InvalidParameter("quasi_property: S must be positive");
    validate(strain);
    if (strain.size() < 2) throw GridError("quasi_property: at least two samples are required");
    const SignalSeries d = gl_derivative(strain, mu);
    SignalSeries out{strain.t0 + strain.dt, strain.dt, std::vector<double>(strain.size() - 1)};
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (!(d.values[i] > 0.0)) {
            std::ostringstream os;
            os << "quasi_property: fractional derivative is not positive at t = " << strain.time(i);
            throw DivisionError(os.str());
        }
        out.values[i - 1] = S / d.values[i];
    }
    return out;
}

SignalSeries nutting_general_series(double S, double beta_exp, double alpha_prime,
                                    std::span<const double> coeffs, const UniformGrid& grid) {
    if (!(S > 0.0)) throw InvalidParameter("nutting_general_series: S must be positive");
    if (coeffs.empty()) throw InvalidParameter("nutting_general_series: at least one coefficient");
    if (!(grid.dt > 0.0)) throw GridError("nutting_general_series: grid step must be positive");
    const double prefactor = std::pow(S, beta_exp);
    SignalSeries out{grid.t0, grid.dt, std::vector<double>(grid.count)};
    for (std::size_t n = 0; n < grid.count; ++n) {
        const double t = grid.time(n);
        if (!(t > 0.0)) throw DomainError("nutting_general_series: t must be positive");
        double sum = 0.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            sum += coeffs[k] * std::pow(t, alpha_prime - static_cast<double>(k));
        out.values[n] = prefactor * sum;
    }
    return out;
}

}  // namespace frheo
