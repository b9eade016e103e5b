#include "frheo/laplace.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "frheo/errors.h"

namespace frheo {

namespace {

// Double precision caps the usable node count: beyond ~24 nodes the
// e^{rt} amplification of rounding error outweighs the truncation gain.
constexpr int kMinNodes = 6;
constexpr int kMaxNodes = 24;
constexpr int kRefineStep = 2;

}  // namespace

double talbot(const TransformFn& f, double t, int nodes, double* imag) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("Laplace inversion: t must be positive");
    if (nodes < 2) throw DomainError("Laplace inversion: at least two nodes are required");
    if (!f.eval) throw DomainError("Laplace inversion: empty transform");

    const double pi = std::numbers::pi;
    const double r = 2.0 * nodes / (5.0 * t);
    const double shift = f.shift;

    auto term = [&](std::complex<double> s, std::complex<double> ds) {
        const std::complex<double> value = f.eval(s + shift);
        return std::exp(s * t) * value * ds;
    };

    // theta = 0 carries half weight; the remaining nodes come in conjugate pairs.
    std::complex<double> sum = 0.5 * term({r, 0.0}, {1.0, 0.0});
    for (int k = 1; k < nodes; ++k) {
        const double theta = k * pi / nodes;
        const double cot = std::cos(theta) / std::sin(theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        const std::complex<double> s{r * theta * cot, r * theta};
        const std::complex<double> ds{1.0, sigma};
        sum += 0.5 * (term(s, ds) + term(std::conj(s), std::conj(ds)));
    }
    const double scale = r / nodes * std::exp(shift * t);
    if (imag) *imag = sum.imag() * scale;
    return sum.real() * scale;
}

int talbot_nodes(double tol) {
    const double digits = -std::log10(tol);
    const int n = static_cast<int>(std::ceil(1.7 * digits));
    return std::clamp(n, kMinNodes, kMaxNodes - kRefineStep);
}

Inversion invert_detailed(const TransformFn& f, double t, double tol) {
    if (!(tol >= 1e-12) || !std::isfinite(tol))
        throw InvalidParameter("Laplace inversion: tolerance must be at least 1e-12");
    const int n = talbot_nodes(tol);
    double imag = 0.0;
    const double value = talbot(f, t, n, &imag);
    const double refined = talbot(f, t, n + kRefineStep);

    auto fail = [&](const char* why, double measure) {
        std::ostringstream os;
        os.precision(6);
        os << "Laplace inversion " << why << " at t=" << t << " (relative " << measure
           << ", tolerance " << tol << ")";
        throw ConvergenceError(os.str());
    };
    if (!std::isfinite(value) || !std::isfinite(refined)) fail("produced a non-finite value", 0.0);

    const double magnitude = std::abs(value);
    const double diff = std::abs(refined - value);
    const double rel = magnitude > 0.0 ? diff / magnitude : diff;
    if (rel > 10.0 * tol) fail("did not converge", rel);
    const double imag_rel = magnitude > 0.0 ? std::abs(imag) / magnitude : std::abs(imag);
    if (imag_rel > tol) fail("left an imaginary residue", imag_rel);
    return {value, rel, n};
}

double invert(const TransformFn& f, double t, double tol) {
    return invert_detailed(f, t, tol).value;
}

}  // namespace frheo
