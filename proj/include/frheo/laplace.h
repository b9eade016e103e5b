#pragma once

#include <complex>
#include <functional>

namespace frheo {

/// A Laplace-domain function F(s), analytic for Re(s) > shift and decaying as
/// |s| grows along the contour. `shift` is an upper bound on the real parts
/// of the singularities; it defaults to 0 (branch point at the origin, as for
/// every fractional model). A negative shift lets exponentially decaying
/// responses be recovered to full relative precision.
struct TransformFn {
    std::function<std::complex<double>(std::complex<double>)> eval;
    double shift = 0.0;
};

struct Inversion {
    double value = 0.0;
    double error_estimate = 0.0;  // relative difference between two node counts
    int nodes = 0;
};

/// Fixed-Talbot quadrature with a given node count. The contour
/// s(theta) = r theta (cot theta + i), r = 2 nodes / (5 t), is traversed over
/// (-pi, pi); the imaginary part of the sum is returned in `imag` when
/// non-null.
double talbot(const TransformFn& f, double t, int nodes, double* imag = nullptr);

/// Node count used for a requested relative tolerance: ceil(1.7 * digits).
int talbot_nodes(double tol);

/// Inverse Laplace transform at t > 0 with relative tolerance tol >= 1e-12.
/// Throws ConvergenceError if refinement changes the value by more than
/// 10 * tol, or if the contour sum has a non-negligible imaginary part.
Inversion invert_detailed(const TransformFn& f, double t, double tol = 1e-10);

double invert(const TransformFn& f, double t, double tol = 1e-10);

}  // namespace frheo
